#include "nlt/io/format.hpp"

#include "nlt/mellin.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nlt::io {

ExitCode exit_code_for(Verdict v)
{
    switch (v) {
    case Verdict::completed: return ExitCode::ok;
    case Verdict::blowup_detected: return ExitCode::blowup;
    case Verdict::resolution_lost: return ExitCode::resolution_lost;
    case Verdict::boundary_contaminated: return ExitCode::boundary_contaminated;
    }
    return ExitCode::failure;
}

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

double parse_number(std::string_view s)
{
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

const char* const record_csv_header =
    "time,dt,sup_norm,l1_norm,lp_norm,gradient_sup,drift_criterion,alt_criterion,weighted_a,"
    "modulus_ratio,spectral_tail,boundary_fraction,min_right,parity_error,grad_l2_sq,hess_l2_sq";

namespace {

std::vector<std::vector<double>*> columns(DiagnosticsRecord& r)
{
    return {&r.times,          &r.dt,          &r.sup_norm,
            &r.l1_norm,        &r.lp_norm,     &r.gradient_sup,
            &r.drift_criterion_integrand,      &r.alt_criterion_integrand,
            &r.weighted_a,     &r.modulus_ratio, &r.spectral_tail,
            &r.boundary_fraction, &r.min_right, &r.parity_error,
            &r.grad_l2_sq,     &r.hess_l2_sq};
}

}  // namespace

void write_record_csv(std::ostream& os, const DiagnosticsRecord& rec)
{
    rec.check_consistent();
    auto cols = columns(const_cast<DiagnosticsRecord&>(rec));
    os << record_csv_header << '\n';
    for (std::size_t i = 0; i < rec.size(); ++i) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) os << ',';
            os << format_number((*cols[c])[i]);
        }
        os << '\n';
    }
}

DiagnosticsRecord read_record_csv(std::istream& is)
{
    DiagnosticsRecord rec;
    auto cols = columns(rec);
    std::string line;
    if (!std::getline(is, line) || line != record_csv_header)
        throw std::invalid_argument("diagnostics csv: unexpected header");
    int row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        std::size_t c = 0, pos = 0;
        while (true) {
            const auto comma = line.find(',', pos);
            const auto cell = std::string_view(line).substr(pos, comma == std::string::npos ? std::string::npos
                                                                                            : comma - pos);
            if (c >= cols.size())
                throw std::invalid_argument("diagnostics csv: too many columns on row " + std::to_string(row));
            cols[c++]->push_back(parse_number(cell));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (c != cols.size())
            throw std::invalid_argument("diagnostics csv: too few columns on row " + std::to_string(row));
    }
    return rec;
}

void write_snapshot_csv(std::ostream& os, const Field& u, const Field& riesz_u)
{
    if (!(u.grid() == riesz_u.grid())) throw std::invalid_argument("snapshot: grids differ");
    os << "x,u,riesz_u\n";
    for (int j = 0; j < u.grid().size(); ++j)
        os << format_number(u.grid().x(j)) << ',' << format_number(u[j]) << ',' << format_number(riesz_u[j])
           << '\n';
}

void write_mellin_csv(std::ostream& os, double alpha, double theta, double lambda_max, int points_per_side)
{
    if (!(lambda_max > 0.0)) throw std::domain_error("mellin: lambda_max must be positive");
    if (points_per_side < 1) throw std::domain_error("mellin: need at least one point per side");
    // Domain errors surface here before any output is written.
    mellin_symbol(alpha, theta, 0.0);

    const double lo = std::min(1e-3, 0.1 * lambda_max);
    std::vector<double> pos(points_per_side);
    for (int i = 0; i < points_per_side; ++i)
        pos[i] = points_per_side == 1 ? lambda_max
                                      : lo * std::pow(lambda_max / lo, double(i) / (points_per_side - 1));
    std::vector<double> lam;
    for (int i = points_per_side - 1; i >= 0; --i) lam.push_back(-pos[i]);
    lam.push_back(0.0);
    lam.insert(lam.end(), pos.begin(), pos.end());

    os << "lambda,re_f,im_f,normalized_re\n";
    for (double l : lam) {
        const cplx f = mellin_symbol(alpha, theta, l);
        os << format_number(l) << ',' << format_number(f.real()) << ',' << format_number(f.imag()) << ','
           << format_number(f.real() / (1.0 + std::pow(std::abs(l), alpha))) << '\n';
    }
}

}  // namespace nlt::io
