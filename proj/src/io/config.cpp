#include "nlt/io/config.hpp"

#include "nlt/io/format.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace nlt::io {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// "section.key" -> line, mirroring what the ini parser accepts.
std::map<std::string, int> key_lines(const std::string& text)
{
    std::map<std::string, int> out;
    std::istringstream is(text);
    std::string line, section;
    int no = 0;
    while (std::getline(is, line)) {
        ++no;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line[0] == '[') {
            section = trim(line.substr(1, line.find(']') - 1));
            out.emplace(section, no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const auto key = trim(line.substr(0, eq));
        out.emplace(section.empty() ? key : section + "." + key, no);
    }
    return out;
}

struct Context {
    std::string source;
    std::filesystem::path base_dir;
    std::map<std::string, int> lines;

    int line_of(const std::string& key) const
    {
        const auto it = lines.find(key);
        return it == lines.end() ? 0 : it->second;
    }
    [[noreturn]] void fail(const std::string& key, const std::string& why) const
    {
        const int l = line_of(key);
        std::string where = source + (l ? ":" + std::to_string(l) : "");
        throw ConfigError(where + ": " + key + " " + why, key, l);
    }
};

double to_double(const Context& c, const std::string& key, const std::string& v)
{
    try {
        const double d = parse_number(trim(v));
        if (!std::isfinite(d)) c.fail(key, "must be finite, got '" + v + "'");
        return d;
    } catch (const std::invalid_argument&) {
        c.fail(key, "expects a number, got '" + v + "'");
    }
}

int to_int(const Context& c, const std::string& key, const std::string& v)
{
    const double d = to_double(c, key, v);
    if (d != std::floor(d) || std::abs(d) > 1e9) c.fail(key, "expects an integer, got '" + v + "'");
    return int(d);
}

bool to_bool(const Context& c, const std::string& key, const std::string& v)
{
    const auto t = trim(v);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    c.fail(key, "expects true or false, got '" + v + "'");
}

std::vector<double> read_samples(const Context& c, const std::string& key, const std::string& v)
{
    std::filesystem::path p = trim(v);
    if (p.is_relative()) p = c.base_dir / p;
    std::ifstream in(p);
    if (!in) c.fail(key, "cannot open '" + p.string() + "'");
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        try {
            out.push_back(parse_number(line));
        } catch (const std::invalid_argument&) {
            c.fail(key, "sample file '" + p.string() + "' holds a non-number '" + line + "'");
        }
    }
    return out;
}

using Setter = std::function<void(SimConfig&, const Context&, const std::string& key, const std::string& v)>;

Setter num(double SimConfig::*m)
{
    return [m](SimConfig& s, const Context& c, const std::string& k, const std::string& v) { s.*m = to_double(c, k, v); };
}
Setter integer(int SimConfig::*m)
{
    return [m](SimConfig& s, const Context& c, const std::string& k, const std::string& v) { s.*m = to_int(c, k, v); };
}
Setter flag(bool SimConfig::*m)
{
    return [m](SimConfig& s, const Context& c, const std::string& k, const std::string& v) { s.*m = to_bool(c, k, v); };
}

const std::map<std::string, Setter>& sim_keys()
{
    static const std::map<std::string, Setter> keys = {
        {"model.alpha", num(&SimConfig::alpha)},
        {"model.beta", num(&SimConfig::beta)},
        {"model.nu", num(&SimConfig::nu)},
        {"model.drift_enabled", flag(&SimConfig::drift_enabled)},
        {"grid.n", integer(&SimConfig::n)},
        {"grid.length", num(&SimConfig::length)},
        {"initial.family",
         [](SimConfig& s, const Context& c, const std::string& k, const std::string& v) {
             try {
                 s.initial.family = initial_family_from_string(trim(v));
             } catch (const std::invalid_argument&) {
                 c.fail(k, "must be odd_gaussian, odd_bump or custom_samples, got '" + v + "'");
             }
         }},
        {"initial.amplitude",
         [](SimConfig& s, const Context& c, const std::string& k, const std::string& v) {
             s.initial.amplitude = to_double(c, k, v);
         }},
        {"initial.width",
         [](SimConfig& s, const Context& c, const std::string& k, const std::string& v) {
             s.initial.width = to_double(c, k, v);
         }},
        {"initial.odd",
         [](SimConfig& s, const Context& c, const std::string& k, const std::string& v) {
             s.initial.odd = to_bool(c, k, v);
         }},
        {"initial.samples_file",
         [](SimConfig& s, const Context& c, const std::string& k, const std::string& v) {
             s.initial.samples = read_samples(c, k, v);
         }},
        {"time.t_end", num(&SimConfig::t_end)},
        {"time.cfl_safety", num(&SimConfig::cfl_safety)},
        {"time.dt_max", num(&SimConfig::dt_max)},
        {"time.fixed_dt",
         [](SimConfig& s, const Context& c, const std::string& k, const std::string& v) {
             s.fixed_dt = to_double(c, k, v);
         }},
        {"detection.blowup_gradient_threshold", num(&SimConfig::blowup_gradient_threshold)},
        {"detection.spectral_tail_threshold", num(&SimConfig::spectral_tail_threshold)},
        {"detection.boundary_threshold", num(&SimConfig::boundary_threshold)},
        {"detection.initial_boundary_threshold", num(&SimConfig::initial_boundary_threshold)},
        {"detection.confirm_blowup", flag(&SimConfig::confirm_blowup)},
        {"diagnostics.weight_delta", num(&SimConfig::weight_delta)},
        {"diagnostics.lp_exponent", num(&SimConfig::lp_exponent)},
        {"diagnostics.modulus_monitor", flag(&SimConfig::modulus_monitor)},
        {"diagnostics.modulus_delta", num(&SimConfig::modulus_delta)},
        {"diagnostics.diag_stride", integer(&SimConfig::diag_stride)},
        {"output.output_stride", integer(&SimConfig::output_stride)},
    };
    return keys;
}

// Field name used by SimConfig::validate -> config key.
std::string qualified(const std::string& field)
{
    if (field.find('.') != std::string::npos) {
        if (field == "initial.samples") return "initial.samples_file";
        return field;
    }
    for (const auto& [k, _] : sim_keys())
        if (k.substr(k.find('.') + 1) == field) return k;
    return field;
}

struct Parsed {
    pt::ptree tree;
    Context ctx;
};

Parsed read_tree(std::istream& is, const std::string& source, const std::filesystem::path& base_dir)
{
    std::stringstream buf;
    buf << is.rdbuf();
    Parsed p;
    p.ctx = Context{source, base_dir, key_lines(buf.str())};
    buf.seekg(0);
    try {
        pt::read_ini(buf, p.tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message(), {}, int(e.line()));
    }
    const auto ver = p.tree.get_optional<std::string>("schema_version");
    if (!ver) throw ConfigError(source + ": schema_version is required", "schema_version");
    if (to_int(p.ctx, "schema_version", *ver) != config_schema_version)
        p.ctx.fail("schema_version", "must be " + std::to_string(config_schema_version) + ", got '" + *ver + "'");
    return p;
}

// Applies every key of the simulate schema; extra_section keys are passed to extra.
SimConfig apply(const Parsed& p, const std::string& extra_section,
                const std::function<void(const std::string&, const std::string&)>& extra)
{
    SimConfig cfg;
    const auto& keys = sim_keys();
    for (const auto& [name, node] : p.tree) {
        if (name == "schema_version") continue;
        if (node.empty()) p.ctx.fail(name, "is not a known key or section");
        for (const auto& [k, leaf] : node) {
            const std::string full = name + "." + k;
            if (!leaf.empty()) p.ctx.fail(full, "is nested too deeply");
            if (name == extra_section && extra) {
                extra(full, leaf.data());
                continue;
            }
            const auto it = keys.find(full);
            if (it == keys.end()) p.ctx.fail(full, "is not a known key");
            it->second(cfg, p.ctx, full, leaf.data());
        }
    }
    return cfg;
}

void check(const SimConfig& cfg, const Context& ctx)
{
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        // "config: <field> <why>"
        std::string msg = e.what();
        if (msg.rfind("config: ", 0) == 0) msg = msg.substr(8);
        const auto sp = msg.find(' ');
        ctx.fail(qualified(msg.substr(0, sp)), sp == std::string::npos ? "is invalid" : msg.substr(sp + 1));
    }
}

}  // namespace

SimConfig parse_sim_config(std::istream& is, const std::string& source, const std::filesystem::path& base_dir)
{
    const Parsed p = read_tree(is, source, base_dir);
    SimConfig cfg = apply(p, {}, {});
    check(cfg, p.ctx);
    return cfg;
}

SimConfig load_sim_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    return parse_sim_config(in, path.string(), path.parent_path());
}

std::string to_ini(const SimConfig& c, const std::string& samples_file)
{
    std::ostringstream os;
    auto b = [](bool v) { return v ? "true" : "false"; };
    os << "schema_version = " << config_schema_version << "\n\n"
       << "[model]\nalpha = " << format_number(c.alpha) << "\nbeta = " << format_number(c.beta)
       << "\nnu = " << format_number(c.nu) << "\ndrift_enabled = " << b(c.drift_enabled) << "\n\n"
       << "[grid]\nn = " << c.n << "\nlength = " << format_number(c.length) << "\n\n"
       << "[initial]\nfamily = " << to_string(c.initial.family)
       << "\namplitude = " << format_number(c.initial.amplitude) << "\nwidth = " << format_number(c.initial.width)
       << "\nodd = " << b(c.initial.odd) << "\n";
    if (c.initial.family == InitialFamily::custom_samples) os << "samples_file = " << samples_file << "\n";
    os << "\n[time]\nt_end = " << format_number(c.t_end) << "\ncfl_safety = " << format_number(c.cfl_safety)
       << "\ndt_max = " << format_number(c.dt_max) << "\n";
    if (c.fixed_dt) os << "fixed_dt = " << format_number(*c.fixed_dt) << "\n";
    os << "\n[detection]\nblowup_gradient_threshold = " << format_number(c.blowup_gradient_threshold)
       << "\nspectral_tail_threshold = " << format_number(c.spectral_tail_threshold)
       << "\nboundary_threshold = " << format_number(c.boundary_threshold)
       << "\ninitial_boundary_threshold = " << format_number(c.initial_boundary_threshold)
       << "\nconfirm_blowup = " << b(c.confirm_blowup) << "\n\n"
       << "[diagnostics]\nweight_delta = " << format_number(c.weight_delta)
       << "\nlp_exponent = " << format_number(c.lp_exponent) << "\nmodulus_monitor = " << b(c.modulus_monitor)
       << "\nmodulus_delta = " << format_number(c.modulus_delta) << "\ndiag_stride = " << c.diag_stride
       << "\n\n[output]\noutput_stride = " << c.output_stride << "\n";
    return os.str();
}

std::vector<double> parse_axis(const std::string& text)
{
    const std::string t = trim(text);
    std::vector<double> out;
    if (t.empty()) throw std::invalid_argument("empty axis");
    if (t.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::size_t pos = 0;
        while (true) {
            const auto colon = t.find(':', pos);
            parts.push_back(parse_number(trim(t.substr(pos, colon == std::string::npos ? colon : colon - pos))));
            if (colon == std::string::npos) break;
            pos = colon + 1;
        }
        if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step");
        const double a = parts[0], b = parts[1], h = parts[2];
        if (!(h > 0.0) || !(b >= a)) throw std::invalid_argument("range needs step > 0 and stop >= start");
        const double count = std::floor((b - a) / h + 1e-9);
        if (count >= double(max_sweep_cells)) throw std::invalid_argument("range has too many points");
        for (int i = 0; i <= int(count); ++i) out.push_back(std::round((a + i * h) * 1e12) / 1e12);
        return out;
    }
    std::size_t pos = 0;
    while (true) {
        const auto comma = t.find(',', pos);
        out.push_back(parse_number(trim(t.substr(pos, comma == std::string::npos ? comma : comma - pos))));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

SweepConfig parse_sweep_config(std::istream& is, const std::string& source, const std::filesystem::path& base_dir)
{
    const Parsed p = read_tree(is, source, base_dir);
    SweepConfig sc;
    std::map<std::string, std::vector<double>> axes;
    sc.base = apply(p, "sweep", [&](const std::string& key, const std::string& v) {
        if (key == "sweep.bisect_steps") {
            sc.bisect_steps = to_int(p.ctx, key, v);
            if (sc.bisect_steps < 0 || sc.bisect_steps > 20) p.ctx.fail(key, "must lie in [0, 20]");
            return;
        }
        const std::string axis = key.substr(6);
        if (axis != "alpha" && axis != "beta" && axis != "nu" && axis != "amplitude")
            p.ctx.fail(key, "is not a known key (axes are alpha, beta, nu, amplitude)");
        try {
            axes[axis] = parse_axis(v);
        } catch (const std::invalid_argument& e) {
            p.ctx.fail(key, std::string("is not a valid axis: ") + e.what());
        }
    });
    auto axis = [&](const char* name, double base) {
        const auto it = axes.find(name);
        return it == axes.end() ? std::vector<double>{base} : it->second;
    };
    sc.axes.alpha = axis("alpha", sc.base.alpha);
    sc.axes.beta = axis("beta", sc.base.beta);
    sc.axes.nu = axis("nu", sc.base.nu);
    sc.axes.amplitude = axis("amplitude", sc.base.initial.amplitude);
    if (sc.axes.cells() > max_sweep_cells)
        p.ctx.fail("sweep", "spans " + std::to_string(sc.axes.cells()) + " cells, more than " +
                                std::to_string(max_sweep_cells));

    // Every cell must be a valid simulate config; failures name the axis.
    for (const auto& [name, vals] : std::map<std::string, const std::vector<double>*>{
             {"alpha", &sc.axes.alpha}, {"beta", &sc.axes.beta}, {"nu", &sc.axes.nu},
             {"amplitude", &sc.axes.amplitude}})
        for (double v : *vals) {
            SimConfig c = sc.base;
            if (name == "alpha") c.alpha = v;
            if (name == "beta") c.beta = v;
            if (name == "nu") c.nu = v;
            if (name == "amplitude") c.initial.amplitude = v;
            c.modulus_monitor = false;
            try {
                c.validate();
            } catch (const std::invalid_argument& e) {
                p.ctx.fail("sweep." + name, "value " + format_number(v) + " rejected: " + e.what());
            }
        }
    SimConfig probe = sc.base;
    probe.modulus_monitor = false;
    check(probe, p.ctx);
    return sc;
}

SweepConfig load_sweep_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sweep config '" + path.string() + "'");
    return parse_sweep_config(in, path.string(), path.parent_path());
}

}  // namespace nlt::io
