#pragma once

#include "nlt/diagnostics.hpp"
#include "nlt/spectral.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace nlt::io {

inline constexpr const char* tool_version = "nltlab 1.0.0";

// Process exit codes of the command-line tool. Stable across versions.
enum class ExitCode : int {
    ok = 0,
    failure = 1,
    usage = 2,
    blowup = 10,
    resolution_lost = 11,
    boundary_contaminated = 12,
};

ExitCode exit_code_for(Verdict v);

// Shortest decimal string that parses back to the same double; "nan", "inf", "-inf".
std::string format_number(double v);
// Inverse of format_number. Throws std::invalid_argument on trailing junk.
double parse_number(std::string_view s);

// One row per recorded step; header listed in record_csv_header.
extern const char* const record_csv_header;
void write_record_csv(std::ostream& os, const DiagnosticsRecord& rec);
// Reads the arrays back; lp_exponent, verdict and estimate are not part of the CSV.
DiagnosticsRecord read_record_csv(std::istream& is);

// Header "x,u,riesz_u" with riesz_u = Lambda^{-alpha} u.
void write_snapshot_csv(std::ostream& os, const Field& u, const Field& riesz_u);

// Rows at -lambda_k, 0, lambda_k with lambda_k log-spaced up to lambda_max.
// Header "lambda,re_f,im_f,normalized_re".
void write_mellin_csv(std::ostream& os, double alpha, double theta, double lambda_max, int points_per_side);

}  // namespace nlt::io
