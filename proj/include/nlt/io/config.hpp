#pragma once

#include "nlt/solver.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlt::io {

inline constexpr int config_schema_version = 1;

// Raised for unreadable, malformed or out-of-range configuration. The
// message starts with "<source>:<line>: " when the line is known and always
// names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& msg, std::string key = {}, int line = 0)
        : std::runtime_error(msg), key_(std::move(key)), line_(line) {}
    const std::string& key() const { return key_; }
    int line() const { return line_; }

private:
    std::string key_;
    int line_;
};

// Parses the sectioned key = value format ('#' or ';' comment lines).
// Relative sample-file paths resolve against base_dir.
SimConfig parse_sim_config(std::istream& is, const std::string& source = "<config>",
                           const std::filesystem::path& base_dir = ".");
SimConfig load_sim_config(const std::filesystem::path& path);

// Writes a config that parses back to cfg. Custom samples go to a sibling
// file named by samples_file, which must then be written by the caller.
std::string to_ini(const SimConfig& cfg, const std::string& samples_file = "samples.txt");

struct SweepAxes {
    std::vector<double> alpha, beta, nu, amplitude;
    std::size_t cells() const { return alpha.size() * beta.size() * nu.size() * amplitude.size(); }
};

struct SweepConfig {
    SimConfig base;  // every non-swept key
    SweepAxes axes;
    int bisect_steps = 0;  // extra runs refining each boundary bracket
};

inline constexpr std::size_t max_sweep_cells = 10000;

// A simulate config plus a [sweep] section. Axis values are comma lists or
// start:stop:step ranges; an absent axis falls back to the base value.
SweepConfig parse_sweep_config(std::istream& is, const std::string& source = "<sweep>",
                               const std::filesystem::path& base_dir = ".");
SweepConfig load_sweep_config(const std::filesystem::path& path);

// "0.3, 0.5" or "0:1:0.1" (stop included up to rounding).
std::vector<double> parse_axis(const std::string& text);

}  // namespace nlt::io
