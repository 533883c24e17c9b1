#pragma once

#include "nlt/diagnostics.hpp"
#include "nlt/solver.hpp"

#include "json.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nlt::io {

struct RunManifest {
    SimConfig config_echo;
    std::map<std::string, double> calibrated_constants;
    Verdict verdict = Verdict::completed;
    std::string reason;
    std::optional<double> blowup_time_estimate;
    std::optional<double> confirm_blowup_time;  // estimate at doubled resolution
    double final_time = 0.0;
    long steps = 0;
    std::vector<std::string> artifact_paths;  // relative to the run directory
    std::string tool_version;
    double wall_time = 0.0;

    bool operator==(const RunManifest&) const = default;
};

nlohmann::json config_to_json(const SimConfig& c);
// Throws std::invalid_argument naming the key on a missing or mistyped field.
SimConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

std::string serialize(const RunManifest& m);
RunManifest parse_manifest(const std::string& text);

inline constexpr const char* manifest_name = "manifest.json";
void write_manifest(const std::filesystem::path& run_dir, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& run_dir);

// C_alpha, C_beta, C_{alpha,delta} and the smallest lhs/rhs ratio of the
// weighted inequality over a seeded random family of `family` profiles.
std::map<std::string, double> calibrated_constants(const SimConfig& c, int family = 16);

}  // namespace nlt::io
