#include "nlt/io/manifest.hpp"

#include "nlt/closed_forms.hpp"
#include "nlt/fractional.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nlt::io {

using nlohmann::json;

namespace {

template <class T>
T field(const json& j, const char* section, const char* key)
{
    const std::string name = std::string(section) + "." + key;
    if (!j.contains(section) || !j.at(section).is_object() || !j.at(section).contains(key))
        throw std::invalid_argument("manifest: missing " + name);
    try {
        return j.at(section).at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("manifest: " + name + " has the wrong type");
    }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

}  // namespace

json config_to_json(const SimConfig& c)
{
    json j;
    j["schema_version"] = 1;
    j["model"] = {{"alpha", c.alpha}, {"beta", c.beta}, {"nu", c.nu}, {"drift_enabled", c.drift_enabled}};
    j["grid"] = {{"n", c.n}, {"length", c.length}};
    j["initial"] = {{"family", to_string(c.initial.family)},
                    {"amplitude", c.initial.amplitude},
                    {"width", c.initial.width},
                    {"odd", c.initial.odd},
                    {"samples", c.initial.samples}};
    j["time"] = {{"t_end", c.t_end}, {"cfl_safety", c.cfl_safety}, {"dt_max", c.dt_max},
                 {"fixed_dt", optional_number(c.fixed_dt)}};
    j["detection"] = {{"blowup_gradient_threshold", c.blowup_gradient_threshold},
                      {"spectral_tail_threshold", c.spectral_tail_threshold},
                      {"boundary_threshold", c.boundary_threshold},
                      {"initial_boundary_threshold", c.initial_boundary_threshold},
                      {"confirm_blowup", c.confirm_blowup}};
    j["diagnostics"] = {{"weight_delta", c.weight_delta},
                        {"lp_exponent", c.lp_exponent},
                        {"modulus_monitor", c.modulus_monitor},
                        {"modulus_delta", c.modulus_delta},
                        {"diag_stride", c.diag_stride}};
    j["output"] = {{"output_stride", c.output_stride}};
    return j;
}

SimConfig config_from_json(const json& j)
{
    SimConfig c;
    c.alpha = field<double>(j, "model", "alpha");
    c.beta = field<double>(j, "model", "beta");
    c.nu = field<double>(j, "model", "nu");
    c.drift_enabled = field<bool>(j, "model", "drift_enabled");
    c.n = field<int>(j, "grid", "n");
    c.length = field<double>(j, "grid", "length");
    c.initial.family = initial_family_from_string(field<std::string>(j, "initial", "family"));
    c.initial.amplitude = field<double>(j, "initial", "amplitude");
    c.initial.width = field<double>(j, "initial", "width");
    c.initial.odd = field<bool>(j, "initial", "odd");
    c.initial.samples = field<std::vector<double>>(j, "initial", "samples");
    c.t_end = field<double>(j, "time", "t_end");
    c.cfl_safety = field<double>(j, "time", "cfl_safety");
    c.dt_max = field<double>(j, "time", "dt_max");
    c.fixed_dt = read_optional(j.at("time"), "fixed_dt");
    c.blowup_gradient_threshold = field<double>(j, "detection", "blowup_gradient_threshold");
    c.spectral_tail_threshold = field<double>(j, "detection", "spectral_tail_threshold");
    c.boundary_threshold = field<double>(j, "detection", "boundary_threshold");
    c.initial_boundary_threshold = field<double>(j, "detection", "initial_boundary_threshold");
    c.confirm_blowup = field<bool>(j, "detection", "confirm_blowup");
    c.weight_delta = field<double>(j, "diagnostics", "weight_delta");
    c.lp_exponent = field<double>(j, "diagnostics", "lp_exponent");
    c.modulus_monitor = field<bool>(j, "diagnostics", "modulus_monitor");
    c.modulus_delta = field<double>(j, "diagnostics", "modulus_delta");
    c.diag_stride = field<int>(j, "diagnostics", "diag_stride");
    c.output_stride = field<int>(j, "output", "output_stride");
    return c;
}

json to_json(const RunManifest& m)
{
    json j;
    j["config_echo"] = config_to_json(m.config_echo);
    j["calibrated_constants"] = m.calibrated_constants;
    j["verdict"] = to_string(m.verdict);
    j["reason"] = m.reason;
    j["blowup_time_estimate"] = optional_number(m.blowup_time_estimate);
    j["confirm_blowup_time"] = optional_number(m.confirm_blowup_time);
    j["final_time"] = m.final_time;
    j["steps"] = m.steps;
    j["artifact_paths"] = m.artifact_paths;
    j["tool_version"] = m.tool_version;
    j["wall_time"] = m.wall_time;
    return j;
}

RunManifest manifest_from_json(const json& j)
{
    RunManifest m;
    try {
        m.config_echo = config_from_json(j.at("config_echo"));
        m.calibrated_constants = j.at("calibrated_constants").get<std::map<std::string, double>>();
        m.verdict = verdict_from_string(j.at("verdict").get<std::string>());
        m.reason = j.at("reason").get<std::string>();
        m.blowup_time_estimate = read_optional(j, "blowup_time_estimate");
        m.confirm_blowup_time = read_optional(j, "confirm_blowup_time");
        m.final_time = j.at("final_time").get<double>();
        m.steps = j.at("steps").get<long>();
        m.artifact_paths = j.at("artifact_paths").get<std::vector<std::string>>();
        m.tool_version = j.at("tool_version").get<std::string>();
        m.wall_time = j.at("wall_time").get<double>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("manifest: ") + e.what());
    }
    return m;
}

std::string serialize(const RunManifest& m) { return to_json(m).dump(2) + "\n"; }

RunManifest parse_manifest(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("manifest: ") + e.what());
    }
    return manifest_from_json(j);
}

void write_manifest(const std::filesystem::path& run_dir, const RunManifest& m)
{
    std::ofstream out(run_dir / manifest_name);
    if (!out) throw std::runtime_error("cannot write " + (run_dir / manifest_name).string());
    out << serialize(m);
}

RunManifest read_manifest(const std::filesystem::path& run_dir)
{
    std::ifstream in(run_dir / manifest_name);
    if (!in) throw std::runtime_error("cannot read " + (run_dir / manifest_name).string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

std::map<std::string, double> calibrated_constants(const SimConfig& c, int family)
{
    std::map<std::string, double> out;
    if (c.alpha > 0.0) out["C_alpha"] = riesz_kernel_constant(c.alpha);
    if (c.beta > 0.0 && c.beta < 2.0) out["C_beta"] = laplacian_kernel_constant(c.beta);
    const double delta = c.resolved_weight_delta();
    out["weight_delta"] = delta;
    if (c.alpha > 0.0 && delta > 2.0 * c.alpha && delta < 2.0) {
        out["C_alpha_delta"] = riesz_power_constant(c.alpha, delta).value;
        double worst = std::numeric_limits<double>::infinity();
        for (int s = 1; s <= family; ++s) {
            const auto w = weighted_inequality_check(random_odd_profile(s), c.alpha, delta);
            if (!w.indeterminate) worst = std::min(worst, w.ratio);
        }
        if (std::isfinite(worst)) out["weighted_inequality_min_ratio"] = worst;
    }
    return out;
}

}  // namespace nlt::io
