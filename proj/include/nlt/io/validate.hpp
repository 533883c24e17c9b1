#pragma once

#include "json.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace nlt::io {

enum class ValidationLevel { fast, full };

ValidationLevel validation_level_from_string(std::string_view s);
const char* to_string(ValidationLevel l);

struct CheckResult {
    std::string name;
    std::string statement;  // what is being certified, in one line
    bool passed = false;
    double value = 0.0;      // the measured figure of merit
    double tolerance = 0.0;  // bound the value is compared against
    std::string detail;
    double seconds = 0.0;
};

struct ValidationReport {
    ValidationLevel level = ValidationLevel::fast;
    std::vector<CheckResult> checks;
    double wall_time = 0.0;
    bool all_passed() const;
};

// Runs the certification suite. A check that throws is recorded as failed.
ValidationReport run_validation(ValidationLevel level,
                                const std::function<void(const CheckResult&)>& progress = {});

nlohmann::json to_json(const ValidationReport& r);

}  // namespace nlt::io
