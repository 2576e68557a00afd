#pragma once

#include <string>
#include <vector>

#include "calclab/scenario.hpp"

namespace calclab {

/// One verified inequality: the empirical constant, the bound it was held
/// against, and the verdict. `anchor` names the mathematical statement the
/// check exercises.
struct Check {
    std::string name;
    std::string anchor;
    double constant = 0.0;
    double threshold = 0.0;
    bool pass = true;
    double runtime_sec = 0.0;
    std::string note;

    bool operator==(const Check&) const = default;
};

struct Report {
    std::vector<Check> checks;
    std::string suite;
    Scenario scenario;
    std::string backend;
    double total_runtime_sec = 0.0;

    bool all_pass() const;
};

std::string report_to_json(const Report& r);
std::string report_to_csv(const Report& r);
Report report_from_json(const std::string& text);

void emit_report(const Report& r, const std::string& format, const std::string& path);

}  // namespace calclab
