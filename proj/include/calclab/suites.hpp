#pragma once

#include <span>
#include <vector>

#include "calclab/maximal.hpp"
#include "calclab/report.hpp"
#include "calclab/scenario.hpp"

namespace calclab {

/// Runs the named verification suite; throws UsageError for unknown names.
Report run_suite(const Scenario& sc);

Report suite_domination(const Scenario& sc);
Report suite_endpoint(const Scenario& sc);
Report suite_weighted(const Scenario& sc);
Report suite_kernels(const Scenario& sc);
Report suite_maximal(const Scenario& sc);
Report suite_weights_sanity(const Scenario& sc);
Report suite_decompositions(const Scenario& sc);

/// Operator values at every cell center.
std::vector<double> operator_field(const BoundProgram& prog, const Grid& g);

/// h * sum (|f|/lam) log^gamma(e + |f|/lam).
double entropy_integral(const SampledFunction& f, double lam, double gamma);

/// h * #{ |field| > lam }.
double superlevel_measure(std::span<const double> field, double lam, double h);

std::vector<double> log_levels(double lo, double hi, int count);

}  // namespace calclab
