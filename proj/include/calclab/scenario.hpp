#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "calclab/grid.hpp"

namespace calclab {

/// Bad command line or config input; the CLI maps this to a usage error.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WeightSpec {
    enum class Kind { Constant, Power };
    Kind kind = Kind::Constant;
    double c = 1.0;   // constant value
    double a = 0.0;   // power exponent
    double x0 = 0.0;  // power center

    std::string to_string() const;
    static WeightSpec parse(const std::string& text);
};

/// One fully determined experiment: the seed pins every random draw.
struct Scenario {
    std::string suite;
    int m = 1;
    std::size_t n_cells = 1024;
    double x_min = -4.0;
    double x_max = 4.0;
    int kappa = 3;
    double s = 0.01;
    double gamma = 1.0;
    std::vector<double> beta;       // defaults to (0,...,0,1) over m+1 slots
    std::vector<WeightSpec> weights;
    std::vector<double> exponents;  // p_1..p_{m+1}
    std::uint64_t seed = 1;
    int samples = 20;
    SearchMode search = SearchMode::Dyadic;

    std::vector<double> beta_or_default() const;

    /// Flat key-value JSON document. Lists are comma-joined strings and
    /// weight specs are semicolon-joined tag strings.
    std::string to_json() const;
    static Scenario from_json(const std::string& text);
    static Scenario from_file(const std::string& path);
};

SearchMode parse_search_mode(const std::string& name);
std::string search_mode_name(SearchMode mode);

}  // namespace calclab
