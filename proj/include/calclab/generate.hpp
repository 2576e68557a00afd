#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "calclab/grid.hpp"
#include "calclab/kernels.hpp"
#include "calclab/scenario.hpp"
#include "calclab/weights.hpp"

namespace calclab {

/// Deterministic random stream; the double conversions are spelled out so
/// identical seeds give identical bits on any conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }  // [0,1)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

private:
    std::mt19937_64 gen_;
};

/// Low-order trigonometric polynomial on the unit interval; coefficients are
/// drawn once so the same profile can be sampled on any grid.
struct TrigProfile {
    std::vector<double> cos_c, sin_c;

    static TrigProfile random(Rng& rng, int harmonics);
    double operator()(double u) const;  // u in [0, 1]
};

/// C-infinity window equal to 0 on the outer eighth of [0,1] and 1 on the
/// middle half.
double smooth_window(double u);

struct GeneratedInputs {
    LipschitzData A;                     // symbol, derivative rescaled to unit oscillation norm
    std::vector<SampledFunction> slots;  // a_1, ..., a_m, then f
    std::vector<Weight> weights;         // one per scenario weight spec
};

GeneratedInputs generate_inputs(const Scenario& sc);

Weight make_weight(const Grid& g, const WeightSpec& spec);

}  // namespace calclab
