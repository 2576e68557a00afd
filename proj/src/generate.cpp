#include "calclab/generate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace calclab {

TrigProfile TrigProfile::random(Rng& rng, int harmonics) {
    TrigProfile p;
    for (int k = 1; k <= harmonics; ++k) {
        double scale = 1.0 / static_cast<double>(k);
        p.cos_c.push_back(rng.uniform(-1.0, 1.0) * scale);
        p.sin_c.push_back(rng.uniform(-1.0, 1.0) * scale);
    }
    return p;
}

double TrigProfile::operator()(double u) const {
    double s = 0.0;
    for (std::size_t k = 0; k < cos_c.size(); ++k) {
        double w = 2.0 * std::numbers::pi * static_cast<double>(k + 1) * u;
        s += cos_c[k] * std::cos(w) + sin_c[k] * std::sin(w);
    }
    return s;
}

namespace {

double edge(double v) { return v > 0.0 ? std::exp(-1.0 / v) : 0.0; }

double ramp(double v) {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    double a = edge(v);
    return a / (a + edge(1.0 - v));
}

}  // namespace

double smooth_window(double u) {
    return ramp((u - 0.125) * 8.0) * ramp((0.875 - u) * 8.0);
}

Weight make_weight(const Grid& g, const WeightSpec& spec) {
    if (spec.kind == WeightSpec::Kind::Constant)
        return Weight(SampledFunction::constant(g, spec.c));
    // keep the center strictly between cell centers so no sample vanishes
    double x0 = spec.x0;
    if (g.contains(x0)) x0 = g.cell_left(g.cell_of(x0)) + 0.63 * g.h();
    double a = spec.a;
    return Weight(SampledFunction::from_fn(
        g, [x0, a](double x) { return std::pow(std::abs(x - x0), a); }));
}

GeneratedInputs generate_inputs(const Scenario& sc) {
    Grid g(sc.x_min, sc.x_max, sc.n_cells);
    Rng rng(sc.seed);

    // slot profiles first, then the symbol profile; draws are grid independent
    std::vector<TrigProfile> slot_profiles;
    for (int j = 0; j < sc.m + 1; ++j) slot_profiles.push_back(TrigProfile::random(rng, 5));
    TrigProfile symbol = TrigProfile::random(rng, 6);

    std::vector<SampledFunction> slots;
    bool any_support = false;
    for (const auto& prof : slot_profiles) {
        SampledFunction raw = SampledFunction::from_fn(g, [&](double x) {
            double u = (x - g.x_min()) / (g.x_max() - g.x_min());
            return prof(u) * smooth_window(u);
        });
        double peak = 0.0;
        for (double v : raw.values()) peak = std::max(peak, std::abs(v));
        if (peak == 0.0) throw std::runtime_error("generate_inputs: degenerate slot profile");
        any_support = true;
        slots.push_back(raw.map([peak](double v) { return v / peak; }));
    }
    (void)any_support;

    SampledFunction aprime_raw = SampledFunction::from_fn(g, [&](double x) {
        double u = (x - g.x_min()) / (g.x_max() - g.x_min());
        return symbol(u);
    });
    double bmo = bmo_seminorm(aprime_raw, sc.search);
    if (bmo == 0.0) throw std::runtime_error("generate_inputs: constant symbol derivative");
    SampledFunction aprime = aprime_raw.map([bmo](double v) { return v / bmo; });
    LipschitzData A(aprime, bmo_seminorm(aprime, sc.search));

    std::vector<Weight> weights;
    for (const auto& spec : sc.weights) weights.push_back(make_weight(g, spec));

    return GeneratedInputs{std::move(A), std::move(slots), std::move(weights)};
}

}  // namespace calclab
