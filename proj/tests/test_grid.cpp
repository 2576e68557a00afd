#include <cmath>

#include "calclab/grid.hpp"
#include "calclab/generate.hpp"
#include "doctest.h"

using namespace calclab;

TEST_CASE("integrate on indicator and constants") {
    Grid g(0.0, 1.0, 8);
    SampledFunction one = SampledFunction::constant(g, 1.0);
    CHECK(integrate(one, {0, 8}) == doctest::Approx(1.0).epsilon(1e-15));

    SampledFunction zero = SampledFunction::constant(g, 0.0);
    CHECK(integrate(zero, {2, 5}) == 0.0);

    SampledFunction half = SampledFunction::from_fn(g, [](double x) { return x < 0.5 ? 1.0 : 0.0; });
    CHECK(integrate(half, {0, 8}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(average(half, {0, 8}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(average(half, {4, 8}) == 0.0);

    CHECK_THROWS_AS(integrate(one, {0, 9}), std::out_of_range);
    CHECK_THROWS_AS(integrate(one, {3, 3}), std::out_of_range);
}

TEST_CASE("integrate is additive over adjacent intervals") {
    Grid g(-2.0, 2.0, 64);
    Rng rng(7);
    SampledFunction f = SampledFunction::from_fn(g, [&](double) { return rng.uniform(-1, 1); });
    for (std::size_t split = 1; split < 64; split += 5) {
        double whole = integrate(f, {0, 64});
        double parts = integrate(f, {0, split}) + integrate(f, {split, 64});
        CHECK(whole == doctest::Approx(parts).epsilon(1e-13));
    }
}

TEST_CASE("antiderivative satisfies the fundamental theorem on nodes") {
    Grid g(-1.0, 1.0, 32);
    SampledFunction zero = SampledFunction::constant(g, 0.0);
    PiecewiseLinear a0 = antiderivative(zero, 0.0);
    for (std::size_t k = 0; k <= 32; ++k) CHECK(a0.node(k) == 0.0);

    SampledFunction one = SampledFunction::constant(g, 1.0);
    PiecewiseLinear a1 = antiderivative(one, g.x_min());
    CHECK(a1(0.5) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(a1(g.x_min()) == 0.0);

    SampledFunction sign = SampledFunction::from_fn(g, [](double x) { return x >= 0 ? 1.0 : -1.0; });
    PiecewiseLinear asign = antiderivative(sign, 0.0);
    CHECK(asign(1.0) - asign(-1.0) == doctest::Approx(integrate(sign, {0, 32})).epsilon(1e-14));
    CHECK(asign(1.0) - asign(-1.0) == doctest::Approx(0.0));

    Rng rng(3);
    SampledFunction f = SampledFunction::from_fn(g, [&](double) { return rng.uniform(-2, 2); });
    PiecewiseLinear af = antiderivative(f, g.x_min());
    for (std::size_t a = 0; a < 32; a += 3)
        for (std::size_t b = a + 1; b <= 32; b += 5) {
            double lhs = af.node(b) - af.node(a);
            CHECK(lhs == doctest::Approx(integrate(f, {a, b})).epsilon(1e-12));
        }
}

TEST_CASE("candidate interval counts and determinism") {
    Grid g(0.0, 1.0, 4);
    auto chain = candidate_intervals(g, 0.1, SearchMode::DyadicOnly);
    CHECK(chain.size() == 3);  // cell, half, root: log2(4)+1
    CHECK(chain.front() == GridInterval{0, 1});
    CHECK(chain.back() == GridInterval{0, 4});

    auto all_dyadic = candidate_intervals(g, std::nullopt, SearchMode::DyadicOnly);
    CHECK(all_dyadic.size() == 2 * 4 - 1);

    Grid g16(0.0, 1.0, 16);
    auto a = candidate_intervals(g16, 0.3, SearchMode::Exhaustive);
    auto b = candidate_intervals(g16, 0.3, SearchMode::Exhaustive);
    CHECK(a == b);
    std::size_t cell = g16.cell_of(0.3);
    CHECK(a.size() == (cell + 1) * (16 - cell));  // all [lo,hi) with lo <= cell < hi

    auto capped = candidate_intervals(g16, 0.3, SearchMode::Exhaustive, 20);
    CHECK(capped.size() == 20);
    CHECK_THROWS_AS(candidate_intervals(g16, 0.3, SearchMode::Exhaustive, 4), std::invalid_argument);
}

TEST_CASE("dyadic chain length is log2(n)+1") {
    Grid g(0.0, 1.0, 4);
    DyadicLattice lat(g);
    auto chain = lat.chain_of_cell(0);
    CHECK(chain.size() == 3);
    CHECK(chain[0] == GridInterval{0, 1});
    CHECK(chain[1] == GridInterval{0, 2});
    CHECK(chain[2] == GridInterval{0, 4});
}

TEST_CASE("grid requires power-of-two cells") {
    CHECK_THROWS_AS(Grid(0.0, 1.0, 12), std::invalid_argument);
    CHECK_THROWS_AS(Grid(1.0, 0.0, 16), std::invalid_argument);
}

TEST_CASE("mean-value ratio of the reconstructed antiderivative") {
    Grid g(-2.0, 2.0, 128);
    Rng rng(11);
    TrigProfile prof = TrigProfile::random(rng, 5);
    SampledFunction ap = SampledFunction::from_fn(
        g, [&](double x) { return prof((x - g.x_min()) / 4.0); });
    PiecewiseLinear A = antiderivative(ap, 0.0);

    PrefixSums abs1(ap.abs_pow(1.0));
    PrefixSums abs2(ap.abs_pow(2.0));
    double worst_inf = 0.0, worst_two = 0.0;
    for (std::size_t i = 0; i <= 128; i += 3) {
        for (std::size_t j = 0; j <= 128; j += 5) {
            if (i == j) continue;
            double x = g.x_min() + static_cast<double>(i) * g.h();
            double y = g.x_min() + static_cast<double>(j) * g.h();
            double gap = std::abs(A(x) - A(y));
            // grid-aligned cover of the interval centered at x with radius |x-y|
            double r = std::abs(x - y);
            auto lo = static_cast<std::ptrdiff_t>(std::floor((x - r - g.x_min()) / g.h()));
            auto hi = static_cast<std::ptrdiff_t>(std::ceil((x + r - g.x_min()) / g.h()));
            GridInterval I{static_cast<std::size_t>(std::max<std::ptrdiff_t>(lo, 0)),
                           std::min<std::size_t>(static_cast<std::size_t>(std::max<std::ptrdiff_t>(hi, 1)),
                                                 128)};
            double sup = 0.0;
            for (std::size_t k = I.i_lo; k < I.i_hi; ++k) sup = std::max(sup, std::abs(ap[k]));
            if (sup > 0.0) worst_inf = std::max(worst_inf, gap / (r * sup));
            double m2 = std::sqrt(abs2.average(I));
            if (m2 > 0.0) worst_two = std::max(worst_two, gap / (r * m2));
        }
    }
    CHECK(worst_inf <= 1.0 + 1e-12);
    CHECK(worst_two <= 2.0);
}
