#include <cmath>
#include <vector>

#include "calclab/generate.hpp"
#include "calclab/kernels.hpp"
#include "doctest.h"

using namespace calclab;

namespace {

// exact integral of the piecewise-constant difference A'(s) - A'(y) over [y, x]
double p2_integral_oracle(const LipschitzData& A, double x, double y) {
    const Grid& g = A.grid();
    double lo = std::min(x, y), hi = std::max(x, y);
    double ay = A.aprime_at(y);
    long double acc = 0.0L;
    std::size_t clo = g.cell_of(lo), chi = g.cell_of(hi);
    for (std::size_t c = clo; c <= chi; ++c) {
        double seg_lo = std::max(lo, g.cell_left(c));
        double seg_hi = std::min(hi, g.cell_left(c) + g.h());
        if (seg_hi <= seg_lo) continue;
        acc += static_cast<long double>(A.aprime()[c] - ay) * (seg_hi - seg_lo);
    }
    double val = static_cast<double>(acc);
    return x >= y ? val : -val;
}

LipschitzData random_symbol(Rng& rng, const Grid& g) {
    TrigProfile prof = TrigProfile::random(rng, 5);
    SampledFunction ap = SampledFunction::from_fn(
        g, [&](double x) { return prof((x - g.x_min()) / (g.x_max() - g.x_min())); });
    return LipschitzData(ap, 0.0);
}

}  // namespace

TEST_CASE("taylor remainder vanishes for affine symbols") {
    Grid g(-2.0, 2.0, 64);
    LipschitzData A(SampledFunction::constant(g, 3.25), 0.0);
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        double x = rng.uniform(-2.0, 2.0), y = rng.uniform(-2.0, 2.0);
        CHECK(std::abs(p2(A, x, y)) <= 1e-13);
    }
}

TEST_CASE("taylor remainder of the squared symbol") {
    Grid g(-2.0, 2.0, 256);
    LipschitzData A(SampledFunction::from_fn(g, [](double x) { return 2.0 * x; }), 0.0);
    double h = g.h();
    // derivative samples are exact at centers; remainder is (x-y)^2 - h^2/4
    double y = g.cell_center(96);
    CHECK(std::abs(p2(A, 1.0, y) - (1.0 - y) * (1.0 - y)) <= h * h);
    CHECK(std::abs(p2(A, 1.0, 0.0) - 1.0) <= h);
}

TEST_CASE("taylor remainder equals its integral form") {
    Grid g(-3.0, 3.0, 128);
    Rng rng(17);
    LipschitzData A = random_symbol(rng, g);
    for (int i = 0; i < 100; ++i) {
        double x = rng.uniform(-3.0, 3.0);
        double y = g.cell_center(rng.index(128));
        CHECK(p2(A, x, y) == doctest::Approx(p2_integral_oracle(A, x, y)).epsilon(1e-11));
    }
}

TEST_CASE("recentering the symbol preserves the remainder") {
    Grid g(-3.0, 3.0, 128);
    Rng rng(23);
    LipschitzData A = random_symbol(rng, g);

    LipschitzData affine(SampledFunction::constant(g, 1.5), 0.0);
    LipschitzData affine_rc = recenter(affine, {10, 50});
    for (double v : affine_rc.aprime().values()) CHECK(std::abs(v) <= 1e-14);

    GridInterval I{32, 96};
    LipschitzData arc = recenter(A, I);
    CHECK(std::abs(average(arc.aprime(), I)) <= 1e-13);
    for (int i = 0; i < 50; ++i) {
        double y = rng.uniform(-3.0, 3.0);
        double z = g.cell_center(rng.index(128));
        CHECK(p2(A, y, z) == doctest::Approx(p2(arc, y, z)).epsilon(1e-10));
    }
}

TEST_CASE("multilinear kernel values and support") {
    std::vector<double> y1{0.5, 1.0};
    CHECK(kernel_k(1, 0.0, y1) == doctest::Approx(-1.0));
    std::vector<double> y2{2.0, 1.0};
    CHECK(kernel_k(1, 0.0, y2) == 0.0);
    std::vector<double> y3{-0.5, -0.5, -1.0};
    CHECK(kernel_k(2, 0.0, y3) == doctest::Approx(1.0));
    std::vector<double> ysing{0.5, 0.0};
    CHECK_THROWS_AS(kernel_k(1, 0.0, ysing), std::invalid_argument);
}

TEST_CASE("kernel size bounds on random admissible tuples") {
    Grid g(-4.0, 4.0, 256);
    Rng rng(31);
    LipschitzData A = random_symbol(rng, g);
    for (int m : {1, 2}) {
        double bound_k = std::pow(m + 1.0, m + 1);
        double bound_ka = std::pow(m + 1.0, m + 2);
        for (int i = 0; i < 2000; ++i) {
            double x = rng.uniform(-3.5, 3.5);
            double ylast = rng.uniform(-3.5, 3.5);
            if (std::abs(x - ylast) < 1e-3) continue;
            std::vector<double> y(static_cast<std::size_t>(m) + 1);
            for (int j = 0; j < m; ++j)
                y[static_cast<std::size_t>(j)] =
                    rng.uniform(std::min(x, ylast), std::max(x, ylast));
            y.back() = ylast;
            double sum = 0.0;
            for (double yj : y) sum += std::abs(x - yj);
            CHECK(std::abs(kernel_k(m, x, y)) * std::pow(sum, m + 1) <= bound_k * (1 + 1e-12));
            double p2v = p2(A, x, ylast);
            if (p2v != 0.0) {
                double ka = kernel_ka(A, m, x, y);
                CHECK(std::abs(ka) * std::pow(sum, m + 2) / std::abs(p2v) <=
                      bound_ka * (1 + 1e-12));
            }
        }
    }
}

TEST_CASE("composite remainder kernel value") {
    Grid g(-2.0, 2.0, 1024);
    LipschitzData A(SampledFunction::from_fn(g, [](double x) { return 2.0 * x; }), 0.0);
    std::vector<double> y{0.5, 1.0};
    CHECK(kernel_ka(A, 1, 0.0, y) == doctest::Approx(1.0).epsilon(1e-4));
    std::vector<double> youter{1.5, 1.0};
    CHECK(kernel_ka(A, 1, 0.0, youter) == 0.0);
}

TEST_CASE("commutator against the log integral") {
    Grid g(-4.0, 4.0, 1024);
    std::vector<LipschitzData> a;
    a.emplace_back(SampledFunction::constant(g, 1.0), 0.0);
    SampledFunction f = SampledFunction::from_fn(
        g, [](double x) { return (x > -1.0 && x < 1.0) ? 1.0 : 0.0; });
    double got = commutator(a, f, 2.0);
    CHECK(std::abs(got - std::log(3.0)) <= g.h());

    SampledFunction zero = SampledFunction::constant(g, 0.0);
    CHECK(commutator(a, zero, 2.0) == 0.0);
}

TEST_CASE("commutator vanishes when one slot has constant symbol") {
    Grid g(-4.0, 4.0, 256);
    Rng rng(3);
    std::vector<LipschitzData> a;
    a.push_back(random_symbol(rng, g));
    a.emplace_back(SampledFunction::constant(g, 0.0), 0.0);  // vanishing derivative
    SampledFunction f = SampledFunction::from_fn(
        g, [](double x) { return std::exp(-x * x); });
    CHECK(commutator(a, f, 1.0) == 0.0);
}

TEST_CASE("remainder commutator collapses for the squared symbol") {
    Grid g(-2.0, 2.0, 1024);
    LipschitzData A(SampledFunction::from_fn(g, [](double x) { return 2.0 * x; }), 0.0);
    std::vector<LipschitzData> a;
    a.emplace_back(SampledFunction::constant(g, 1.0), 0.0);
    SampledFunction f = SampledFunction::from_fn(
        g, [](double x) { return (x > -1.0 && x < 1.0) ? 1.0 : 0.0; });
    double got = commutator_a(A, a, f, 2.0);
    CHECK(std::abs(got - 2.0) <= 4.0 * g.h());

    LipschitzData affine(SampledFunction::constant(g, 2.0), 0.0);
    CHECK(std::abs(commutator_a(affine, a, f, 2.0)) <= 1e-10);
}

TEST_CASE("principal value sums refine at first order") {
    std::vector<double> vals_c, vals_ca;
    for (std::size_t n : {256u, 512u, 1024u, 2048u}) {
        Grid g(-4.0, 4.0, n);
        Rng fixed(1234);
        TrigProfile prof_a = TrigProfile::random(fixed, 4);
        TrigProfile prof_f = TrigProfile::random(fixed, 4);
        TrigProfile prof_s = TrigProfile::random(fixed, 4);
        auto window = [&](double x) {
            return smooth_window((x - g.x_min()) / (g.x_max() - g.x_min()));
        };
        std::vector<LipschitzData> a;
        a.emplace_back(SampledFunction::from_fn(g, [&](double x) {
                           return prof_a((x + 4) / 8) * window(x);
                       }),
                       0.0);
        LipschitzData A(
            SampledFunction::from_fn(g, [&](double x) { return prof_s((x + 4) / 8); }), 0.0);
        SampledFunction f = SampledFunction::from_fn(
            g, [&](double x) { return prof_f((x + 4) / 8) * window(x); });
        vals_c.push_back(commutator(a, f, 0.37));
        vals_ca.push_back(commutator_a(A, a, f, 0.37));
    }
    // successive differences shrink with h
    double d1 = std::abs(vals_c[1] - vals_c[0]);
    double d3 = std::abs(vals_c[3] - vals_c[2]);
    CHECK(d3 <= 0.6 * d1 + 1e-14);
    double e1 = std::abs(vals_ca[1] - vals_ca[0]);
    double e3 = std::abs(vals_ca[3] - vals_ca[2]);
    CHECK(e3 <= 0.6 * e1 + 1e-14);
}

TEST_CASE("one-sided smoothing reproduces constants and support") {
    Grid g(0.0, 8.0, 512);
    double t = 16.0 * g.h();
    ApproxIdentity k(t);
    SampledFunction one = SampledFunction::constant(g, 1.0);
    CHECK(approx_identity_apply(k, one, 2.0) == doctest::Approx(1.0).epsilon(2e-3));

    // mass sits strictly to the right of the evaluation point
    SampledFunction leftf = SampledFunction::from_fn(
        g, [](double x) { return x <= 2.0 ? 1.0 : 0.0; });
    CHECK(approx_identity_apply(k, leftf, 2.0 + g.h() / 2) == 0.0);

    double x = g.cell_left(128);
    SampledFunction half = SampledFunction::from_fn(
        g, [x, t](double y) { return (y >= x && y < x + t / 2) ? 1.0 : 0.0; });
    double expected = 1.0 - ApproxIdentity::bump(0.5);
    CHECK(approx_identity_apply(k, half, x) == doctest::Approx(expected).epsilon(2e-2));

    CHECK_THROWS_AS(approx_identity_apply(ApproxIdentity(g.h()), one, 2.0),
                    std::invalid_argument);
}

TEST_CASE("mollified kernel of an affine symbol vanishes") {
    Grid g(-4.0, 4.0, 256);
    LipschitzData affine(SampledFunction::constant(g, 1.0), 0.0);
    std::vector<double> y{0.5, 1.0};
    CHECK(smoothed_kernel_kaj(affine, 1, 8 * g.h(), 1, 0.0, y) == doctest::Approx(0.0));
}

TEST_CASE("mollified kernel converges to the kernel at small scales") {
    Grid g(-4.0, 4.0, 2048);
    Rng rng(71);
    LipschitzData A = random_symbol(rng, g);
    std::vector<double> y{0.9, 2.1};
    double x = -1.7;
    double exact = kernel_ka(A, 1, x, y);
    double e_coarse = std::abs(smoothed_kernel_kaj(A, 1, 64 * g.h(), 1, x, y) - exact);
    double e_fine = std::abs(smoothed_kernel_kaj(A, 1, 8 * g.h(), 1, x, y) - exact);
    CHECK(e_fine <= 0.5 * e_coarse + 1e-12);
}

TEST_CASE("mollified kernel agrees when the bump support is clear of the pair") {
    Grid g(-4.0, 4.0, 1024);
    Rng rng(73);
    LipschitzData A = random_symbol(rng, g);
    // |y2 - y1| > t and 2t <= |x - y1| keeps the whole z-window on one side
    std::vector<double> y{1.0, 2.5};
    double x = -1.0, t = 32 * g.h();
    REQUIRE(std::abs(y[1] - y[0]) > t);
    REQUIRE(2 * t <= std::abs(x - y[0]));
    double exact = kernel_ka(A, 1, x, y);
    double got = smoothed_kernel_kaj(A, 1, t, 1, x, y);
    CHECK(got == doctest::Approx(exact).epsilon(2e-2));
}

TEST_CASE("mean oscillation seminorm basics") {
    Grid g(-1.0, 1.0, 64);
    CHECK(bmo_seminorm(SampledFunction::constant(g, 4.2)) == 0.0);
    SampledFunction step = SampledFunction::from_fn(
        g, [](double x) { return x < 0 ? -1.0 : 1.0; });
    double b = bmo_seminorm(step, SearchMode::Dyadic);
    CHECK(b == doctest::Approx(1.0));  // attained on the full domain
}
