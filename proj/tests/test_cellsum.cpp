#include <cmath>
#include <vector>

#include "calclab/cellsum.hpp"
#include "calclab/generate.hpp"
#include "doctest.h"

using namespace calclab;

namespace {

cellsum::PvSumArgs random_args(Rng& rng, int m, bool taylor, std::vector<double>& f,
                               std::vector<std::vector<double>>& tabs,
                               std::vector<const double*>& tab_ptrs, std::vector<double>& ax,
                               std::vector<double>& ttab, std::vector<double>& tslope,
                               std::ptrdiff_t n) {
    f.resize(static_cast<std::size_t>(n));
    for (auto& v : f) v = rng.uniform(-1, 1);
    tabs.assign(static_cast<std::size_t>(m), {});
    ax.resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        tabs[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(n));
        for (auto& v : tabs[static_cast<std::size_t>(j)]) v = rng.uniform(-2, 2);
        ax[static_cast<std::size_t>(j)] = rng.uniform(-2, 2);
    }
    tab_ptrs.clear();
    for (auto& t : tabs) tab_ptrs.push_back(t.data());

    cellsum::PvSumArgs a;
    a.f = f.data();
    a.a_tab = tab_ptrs.data();
    a.ax = ax.data();
    a.m = m;
    a.x = rng.uniform(-1, 1);
    a.y0 = -4.0;
    a.h = 8.0 / static_cast<double>(n);
    a.pw = m + 1;
    a.c_lo = 0;
    a.c_hi = n;
    a.skip = static_cast<std::ptrdiff_t>(rng.index(static_cast<std::size_t>(n)));
    // keep the evaluation point off every remaining cell center
    a.x = a.y0 + (static_cast<double>(a.skip) + 0.5) * a.h;
    if (taylor) {
        ttab.resize(static_cast<std::size_t>(n));
        tslope.resize(static_cast<std::size_t>(n));
        for (auto& v : ttab) v = rng.uniform(-2, 2);
        for (auto& v : tslope) v = rng.uniform(-2, 2);
        a.taylor_tab = ttab.data();
        a.taylor_slope = tslope.data();
        a.taylor_x = rng.uniform(-2, 2);
        a.pw = m + 2;
    }
    return a;
}

}  // namespace

TEST_CASE("scalar and dispatched cell sums agree") {
    Rng rng(42);
    for (int m : {1, 2, 3}) {
        for (bool taylor : {false, true}) {
            for (std::ptrdiff_t n : {5, 16, 63, 256}) {
                std::vector<double> f, ax, ttab, tslope;
                std::vector<std::vector<double>> tabs;
                std::vector<const double*> ptrs;
                auto args = random_args(rng, m, taylor, f, tabs, ptrs, ax, ttab, tslope, n);
                double a = cellsum::pv_sum_scalar(args);
                double b = cellsum::pv_sum(args);
                // tolerance scales with the magnitude of the accumulated terms
                double abs_sum = 1.0;
                for (std::ptrdiff_t c = args.c_lo; c < args.c_hi; ++c) {
                    if (c == args.skip) continue;
                    double dx = args.x - (args.y0 + (static_cast<double>(c) + 0.5) * args.h);
                    double num = std::abs(f[static_cast<std::size_t>(c)]);
                    for (int j = 0; j < m; ++j)
                        num *= std::abs(ax[static_cast<std::size_t>(j)] -
                                        tabs[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)]);
                    if (taylor)
                        num *= std::abs(args.taylor_x - ttab[static_cast<std::size_t>(c)]) +
                               std::abs(tslope[static_cast<std::size_t>(c)] * dx);
                    abs_sum += num / std::pow(std::abs(dx), args.pw);
                }
                CHECK(std::abs(a - b) <= 1e-12 * abs_sum);
            }
        }
    }
}

TEST_CASE("restricted ranges and skip handling") {
    Rng rng(9);
    std::vector<double> f, ax, ttab, tslope;
    std::vector<std::vector<double>> tabs;
    std::vector<const double*> ptrs;
    auto args = random_args(rng, 2, true, f, tabs, ptrs, ax, ttab, tslope, 128);
    args.c_lo = 17;
    args.c_hi = 101;
    args.skip = 55;
    double a = cellsum::pv_sum_scalar(args);
    double b = cellsum::pv_sum(args);
    CHECK(a == doctest::Approx(b).epsilon(1e-11));

    // skip outside the range changes nothing
    auto args2 = args;
    args2.skip = 3;
    auto args3 = args;
    args3.skip = -1;
    CHECK(cellsum::pv_sum_scalar(args2) == cellsum::pv_sum_scalar(args3));
}

TEST_CASE("forcing the scalar backend and restoring") {
    auto original = cellsum::active_backend();
    cellsum::force_backend(cellsum::Backend::Scalar);
    CHECK(cellsum::active_backend() == cellsum::Backend::Scalar);
    cellsum::force_backend(original);
    CHECK(cellsum::active_backend() == original);
}
