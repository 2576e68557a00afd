#include "calclab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "calclab/cellsum.hpp"

namespace calclab {

namespace {

GridInterval intersect(GridInterval a, GridInterval b) {
    std::size_t lo = std::max(a.i_lo, b.i_lo);
    std::size_t hi = std::min(a.i_hi, b.i_hi);
    if (lo >= hi) return {0, 0};
    return {lo, hi};
}

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw std::invalid_argument("inputs live on different grids");
}

}  // namespace

double bmo_seminorm(const SampledFunction& g, SearchMode mode) {
    PrefixSums ps(g);
    double best = 0.0;
    auto v = g.values();
    for (const auto& I : candidate_intervals(g.grid(), std::nullopt, mode)) {
        double mean = ps.average(I);
        double osc = 0.0;
        for (std::size_t k = I.i_lo; k < I.i_hi; ++k) osc += std::abs(v[k] - mean);
        best = std::max(best, osc / static_cast<double>(I.cells()));
    }
    return best;
}

LipschitzData::LipschitzData(SampledFunction aprime, SearchMode bmo_mode)
    : aprime_(std::move(aprime)),
      A_(::calclab::antiderivative(aprime_, aprime_.grid().x_min())),
      centers_(A_.center_values()),
      bmo_norm_(bmo_seminorm(aprime_, bmo_mode)) {}

LipschitzData::LipschitzData(SampledFunction aprime, double known_bmo_norm)
    : aprime_(std::move(aprime)),
      A_(::calclab::antiderivative(aprime_, aprime_.grid().x_min())),
      centers_(A_.center_values()),
      bmo_norm_(known_bmo_norm) {}

double p2(const LipschitzData& A, double x, double y) {
    return A.A_at(x) - A.A_at(y) - A.aprime_at(y) * (x - y);
}

LipschitzData recenter(const LipschitzData& A, GridInterval I) {
    check_interval(A.grid(), I);
    double mean = average(A.aprime(), I);
    SampledFunction shifted = A.aprime().map([mean](double v) { return v - mean; });
    return LipschitzData(std::move(shifted), A.bmo_norm());
}

double kernel_k(int m, double x, std::span<const double> y) {
    if (static_cast<int>(y.size()) != m + 1)
        throw std::invalid_argument("kernel_k: need m+1 coordinates");
    double ylast = y[m];
    double d = x - ylast;
    if (d == 0.0) throw std::invalid_argument("kernel_k: singular input x == y_{m+1}");
    double lo = std::min(x, ylast), hi = std::max(x, ylast);
    for (int j = 0; j < m; ++j)
        if (!(y[j] > lo && y[j] < hi)) return 0.0;
    int e = ylast - x >= 0.0 ? 1 : 0;
    double sign = (m * e) % 2 == 0 ? 1.0 : -1.0;
    double den = d;
    for (int p = 1; p <= m; ++p) den *= d;
    return sign / den;
}

double kernel_ka(const LipschitzData& A, int m, double x, std::span<const double> y) {
    double k = kernel_k(m, x, y);
    if (k == 0.0) return 0.0;
    return k * p2(A, x, y[m]) / (x - y[m]);
}

namespace {

double pv_commutator_sum(std::span<const LipschitzData> a_list, const SampledFunction& f,
                         double x, GridInterval r, const LipschitzData* taylor) {
    const Grid& g = f.grid();
    const int m = static_cast<int>(a_list.size());
    for (const auto& a : a_list) require_same_grid(g, a.grid());
    if (taylor) require_same_grid(g, taylor->grid());

    GridInterval range = intersect(r, f.support());
    std::size_t c0 = g.nearest_center(x);
    double xe = g.cell_center(c0);

    std::vector<const double*> tabs(a_list.size());
    std::vector<double> ax(a_list.size());
    double x_clamped = std::clamp(xe, g.cell_left(r.i_lo), g.cell_left(r.i_hi));
    for (int j = 0; j < m; ++j) {
        tabs[j] = a_list[j].center_table().data();
        ax[j] = a_list[j].A_at(x_clamped);
    }

    cellsum::PvSumArgs args;
    args.f = f.values().data();
    args.a_tab = tabs.data();
    args.ax = ax.data();
    args.m = m;
    args.x = xe;
    args.y0 = g.x_min();
    args.h = g.h();
    args.pw = m + 1;
    args.c_lo = static_cast<std::ptrdiff_t>(range.i_lo);
    args.c_hi = static_cast<std::ptrdiff_t>(range.i_hi);
    args.skip = static_cast<std::ptrdiff_t>(c0);
    if (taylor) {
        args.taylor_tab = taylor->center_table().data();
        args.taylor_slope = taylor->aprime().values().data();
        args.taylor_x = taylor->A_at(xe);
        args.pw = m + 2;
    }
    double val = g.h() * cellsum::pv_sum(args);
    if (!std::isfinite(val)) throw std::runtime_error("commutator: non-finite accumulation");
    return val;
}

}  // namespace

double commutator(std::span<const LipschitzData> a_list, const SampledFunction& f, double x) {
    return pv_commutator_sum(a_list, f, x, {0, f.grid().n_cells()}, nullptr);
}

double commutator_restricted(std::span<const LipschitzData> a_list, const SampledFunction& f,
                             double x, GridInterval r) {
    if (r.i_lo >= r.i_hi) return 0.0;
    check_interval(f.grid(), r);
    return pv_commutator_sum(a_list, f, x, r, nullptr);
}

double commutator_a(const LipschitzData& A, std::span<const LipschitzData> a_list,
                    const SampledFunction& f, double x) {
    return pv_commutator_sum(a_list, f, x, {0, f.grid().n_cells()}, &A);
}

double commutator_a_restricted(const LipschitzData& A, std::span<const LipschitzData> a_list,
                               const SampledFunction& f, double x, GridInterval r) {
    if (r.i_lo >= r.i_hi) return 0.0;
    check_interval(f.grid(), r);
    return pv_commutator_sum(a_list, f, x, r, &A);
}

ApproxIdentity::ApproxIdentity(double t) : t_(t) {
    if (!(t > 0.0)) throw std::invalid_argument("ApproxIdentity: scale must be positive");
}

double ApproxIdentity::bump(double u) {
    double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u2));
}

double ApproxIdentity::bump_deriv(double u) {
    double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    double w = 1.0 - u2;
    return -2.0 * u / (w * w) * std::exp(1.0 - 1.0 / w);
}

double ApproxIdentity::kernel(double x, double y) const {
    if (!(y > x) || y > x + t_) return 0.0;
    return bump_deriv((x - y) / t_) / t_;
}

double approx_identity_apply(const ApproxIdentity& k, const SampledFunction& hfun, double x) {
    const Grid& g = hfun.grid();
    if (k.t() < 2.0 * g.h())
        throw std::invalid_argument("approx_identity_apply: scale below 2h is unresolved");
    auto lo = static_cast<std::ptrdiff_t>(std::floor((x - g.x_min()) / g.h()));
    auto hi = static_cast<std::ptrdiff_t>(std::ceil((x + k.t() - g.x_min()) / g.h())) + 1;
    lo = std::max<std::ptrdiff_t>(lo, 0);
    hi = std::min<std::ptrdiff_t>(hi, static_cast<std::ptrdiff_t>(g.n_cells()));
    double acc = 0.0;
    for (std::ptrdiff_t c = lo; c < hi; ++c) {
        double yc = g.cell_center(static_cast<std::size_t>(c));
        double w = k.kernel(x, yc);
        if (w != 0.0) acc += w * hfun[static_cast<std::size_t>(c)];
    }
    return acc * g.h();
}

double smoothed_kernel_kaj(const LipschitzData& A, int m, double t, int j, double x,
                           std::span<const double> y) {
    if (j < 1 || j > m) throw std::invalid_argument("smoothed_kernel_kaj: slot out of range");
    const Grid& g = A.grid();
    if (t < 2.0 * g.h())
        throw std::invalid_argument("smoothed_kernel_kaj: scale below 2h is unresolved");
    ApproxIdentity k(t);
    double yj = y[j - 1];
    auto lo = static_cast<std::ptrdiff_t>(std::floor((yj - t - g.x_min()) / g.h()));
    auto hi = static_cast<std::ptrdiff_t>(std::ceil((yj - g.x_min()) / g.h())) + 1;
    lo = std::max<std::ptrdiff_t>(lo, 0);
    hi = std::min<std::ptrdiff_t>(hi, static_cast<std::ptrdiff_t>(g.n_cells()));
    std::vector<double> yz(y.begin(), y.end());
    double acc = 0.0;
    for (std::ptrdiff_t c = lo; c < hi; ++c) {
        double zc = g.cell_center(static_cast<std::size_t>(c));
        double w = k.kernel(zc, yj);
        if (w == 0.0) continue;
        yz[j - 1] = zc;
        acc += kernel_ka(A, m, x, yz) * w;
    }
    return acc * g.h();
}

}  // namespace calclab
