#include "calclab/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace calclab {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(double x_min, double x_max, std::size_t n_cells)
    : x_min_(x_min), x_max_(x_max), n_(n_cells) {
    if (!(x_min < x_max)) throw std::invalid_argument("Grid: x_min must be < x_max");
    if (!is_pow2(n_cells)) throw std::invalid_argument("Grid: n_cells must be a power of two");
    h_ = (x_max - x_min) / static_cast<double>(n_cells);
    max_depth_ = static_cast<std::size_t>(std::countr_zero(n_cells));
}

std::size_t Grid::cell_of(double x) const {
    if (!contains(x)) throw std::out_of_range("Grid::cell_of: point outside domain");
    auto k = static_cast<std::ptrdiff_t>(std::floor((x - x_min_) / h_));
    k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(n_) - 1);
    return static_cast<std::size_t>(k);
}

std::size_t Grid::nearest_center(double x) const {
    if (!contains(x)) throw std::out_of_range("Grid::nearest_center: point outside domain");
    auto k = static_cast<std::ptrdiff_t>(std::llround((x - x_min_) / h_ - 0.5));
    k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(n_) - 1);
    return static_cast<std::size_t>(k);
}

SampledFunction::SampledFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.n_cells())
        throw std::invalid_argument("SampledFunction: value count must equal n_cells");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("SampledFunction: non-finite value");
}

SampledFunction SampledFunction::constant(const Grid& g, double c) {
    return SampledFunction(g, std::vector<double>(g.n_cells(), c));
}

SampledFunction SampledFunction::from_fn(const Grid& g, const std::function<double(double)>& fn) {
    std::vector<double> v(g.n_cells());
    for (std::size_t k = 0; k < g.n_cells(); ++k) v[k] = fn(g.cell_center(k));
    return SampledFunction(g, std::move(v));
}

SampledFunction SampledFunction::map(const std::function<double(double)>& fn) const {
    std::vector<double> v(values_.size());
    for (std::size_t k = 0; k < values_.size(); ++k) v[k] = fn(values_[k]);
    return SampledFunction(grid_, std::move(v));
}

SampledFunction SampledFunction::abs_pow(double exponent) const {
    std::vector<double> v(values_.size());
    for (std::size_t k = 0; k < values_.size(); ++k) v[k] = std::pow(std::abs(values_[k]), exponent);
    return SampledFunction(grid_, std::move(v));
}

SampledFunction SampledFunction::restricted(GridInterval r) const {
    check_interval(grid_, r);
    std::vector<double> v(values_.size(), 0.0);
    for (std::size_t k = r.i_lo; k < r.i_hi; ++k) v[k] = values_[k];
    return SampledFunction(grid_, std::move(v));
}

GridInterval SampledFunction::support() const {
    std::size_t lo = 0, hi = values_.size();
    while (lo < hi && values_[lo] == 0.0) ++lo;
    while (hi > lo && values_[hi - 1] == 0.0) --hi;
    if (lo == hi) return {0, 0};
    return {lo, hi};
}

PiecewiseLinear::PiecewiseLinear(Grid grid, std::vector<double> nodes)
    : grid_(grid), nodes_(std::move(nodes)) {
    if (nodes_.size() != grid_.n_cells() + 1)
        throw std::invalid_argument("PiecewiseLinear: need n_cells+1 node values");
}

std::vector<double> PiecewiseLinear::center_values() const {
    std::vector<double> c(grid_.n_cells());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = at_center(k);
    return c;
}

double PiecewiseLinear::operator()(double x) const {
    if (!grid_.contains(x)) throw std::out_of_range("PiecewiseLinear: point outside domain");
    std::size_t k = grid_.cell_of(x);
    double frac = (x - grid_.cell_left(k)) / grid_.h();
    return nodes_[k] + frac * (nodes_[k + 1] - nodes_[k]);
}

GridInterval DyadicLattice::node(std::size_t depth, std::size_t index) const {
    std::size_t len = n_ >> depth;
    return {index * len, (index + 1) * len};
}

std::size_t DyadicLattice::depth_of(const GridInterval& q) const {
    if (!is_dyadic(q)) throw std::invalid_argument("DyadicLattice: interval is not dyadic");
    std::size_t len = q.cells();
    return max_depth_ - static_cast<std::size_t>(std::countr_zero(len));
}

bool DyadicLattice::is_dyadic(const GridInterval& q) const {
    std::size_t len = q.cells();
    if (len == 0 || (len & (len - 1)) != 0 || q.i_hi > n_) return false;
    return q.i_lo % len == 0;
}

GridInterval DyadicLattice::parent(const GridInterval& q) const {
    if (q.cells() >= n_) throw std::invalid_argument("DyadicLattice: root has no parent");
    std::size_t len = q.cells() * 2;
    std::size_t lo = (q.i_lo / len) * len;
    return {lo, lo + len};
}

std::vector<GridInterval> DyadicLattice::chain_of_cell(std::size_t cell) const {
    std::vector<GridInterval> out;
    out.reserve(max_depth_ + 1);
    for (std::size_t len = 1; len <= n_; len <<= 1) {
        std::size_t lo = (cell / len) * len;
        out.push_back({lo, lo + len});
    }
    return out;
}

std::vector<GridInterval> DyadicLattice::all_nodes() const {
    std::vector<GridInterval> out;
    out.reserve(2 * n_ - 1);
    for (std::size_t len = n_; len >= 1; len >>= 1)
        for (std::size_t lo = 0; lo + len <= n_; lo += len) out.push_back({lo, lo + len});
    return out;
}

GridInterval dilate(const GridInterval& q, std::size_t factor, const Grid& g) {
    if (factor % 2 == 0) throw std::invalid_argument("dilate: factor must be odd");
    std::size_t pad = q.cells() * (factor - 1) / 2;
    std::size_t lo = q.i_lo > pad ? q.i_lo - pad : 0;
    std::size_t hi = std::min(q.i_hi + pad, g.n_cells());
    return {lo, hi};
}

GridInterval dilate_3pow(const GridInterval& q, int kappa, const Grid& g) {
    if (kappa < 0) throw std::invalid_argument("dilate_3pow: kappa must be >= 0");
    std::size_t factor = 1;
    for (int i = 0; i < kappa; ++i) factor *= 3;
    return dilate(q, factor, g);
}

std::vector<GridInterval> candidate_intervals(const Grid& g, std::optional<double> x,
                                              SearchMode mode, std::size_t budget) {
    if (budget < g.n_cells())
        throw std::invalid_argument("candidate_intervals: budget must be >= n_cells");
    DyadicLattice lat(g);
    std::vector<GridInterval> out;

    auto push_unique = [&out](const GridInterval& q) {
        if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    };

    if (x.has_value()) {
        std::size_t c = g.cell_of(*x);
        auto chain = lat.chain_of_cell(c);
        for (const auto& q : chain) out.push_back(q);
        if (mode != SearchMode::DyadicOnly)
            for (const auto& q : chain) push_unique(dilate(q, 3, g));
        if (mode == SearchMode::Exhaustive) {
            std::vector<GridInterval> rest;
            for (std::size_t lo = 0; lo <= c; ++lo)
                for (std::size_t hi = c + 1; hi <= g.n_cells(); ++hi) rest.push_back({lo, hi});
            std::sort(rest.begin(), rest.end(), [](const GridInterval& a, const GridInterval& b) {
                return a.cells() != b.cells() ? a.cells() < b.cells() : a.i_lo < b.i_lo;
            });
            for (const auto& q : rest) {
                if (out.size() >= budget) break;
                push_unique(q);
            }
        }
    } else {
        for (const auto& q : lat.all_nodes()) out.push_back(q);
        if (mode != SearchMode::DyadicOnly)
            for (const auto& q : lat.all_nodes()) push_unique(dilate(q, 3, g));
        if (mode == SearchMode::Exhaustive) {
            std::vector<GridInterval> rest;
            for (std::size_t lo = 0; lo < g.n_cells(); ++lo)
                for (std::size_t hi = lo + 1; hi <= g.n_cells(); ++hi) rest.push_back({lo, hi});
            std::sort(rest.begin(), rest.end(), [](const GridInterval& a, const GridInterval& b) {
                return a.cells() != b.cells() ? a.cells() < b.cells() : a.i_lo < b.i_lo;
            });
            for (const auto& q : rest) {
                if (out.size() >= budget) break;
                push_unique(q);
            }
        }
    }
    if (out.size() > budget) out.resize(budget);
    return out;
}

void check_interval(const Grid& g, GridInterval I) {
    if (I.i_lo >= I.i_hi || I.i_hi > g.n_cells())
        throw std::out_of_range("interval out of range");
}

double integrate(const SampledFunction& f, GridInterval I) {
    check_interval(f.grid(), I);
    double s = 0.0;
    auto v = f.values();
    for (std::size_t k = I.i_lo; k < I.i_hi; ++k) s += v[k];
    return f.grid().h() * s;
}

double average(const SampledFunction& f, GridInterval I) {
    return integrate(f, I) / I.length(f.grid());
}

PiecewiseLinear antiderivative(const SampledFunction& fprime, double anchor) {
    const Grid& g = fprime.grid();
    if (!g.contains(anchor)) throw std::out_of_range("antiderivative: anchor outside domain");
    std::vector<double> nodes(g.n_cells() + 1);
    nodes[0] = 0.0;
    auto v = fprime.values();
    for (std::size_t k = 0; k < g.n_cells(); ++k) nodes[k + 1] = nodes[k] + g.h() * v[k];
    PiecewiseLinear raw(g, std::move(nodes));
    double shift = raw(anchor);
    std::vector<double> shifted(raw.nodes().begin(), raw.nodes().end());
    for (double& t : shifted) t -= shift;
    return PiecewiseLinear(g, std::move(shifted));
}

PrefixSums::PrefixSums(const SampledFunction& f) : PrefixSums(f.values(), f.grid().h()) {}

PrefixSums::PrefixSums(std::span<const double> values, double h) : h_(h) {
    p_.resize(values.size() + 1);
    p_[0] = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) p_[k + 1] = p_[k] + values[k];
}

}  // namespace calclab
