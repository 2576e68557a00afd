#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace calclab {

/// Uniform grid over [x_min, x_max) with a power-of-two cell count, so the
/// dyadic tree over the domain subdivides exactly. Cell k covers
/// [x_min + k*h, x_min + (k+1)*h).
class Grid {
public:
    Grid(double x_min, double x_max, std::size_t n_cells);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double h() const { return h_; }
    std::size_t n_cells() const { return n_; }
    std::size_t max_depth() const { return max_depth_; }  // log2(n_cells)

    double cell_left(std::size_t k) const { return x_min_ + static_cast<double>(k) * h_; }
    double cell_center(std::size_t k) const { return x_min_ + (static_cast<double>(k) + 0.5) * h_; }

    bool contains(double x) const { return x >= x_min_ && x <= x_max_; }

    /// Index of the cell containing x; the right domain endpoint maps to the
    /// last cell. Throws std::out_of_range for x outside the domain.
    std::size_t cell_of(double x) const;

    /// Index of the cell whose center is nearest to x (x must be in the domain).
    std::size_t nearest_center(double x) const;

    bool operator==(const Grid&) const = default;

private:
    double x_min_, x_max_, h_;
    std::size_t n_;
    std::size_t max_depth_;
};

/// Half-open run of cells [i_lo, i_hi).
struct GridInterval {
    std::size_t i_lo = 0;
    std::size_t i_hi = 0;

    std::size_t cells() const { return i_hi - i_lo; }
    bool contains_cell(std::size_t k) const { return k >= i_lo && k < i_hi; }
    bool contains(const GridInterval& other) const {
        return i_lo <= other.i_lo && other.i_hi <= i_hi;
    }
    double length(const Grid& g) const { return static_cast<double>(cells()) * g.h(); }
    double left(const Grid& g) const { return g.cell_left(i_lo); }
    double right(const Grid& g) const { return g.cell_left(i_hi); }
    double center(const Grid& g) const { return 0.5 * (left(g) + right(g)); }

    auto operator<=>(const GridInterval&) const = default;
};

/// Piecewise-constant function on a grid; the cell value is the function
/// value on the whole cell.
class SampledFunction {
public:
    SampledFunction(Grid grid, std::vector<double> values);

    static SampledFunction constant(const Grid& g, double c);
    static SampledFunction from_fn(const Grid& g, const std::function<double(double)>& fn);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    double value_at(double x) const { return values_[grid_.cell_of(x)]; }
    std::size_t size() const { return values_.size(); }

    SampledFunction map(const std::function<double(double)>& fn) const;
    SampledFunction abs_pow(double exponent) const;  // |f|^exponent, cellwise
    SampledFunction restricted(GridInterval r) const;  // f * indicator of r

    /// Smallest cell range outside of which all values are exactly zero;
    /// the empty range {0,0} when f vanishes identically.
    GridInterval support() const;

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Exact antiderivative of a piecewise-constant function: node values at the
/// n+1 cell boundaries, linear in between.
class PiecewiseLinear {
public:
    PiecewiseLinear(Grid grid, std::vector<double> nodes);

    const Grid& grid() const { return grid_; }
    double node(std::size_t k) const { return nodes_[k]; }
    std::span<const double> nodes() const { return nodes_; }
    double at_center(std::size_t k) const { return 0.5 * (nodes_[k] + nodes_[k + 1]); }
    std::vector<double> center_values() const;

    double operator()(double x) const;  // linear interpolation, x in domain

private:
    Grid grid_;
    std::vector<double> nodes_;
};

/// Dyadic tree over the full domain. Depth d holds 2^d intervals of
/// n_cells/2^d cells each; children split their parent exactly.
class DyadicLattice {
public:
    explicit DyadicLattice(const Grid& g) : n_(g.n_cells()), max_depth_(g.max_depth()) {}

    GridInterval root() const { return {0, n_}; }
    std::size_t max_depth() const { return max_depth_; }
    std::size_t cells_at_depth(std::size_t d) const { return n_ >> d; }

    GridInterval node(std::size_t depth, std::size_t index) const;
    std::size_t depth_of(const GridInterval& q) const;  // q must be dyadic

    bool is_dyadic(const GridInterval& q) const;
    GridInterval parent(const GridInterval& q) const;

    /// Chain of dyadic intervals containing the given cell, smallest first
    /// (the cell itself) up to the root.
    std::vector<GridInterval> chain_of_cell(std::size_t cell) const;

    /// Every dyadic interval, root first, then by (depth, i_lo).
    std::vector<GridInterval> all_nodes() const;

private:
    std::size_t n_;
    std::size_t max_depth_;
};

/// How suprema over intervals are discretized.
enum class SearchMode {
    DyadicOnly,  // dyadic intervals only
    Dyadic,      // dyadic intervals plus their 3-fold dilations (default)
    Exhaustive,  // every grid-aligned interval
};

/// Center-preserving dilation of a grid interval by an odd integer factor,
/// clipped to the domain.
GridInterval dilate(const GridInterval& q, std::size_t factor, const Grid& g);

/// 3^kappa Q clipped to the domain.
GridInterval dilate_3pow(const GridInterval& q, int kappa, const Grid& g);

/// Finite search set realizing suprema over intervals. With a point x, the
/// intervals all contain x; without, the full enumeration for the mode.
/// Deterministic order: dyadic chain first (small to large), then dilations,
/// then remaining grid-aligned intervals by (cells, i_lo), truncated to
/// `budget` entries in total.
std::vector<GridInterval> candidate_intervals(const Grid& g, std::optional<double> x,
                                              SearchMode mode,
                                              std::size_t budget = static_cast<std::size_t>(-1));

double integrate(const SampledFunction& f, GridInterval I);
double average(const SampledFunction& f, GridInterval I);

/// Antiderivative A of fprime with A(anchor) = 0; exact on grid nodes.
PiecewiseLinear antiderivative(const SampledFunction& fprime, double anchor);

/// Prefix sums h*sum(values[0..k)) for O(1) integrals over cell ranges.
class PrefixSums {
public:
    explicit PrefixSums(const SampledFunction& f);
    PrefixSums(std::span<const double> values, double h);

    double integral(GridInterval I) const {
        return h_ * (p_[I.i_hi] - p_[I.i_lo]);
    }
    double average(GridInterval I) const {
        return (p_[I.i_hi] - p_[I.i_lo]) / static_cast<double>(I.cells());
    }

private:
    std::vector<double> p_;  // raw value sums, scaled by h on demand
    double h_;
};

void check_interval(const Grid& g, GridInterval I);

}  // namespace calclab
