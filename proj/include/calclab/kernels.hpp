#pragma once

#include <span>
#include <vector>

#include "calclab/grid.hpp"

namespace calclab {

/// Mean-oscillation seminorm over the interval search set: the largest
/// average of |g - <g>_I| over candidate intervals I.
double bmo_seminorm(const SampledFunction& g, SearchMode mode = SearchMode::Dyadic);

/// A sampled derivative paired with its exact piecewise-linear antiderivative.
class LipschitzData {
public:
    explicit LipschitzData(SampledFunction aprime, SearchMode bmo_mode = SearchMode::Dyadic);
    LipschitzData(SampledFunction aprime, double known_bmo_norm);

    const Grid& grid() const { return aprime_.grid(); }
    const SampledFunction& aprime() const { return aprime_; }
    const PiecewiseLinear& antiderivative() const { return A_; }
    double bmo_norm() const { return bmo_norm_; }

    double A_at(double x) const { return A_(x); }
    double aprime_at(double x) const { return aprime_.value_at(x); }

    /// Antiderivative at cell centers, the table driving the cell sums.
    std::span<const double> center_table() const { return centers_; }

private:
    SampledFunction aprime_;
    PiecewiseLinear A_;
    std::vector<double> centers_;
    double bmo_norm_;
};

/// Second-order Taylor remainder A(x) - A(y) - A'(y)(x - y); A'(y) is the
/// value on the cell containing y.
double p2(const LipschitzData& A, double x, double y);

/// Removes the mean of A' over I from the derivative. The Taylor remainder
/// is invariant under this shift.
LipschitzData recenter(const LipschitzData& A, GridInterval I);

/// Multilinear kernel of the plain commutator: the signed power
/// (x - y_{m+1})^{-(m+1)} with each of y_1..y_m confined strictly between x
/// and y_{m+1}. y has m+1 entries; throws on x == y_{m+1}.
double kernel_k(int m, double x, std::span<const double> y);

/// kernel_k times the Taylor-remainder ratio P2(A; x, y_{m+1}) / (x - y_{m+1}).
double kernel_ka(const LipschitzData& A, int m, double x, std::span<const double> y);

/// Principal-value cell sum of prod_j (A_j(x) - A_j(y)) / (x - y)^{m+1} f(y).
/// x snaps to the nearest cell center and that single cell is excluded.
double commutator(std::span<const LipschitzData> a_list, const SampledFunction& f, double x);

/// Same with the inputs cut to the cell range r (their antiderivatives are
/// rebuilt implicitly by clamping the x-side argument to r).
double commutator_restricted(std::span<const LipschitzData> a_list, const SampledFunction& f,
                             double x, GridInterval r);

/// Principal-value cell sum of
/// P2(A; x, y) prod_j (A_j(x) - A_j(y)) / (x - y)^{m+2} f(y).
double commutator_a(const LipschitzData& A, std::span<const LipschitzData> a_list,
                    const SampledFunction& f, double x);

double commutator_a_restricted(const LipschitzData& A, std::span<const LipschitzData> a_list,
                               const SampledFunction& f, double x, GridInterval r);

/// One-sided smoothing kernel at scale t: k_t(x, y) pulls mass from (x, x+t]
/// with a C-infinity bump profile of unit mass.
class ApproxIdentity {
public:
    explicit ApproxIdentity(double t);

    double t() const { return t_; }

    /// Even bump: exp(1 - 1/(1-u^2)) on (-1,1), zero outside. Value 1 at 0.
    static double bump(double u);
    static double bump_deriv(double u);

    /// k_t(x, y) = (1/t) bump'((x-y)/t) for y in (x, x+t], else 0.
    double kernel(double x, double y) const;

private:
    double t_;
};

/// Quadrature of k_t(x, y) h(y) over cells. Requires t >= 2h so the kernel
/// is resolved; cells outside the domain contribute nothing.
double approx_identity_apply(const ApproxIdentity& k, const SampledFunction& hfun, double x);

/// Kernel with slot j (1-based, 1..m) mollified at scale t:
/// integral over z of kernel_ka with y_j replaced by z, weighted k_t(z, y_j).
double smoothed_kernel_kaj(const LipschitzData& A, int m, double t, int j, double x,
                           std::span<const double> y);

}  // namespace calclab
