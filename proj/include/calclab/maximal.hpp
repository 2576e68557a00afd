#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "calclab/grid.hpp"
#include "calclab/kernels.hpp"

namespace calclab {

/// Exact uncentered maximal averages of a value array: entry i is the
/// largest mean of vals over a contiguous index range containing i.
std::vector<double> uncentered_maximal_all(std::span<const double> vals);

double hl_max(const SampledFunction& f, double x, SearchMode mode = SearchMode::Dyadic);
std::vector<double> hl_max_all(const SampledFunction& f, SearchMode mode = SearchMode::Dyadic);

/// (M(|f|^s))^{1/s}; s = 1 is the plain maximal operator.
double m_s(const SampledFunction& f, double s, double x, SearchMode mode = SearchMode::Dyadic);

/// Orlicz gauge norm on Q with Young function t log^gamma(e + t): the
/// smallest lambda with (1/|Q|) int_Q (|f|/lambda) log^gamma(e+|f|/lambda) <= 1.
/// gamma = 0 collapses to the plain average of |f|.
double luxemburg(const SampledFunction& f, GridInterval Q, double gamma);

double m_orlicz(const SampledFunction& f, double gamma, double x,
                SearchMode mode = SearchMode::Dyadic);
std::vector<double> m_orlicz_all(const SampledFunction& f, double gamma,
                                 SearchMode mode = SearchMode::Dyadic);

/// Quantile oscillation on Q: the smallest t so that some constant c leaves
/// |f - c| > t on less than the s-fraction of Q. Computed exactly as half
/// the shortest window spanning the required number of sorted cell values.
double oscillation(const SampledFunction& f, GridInterval Q, double s);

double sharp_max(const SampledFunction& f, double s, double x,
                 SearchMode mode = SearchMode::Dyadic);
std::vector<double> sharp_max_all(const SampledFunction& f, double s,
                                  SearchMode mode = SearchMode::Dyadic);

/// An operator bound to concrete inputs; restriction multiplies every input
/// slot by the indicator of a cell range.
class BoundProgram {
public:
    virtual ~BoundProgram() = default;
    virtual double eval(double x) const = 0;
    virtual double eval_restricted(double x, GridInterval r) const = 0;
    /// Union of the slot supports; empty when all slots vanish.
    virtual GridInterval inputs_support() const = 0;
};

/// Multi-sublinear operator: subadditive and homogeneous in every slot.
/// prepare() binds concrete inputs once so pointwise evaluation is cheap.
class MultiSublinearEvaluator {
public:
    virtual ~MultiSublinearEvaluator() = default;
    virtual std::size_t arity() const = 0;
    virtual std::unique_ptr<BoundProgram> prepare(
        std::span<const SampledFunction> inputs) const = 0;
};

/// Slots (a_1, ..., a_m, f); evaluates the order-(m+1) commutator.
class CommutatorEvaluator final : public MultiSublinearEvaluator {
public:
    explicit CommutatorEvaluator(int m) : m_(m) {}
    std::size_t arity() const override { return static_cast<std::size_t>(m_) + 1; }
    std::unique_ptr<BoundProgram> prepare(std::span<const SampledFunction> inputs) const override;

private:
    int m_;
};

/// Slots (a_1, ..., a_m, f); evaluates the Taylor-remainder commutator with
/// the fixed symbol A.
class CommutatorAEvaluator final : public MultiSublinearEvaluator {
public:
    CommutatorAEvaluator(LipschitzData A, int m) : A_(std::move(A)), m_(m) {}
    std::size_t arity() const override { return static_cast<std::size_t>(m_) + 1; }
    std::unique_ptr<BoundProgram> prepare(std::span<const SampledFunction> inputs) const override;

private:
    LipschitzData A_;
    int m_;
};

/// Single-slot pointwise identity, a degenerate sublinear operator for tests.
class IdentityEvaluator final : public MultiSublinearEvaluator {
public:
    std::size_t arity() const override { return 1; }
    std::unique_ptr<BoundProgram> prepare(std::span<const SampledFunction> inputs) const override;
};

/// Grand maximal operator: the largest sup-norm gap, over dyadic Q
/// containing x, between the bound operator and its version with every slot
/// cut to 3^kappa Q (clipped to the domain).
double grand_max(const MultiSublinearEvaluator& U, std::span<const SampledFunction> inputs,
                 int kappa, double x);

/// Values of the grand maximal operator at every cell center of q0.
std::vector<double> grand_max_all(const MultiSublinearEvaluator& U,
                                  std::span<const SampledFunction> inputs, int kappa,
                                  GridInterval q0);

/// Core used by the sparse recursion: inputs are implicitly cut to
/// base_range first, and the field is reported on the cells of q0. Passing
/// no base range evaluates the plain grand maximal operator.
std::vector<double> grand_max_field(const BoundProgram& prog, const Grid& g, int kappa,
                                    GridInterval q0, std::optional<GridInterval> base_range);

}  // namespace calclab
