#pragma once

#include <span>
#include <vector>

#include "calclab/grid.hpp"

namespace calclab {

/// Strictly positive sampled weight.
class Weight {
public:
    explicit Weight(SampledFunction w);

    const SampledFunction& fn() const { return w_; }
    const Grid& grid() const { return w_.grid(); }
    double operator[](std::size_t k) const { return w_[k]; }

private:
    SampledFunction w_;
};

/// (w_1, ..., w_m) with exponents (p_1, ..., p_m), each p_k >= 1;
/// 1/p = sum_k 1/p_k.
class WeightVector {
public:
    WeightVector(std::vector<Weight> weights, std::vector<double> exponents);

    std::size_t m() const { return weights_.size(); }
    const Weight& weight(std::size_t k) const { return weights_[k]; }
    double exponent(std::size_t k) const { return exponents_[k]; }
    std::span<const Weight> weights() const { return weights_; }
    std::span<const double> exponents() const { return exponents_; }
    double p() const { return p_; }

private:
    std::vector<Weight> weights_;
    std::vector<double> exponents_;
    double p_;
};

/// sup over candidate intervals of <w>_Q <w^{-1/(p-1)}>_Q^{p-1}.
double ap_constant(const Weight& w, double p, SearchMode mode = SearchMode::Dyadic);

/// Fujii-Wilson constant: sup over candidate intervals Q of
/// (1/w(Q)) int_Q M(w chi_Q); the inner maximal scan is exhaustive in Q.
double ainf_constant(const Weight& w, SearchMode mode = SearchMode::Dyadic);

/// Pointwise w^{-1/(p-1)}. p = 1 is rejected; that branch is handled by the
/// infimum rule inside multi_ap_constant.
Weight dual_weight(const Weight& w, double p);

/// Product weight prod_k w_k^{p/p_k}.
Weight nu(const WeightVector& wv);

/// sup over candidate intervals of
/// <nu>_Q prod_k <w_k^{-1/(p_k-1)}>_Q^{p/p_k'}, the p_k = 1 factor replaced
/// by (min of w_k on Q)^{-p}.
double multi_ap_constant(const WeightVector& wv, SearchMode mode = SearchMode::Dyadic);

}  // namespace calclab
