#include "calclab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "calclab/maximal.hpp"

namespace calclab {

Weight::Weight(SampledFunction w) : w_(std::move(w)) {
    for (double v : w_.values())
        if (!(v > 0.0)) throw std::invalid_argument("Weight: values must be strictly positive");
}

WeightVector::WeightVector(std::vector<Weight> weights, std::vector<double> exponents)
    : weights_(std::move(weights)), exponents_(std::move(exponents)) {
    if (weights_.empty() || weights_.size() != exponents_.size())
        throw std::invalid_argument("WeightVector: need one exponent per weight");
    double inv = 0.0;
    for (double pk : exponents_) {
        if (!(pk >= 1.0)) throw std::invalid_argument("WeightVector: exponents must be >= 1");
        inv += 1.0 / pk;
    }
    p_ = 1.0 / inv;
    for (std::size_t k = 1; k < weights_.size(); ++k)
        if (!(weights_[k].grid() == weights_[0].grid()))
            throw std::invalid_argument("WeightVector: weights on different grids");
}

double ap_constant(const Weight& w, double p, SearchMode mode) {
    if (!(p > 1.0)) throw std::invalid_argument("ap_constant: p must be > 1");
    const SampledFunction& wf = w.fn();
    SampledFunction sigma = wf.map([p](double v) { return std::pow(v, -1.0 / (p - 1.0)); });
    PrefixSums pw(wf), ps(sigma);
    double best = 0.0;
    for (const auto& Q : candidate_intervals(w.grid(), std::nullopt, mode))
        best = std::max(best, pw.average(Q) * std::pow(ps.average(Q), p - 1.0));
    return best;
}

double ainf_constant(const Weight& w, SearchMode mode) {
    const SampledFunction& wf = w.fn();
    double best = 0.0;
    for (const auto& Q : candidate_intervals(w.grid(), std::nullopt, mode)) {
        std::vector<double> local(wf.values().begin() + static_cast<std::ptrdiff_t>(Q.i_lo),
                                  wf.values().begin() + static_cast<std::ptrdiff_t>(Q.i_hi));
        std::vector<double> mx = uncentered_maximal_all(local);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < local.size(); ++i) {
            num += mx[i];
            den += local[i];
        }
        best = std::max(best, num / den);
    }
    return best;
}

Weight dual_weight(const Weight& w, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("dual_weight: p must be > 1");
    return Weight(w.fn().map([p](double v) { return std::pow(v, -1.0 / (p - 1.0)); }));
}

Weight nu(const WeightVector& wv) {
    const Grid& g = wv.weight(0).grid();
    std::vector<double> out(g.n_cells(), 1.0);
    for (std::size_t k = 0; k < wv.m(); ++k) {
        double e = wv.p() / wv.exponent(k);
        auto vals = wv.weight(k).fn().values();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::pow(vals[i], e);
    }
    return Weight(SampledFunction(g, std::move(out)));
}

double multi_ap_constant(const WeightVector& wv, SearchMode mode) {
    const Grid& g = wv.weight(0).grid();
    Weight nuw = nu(wv);
    PrefixSums pnu(nuw.fn());

    struct Factor {
        bool inf_branch;
        double expo;                  // p/p_k' for the average branch, p for the inf branch
        std::vector<double> sigma;    // dual values (average branch)
        const SampledFunction* wfun;  // weight itself (inf branch)
    };
    std::vector<Factor> factors;
    std::vector<PrefixSums> sigma_prefix;
    for (std::size_t k = 0; k < wv.m(); ++k) {
        double pk = wv.exponent(k);
        Factor f;
        if (pk == 1.0) {
            f.inf_branch = true;
            f.expo = wv.p();
            f.wfun = &wv.weight(k).fn();
        } else {
            f.inf_branch = false;
            double pk_dual = pk / (pk - 1.0);
            f.expo = wv.p() / pk_dual;
            f.sigma.resize(g.n_cells());
            auto vals = wv.weight(k).fn().values();
            for (std::size_t i = 0; i < f.sigma.size(); ++i)
                f.sigma[i] = std::pow(vals[i], -1.0 / (pk - 1.0));
            f.wfun = nullptr;
        }
        factors.push_back(std::move(f));
    }
    for (auto& f : factors)
        if (!f.inf_branch) sigma_prefix.emplace_back(f.sigma, g.h());

    double best = 0.0;
    for (const auto& Q : candidate_intervals(g, std::nullopt, mode)) {
        double val = pnu.average(Q);
        std::size_t sp = 0;
        for (const auto& f : factors) {
            if (f.inf_branch) {
                double mn = (*f.wfun)[Q.i_lo];
                for (std::size_t i = Q.i_lo + 1; i < Q.i_hi; ++i) mn = std::min(mn, (*f.wfun)[i]);
                val *= std::pow(mn, -f.expo);
            } else {
                val *= std::pow(sigma_prefix[sp++].average(Q), f.expo);
            }
        }
        best = std::max(best, val);
    }
    return best;
}

}  // namespace calclab
