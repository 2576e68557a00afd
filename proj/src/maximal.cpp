#include "calclab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace calclab {

namespace {

GridInterval intersect(GridInterval a, GridInterval b) {
    std::size_t lo = std::max(a.i_lo, b.i_lo);
    std::size_t hi = std::min(a.i_hi, b.i_hi);
    if (lo >= hi) return {0, 0};
    return {lo, hi};
}

bool covers(GridInterval outer, GridInterval inner) {
    if (inner.i_lo >= inner.i_hi) return true;
    return outer.i_lo <= inner.i_lo && inner.i_hi <= outer.i_hi;
}

GridInterval unite(GridInterval a, GridInterval b) {
    if (a.i_lo >= a.i_hi) return b;
    if (b.i_lo >= b.i_hi) return a;
    return {std::min(a.i_lo, b.i_lo), std::max(a.i_hi, b.i_hi)};
}

}  // namespace

std::vector<double> uncentered_maximal_all(std::span<const double> vals) {
    const std::size_t k = vals.size();
    std::vector<double> prefix(k + 1, 0.0);
    for (std::size_t i = 0; i < k; ++i) prefix[i + 1] = prefix[i] + vals[i];
    std::vector<double> out(k, -std::numeric_limits<double>::infinity());
    std::vector<double> sfx(k + 1, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t b = k; b > a; --b) {
            best = std::max(best, (prefix[b] - prefix[a]) / static_cast<double>(b - a));
            sfx[b] = best;  // max over right ends >= b
        }
        for (std::size_t i = a; i < k; ++i) out[i] = std::max(out[i], sfx[i + 1]);
    }
    return out;
}

double hl_max(const SampledFunction& f, double x, SearchMode mode) {
    const Grid& g = f.grid();
    std::size_t c = g.cell_of(x);
    std::vector<double> av(f.size());
    for (std::size_t i = 0; i < av.size(); ++i) av[i] = std::abs(f[i]);
    PrefixSums ps(av, g.h());
    double best = 0.0;
    if (mode == SearchMode::Exhaustive) {
        for (std::size_t lo = 0; lo <= c; ++lo)
            for (std::size_t hi = c + 1; hi <= g.n_cells(); ++hi)
                best = std::max(best, ps.average({lo, hi}));
        return best;
    }
    for (const auto& I : candidate_intervals(g, x, mode)) best = std::max(best, ps.average(I));
    return best;
}

std::vector<double> hl_max_all(const SampledFunction& f, SearchMode mode) {
    const Grid& g = f.grid();
    std::vector<double> av(f.size());
    for (std::size_t i = 0; i < av.size(); ++i) av[i] = std::abs(f[i]);
    if (mode == SearchMode::Exhaustive) return uncentered_maximal_all(av);
    PrefixSums ps(av, g.h());
    std::vector<double> out(f.size(), 0.0);
    for (const auto& I : candidate_intervals(g, std::nullopt, mode)) {
        double val = ps.average(I);
        for (std::size_t i = I.i_lo; i < I.i_hi; ++i) out[i] = std::max(out[i], val);
    }
    return out;
}

double m_s(const SampledFunction& f, double s, double x, SearchMode mode) {
    if (!(s > 0.0)) throw std::invalid_argument("m_s: exponent must be positive");
    if (s == 1.0) return hl_max(f, x, mode);
    return std::pow(hl_max(f.abs_pow(s), x, mode), 1.0 / s);
}

namespace {

// (1/k) sum (v/lam) log^gamma(e + v/lam), the gauge functional
double orlicz_mean(std::span<const double> v, double lam, double gamma) {
    double s = 0.0;
    for (double t : v) {
        double r = t / lam;
        s += r * std::pow(std::log(std::numbers::e + r), gamma);
    }
    return s / static_cast<double>(v.size());
}

}  // namespace

double luxemburg(const SampledFunction& f, GridInterval Q, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("luxemburg: gamma must be >= 0");
    check_interval(f.grid(), Q);
    std::vector<double> v(Q.cells());
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = std::abs(f[Q.i_lo + i]);
        sum += v[i];
    }
    double avg = sum / static_cast<double>(v.size());
    if (avg == 0.0) return 0.0;
    if (gamma == 0.0) return avg;

    // gauge mean is strictly decreasing in lambda; avg is a lower bracket
    double lo = avg, hi = avg;
    int guard = 0;
    while (orlicz_mean(v, hi, gamma) > 1.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 2000) throw std::runtime_error("luxemburg: bracket expansion failed");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (orlicz_mean(v, mid, gamma) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double m_orlicz(const SampledFunction& f, double gamma, double x, SearchMode mode) {
    if (gamma == 0.0) return hl_max(f, x, mode);
    double best = 0.0;
    for (const auto& I : candidate_intervals(f.grid(), x, mode))
        best = std::max(best, luxemburg(f, I, gamma));
    return best;
}

std::vector<double> m_orlicz_all(const SampledFunction& f, double gamma, SearchMode mode) {
    if (gamma == 0.0) return hl_max_all(f, mode);
    std::vector<double> out(f.size(), 0.0);
    for (const auto& I : candidate_intervals(f.grid(), std::nullopt, mode)) {
        double val = luxemburg(f, I, gamma);
        for (std::size_t i = I.i_lo; i < I.i_hi; ++i) out[i] = std::max(out[i], val);
    }
    return out;
}

double oscillation(const SampledFunction& f, GridInterval Q, double s) {
    if (!(s > 0.0 && s < 0.5)) throw std::invalid_argument("oscillation: s must be in (0, 1/2)");
    check_interval(f.grid(), Q);
    const std::size_t k = Q.cells();
    std::vector<double> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = f[Q.i_lo + i];
    std::sort(v.begin(), v.end());
    // need at least r values within distance t of the center c
    double q = static_cast<double>(k) * (1.0 - s);
    double qr = std::round(q);
    if (std::abs(q - qr) < 1e-9 * static_cast<double>(k)) q = qr;
    std::size_t r = static_cast<std::size_t>(std::floor(q)) + 1;
    r = std::min(r, k);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + r <= k; ++i) best = std::min(best, (v[i + r - 1] - v[i]) * 0.5);
    return best;
}

double sharp_max(const SampledFunction& f, double s, double x, SearchMode mode) {
    double best = 0.0;
    for (const auto& I : candidate_intervals(f.grid(), x, mode))
        best = std::max(best, oscillation(f, I, s));
    return best;
}

std::vector<double> sharp_max_all(const SampledFunction& f, double s, SearchMode mode) {
    std::vector<double> out(f.size(), 0.0);
    for (const auto& I : candidate_intervals(f.grid(), std::nullopt, mode)) {
        double val = oscillation(f, I, s);
        for (std::size_t i = I.i_lo; i < I.i_hi; ++i) out[i] = std::max(out[i], val);
    }
    return out;
}

namespace {

class CommutatorProgram final : public BoundProgram {
public:
    CommutatorProgram(std::optional<LipschitzData> A, std::vector<LipschitzData> a,
                      SampledFunction f)
        : A_(std::move(A)), a_(std::move(a)), f_(std::move(f)) {
        supp_ = f_.support();
        for (const auto& aj : a_) supp_ = unite(supp_, aj.aprime().support());
    }

    double eval(double x) const override {
        return A_ ? commutator_a(*A_, a_, f_, x) : commutator(a_, f_, x);
    }
    double eval_restricted(double x, GridInterval r) const override {
        return A_ ? commutator_a_restricted(*A_, a_, f_, x, r)
                  : commutator_restricted(a_, f_, x, r);
    }
    GridInterval inputs_support() const override { return supp_; }

private:
    std::optional<LipschitzData> A_;
    std::vector<LipschitzData> a_;
    SampledFunction f_;
    GridInterval supp_{0, 0};
};

std::unique_ptr<BoundProgram> make_commutator_program(const std::optional<LipschitzData>& A,
                                                      int m,
                                                      std::span<const SampledFunction> inputs) {
    if (inputs.size() != static_cast<std::size_t>(m) + 1)
        throw std::invalid_argument("commutator evaluator: need m+1 input slots");
    std::vector<LipschitzData> a;
    a.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) a.emplace_back(inputs[static_cast<std::size_t>(j)], 0.0);
    return std::make_unique<CommutatorProgram>(A, std::move(a), inputs.back());
}

class IdentityProgram final : public BoundProgram {
public:
    explicit IdentityProgram(SampledFunction f) : f_(std::move(f)) {}
    double eval(double x) const override { return f_.value_at(x); }
    double eval_restricted(double x, GridInterval r) const override {
        std::size_t c = f_.grid().cell_of(x);
        return r.contains_cell(c) ? f_[c] : 0.0;
    }
    GridInterval inputs_support() const override { return f_.support(); }

private:
    SampledFunction f_;
};

}  // namespace

std::unique_ptr<BoundProgram> CommutatorEvaluator::prepare(
    std::span<const SampledFunction> inputs) const {
    return make_commutator_program(std::nullopt, m_, inputs);
}

std::unique_ptr<BoundProgram> CommutatorAEvaluator::prepare(
    std::span<const SampledFunction> inputs) const {
    return make_commutator_program(A_, m_, inputs);
}

std::unique_ptr<BoundProgram> IdentityEvaluator::prepare(
    std::span<const SampledFunction> inputs) const {
    if (inputs.size() != 1) throw std::invalid_argument("identity evaluator: one slot");
    return std::make_unique<IdentityProgram>(inputs[0]);
}

std::vector<double> grand_max_field(const BoundProgram& prog, const Grid& g, int kappa,
                                    GridInterval q0, std::optional<GridInterval> base_range) {
    if (kappa < 1) throw std::invalid_argument("grand_max: kappa must be >= 1");
    DyadicLattice lat(g);
    if (!lat.is_dyadic(q0)) throw std::invalid_argument("grand_max: q0 must be dyadic");

    GridInterval supp = prog.inputs_support();
    if (base_range) supp = intersect(supp, *base_range);

    auto eval_base = [&](double x) {
        return base_range ? prog.eval_restricted(x, *base_range) : prog.eval(x);
    };
    auto eval_cut = [&](double x, GridInterval rk) {
        GridInterval r = base_range ? intersect(rk, *base_range) : rk;
        return prog.eval_restricted(x, r);
    };

    // gap of one dyadic interval: sup-norm over its cells of base vs cut
    auto delta_over = [&](GridInterval Q, const std::vector<double>* cache,
                          std::size_t cache_off) {
        GridInterval rk = dilate_3pow(Q, kappa, g);
        if (covers(rk, supp)) return 0.0;  // restriction changes nothing
        double d = 0.0;
        for (std::size_t i = Q.i_lo; i < Q.i_hi; ++i) {
            double xc = g.cell_center(i);
            double full = cache ? (*cache)[i - cache_off] : eval_base(xc);
            d = std::max(d, std::abs(full - eval_cut(xc, rk)));
        }
        return d;
    };

    // ancestors of q0 contribute one shared value
    double anc = 0.0;
    {
        GridInterval q = q0;
        while (q.cells() < g.n_cells()) {
            q = lat.parent(q);
            anc = std::max(anc, delta_over(q, nullptr, 0));
        }
    }

    std::vector<double> base_vals(q0.cells());
    for (std::size_t i = q0.i_lo; i < q0.i_hi; ++i)
        base_vals[i - q0.i_lo] = eval_base(g.cell_center(i));

    std::vector<double> out(q0.cells(), 0.0);
    auto dfs = [&](auto&& self, GridInterval Q, double inherited) -> void {
        double m = std::max(inherited, delta_over(Q, &base_vals, q0.i_lo));
        if (Q.cells() == 1) {
            out[Q.i_lo - q0.i_lo] = m;
            return;
        }
        std::size_t mid = Q.i_lo + Q.cells() / 2;
        self(self, {Q.i_lo, mid}, m);
        self(self, {mid, Q.i_hi}, m);
    };
    dfs(dfs, q0, anc);
    return out;
}

double grand_max(const MultiSublinearEvaluator& U, std::span<const SampledFunction> inputs,
                 int kappa, double x) {
    if (inputs.empty()) throw std::invalid_argument("grand_max: no inputs");
    const Grid& g = inputs[0].grid();
    auto prog = U.prepare(inputs);
    std::size_t c = g.cell_of(x);
    return grand_max_field(*prog, g, kappa, {c, c + 1}, std::nullopt)[0];
}

std::vector<double> grand_max_all(const MultiSublinearEvaluator& U,
                                  std::span<const SampledFunction> inputs, int kappa,
                                  GridInterval q0) {
    if (inputs.empty()) throw std::invalid_argument("grand_max: no inputs");
    const Grid& g = inputs[0].grid();
    auto prog = U.prepare(inputs);
    return grand_max_field(*prog, g, kappa, q0, std::nullopt);
}

}  // namespace calclab
