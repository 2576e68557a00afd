#include "calclab/sparse.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "calclab/kernels.hpp"

namespace calclab {

namespace {

GridInterval intersect(GridInterval a, GridInterval b) {
    std::size_t lo = std::max(a.i_lo, b.i_lo);
    std::size_t hi = std::min(a.i_hi, b.i_hi);
    if (lo >= hi) return {0, 0};
    return {lo, hi};
}

}  // namespace

SparsityCertificate verify_sparsity(const SparseFamily& S, double eta) {
    SparsityCertificate cert;
    std::size_t max_cell = 0;
    for (const auto& e : S.entries) max_cell = std::max(max_cell, e.q.i_hi);
    std::vector<std::ptrdiff_t> owner(max_cell, -1);
    for (std::size_t k = 0; k < S.entries.size(); ++k) {
        const auto& e = S.entries[k];
        if (static_cast<double>(e.e_cells.size()) + 1e-9 <
            eta * static_cast<double>(e.q.cells())) {
            cert.pass = false;
            cert.detail = "entry " + std::to_string(k) + " owns " +
                          std::to_string(e.e_cells.size()) + " of " +
                          std::to_string(e.q.cells()) + " cells";
            return cert;
        }
        for (std::uint32_t c : e.e_cells) {
            if (!e.q.contains_cell(c)) {
                cert.pass = false;
                cert.detail = "entry " + std::to_string(k) + " owns cell " + std::to_string(c) +
                              " outside its interval";
                return cert;
            }
            if (owner[c] >= 0) {
                cert.pass = false;
                cert.detail = "entries " + std::to_string(owner[c]) + " and " +
                              std::to_string(k) + " overlap at cell " + std::to_string(c);
                return cert;
            }
            owner[c] = static_cast<std::ptrdiff_t>(k);
        }
    }
    return cert;
}

void write_sparse_family(std::ostream& os, const SparseFamily& S) {
    std::vector<const SparseEntry*> order;
    order.reserve(S.entries.size());
    for (const auto& e : S.entries) order.push_back(&e);
    std::sort(order.begin(), order.end(), [](const SparseEntry* a, const SparseEntry* b) {
        return a->depth != b->depth ? a->depth < b->depth : a->q.i_lo < b->q.i_lo;
    });
    for (const SparseEntry* e : order) {
        os << "{\"depth\":" << e->depth << ",\"i_lo\":" << e->q.i_lo << ",\"i_hi\":" << e->q.i_hi
           << ",\"kappa_lo\":" << e->q_kappa.i_lo << ",\"kappa_hi\":" << e->q_kappa.i_hi
           << ",\"e_cells_count\":" << e->e_cells.size() << "}\n";
    }
}

std::string serialize_sparse_family(const SparseFamily& S) {
    std::ostringstream os;
    write_sparse_family(os, S);
    return os.str();
}

WhitneyResult whitney(const Grid& g, const std::vector<bool>& omega, double R) {
    if (omega.size() != g.n_cells()) throw std::invalid_argument("whitney: mask size mismatch");
    if (!(R >= 1.0)) throw std::invalid_argument("whitney: R must be >= 1");
    WhitneyResult out;
    if (std::none_of(omega.begin(), omega.end(), [](bool b) { return b; })) return out;
    if (omega.front() || omega.back())
        throw std::invalid_argument("whitney: open set must be strictly inside the domain");

    const std::size_t n = g.n_cells();
    // nearest complement cell on each side
    std::vector<std::size_t> left(n), right(n);
    std::size_t last = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!omega[i]) last = i;
        left[i] = last;
    }
    last = n - 1;
    for (std::size_t i = n; i-- > 0;) {
        if (!omega[i]) last = i;
        right[i] = last;
    }
    std::vector<std::size_t> inside(n + 1, 0);  // prefix count of omega cells
    for (std::size_t i = 0; i < n; ++i) inside[i + 1] = inside[i] + (omega[i] ? 1 : 0);

    std::vector<std::size_t> leftover;
    auto dist_cells = [&](GridInterval q) {
        // distance in cell units from q to the complement
        std::size_t dl = q.i_lo - (left[q.i_lo - 1] + 1) + 1;  // left[q.i_lo-1] < q.i_lo
        std::size_t dr = right[q.i_hi - 1] - q.i_hi + 1;
        (void)dl;
        return std::min(q.i_lo - left[q.i_lo - 1] - 1, right[q.i_hi - 1] - q.i_hi);
    };

    auto dfs = [&](auto&& self, GridInterval q) -> void {
        std::size_t cov = inside[q.i_hi] - inside[q.i_lo];
        if (cov == 0) return;
        if (cov == q.cells()) {
            std::size_t d = dist_cells(q);
            if (static_cast<double>(d) >= 5.0 * R * static_cast<double>(q.cells())) {
                out.intervals.push_back(q);
                return;
            }
            if (q.cells() == 1) {
                leftover.push_back(q.i_lo);
                return;
            }
        } else if (q.cells() == 1) {
            return;
        }
        std::size_t mid = q.i_lo + q.cells() / 2;
        self(self, {q.i_lo, mid});
        self(self, {mid, q.i_hi});
    };
    dfs(dfs, GridInterval{0, n});

    // merge leftover cells into maximal runs
    std::sort(leftover.begin(), leftover.end());
    for (std::size_t i = 0; i < leftover.size();) {
        std::size_t j = i;
        while (j + 1 < leftover.size() && leftover[j + 1] == leftover[j] + 1) ++j;
        out.unresolved.push_back({leftover[i], leftover[j] + 1});
        i = j + 1;
    }
    return out;
}

CzResult cz_select(const Grid& g, const std::vector<bool>& e_mask, GridInterval q0,
                   double level) {
    if (e_mask.size() != g.n_cells()) throw std::invalid_argument("cz_select: mask size mismatch");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("cz_select: level must be in (0,1)");
    DyadicLattice lat(g);
    if (!lat.is_dyadic(q0)) throw std::invalid_argument("cz_select: q0 must be dyadic");
    for (std::size_t i = 0; i < e_mask.size(); ++i)
        if (e_mask[i] && !q0.contains_cell(i))
            throw std::invalid_argument("cz_select: E must be contained in q0");

    std::vector<std::size_t> pref(g.n_cells() + 1, 0);
    for (std::size_t i = 0; i < g.n_cells(); ++i) pref[i + 1] = pref[i] + (e_mask[i] ? 1 : 0);
    auto count = [&](GridInterval q) { return pref[q.i_hi] - pref[q.i_lo]; };
    auto dense = [&](GridInterval q) {
        return static_cast<double>(count(q)) > level * static_cast<double>(q.cells());
    };

    CzResult out;
    if (dense(q0)) {
        out.degenerate = true;
        out.cubes.push_back(q0);
        return out;
    }
    auto dfs = [&](auto&& self, GridInterval q) -> void {
        if (q.cells() == 1) return;  // a sparse cell holds no E
        std::size_t mid = q.i_lo + q.cells() / 2;
        for (GridInterval child : {GridInterval{q.i_lo, mid}, GridInterval{mid, q.i_hi}}) {
            if (count(child) == 0) continue;
            if (dense(child))
                out.cubes.push_back(child);
            else
                self(self, child);
        }
    };
    dfs(dfs, q0);
    return out;
}

SparseFamily sparse_dominate(const MultiSublinearEvaluator& U,
                             std::span<const SampledFunction> inputs, GridInterval q0, int kappa,
                             std::span<const double> beta, C2Policy policy,
                             SparseDiagnostics* diag) {
    auto t0 = std::chrono::steady_clock::now();
    if (inputs.size() != U.arity())
        throw std::invalid_argument("sparse_dominate: slot count mismatch");
    if (beta.size() != inputs.size())
        throw std::invalid_argument("sparse_dominate: need one beta per slot");
    const Grid& g = inputs[0].grid();
    DyadicLattice lat(g);
    if (!lat.is_dyadic(q0)) throw std::invalid_argument("sparse_dominate: q0 must be dyadic");
    for (const auto& f : inputs) {
        GridInterval s = f.support();
        if (s.i_lo < s.i_hi && !q0.contains(s))
            throw std::invalid_argument("sparse_dominate: inputs must be supported in q0");
    }

    auto prog = U.prepare(inputs);
    SparseFamily family;
    family.eta = 0.5;
    family.kappa = kappa;
    SparseDiagnostics local;

    auto recurse = [&](auto&& self, GridInterval q, std::size_t gen) -> void {
        local.node_count += 1;
        local.max_depth = std::max(local.max_depth, gen);
        if (gen > lat.max_depth())
            throw std::runtime_error("sparse_dominate: recursion depth exceeded");
        GridInterval rk = dilate_3pow(q, kappa, g);
        SparseEntry entry;
        entry.q = q;
        entry.q_kappa = rk;
        entry.depth = lat.depth_of(q);

        if (q.cells() == 1) {
            entry.e_cells.push_back(static_cast<std::uint32_t>(q.i_lo));
            family.entries.push_back(std::move(entry));
            return;
        }

        double norm_prod = 1.0;
        for (std::size_t i = 0; i < inputs.size(); ++i)
            norm_prod *= luxemburg(inputs[i], rk, beta[i]);

        std::vector<double> gm = grand_max_field(*prog, g, kappa, q, rk);
        std::vector<double> pointprod(q.cells(), 1.0);
        for (const auto& f : inputs)
            for (std::size_t i = 0; i < q.cells(); ++i)
                pointprod[i] *= std::abs(f[q.i_lo + i]);

        double c2 = policy.c2_initial;
        std::vector<bool> e_mask(g.n_cells(), false);
        std::size_t e_count = 0;
        for (int attempt = 0;; ++attempt) {
            if (attempt > policy.max_doublings)
                throw std::runtime_error("sparse_dominate: exceptional set failed to shrink");
            double thr = c2 * norm_prod;
            e_count = 0;
            for (std::size_t i = 0; i < q.cells(); ++i) {
                bool in = pointprod[i] > thr || gm[i] > thr;
                e_mask[q.i_lo + i] = in;
                if (in) ++e_count;
            }
            if (8 * e_count <= q.cells()) break;
            c2 *= 2.0;
        }
        local.c2_max = std::max(local.c2_max, c2);

        CzResult cz = cz_select(g, e_mask, q, 0.25);
        std::vector<bool> child(g.n_cells(), false);
        std::size_t child_cells = 0;
        for (const auto& p : cz.cubes) {
            for (std::size_t i = p.i_lo; i < p.i_hi; ++i) child[i] = true;
            child_cells += p.cells();
        }
        if (2 * child_cells > q.cells()) local.child_measure_ok = false;

        for (std::size_t i = q.i_lo; i < q.i_hi; ++i)
            if (!child[i]) entry.e_cells.push_back(static_cast<std::uint32_t>(i));
        family.entries.push_back(std::move(entry));

        for (const auto& p : cz.cubes) self(self, p, gen + 1);
    };
    recurse(recurse, q0, 0);

    local.runtime_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (diag) *diag = local;
    return family;
}

double sparse_apply(const SparseFamily& S, std::span<const SampledFunction> f,
                    std::span<const double> beta, double x) {
    if (f.empty()) throw std::invalid_argument("sparse_apply: no inputs");
    if (beta.size() != f.size()) throw std::invalid_argument("sparse_apply: beta size mismatch");
    std::size_t c = f[0].grid().cell_of(x);
    double acc = 0.0;
    for (const auto& e : S.entries) {
        if (!e.q.contains_cell(c)) continue;
        double prod = 1.0;
        for (std::size_t j = 0; j < f.size(); ++j) prod *= luxemburg(f[j], e.q_kappa, beta[j]);
        acc += prod;
    }
    return acc;
}

std::vector<double> sparse_apply_all(const SparseFamily& S, std::span<const SampledFunction> f,
                                     std::span<const double> beta) {
    if (f.empty()) throw std::invalid_argument("sparse_apply: no inputs");
    if (beta.size() != f.size()) throw std::invalid_argument("sparse_apply: beta size mismatch");
    std::vector<double> out(f[0].grid().n_cells(), 0.0);
    for (const auto& e : S.entries) {
        double prod = 1.0;
        for (std::size_t j = 0; j < f.size(); ++j) prod *= luxemburg(f[j], e.q_kappa, beta[j]);
        for (std::size_t i = e.q.i_lo; i < e.q.i_hi; ++i) out[i] += prod;
    }
    return out;
}

EndpointDecomposition endpoint_decompose(const SampledFunction& a, double p, double whitney_R) {
    if (!(p >= 1.0)) throw std::invalid_argument("endpoint_decompose: p must be >= 1");
    const Grid& g = a.grid();
    std::vector<double> ap(a.size());
    for (std::size_t i = 0; i < ap.size(); ++i) ap[i] = std::pow(std::abs(a[i]), p);
    std::vector<double> mfield = uncentered_maximal_all(ap);

    std::vector<bool> omega(a.size());
    bool any = false;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        omega[i] = mfield[i] > 1.0;
        any = any || omega[i];
    }
    if (any && (omega.front() || omega.back()))
        throw std::runtime_error("endpoint_decompose: superlevel set touches the boundary");

    EndpointDecomposition out{SampledFunction::constant(g, 0.0), SampledFunction::constant(g, 0.0),
                              SampledFunction::constant(g, 0.0), {}, {}, 0.0};
    std::vector<double> a1(a.size(), 0.0), a2(a.size(), 0.0), a3(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!omega[i]) a1[i] = a[i];

    if (any) {
        WhitneyResult w = whitney(g, omega, whitney_R);
        out.intervals = w.intervals;
        out.intervals.insert(out.intervals.end(), w.unresolved.begin(), w.unresolved.end());
        std::sort(out.intervals.begin(), out.intervals.end(),
                  [](const GridInterval& x, const GridInterval& y) { return x.i_lo < y.i_lo; });

        PrefixSums pap(ap, g.h());
        for (const auto& I : out.intervals) {
            out.interval_avg_pow.push_back(pap.average(I));
            double t = std::max(I.length(g), 2.0 * g.h());
            ApproxIdentity k(t);
            SampledFunction b = a.restricted(I);
            // the smoothed piece lives on [left(I) - t, right(I))
            auto lo = static_cast<std::ptrdiff_t>(
                std::floor((I.left(g) - t - g.x_min()) / g.h()) - 1);
            lo = std::max<std::ptrdiff_t>(lo, 0);
            for (std::size_t i = static_cast<std::size_t>(lo); i < I.i_hi; ++i)
                a2[i] += approx_identity_apply(k, b, g.cell_center(i));
        }
        for (std::size_t i = 0; i < a.size(); ++i) a3[i] = (omega[i] ? a[i] : 0.0) - a2[i];
    }

    for (double v : a1) out.a1_sup = std::max(out.a1_sup, std::abs(v));
    out.a1 = SampledFunction(g, std::move(a1));
    out.a2 = SampledFunction(g, std::move(a2));
    out.a3 = SampledFunction(g, std::move(a3));
    return out;
}

}  // namespace calclab
