#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "calclab/grid.hpp"
#include "calclab/maximal.hpp"

namespace calclab {

struct SparseEntry {
    GridInterval q;        // dyadic base interval
    GridInterval q_kappa;  // 3^kappa q clipped to the domain
    std::vector<std::uint32_t> e_cells;  // owned cells, sorted, subset of q
    std::size_t depth = 0;               // dyadic depth of q
};

struct SparseFamily {
    std::vector<SparseEntry> entries;
    double eta = 0.5;
    int kappa = 3;
};

struct SparsityCertificate {
    bool pass = true;
    std::string detail;  // first violation when pass is false
};

/// Exact check that the owned cells are pairwise disjoint and each entry
/// owns at least eta |Q| of its interval.
SparsityCertificate verify_sparsity(const SparseFamily& S, double eta);

/// Entries sorted by (depth, i_lo), one JSON object per line with keys
/// depth, i_lo, i_hi, kappa_lo, kappa_hi, e_cells_count.
void write_sparse_family(std::ostream& os, const SparseFamily& S);
std::string serialize_sparse_family(const SparseFamily& S);

struct WhitneyResult {
    std::vector<GridInterval> intervals;   // dyadic, 5R <= dist/diam <= 15R
    std::vector<GridInterval> unresolved;  // leftover runs finer than the grid allows
};

/// Dyadic decomposition of an open set (a cell mask) into intervals whose
/// size is comparable to their distance from the complement. Cells closer
/// to the boundary than 5R h cannot satisfy the sandwich and are returned
/// separately as maximal runs.
WhitneyResult whitney(const Grid& g, const std::vector<bool>& omega, double R);

struct CzResult {
    std::vector<GridInterval> cubes;
    bool degenerate = false;  // the density condition already holds on q0
};

/// Maximal strict dyadic descendants P of q0 with |P cap E| > level |P|.
/// When E itself is too dense on q0 the decomposition degenerates and q0 is
/// reported as the single stopping cube.
CzResult cz_select(const Grid& g, const std::vector<bool>& e_mask, GridInterval q0, double level);

struct C2Policy {
    double c2_initial = 2.0;
    int max_doublings = 60;
};

struct SparseDiagnostics {
    double c2_max = 0.0;
    std::size_t node_count = 0;
    std::size_t max_depth = 0;
    bool child_measure_ok = true;  // sum of child cells <= |Q|/2 at every node
    double runtime_sec = 0.0;
};

/// Stopping-time recursion: at each node the exceptional set where either
/// the pointwise product or the localized grand maximal operator exceeds
/// C2 times the product of the slot gauge norms on Q^kappa is covered by a
/// level-1/4 stopping family, the rest of the node is owned, and the
/// recursion descends into the stopping cubes. C2 doubles per node until
/// the exceptional set is at most |Q|/8.
SparseFamily sparse_dominate(const MultiSublinearEvaluator& U,
                             std::span<const SampledFunction> inputs, GridInterval q0, int kappa,
                             std::span<const double> beta, C2Policy policy = {},
                             SparseDiagnostics* diag = nullptr);

/// sum over entries with x in Q of prod_j ||f_j||_{L(log L)^{beta_j}, Q^kappa}.
double sparse_apply(const SparseFamily& S, std::span<const SampledFunction> f,
                    std::span<const double> beta, double x);

/// The same field at every cell center of the grid.
std::vector<double> sparse_apply_all(const SparseFamily& S, std::span<const SampledFunction> f,
                                     std::span<const double> beta);

struct EndpointDecomposition {
    SampledFunction a1;  // a off the superlevel set
    SampledFunction a2;  // smoothed interval pieces
    SampledFunction a3;  // rough remainders, a - a1 - a2
    std::vector<GridInterval> intervals;    // covering of the superlevel set
    std::vector<double> interval_avg_pow;   // per-interval mean of |a|^p
    double a1_sup = 0.0;
};

/// Splits a along Omega = {M(|a|^p) > 1} (exhaustive maximal function):
/// a1 = a off Omega, and per covering interval I the piece a chi_I is
/// smoothed at scale max(|I|, 2h), giving a2; a3 holds the remainders.
/// The three parts sum back to a.
EndpointDecomposition endpoint_decompose(const SampledFunction& a, double p,
                                         double whitney_R = 1.0);

}  // namespace calclab
