#include <algorithm>
#include <cmath>
#include <sstream>

#include "calclab/generate.hpp"
#include "calclab/sparse.hpp"
#include "doctest.h"

using namespace calclab;

namespace {

std::vector<bool> mask_from(const Grid& g, std::initializer_list<std::size_t> cells) {
    std::vector<bool> m(g.n_cells(), false);
    for (auto c : cells) m[c] = true;
    return m;
}

}  // namespace

TEST_CASE("whitney of the empty set") {
    Grid g(0.0, 1.0, 64);
    WhitneyResult w = whitney(g, std::vector<bool>(64, false), 1.0);
    CHECK(w.intervals.empty());
    CHECK(w.unresolved.empty());
}

TEST_CASE("whitney sandwich on a single interval") {
    Grid g(-2.0, 2.0, 1024);
    std::vector<bool> omega(1024, false);
    for (std::size_t i = g.cell_of(0.0); i < g.cell_of(1.0); ++i) omega[i] = true;
    WhitneyResult w = whitney(g, omega, 1.0);
    CHECK(!w.intervals.empty());

    // every emitted interval satisfies the distance sandwich exactly
    auto boundary_gap = [&](GridInterval q) {
        std::size_t dl = 0, dr = 0;
        for (std::size_t i = q.i_lo; i-- > 0 && omega[i];) ++dl;
        for (std::size_t i = q.i_hi; i < 1024 && omega[i]; ++i) ++dr;
        return std::min(dl, dr);
    };
    std::vector<int> covered(1024, 0);
    for (const auto& q : w.intervals) {
        double ratio = static_cast<double>(boundary_gap(q)) / static_cast<double>(q.cells());
        CHECK(ratio >= 5.0);
        CHECK(ratio <= 15.0);
        for (std::size_t i = q.i_lo; i < q.i_hi; ++i) covered[i] += 1;
    }
    for (const auto& q : w.unresolved)
        for (std::size_t i = q.i_lo; i < q.i_hi; ++i) covered[i] += 1;
    for (std::size_t i = 0; i < 1024; ++i) CHECK(covered[i] == (omega[i] ? 1 : 0));

    // leftovers only within the unresolvable boundary margin
    for (const auto& q : w.unresolved)
        for (std::size_t i = q.i_lo; i < q.i_hi; ++i) {
            std::size_t dl = 0, dr = 0;
            for (std::size_t k = i; k-- > 0 && omega[k];) ++dl;
            for (std::size_t k = i + 1; k < 1024 && omega[k]; ++k) ++dr;
            CHECK(std::min(dl, dr) < 5);
        }

    CHECK_THROWS_AS(whitney(g, std::vector<bool>(1024, true), 1.0), std::invalid_argument);
}

TEST_CASE("stopping selection example and properties") {
    Grid g(0.0, 1.0, 8);
    // cells of [0, 1/4] inside the unit root at level 1/4 select [0, 1/2)
    CzResult r = cz_select(g, mask_from(g, {0, 1}), {0, 8}, 0.25);
    CHECK(!r.degenerate);
    REQUIRE(r.cubes.size() == 1);
    CHECK(r.cubes[0] == GridInterval{0, 4});

    CzResult empty = cz_select(g, std::vector<bool>(8, false), {0, 8}, 0.25);
    CHECK(empty.cubes.empty());
    CHECK(!empty.degenerate);

    CzResult degen = cz_select(g, mask_from(g, {0, 1, 2, 3, 4}), {0, 8}, 0.25);
    CHECK(degen.degenerate);
    REQUIRE(degen.cubes.size() == 1);
    CHECK(degen.cubes[0] == GridInterval{0, 8});
}

TEST_CASE("stopping selection covers E and obeys the mass bound") {
    Grid g(0.0, 1.0, 64);
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<bool> e(64, false);
        std::size_t count = 0;
        for (std::size_t i = 0; i < 64; ++i)
            if (rng.uniform() < 0.2) {
                e[i] = true;
                ++count;
            }
        double level = 0.25;
        CzResult r = cz_select(g, e, {0, 64}, level);
        if (r.degenerate) continue;
        std::size_t covered_e = 0, total = 0;
        std::vector<int> seen(64, 0);
        for (const auto& p : r.cubes) {
            total += p.cells();
            for (std::size_t i = p.i_lo; i < p.i_hi; ++i) {
                seen[i] += 1;
                if (e[i]) ++covered_e;
            }
        }
        for (int s : seen) CHECK(s <= 1);         // pairwise disjoint
        CHECK(covered_e == count);                // E is exhausted at grid scale
        CHECK(static_cast<double>(total) <= static_cast<double>(count) / level + 1e-9);
    }
}

TEST_CASE("sparse apply on hand-built families") {
    Grid g(0.0, 1.0, 16);
    SampledFunction one = SampledFunction::constant(g, 1.0);
    std::vector<SampledFunction> fs{one, one};
    std::vector<double> beta{0.0, 0.0};

    SparseFamily empty;
    CHECK(sparse_apply(empty, fs, beta, 0.3) == 0.0);

    SparseFamily single;
    single.entries.push_back({{4, 8}, {0, 16}, {4, 5, 6, 7}, 2});
    CHECK(sparse_apply(single, fs, beta, g.cell_center(5)) == doctest::Approx(1.0));
    CHECK(sparse_apply(single, fs, beta, g.cell_center(12)) == 0.0);

    // nested pair: inner point sees both terms
    SparseFamily nested;
    nested.entries.push_back({{0, 16}, {0, 16}, {}, 0});
    nested.entries.push_back({{4, 8}, {0, 16}, {}, 2});
    double inner = sparse_apply(nested, fs, beta, g.cell_center(5));
    double outer = sparse_apply(nested, fs, beta, g.cell_center(12));
    CHECK(inner == doctest::Approx(2.0));
    CHECK(outer == doctest::Approx(1.0));

    auto all = sparse_apply_all(nested, fs, beta);
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(all[i] == doctest::Approx(sparse_apply(nested, fs, beta, g.cell_center(i))));
}

TEST_CASE("sparsity certificate detects violations") {
    SparseFamily good;
    good.entries.push_back({{0, 8}, {0, 16}, {0, 1, 2, 3}, 0});
    good.entries.push_back({{8, 16}, {0, 16}, {8, 9, 10, 11, 12, 13, 14, 15}, 0});
    CHECK(verify_sparsity(good, 0.5).pass);
    CHECK(verify_sparsity(good, 1.0).pass == false);  // first entry owns half only

    SparseFamily full;
    full.entries.push_back({{0, 8}, {0, 16}, {0, 1, 2, 3, 4, 5, 6, 7}, 0});
    CHECK(verify_sparsity(full, 1.0).pass);

    SparseFamily overlapping;
    overlapping.entries.push_back({{0, 8}, {0, 16}, {0, 1, 2, 3}, 0});
    overlapping.entries.push_back({{0, 4}, {0, 12}, {3}, 1});
    auto cert = verify_sparsity(overlapping, 0.25);
    CHECK(!cert.pass);
    CHECK(cert.detail.find("overlap") != std::string::npos);
}

TEST_CASE("zero inputs give the single trivial entry") {
    Grid g(-4.0, 4.0, 64);
    SampledFunction zero = SampledFunction::constant(g, 0.0);
    std::vector<SampledFunction> slots{zero, zero};
    LipschitzData A(SampledFunction::constant(g, 1.0), 0.0);
    CommutatorAEvaluator U(A, 1);
    std::vector<double> beta{0.0, 1.0};
    SparseFamily fam = sparse_dominate(U, slots, {0, 64}, 3, beta);
    REQUIRE(fam.entries.size() == 1);
    CHECK(fam.entries[0].q == GridInterval{0, 64});
    CHECK(fam.entries[0].e_cells.size() == 64);
    CHECK(verify_sparsity(fam, 1.0).pass);
}

TEST_CASE("domination run on a small grid") {
    Scenario sc;
    sc.m = 1;
    sc.n_cells = 256;
    sc.seed = 3;
    GeneratedInputs in = generate_inputs(sc);
    const Grid& g = in.slots[0].grid();
    CommutatorAEvaluator U(in.A, 1);
    std::vector<double> beta{0.0, 1.0};
    SparseDiagnostics diag;
    SparseFamily fam = sparse_dominate(U, in.slots, {0, 256}, 3, beta, {}, &diag);

    CHECK(verify_sparsity(fam, 0.5).pass);
    CHECK(diag.child_measure_ok);
    CHECK(diag.c2_max >= 2.0);

    auto prog = U.prepare(in.slots);
    auto apply = sparse_apply_all(fam, in.slots, beta);
    double cdom = 0.0;
    for (std::size_t i = 0; i < g.n_cells(); ++i) {
        double num = std::abs(prog->eval(g.cell_center(i)));
        if (num == 0.0) continue;
        REQUIRE(apply[i] > 0.0);
        cdom = std::max(cdom, num / apply[i]);
    }
    CHECK(std::isfinite(cdom));
    CHECK(cdom > 0.0);
}

TEST_CASE("tiny support drives the family deep") {
    Grid g(-4.0, 4.0, 256);
    std::vector<double> va(256, 0.0), vf(256, 0.0);
    for (std::size_t i = 120; i < 128; ++i) {
        va[i] = 1.0;
        vf[i] = 1.0;
    }
    std::vector<SampledFunction> slots{SampledFunction(g, va), SampledFunction(g, vf)};
    LipschitzData A(SampledFunction::from_fn(g, [](double x) { return std::sin(x); }), 0.0);
    CommutatorAEvaluator U(A, 1);
    std::vector<double> beta{0.0, 1.0};
    SparseFamily fam = sparse_dominate(U, slots, {0, 256}, 3, beta);
    CHECK(verify_sparsity(fam, 0.5).pass);
    std::size_t deepest = 0;
    for (const auto& e : fam.entries) deepest = std::max(deepest, e.depth);
    CHECK(deepest >= 3);  // recursion follows the narrow support down
}

TEST_CASE("family serialization is ordered and line delimited") {
    SparseFamily fam;
    fam.entries.push_back({{8, 16}, {0, 24}, {8, 9}, 1});
    fam.entries.push_back({{0, 16}, {0, 16}, {0}, 0});
    std::string text = serialize_sparse_family(fam);
    std::istringstream is(text);
    std::string line1, line2;
    std::getline(is, line1);
    std::getline(is, line2);
    CHECK(line1 ==
          "{\"depth\":0,\"i_lo\":0,\"i_hi\":16,\"kappa_lo\":0,\"kappa_hi\":16,\"e_cells_count\":1}");
    CHECK(line2 ==
          "{\"depth\":1,\"i_lo\":8,\"i_hi\":16,\"kappa_lo\":0,\"kappa_hi\":24,\"e_cells_count\":2}");
}

TEST_CASE("three-part splitting identities") {
    Grid g(-4.0, 4.0, 512);
    Rng rng(5);
    TrigProfile prof = TrigProfile::random(rng, 4);
    SampledFunction tall = SampledFunction::from_fn(g, [&](double x) {
        double u = (x + 4.0) / 8.0;
        return 4.0 * prof(u) * smooth_window(u) + 2.0 * smooth_window(u);
    });

    EndpointDecomposition d = endpoint_decompose(tall, 1.0);
    CHECK(!d.intervals.empty());
    double scale = 1.0;
    for (double v : d.a2.values()) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < 512; ++i) {
        double sum = d.a1[i] + (d.a2[i] + d.a3[i]);
        CHECK(std::abs(sum - tall[i]) <= 1e-12 * scale);
    }
    CHECK(d.a1_sup <= 1.0 + 1e-12);
    for (double avg : d.interval_avg_pow) CHECK(avg <= 17.0 + 1e-12);

    // small amplitude keeps the level set empty
    SampledFunction small = tall.map([](double v) { return 0.01 * v; });
    EndpointDecomposition ds = endpoint_decompose(small, 1.0);
    CHECK(ds.intervals.empty());
    for (std::size_t i = 0; i < 512; ++i) {
        CHECK(ds.a1[i] == small[i]);
        CHECK(ds.a2[i] == 0.0);
        CHECK(ds.a3[i] == 0.0);
    }
}

TEST_CASE("splitting rejects level sets that touch the boundary") {
    Grid g(-1.0, 1.0, 64);
    SampledFunction wide = SampledFunction::constant(g, 5.0);
    CHECK_THROWS_AS(endpoint_decompose(wide, 1.0), std::runtime_error);
}
