#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "calclab/cellsum.hpp"
#include "calclab/generate.hpp"
#include "calclab/report.hpp"
#include "calclab/sparse.hpp"
#include "calclab/suites.hpp"

namespace {

using namespace calclab;

void write_xy_csv(std::ostream& os, const Grid& g, const std::vector<double>& values) {
    os << "x,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        os << g.cell_center(i) << ',' << values[i] << '\n';
}

int run_verify(const Scenario& sc, const std::string& out, const std::string& format,
               const std::string& family_out) {
    Report rep = run_suite(sc);
    if (out.empty()) {
        std::cout << (format == "csv" ? report_to_csv(rep) : report_to_json(rep));
    } else {
        emit_report(rep, format, out);
    }
    for (const auto& c : rep.checks)
        std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  constant=" << c.constant
                  << "\n";
    if (!family_out.empty()) {
        GeneratedInputs in = generate_inputs(sc);
        CommutatorAEvaluator U(in.A, sc.m);
        GridInterval q0{0, in.slots[0].grid().n_cells()};
        SparseFamily fam =
            sparse_dominate(U, in.slots, q0, sc.kappa, sc.beta_or_default());
        std::ofstream fo(family_out);
        if (!fo) throw std::runtime_error("cannot write family to '" + family_out + "'");
        write_sparse_family(fo, fam);
    }
    return rep.all_pass() ? 0 : 1;
}

int run_eval(const std::string& op, const Scenario& sc, const std::string& out) {
    GeneratedInputs in = generate_inputs(sc);
    const Grid& g = in.slots[0].grid();
    const SampledFunction& f = in.slots.back();
    std::vector<double> field;

    if (op == "commutator") {
        CommutatorEvaluator U(sc.m);
        auto prog = U.prepare(in.slots);
        field = operator_field(*prog, g);
    } else if (op == "commutator_A") {
        CommutatorAEvaluator U(in.A, sc.m);
        auto prog = U.prepare(in.slots);
        field = operator_field(*prog, g);
    } else if (op == "hl_max") {
        field = hl_max_all(f, sc.search);
    } else if (op == "m_s") {
        std::vector<double> pw = hl_max_all(f.abs_pow(sc.s), sc.search);
        field.resize(pw.size());
        for (std::size_t i = 0; i < pw.size(); ++i) field[i] = std::pow(pw[i], 1.0 / sc.s);
    } else if (op == "m_orlicz") {
        field = m_orlicz_all(f, sc.gamma, sc.search);
    } else if (op == "sharp_max") {
        field = sharp_max_all(f, sc.s, sc.search);
    } else if (op == "grand_max") {
        CommutatorAEvaluator U(in.A, sc.m);
        field = grand_max_all(U, in.slots, sc.kappa, {0, g.n_cells()});
    } else {
        throw UsageError("unknown op '" + op +
                         "' (expected commutator|commutator_A|hl_max|m_s|m_orlicz|sharp_max|"
                         "grand_max)");
    }

    if (out.empty()) {
        write_xy_csv(std::cout, g, field);
    } else {
        std::ofstream os(out);
        if (!os) throw std::runtime_error("cannot write to '" + out + "'");
        write_xy_csv(os, g, field);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for commutator sparse-domination experiments"};
    app.require_subcommand(1);

    Scenario sc;
    std::string search = "dyadic";
    std::string out, format = "json", family_out, config, op;

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", sc.suite,
                       "domination|endpoint|weighted|kernels|maximal|weights-sanity|"
                       "decompositions")
        ->required();
    verify->add_option("--m", sc.m, "operator order (number of derivative slots)");
    verify->add_option("--n", sc.n_cells, "grid cells (power of two)");
    verify->add_option("--seed", sc.seed, "random seed");
    verify->add_option("--search", search, "dyadic|dyadic-only|exhaustive");
    verify->add_option("--kappa", sc.kappa, "dilation exponent for localization");
    verify->add_option("--out", out, "report path (stdout when omitted)");
    verify->add_option("--format", format, "json|csv");
    verify->add_option("--family-out", family_out, "also write the sparse family (JSONL)");

    auto* eval = app.add_subcommand("eval", "evaluate one operator over the grid");
    eval->add_option("--op", op, "commutator|commutator_A|hl_max|m_s|m_orlicz|sharp_max|grand_max")
        ->required();
    eval->add_option("--config", config, "flat JSON scenario file")->required();
    eval->add_option("--out", out, "CSV path (stdout when omitted)");

    auto* backend = app.add_subcommand("backend", "print the active cell-sum backend");

    CLI11_PARSE(app, argc, argv);

    try {
        if (backend->parsed()) {
            std::cout << calclab::cellsum::backend_name() << "\n";
            return 0;
        }
        if (verify->parsed()) {
            sc.search = calclab::parse_search_mode(search);
            return run_verify(sc, out, format, family_out);
        }
        Scenario file_sc = Scenario::from_file(config);
        return run_eval(op, file_sc, out);
    } catch (const calclab::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
