// qgrass: exact computations in the covering algebra of
// U_q(sl2) (x) U_q(sl2), on finite-field subspace lattices, and in the
// Terwilliger algebras of Grassmann graphs.
//
// Data output (JSON/CSV) goes to stdout; progress notes go to stderr.
// The exit code is 0 exactly when every check in the report passes.

#include "qgrass/qgrass.hpp"
#include "qgrass/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

using namespace qgrass;
using nlohmann::json;

namespace {

struct RunConfig {
    int p = 2, D = 4, k = 1, Dmax = 5;
    std::string x0_text;
    std::string format = "json";
    unsigned seed = 20240809;
    bool stretch = false;
    std::string expr;
    std::string kind = "L1";
    bool selftest_corrupt = false;

    long max_cells() const {
        if (const char* env = std::getenv("QGRASS_MAX_CELLS")) {
            long v = std::atol(env);
            if (v > 0) return v;
        }
        return stretch ? 30000 : 1000;
    }

    Subspace x0(int ambient) const {
        if (!x0_text.empty()) {
            Subspace s = Subspace::parse(x0_text, p, ambient);
            if (s.dim() != k)
                throw domain_error("--x0 has dimension " + std::to_string(s.dim()) + ", expected k = " +
                                   std::to_string(k));
            return s;
        }
        GFMat m(p, k, ambient);
        for (int i = 0; i < k; ++i) m.set(i, i, 1);
        return Subspace::span(std::move(m));
    }
};

long lattice_cells(int p, int D) {
    long total = 0;
    for (int i = 0; i <= D; ++i) {
        Quad v = specialize(RatFun::q_power(i * (D - i)) * q_binom(D, i), p);
        total += (long)numerator(v.a());
    }
    return total;
}

void guard_cells(long need, const RunConfig& cfg) {
    if (need > cfg.max_cells())
        throw resource_error("instance needs " + std::to_string(need) + " basis cells, limit is " +
                             std::to_string(cfg.max_cells()) +
                             " (raise with --stretch or QGRASS_MAX_CELLS)");
}

json check_to_json(const CheckResult& c) {
    json j{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    return j;
}

json report_to_json(const Report& rep) {
    json checks = json::array();
    for (auto& c : rep.checks) checks.push_back(check_to_json(c));
    return json{{"checks", checks},
                {"summary",
                 {{"total", rep.checks.size()},
                  {"pass", rep.checks.size() - rep.failures()},
                  {"fail", rep.failures()}}}};
}

int emit_report(const RunConfig& cfg, const std::string& command, const Report& rep,
                const json& extra = json::object()) {
    if (cfg.format == "json") {
        json out{{"command", command},
                 {"config",
                  {{"p", cfg.p}, {"D", cfg.D}, {"k", cfg.k}, {"seed", cfg.seed}, {"stretch", cfg.stretch}}}};
        out.update(report_to_json(rep));
        if (!extra.empty()) out.update(extra);
        std::cout << out.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "name,status,witness\n";
        for (auto& c : rep.checks)
            std::cout << c.name << "," << (c.pass ? "pass" : "fail") << ",\"" << c.witness << "\"\n";
    } else {
        for (auto& c : rep.checks) {
            std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
            if (!c.witness.empty()) std::cout << "  (" << c.witness << ")";
            std::cout << "\n";
        }
        std::cout << rep.checks.size() - rep.failures() << "/" << rep.checks.size() << " checks passed\n";
    }
    return rep.all_pass() ? 0 : 1;
}

int cmd_symbolic(const RunConfig& cfg) {
    if (!cfg.expr.empty()) {
        Word word = parse_word(cfg.expr, Alg::W);
        PBW nf = system(Alg::W).normal_form(word);
        if (cfg.format == "json") {
            json terms = json::array();
            for (auto& [m, c] : nf.terms())
                terms.push_back({{"monomial", system(Alg::W).mono_str(m)}, {"coefficient", c.str()}});
            std::cout << json{{"command", "symbolic"}, {"expr", cfg.expr}, {"normal_form", terms}}.dump(2)
                      << "\n";
        } else {
            std::cout << system(Alg::W).str(nf) << "\n";
        }
        return 0;
    }
    if (cfg.selftest_corrupt) {
        std::cerr << "running the corrupted-rule self test (failures expected)\n";
        return emit_report(cfg, "symbolic", corrupted_rule_selftest());
    }
    std::cerr << "running the symbolic suite (seed " << cfg.seed << ")\n";
    return emit_report(cfg, "symbolic", symbolic_suite(cfg.seed));
}

int cmd_lattice_verify(const RunConfig& cfg) {
    guard_cells(lattice_cells(cfg.p, cfg.D), cfg);
    Subspace x0 = cfg.x0(cfg.D);
    std::cerr << "building lattice operators over GF(" << cfg.p << "), D = " << cfg.D
              << ", x0 = " << x0.str() << "\n";
    LatticeOps ops(LatticeBasis::whole(cfg.p, cfg.D, cfg.max_cells()), x0);
    Report rep = verify_relation_suite(ops);
    std::cerr << "relation suite done (" << rep.checks.size() << " checks)\n";
    Report dia = verify_diagrams(ops, cfg.max_cells());
    rep.checks.insert(rep.checks.end(), dia.checks.begin(), dia.checks.end());
    std::cerr << "diagram suite done\n";
    Report blk = verify_block_spectra(ops);
    rep.checks.insert(rep.checks.end(), blk.checks.begin(), blk.checks.end());
    std::cerr << "block spectra done\n";
    return emit_report(cfg, "lattice-verify", rep);
}

int cmd_decompose(const RunConfig& cfg) {
    guard_cells(lattice_cells(cfg.p, cfg.D), cfg);
    Subspace x0 = cfg.x0(cfg.D);
    LatticeOps ops(LatticeBasis::whole(cfg.p, cfg.D, cfg.max_cells()), x0);
    std::cerr << "decomposing the " << ops.n() << "-dimensional lattice module\n";
    auto dec = decompose_lattice(ops);
    Report rep = verify_lattice_decomposition(ops);
    Report lay = verify_layer_labels(cfg.p, cfg.D);
    rep.checks.insert(rep.checks.end(), lay.checks.begin(), lay.checks.end());
    json table = json::array();
    long total = 0;
    for (auto& [label, mult] : dec) {
        table.push_back({{"label", label.str()},
                         {"m", label.m},
                         {"n", label.n},
                         {"delta", label.delta},
                         {"lambda", label.lambda.str()},
                         {"dim", label.dim()},
                         {"multiplicity", mult}});
        total += mult * label.dim();
    }
    return emit_report(cfg, "decompose", rep, json{{"components", table}, {"total_dimension", total}});
}

int cmd_terwilliger(const RunConfig& cfg) {
    guard_cells(lattice_cells(cfg.p, cfg.D), cfg);
    Subspace x0 = cfg.x0(cfg.D);
    std::cerr << "generating both layer algebras at x0 = " << x0.str() << "\n";
    TerwilligerReport rep = compare_report(cfg.p, cfg.D, cfg.k, x0, cfg.max_cells());
    json blocks_tilde = json::array(), blocks_plain = json::array();
    for (auto& [size, count] : rep.blocks_tildeT) blocks_tilde.push_back({{"size", size}, {"count", count}});
    for (auto& [size, count] : rep.blocks_T) blocks_plain.push_back({{"size", size}, {"count", count}});
    json extra{{"dims",
                {{"generated_T", rep.generated_T},
                 {"generated_tildeT", rep.generated_tildeT},
                 {"formula_T", rep.formula_T},
                 {"formula_tildeT", rep.formula_tildeT}}},
               {"blocks", {{"tildeT", blocks_tilde}, {"T", blocks_plain}}}};
    return emit_report(cfg, "terwilliger", rep.checks, extra);
}

int cmd_dim_table(const RunConfig& cfg) {
    std::cout << "D,k,dim_tildeT,dim_T,gap\n";
    for (int D = 2; D <= cfg.Dmax; ++D)
        for (int k = 1; k <= D - 1; ++k) {
            long tilde = dim_formula_tildeT(D, k);
            long gap = dim_gap_formula(D, k);
            std::cout << D << "," << k << "," << tilde << "," << (tilde - gap) << "," << gap << "\n";
        }
    return 0;
}

json quad_to_json(const Quad& v, long context_n) {
    return json{{"a_num", numerator(v.a()).str()},
                {"a_den", denominator(v.a()).str()},
                {"b_num", numerator(v.b()).str()},
                {"b_den", denominator(v.b()).str()},
                {"N", v.radicand() ? v.radicand() : context_n}};
}

int cmd_dump_operator(const RunConfig& cfg) {
    guard_cells(lattice_cells(cfg.p, cfg.D), cfg);
    Subspace x0 = cfg.x0(cfg.D);
    SparseMat<Quad> op;
    std::vector<std::string> basis_text;
    if (cfg.kind == "A" || cfg.kind == "Astar") {
        LatticeBasis layer = LatticeBasis::layer(cfg.p, cfg.D, cfg.k, cfg.max_cells());
        for (auto& s : layer.elements()) basis_text.push_back(s.str());
        op = cfg.kind == "A" ? build_adjacency(layer) : build_dual_adjacency(layer, x0);
    } else {
        static const std::map<std::string, LatOp> kinds{
            {"L1", LatOp::L1}, {"L2", LatOp::L2}, {"R1", LatOp::R1}, {"R2", LatOp::R2},
            {"D1", LatOp::D1}, {"D2", LatOp::D2}, {"D3", LatOp::D3}, {"D4", LatOp::D4}};
        auto it = kinds.find(cfg.kind);
        if (it == kinds.end()) throw parse_error("unknown operator kind '" + cfg.kind + "'");
        LatticeOps ops(LatticeBasis::whole(cfg.p, cfg.D, cfg.max_cells()), x0);
        for (auto& s : ops.basis().elements()) basis_text.push_back(s.str());
        op = ops.op(it->second);
    }
    json entries = json::array();
    for (int i = 0; i < op.rows(); ++i)
        for (auto& [j, v] : op.row(i)) entries.push_back(json::array({i, j, quad_to_json(v, cfg.p)}));
    std::cout << json{{"command", "dump-operator"},
                      {"kind", cfg.kind},
                      {"p", cfg.p},
                      {"D", cfg.D},
                      {"x0", x0.str()},
                      {"basis", basis_text},
                      {"entries", entries}}
                     .dump(2)
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"exact workbench for quantum-algebra structures on subspace lattices"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool wants_lattice) {
        sub->add_option("--format", cfg.format, "output format: json, csv or text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--seed", cfg.seed, "seed for randomized property sampling");
        if (wants_lattice) {
            sub->add_option("--p", cfg.p, "field size (prime)")->check(CLI::IsMember({2, 3, 5, 7}));
            sub->add_option("--D", cfg.D, "ambient dimension");
            sub->add_option("--k", cfg.k, "dimension of the base point / layer");
            sub->add_option("--x0", cfg.x0_text, "base subspace, rows of digits like 1000;0100");
            sub->add_flag("--stretch", cfg.stretch, "raise the resource guard");
        }
    };

    CLI::App* sym = app.add_subcommand("symbolic", "normal-form and homomorphism verification");
    add_common(sym, false);
    sym->add_option("--expr", cfg.expr, "print the normal form of a generator word, e.g. F1*E1^2*K2^-1");
    sym->add_flag("--self-test-corrupt", cfg.selftest_corrupt,
                  "corrupt one rewrite rule and show which identities catch it");

    CLI::App* lat = app.add_subcommand("lattice-verify", "operator relations, diagrams and spectra");
    add_common(lat, true);
    CLI::App* dec = app.add_subcommand("decompose", "decompose the lattice module into irreducibles");
    add_common(dec, true);
    CLI::App* ter = app.add_subcommand("terwilliger", "generate and compare the two layer algebras");
    add_common(ter, true);
    CLI::App* dim = app.add_subcommand("dim-table", "closed-form dimension table (CSV)");
    add_common(dim, false);
    dim->add_option("--p", cfg.p, "field size (unused by the formulas, kept for symmetry)");
    dim->add_option("--Dmax", cfg.Dmax, "largest ambient dimension");
    CLI::App* dmp = app.add_subcommand("dump-operator", "emit one operator as JSON");
    add_common(dmp, true);
    dmp->add_option("--kind", cfg.kind, "L1 L2 R1 R2 D1 D2 D3 D4 A Astar");

    CLI11_PARSE(app, argc, argv);

    try {
        auto t0 = std::chrono::steady_clock::now();
        int rc = 1;
        if (sym->parsed()) rc = cmd_symbolic(cfg);
        else if (lat->parsed()) rc = cmd_lattice_verify(cfg);
        else if (dec->parsed()) rc = cmd_decompose(cfg);
        else if (ter->parsed()) rc = cmd_terwilliger(cfg);
        else if (dim->parsed()) rc = cmd_dim_table(cfg);
        else if (dmp->parsed()) rc = cmd_dump_operator(cfg);
        auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
        std::cerr << "done in " << ms.count() << " ms, exit " << rc << "\n";
        return rc;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
