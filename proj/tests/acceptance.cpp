// Acceptance suite: one line per criterion, exit 0 when all pass.
// Every comparison is exact (no tolerances); the stated runtime budgets are
// enforced as part of the pass condition.

#include "qgrass/qgrass.hpp"
#include "qgrass/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace qgrass;

namespace {

int g_failures = 0;

double run_timed(const std::function<bool(std::string&)>& body, std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!ok && detail.empty()) detail = "check failed";
    if (!ok) ++g_failures;
    return ok ? secs : -secs;
}

void criterion(int idx, const std::string& name, double budget_secs,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    double secs = run_timed(body, detail);
    bool ok = secs >= 0;
    double t = secs < 0 ? -secs : secs;
    if (ok && budget_secs > 0 && t > budget_secs) {
        ok = false;
        ++g_failures;
        detail = "over time budget";
    }
    std::printf("criterion %d (%s): %s  [%.1fs%s]%s%s\n", idx, name.c_str(), ok ? "PASS" : "FAIL", t,
                budget_secs > 0 ? (" / " + std::to_string((int)budget_secs) + "s").c_str() : "",
                detail.empty() ? "" : "  -- ", detail.c_str());
    std::fflush(stdout);
}

LatticeOps make_ops(int p, int D, int k, long cells = 100000) {
    GFMat m(p, k, D);
    for (int i = 0; i < k; ++i) m.set(i, i, 1);
    return LatticeOps(LatticeBasis::whole(p, D, cells), Subspace::span(std::move(m)));
}

bool report_ok(const Report& rep, std::string& detail) {
    for (auto& c : rep.checks)
        if (!c.pass) {
            detail = c.name + (c.witness.empty() ? "" : " (" + c.witness + ")");
            return false;
        }
    return true;
}

} // namespace

int main() {
    // 1. full symbolic suite
    criterion(1, "symbolic suite", 30, [](std::string& detail) {
        return report_ok(symbolic_suite(20240809), detail);
    });

    // 2. lattice relation and diagram suites on the three desk instances
    for (auto [p, D, k] : std::vector<std::tuple<int, int, int>>{{2, 3, 1}, {2, 4, 2}, {3, 3, 1}}) {
        criterion(2, "lattice relations/diagrams p=" + std::to_string(p) + " D=" + std::to_string(D) +
                         " k=" + std::to_string(k),
                  120, [p = p, D = D, k = k](std::string& detail) {
                      LatticeOps ops = make_ops(p, D, k);
                      Report rep = verify_relation_suite(ops);
                      Report dia = verify_diagrams(ops, 100000);
                      rep.checks.insert(rep.checks.end(), dia.checks.begin(), dia.checks.end());
                      if ((int)rep.checks.size() < 25) {
                          detail = "fewer than 25 identities checked";
                          return false;
                      }
                      return report_ok(rep, detail);
                  });
    }

    // 3. block spectra of the rank-one operator family at (2,4,2)
    criterion(3, "bilinear block spectra (2,4,2)", 0, [](std::string& detail) {
        LatticeOps ops = make_ops(2, 4, 2);
        return report_ok(verify_block_spectra(ops), detail);
    });

    // 4. whole-lattice decomposition against the closed-form multiplicities
    criterion(4, "lattice decomposition (2,4,k=2)", 0, [](std::string& detail) {
        LatticeOps ops = make_ops(2, 4, 2);
        if (ops.n() != 67) {
            detail = "lattice size is not 67";
            return false;
        }
        return report_ok(verify_lattice_decomposition(ops), detail);
    });
    criterion(4, "lattice decomposition (2,5,k=2)", 0, [](std::string& detail) {
        LatticeOps ops = make_ops(2, 5, 2);
        return report_ok(verify_lattice_decomposition(ops), detail);
    });

    // 5. eigenspace sweep of the twisted tensor modules under the q-Hahn
    //    action, plus the isomorphism-orbit predicate against label equality
    criterion(5, "eigenspace sweep m,n <= 3", 60, [](std::string& detail) {
        SymbolicCtx S;
        struct Comp {
            int m, n, delta, l;
            RatFun lambda;
            HLabel<RatFun> label;
        };
        std::vector<Comp> comps;
        for (int delta : {1, -1})
            for (RatFun lambda : {RatFun(1), RatFun::q_power(-1)})
                for (int m = 0; m <= 3; ++m)
                    for (int n = 0; n <= 3; ++n) {
                        auto parts = h_eigenspace_decompose(S, m, n, delta, lambda);
                        for (int l = 0; l <= m + n; ++l) {
                            if (!(parts[l].identified == parts[l].predicted)) {
                                detail = "label mismatch at (m,n,delta,l) = (" + std::to_string(m) + "," +
                                         std::to_string(n) + "," + std::to_string(delta) + "," +
                                         std::to_string(l) + ")";
                                return false;
                            }
                            comps.push_back({m, n, delta, l, lambda, parts[l].identified});
                        }
                    }
        for (auto& a : comps)
            for (auto& b : comps) {
                bool orbit = h_component_isomorphic(S, a.m, a.n, a.delta, a.lambda, a.l, b.m, b.n,
                                                    b.delta, b.lambda, b.l);
                bool labels = a.delta == b.delta && a.label == b.label;
                if (orbit != labels) {
                    detail = "orbit predicate disagrees with label equality";
                    return false;
                }
            }
        return true;
    });

    // 6. generated algebra dimensions on the five stated instances
    {
        auto t0 = std::chrono::steady_clock::now();
        for (auto [p, D, k] : std::vector<std::tuple<int, int, int>>{
                 {2, 4, 1}, {2, 4, 2}, {2, 5, 1}, {2, 5, 2}, {3, 3, 1}}) {
            criterion(6, "terwilliger dims p=" + std::to_string(p) + " (" + std::to_string(D) + "," +
                             std::to_string(k) + ")",
                      0, [p = p, D = D, k = k](std::string& detail) {
                          GFMat m(p, k, D);
                          for (int i = 0; i < k; ++i) m.set(i, i, 1);
                          TerwilligerReport rep =
                              compare_report(p, D, k, Subspace::span(std::move(m)), 100000);
                          return report_ok(rep.checks, detail);
                      });
        }
        double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        criterion(6, "terwilliger total runtime", 600, [total](std::string& detail) {
            detail = std::to_string((int)total) + "s over the five instances";
            return total < 600;
        });
    }

    // 7. closed-form dimension formulas against the block-list sums and the
    //    layer duality
    criterion(7, "dimension formula consistency D <= 8", 0, [](std::string& detail) {
        for (int D = 0; D <= 8; ++D)
            for (int k = 0; 2 * k <= D; ++k) {
                long formula = dim_formula_tildeT(D, k);
                long merged = blocklist_dim(predicted_structures(D, k).tilde_t);
                long naive = 0, dual = 0;
                for (auto& t : enum_P(D, k)) {
                    long dd = component_d(D, k, t) + 1;
                    naive += dd * dd;
                }
                for (auto& t : enum_P(D, D - k)) {
                    long dd = component_d(D, D - k, t) + 1;
                    dual += dd * dd;
                }
                bool ok = formula == merged && naive == dual && dim_formula_tildeT(D, D - k) == formula;
                if (2 * k != D) ok = ok && naive == formula;
                if (!ok) {
                    detail = "mismatch at (D,k) = (" + std::to_string(D) + "," + std::to_string(k) + ")";
                    return false;
                }
            }
        return true;
    });

    // 8. negative controls: the unipotent module, a corrupted rewrite rule,
    //    and a perturbed q-Hahn image are all caught
    criterion(8, "negative controls", 0, [](std::string& detail) {
        SymbolicCtx S;
        bool caught = false;
        try {
            decompose_W(build_unipotent_2dim(S));
        } catch (const not_completely_reducible&) {
            caught = true;
        }
        if (!caught) {
            detail = "unipotent module not flagged";
            return false;
        }
        if (corrupted_rule_selftest().all_pass()) {
            detail = "corrupted rewrite rule not caught";
            return false;
        }
        HImages bad = hahn_images_w();
        bad.C += system(Alg::W).generator(gen::E1);
        if (check_hq_relations(bad, Alg::W)) {
            detail = "perturbed q-Hahn image not caught";
            return false;
        }
        return true;
    });

    std::printf("%s\n", g_failures == 0 ? "acceptance: all criteria PASS" : "acceptance: FAILURES present");
    return g_failures == 0 ? 0 : 1;
}
