// torsionlab: command-line front door for the exact workbench.
//
// One subcommand per module operation, text or JSON output, and a
// verify-all batch running the whole check battery. Exit codes: 0 for
// success/verified, 1 for a verification failure (counterexample in the
// report), 2 for usage errors. Usage errors never masquerade as
// verification failures.

#include "torsionlab/algebra.hpp"
#include "torsionlab/checks.hpp"
#include "torsionlab/cosets.hpp"
#include "torsionlab/fp.hpp"
#include "torsionlab/models.hpp"
#include "torsionlab/sl2.hpp"
#include "torsionlab/spectral.hpp"
#include "torsionlab/steenrod.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace torsionlab;
using json = nlohmann::ordered_json;

namespace {

struct Options {
    uint32_t prime = 3;
    uint32_t n = 0;
    uint32_t k = 0;
    std::string I_text;
    std::string W_text;
    int64_t maxdeg = 0;
    bool maxdeg_set = false;
    std::string format = "text";
    uint64_t seed = kDefaultSeed;
    std::string word;
    std::string expr;
    std::string mode = "auto";
    bool certify = false;
};

bool json_mode(const Options& o) { return o.format == "json"; }

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

json perm_json(const Perm& s) {
    json a = json::array();
    for (uint32_t v : s.img) a.push_back(v + 1);
    return a;
}

json comp_json(const Composition& c) { return json(c.parts); }

const char* yesno(bool b) { return b ? "yes" : "no"; }

// ----------------------------------------------------------- subcommands

int run_apply(const Options& o) {
    OpWord w = OpWord::parse(o.prime, o.word);
    const AlgebraModel& m = cpmup_model(o.prime);
    Element x = parse(m, o.expr);
    Element y = apply(w, x);
    if (json_mode(o)) {
        emit(json{{"seed", o.seed},
                  {"prime", o.prime},
                  {"word", w.to_string()},
                  {"input", format(x)},
                  {"result", format(y)}});
    } else {
        std::cout << "prime: " << o.prime << "\n"
                  << "word: " << w.to_string() << "\n"
                  << "input: " << format(x) << "\n"
                  << "result: " << format(y) << "\n";
    }
    return 0;
}

int run_normalize(const Options& o) {
    OpWord w = OpWord::parse(o.prime, o.word);
    AdmissibleSum s = adem_normalize(w);
    if (json_mode(o)) {
        json terms = json::array();
        for (const auto& [term, c] : s.terms())
            terms.push_back(json{{"word", term.to_string()}, {"coeff", c}});
        emit(json{{"seed", o.seed},
                  {"prime", o.prime},
                  {"word", w.to_string()},
                  {"admissible", w.is_admissible()},
                  {"normal_form", s.to_string()},
                  {"terms", terms}});
    } else {
        std::cout << "prime: " << o.prime << "\n"
                  << "word: " << w.to_string() << "\n"
                  << "admissible: " << yesno(w.is_admissible()) << "\n"
                  << "normal form: " << s.to_string() << "\n";
    }
    return 0;
}

int run_rk(const Options& o) {
    Element direct = r_k_direct(o.prime, o.k);
    Element via = r_k_via_steenrod(o.prime, o.k);
    bool agree = direct == via;
    if (json_mode(o)) {
        json report{{"seed", o.seed},
                    {"prime", o.prime},
                    {"k", o.k},
                    {"class", format(direct)},
                    {"agree", agree}};
        if (!agree) report["via_operations"] = format(via);
        emit(report);
    } else {
        std::cout << "prime: " << o.prime << "\n"
                  << "k: " << o.k << "\n"
                  << "class: " << format(direct) << "\n";
        if (agree)
            std::cout << "pipelines agree\n";
        else
            std::cout << "pipelines disagree\noperation pipeline gave: " << format(via) << "\n";
    }
    return agree ? 0 : 1;
}

int run_verify_y(const Options& o) {
    YWordCheck c = verify_y_word(o.prime, o.k);
    if (json_mode(o)) {
        emit(json{{"seed", o.seed},
                  {"prime", o.prime},
                  {"k", o.k},
                  {"word", c.word.to_string()},
                  {"ok", c.ok},
                  {"got", format(c.got)},
                  {"want", format(c.want)}});
    } else {
        std::cout << "prime: " << o.prime << "\n"
                  << "k: " << o.k << "\n"
                  << "word: " << c.word.to_string() << "\n"
                  << "ok: " << yesno(c.ok) << "\n";
        if (!c.ok)
            std::cout << "got: " << format(c.got) << "\nwant: " << format(c.want) << "\n";
    }
    return c.ok ? 0 : 1;
}

int run_kz3(const Options& o) {
    KZ3Basis basis = o.maxdeg_set ? kz3_enumerate(o.prime, o.maxdeg) : kz3_enumerate(o.prime);
    if (json_mode(o)) {
        json entries = json::array();
        for (const KZ3Entry& e : basis.entries)
            entries.push_back(json{{"label", e.label}, {"degree", e.degree}});
        emit(json{{"seed", o.seed},
                  {"prime", basis.p},
                  {"cap", basis.cap},
                  {"count", basis.entries.size()},
                  {"entries", entries}});
    } else {
        std::cout << "prime: " << basis.p << "\n"
                  << "cap: " << basis.cap << "\n"
                  << "entries: " << basis.entries.size() << "\n";
        for (const KZ3Entry& e : basis.entries)
            std::cout << std::setw(5) << e.degree << "  " << e.label << "\n";
    }
    return 0;
}

InvariantMode resolve_mode(const Options& o) {
    if (o.mode == "full") return InvariantMode::FullGroup;
    if (o.mode == "generators") return InvariantMode::Generators;
    return o.prime == 3 ? InvariantMode::FullGroup : InvariantMode::Generators;
}

int run_invariants(const Options& o) {
    InvariantMode mode = resolve_mode(o);
    const char* mode_name = mode == InvariantMode::FullGroup ? "full" : "generators";

    if (!o.expr.empty()) {
        Element x = parse(xieta_model(o.prime), o.expr);
        InvariantCheck c = check_invariant(x, mode);
        if (json_mode(o)) {
            emit(json{{"seed", o.seed},
                      {"prime", o.prime},
                      {"mode", mode_name},
                      {"expr", format(x)},
                      {"invariant", c.invariant},
                      {"witness", c.witness ? json(c.witness->to_string()) : json(nullptr)}});
        } else {
            std::cout << "prime: " << o.prime << "\n"
                      << "mode: " << mode_name << "\n"
                      << "expr: " << format(x) << "\n"
                      << "invariant: " << yesno(c.invariant) << "\n";
            if (c.witness) std::cout << "witness: " << c.witness->to_string() << "\n";
        }
        return c.invariant ? 0 : 1;
    }

    // default report: q and r, then the fixed-space dimension table
    InvariantCheck cq = check_invariant(q_class(o.prime), mode);
    InvariantCheck cr = check_invariant(r_class(o.prime), mode);
    uint32_t cap = o.maxdeg_set ? static_cast<uint32_t>(o.maxdeg)
                                : invariant_dim_default_cap(o.prime);
    bool ok = cq.invariant && cr.invariant;
    json dims = json::array();
    std::ostringstream table;
    for (uint32_t d = 1; d <= cap; ++d) {
        int fixed = invariant_dim(o.prime, d, cap);
        int count = qr_monomial_count(o.prime, d);
        if (fixed != count) ok = false;
        dims.push_back(json{{"degree", d}, {"fixed_dim", fixed}, {"monomial_count", count}});
        table << std::setw(7) << d << std::setw(10) << fixed << std::setw(10) << count << "\n";
    }
    if (json_mode(o)) {
        emit(json{{"seed", o.seed},
                  {"prime", o.prime},
                  {"mode", mode_name},
                  {"q_invariant", cq.invariant},
                  {"r_invariant", cr.invariant},
                  {"q_degree", chow_degree(q_class(o.prime))},
                  {"r_degree", chow_degree(r_class(o.prime))},
                  {"dimensions", dims},
                  {"ok", ok}});
    } else {
        std::cout << "prime: " << o.prime << "\n"
                  << "mode: " << mode_name << "\n"
                  << "q: " << (cq.invariant ? "invariant" : "moved") << ", degree "
                  << chow_degree(q_class(o.prime)) << "\n"
                  << "r: " << (cr.invariant ? "invariant" : "moved") << ", degree "
                  << chow_degree(r_class(o.prime)) << "\n"
                  << " degree fixed-dim  q,r-mono\n"
                  << table.str()
                  << (ok ? "fixed-space dimensions match the q,r monomial counts\n"
                         : "MISMATCH between fixed-space dimensions and q,r monomial counts\n");
    }
    return ok ? 0 : 1;
}

int run_cosets(const Options& o) {
    Composition W = Composition::parse(o.W_text);
    std::vector<Composition> Ks = double_cosets(W, o.prime);
    bool ok = true;
    json orbits = json::array();
    std::ostringstream lines;
    for (const Composition& K : Ks) {
        Perm s = normalized_rep(K, W, o.prime);
        StabilizerResult st = stabilizer_intersection(s, W, o.prime, o.certify);
        if (o.certify && st.order_enumerated && *st.order_enumerated != st.order_formula)
            ok = false;
        orbits.push_back(json{
            {"K", comp_json(K)},
            {"rep", perm_json(s)},
            {"type", comp_json(st.type)},
            {"order", st.order_formula},
            {"order_enumerated",
             st.order_enumerated ? json(*st.order_enumerated) : json(nullptr)}});
        lines << "K=" << K.to_string() << "  rep " << s.to_string() << "  type "
              << st.type.to_string() << "  order " << st.order_formula;
        if (st.order_enumerated) lines << "  certified " << *st.order_enumerated;
        lines << "\n";
    }
    if (json_mode(o)) {
        emit(json{{"seed", o.seed},
                  {"W", comp_json(W)},
                  {"prime", o.prime},
                  {"count", Ks.size()},
                  {"orbits", orbits},
                  {"ok", ok}});
    } else {
        std::cout << "W: " << W.to_string() << "\n"
                  << "prime: " << o.prime << "\n"
                  << "orbits: " << Ks.size() << "\n"
                  << lines.str();
        if (!ok) std::cout << "MISMATCH between certificate and order formula\n";
    }
    return ok ? 0 : 1;
}

int run_mackey(const Options& o) {
    MackeyResult r = mackey_decompose(o.n, o.prime);
    if (json_mode(o)) {
        json orbits = json::array();
        for (const OrbitReport& rep : r.reports)
            orbits.push_back(json{{"K", comp_json(rep.K)},
                                  {"representative", perm_json(rep.representative)},
                                  {"intersection_type", comp_json(rep.intersection_type)},
                                  {"vanishes", rep.vanishes},
                                  {"reason", rep.reason},
                                  {"subset_count", rep.subset_count}});
        emit(json{{"seed", o.seed},
                  {"n", r.n},
                  {"p", r.p},
                  {"orbits", orbits},
                  {"summary", json{{"orbits", r.summary.orbits},
                                   {"surviving", r.summary.surviving},
                                   {"scalar", r.summary.scalar},
                                   {"invertible", r.summary.invertible}}}});
    } else {
        std::cout << "n: " << r.n << "\n"
                  << "p: " << r.p << "\n";
        for (const OrbitReport& rep : r.reports) {
            std::cout << "K=" << rep.K.to_string() << "  type "
                      << rep.intersection_type.to_string() << "  "
                      << (rep.vanishes ? "vanishes" : "survives") << " (" << rep.reason
                      << ")  subsets " << rep.subset_count << "\n";
        }
        std::cout << "summary: orbits " << r.summary.orbits << ", surviving "
                  << r.summary.surviving << ", scalar " << r.summary.scalar << ", invertible "
                  << yesno(r.summary.invertible) << "\n";
    }
    return 0;
}

int run_verdict(const Options& o) {
    IndexSeq I = IndexSeq::parse(o.I_text);
    Verdict v = ypI_verdict(o.n, o.prime, I);
    if (json_mode(o)) {
        emit(json{{"seed", o.seed},
                  {"n", o.n},
                  {"p", o.prime},
                  {"I", json(I.entries)},
                  {"status", to_string(v.status)},
                  {"citation", v.citation},
                  {"scalar", v.scalar ? json(v.scalar->value()) : json(nullptr)}});
    } else {
        std::cout << "n: " << o.n << "\n"
                  << "p: " << o.prime << "\n"
                  << "I: " << I.to_string() << "\n"
                  << "status: " << to_string(v.status) << "\n"
                  << "citation: " << (v.citation.empty() ? "none" : v.citation) << "\n";
        if (v.scalar) std::cout << "scalar: " << v.scalar->value() << "\n";
    }
    return 0;
}

int run_verify_all(const Options& o) {
    std::optional<double> budget = budget_from_env();
    std::vector<CheckResult> results;
    for (const CheckSpec& spec : verification_checks(o.seed))
        results.push_back(run_check(spec, budget));

    size_t passed = 0;
    for (const CheckResult& r : results)
        if (r.passed) ++passed;
    bool ok = passed == results.size();

    if (json_mode(o)) {
        json checks = json::array();
        for (const CheckResult& r : results)
            checks.push_back(json{{"id", r.id},
                                  {"criterion", r.criterion},
                                  {"summary", r.summary},
                                  {"passed", r.passed},
                                  {"detail", r.detail},
                                  {"seconds", r.seconds}});
        emit(json{{"seed", o.seed},
                  {"budget", budget ? json(*budget) : json(nullptr)},
                  {"checks", checks},
                  {"total", results.size()},
                  {"passed", passed},
                  {"failed", results.size() - passed},
                  {"ok", ok}});
    } else {
        std::cout << "seed: " << o.seed << "\n";
        if (budget)
            std::cout << "budget: " << *budget << "s per check\n";
        else
            std::cout << "budget: none\n";
        for (const CheckResult& r : results) {
            std::cout << (r.passed ? "PASS" : "FAIL") << "  ";
            if (r.criterion > 0)
                std::cout << "[criterion " << r.criterion << "] ";
            else
                std::cout << "[extra] ";
            std::cout << r.id << ": " << r.summary << ": " << r.detail << " ("
                      << std::fixed << std::setprecision(2) << r.seconds << "s)\n";
        }
        std::cout << results.size() << " checks, " << passed << " passed, "
                  << results.size() - passed << " failed\n";
    }
    return ok ? 0 : 1;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", o.seed, "seed recorded in reports and used by seeded checks");
}

void add_prime(CLI::App* sub, Options& o, const std::string& help) {
    sub->add_option("--prime,-p,--p", o.prime, help);
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"exact workbench for mod-p operations, invariants, and coset bookkeeping"};
    app.require_subcommand(1);

    CLI::App* apply_cmd = app.add_subcommand("apply", "apply an operation word to an expression");
    add_prime(apply_cmd, o, "odd prime of the coefficient field");
    add_common(apply_cmd, o);
    apply_cmd->add_option("word", o.word, "operation word, e.g. \"B P3 P1\"")->required();
    apply_cmd->add_option("expr", o.expr, "expression in a, b, xi, eta")->required();

    CLI::App* normalize_cmd =
        app.add_subcommand("normalize", "rewrite an operation word in the admissible basis");
    add_prime(normalize_cmd, o, "odd prime of the coefficient field");
    add_common(normalize_cmd, o);
    normalize_cmd->add_option("word", o.word, "operation word, e.g. \"P1 P1\"")->required();

    CLI::App* rk_cmd =
        app.add_subcommand("rk", "compute r_k through both pipelines and compare");
    add_prime(rk_cmd, o, "odd prime of the coefficient field");
    add_common(rk_cmd, o);
    rk_cmd->add_option("--k,-k", o.k, "torsion index")->required();

    CLI::App* verify_y_cmd =
        app.add_subcommand("verify-y", "check that the composite word lands on r_k");
    add_prime(verify_y_cmd, o, "odd prime of the coefficient field");
    add_common(verify_y_cmd, o);
    verify_y_cmd->add_option("--k,-k", o.k, "torsion index")->required();

    CLI::App* kz3_cmd = app.add_subcommand("kz3", "list the formal basis up to a degree cap");
    add_prime(kz3_cmd, o, "odd prime of the coefficient field");
    add_common(kz3_cmd, o);
    kz3_cmd->add_option("--maxdeg", o.maxdeg, "inclusive degree cap, default 2p^2+4")
        ->check(CLI::NonNegativeNumber);

    CLI::App* inv_cmd =
        app.add_subcommand("invariants", "invariance of q and r plus fixed-space dimensions");
    add_prime(inv_cmd, o, "odd prime of the coefficient field");
    add_common(inv_cmd, o);
    inv_cmd->add_option("--expr", o.expr, "check one expression in xi, eta instead");
    inv_cmd->add_option("--mode", o.mode, "group elements probed")
        ->check(CLI::IsMember({"auto", "generators", "full"}));
    inv_cmd->add_option("--maxdeg", o.maxdeg, "dimension-table cap override")
        ->check(CLI::PositiveNumber);

    CLI::App* cosets_cmd =
        app.add_subcommand("cosets", "double cosets with normalized reps and stabilizers");
    add_prime(cosets_cmd, o, "subset size p");
    add_common(cosets_cmd, o);
    cosets_cmd->add_option("--W,-W", o.W_text, "composition, e.g. 3,3")->required();
    cosets_cmd->add_flag("--certify", o.certify, "enumerate stabilizer orders exhaustively");

    CLI::App* mackey_cmd =
        app.add_subcommand("mackey", "orbit decomposition for W = (p,...,p)");
    add_prime(mackey_cmd, o, "odd prime dividing n");
    add_common(mackey_cmd, o);
    mackey_cmd->add_option("--n,-n", o.n, "number of points")->required();

    CLI::App* verdict_cmd =
        app.add_subcommand("verdict", "differential verdict for the class y_{p,I} at PGL_n");
    add_prime(verdict_cmd, o, "prime of the torsion class");
    add_common(verdict_cmd, o);
    verdict_cmd->add_option("--n,-n", o.n, "rank parameter")->required();
    verdict_cmd->add_option("--I,-I", o.I_text, "index sequence, e.g. 0,1")->required();

    CLI::App* verify_all_cmd =
        app.add_subcommand("verify-all", "run the full check battery");
    add_common(verify_all_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    // flag consistency checks that CLI11 cannot express
    if (kz3_cmd->parsed() && kz3_cmd->count("--maxdeg") > 0) o.maxdeg_set = true;
    if (inv_cmd->parsed() && inv_cmd->count("--maxdeg") > 0) o.maxdeg_set = true;

    try {
        if (apply_cmd->parsed()) return run_apply(o);
        if (normalize_cmd->parsed()) return run_normalize(o);
        if (rk_cmd->parsed()) return run_rk(o);
        if (verify_y_cmd->parsed()) return run_verify_y(o);
        if (kz3_cmd->parsed()) return run_kz3(o);
        if (inv_cmd->parsed()) return run_invariants(o);
        if (cosets_cmd->parsed()) return run_cosets(o);
        if (mackey_cmd->parsed()) return run_mackey(o);
        if (verdict_cmd->parsed()) return run_verdict(o);
        if (verify_all_cmd->parsed()) return run_verify_all(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}
