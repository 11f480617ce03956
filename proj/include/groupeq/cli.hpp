#pragma once

#include "groupeq/eqlang.hpp"
#include "groupeq/errors.hpp"
#include "groupeq/fingroup.hpp"
#include "groupeq/geomdim.hpp"
#include "groupeq/simclass.hpp"
#include "groupeq/solvecount.hpp"
#include "groupeq/verify.hpp"
#include "groupeq/zlinalg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace groupeq {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

namespace cli_detail {

// Exit codes: 0 all applicable verdicts pass, 1 a verdict or condition
// failed, 2 usage, parse, or budget problems.
constexpr int kOk = 0;
constexpr int kVerdictFailure = 1;
constexpr int kUsage = 2;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

// Both modes end with the same key=value block; human mode puts prose first.
class Report {
  public:
    explicit Report(bool machine) : machine_(machine) {}

    void prose(const std::string& line) {
        if (!machine_) body_ += line + "\n";
    }
    void key(const std::string& k, const std::string& v) { keys_ += k + "=" + v + "\n"; }
    void key(const std::string& k, const char* v) { key(k, std::string(v)); }
    void key(const std::string& k, bool v) { key(k, bool_str(v)); }
    void key(const std::string& k, unsigned long long v) { key(k, std::to_string(v)); }
    void key(const std::string& k, int v) { key(k, std::to_string(v)); }

    std::string render() const {
        if (machine_ || body_.empty()) return keys_;
        if (keys_.empty()) return body_;
        return body_ + "\n" + keys_;
    }

  private:
    bool machine_;
    std::string body_;
    std::string keys_;
};

inline void verdict_report(Report& rep, const std::string& prefix, const DivisibilityVerdict& v,
                           unsigned long long count, bool& any_failed) {
    rep.key(prefix + "_applicable", v.applicable);
    if (v.applicable) {
        rep.key(prefix + "_divisor", v.divisor);
        rep.key(prefix + "_divides", v.divides);
        rep.prose(v.theorem + ": applicable (" + v.reason + "); " + std::to_string(v.divisor) +
                  (v.divides ? " divides " : " DOES NOT divide ") + std::to_string(count));
        if (!v.divides) any_failed = true;
    } else {
        rep.prose(v.theorem + ": not applicable (" + v.reason + ")");
    }
}

inline std::string hom_label(const FiniteGroup& g, const EquationSystem& sys, const Hom& h,
                             const std::string& pair_sep, const std::string& eq) {
    std::vector<std::string> parts;
    for (std::size_t j = 0; j < h.size(); ++j) parts.push_back(sys.unknowns[j] + eq + g.label(h[j]));
    return join(parts, pair_sep);
}

inline int run_analyze(Report& rep, const std::string& path) {
    GeqFile file = parse_geq(read_file(path));
    const EquationSystem& sys = file.system;
    rep.prose("canonical form:");
    rep.prose(print_geq(file));
    IntMat em = exponent_matrix(sys);
    SNFResult snf = smith_normal_form(em);
    auto diag = diagonal(snf.d);
    auto kernel = kernel_basis(em);
    rep.prose("exponent matrix:");
    rep.prose(print_matrix(em));
    std::vector<std::string> diag_s, kernel_s;
    for (const Int& x : diag) diag_s.push_back(to_string(x));
    for (const auto& col : kernel) {
        std::vector<std::string> entry;
        for (const Int& x : col) entry.push_back(to_string(x));
        kernel_s.push_back(join(entry, ","));
    }
    rep.key("unknowns", join(sys.unknowns, ","));
    rep.key("atoms", join(sys.coefficient_atoms, ","));
    rep.key("equations", static_cast<int>(sys.equations.size()));
    rep.key("coefficient_free", sys.coefficient_atoms.empty());
    rep.key("rank", static_cast<int>(diag.size()));
    rep.key("snf_diagonal", join(diag_s, ","));
    rep.key("kernel_rank", static_cast<int>(kernel.size()));
    rep.key("kernel_basis", join(kernel_s, ";"));
    if (kernel.empty()) {
        rep.prose("no indexing exists: the exponent matrix has full column rank");
        rep.key("indexing", "none");
    } else {
        Indexing idx = make_indexing(em);
        std::vector<Int> bz = bezout(idx.degrees);
        std::vector<Letter> raw;
        for (std::size_t j = 0; j < bz.size(); ++j)
            if (bz[j] != 0) raw.push_back({sys.unknowns[j], LetterKind::unknown, bz[j]});
        Word t = free_reduce(raw);
        std::vector<std::string> deg_s;
        for (const Int& d : idx.degrees) deg_s.push_back(to_string(d));
        rep.prose("indexing degrees: " + join(deg_s, ", "));
        rep.prose("degree-one word: " + print_word(t));
        rep.key("indexing", join(deg_s, ","));
        rep.key("degree_one_word", print_word(t));
    }
    return kOk;
}

inline int run_count(Report& rep, const std::string& path, const std::string& group_spec,
                     unsigned long long budget, bool list, const BuildOptions& gopts) {
    GeqFile file = parse_geq(read_file(path));
    FiniteGroup g = build_group(group_spec, gopts);
    CoefficientBinding bind = bind_coefficients(file, g);
    SolveOptions opts;
    opts.eval_budget = budget;
    CountReport r = count_and_verdicts(file.system, g, bind, opts);
    rep.prose(g.name() + " has " + std::to_string(g.order()) + " elements; " +
              std::to_string(r.set.count) + " of " + std::to_string(r.set.assignments_scanned) +
              " assignments solve the system.");
    rep.key("group", g.name());
    rep.key("group_order", g.order());
    rep.key("count", r.set.count);
    rep.key("assignments", r.set.assignments_scanned);
    rep.key("rank", r.rank);
    rep.key("coefficient_free", r.coefficient_free);
    bool any_failed = false;
    verdict_report(rep, "solomon", r.verdicts[0], r.set.count, any_failed);
    verdict_report(rep, "grv", r.verdicts[1], r.set.count, any_failed);
    verdict_report(rep, "km", r.verdicts[2], r.set.count, any_failed);
    if (list) {
        int i = 0;
        for (const auto& sol : r.set.solutions) {
            rep.prose("  " + hom_label(g, file.system, sol, ", ", " = "));
            rep.key("solution_" + std::to_string(++i), hom_label(g, file.system, sol, "|", "="));
        }
    }
    return any_failed ? kVerdictFailure : kOk;
}

inline int run_partition(Report& rep, const std::string& path, const std::string& group_spec,
                         const std::string& subgroup_choice, unsigned long long budget,
                         const BuildOptions& gopts) {
    GeqFile file = parse_geq(read_file(path));
    FiniteGroup g = build_group(group_spec, gopts);
    CoefficientBinding bind = bind_coefficients(file, g);
    Subgroup h;
    if (subgroup_choice == "centralizer")
        h = centralizer(g, bound_atom_values(file.system, bind));
    else if (subgroup_choice == "full")
        h = full_subgroup(g);
    else if (subgroup_choice == "commutator")
        h = commutator_subgroup(g);
    else
        throw Error("unknown subgroup choice '" + subgroup_choice + "'");
    SolveOptions opts;
    opts.eval_budget = budget;
    SolutionSet sols = enumerate_solutions(file.system, g, bind, opts);
    IndexedHomContext ctx = make_context(file.system, g, bind, h);
    rep.key("group", g.name());
    rep.key("group_order", g.order());
    rep.key("subgroup", subgroup_choice);
    rep.key("subgroup_order", h.order());
    rep.key("solutions", sols.count);
    ConditionReport cond = check_conditions(ctx, sols.solutions);
    rep.key("condition_conjugation", cond.closed_under_conjugation);
    rep.key("condition_twists", cond.closed_under_twists);
    if (!cond.ok()) {
        if (cond.conjugation_witness) {
            const auto& [phi, hh] = *cond.conjugation_witness;
            rep.prose("conjugation by " + g.label(hh) + " leaves the solution set: " +
                      hom_label(g, file.system, phi, ", ", " = "));
        }
        if (cond.twist_witness) {
            const auto& [phi, hh] = *cond.twist_witness;
            rep.prose("twist by " + g.label(hh) + " leaves the solution set: " +
                      hom_label(g, file.system, phi, ", ", " = "));
        }
        rep.prose("the subgroup does not satisfy the theorem's conditions; no partition computed");
        return kVerdictFailure;
    }
    SimilarityPartition part = partition_classes(ctx, sols.solutions);
    rep.prose(std::to_string(sols.count) + " solutions fall into " +
              std::to_string(part.classes.size()) + " similarity classes under |H| = " +
              std::to_string(h.order()) + ".");
    std::vector<std::string> sizes, tails, cores;
    bool tails_consistent = true;
    int ci = 0;
    for (const auto& cls : part.classes) {
        sizes.push_back(std::to_string(cls.members.size()));
        tails.push_back(std::to_string(cls.tail_count));
        cores.push_back(std::to_string(cls.core_order));
        if (cls.tail_count * cls.core_order != h.order()) tails_consistent = false;
        rep.prose("class " + std::to_string(++ci) + ": size " + std::to_string(cls.members.size()) +
                  ", tails " + std::to_string(cls.tail_count) + ", core order " +
                  std::to_string(cls.core_order) + "; representative " +
                  hom_label(g, file.system, cls.members.front(), ", ", " = "));
    }
    rep.key("classes", static_cast<int>(part.classes.size()));
    rep.key("class_sizes", join(sizes, ","));
    rep.key("tail_counts", join(tails, ","));
    rep.key("core_orders", join(cores, ","));
    rep.key("tails_consistent", tails_consistent);
    return tails_consistent ? kOk : kVerdictFailure;
}

inline int run_epi(Report& rep, const std::string& group_spec, int rank_r,
                   unsigned long long budget, const BuildOptions& gopts) {
    FiniteGroup g = build_group(group_spec, gopts);
    SolveOptions opts;
    opts.eval_budget = budget;
    EpiResult r = epimorphism_count(g, rank_r, opts);
    rep.prose(std::to_string(r.count) + " of " + std::to_string(r.tuples_scanned) + " " +
              std::to_string(rank_r) + "-tuples generate " + g.name() + ".");
    rep.key("group", g.name());
    rep.key("group_order", g.order());
    rep.key("rank", rank_r);
    rep.key("count", r.count);
    rep.key("tuples", r.tuples_scanned);
    bool any_failed = false;
    verdict_report(rep, "km17_epi", r.verdict, r.count, any_failed);
    return any_failed ? kVerdictFailure : kOk;
}

inline int run_dim(Report& rep, const std::string& path, const std::string& model_spec,
                   const std::string& encoding_choice, unsigned long long budget, bool crosscheck) {
    GeqFile file = parse_geq(read_file(path));
    VarietyModel model = parse_model(model_spec);
    MatrixBinding bind = bind_matrix_coefficients(file, model);
    DimOptions opts;
    if (encoding_choice == "direct")
        opts.encoding = Encoding::direct;
    else if (encoding_choice == "slp")
        opts.encoding = Encoding::slp;
    opts.crosscheck = crosscheck;
    opts.buch.reduction_budget = budget;
    TheoremVerdicts v = theorem_verdicts(file.system, model, bind, opts);
    const DimResult& d = v.dim;
    rep.key("model", model.spec);
    rep.key("group_dim", model.group_dim());
    rep.key("encoding", d.encoding_used == Encoding::direct ? "direct" : "slp");
    rep.key("nvars", static_cast<int>(d.nvars));
    rep.key("reductions", d.reductions);
    rep.key("dimension", d.dimension ? std::to_string(*d.dimension) : std::string("empty"));
    std::string crosscheck_word = !d.crosscheck_ran ? "skipped" : d.crosscheck_agrees ? "agree" : "disagree";
    rep.key("crosscheck", crosscheck_word);
    if (d.crosscheck_ran)
        rep.key("dimension_modp", d.dimension_modp ? std::to_string(*d.dimension_modp) : std::string("empty"));
    rep.prose("model " + model.spec + " (group dimension " + std::to_string(model.group_dim()) +
              "); " + (d.encoding_used == Encoding::direct ? "direct" : "slp") + " encoding in " +
              std::to_string(d.nvars) + " variables, " + std::to_string(d.reductions) +
              " reductions.");
    rep.prose("solution variety dimension: " + (d.dimension ? std::to_string(*d.dimension) : "empty") +
              (d.crosscheck_ran ? (d.crosscheck_agrees ? " (F32003 pass agrees)" : "") : ""));
    if (d.crosscheck_ran && !d.crosscheck_agrees)
        rep.prose("warning: the F32003 cross-check disagrees (" +
                  (d.dimension_modp ? std::to_string(*d.dimension_modp) : std::string("empty")) +
                  " mod p); treat the result with suspicion");
    rep.key("rank", v.rank);
    rep.key("equations", v.equations);
    rep.key("unknowns", v.unknowns);
    rep.key("coefficient_free", v.coefficient_free);
    rep.key("thm0_bound", v.thm0_bound);
    rep.key("thm0_passed", v.thm0_passed);
    rep.prose("Theorem 0: dimension >= (m - n) dim G = " + std::to_string(v.thm0_bound) + ": " +
              (v.thm0_passed ? "passed" : "FAILED"));
    rep.key("thm1_applicable", v.thm1_applicable);
    if (v.thm1_applicable) {
        rep.key("thm1_bound", v.thm1_bound);
        rep.key("thm1_passed", v.thm1_passed);
        rep.prose("Theorem 1: dimension >= dim C(coefficients) = " + std::to_string(v.thm1_bound) +
                  ": " + (v.thm1_passed ? "passed" : "FAILED"));
    } else {
        rep.prose("Theorem 1: not applicable (rank is not below the number of unknowns)");
    }
    rep.key("corollary_applicable", v.corollary_applicable);
    if (v.corollary_applicable) {
        rep.key("corollary_bound", v.corollary_bound);
        rep.key("corollary_passed", v.corollary_passed);
        rep.prose("Corollary: dimension >= dim G = " + std::to_string(v.corollary_bound) + ": " +
                  (v.corollary_passed ? "passed" : "FAILED"));
    }
    rep.key("all_passed", v.all_passed);
    bool crosscheck_failed = d.crosscheck_ran && !d.crosscheck_agrees;
    return (v.all_passed && !crosscheck_failed) ? kOk : kVerdictFailure;
}

inline int run_verify(Report& rep, unsigned seed) {
    auto results = verify::run_all(seed);
    for (const auto& r : results) {
        rep.prose(verify::format_line(r));
        rep.key("criterion_" + std::to_string(r.index), r.passed ? "pass" : "fail");
    }
    bool ok = verify::all_passed(results);
    rep.prose(ok ? "all criteria passed" : "SOME CRITERIA FAILED");
    rep.key("all", ok ? "pass" : "fail");
    return ok ? kOk : kVerdictFailure;
}

}  // namespace cli_detail

inline CliResult run_cli(const std::vector<std::string>& args) {
    using namespace cli_detail;
    CLI::App app{"equation systems over groups: counting, similarity classes, dimension bounds"};
    app.name("groupeq");
    app.require_subcommand(1);

    unsigned seed = 0;
    app.add_option("--seed", seed, "seed for randomized validation and the verify suites");

    bool machine = false;
    std::string file_path, group_spec, subgroup_choice = "centralizer", model_spec,
                encoding_choice = "auto";
    unsigned long long eval_budget = SolveOptions{}.eval_budget;
    unsigned long long dim_budget = BuchbergerOptions{}.reduction_budget;
    bool list_solutions = false, no_crosscheck = false;
    int epi_rank = 0;

    auto* analyze = app.add_subcommand("analyze", "parse a system and report its integer structure");
    analyze->add_option("file", file_path, "input .geq file")->required();

    auto* count = app.add_subcommand("count", "enumerate solutions in a finite group");
    count->add_option("file", file_path, "input .geq file")->required();
    count->add_option("--group", group_spec, "group spec, e.g. S4, D6, C12, perm{...}, product(S3,C2), table{file}")
        ->required();
    count->add_option("--budget", eval_budget, "word evaluation budget");
    count->add_flag("--list", list_solutions, "list the solutions");

    auto* partition = app.add_subcommand("partition", "split the solution set into similarity classes");
    partition->add_option("file", file_path, "input .geq file")->required();
    partition->add_option("--group", group_spec, "group spec")->required();
    partition->add_option("--subgroup", subgroup_choice, "subgroup H to act with")
        ->check(CLI::IsMember({"centralizer", "full", "commutator"}));
    partition->add_option("--budget", eval_budget, "word evaluation budget");

    auto* epi = app.add_subcommand("epi", "count epimorphisms from a free group onto a finite group");
    epi->add_option("--group", group_spec, "group spec")->required();
    epi->add_option("--rank", epi_rank, "rank of the free group")->required();
    epi->add_option("--budget", eval_budget, "tuple budget");

    auto* dim = app.add_subcommand("dim", "dimension of the solution variety in an algebraic group");
    dim->add_option("file", file_path, "input .geq file")->required();
    dim->add_option("--model", model_spec, "SL2, GL2, torus(k), or product(...)")->required();
    dim->add_option("--encoding", encoding_choice, "polynomial encoding")
        ->check(CLI::IsMember({"auto", "direct", "slp"}));
    dim->add_option("--budget", dim_budget, "Groebner reduction budget");
    dim->add_flag("--no-crosscheck", no_crosscheck, "skip the F32003 verification pass");

    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance criteria");

    for (auto* sub : {analyze, count, partition, epi, dim, verify_cmd}) {
        sub->add_flag("--machine", machine, "key=value output only");
        sub->fallthrough();
    }

    std::vector<const char*> argv;
    argv.push_back("groupeq");
    for (const std::string& a : args) argv.push_back(a.c_str());

    CliResult res;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        int code = app.exit(e, out, err);
        res.out = out.str();
        res.err = err.str();
        res.exit_code = code == 0 ? kOk : kUsage;
        return res;
    }

    Report rep(machine);
    try {
        BuildOptions gopts;
        gopts.seed = seed;
        if (app.got_subcommand(analyze))
            res.exit_code = run_analyze(rep, file_path);
        else if (app.got_subcommand(count))
            res.exit_code = run_count(rep, file_path, group_spec, eval_budget, list_solutions, gopts);
        else if (app.got_subcommand(partition))
            res.exit_code = run_partition(rep, file_path, group_spec, subgroup_choice, eval_budget, gopts);
        else if (app.got_subcommand(epi))
            res.exit_code = run_epi(rep, group_spec, epi_rank, eval_budget, gopts);
        else if (app.got_subcommand(dim))
            res.exit_code = run_dim(rep, file_path, model_spec, encoding_choice, dim_budget, !no_crosscheck);
        else
            res.exit_code = run_verify(rep, seed);
        res.out = rep.render();
    } catch (const ParseError& e) {
        res.out = rep.render();
        res.err = std::string("parse error: ") + e.what() + "\n";
        res.exit_code = kUsage;
    } catch (const BudgetError& e) {
        res.out = rep.render();
        res.err = std::string("budget error: ") + e.what() + "\n";
        res.exit_code = kUsage;
    } catch (const Error& e) {
        res.out = rep.render();
        res.err = std::string("error: ") + e.what() + "\n";
        res.exit_code = kUsage;
    }
    return res;
}

inline int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    CliResult r = run_cli(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}

}  // namespace groupeq
