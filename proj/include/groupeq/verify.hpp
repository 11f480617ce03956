#pragma once

#include "groupeq/eqlang.hpp"
#include "groupeq/errors.hpp"
#include "groupeq/fingroup.hpp"
#include "groupeq/geomdim.hpp"
#include "groupeq/poly.hpp"
#include "groupeq/simclass.hpp"
#include "groupeq/solvecount.hpp"
#include "groupeq/word.hpp"
#include "groupeq/zlinalg.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace groupeq::verify {

// Independent oracles.  These deliberately avoid the code paths they check:
// rank and determinants come from rational Gaussian elimination rather than
// the Smith normal form, and epimorphism counts come from Moebius inversion
// over the subgroup lattice rather than tuple enumeration.
namespace oracle {

inline std::vector<std::vector<Rat>> to_rat(const IntMat& a) {
    std::vector<std::vector<Rat>> m(a.rows, std::vector<Rat>(a.cols));
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) m[i][j] = Rat(a(i, j));
    return m;
}

inline int rat_rank(const IntMat& a) {
    auto m = to_rat(a);
    int rank = 0;
    for (int col = 0; col < a.cols && rank < a.rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < a.rows; ++i)
            if (m[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int i = rank + 1; i < a.rows; ++i) {
            if (m[i][col] == 0) continue;
            Rat f = m[i][col] / m[rank][col];
            for (int j = col; j < a.cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline Rat rat_det(const IntMat& a) {
    if (a.rows != a.cols) throw Error("determinant of non-square matrix");
    auto m = to_rat(a);
    Rat det = 1;
    for (int col = 0; col < a.cols; ++col) {
        int pivot = -1;
        for (int i = col; i < a.rows; ++i)
            if (m[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) return Rat(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int i = col + 1; i < a.rows; ++i) {
            if (m[i][col] == 0) continue;
            Rat f = m[i][col] / m[col][col];
            for (int j = col; j < a.cols; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return det;
}

inline std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> out;
    std::vector<Subgroup> queue{closure(g, {})};
    seen.insert(queue[0].members);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Subgroup s = queue[head];
        out.push_back(s);
        for (int x = 0; x < g.order(); ++x) {
            if (s.contains(x)) continue;
            std::vector<int> gens = s.members;
            gens.push_back(x);
            Subgroup t = closure(g, gens);
            if (seen.insert(t.members).second) queue.push_back(t);
        }
    }
    return out;
}

// Epi(F_r, G) = sum over subgroups H of mu(H, G) |H|^r.
inline long long moebius_epi(const FiniteGroup& g, int r) {
    auto subs = all_subgroups(g);
    std::vector<int> order_desc(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) order_desc[i] = static_cast<int>(i);
    std::sort(order_desc.begin(), order_desc.end(),
              [&](int a, int b) { return subs[a].order() > subs[b].order(); });
    auto contains = [&](const Subgroup& big, const Subgroup& small) {
        for (int x : small.members)
            if (!big.contains(x)) return false;
        return true;
    };
    std::vector<long long> mu(subs.size(), 0);
    for (int idx : order_desc) {
        if (subs[idx].order() == g.order()) {
            mu[idx] = 1;
            continue;
        }
        long long s = 0;
        for (std::size_t k = 0; k < subs.size(); ++k)
            if (subs[k].order() > subs[idx].order() && contains(subs[k], subs[idx])) s += mu[k];
        mu[idx] = -s;
    }
    long long total = 0;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        long long p = 1;
        for (int k = 0; k < r; ++k) p *= subs[i].order();
        total += mu[i] * p;
    }
    return total;
}

}  // namespace oracle

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

inline std::string format_line(const CriterionResult& r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", r.seconds);
    return "criterion " + std::to_string(r.index) + ": " + (r.passed ? "PASS" : "FAIL") + " - " + r.name +
           " (" + r.detail + ") [" + buf + "s]";
}

inline bool all_passed(const std::vector<CriterionResult>& rs) {
    for (const auto& r : rs)
        if (!r.passed) return false;
    return true;
}

namespace detail {

struct Check {
    bool ok = true;
    std::string log;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!log.empty()) log += "; ";
            log += "FAILED: " + what;
        }
    }
    void note(const std::string& what) {
        if (!log.empty()) log += "; ";
        log += what;
    }
};

inline constexpr const char* kCubeGeq = "coefficients:\n  a = (1 2 3)\nequations:\n  x^3 y^3 = @a\n";
inline constexpr const char* kSquaresGeq = "x^2 y^2 z^2 = 1\n";
inline constexpr const char* kBigPowersGeq = "x^100 y^100 [x, y]^777 = 1\n(x y)^2020 = 1\n";
inline constexpr const char* kCommuteGeq = "[x, y] = 1\n";
inline constexpr const char* kInvolutionGeq = "x^2 = 1\n";
inline constexpr const char* kTwoSquaresGeq = "x^2 y^2 = 1\n";

}  // namespace detail

// The acceptance suite.  Every numeric expectation and time limit is pinned
// here; run_all never throws.
inline std::vector<CriterionResult> run_all(unsigned seed = 0, std::ostream* progress = nullptr) {
    using clock = std::chrono::steady_clock;
    std::vector<CriterionResult> results;

    auto crit = [&](int idx, const std::string& name, double limit_s,
                    const std::function<void(detail::Check&)>& body) {
        CriterionResult r;
        r.index = idx;
        r.name = name;
        auto t0 = clock::now();
        detail::Check ck;
        try {
            body(ck);
        } catch (const std::exception& e) {
            ck.ok = false;
            ck.note(std::string("exception: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        r.passed = ck.ok;
        r.detail = ck.log;
        if (limit_s > 0 && r.seconds > limit_s) {
            r.passed = false;
            r.detail += (r.detail.empty() ? "" : "; ") + std::string("time limit of ") +
                        std::to_string(static_cast<int>(limit_s)) + "s exceeded";
        }
        if (progress) *progress << format_line(r) << std::endl;
        results.push_back(std::move(r));
    };

    // State shared between criteria 4 and 5.
    std::vector<SimilarityPartition> partitions;
    std::vector<int> partition_subgroup_orders;

    crit(1, "x^3 y^3 = (1 2 3) in S3", 1.0, [&](detail::Check& ck) {
        GeqFile file = parse_geq(detail::kCubeGeq);
        FiniteGroup s3 = symmetric_group(3);
        CoefficientBinding bind = bind_coefficients(file, s3);
        CountReport rep = count_and_verdicts(file.system, s3, bind);
        ck.expect(rep.set.count == 3, "count is " + std::to_string(rep.set.count) + ", expected 3");
        const DivisibilityVerdict& km = rep.verdicts[2];
        ck.expect(km.theorem == "KM", "third verdict is KM");
        ck.expect(km.applicable, "KM applies");
        ck.expect(km.divisor == 3, "KM divisor is " + std::to_string(km.divisor) + ", expected 3");
        ck.expect(km.divides, "KM divides");
        Hom known{*s3.find_perm(parse_cycles("(1 2)")), *s3.find_perm(parse_cycles("(1 3)"))};
        bool found = false;
        for (const auto& sol : rep.set.solutions) found = found || sol == known;
        ck.expect(found, "hand solution x=(1 2), y=(1 3) is present");
        ck.note("count=3, km divisor=3");
    });

    crit(2, "x^2 y^2 z^2 = 1 in S3", 1.0, [&](detail::Check& ck) {
        EquationSystem sys = parse_system(detail::kSquaresGeq);
        FiniteGroup s3 = symmetric_group(3);
        CountReport rep = count_and_verdicts(sys, s3, {});
        ck.expect(rep.set.count == 90, "count is " + std::to_string(rep.set.count) + ", expected 90");
        const DivisibilityVerdict& grv = rep.verdicts[1];
        ck.expect(grv.theorem == "GRV" && grv.applicable, "GRV applies");
        ck.expect(grv.divisor == 6 && grv.divides, "GRV divisor 6 divides");
        ck.note("count=90, grv divisor=6");
    });

    crit(3, "x^100 y^100 [x,y]^777 = 1, (x y)^2020 = 1", 30.0, [&](detail::Check& ck) {
        EquationSystem sys = parse_system(detail::kBigPowersGeq);
        IntMat expect(2, 2);
        expect(0, 0) = 100;
        expect(0, 1) = 100;
        expect(1, 0) = 2020;
        expect(1, 1) = 2020;
        ck.expect(exponent_matrix(sys) == expect, "exponent matrix is ((100,100),(2020,2020))");
        ck.expect(rank(exponent_matrix(sys)) == 1, "rank 1");
        std::string counts;
        for (const std::string& spec : {"S3", "S4", "D4", "C6"}) {
            FiniteGroup g = build_group(spec);
            CountReport rep = count_and_verdicts(sys, g, {});
            ck.expect(rep.set.count % static_cast<unsigned long long>(g.order()) == 0,
                      spec + " count " + std::to_string(rep.set.count) + " divisible by " +
                          std::to_string(g.order()));
            counts += (counts.empty() ? "" : ", ") + spec + "=" + std::to_string(rep.set.count);
        }
        ck.note(counts);
    });

    crit(4, "similarity partitions: conditions hold, classes have size |H|", 60.0, [&](detail::Check& ck) {
        struct Setup {
            const char* text;
            const char* label;
        };
        const Setup setups[] = {{detail::kCubeGeq, "cube/S3"},
                                {detail::kSquaresGeq, "squares/S3"},
                                {detail::kBigPowersGeq, "big_powers/S3"}};
        FiniteGroup s3 = symmetric_group(3);
        std::string note;
        for (const Setup& setup : setups) {
            GeqFile file = parse_geq(setup.text);
            CoefficientBinding bind = bind_coefficients(file, s3);
            Subgroup h = centralizer(s3, bound_atom_values(file.system, bind));
            SolutionSet sols = enumerate_solutions(file.system, s3, bind);
            IndexedHomContext ctx = make_context(file.system, s3, bind, h);
            ConditionReport cond = check_conditions(ctx, sols.solutions);
            ck.expect(cond.closed_under_conjugation, setup.label + std::string(": condition I"));
            ck.expect(cond.closed_under_twists, setup.label + std::string(": condition II"));
            if (!cond.ok()) continue;
            SimilarityPartition part = partition_classes(ctx, sols.solutions);
            for (const auto& cls : part.classes)
                ck.expect(static_cast<int>(cls.members.size()) == h.order(),
                          setup.label + std::string(": class size ") +
                              std::to_string(cls.members.size()) + " equals |H|=" +
                              std::to_string(h.order()));
            if (std::string(setup.label) == "squares/S3")
                ck.expect(part.classes.size() == 15, "squares/S3: 15 classes, got " +
                                                         std::to_string(part.classes.size()));
            partitions.push_back(part);
            partition_subgroup_orders.push_back(h.order());
            note += (note.empty() ? "" : ", ") + std::string(setup.label) + ":" +
                    std::to_string(part.classes.size()) + " classes";
        }
        ck.note(note);
    });

    crit(5, "per class, tails times core order equals |H|", 10.0, [&](detail::Check& ck) {
        ck.expect(!partitions.empty(), "criterion 4 produced partitions");
        int checked = 0;
        for (std::size_t i = 0; i < partitions.size(); ++i)
            for (const auto& cls : partitions[i].classes) {
                ck.expect(cls.tail_count * cls.core_order == partition_subgroup_orders[i],
                          "class with " + std::to_string(cls.tail_count) + " tails and core order " +
                              std::to_string(cls.core_order) + " multiplies to |H|=" +
                              std::to_string(partition_subgroup_orders[i]));
                ++checked;
            }
        ck.note(std::to_string(checked) + " classes checked");
    });

    crit(6, "epimorphism counts match Moebius inversion", 30.0, [&](detail::Check& ck) {
        FiniteGroup s3 = symmetric_group(3);
        EpiResult e3 = epimorphism_count(s3, 2);
        ck.expect(e3.count == 18, "Epi(F2,S3) is " + std::to_string(e3.count) + ", expected 18");
        ck.expect(oracle::moebius_epi(s3, 2) == 18, "Moebius oracle gives 18 for S3");
        ck.expect(e3.verdict.divisor == 3 && e3.verdict.divides, "S3 divisor 3 divides");

        FiniteGroup s4 = symmetric_group(4);
        EpiResult e4 = epimorphism_count(s4, 2);
        ck.expect(static_cast<long long>(e4.count) == oracle::moebius_epi(s4, 2),
                  "Epi(F2,S4) matches the Moebius oracle");
        ck.expect(e4.verdict.divisor == 12 && e4.verdict.divides,
                  "S4 divisor 12 divides count " + std::to_string(e4.count));

        FiniteGroup klein = build_group("product(C2,C2)");
        EpiResult ek = epimorphism_count(klein, 2);
        ck.expect(ek.count == 6, "Epi(F2,C2xC2) is " + std::to_string(ek.count) + ", expected 6");
        ck.expect(oracle::moebius_epi(klein, 2) == 6, "Moebius oracle gives 6 for C2xC2");
        ck.expect(ek.verdict.divisor == 1 && ek.verdict.divides, "C2xC2 divisor 1");
        ck.note("S3=18, S4=" + std::to_string(e4.count) + ", C2xC2=6");
    });

    VarietyModel sl2 = parse_model("SL2");

    crit(7, "[x,y] = 1 over SL2 has dimension 4, strictly above the bound 3", 120.0,
         [&](detail::Check& ck) {
             EquationSystem sys = parse_system(detail::kCommuteGeq);
             TheoremVerdicts v = theorem_verdicts(sys, sl2, {});
             ck.expect(v.dim.dimension.has_value() && *v.dim.dimension == 4,
                       "dimension is 4");
             ck.expect(v.thm1_applicable && v.thm1_bound == 3, "Theorem 1 bound is 3");
             ck.expect(v.dim.dimension.has_value() && *v.dim.dimension > v.thm1_bound,
                       "bound is strict");
             ck.expect(v.dim.crosscheck_ran && v.dim.crosscheck_agrees, "F32003 cross-check agrees");
             ck.note("dim=4, thm1 bound=3, crosscheck ok");
         });

    crit(8, "x^2 = 1 has dimension 0; x^2 y^2 = 1 has dimension 4 above the bound 3", 240.0,
         [&](detail::Check& ck) {
             auto t0 = clock::now();
             EquationSystem inv = parse_system(detail::kInvolutionGeq);
             TheoremVerdicts v1 = theorem_verdicts(inv, sl2, {});
             double s1 = std::chrono::duration<double>(clock::now() - t0).count();
             ck.expect(v1.dim.dimension.has_value() && *v1.dim.dimension == 0, "x^2=1 has dimension 0");
             ck.expect(v1.thm0_bound == 0 && v1.thm0_passed, "Theorem 0 bound 0 met with equality");
             ck.expect(v1.dim.crosscheck_ran && v1.dim.crosscheck_agrees, "x^2=1 cross-check agrees");
             ck.expect(s1 <= 120.0, "x^2=1 within 120s");

             auto t1 = clock::now();
             EquationSystem two = parse_system(detail::kTwoSquaresGeq);
             TheoremVerdicts v2 = theorem_verdicts(two, sl2, {});
             double s2 = std::chrono::duration<double>(clock::now() - t1).count();
             // The solutions with x^2 = y^2 = -1 form two trace-zero surfaces,
             // a 4-dimensional stratum, so the Theorem 1 bound of 3 is strict.
             ck.expect(v2.dim.dimension.has_value() && *v2.dim.dimension == 4, "x^2 y^2=1 has dimension 4");
             ck.expect(v2.thm1_applicable && v2.thm1_bound == 3 && v2.thm1_passed,
                       "Theorem 1 bound 3 is met");
             ck.expect(v2.dim.crosscheck_ran && v2.dim.crosscheck_agrees, "x^2 y^2=1 cross-check agrees");
             ck.expect(s2 <= 120.0, "x^2 y^2=1 within 120s");
             ck.note("dims 0 and 4");
         });

    crit(9, "empty system in one unknown over SL2 has dimension 3", 5.0, [&](detail::Check& ck) {
        EquationSystem sys;
        sys.unknowns = {"x"};
        DimResult d = solution_dimension(sys, sl2, {});
        ck.expect(d.dimension.has_value() && *d.dimension == 3, "dimension is 3");
        ck.expect(d.crosscheck_ran && d.crosscheck_agrees, "cross-check agrees");
        ck.note("dim=3");
    });

    crit(10, "property suites: words, SNF, Buchberger, encodings", 0.0, [&](detail::Check& ck) {
        std::mt19937 rng(seed);

        // Word algebra invariants, evaluated in S4.
        {
            FiniteGroup s4 = symmetric_group(4);
            std::uniform_int_distribution<int> len_dist(0, 10), sym_dist(0, 3), exp_dist(-5, 5),
                elem_dist(0, s4.order() - 1);
            const std::string symbols[] = {"x", "y", "z", "a"};
            auto random_raw = [&] {
                std::vector<Letter> raw;
                int len = len_dist(rng);
                for (int i = 0; i < len; ++i) {
                    int s = sym_dist(rng);
                    raw.push_back({symbols[s],
                                   s == 3 ? LetterKind::coefficient : LetterKind::unknown,
                                   Int(exp_dist(rng))});
                }
                return raw;
            };
            auto naive_eval = [&](const Word& w, const std::map<std::string, int>& assign) {
                int acc = s4.identity();
                for (const Letter& l : w.letters()) {
                    int base = assign.at(l.symbol);
                    long e = static_cast<long>(l.exponent);
                    int step = e >= 0 ? base : s4.inv(base);
                    for (long k = 0; k < std::labs(e); ++k) acc = s4.mul(acc, step);
                }
                return acc;
            };
            int failures = 0;
            for (int it = 0; it < 1000 && failures == 0; ++it) {
                Word u = free_reduce(random_raw());
                Word v = free_reduce(random_raw());
                for (std::size_t i = 0; i < u.letters().size(); ++i) {
                    const Letter& l = u.letters()[i];
                    if (l.exponent == 0) ++failures;
                    if (i + 1 < u.letters().size() && same_base(l, u.letters()[i + 1])) ++failures;
                }
                if (!(free_reduce(u.letters()) == u)) ++failures;
                if (!(invert(invert(u)) == u)) ++failures;
                if (!concat(u, invert(u)).empty()) ++failures;
                for (const std::string& s : {"x", "y", "z"}) {
                    if (exponent_sum(concat(u, v), s) != exponent_sum(u, s) + exponent_sum(v, s))
                        ++failures;
                    if (exponent_sum(invert(u), s) != -exponent_sum(u, s)) ++failures;
                }
                std::map<std::string, int> assign;
                for (const std::string& s : {"x", "y", "z", "a"}) assign[s] = elem_dist(rng);
                int eu = evaluate(u, assign, s4), ev = evaluate(v, assign, s4);
                if (evaluate(concat(u, v), assign, s4) != s4.mul(eu, ev)) ++failures;
                if (evaluate(invert(u), assign, s4) != s4.inv(eu)) ++failures;
                if (naive_eval(u, assign) != eu) ++failures;
            }
            ck.expect(failures == 0, "word invariants over 1000 seeded instances");
        }

        // Smith normal form invariants on random small matrices.
        {
            std::uniform_int_distribution<int> dim_dist(1, 5), ent_dist(-50, 50);
            int failures = 0;
            for (int it = 0; it < 100 && failures == 0; ++it) {
                IntMat a(dim_dist(rng), dim_dist(rng));
                for (int i = 0; i < a.rows; ++i)
                    for (int j = 0; j < a.cols; ++j) a(i, j) = ent_dist(rng);
                SNFResult s = smith_normal_form(a);
                if (!(mat_mul(mat_mul(s.u, a), s.v) == s.d)) ++failures;
                Rat du = oracle::rat_det(s.u), dv = oracle::rat_det(s.v);
                if (!(du == 1 || du == -1) || !(dv == 1 || dv == -1)) ++failures;
                auto diag = diagonal(s.d);
                if (static_cast<int>(diag.size()) != oracle::rat_rank(a)) ++failures;
                for (std::size_t k = 0; k + 1 < diag.size(); ++k)
                    if (diag[k] <= 0 || diag[k + 1] % diag[k] != 0) ++failures;
                for (int i = 0; i < s.d.rows; ++i)
                    for (int j = 0; j < s.d.cols; ++j)
                        if (i != j && s.d(i, j) != 0) ++failures;
            }
            ck.expect(failures == 0, "SNF invariants over 100 seeded matrices");
        }

        // Buchberger postconditions on every acceptance ideal, both fields.
        {
            const char* texts[] = {detail::kCommuteGeq, detail::kInvolutionGeq, detail::kTwoSquaresGeq};
            int failures = 0;
            auto check_field = [&](auto field_tag, const EquationSystem& sys) {
                using F = decltype(field_tag);
                auto built = build_ideal<F>(sys, sl2, {}, Encoding::automatic);
                auto gb = buchberger(built.gens);
                if (!is_groebner(gb)) ++failures;
                for (const auto& gen : built.gens)
                    if (!reduces_to_zero(gen, gb)) ++failures;
            };
            for (const char* text : texts) {
                EquationSystem sys = parse_system(text);
                check_field(RationalField{}, sys);
                check_field(F32003{}, sys);
            }
            EquationSystem empty;
            empty.unknowns = {"x"};
            check_field(RationalField{}, empty);
            check_field(F32003{}, empty);
            ck.expect(failures == 0, "Buchberger postconditions on the acceptance ideals");
        }

        // Direct and slp encodings agree on every short acceptance system.
        {
            const char* texts[] = {detail::kCommuteGeq, detail::kInvolutionGeq, detail::kTwoSquaresGeq};
            int failures = 0;
            for (const char* text : texts) {
                EquationSystem sys = parse_system(text);
                DimOptions direct_opts, slp_opts;
                direct_opts.encoding = Encoding::direct;
                slp_opts.encoding = Encoding::slp;
                DimResult d1 = solution_dimension(sys, sl2, {}, direct_opts);
                DimResult d2 = solution_dimension(sys, sl2, {}, slp_opts);
                if (d1.dimension != d2.dimension) ++failures;
                if (d1.dimension_modp != d2.dimension_modp) ++failures;
            }
            EquationSystem empty;
            empty.unknowns = {"x"};
            DimOptions direct_opts, slp_opts;
            direct_opts.encoding = Encoding::direct;
            slp_opts.encoding = Encoding::slp;
            if (solution_dimension(empty, sl2, {}, direct_opts).dimension !=
                solution_dimension(empty, sl2, {}, slp_opts).dimension)
                ++failures;
            ck.expect(failures == 0, "direct and slp dimensions agree on all short systems");
        }
        ck.note("seed " + std::to_string(seed));
    });

    return results;
}

inline bool print_and_check(std::ostream& os, unsigned seed = 0) {
    auto results = run_all(seed, &os);
    bool ok = all_passed(results);
    os << (ok ? "all criteria passed" : "SOME CRITERIA FAILED") << std::endl;
    return ok;
}

}  // namespace groupeq::verify
