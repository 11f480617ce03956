#include <groupeq/solvecount.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace groupeq;

TEST_CASE("solution counting", "[solvecount]") {
    FiniteGroup s3 = symmetric_group(3);

    SECTION("x^3 y^3 = (1 2 3) has exactly three solutions in S3") {
        GeqFile f = parse_geq("coefficients:\n  a = (1 2 3)\nequations:\n  x^3 y^3 = @a\n");
        CoefficientBinding b = bind_coefficients(f, s3);
        SolutionSet s = enumerate_solutions(f.system, s3, b);
        REQUIRE(s.count == 3);
        REQUIRE(s.assignments_scanned == 36);
        // cubes of transpositions are themselves, so the solutions are the
        // transposition pairs multiplying to (1 2 3)
        std::vector<std::vector<std::string>> found;
        for (const auto& sol : s.solutions) found.push_back({s3.label(sol[0]), s3.label(sol[1])});
        std::vector<std::vector<std::string>> expect{
            {"(1 2)", "(1 3)"}, {"(1 3)", "(2 3)"}, {"(2 3)", "(1 2)"}};
        for (const auto& e : expect)
            REQUIRE(std::find(found.begin(), found.end(), e) != found.end());
    }

    SECTION("x^2 y^2 z^2 = 1 has 90 solutions in S3") {
        EquationSystem sys = parse_system("x^2 y^2 z^2 = 1");
        SolutionSet s = enumerate_solutions(sys, s3, {});
        REQUIRE(s.count == 90);
        REQUIRE(s.assignments_scanned == 216);
    }

    SECTION("x^2 = 1 counts involutions plus identity") {
        SolutionSet s = enumerate_solutions(parse_system("x^2 = 1"), s3, {});
        REQUIRE(s.count == 4);
    }

    SECTION("an empty system is satisfied by every assignment") {
        EquationSystem sys = parse_system("unknowns: x\n");
        SolutionSet s = enumerate_solutions(sys, s3, {});
        REQUIRE(s.count == 6);
    }

    SECTION("inconsistent systems have no solutions") {
        // x x^-1 = (1 2) folds to a constant-false equation
        GeqFile f = parse_geq("coefficients:\n  a = (1 2)\nequations:\n  x x^-1 = @a\n");
        CoefficientBinding b = bind_coefficients(f, s3);
        REQUIRE(enumerate_solutions(f.system, s3, b).count == 0);
    }

    SECTION("budget guards the worst case up front") {
        EquationSystem sys = parse_system("x^2 y^2 z^2 = 1");
        SolveOptions opts;
        opts.eval_budget = 10;
        REQUIRE_THROWS_AS(enumerate_solutions(sys, s3, {}, opts), BudgetError);
        REQUIRE_THROWS_WITH(enumerate_solutions(sys, s3, {}, opts),
                            Catch::Matchers::ContainsSubstring("raise --budget"));
    }
}

TEST_CASE("coefficient binding", "[solvecount]") {
    FiniteGroup s3 = symmetric_group(3);

    SECTION("resolves declared permutations to elements") {
        GeqFile f = parse_geq("coefficients:\n  a = (1 2 3)\nequations:\n  x = @a\n");
        CoefficientBinding b = bind_coefficients(f, s3);
        REQUIRE(s3.label(b.atom_values.at("a")) == "(1 2 3)");
    }

    SECTION("missing declarations fail") {
        GeqFile f;
        f.system = parse_system("x = @a");
        REQUIRE_THROWS_WITH(bind_coefficients(f, s3),
                            Catch::Matchers::ContainsSubstring("no declared value"));
    }

    SECTION("matrix values cannot bind to finite groups") {
        GeqFile f = parse_geq("coefficients:\n  a = [[1, 0], [0, 1]]\nequations:\n  x = @a\n");
        REQUIRE_THROWS_WITH(bind_coefficients(f, s3),
                            Catch::Matchers::ContainsSubstring("is a matrix"));
    }

    SECTION("permutations outside the group fail") {
        GeqFile f = parse_geq("coefficients:\n  a = (1 4)\nequations:\n  x = @a\n");
        REQUIRE_THROWS_WITH(bind_coefficients(f, s3),
                            Catch::Matchers::ContainsSubstring("not an element of S3"));
    }
}

TEST_CASE("divisibility verdicts", "[solvecount]") {
    FiniteGroup s3 = symmetric_group(3);

    SECTION("coefficient-free underdetermined system") {
        CountReport r = count_and_verdicts(parse_system("x^2 y^2 z^2 = 1"), s3, {});
        REQUIRE(r.rank == 1);
        REQUIRE(r.coefficient_free);
        REQUIRE(r.verdicts.size() == 3);
        const auto& solomon = r.verdicts[0];
        REQUIRE(solomon.theorem == "Solomon");
        REQUIRE(solomon.applicable);
        REQUIRE(solomon.divisor == 6);
        REQUIRE(solomon.divides);
        const auto& grv = r.verdicts[1];
        REQUIRE(grv.applicable);
        REQUIRE(grv.divisor == 6);
        REQUIRE(grv.divides);
        const auto& km = r.verdicts[2];
        REQUIRE(km.applicable);
        REQUIRE(km.divisor == 6);  // centralizer of no coefficients is all of G
        REQUIRE(km.divides);
    }

    SECTION("coefficients disable Solomon and GRV but not KM") {
        GeqFile f = parse_geq("coefficients:\n  a = (1 2 3)\nequations:\n  x^3 y^3 = @a\n");
        CountReport r = count_and_verdicts(f.system, s3, bind_coefficients(f, s3));
        REQUIRE_FALSE(r.verdicts[0].applicable);
        REQUIRE_FALSE(r.verdicts[1].applicable);
        REQUIRE(r.verdicts[2].applicable);
        REQUIRE(r.verdicts[2].divisor == 3);  // centralizer of (1 2 3)
        REQUIRE(r.verdicts[2].divides);
    }

    SECTION("full-rank systems admit no verdict") {
        CountReport r = count_and_verdicts(parse_system("x^2 = 1"), s3, {});
        for (const auto& v : r.verdicts) REQUIRE_FALSE(v.applicable);
    }

    SECTION("rank beats equation count") {
        // three equations in three unknowns, but rank 1: GRV still applies
        CountReport r =
            count_and_verdicts(parse_system("x y z = 1; (x y z)^2 = 1; (x y z)^3 = 1"), s3, {});
        REQUIRE(r.rank == 1);
        REQUIRE_FALSE(r.verdicts[0].applicable);  // Solomon counts equations
        REQUIRE(r.verdicts[1].applicable);
        REQUIRE(r.verdicts[1].divides);
    }
}

TEST_CASE("epimorphism counting", "[solvecount]") {
    SECTION("Epi(F2, S3) = 18") {
        EpiResult r = epimorphism_count(symmetric_group(3), 2);
        REQUIRE(r.count == 18);
        REQUIRE(r.tuples_scanned == 36);
        REQUIRE(r.verdict.theorem == "KM17-epi");
        REQUIRE(r.verdict.applicable);
        REQUIRE(r.verdict.divisor == 3);
        REQUIRE(r.verdict.divides);
    }

    SECTION("Epi(F1, C6) counts generators") {
        EpiResult r = epimorphism_count(cyclic_group(6), 1);
        REQUIRE(r.count == 2);
        REQUIRE(r.verdict.divisor == 1);
    }

    SECTION("Epi(F2, C2 x C2) = 6") {
        REQUIRE(epimorphism_count(build_group("product(C2,C2)"), 2).count == 6);
    }

    SECTION("rank and budget validation") {
        REQUIRE_THROWS_AS(epimorphism_count(symmetric_group(3), 0), Error);
        SolveOptions opts;
        opts.eval_budget = 10;
        REQUIRE_THROWS_AS(epimorphism_count(symmetric_group(3), 2, opts), BudgetError);
    }
}
