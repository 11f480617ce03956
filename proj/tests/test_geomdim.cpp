#include <groupeq/geomdim.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace groupeq;
using Catch::Matchers::ContainsSubstring;

namespace {

GeqFile load(const std::string& text) { return parse_geq(text); }

MatrixBinding bind(const GeqFile& f, const VarietyModel& m) { return bind_matrix_coefficients(f, m); }

}  // namespace

TEST_CASE("model parsing", "[geomdim]") {
    SECTION("basic models and dimensions") {
        VarietyModel sl2 = parse_model("SL2");
        REQUIRE(sl2.factors == std::vector<FactorKind>{FactorKind::sl2});
        REQUIRE(sl2.group_dim() == 3);
        REQUIRE(parse_model("GL2").group_dim() == 4);
        REQUIRE(parse_model("torus(3)").group_dim() == 3);
        REQUIRE(parse_model(" torus(1) ").pure_torus());
    }

    SECTION("products flatten") {
        VarietyModel m = parse_model("product(SL2, torus(2))");
        REQUIRE(m.factors ==
                std::vector<FactorKind>{FactorKind::sl2, FactorKind::torus1, FactorKind::torus1});
        REQUIRE(m.group_dim() == 5);
        REQUIRE_FALSE(m.single_matrix_factor());
    }

    SECTION("bad specs") {
        REQUIRE_THROWS_WITH(parse_model("S5"), ContainsSubstring("unrecognized model"));
        REQUIRE_THROWS_WITH(parse_model("torus(0)"), ContainsSubstring("k >= 1"));
        REQUIRE_THROWS_WITH(parse_model("torus(x)"), ContainsSubstring("positive integer"));
        REQUIRE_THROWS_WITH(parse_model("product(SL2)"), ContainsSubstring("at least two"));
    }
}

TEST_CASE("matrix coefficient binding", "[geomdim]") {
    VarietyModel sl2 = parse_model("SL2");
    VarietyModel gl2 = parse_model("GL2");

    SECTION("valid binding") {
        GeqFile f = load("coefficients:\n  a = [[2, 0], [0, 1/2]]\nequations:\n  [x, @a] = 1\n");
        MatrixBinding b = bind(f, sl2);
        REQUIRE(b.atoms.at("a")[0][0] == Rat(2));
        REQUIRE(b.atoms.at("a")[1][1] == Rat(1, 2));
    }

    SECTION("coefficient-free systems bind trivially") {
        REQUIRE(bind(load("x^2 = 1\n"), sl2).atoms.empty());
    }

    SECTION("determinant checks") {
        GeqFile f = load("coefficients:\n  a = [[2, 0], [0, 1]]\nequations:\n  [x, @a] = 1\n");
        REQUIRE_THROWS_WITH(bind(f, sl2), ContainsSubstring("SL2 needs 1"));
        REQUIRE(bind(f, gl2).atoms.count("a") == 1);
        GeqFile s = load("coefficients:\n  a = [[1, 1], [1, 1]]\nequations:\n  [x, @a] = 1\n");
        REQUIRE_THROWS_WITH(bind(s, gl2), ContainsSubstring("singular"));
    }

    SECTION("wrong coefficient kind or model") {
        GeqFile f = load("coefficients:\n  a = (1 2)\nequations:\n  [x, @a] = 1\n");
        REQUIRE_THROWS_WITH(bind(f, sl2), ContainsSubstring("2x2 rational matrix"));
        GeqFile m = load("coefficients:\n  a = [[2, 0], [0, 1/2]]\nequations:\n  [x, @a] = 1\n");
        REQUIRE_THROWS_WITH(bind(m, parse_model("torus(1)")),
                            ContainsSubstring("single-factor SL2/GL2"));
    }
}

TEST_CASE("centralizer dimensions", "[geomdim]") {
    VarietyModel sl2 = parse_model("SL2");

    SECTION("whole group") {
        REQUIRE(centralizer_dimension(sl2, {}) == 3);
        REQUIRE(centralizer_dimension(parse_model("GL2"), {}) == 4);
        REQUIRE(centralizer_dimension(parse_model("torus(2)"), {}) == 2);
    }

    SECTION("regular semisimple element centralizes a torus") {
        std::vector<std::vector<Rat>> a{{Rat(2), Rat(0)}, {Rat(0), Rat(1, 2)}};
        REQUIRE(centralizer_dimension(sl2, {a}) == 1);
    }

    SECTION("unipotent element") {
        std::vector<std::vector<Rat>> u{{Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
        REQUIRE(centralizer_dimension(sl2, {u}) == 1);
    }

    SECTION("diagonal matrices in GL2") {
        std::vector<std::vector<Rat>> a{{Rat(2), Rat(0)}, {Rat(0), Rat(1)}};
        REQUIRE(centralizer_dimension(parse_model("GL2"), {a}) == 2);
    }
}

TEST_CASE("solution dimensions", "[geomdim]") {
    VarietyModel sl2 = parse_model("SL2");
    MatrixBinding none;

    SECTION("identity equation") {
        DimResult r = solution_dimension(parse_system("x = 1\n"), sl2, none);
        REQUIRE(r.dimension == 0);
        REQUIRE(r.crosscheck_ran);
        REQUIRE(r.crosscheck_agrees);
        REQUIRE(r.dimension_modp == 0);
    }

    SECTION("involutions are the two central elements") {
        DimResult r = solution_dimension(parse_system("x^2 = 1\n"), sl2, none);
        REQUIRE(r.dimension == 0);
    }

    SECTION("square roots of minus one form a surface") {
        GeqFile f = load("coefficients:\n  a = [[-1, 0], [0, -1]]\nequations:\n  x^2 = @a\n");
        DimResult r = solution_dimension(f.system, sl2, bind(f, sl2));
        REQUIRE(r.dimension == 2);
    }

    SECTION("involutions in GL2") {
        DimResult r = solution_dimension(parse_system("x^2 = 1\n"), parse_model("GL2"), none);
        REQUIRE(r.dimension == 2);
    }

    SECTION("torus cases") {
        REQUIRE(solution_dimension(parse_system("x^2 = 1\n"), parse_model("torus(1)"), none).dimension == 0);
        REQUIRE(solution_dimension(parse_system("unknowns: x\n"), parse_model("torus(2)"), none).dimension == 2);
    }

    SECTION("empty variety") {
        GeqFile f = load(
            "coefficients:\n  a = [[-1, 0], [0, -1]]\nequations:\n  x = 1\n  x^2 = @a\n");
        DimResult r = solution_dimension(f.system, sl2, bind(f, sl2));
        REQUIRE_FALSE(r.dimension.has_value());
    }

    SECTION("crosscheck can be disabled") {
        DimOptions opts;
        opts.crosscheck = false;
        DimResult r = solution_dimension(parse_system("x = 1\n"), sl2, none, opts);
        REQUIRE_FALSE(r.crosscheck_ran);
        REQUIRE_FALSE(r.dimension_modp.has_value());
    }
}

TEST_CASE("encodings", "[geomdim]") {
    VarietyModel sl2 = parse_model("SL2");
    MatrixBinding none;

    SECTION("automatic stays direct under the budget") {
        DimResult r = solution_dimension(parse_system("x^2 = 1\n"), sl2, none);
        REQUIRE(r.encoding_used == Encoding::direct);
        REQUIRE(r.nvars == 4);
    }

    SECTION("automatic escalates to slp") {
        auto built = build_ideal<RationalField>(parse_system("(x y)^5 = 1\n"), sl2, none,
                                                Encoding::automatic);
        REQUIRE(built.desc.encoding == Encoding::slp);
    }

    SECTION("forced direct refuses long equations") {
        DimOptions opts;
        opts.encoding = Encoding::direct;
        REQUIRE_THROWS_WITH(solution_dimension(parse_system("(x y)^5 = 1\n"), sl2, none, opts),
                            ContainsSubstring("use the slp encoding"));
    }

    SECTION("direct and slp agree") {
        DimOptions direct, slp;
        direct.encoding = Encoding::direct;
        slp.encoding = Encoding::slp;
        EquationSystem sys = parse_system("x^2 = 1\n");
        DimResult a = solution_dimension(sys, sl2, none, direct);
        DimResult b = solution_dimension(sys, sl2, none, slp);
        REQUIRE(a.nvars == 4);
        REQUIRE(b.nvars == 8);
        REQUIRE(a.dimension == b.dimension);
        REQUIRE(a.dimension_modp == b.dimension_modp);
    }
}

TEST_CASE("theorem verdicts", "[geomdim]") {
    VarietyModel sl2 = parse_model("SL2");

    SECTION("full-rank system has no lower-bound claims") {
        TheoremVerdicts v = theorem_verdicts(parse_system("x = 1\n"), sl2, MatrixBinding{});
        REQUIRE(v.rank == 1);
        REQUIRE(v.unknowns == 1);
        REQUIRE(v.thm0_bound == 0);
        REQUIRE(v.thm0_passed);
        REQUIRE_FALSE(v.thm1_applicable);
        REQUIRE_FALSE(v.corollary_applicable);
        REQUIRE(v.all_passed);
    }

    SECTION("balanced commutator meets the centralizer bound") {
        GeqFile f = load("coefficients:\n  a = [[2, 0], [0, 1/2]]\nequations:\n  [x, @a] = 1\n");
        TheoremVerdicts v = theorem_verdicts(f.system, sl2, bind(f, sl2));
        REQUIRE(v.rank == 0);
        REQUIRE_FALSE(v.coefficient_free);
        REQUIRE(v.thm1_applicable);
        REQUIRE(v.thm1_bound == 1);
        REQUIRE(v.dim.dimension == 1);
        REQUIRE(v.thm1_passed);
        REQUIRE_FALSE(v.corollary_applicable);
        REQUIRE(v.all_passed);
    }

    SECTION("empty varieties pass vacuously") {
        GeqFile f = load(
            "coefficients:\n  a = [[-1, 0], [0, -1]]\nunknowns: x y\nequations:\n  x = 1\n  x^2 = @a\n");
        TheoremVerdicts v = theorem_verdicts(f.system, sl2, bind(f, sl2));
        REQUIRE_FALSE(v.dim.dimension.has_value());
        REQUIRE(v.unknowns == 2);
        REQUIRE(v.thm1_applicable);
        REQUIRE(v.thm1_passed);
        REQUIRE(v.all_passed);
    }
}
