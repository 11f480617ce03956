#include <groupeq/simclass.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace groupeq;

namespace {

struct CubeSetup {
    GeqFile file;
    FiniteGroup g;
    CoefficientBinding bind;
    Subgroup h;
    IndexedHomContext ctx;
    std::vector<Hom> solutions;

    CubeSetup()
        : file(parse_geq("coefficients:\n  a = (1 2 3)\nequations:\n  x^3 y^3 = @a\n")),
          g(symmetric_group(3)),
          bind(bind_coefficients(file, g)),
          h(centralizer(g, bound_atom_values(file.system, bind))),
          ctx(make_context(file.system, g, bind, h)),
          solutions(enumerate_solutions(file.system, g, bind).solutions) {}

    int elem(const char* cycles) const { return *g.find_perm(parse_cycles(cycles)); }
    Hom hom(const char* a, const char* b) const { return {elem(a), elem(b)}; }
};

}  // namespace

TEST_CASE("indexed context", "[simclass]") {
    CubeSetup s;

    SECTION("degrees and the degree-one word") {
        REQUIRE(s.ctx.degrees == std::vector<Int>{1, -1});
        REQUIRE(print_word(s.ctx.t) == "y^-1");
        REQUIRE(word_degree(s.ctx, s.ctx.t) == 1);
        REQUIRE(word_degree(s.ctx, s.file.system.equations[0]) == 0);
    }

    SECTION("the acting subgroup is the centralizer of the coefficients") {
        REQUIRE(s.h.order() == 3);
        REQUIRE(s.h.contains(s.elem("(1 2 3)")));
    }

    SECTION("subgroups outside the coefficient centralizer are rejected") {
        REQUIRE_THROWS_WITH(make_context(s.file.system, s.g, s.bind, full_subgroup(s.g)),
                            Catch::Matchers::ContainsSubstring("centralizer of coefficient"));
    }

    SECTION("full-rank systems have no context") {
        EquationSystem flat = parse_system("x^2 = 1");
        FiniteGroup s3 = symmetric_group(3);
        REQUIRE_THROWS_WITH(make_context(flat, s3, {}, full_subgroup(s3)),
                            Catch::Matchers::ContainsSubstring("no indexing exists"));
    }

    SECTION("evaluation and solution checking") {
        Hom phi = s.hom("(1 2)", "(1 3)");
        REQUIRE(is_solution(s.ctx, phi));
        REQUIRE(eval_hom(s.ctx, s.ctx.t, phi) == s.elem("(1 3)"));
        REQUIRE_FALSE(is_solution(s.ctx, s.hom("(1 2)", "(1 2)")));
    }
}

TEST_CASE("kernel image and core", "[simclass]") {
    CubeSetup s;
    Hom phi = s.hom("(1 2)", "(1 3)");

    SECTION("kernel image is A3") {
        Subgroup k = kernel_image(s.ctx, phi);
        REQUIRE(k.order() == 3);
        REQUIRE(k.contains(s.elem("(1 2 3)")));
        REQUIRE_FALSE(k.contains(s.elem("(1 2)")));
    }

    SECTION("core is all of H here") {
        REQUIRE(phi_core(s.ctx, phi).order() == 3);
    }
}

TEST_CASE("conjugation and twists", "[simclass]") {
    CubeSetup s;
    Hom phi = s.hom("(1 2)", "(1 3)");

    SECTION("conjugation acts coordinatewise") {
        Hom conj = conjugate_hom(s.ctx, phi, s.elem("(1 2 3)"));
        REQUIRE(conj == s.hom("(2 3)", "(1 2)"));
        REQUIRE(is_solution(s.ctx, conj));
        REQUIRE(conjugate_hom(s.ctx, phi, s.g.identity()) == phi);
    }

    SECTION("twist moves along the class") {
        REQUIRE(twist(s.ctx, phi, s.g.identity()) == phi);
        Hom psi = twist(s.ctx, phi, s.elem("(1 2 3)"));
        REQUIRE(psi == s.hom("(1 3)", "(2 3)"));
        REQUIRE(is_solution(s.ctx, psi));
    }

    SECTION("twists by non-core elements are rejected") {
        REQUIRE_THROWS_WITH(twist(s.ctx, phi, s.elem("(1 2)")),
                            Catch::Matchers::ContainsSubstring("core"));
    }
}

TEST_CASE("tails and similarity", "[simclass]") {
    CubeSetup s;
    Hom phi = s.hom("(1 2)", "(1 3)");
    Hom psi = s.hom("(1 3)", "(2 3)");

    SECTION("twists preserve the tail") {
        REQUIRE(same_tail(s.ctx, phi, phi));
        REQUIRE(same_tail(s.ctx, phi, psi));
    }

    SECTION("similarity joins all three solutions") {
        for (const Hom& a : s.solutions)
            for (const Hom& b : s.solutions) REQUIRE(similar(s.ctx, a, b));
    }
}

TEST_CASE("conditions", "[simclass]") {
    CubeSetup s;

    SECTION("the full solution set satisfies both conditions") {
        ConditionReport rep = check_conditions(s.ctx, s.solutions);
        REQUIRE(rep.closed_under_conjugation);
        REQUIRE(rep.closed_under_twists);
        REQUIRE(rep.ok());
    }

    SECTION("a strict subset fails with a witness") {
        std::vector<Hom> partial{s.hom("(1 2)", "(1 3)")};
        ConditionReport rep = check_conditions(s.ctx, partial);
        REQUIRE_FALSE(rep.ok());
        REQUIRE_THROWS_WITH(partition_classes(s.ctx, partial),
                            Catch::Matchers::ContainsSubstring("witness"));
    }

    SECTION("non-solutions are rejected up front") {
        std::vector<Hom> bad{s.hom("(1 2)", "(1 2)")};
        REQUIRE_THROWS_WITH(partition_classes(s.ctx, bad),
                            Catch::Matchers::ContainsSubstring("non-solution"));
        std::vector<Hom> short_arity{{0}};
        REQUIRE_THROWS_WITH(partition_classes(s.ctx, short_arity),
                            Catch::Matchers::ContainsSubstring("arity"));
    }
}

TEST_CASE("partitions", "[simclass]") {
    SECTION("the cube system forms a single class of size |H|") {
        CubeSetup s;
        SimilarityPartition part = partition_classes(s.ctx, s.solutions);
        REQUIRE(part.classes.size() == 1);
        REQUIRE(part.classes[0].members.size() == 3);
        REQUIRE(part.classes[0].tail_count * part.classes[0].core_order == s.h.order());
    }

    SECTION("x^2 y^2 z^2 = 1 under all of S3 gives 15 classes of 6") {
        FiniteGroup g = symmetric_group(3);
        EquationSystem sys = parse_system("x^2 y^2 z^2 = 1");
        IndexedHomContext ctx = make_context(sys, g, {}, full_subgroup(g));
        std::vector<Hom> sols = enumerate_solutions(sys, g, {}).solutions;
        SimilarityPartition part = partition_classes(ctx, sols);
        REQUIRE(part.classes.size() == 15);
        for (const auto& cls : part.classes) {
            REQUIRE(cls.members.size() == 6);
            REQUIRE(cls.tail_count * cls.core_order == 6);
        }

        // the class of the trivial solution is (h, h^-1, id) for h in S3
        Hom trivial{g.identity(), g.identity(), g.identity()};
        const SimilarityClass* found = nullptr;
        for (const auto& cls : part.classes)
            if (std::binary_search(cls.members.begin(), cls.members.end(), trivial)) found = &cls;
        REQUIRE(found != nullptr);
        REQUIRE(found->core_order == 6);
        REQUIRE(found->tail_count == 1);
        int t12 = *g.find_perm(parse_cycles("(1 2)"));
        Hom swap_pair{t12, t12, g.identity()};
        REQUIRE(std::binary_search(found->members.begin(), found->members.end(), swap_pair));
    }
}
