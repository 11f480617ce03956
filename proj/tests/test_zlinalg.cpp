#include <groupeq/zlinalg.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace groupeq;

namespace {

IntMat make(int rows, int cols, std::vector<long> entries) {
    IntMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = entries[static_cast<std::size_t>(i) * cols + j];
    return m;
}

// cofactor expansion, fine for the small pinned matrices here
Int det(const IntMat& m) {
    if (m.rows == 1) return m(0, 0);
    Int d = 0;
    for (int j = 0; j < m.cols; ++j) {
        IntMat minor(m.rows - 1, m.cols - 1);
        for (int i = 1; i < m.rows; ++i)
            for (int k = 0; k < m.cols; ++k)
                if (k != j) minor(i - 1, k < j ? k : k - 1) = m(i, k);
        Int term = m(0, j) * det(minor);
        d += (j % 2 == 0) ? term : -term;
    }
    return d;
}

void check_snf(const IntMat& a) {
    SNFResult s = smith_normal_form(a);
    REQUIRE(mat_mul(mat_mul(s.u, a), s.v) == s.d);
    REQUIRE(abs(det(s.u)) == 1);
    REQUIRE(abs(det(s.v)) == 1);
    auto diag = diagonal(s.d);
    for (std::size_t k = 0; k + 1 < diag.size(); ++k) {
        REQUIRE(diag[k] > 0);
        REQUIRE(diag[k + 1] % diag[k] == 0);
    }
    for (int i = 0; i < s.d.rows; ++i)
        for (int j = 0; j < s.d.cols; ++j)
            if (i != j) REQUIRE(s.d(i, j) == 0);
}

}  // namespace

TEST_CASE("smith normal form", "[zlinalg]") {
    SECTION("pinned diagonals") {
        REQUIRE(diagonal(smith_normal_form(make(2, 2, {2, 4, 6, 8})).d) == std::vector<Int>{2, 4});
        REQUIRE(diagonal(smith_normal_form(make(2, 2, {2, 0, 0, 3})).d) == std::vector<Int>{1, 6});
        REQUIRE(diagonal(smith_normal_form(make(1, 2, {3, 3})).d) == std::vector<Int>{3});
        REQUIRE(diagonal(smith_normal_form(make(2, 2, {100, 100, 2020, 2020})).d) ==
                std::vector<Int>{20});
        REQUIRE(diagonal(smith_normal_form(IntMat::identity(3)).d) == std::vector<Int>{1, 1, 1});
        REQUIRE(diagonal(smith_normal_form(make(2, 3, {0, 0, 0, 0, 0, 0})).d).empty());
    }

    SECTION("transforms are unimodular and multiply out") {
        check_snf(make(2, 2, {2, 4, 6, 8}));
        check_snf(make(2, 2, {2, 0, 0, 3}));
        check_snf(make(1, 2, {3, 3}));
        check_snf(make(3, 2, {1, -7, 0, 4, 9, 2}));
        check_snf(make(2, 3, {-4, 17, 3, 8, 0, -5}));
        check_snf(make(3, 3, {12, -6, 9, 4, 4, 4, 0, 30, -15}));
    }

    SECTION("rank") {
        REQUIRE(rank(make(2, 2, {100, 100, 2020, 2020})) == 1);
        REQUIRE(rank(make(2, 2, {1, 0, 0, 1})) == 2);
        REQUIRE(rank(make(2, 3, {0, 0, 0, 0, 0, 0})) == 0);
        REQUIRE(rank(make(1, 3, {2, 2, 2})) == 1);
    }
}

TEST_CASE("kernel basis", "[zlinalg]") {
    SECTION("kernel vectors annihilate the matrix") {
        IntMat a = make(2, 3, {2, 4, 6, 1, 1, 1});
        auto basis = kernel_basis(a);
        REQUIRE(basis.size() == 1);
        for (const auto& v : basis)
            for (int i = 0; i < a.rows; ++i) {
                Int dot = 0;
                for (int j = 0; j < a.cols; ++j) dot += a(i, j) * v[j];
                REQUIRE(dot == 0);
            }
    }

    SECTION("full-rank square matrices have no kernel") {
        REQUIRE(kernel_basis(IntMat::identity(2)).empty());
    }

    SECTION("zero matrix has a full kernel") {
        REQUIRE(kernel_basis(make(1, 3, {0, 0, 0})).size() == 3);
    }
}

TEST_CASE("indexing from the exponent matrix", "[zlinalg]") {
    SECTION("single equation") {
        Indexing idx = make_indexing(make(1, 2, {3, 3}));
        REQUIRE(idx.degrees == std::vector<Int>{1, -1});
    }

    SECTION("three unknowns") {
        Indexing idx = make_indexing(make(1, 3, {2, 2, 2}));
        REQUIRE(idx.degrees == std::vector<Int>{1, -1, 0});
    }

    SECTION("proportional rows") {
        Indexing idx = make_indexing(make(2, 2, {100, 100, 2020, 2020}));
        REQUIRE(idx.degrees == std::vector<Int>{1, -1});
    }

    SECTION("degrees are primitive with a positive leading entry") {
        Indexing idx = make_indexing(make(1, 2, {10, 15}));
        // kernel of (10 15) is spanned by (3, -2)
        REQUIRE(idx.degrees == std::vector<Int>{3, -2});
    }

    SECTION("full column rank means no indexing") {
        REQUIRE_THROWS_WITH(make_indexing(IntMat::identity(2)),
                            Catch::Matchers::ContainsSubstring("no indexing exists"));
    }
}

TEST_CASE("bezout coefficients", "[zlinalg]") {
    auto check = [](std::vector<Int> d, Int expected_gcd) {
        std::vector<Int> c = bezout(d);
        REQUIRE(c.size() == d.size());
        Int sum = 0;
        for (std::size_t i = 0; i < d.size(); ++i) sum += c[i] * d[i];
        REQUIRE(sum == expected_gcd);
    };
    check({6, 10, 15}, 1);
    check({4, 6}, 2);
    check({0, 0, 5}, 5);
    check({-3, 7}, 1);
    check({1, -1, 0}, 1);
}
