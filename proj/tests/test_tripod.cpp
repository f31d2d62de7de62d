#include "phyloinv/json_io.hpp"
#include "phyloinv/oracle.hpp"
#include "phyloinv/tripod.hpp"

#include <doctest.h>

using namespace phyloinv;

namespace {

std::vector<SparseVector> as_vectors(const std::vector<AdmissibleMatrix>& ms) {
    std::vector<SparseVector> out;
    for (const AdmissibleMatrix& m : ms)
        out.push_back(to_sparse(m.flatten()));
    return out;
}

const SquareMatrix kZ3Example{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}};

} // namespace

TEST_CASE("admissibility conditions") {
    GroupSpec z3({3});
    CHECK(is_admissible(kZ3Example, z3));
    CHECK(matrix_degree(kZ3Example) == 3);
    CHECK(is_admissible(SquareMatrix(3, std::vector<long long>(3, 0)), z3));

    SquareMatrix e(3, std::vector<long long>(3, 0));
    e[1][2] = 1;
    AdmissibilityReport r = check_admissible(e, z3);
    CHECK_FALSE(r.ok);
    CHECK(r.failure == "row 1 sums to 1");

    // Rows and columns balance but the antidiagonal classes do not.
    SquareMatrix a = elementary_A(z3, z3.make({0}), z3.make({1}), z3.make({0}), z3.make({1}));
    CHECK(a == SquareMatrix{{1, -1, 0}, {-1, 1, 0}, {0, 0, 0}});
    CHECK(check_admissible(a, z3).failure.find("antidiagonal class") == 0);
    CHECK_THROWS_AS(elementary_A(z3, z3.make({1}), z3.make({1}), z3.make({0}), z3.make({2})), InputError);
    CHECK_THROWS_AS(check_admissible(SquareMatrix(2, std::vector<long long>(2, 0)), z3), InputError);
    CHECK_THROWS_AS(AdmissibleMatrix(z3, e), InputError);
}

TEST_CASE("elementary A matches the first summand of X(1,2) over Z4") {
    GroupSpec z4({4});
    SquareMatrix a = elementary_A(z4, z4.make({1}), z4.make({0}), z4.make({2}), z4.make({0}));
    CHECK(a == SquareMatrix{{1, 0, -1, 0}, {-1, 0, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
}

TEST_CASE("X matrices over Z4") {
    // Displayed as X(1,2), X(1,3), then the four matrices whose unit K-entry
    // sits at (3,2), (3,3), (2,3), (2,2).
    CHECK(x_matrix(4, 1, 2).entries() == SquareMatrix{{0, 1, -1, 0}, {-1, 0, 1, 0}, {1, -1, 0, 0}, {0, 0, 0, 0}});
    CHECK(x_matrix(4, 1, 3).entries() == SquareMatrix{{0, 1, 0, -1}, {-1, 0, 0, 1}, {0, 0, 0, 0}, {1, -1, 0, 0}});
    CHECK(x_matrix(4, 3, 2).entries() == SquareMatrix{{1, 0, -1, 0}, {-1, 1, 0, 0}, {0, 0, 0, 0}, {0, -1, 1, 0}});
    CHECK(x_matrix(4, 3, 3).entries() == SquareMatrix{{1, 0, 0, -1}, {0, 0, 0, 0}, {-1, 1, 0, 0}, {0, -1, 0, 1}});
    CHECK(x_matrix(4, 2, 3).entries() == SquareMatrix{{1, 0, 0, -1}, {-1, 1, 0, 0}, {-1, 0, 0, 1}, {1, -1, 0, 0}});
    CHECK(x_matrix(4, 2, 2).entries() == SquareMatrix{{0, 1, -1, 0}, {-1, 1, 0, 0}, {0, -1, 1, 0}, {1, -1, 0, 0}});
    CHECK_THROWS_AS(x_matrix(4, 0, 2), InputError);
    CHECK_THROWS_AS(x_matrix(4, 1, 1), InputError);
    CHECK_THROWS_AS(x_matrix(4, 1, 4), InputError);
}

TEST_CASE("cyclic bases have the unit K-minor and the right size") {
    CHECK(cyclic_basis(2).empty());
    for (int g = 3; g <= 12; ++g) {
        auto basis = cyclic_basis(g);
        REQUIRE(basis.size() == static_cast<std::size_t>((g - 1) * (g - 2)));
        std::size_t idx = 0;
        for (int i = 1; i < g; ++i)
            for (int j = 2; j < g; ++j, ++idx) {
                const AdmissibleMatrix& x = basis[idx];
                CHECK(x.degree() <= g);
                CHECK(is_admissible(x.entries(), GroupSpec({g})));
                for (int a = 1; a < g; ++a)
                    for (int b = 2; b < g; ++b)
                        CHECK(x(a, b) == (a == i && b == j ? 1 : 0));
            }
    }
    for (int g = 2; g <= 6; ++g)
        CHECK(spans(as_vectors(cyclic_basis(g)), adm_lattice(GroupSpec({g}))));
}

TEST_CASE("B matrices") {
    GroupSpec g({2}), h({3});
    GroupSpec gh = g.times(h);
    for (int i = 0; i < 2; ++i)
        for (int k = 1; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                AdmissibleMatrix b = b_matrix(g, h, g.make({i}), g.make({1}), h.make({k}), h.make({l}));
                CHECK(b.degree() == 3);
                CHECK(b.group() == gh);
                std::size_t nonzero = 0;
                for (auto& row : b.entries())
                    for (long long x : row)
                        nonzero += x != 0;
                CHECK(nonzero == 6);
                CHECK(is_admissible(b.transpose().entries(), gh));
            }
    CHECK_THROWS_AS(b_matrix(g, h, g.make({0}), g.make({0}), h.make({1}), h.make({0})), InputError);
    CHECK_THROWS_AS(b_matrix(g, h, g.make({0}), g.make({1}), h.make({0}), h.make({0})), InputError);
}

TEST_CASE("product bases") {
    auto family_total = [](long g, long h) {
        return (g - 1) * (g - 1) * (h - 1) * (h - 1) + 2 * (h - 1) * (h - 1) * (g - 1) +
               2 * (g - 1) * (g - 1) * (h - 1) + (g - 1) * (h - 1) + (g - 1) * (g - 2) + (h - 1) * (h - 2);
    };
    for (long g = 2; g <= 6; ++g)
        for (long h = 2; h <= 6; ++h)
            CHECK(family_total(g, h) == (g * h - 1) * (g * h - 2));

    for (auto [a, b] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}, std::pair{2, 4}}) {
        GroupSpec g({a}), h({b});
        auto basis = product_basis(g, h, cyclic_basis(a), cyclic_basis(b));
        CHECK(basis.size() == static_cast<std::size_t>((a * b - 1) * (a * b - 2)));
        for (const AdmissibleMatrix& m : basis)
            CHECK(m.degree() <= std::max(3, std::max(a, b)));
        CHECK(spans(as_vectors(basis), adm_lattice(g.times(h))));
    }
    CHECK_THROWS_AS(product_basis(GroupSpec({3}), GroupSpec({2}), {}, {}), InputError);
}

TEST_CASE("tripod invariants in both modes") {
    CHECK(tripod_invariants(GroupSpec({2})).empty());
    auto k3 = tripod_invariants(GroupSpec({2, 2}));
    CHECK(k3.size() == 6);
    for (const Binomial& b : k3)
        CHECK(b.degree() <= 3);
    auto z4 = tripod_invariants(GroupSpec({4}));
    CHECK(z4.size() == 6);
    for (const Binomial& b : z4)
        CHECK(b.degree() <= 4);

    for (int n : {6, 12}) {
        GroupSpec g({n});
        auto direct = admissible_basis(g, TripodMode::DirectCyclic);
        auto factored = admissible_basis(g, TripodMode::Factored);
        CHECK(direct.size() == factored.size());
        CHECK(spans(as_vectors(factored), adm_lattice(g)));
        std::size_t max_deg = 0;
        for (const AdmissibleMatrix& m : factored)
            max_deg = std::max<std::size_t>(max_deg, m.degree());
        CHECK(max_deg <= static_cast<std::size_t>(std::max(3, n)));
    }
    CHECK(parse_tripod_mode("factored") == TripodMode::Factored);
    CHECK(to_string(TripodMode::DirectCyclic) == "direct-cyclic");
    CHECK_THROWS_AS(parse_tripod_mode("cyclic"), InputError);
}

TEST_CASE("matrix to binomial and back") {
    GroupSpec z3({3});
    AdmissibleMatrix m(z3, kZ3Example);
    Binomial b = matrix_to_binomial(m);
    CHECK(b.degree() == 3);
    CHECK(to_algebra_text(b) == "x[0,2,1]*x[1,0,2]*x[2,1,0] - x[0,1,2]*x[1,2,0]*x[2,0,1]");
    // Read with rows and columns exchanged, the same matrix gives the binomial
    // in the opposite orientation.
    CHECK(to_algebra_text(matrix_to_binomial(m.transpose())) ==
          "x[0,1,2]*x[1,2,0]*x[2,0,1] - x[0,2,1]*x[1,0,2]*x[2,1,0]");
    CHECK(binomial_to_matrix(b, z3) == kZ3Example);

    for (const AdmissibleMatrix& x : admissible_basis(GroupSpec({2, 3})))
        CHECK(binomial_to_matrix(matrix_to_binomial(x), x.group()) == x.entries());
}

TEST_CASE("admissibility conditions matrix has adm(G) as kernel") {
    GroupSpec g({2, 2});
    IntegerMatrix c = admissibility_conditions(g);
    CHECK(c.rows() == 12);
    CHECK(c.cols() == 16);
    CHECK(kernel_lattice(c).rank() == 6);
    for (const AdmissibleMatrix& m : admissible_basis(g))
        for (const Integer& x : image(c, to_sparse(m.flatten())))
            CHECK(x == 0);
}
