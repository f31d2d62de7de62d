#include "phyloinv/lattice.hpp"

#include <doctest.h>

#include <random>

using namespace phyloinv;

namespace {

IntegerMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, long lo = -5, long hi = 5) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntegerMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = d(rng);
    return m;
}

bool is_diagonal(const IntegerMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != 0)
                return false;
    return true;
}

std::vector<SparseVector> sparse_rows(const IntegerMatrix& m) {
    std::vector<SparseVector> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        SparseVector v;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0)
                v.emplace_back(j, m(i, j));
        out.push_back(std::move(v));
    }
    return out;
}

LatticeBasis lattice(std::size_t dim, std::vector<std::vector<long long>> rows) {
    std::vector<SparseVector> v;
    for (auto& r : rows)
        v.push_back(to_sparse(r));
    return LatticeBasis::from_generators(dim, v);
}

} // namespace

TEST_CASE("hermite normal form of a small matrix") {
    HnfResult r = hnf(IntegerMatrix{{0, 2}, {2, 0}});
    CHECK(r.H == IntegerMatrix{{2, 0}, {0, 2}});
    CHECK(r.U * IntegerMatrix{{0, 2}, {2, 0}} == r.H);

    HnfResult s = hnf(IntegerMatrix{{2, 3}, {4, 5}});
    CHECK(s.H == IntegerMatrix{{2, 0}, {0, 1}});
}

TEST_CASE("hnf is unimodular and echelon on random matrices") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        IntegerMatrix a = random_matrix(6, 6, rng);
        HnfResult r = hnf(a);
        CHECK(r.U * a == r.H);
        CHECK(abs(determinant(r.U)) == 1);
        std::size_t last_pivot = 0;
        bool first = true;
        for (std::size_t i = 0; i < r.H.rows(); ++i) {
            std::size_t p = 0;
            while (p < r.H.cols() && r.H(i, p) == 0)
                ++p;
            if (p == r.H.cols())
                continue;
            CHECK(r.H(i, p) > 0);
            if (!first)
                CHECK(p > last_pivot);
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(r.H(k, p) >= 0);
                CHECK(r.H(k, p) < r.H(i, p));
            }
            last_pivot = p;
            first = false;
        }
    }
}

TEST_CASE("smith normal form") {
    IntegerMatrix a{{2, 0}, {0, 3}};
    SnfResult r = snf(a);
    CHECK(r.D == IntegerMatrix{{1, 0}, {0, 6}});
    CHECK(r.U * a * r.V == r.D);
    CHECK(abs(determinant(r.U)) == 1);
    CHECK(abs(determinant(r.V)) == 1);
    CHECK(elementary_divisors(a) == std::vector<Integer>{1, 6});

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        IntegerMatrix m = random_matrix(4 + trial % 3, 5, rng);
        SnfResult s = snf(m);
        CHECK(s.U * m * s.V == s.D);
        CHECK(is_diagonal(s.D));
        auto d = elementary_divisors(m);
        for (std::size_t i = 1; i < d.size(); ++i)
            CHECK(d[i] % d[i - 1] == 0);
        CHECK(d.size() == rank(m));
    }
}

TEST_CASE("determinant and rank") {
    CHECK(determinant(IntegerMatrix{{1, 2}, {3, 4}}) == -2);
    CHECK(determinant(IntegerMatrix::identity(4)) == 1);
    CHECK(rank(IntegerMatrix{{1, 2, 3}, {2, 4, 6}}) == 1);
    CHECK(rank(IntegerMatrix(3, 3)) == 0);
}

TEST_CASE("kernel lattices") {
    LatticeBasis k = kernel_lattice(IntegerMatrix{{1, 1, 1}});
    CHECK(k.rank() == 2);
    CHECK(lattice_equal(k, lattice(3, {{1, -1, 0}, {0, 1, -1}})));

    // Saturated even when the matrix has non-unit entries.
    LatticeBasis k2 = kernel_lattice(IntegerMatrix{{2, 4}});
    CHECK(lattice_equal(k2, lattice(2, {{-2, 1}})));

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 15; ++trial) {
        IntegerMatrix a = random_matrix(3, 7, rng, -3, 3);
        LatticeBasis kb = kernel_lattice(a);
        CHECK(kb.rank() == 7 - rank(a));
        for (const SparseVector& v : kb.rows())
            for (const Integer& x : image(a, v))
                CHECK(x == 0);
        auto ed = sparse_elementary_divisors(kb.rows(), 7);
        for (const Integer& d : ed)
            CHECK(d == 1);
    }
}

TEST_CASE("lattice equality, spanning and index") {
    LatticeBasis z2 = lattice(2, {{1, 0}, {0, 1}});
    LatticeBasis even = lattice(2, {{2, 0}, {0, 1}});
    LatticeBasis line = lattice(2, {{1, 1}});
    CHECK(lattice_equal(z2, lattice(2, {{1, 1}, {1, 2}})));
    CHECK_FALSE(lattice_equal(z2, even));
    CHECK(sublattice_index(z2, even).value() == 2);
    CHECK(sublattice_index(z2, z2).value() == 1);
    CHECK_FALSE(sublattice_index(z2, line).has_value());
    CHECK_THROWS_AS(sublattice_index(even, z2), InputError);

    CHECK(spans({to_sparse({2, 0}), to_sparse({3, 0}), to_sparse({0, 1})}, z2));
    CHECK_FALSE(spans({to_sparse({2, 0}), to_sparse({0, 1})}, z2));
    CHECK_FALSE(spans({to_sparse({2, 2})}, line));
    try {
        spans({to_sparse({1, 1}), to_sparse({1, 0})}, line);
        FAIL("expected NotInRationalSpan");
    } catch (const NotInRationalSpan& e) {
        CHECK(e.which() == 1);
    }

    CHECK_THROWS_AS(LatticeBasis::from_independent_rows(2, {to_sparse({1, 2}), to_sparse({2, 4})}), InputError);
    LatticeBasis gens = lattice(3, {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
    CHECK(gens.rank() == 2);
    CHECK(gens.hnf_matrix() == IntegerMatrix{{1, 0, 1}, {0, 1, 1}});
}

TEST_CASE("sparse elementary divisors agree with the dense computation") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        IntegerMatrix m = random_matrix(5, 6, rng, -2, 2);
        CHECK(sparse_elementary_divisors(sparse_rows(m), 6) == elementary_divisors(m));
    }
    CHECK(sparse_elementary_divisors({to_sparse({2, 0}), to_sparse({0, 3})}, 2) == std::vector<Integer>{1, 6});
    CHECK(sparse_elementary_divisors({}, 3).empty());
}

TEST_CASE("kernel span check") {
    IntegerMatrix a{{1, 1, 1}};
    KernelSpanCheck ok = check_kernel_span(a, {to_sparse({1, -1, 0}), to_sparse({0, 1, -1})});
    CHECK(ok.spans);
    CHECK(ok.all_in_kernel);
    CHECK(ok.kernel_rank == 2);
    CHECK(ok.torsion == 1);

    KernelSpanCheck doubled = check_kernel_span(a, {to_sparse({2, -2, 0}), to_sparse({0, 1, -1})});
    CHECK_FALSE(doubled.spans);
    CHECK(doubled.torsion == 2);

    KernelSpanCheck outside = check_kernel_span(a, {to_sparse({1, 0, 0}), to_sparse({0, 1, -1})});
    CHECK_FALSE(outside.spans);
    CHECK(outside.outside == std::vector<std::size_t>{0});

    KernelSpanCheck short_rank = check_kernel_span(a, {to_sparse({1, -1, 0})});
    CHECK_FALSE(short_rank.spans);
    CHECK(short_rank.generated_rank == 1);
}

TEST_CASE("factorizations honour a stop token") {
    std::stop_source src;
    src.request_stop();
    FactorOptions opts{src.get_token()};
    IntegerMatrix m{{1, 2}, {3, 4}};
    CHECK_THROWS_AS(hnf(m, opts), Cancelled);
    CHECK_THROWS_AS(snf(m, opts), Cancelled);
    CHECK_THROWS_AS(kernel_lattice(m, opts), Cancelled);
}
