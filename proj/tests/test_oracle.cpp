#include "phyloinv/oracle.hpp"
#include "phyloinv/pipeline.hpp"

#include <doctest.h>

using namespace phyloinv;

namespace {

const char* const kShapes[] = {"(1,2,3);", "((1,2),(3,4));", "(1,2,3,4);", "((1,2),3,(4,5));", "((1,2),(3,4,5));"};

std::vector<SparseVector> exponents(const InvariantSet& s) {
    std::vector<SparseVector> out;
    for (const Binomial& b : s.binomials)
        out.push_back(exponent_vector(b, s.tree, s.group));
    return out;
}

} // namespace

TEST_CASE("monomial map of the tripod over Z2") {
    RootedTree t = root_default(Tree::claw(3));
    IntegerMatrix a = monomial_map_matrix(t, GroupSpec({2}));
    CHECK(a.rows() == 6);
    CHECK(a.cols() == 4);
    for (std::size_t c = 0; c < a.cols(); ++c) {
        Integer sum = 0;
        for (std::size_t r = 0; r < a.rows(); ++r)
            sum += a(r, c);
        CHECK(sum == 3);
    }
    CHECK(rank(monomial_map_matrix(t, GroupSpec({3}))) == 7);
}

TEST_CASE("kernel rank equals the codimension formula") {
    CHECK(codim(Tree::claw(3), GroupSpec({5})) == 12);
    CHECK(codim(parse_newick("((1,2),3,(4,5));"), GroupSpec({2})) == 8);
    CHECK(codim(Tree::claw(4), GroupSpec({3})) == 18);
    CHECK(oracle_kernel(root_default(Tree::claw(3)), GroupSpec({2})).rank() == 0);
    CHECK(oracle_kernel(root_default(parse_newick("((1,2),(3,4));")), GroupSpec({2})).rank() == 2);
    CHECK(oracle_kernel(root_default(Tree::claw(3)), GroupSpec({2, 2})).rank() == 6);
    for (const char* shape : kShapes)
        for (int g : {2, 3}) {
            Tree t = parse_newick(shape);
            CHECK(oracle_kernel(root_default(t), GroupSpec({g})).rank() == codim(t, GroupSpec({g})));
        }
}

TEST_CASE("adm lattice rank") {
    for (int g = 2; g <= 6; ++g)
        CHECK(adm_lattice(GroupSpec({g})).rank() == static_cast<std::size_t>((g - 1) * (g - 2)));
}

TEST_CASE("lattice report quantities") {
    LatticeInfo tri3 = lattice_report(root_default(Tree::claw(3)), GroupSpec({3}));
    CHECK(tri3.dim_m0_tilde == 6);
    CHECK(tri3.index.value() == 3);
    CHECK(tri3.ok());
    LatticeInfo quartet = lattice_report(root_default(parse_newick("((1,2),(3,4));")), GroupSpec({2}));
    CHECK(quartet.dim_m0_tilde == 5);
    CHECK(quartet.index.value() == 4);
    CHECK(quartet.expected_index == 4);
    LatticeInfo tri2 = lattice_report(root_default(Tree::claw(3)), GroupSpec({2}));
    CHECK(tri2.dim_m0_tilde == 3);
    CHECK(tri2.index.value() == 2);
    CHECK(lattice_report(root_default(Tree::claw(4)), GroupSpec({2, 2})).ok());
}

TEST_CASE("verification of generated sets and sabotage") {
    InvariantSet s = generate(parse_newick("((1,2),(3,4));"), GroupSpec({3})).set;
    VerificationReport ok = verify_complete_intersection(s);
    CHECK(ok.pass());
    CHECK(ok.torsion == 1);
    CHECK(ok.failures.empty());
    REQUIRE(ok.lattice_info);
    CHECK(ok.lattice_info->ok());

    InvariantSet tri = generate(Tree::claw(3), GroupSpec({4})).set;
    CHECK(tri.size() == 6);
    CHECK(verify_complete_intersection(tri).pass());

    // Doubling one exponent vector: a binomial m^2 - m'^2.
    InvariantSet doubled = s;
    {
        const Binomial& b = doubled.binomials[0];
        std::vector<Flow> l = b.lhs(), r = b.rhs();
        l.insert(l.end(), b.lhs().begin(), b.lhs().end());
        r.insert(r.end(), b.rhs().begin(), b.rhs().end());
        doubled.binomials[0] = binomial_from_multisets(s.tree, s.group, l, r);
    }
    VerificationReport d = verify_complete_intersection(doubled);
    CHECK(d.count_ok);
    CHECK(d.kernel_membership_ok);
    CHECK_FALSE(d.spans_ok);
    CHECK(d.torsion == 2);
    CHECK_FALSE(d.pass());

    InvariantSet removed = s;
    removed.binomials.pop_back();
    removed.provenance.pop_back();
    VerificationReport r = verify_complete_intersection(removed);
    CHECK_FALSE(r.count_ok);
    CHECK_FALSE(r.spans_ok);
    CHECK_FALSE(r.failures.empty());
}

TEST_CASE("span check agrees with an explicit kernel basis") {
    for (const char* shape : kShapes)
        for (int g : {2, 3}) {
            GroupSpec group({g});
            InvariantSet s = generate(parse_newick(shape), group).set;
            IntegerMatrix a = monomial_map_matrix(s.tree, group);
            auto vecs = exponents(s);
            KernelSpanCheck c = check_kernel_span(a, vecs);
            LatticeBasis k = kernel_lattice(a);
            CHECK(c.kernel_rank == k.rank());
            CHECK(c.spans == spans(vecs, k));
            CHECK(c.spans);
            if (vecs.size() > 1) {
                vecs.pop_back();
                CHECK(check_kernel_span(a, vecs).spans == spans(vecs, k));
            }
        }
}

TEST_CASE("exponent vectors index flows in enumeration order") {
    RootedTree t = root_default(Tree::claw(3));
    GroupSpec g({3});
    Binomial b = tripod_invariants(g)[0];
    SparseVector v = exponent_vector(b, t, g);
    Integer total = 0;
    for (auto& [i, x] : v) {
        CHECK(i < 9);
        total += x;
    }
    CHECK(total == 0);
}
