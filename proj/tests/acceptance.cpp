// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include "phyloinv/json_io.hpp"
#include "phyloinv/oracle.hpp"
#include "phyloinv/pipeline.hpp"
#include "phyloinv/tripod.hpp"

#include "random_trees.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace phyloinv;

namespace {

constexpr std::size_t kBatteryCap = 100'000;

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (ok)
                detail << what;
            ok = false;
        }
    }
};

std::vector<SparseVector> as_vectors(const std::vector<AdmissibleMatrix>& ms) {
    std::vector<SparseVector> out;
    for (const AdmissibleMatrix& m : ms)
        out.push_back(to_sparse(m.flatten()));
    return out;
}

struct Instance {
    std::string tree_name;
    Tree tree;
    GroupSpec group;
};

std::vector<Instance> battery() {
    const std::vector<std::pair<std::string, std::string>> trees{
        {"tripod", "(1,2,3);"},
        {"quartet", "((1,2),(3,4));"},
        {"5-leaf trivalent (1,2|4,5)", "((1,2),3,(4,5));"},
        {"5-leaf trivalent (1,3|2,4)", "((1,3),5,(2,4));"},
        {"4-claw", "(1,2,3,4);"},
        {"5-claw", "(1,2,3,4,5);"},
        {"6-leaf caterpillar", "(((1,2),3),(4,(5,6)));"},
    };
    const char* groups[] = {"Z2", "Z3", "Z4", "Z5", "Z2xZ2", "Z2xZ3"};
    std::vector<Instance> out;
    for (const auto& [name, newick] : trees)
        for (const char* g : groups)
            out.push_back({name, parse_newick(newick), GroupSpec::parse(g)});
    return out;
}

bool over_cap(const Instance& in) {
    try {
        flow_count(root_default(in.tree), in.group, kBatteryCap);
        return false;
    } catch (const ResourceLimitError&) {
        return true;
    }
}

void criterion1(Outcome& o) {
    for (int g = 2; g <= 8; ++g) {
        GroupSpec group({g});
        auto basis = cyclic_basis(g);
        o.expect(basis.size() == static_cast<std::size_t>((g - 1) * (g - 2)), "wrong basis size for Z" + std::to_string(g));
        for (const AdmissibleMatrix& m : basis) {
            o.expect(is_admissible(m.entries(), group), "inadmissible matrix for Z" + std::to_string(g));
            o.expect(m.degree() <= g, "degree above g for Z" + std::to_string(g));
        }
        o.expect(spans(as_vectors(basis), adm_lattice(group)), "basis does not span adm(Z" + std::to_string(g) + ")");
    }
    o.detail << "g = 2..8";
}

void criterion2(Outcome& o) {
    // Displayed order: X(1,2), X(1,3), then matrices with unit K-entry at
    // (3,2), (3,3), (2,3), (2,2).
    const std::vector<std::pair<std::pair<int, int>, SquareMatrix>> displayed{
        {{1, 2}, {{0, 1, -1, 0}, {-1, 0, 1, 0}, {1, -1, 0, 0}, {0, 0, 0, 0}}},
        {{1, 3}, {{0, 1, 0, -1}, {-1, 0, 0, 1}, {0, 0, 0, 0}, {1, -1, 0, 0}}},
        {{3, 2}, {{1, 0, -1, 0}, {-1, 1, 0, 0}, {0, 0, 0, 0}, {0, -1, 1, 0}}},
        {{3, 3}, {{1, 0, 0, -1}, {0, 0, 0, 0}, {-1, 1, 0, 0}, {0, -1, 0, 1}}},
        {{2, 3}, {{1, 0, 0, -1}, {-1, 1, 0, 0}, {-1, 0, 0, 1}, {1, -1, 0, 0}}},
        {{2, 2}, {{0, 1, -1, 0}, {-1, 1, 0, 0}, {0, -1, 1, 0}, {1, -1, 0, 0}}},
    };
    for (const auto& [ij, m] : displayed)
        o.expect(x_matrix(4, ij.first, ij.second).entries() == m,
                 "X(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ") differs");
    auto basis = cyclic_basis(4);
    o.expect(basis.size() == 6, "cyclic_basis(4) does not have 6 matrices");
    for (const auto& [ij, m] : displayed)
        o.expect(std::find_if(basis.begin(), basis.end(), [&](const AdmissibleMatrix& x) { return x.entries() == m; }) !=
                     basis.end(),
                 "displayed matrix missing from cyclic_basis(4)");
    o.detail << "6/6 matrices entry-for-entry";
}

void criterion3(Outcome& o) {
    const SquareMatrix m{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}};
    GroupSpec z3({3});
    o.expect(is_admissible(m, z3), "example matrix not admissible");
    o.expect(matrix_degree(m) == 3, "example matrix degree is not 3");
    const std::string shown = "x[0,1,2]*x[1,2,0]*x[2,0,1] - x[0,2,1]*x[1,0,2]*x[2,1,0]";
    AdmissibleMatrix am(z3, m);
    // The displayed binomial labels x[i,j,-i-j] by (column, row) of the
    // displayed matrix; by the positive-entry rule on (row, column) the same
    // binomial comes out with its sides exchanged.
    o.expect(to_algebra_text(matrix_to_binomial(am.transpose())) == shown, "transposed reading differs");
    o.expect(to_algebra_text(matrix_to_binomial(am)) == "x[0,2,1]*x[1,0,2]*x[2,1,0] - x[0,1,2]*x[1,2,0]*x[2,0,1]",
             "row/column reading differs");
    o.detail << shown;
}

void criterion4(Outcome& o) {
    const std::vector<std::pair<GroupSpec, GroupSpec>> pairs{
        {GroupSpec({2}), GroupSpec({2})},    {GroupSpec({2}), GroupSpec({3})}, {GroupSpec({3}), GroupSpec({3})},
        {GroupSpec({2}), GroupSpec({4})},    {GroupSpec({2, 2}), GroupSpec({2})},
    };
    for (const auto& [g, h] : pairs) {
        const std::string name = g.to_string() + " x " + h.to_string();
        auto basis = product_basis(g, h, admissible_basis(g), admissible_basis(h));
        const std::size_t n = g.order() * h.order();
        o.expect(basis.size() == (n - 1) * (n - 2), "wrong size for " + name);
        const long long bound = std::max(3, std::max(g.max_factor(), h.max_factor()));
        GroupSpec gh = g.times(h);
        for (const AdmissibleMatrix& m : basis) {
            o.expect(is_admissible(m.entries(), gh), "inadmissible matrix for " + name);
            o.expect(m.degree() <= bound, "degree bound exceeded for " + name);
        }
        o.expect(spans(as_vectors(basis), adm_lattice(gh)), "no spanning for " + name);
    }
    o.detail << "5 group pairs";
}

struct BatteryStats {
    std::size_t verified = 0, skipped = 0, joins = 0, lattice = 0;
    std::vector<std::string> skips;
};

void criterion5(Outcome& o, Outcome& joins, Outcome& lattice, BatteryStats& stats) {
    for (const Instance& in : battery()) {
        const std::string name = in.tree_name + " / " + in.group.to_string();
        if (over_cap(in)) {
            ++stats.skipped;
            stats.skips.push_back(name);
            std::cout << "  skip: " << name << " (flow count above " << kBatteryCap << ")\n";
            continue;
        }
        GenerateOptions gen;
        gen.flow_cap = kBatteryCap;
        GenerateResult r = generate(in.tree, in.group, gen);
        VerifyOptions vo;
        vo.flow_cap = kBatteryCap;
        VerificationReport rep = verify_complete_intersection(r.set, vo);
        o.expect(rep.pass(), "fails: " + name);
        ++stats.verified;
        std::cout << "  " << (rep.pass() ? "ok  " : "FAIL") << "  " << name << ": " << rep.actual_count
                  << " invariants, codim " << rep.expected_codim.get_str() << ", max degree " << rep.max_degree
                  << ", torsion " << rep.torsion.get_str() << "\n";
        for (const JoinCount& c : r.joins) {
            joins.expect(c.total() == c.codim, "join count mismatch in " + name);
            ++stats.joins;
        }
        lattice.expect(rep.lattice_info && rep.lattice_info->ok(), "lattice quantities differ for " + name);
        ++stats.lattice;
    }
    o.detail << stats.verified << " verified, " << stats.skipped << " skipped";
    joins.detail << stats.joins << " joins";
    lattice.detail << stats.lattice << " instances";
}

void criterion8(Outcome& o) {
    for (const char* shape : {"((1,2),(3,4));", "((1,2),3,(4,5));"}) {
        InvariantSet s = generate(parse_newick(shape), GroupSpec({3})).set;
        VerifyOptions vo;
        vo.with_lattice_info = false;
        o.expect(verify_complete_intersection(s, vo).pass(), "baseline set fails");

        InvariantSet doubled = s;
        const Binomial& b = s.binomials.front();
        std::vector<Flow> l = b.lhs(), r = b.rhs();
        l.insert(l.end(), b.lhs().begin(), b.lhs().end());
        r.insert(r.end(), b.rhs().begin(), b.rhs().end());
        doubled.binomials.front() = binomial_from_multisets(s.tree, s.group, l, r);
        VerificationReport d = verify_complete_intersection(doubled, vo);
        o.expect(!d.spans_ok && d.count_ok, "doubling did not flip spans_ok only");

        InvariantSet removed = s;
        removed.binomials.pop_back();
        removed.provenance.pop_back();
        VerificationReport rm = verify_complete_intersection(removed, vo);
        o.expect(!rm.count_ok && !rm.spans_ok, "removal did not flip count_ok and spans_ok");
    }
    o.detail << "doubling and removal on 2 trees";
}

void criterion9(Outcome& o) {
    std::mt19937_64 rng(20261018);
    std::size_t trees = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t leaves = 3 + static_cast<std::size_t>(trial % 10);
        auto r = testing::random_tree(leaves, rng);
        Tree parsed = parse_newick(r.newick);
        o.expect(same_topology(parsed, r.tree), "round trip lost topology: " + r.newick);
        const std::string canon = parsed.to_newick();
        o.expect(parse_newick(canon).to_newick() == canon, "canonical form unstable: " + canon);
        ++trees;
    }
    const std::vector<std::pair<std::string, std::size_t>> rejects{
        {"((1,2),(1,3));", 8},  {"((1,2),((3)),4);", 7}, {"((1,2),3", 8}, {"((1,2)3);", 6},
        {"((1,,2),3);", 4},     {"(1,2,3)", 7},          {"(1,2,a);", 5}, {"(1,2,4);", 5},
        {"(1,2,3); x", 9},      {"(1,2:x,3);", 5},
    };
    for (const auto& [text, pos] : rejects) {
        try {
            parse_newick(text);
            o.expect(false, "accepted " + text);
        } catch (const NewickError& e) {
            o.expect(e.position() == pos, "wrong position for " + text + ": " + std::to_string(e.position()));
        }
    }
    o.detail << trees << " random trees, " << rejects.size() << " rejections";
}

} // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const std::string& title, const std::function<void(Outcome&)>& body) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            body(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail << " exception: " << e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %d %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), o.detail.str().c_str(), secs);
        std::fflush(stdout);
        failures += !o.ok;
    };

    report(1, "cyclic bases span adm(Z_g)", criterion1);
    report(2, "Z4 X-matrices", criterion2);
    report(3, "Z3 admissible matrix and binomial", criterion3);
    report(4, "product bases span adm(G x H)", criterion4);

    Outcome joins, lattice;
    BatteryStats stats;
    report(5, "battery complete intersections", [&](Outcome& o) { criterion5(o, joins, lattice, stats); });
    std::printf("[%s] 6 join count identity: %s (within criterion 5)\n", joins.ok ? "PASS" : "FAIL",
                joins.detail.str().c_str());
    std::printf("[%s] 7 lattice dimension and index: %s (within criterion 5)\n", lattice.ok ? "PASS" : "FAIL",
                lattice.detail.str().c_str());
    failures += !joins.ok + !lattice.ok;

    report(8, "negative controls", criterion8);
    report(9, "newick round trip and rejections", criterion9);

    std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
