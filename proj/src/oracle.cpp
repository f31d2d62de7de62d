#include "phyloinv/oracle.hpp"

#include "phyloinv/pipeline.hpp"
#include "phyloinv/tripod.hpp"

#include <algorithm>
#include <map>

namespace phyloinv {

Integer codim(const Tree& tree, const GroupSpec& group) {
    Integer g = static_cast<unsigned long>(group.order());
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), g.get_mpz_t(), tree.leaf_count() - 1);
    return power - 1 - (g - 1) * static_cast<unsigned long>(tree.edge_count());
}

IntegerMatrix monomial_map_matrix(const RootedTree& tree, const GroupSpec& group, std::size_t flow_cap) {
    const std::vector<Flow> flows = enumerate_flows(tree, group, flow_cap);
    const std::size_t g = group.order();
    IntegerMatrix a(tree.edge_count() * g, flows.size());
    for (std::size_t c = 0; c < flows.size(); ++c)
        for (std::size_t e = 0; e < tree.edge_count(); ++e)
            a(e * g + group.index_of(flows[c][e]), c) = 1;
    return a;
}

LatticeBasis oracle_kernel(const RootedTree& tree, const GroupSpec& group, std::size_t flow_cap,
                           const FactorOptions& opts) {
    return kernel_lattice(monomial_map_matrix(tree, group, flow_cap), opts);
}

LatticeBasis adm_lattice(const GroupSpec& group, const FactorOptions& opts) {
    return kernel_lattice(admissibility_conditions(group), opts);
}

SparseVector exponent_vector(const Binomial& b, const RootedTree& tree, const GroupSpec& group) {
    std::map<std::size_t, long> counts;
    for (const Flow& f : b.lhs())
        ++counts[flow_index(tree, group, f)];
    for (const Flow& f : b.rhs())
        --counts[flow_index(tree, group, f)];
    SparseVector v;
    for (auto [i, c] : counts)
        if (c != 0)
            v.emplace_back(i, Integer(c));
    return v;
}

LatticeInfo lattice_report(const RootedTree& tree, const GroupSpec& group, std::size_t flow_cap,
                           const FactorOptions& opts) {
    const std::size_t g = group.order(), e = tree.edge_count(), dim = e * g;
    std::vector<SparseVector> m0;
    for (std::size_t edge = 0; edge < e; ++edge)
        for (std::size_t k = 1; k < g; ++k)
            m0.push_back({{edge * g, Integer(-1)}, {edge * g + k, Integer(1)}});
    const LatticeBasis m0_basis = LatticeBasis::from_independent_rows(dim, std::move(m0));

    const std::vector<Flow> flows = enumerate_flows(tree, group, flow_cap);
    auto point = [&](const Flow& f) {
        std::vector<long long> q(dim, 0);
        for (std::size_t edge = 0; edge < e; ++edge)
            q[edge * g + group.index_of(f[edge])] = 1;
        return q;
    };
    const std::vector<long long> q0 = point(flows.front());
    std::vector<SparseVector> diffs;
    diffs.reserve(flows.size());
    for (std::size_t i = 1; i < flows.size(); ++i) {
        std::vector<long long> q = point(flows[i]);
        for (std::size_t c = 0; c < dim; ++c)
            q[c] -= q0[c];
        diffs.push_back(to_sparse(q));
    }
    const LatticeBasis m0_tilde = LatticeBasis::from_generators(dim, diffs, opts);

    LatticeInfo info;
    info.dim_m0_tilde = m0_tilde.rank();
    info.expected_dim = (g - 1) * e;
    info.index = sublattice_index(m0_basis, m0_tilde, opts);
    Integer go = static_cast<unsigned long>(g);
    mpz_pow_ui(info.expected_index.get_mpz_t(), go.get_mpz_t(), tree.tree().interior_node_count());
    return info;
}

VerificationReport verify_complete_intersection(const InvariantSet& set, const VerifyOptions& options) {
    VerificationReport r;
    const RootedTree& tree = set.tree;
    const GroupSpec& group = set.group;

    r.expected_codim = codim(tree.tree(), group);
    r.actual_count = set.binomials.size();
    r.count_ok = Integer(static_cast<unsigned long>(r.actual_count)) == r.expected_codim;
    if (!r.count_ok)
        r.failures.push_back("count " + std::to_string(r.actual_count) + " differs from codim " +
                             r.expected_codim.get_str());

    r.degree_bound = static_cast<std::size_t>(std::max(3, group.max_factor()));
    r.degree_bound_ok = true;
    for (std::size_t i = 0; i < set.binomials.size(); ++i) {
        const std::size_t d = set.binomials[i].degree();
        r.max_degree = std::max(r.max_degree, d);
        if (d > r.degree_bound) {
            r.degree_bound_ok = false;
            r.failures.push_back("binomial " + std::to_string(i) + " has degree " + std::to_string(d) +
                                 " above bound " + std::to_string(r.degree_bound));
        }
    }

    const IntegerMatrix a = monomial_map_matrix(tree, group, options.flow_cap);
    std::vector<SparseVector> vectors;
    vectors.reserve(set.binomials.size());
    for (const Binomial& b : set.binomials)
        vectors.push_back(exponent_vector(b, tree, group));
    const KernelSpanCheck check = check_kernel_span(a, vectors, options.factor);
    r.kernel_membership_ok = check.all_in_kernel;
    for (std::size_t i : check.outside)
        r.failures.push_back("binomial " + std::to_string(i) + " is not a relation of the monomial map");
    r.kernel_rank = check.kernel_rank;
    r.generated_rank = check.generated_rank;
    r.torsion = check.torsion;
    r.spans_ok = check.spans;
    if (Integer(static_cast<unsigned long>(r.kernel_rank)) != r.expected_codim)
        r.failures.push_back("oracle kernel rank " + std::to_string(r.kernel_rank) + " differs from codim " +
                             r.expected_codim.get_str());
    if (!r.spans_ok) {
        if (r.generated_rank != r.kernel_rank)
            r.failures.push_back("exponent vectors have rank " + std::to_string(r.generated_rank) +
                                 ", kernel has rank " + std::to_string(r.kernel_rank));
        if (r.torsion != 1)
            r.failures.push_back("exponent vectors generate a sublattice of index " + r.torsion.get_str() +
                                 " in their saturation");
    }
    if (options.with_lattice_info)
        r.lattice_info = lattice_report(tree, group, options.flow_cap, options.factor);
    return r;
}

} // namespace phyloinv
