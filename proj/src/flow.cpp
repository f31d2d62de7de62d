#include "phyloinv/flow.hpp"

#include <algorithm>
#include <iterator>

namespace phyloinv {

bool is_flow(const RootedTree& tree, const GroupSpec& group, const Flow& f) {
    if (f.size() != tree.edge_count())
        return false;
    for (const GroupElement& v : f.values())
        if (!group.contains(v))
            return false;
    for (std::size_t n = tree.leaf_count(); n < tree.tree().node_count(); ++n) {
        const int node = static_cast<int>(n);
        GroupElement balance = group.zero();
        if (int in = tree.parent_edge(node); in >= 0)
            balance = f[in];
        for (int c : tree.children(node))
            balance = group.sub(balance, f[tree.parent_edge(c)]);
        if (!group.is_zero(balance))
            return false;
    }
    return true;
}

Flow flow_from_leaf_assignment(const RootedTree& tree, const GroupSpec& group,
                               std::span<const GroupElement> leaf_values) {
    const std::size_t l = tree.leaf_count();
    if (leaf_values.size() != l)
        throw InputError("expected " + std::to_string(l) + " leaf values, got " + std::to_string(leaf_values.size()));
    GroupElement total = group.zero();
    for (const GroupElement& v : leaf_values)
        total = group.add(total, v);
    if (!group.is_zero(total))
        throw InputError("leaf values sum to " + to_string(total) + ", not to zero: no flow exists");

    std::vector<GroupElement> below(tree.tree().node_count(), group.zero());
    for (std::size_t i = 0; i < l; ++i)
        below[i] = leaf_values[i];
    const auto& order = tree.bfs_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int n = *it;
        if (int p = tree.parent(n); p >= 0 && !tree.tree().is_leaf(p))
            below[p] = group.add(below[p], below[n]);
    }
    std::vector<GroupElement> values;
    values.reserve(tree.edge_count());
    for (const DirectedEdge& e : tree.edges())
        values.push_back(below[e.child]);
    return Flow(std::move(values));
}

std::size_t flow_count(const RootedTree& tree, const GroupSpec& group, std::size_t cap) {
    std::size_t count = 1;
    for (std::size_t i = 0; i + 1 < tree.leaf_count(); ++i) {
        if (count > cap / group.order())
            throw ResourceLimitError("flow count " + std::to_string(group.order()) + "^" +
                                     std::to_string(tree.leaf_count() - 1) + " exceeds cap " + std::to_string(cap));
        count *= group.order();
    }
    return count;
}

std::vector<Flow> enumerate_flows(const RootedTree& tree, const GroupSpec& group, std::size_t cap) {
    const std::size_t count = flow_count(tree, group, cap);
    const std::size_t l = tree.leaf_count();
    const std::vector<GroupElement> elements = group.elements();
    std::vector<std::size_t> digits(l - 1, 0);
    std::vector<GroupElement> leaves(l);
    std::vector<Flow> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        GroupElement sum = group.zero();
        for (std::size_t i = 0; i + 1 < l; ++i) {
            leaves[i] = elements[digits[i]];
            sum = group.add(sum, leaves[i]);
        }
        leaves[l - 1] = group.neg(sum);
        out.push_back(flow_from_leaf_assignment(tree, group, leaves));
        for (std::size_t i = l - 1; i-- > 0;) {
            if (++digits[i] < elements.size())
                break;
            digits[i] = 0;
        }
    }
    return out;
}

std::size_t flow_index(const RootedTree& tree, const GroupSpec& group, const Flow& f) {
    if (f.size() != tree.edge_count())
        throw InputError("flow has " + std::to_string(f.size()) + " values, tree has " +
                         std::to_string(tree.edge_count()) + " edges");
    std::size_t index = 0;
    for (std::size_t i = 0; i + 1 < tree.leaf_count(); ++i)
        index = index * group.order() + group.index_of(f[i]);
    return index;
}

std::vector<int> vertex_point(const Flow& f, const GroupSpec& group) {
    const std::size_t g = group.order();
    std::vector<int> out(f.size() * g, 0);
    for (std::size_t e = 0; e < f.size(); ++e)
        out[e * g + group.index_of(f[e])] = 1;
    return out;
}

Binomial binomial_from_multisets(const RootedTree& tree, const GroupSpec& group, std::vector<Flow> m1,
                                 std::vector<Flow> m2) {
    if (m1.size() != m2.size())
        throw InputError("multisets have different sizes " + std::to_string(m1.size()) + " and " +
                         std::to_string(m2.size()));
    for (const auto* m : {&m1, &m2})
        for (const Flow& f : *m)
            if (!is_flow(tree, group, f))
                throw InputError("multiset contains a value sequence that is not a flow on the tree");
    std::vector<std::size_t> p1(m1.size()), p2(m2.size());
    for (std::size_t e = 0; e < tree.edge_count(); ++e) {
        for (std::size_t i = 0; i < m1.size(); ++i) {
            p1[i] = group.index_of(m1[i][e]);
            p2[i] = group.index_of(m2[i][e]);
        }
        std::sort(p1.begin(), p1.end());
        std::sort(p2.begin(), p2.end());
        if (p1 != p2) {
            const DirectedEdge& d = tree.edge(e);
            throw BinomialError("projections differ on edge " + std::to_string(e) + " (" + std::to_string(d.parent + 1) +
                                    "->" + std::to_string(d.child + 1) + ")",
                                static_cast<int>(e));
        }
    }
    std::sort(m1.begin(), m1.end());
    std::sort(m2.begin(), m2.end());
    Binomial b;
    std::set_difference(m1.begin(), m1.end(), m2.begin(), m2.end(), std::back_inserter(b.lhs_));
    std::set_difference(m2.begin(), m2.end(), m1.begin(), m1.end(), std::back_inserter(b.rhs_));
    return b;
}

// ---------------------------------------------------------------------------
// Joins

JoinContext make_join_context(const RootedTree& t1, int v1, const RootedTree& t2, int v2) {
    JoinedTree joined = join(t1.tree(), v1, t2.tree(), v2);
    RootedTree t(joined.tree, joined.n1);
    return JoinContext{t1, t2, std::move(joined), std::move(t)};
}

namespace {

void require_flow_on(const RootedTree& tree, const Flow& f, const char* which) {
    if (f.size() != tree.edge_count())
        throw InputError(std::string("flow does not live on ") + which);
}

void require_leaf(const Tree& tree, int leaf, int excluded, const char* which) {
    if (!tree.is_leaf(leaf))
        throw InputError(std::string("node ") + std::to_string(leaf) + " is not a leaf of " + which);
    if (leaf == excluded)
        throw InputError(std::string("leaf ") + std::to_string(leaf + 1) + " of " + which + " is the joined leaf");
}

} // namespace

GroupElement epsilon_value_t1(const JoinContext& ctx, const Flow& f1) {
    require_flow_on(ctx.t1, f1, "T1");
    return f1[ctx.joined.v1];
}

GroupElement epsilon_value_t2(const JoinContext& ctx, const GroupSpec& group, const Flow& f2) {
    require_flow_on(ctx.t2, f2, "T2");
    return group.neg(f2[ctx.joined.v2]);
}

GroupElement epsilon_value(const JoinContext& ctx, const Flow& f) {
    require_flow_on(ctx.t, f, "T");
    return f[ctx.t.canonical_index(ctx.joined.epsilon)];
}

Flow extend_e1(const JoinContext& ctx, const GroupSpec& group, const Flow& f1, int l2) {
    require_flow_on(ctx.t1, f1, "T1");
    require_leaf(ctx.t2.tree(), l2, ctx.joined.v2, "T2");
    std::vector<GroupElement> leaves(ctx.t.leaf_count(), group.zero());
    for (std::size_t n = 0; n < ctx.t1.leaf_count(); ++n)
        if (static_cast<int>(n) != ctx.joined.v1)
            leaves[ctx.joined.node_from_t1[n]] = f1[n];
    leaves[ctx.joined.node_from_t2[l2]] = f1[ctx.joined.v1];
    return flow_from_leaf_assignment(ctx.t, group, leaves);
}

Flow extend_e2(const JoinContext& ctx, const GroupSpec& group, const Flow& f2, int l1) {
    require_flow_on(ctx.t2, f2, "T2");
    require_leaf(ctx.t1.tree(), l1, ctx.joined.v1, "T1");
    std::vector<GroupElement> leaves(ctx.t.leaf_count(), group.zero());
    for (std::size_t n = 0; n < ctx.t2.leaf_count(); ++n)
        if (static_cast<int>(n) != ctx.joined.v2)
            leaves[ctx.joined.node_from_t2[n]] = f2[n];
    leaves[ctx.joined.node_from_t1[l1]] = f2[ctx.joined.v2];
    return flow_from_leaf_assignment(ctx.t, group, leaves);
}

Flow join_flows(const JoinContext& ctx, const GroupSpec& group, const Flow& f1, const Flow& f2) {
    if (epsilon_value_t1(ctx, f1) != epsilon_value_t2(ctx, group, f2))
        throw InputError("flows disagree on the joined edge: " + to_string(epsilon_value_t1(ctx, f1)) + " vs " +
                         to_string(epsilon_value_t2(ctx, group, f2)));
    std::vector<GroupElement> leaves(ctx.t.leaf_count(), group.zero());
    for (std::size_t n = 0; n < ctx.t1.leaf_count(); ++n)
        if (static_cast<int>(n) != ctx.joined.v1)
            leaves[ctx.joined.node_from_t1[n]] = f1[n];
    for (std::size_t n = 0; n < ctx.t2.leaf_count(); ++n)
        if (static_cast<int>(n) != ctx.joined.v2)
            leaves[ctx.joined.node_from_t2[n]] = f2[n];
    return flow_from_leaf_assignment(ctx.t, group, leaves);
}

Flow restrict_to_t1(const JoinContext& ctx, const GroupSpec& group, const Flow& f) {
    std::vector<GroupElement> leaves(ctx.t1.leaf_count());
    for (std::size_t n = 0; n < leaves.size(); ++n)
        if (static_cast<int>(n) != ctx.joined.v1)
            leaves[n] = f[ctx.joined.node_from_t1[n]];
    leaves[ctx.joined.v1] = epsilon_value(ctx, f);
    return flow_from_leaf_assignment(ctx.t1, group, leaves);
}

Flow restrict_to_t2(const JoinContext& ctx, const GroupSpec& group, const Flow& f) {
    std::vector<GroupElement> leaves(ctx.t2.leaf_count());
    for (std::size_t n = 0; n < leaves.size(); ++n)
        if (static_cast<int>(n) != ctx.joined.v2)
            leaves[n] = f[ctx.joined.node_from_t2[n]];
    leaves[ctx.joined.v2] = group.neg(epsilon_value(ctx, f));
    return flow_from_leaf_assignment(ctx.t2, group, leaves);
}

Flow special_flow(const JoinContext& ctx, const GroupSpec& group, int l1, int l2, const GroupElement& g0) {
    require_leaf(ctx.t1.tree(), l1, ctx.joined.v1, "T1");
    require_leaf(ctx.t2.tree(), l2, ctx.joined.v2, "T2");
    std::vector<GroupElement> leaves(ctx.t.leaf_count(), group.zero());
    leaves[ctx.joined.node_from_t2[l2]] = g0;
    leaves[ctx.joined.node_from_t1[l1]] = group.neg(g0);
    return flow_from_leaf_assignment(ctx.t, group, leaves);
}

Flow restrict_flow(const Flow& f, const RootedTree& from, const Contraction& c, const RootedTree& to,
                   const GroupSpec& group) {
    if (from.tree().edges() != c.source.edges() || from.leaf_count() != c.source.leaf_count() ||
        to.tree().edges() != c.tree.edges() || to.leaf_count() != c.tree.leaf_count())
        throw InputError("contraction record does not relate the given trees");
    require_flow_on(from, f, "the contraction source");
    std::vector<int> source_of(c.tree.edge_count(), -1);
    for (std::size_t s = 0; s < c.edge_map.size(); ++s)
        if (c.edge_map[s] >= 0)
            source_of[c.edge_map[s]] = static_cast<int>(s);
    std::vector<GroupElement> values;
    values.reserve(to.edge_count());
    for (const DirectedEdge& d : to.edges()) {
        const int k = from.canonical_index(source_of[d.tree_edge]);
        const DirectedEdge& src = from.edge(k);
        values.push_back(c.node_map[src.parent] == d.parent ? f[k] : group.neg(f[k]));
    }
    Flow out(std::move(values));
    if (!is_flow(to, group, out))
        throw InputError("restricted values violate conservation");
    return out;
}

} // namespace phyloinv
