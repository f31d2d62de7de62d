#include "phyloinv/pipeline.hpp"

#include "phyloinv/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace phyloinv {

std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::Tripod:
        return "tripod";
    case Provenance::JoinE1:
        return "join-E1";
    case Provenance::JoinE2:
        return "join-E2";
    case Provenance::JoinEdgeQuadric:
        return "join-edge-quadric";
    case Provenance::ClawSpecial:
        return "claw-special";
    case Provenance::ClawNonspecial:
        return "claw-nonspecial";
    case Provenance::ContractedFromTPrime:
        return "contracted-from-T'";
    }
    return "unknown";
}

std::size_t InvariantSet::max_degree() const {
    std::size_t d = 0;
    for (const Binomial& b : binomials)
        d = std::max(d, b.degree());
    return d;
}

namespace {

std::size_t codim_size(const Tree& t, const GroupSpec& g) { return codim(t, g).get_ui(); }

Binomial map_flows(const Binomial& b, const RootedTree& tree, const GroupSpec& group,
                   const std::function<Flow(const Flow&)>& fn) {
    std::vector<Flow> lhs, rhs;
    lhs.reserve(b.degree());
    rhs.reserve(b.degree());
    for (const Flow& f : b.lhs())
        lhs.push_back(fn(f));
    for (const Flow& f : b.rhs())
        rhs.push_back(fn(f));
    return binomial_from_multisets(tree, group, std::move(lhs), std::move(rhs));
}

// Calls fn for every assignment of `slots` free leaf values that are not all
// zero, in lexicographic order of element indices.
template <class Fn>
void for_each_nonzero_assignment(const std::vector<GroupElement>& elems, std::size_t slots, Fn fn) {
    std::vector<std::size_t> digits(slots, 0);
    while (true) {
        std::size_t i = slots;
        while (i > 0) {
            if (++digits[i - 1] < elems.size())
                break;
            digits[i - 1] = 0;
            --i;
        }
        if (i == 0)
            return; // wrapped back to all zeros
        fn(digits);
    }
}

} // namespace

Binomial transport(const Binomial& b, const RootedTree& from, const RootedTree& to, const GroupSpec& group,
                   const std::vector<int>& leaf_map) {
    if (leaf_map.size() != from.leaf_count() || from.leaf_count() != to.leaf_count())
        throw InputError("leaf map does not match the trees");
    std::vector<GroupElement> leaves(to.leaf_count());
    return map_flows(b, to, group, [&](const Flow& f) {
        for (std::size_t n = 0; n < from.leaf_count(); ++n)
            leaves[leaf_map[n]] = f[n];
        return flow_from_leaf_assignment(to, group, leaves);
    });
}

JoinResult join_invariants(const InvariantSet& s1, const InvariantSet& s2, int v1, int v2, int l1, int l2,
                           std::size_t flow_cap) {
    if (!(s1.group == s2.group))
        throw InputError("joined invariant sets use different groups");
    const GroupSpec& group = s1.group;
    for (const InvariantSet* s : {&s1, &s2})
        if (s->binomials.size() != codim_size(s->tree.tree(), group) || s->provenance.size() != s->binomials.size())
            throw InputError("input invariant set does not have codim many binomials");
    JoinContext ctx = make_join_context(s1.tree, v1, s2.tree, v2);
    if (l1 == v1 || !ctx.t1.tree().is_leaf(l1) || l2 == v2 || !ctx.t2.tree().is_leaf(l2))
        throw InputError("distinguished leaves must be leaves other than the joined ones");
    flow_count(ctx.t, group, flow_cap);

    InvariantSet out{ctx.t, group, {}, {}};
    JoinCount count;
    count.left_leaves = ctx.t1.leaf_count();
    count.right_leaves = ctx.t2.leaf_count();

    for (const Binomial& b : s1.binomials) {
        out.binomials.push_back(map_flows(b, ctx.t, group, [&](const Flow& f) { return extend_e1(ctx, group, f, l2); }));
        out.provenance.push_back(Provenance::JoinE1);
    }
    count.family1 = s1.binomials.size();
    for (const Binomial& b : s2.binomials) {
        out.binomials.push_back(map_flows(b, ctx.t, group, [&](const Flow& f) { return extend_e2(ctx, group, f, l1); }));
        out.provenance.push_back(Provenance::JoinE2);
    }
    count.family2 = s2.binomials.size();

    // Edge quadrics: f ranges over flows whose T1 leaves other than l1 are not
    // all neutral, and likewise on T2; f(epsilon) = g0.
    std::vector<int> free1, free2; // leaf nodes of T
    for (int n = 0; n < static_cast<int>(ctx.t1.leaf_count()); ++n)
        if (n != v1 && n != l1)
            free1.push_back(ctx.joined.node_from_t1[n]);
    for (int n = 0; n < static_cast<int>(ctx.t2.leaf_count()); ++n)
        if (n != v2 && n != l2)
            free2.push_back(ctx.joined.node_from_t2[n]);
    const int tl1 = ctx.joined.node_from_t1[l1];
    const int tl2 = ctx.joined.node_from_t2[l2];
    const auto elems = group.elements();
    std::vector<GroupElement> leaves(ctx.t.leaf_count());
    for (const GroupElement& g0 : elems) {
        const Flow fg = special_flow(ctx, group, l1, l2, g0);
        const Flow fg1 = restrict_to_t1(ctx, group, fg);
        const Flow fg2 = restrict_to_t2(ctx, group, fg);
        for_each_nonzero_assignment(elems, free1.size(), [&](const std::vector<std::size_t>& d1) {
            GroupElement sum1 = group.zero();
            for (std::size_t i = 0; i < free1.size(); ++i) {
                leaves[free1[i]] = elems[d1[i]];
                sum1 = group.add(sum1, elems[d1[i]]);
            }
            // The T1 side sums to -g0, the T2 side to g0.
            leaves[tl1] = group.sub(group.neg(g0), sum1);
            for_each_nonzero_assignment(elems, free2.size(), [&](const std::vector<std::size_t>& d2) {
                GroupElement sum2 = group.zero();
                for (std::size_t i = 0; i < free2.size(); ++i) {
                    leaves[free2[i]] = elems[d2[i]];
                    sum2 = group.add(sum2, elems[d2[i]]);
                }
                leaves[tl2] = group.sub(g0, sum2);
                const Flow f = flow_from_leaf_assignment(ctx.t, group, leaves);
                Flow a = join_flows(ctx, group, restrict_to_t1(ctx, group, f), fg2);
                Flow b = join_flows(ctx, group, fg1, restrict_to_t2(ctx, group, f));
                out.binomials.push_back(binomial_from_multisets(ctx.t, group, {f, fg}, {std::move(a), std::move(b)}));
                out.provenance.push_back(Provenance::JoinEdgeQuadric);
                ++count.family3;
            });
        });
    }
    count.codim = codim_size(ctx.t.tree(), group);
    return JoinResult{std::move(out), std::move(ctx), count};
}

namespace {

RootedTree claw_tree(std::size_t leaves) { return root_default(Tree::claw(leaves)); }

void require_claw_leaves(std::size_t leaves) {
    if (leaves < 4)
        throw InputError("claw quadrics need at least 4 leaves, got " + std::to_string(leaves));
}

Binomial claw_quadric(std::size_t leaves, const GroupSpec& group, const std::vector<GroupElement>& lq1,
                      const std::vector<GroupElement>& lq2, const std::vector<GroupElement>& rq1,
                      const std::vector<GroupElement>& rq2) {
    const RootedTree claw = claw_tree(leaves);
    auto flow = [&](const std::vector<GroupElement>& first4) {
        std::vector<GroupElement> v(leaves, group.zero());
        std::copy(first4.begin(), first4.end(), v.begin());
        return flow_from_leaf_assignment(claw, group, v);
    };
    return binomial_from_multisets(claw, group, {flow(lq1), flow(lq2)}, {flow(rq1), flow(rq2)});
}

// 1-based index of the factor b is a unit vector for, or 0.
std::size_t special_index(const GroupElement& b, const GroupSpec& group) {
    for (std::size_t j = 1; j <= group.rank(); ++j)
        if (b == group.unit_embed(j, 1))
            return j;
    return 0;
}

} // namespace

Binomial special_quadric(std::size_t j, std::size_t leaves, const GroupSpec& group) {
    require_claw_leaves(leaves);
    const GroupElement u = group.unit_embed(j, 1), mu = group.neg(u), z = group.zero();
    return claw_quadric(leaves, group, {u, z, mu, z}, {z, mu, z, u}, {z, z, mu, u}, {u, mu, z, z});
}

Binomial nonspecial_quadric(const GroupElement& b, std::size_t leaves, const GroupSpec& group) {
    require_claw_leaves(leaves);
    if (!group.contains(b) || group.is_zero(b))
        throw InputError("nonspecial quadric needs a nonzero element of " + group.to_string());
    if (special_index(b, group) != 0)
        throw InputError("element " + to_string(b) + " is special; use special_quadric");
    std::size_t j = group.rank();
    while (b[j - 1] == 0)
        --j;
    const GroupElement u = group.unit_embed(j, 1), z = group.zero();
    const GroupElement bu = group.sub(b, u), mb = group.neg(b), ub = group.sub(u, b);
    return claw_quadric(leaves, group, {u, z, bu, mb}, {z, bu, z, ub}, {z, z, bu, ub}, {u, bu, z, mb});
}

InvariantSet claw_invariants(std::size_t leaves, const GroupSpec& group, TripodMode mode, std::size_t flow_cap) {
    if (leaves < 3)
        throw InputError("a claw needs at least 3 leaves");
    const RootedTree claw = claw_tree(leaves);
    flow_count(claw, group, flow_cap);
    if (leaves == 3) {
        InvariantSet s{claw, group, tripod_invariants(group, mode), {}};
        s.provenance.assign(s.binomials.size(), Provenance::Tripod);
        return s;
    }
    // T' splits leaves 1, 2 off the centre: tripod {1, 2, v1} joined to the
    // (l-1)-claw at its first leaf. The join numbering gives T' the same leaf
    // labels as the claw.
    const InvariantSet tripod = claw_invariants(3, group, mode, flow_cap);
    const InvariantSet rest = claw_invariants(leaves - 1, group, mode, flow_cap);
    JoinResult tp = join_invariants(tripod, rest, 2, 0, 0, 1, flow_cap);
    const Contraction c = contract_interior_edge(tp.ctx.t.tree(), tp.ctx.joined.epsilon);
    const RootedTree contracted(c.tree, static_cast<int>(leaves));
    std::vector<int> identity(leaves);
    std::iota(identity.begin(), identity.end(), 0);

    InvariantSet out{claw, group, {}, {}};
    for (const Binomial& b : tp.set.binomials) {
        Binomial pulled = map_flows(b, contracted, group,
                                    [&](const Flow& f) { return restrict_flow(f, tp.ctx.t, c, contracted, group); });
        out.binomials.push_back(transport(pulled, contracted, claw, group, identity));
        out.provenance.push_back(Provenance::ContractedFromTPrime);
    }
    for (std::size_t k = 1; k < group.order(); ++k) {
        const GroupElement b = group.element_at(k);
        if (std::size_t j = special_index(b, group); j != 0) {
            out.binomials.push_back(special_quadric(j, leaves, group));
            out.provenance.push_back(Provenance::ClawSpecial);
        } else {
            out.binomials.push_back(nonspecial_quadric(b, leaves, group));
            out.provenance.push_back(Provenance::ClawNonspecial);
        }
    }
    return out;
}

namespace {

struct Generator {
    const GroupSpec& group;
    const GenerateOptions& options;
    std::optional<std::mt19937_64> rng;
    std::vector<JoinCount> joins;

    InvariantSet run(const RootedTree& t) {
        const std::size_t l = t.leaf_count();
        std::vector<int> identity(l);
        std::iota(identity.begin(), identity.end(), 0);
        if (t.tree().is_claw()) {
            InvariantSet c = claw_invariants(l, group, options.mode, options.flow_cap);
            InvariantSet out{t, group, {}, c.provenance};
            for (const Binomial& b : c.binomials)
                out.binomials.push_back(transport(b, c.tree, t, group, identity));
            return out;
        }
        const std::size_t e = pick_edge(t);
        const EdgeDecomposition d = decompose_at_edge(t, e);
        const InvariantSet s1 = run(d.t1);
        const InvariantSet s2 = run(d.t2);
        const int l1 = d.v1 == 0 ? 1 : 0;
        const int l2 = d.v2 == 0 ? 1 : 0;
        JoinResult j = join_invariants(s1, s2, d.v1, d.v2, l1, l2, options.flow_cap);
        joins.push_back(j.count);

        std::vector<int> back(l, -1); // leaf of the joined tree -> leaf of t
        for (std::size_t n = 0; n < d.t1.leaf_count(); ++n)
            if (static_cast<int>(n) != d.v1)
                back[j.ctx.joined.node_from_t1[n]] = d.t1_leaf_origin[n];
        for (std::size_t n = 0; n < d.t2.leaf_count(); ++n)
            if (static_cast<int>(n) != d.v2)
                back[j.ctx.joined.node_from_t2[n]] = d.t2_leaf_origin[n];
        InvariantSet out{t, group, {}, j.set.provenance};
        out.binomials.reserve(j.set.binomials.size());
        for (const Binomial& b : j.set.binomials)
            out.binomials.push_back(transport(b, j.set.tree, t, group, back));
        return out;
    }

    std::size_t pick_edge(const RootedTree& t) {
        std::vector<std::size_t> interior;
        for (std::size_t i = t.leaf_count(); i < t.edge_count(); ++i)
            interior.push_back(i);
        if (rng)
            return interior[(*rng)() % interior.size()];
        std::size_t best = t.edge_count(), best_leaves = 0;
        for (std::size_t i : interior) {
            if (t.edge(i).parent != t.root())
                continue;
            const std::size_t below = t.leaves_below(i).size();
            if (best == t.edge_count() || below > best_leaves) {
                best = i;
                best_leaves = below;
            }
        }
        return best;
    }
};

} // namespace

GenerateResult generate(const Tree& tree, const GroupSpec& group, const GenerateOptions& options) {
    const RootedTree t = root_default(tree);
    flow_count(t, group, options.flow_cap);
    Generator gen{group, options, std::nullopt, {}};
    if (options.seed)
        gen.rng.emplace(*options.seed);
    InvariantSet set = gen.run(t);
    return GenerateResult{std::move(set), std::move(gen.joins)};
}

} // namespace phyloinv
