#pragma once

#include "phyloinv/errors.hpp"
#include "phyloinv/group.hpp"
#include "phyloinv/tree.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace phyloinv {

/// A group-based flow: one element per edge of a RootedTree, in canonical
/// edge order. Since the first l canonical edges are the pendant edges
/// (directed towards the leaves), the first l values are the leaf values.
class Flow {
public:
    Flow() = default;
    explicit Flow(std::vector<GroupElement> values) : values_(std::move(values)) {}

    const std::vector<GroupElement>& values() const noexcept { return values_; }
    const GroupElement& operator[](std::size_t edge) const { return values_[edge]; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const GroupElement> leaf_values(std::size_t leaf_count) const {
        return std::span<const GroupElement>(values_).first(leaf_count);
    }

    friend bool operator==(const Flow&, const Flow&) = default;
    friend auto operator<=>(const Flow&, const Flow&) = default;

private:
    std::vector<GroupElement> values_;
};

/// True iff `f` has one group element per edge and conserves at every
/// interior node (inflow equals outflow).
bool is_flow(const RootedTree& tree, const GroupSpec& group, const Flow& f);

/// The unique flow with the given pendant-edge values. Interior edges carry
/// the sum of the leaf values below them. Throws InputError unless the
/// values sum to zero.
Flow flow_from_leaf_assignment(const RootedTree& tree, const GroupSpec& group,
                               std::span<const GroupElement> leaf_values);

/// g^(l-1), or ResourceLimitError when it exceeds `cap`.
std::size_t flow_count(const RootedTree& tree, const GroupSpec& group, std::size_t cap = kDefaultFlowCap);

/// All flows, lexicographic in the leaf assignment of leaves 1..l-1 (the
/// last leaf's value is forced).
std::vector<Flow> enumerate_flows(const RootedTree& tree, const GroupSpec& group, std::size_t cap = kDefaultFlowCap);

/// Position of `f` in enumerate_flows order.
std::size_t flow_index(const RootedTree& tree, const GroupSpec& group, const Flow& f);

/// Q_f: 0/1 vector indexed by (edge, element) = edge * g + index(element).
std::vector<int> vertex_point(const Flow& f, const GroupSpec& group);

/// A relation m = m' between two equal-size multisets of flows with equal
/// projections on every edge. Stored reduced: common flows are cancelled
/// and each side is sorted.
class Binomial {
public:
    const std::vector<Flow>& lhs() const noexcept { return lhs_; }
    const std::vector<Flow>& rhs() const noexcept { return rhs_; }
    std::size_t degree() const noexcept { return lhs_.size(); }
    bool is_degenerate() const noexcept { return lhs_.empty(); }

    friend bool operator==(const Binomial&, const Binomial&) = default;

private:
    friend Binomial binomial_from_multisets(const RootedTree&, const GroupSpec&, std::vector<Flow>, std::vector<Flow>);
    std::vector<Flow> lhs_, rhs_;
};

class BinomialError : public InputError {
public:
    BinomialError(const std::string& what, int edge) : InputError(what), edge_(edge) {}
    /// Canonical index of the offending edge, or -1.
    int edge() const noexcept { return edge_; }

private:
    int edge_;
};

/// Validates that pi_e(m1) = pi_e(m2) for every edge and returns the reduced
/// binomial. Equal multisets give a degenerate (degree 0) binomial.
Binomial binomial_from_multisets(const RootedTree& tree, const GroupSpec& group, std::vector<Flow> m1,
                                 std::vector<Flow> m2);

// ---------------------------------------------------------------------------
// Flows on a joined tree T = T1 * T2.
//
// T is rooted at n1 (the T1-side endpoint of epsilon), so epsilon is directed
// from the T1 side to the T2 side. The value a T1 flow puts on epsilon is its
// value at leaf v1; a T2 flow's is the negation of its value at v2 (the
// pendant edge of v2 points away from epsilon).

struct JoinContext {
    RootedTree t1;
    RootedTree t2;
    JoinedTree joined;
    RootedTree t;
};

JoinContext make_join_context(const RootedTree& t1, int v1, const RootedTree& t2, int v2);

/// Value on epsilon (directed T1 -> T2) of a flow on T1, T2 or T.
GroupElement epsilon_value_t1(const JoinContext& ctx, const Flow& f1);
GroupElement epsilon_value_t2(const JoinContext& ctx, const GroupSpec& group, const Flow& f2);
GroupElement epsilon_value(const JoinContext& ctx, const Flow& f);

/// E_1(f): agrees with f on T1, carries f's epsilon value along the path to
/// leaf l2 of T2 and is neutral elsewhere on T2.
Flow extend_e1(const JoinContext& ctx, const GroupSpec& group, const Flow& f1, int l2);
/// E_2(f) relative to leaf l1 of T1.
Flow extend_e2(const JoinContext& ctx, const GroupSpec& group, const Flow& f2, int l1);

/// f1 * f2; throws InputError when they disagree on epsilon.
Flow join_flows(const JoinContext& ctx, const GroupSpec& group, const Flow& f1, const Flow& f2);
Flow restrict_to_t1(const JoinContext& ctx, const GroupSpec& group, const Flow& f);
Flow restrict_to_t2(const JoinContext& ctx, const GroupSpec& group, const Flow& f);

/// f_{g0}: g0 along the path n1 -> l2, -g0 along n1 -> l1, neutral elsewhere.
/// l1 is a leaf of T1 and l2 a leaf of T2 (their own numbering).
Flow special_flow(const JoinContext& ctx, const GroupSpec& group, int l1, int l2, const GroupElement& g0);

/// Restriction of a flow on c.source (rooted as `from`) to the contracted
/// tree (rooted as `to`): contracted-edge coordinates are dropped and the
/// rest re-oriented to `to`.
Flow restrict_flow(const Flow& f, const RootedTree& from, const Contraction& c, const RootedTree& to,
                   const GroupSpec& group);

} // namespace phyloinv
