#pragma once

#include "phyloinv/flow.hpp"
#include "phyloinv/tripod.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace phyloinv {

/// Which construction produced a binomial (the outermost one).
enum class Provenance {
    Tripod,
    JoinE1,
    JoinE2,
    JoinEdgeQuadric,
    ClawSpecial,
    ClawNonspecial,
    ContractedFromTPrime,
};

std::string to_string(Provenance p);

struct InvariantSet {
    RootedTree tree;
    GroupSpec group;
    std::vector<Binomial> binomials;
    std::vector<Provenance> provenance; // parallel to binomials

    std::size_t size() const noexcept { return binomials.size(); }
    std::size_t max_degree() const;
};

/// Sizes of the three join families next to the codimension of the joined
/// tree; they agree exactly when the count identity holds.
struct JoinCount {
    std::size_t left_leaves = 0, right_leaves = 0; // l1, l2 of the factors
    std::size_t family1 = 0, family2 = 0, family3 = 0;
    std::size_t codim = 0;
    std::size_t total() const noexcept { return family1 + family2 + family3; }
};

struct JoinResult {
    InvariantSet set; // on ctx.t
    JoinContext ctx;
    JoinCount count;
};

/// Invariants of T1 * T2 from those of T1 and T2: E1-extensions of S1,
/// E2-extensions of S2, and the edge quadrics around epsilon. l1 and l2 are
/// leaves of T1 and T2 other than v1 and v2.
JoinResult join_invariants(const InvariantSet& s1, const InvariantSet& s2, int v1, int v2, int l1, int l2,
                           std::size_t flow_cap = kDefaultFlowCap);

/// The claw quadric for b = 1_j (j is 1-based), on root_default(claw(l)).
Binomial special_quadric(std::size_t j, std::size_t leaves, const GroupSpec& group);
/// The claw quadric for b not zero and not any 1_j.
Binomial nonspecial_quadric(const GroupElement& b, std::size_t leaves, const GroupSpec& group);

/// Complete intersection for the l-leaf claw (rooted at its centre).
InvariantSet claw_invariants(std::size_t leaves, const GroupSpec& group, TripodMode mode = TripodMode::DirectCyclic,
                             std::size_t flow_cap = kDefaultFlowCap);

struct GenerateOptions {
    TripodMode mode = TripodMode::DirectCyclic;
    /// When set, the interior edge to split at is drawn at random from this
    /// seed instead of the default largest-subtree rule.
    std::optional<std::uint64_t> seed;
    std::size_t flow_cap = kDefaultFlowCap;
};

struct GenerateResult {
    InvariantSet set;
    std::vector<JoinCount> joins; // every join performed, innermost first
};

/// Invariants for an arbitrary tree, on root_default(tree).
GenerateResult generate(const Tree& tree, const GroupSpec& group, const GenerateOptions& options = {});

/// Re-expresses a binomial on `from` as one on `to`, where leaf node n of
/// `from` becomes leaf node leaf_map[n] of `to`.
Binomial transport(const Binomial& b, const RootedTree& from, const RootedTree& to, const GroupSpec& group,
                   const std::vector<int>& leaf_map);

} // namespace phyloinv
