#pragma once

#include "phyloinv/flow.hpp"
#include "phyloinv/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace phyloinv {

struct InvariantSet;

/// g^(l-1) - 1 - (g-1)e.
Integer codim(const Tree& tree, const GroupSpec& group);

/// (e*g) x g^(l-1) matrix whose column for flow f is Q_f, columns in
/// enumerate_flows order.
IntegerMatrix monomial_map_matrix(const RootedTree& tree, const GroupSpec& group,
                                  std::size_t flow_cap = kDefaultFlowCap);

/// Kernel lattice of the monomial map: the exponent lattice of all Laurent
/// binomial relations among the x_f.
LatticeBasis oracle_kernel(const RootedTree& tree, const GroupSpec& group, std::size_t flow_cap = kDefaultFlowCap,
                           const FactorOptions& opts = {});

/// adm(G) as the kernel of the three admissibility conditions.
LatticeBasis adm_lattice(const GroupSpec& group, const FactorOptions& opts = {});

/// Multiplicity in lhs minus multiplicity in rhs, indexed by flow_index.
SparseVector exponent_vector(const Binomial& b, const RootedTree& tree, const GroupSpec& group);

struct LatticeInfo {
    std::size_t dim_m0_tilde = 0;
    std::size_t expected_dim = 0;           // (g-1)e
    std::optional<Integer> index;            // (M0 : M0~), nullopt if infinite
    Integer expected_index = 0;             // g^|N|
    bool ok() const { return dim_m0_tilde == expected_dim && index && *index == expected_index; }
};

/// Builds M0 (per-edge-block coordinate sums zero) and M0~ (differences of
/// vertex points) and compares their dimension and index with the closed
/// forms.
LatticeInfo lattice_report(const RootedTree& tree, const GroupSpec& group, std::size_t flow_cap = kDefaultFlowCap,
                           const FactorOptions& opts = {});

struct VerificationReport {
    bool count_ok = false;
    bool kernel_membership_ok = false;
    bool spans_ok = false;
    bool degree_bound_ok = false;
    Integer expected_codim = 0;
    std::size_t actual_count = 0;
    std::size_t kernel_rank = 0;    // cols - rank(monomial map)
    std::size_t generated_rank = 0; // rank of the exponent vectors
    Integer torsion = 1;            // index of the generated lattice in its saturation
    std::size_t max_degree = 0;
    std::size_t degree_bound = 0;
    std::vector<std::string> failures;
    std::optional<LatticeInfo> lattice_info;

    bool pass() const noexcept { return count_ok && kernel_membership_ok && spans_ok && degree_bound_ok; }
};

struct VerifyOptions {
    std::size_t flow_cap = kDefaultFlowCap;
    bool with_lattice_info = true;
    FactorOptions factor;
};

/// Checks count = codim, A x = 0 for every exponent vector, Z-spanning of
/// ker(A), and the degree bound max(3, a_i). Failures are reported, never
/// thrown (apart from the flow cap).
VerificationReport verify_complete_intersection(const InvariantSet& set, const VerifyOptions& options = {});

} // namespace phyloinv
