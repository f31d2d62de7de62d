#pragma once

#include "phyloinv/flow.hpp"
#include "phyloinv/group.hpp"
#include "phyloinv/lattice.hpp"

#include <string>
#include <vector>

namespace phyloinv {

/// g x g integer matrix; rows and columns indexed in GroupSpec::elements()
/// order.
using SquareMatrix = std::vector<std::vector<long long>>;

struct AdmissibilityReport {
    bool ok = true;
    /// Empty when ok, otherwise e.g. "row 2 sums to 1" or
    /// "antidiagonal class k=(1,0) sums to -1".
    std::string failure;
};

/// Checks zero row sums, zero column sums and zero sums over every class
/// S_k = {(i,j) : i+j = k}. Throws InputError if the matrix is not g x g.
AdmissibilityReport check_admissible(const SquareMatrix& m, const GroupSpec& group);
bool is_admissible(const SquareMatrix& m, const GroupSpec& group);

/// Sum of positive entries.
long long matrix_degree(const SquareMatrix& m);

class AdmissibleMatrix {
public:
    /// Throws InputError with the failing condition unless m is admissible.
    AdmissibleMatrix(GroupSpec group, SquareMatrix m);

    const GroupSpec& group() const noexcept { return group_; }
    const SquareMatrix& entries() const noexcept { return entries_; }
    long long operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
    long long degree() const noexcept { return degree_; }
    AdmissibleMatrix transpose() const;
    /// Row-major flattening, length g^2.
    std::vector<long long> flatten() const;

    friend bool operator==(const AdmissibleMatrix& a, const AdmissibleMatrix& b) {
        return a.group_ == b.group_ && a.entries_ == b.entries_;
    }

private:
    GroupSpec group_;
    SquareMatrix entries_;
    long long degree_;
};

/// (E^i_j + E^a_b) - (E^i_b + E^a_j). Requires i != a and j != b.
SquareMatrix elementary_A(const GroupSpec& group, const GroupElement& i, const GroupElement& a,
                          const GroupElement& j, const GroupElement& b);

/// The basis matrix X(i,j) of adm(Z_g) for (i,j) in K = {i != 0, j not in {0,1}}:
/// admissible, 1 at (i,j), 0 at every other K position, degree <= g.
AdmissibleMatrix x_matrix(int g, int i, int j);

/// {X(i,j) : (i,j) in K}, i-major; (g-1)(g-2) matrices.
std::vector<AdmissibleMatrix> cyclic_basis(int g);

/// The cubic B(i,j,k,l) over G x H (j != 0 in G, k != 0 in H).
AdmissibleMatrix b_matrix(const GroupSpec& g, const GroupSpec& h, const GroupElement& i, const GroupElement& j,
                          const GroupElement& k, const GroupElement& l);

/// Z-basis of adm(G x H) from bases of adm(G) and adm(H): the B-matrix
/// families, their transposes, and both input bases embedded.
std::vector<AdmissibleMatrix> product_basis(const GroupSpec& g, const GroupSpec& h,
                                            const std::vector<AdmissibleMatrix>& basis_g,
                                            const std::vector<AdmissibleMatrix>& basis_h);

enum class TripodMode {
    DirectCyclic, // fold the factors exactly as written
    Factored,     // split composite factors into prime powers first
};

std::string to_string(TripodMode mode);
TripodMode parse_tripod_mode(std::string_view text);

/// Basis of adm(G) in the requested presentation, expressed over G itself.
std::vector<AdmissibleMatrix> admissible_basis(const GroupSpec& group, TripodMode mode = TripodMode::DirectCyclic);

/// The rooted tripod all tripod binomials live on.
RootedTree tripod_tree();

/// prod x_[i,j,-i-j]^{m_ij} over positive entries minus the same over
/// negative entries.
Binomial matrix_to_binomial(const AdmissibleMatrix& m);
/// Inverse of matrix_to_binomial.
SquareMatrix binomial_to_matrix(const Binomial& b, const GroupSpec& group);

std::vector<Binomial> tripod_invariants(const GroupSpec& group, TripodMode mode = TripodMode::DirectCyclic);

/// The linear map whose integer kernel is adm(G): 3g conditions on the g^2
/// row-major entries.
IntegerMatrix admissibility_conditions(const GroupSpec& group);

} // namespace phyloinv
