#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace phyloinv {

/// An element of Z_{a_1} x ... x Z_{a_k}, stored as reduced residues.
/// Elements compare lexicographically, which for a fixed group is exactly the
/// enumeration order of GroupSpec::elements().
class GroupElement {
public:
    GroupElement() = default;
    explicit GroupElement(std::vector<int> residues) : residues_(std::move(residues)) {}

    const std::vector<int>& residues() const noexcept { return residues_; }
    std::size_t size() const noexcept { return residues_.size(); }
    int operator[](std::size_t i) const { return residues_[i]; }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

private:
    std::vector<int> residues_;
};

/// A finite abelian group presented as a product of cyclic factors, kept in
/// the order the user wrote them.
class GroupSpec {
public:
    explicit GroupSpec(std::vector<int> factors);

    /// Parses `Z<int>(xZ<int>)*`, e.g. "Z2xZ3".
    static GroupSpec parse(std::string_view text);

    const std::vector<int>& factors() const noexcept { return factors_; }
    std::size_t rank() const noexcept { return factors_.size(); }
    std::size_t order() const noexcept { return order_; }
    int max_factor() const noexcept;

    GroupElement zero() const;
    /// Builds an element, reducing each residue into [0, a_i).
    GroupElement make(const std::vector<long long>& residues) const;
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement sub(const GroupElement& a, const GroupElement& b) const;
    bool is_zero(const GroupElement& a) const;
    bool contains(const GroupElement& a) const noexcept;

    /// Lexicographic mixed-radix order, zero first.
    std::vector<GroupElement> elements() const;
    std::size_t index_of(const GroupElement& a) const;
    GroupElement element_at(std::size_t index) const;

    /// The image of m under Z_{a_j} -> G; j is 1-based.
    GroupElement unit_embed(std::size_t j, long long m) const;

    /// G x H with the factor lists concatenated.
    GroupSpec times(const GroupSpec& other) const;

    std::string to_string() const;

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.factors_ == b.factors_; }

private:
    void check(const GroupElement& a) const;

    std::vector<int> factors_;
    std::size_t order_ = 1;
};

std::string to_string(const GroupElement& a);

} // namespace phyloinv
