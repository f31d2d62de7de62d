#include "phyloinv/group.hpp"

#include "phyloinv/errors.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace phyloinv {

namespace {

// Group orders beyond this are far outside anything the enumerations can
// handle; rejecting them keeps index arithmetic in size_t.
constexpr std::size_t kMaxOrder = std::size_t{1} << 40;

} // namespace

GroupSpec::GroupSpec(std::vector<int> factors) : factors_(std::move(factors)) {
    if (factors_.empty())
        throw InputError("group needs at least one cyclic factor");
    for (int a : factors_) {
        if (a < 2)
            throw InputError("cyclic factor Z" + std::to_string(a) + " must have order >= 2");
        if (order_ > kMaxOrder / static_cast<std::size_t>(a))
            throw InputError("group order too large");
        order_ *= static_cast<std::size_t>(a);
    }
}

GroupSpec GroupSpec::parse(std::string_view text) {
    std::vector<int> factors;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) -> void {
        throw InputError("bad group spec '" + std::string(text) + "' at position " + std::to_string(pos) + ": " + why);
    };
    if (text.empty())
        fail("empty");
    while (true) {
        if (pos >= text.size() || text[pos] != 'Z')
            fail("expected 'Z'");
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
            ++pos;
        if (start == pos)
            fail("expected cyclic order");
        int value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + pos, value);
        if (ec != std::errc{} || ptr != text.data() + pos)
            fail("cyclic order out of range");
        if (value < 2)
            fail("cyclic order must be >= 2");
        factors.push_back(value);
        if (pos == text.size())
            break;
        if (text[pos] != 'x')
            fail("expected 'x'");
        ++pos;
    }
    return GroupSpec(std::move(factors));
}

int GroupSpec::max_factor() const noexcept { return *std::max_element(factors_.begin(), factors_.end()); }

GroupElement GroupSpec::zero() const { return GroupElement(std::vector<int>(factors_.size(), 0)); }

GroupElement GroupSpec::make(const std::vector<long long>& residues) const {
    if (residues.size() != factors_.size())
        throw InputError("element has " + std::to_string(residues.size()) + " residues, group " + to_string() +
                         " needs " + std::to_string(factors_.size()));
    std::vector<int> out(residues.size());
    for (std::size_t i = 0; i < residues.size(); ++i) {
        long long a = factors_[i];
        out[i] = static_cast<int>(((residues[i] % a) + a) % a);
    }
    return GroupElement(std::move(out));
}

bool GroupSpec::contains(const GroupElement& a) const noexcept {
    if (a.size() != factors_.size())
        return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (a[i] < 0 || a[i] >= factors_[i])
            return false;
    return true;
}

void GroupSpec::check(const GroupElement& a) const {
    if (!contains(a))
        throw InputError("element " + phyloinv::to_string(a) + " does not belong to " + to_string());
}

GroupElement GroupSpec::add(const GroupElement& a, const GroupElement& b) const {
    check(a);
    check(b);
    std::vector<int> out(factors_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        int s = a[i] + b[i];
        out[i] = s >= factors_[i] ? s - factors_[i] : s;
    }
    return GroupElement(std::move(out));
}

GroupElement GroupSpec::neg(const GroupElement& a) const {
    check(a);
    std::vector<int> out(factors_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = a[i] == 0 ? 0 : factors_[i] - a[i];
    return GroupElement(std::move(out));
}

GroupElement GroupSpec::sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }

bool GroupSpec::is_zero(const GroupElement& a) const {
    check(a);
    return std::all_of(a.residues().begin(), a.residues().end(), [](int r) { return r == 0; });
}

std::vector<GroupElement> GroupSpec::elements() const {
    std::vector<GroupElement> out;
    out.reserve(order_);
    for (std::size_t i = 0; i < order_; ++i)
        out.push_back(element_at(i));
    return out;
}

std::size_t GroupSpec::index_of(const GroupElement& a) const {
    check(a);
    std::size_t index = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        index = index * static_cast<std::size_t>(factors_[i]) + static_cast<std::size_t>(a[i]);
    return index;
}

GroupElement GroupSpec::element_at(std::size_t index) const {
    if (index >= order_)
        throw InputError("element index " + std::to_string(index) + " out of range for " + to_string());
    std::vector<int> out(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        out[i] = static_cast<int>(index % static_cast<std::size_t>(factors_[i]));
        index /= static_cast<std::size_t>(factors_[i]);
    }
    return GroupElement(std::move(out));
}

GroupElement GroupSpec::unit_embed(std::size_t j, long long m) const {
    if (j < 1 || j > factors_.size())
        throw InputError("factor index " + std::to_string(j) + " out of range 1.." + std::to_string(factors_.size()));
    std::vector<long long> r(factors_.size(), 0);
    r[j - 1] = m;
    return make(r);
}

GroupSpec GroupSpec::times(const GroupSpec& other) const {
    std::vector<int> f = factors_;
    f.insert(f.end(), other.factors_.begin(), other.factors_.end());
    return GroupSpec(std::move(f));
}

std::string GroupSpec::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i)
            out += 'x';
        out += 'Z' + std::to_string(factors_[i]);
    }
    return out;
}

std::string to_string(const GroupElement& a) {
    if (a.size() == 1)
        return std::to_string(a[0]);
    std::string out = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(a[i]);
    }
    return out + ")";
}

} // namespace phyloinv
