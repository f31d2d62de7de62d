#include "phyloinv/tripod.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace phyloinv {

namespace {

// Adds (E^i_j + E^a_b) - (E^i_b + E^a_j) in Z_g indices; vanishes when
// i == a or j == b, which the case sums below rely on.
void add_A(SquareMatrix& m, int g, int i, int a, int j, int b) {
    auto r = [g](int x) { return ((x % g) + g) % g; };
    i = r(i);
    a = r(a);
    j = r(j);
    b = r(b);
    m[i][j] += 1;
    m[a][b] += 1;
    m[i][b] -= 1;
    m[a][j] -= 1;
}

SquareMatrix zero_matrix(std::size_t g) { return SquareMatrix(g, std::vector<long long>(g, 0)); }

long long crt_combine(const std::vector<std::pair<long long, long long>>& parts) {
    // parts: (residue, modulus) with pairwise coprime moduli
    long long x = 0, mod = 1;
    for (auto [r, p] : parts) {
        while (x % p != r)
            x += mod;
        mod *= p;
    }
    return x;
}

} // namespace

AdmissibilityReport check_admissible(const SquareMatrix& m, const GroupSpec& group) {
    const std::size_t g = group.order();
    if (m.size() != g)
        throw InputError("matrix has " + std::to_string(m.size()) + " rows, " + group.to_string() + " needs " +
                         std::to_string(g));
    for (const auto& row : m)
        if (row.size() != g)
            throw InputError("matrix is not square");
    for (std::size_t i = 0; i < g; ++i) {
        long long s = std::accumulate(m[i].begin(), m[i].end(), 0LL);
        if (s != 0)
            return {false, "row " + std::to_string(i) + " sums to " + std::to_string(s)};
    }
    for (std::size_t j = 0; j < g; ++j) {
        long long s = 0;
        for (std::size_t i = 0; i < g; ++i)
            s += m[i][j];
        if (s != 0)
            return {false, "column " + std::to_string(j) + " sums to " + std::to_string(s)};
    }
    const auto elems = group.elements();
    std::vector<long long> cls(g, 0);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            if (m[i][j])
                cls[group.index_of(group.add(elems[i], elems[j]))] += m[i][j];
    for (std::size_t k = 0; k < g; ++k)
        if (cls[k] != 0)
            return {false, "antidiagonal class k=" + to_string(elems[k]) + " sums to " + std::to_string(cls[k])};
    return {};
}

bool is_admissible(const SquareMatrix& m, const GroupSpec& group) { return check_admissible(m, group).ok; }

long long matrix_degree(const SquareMatrix& m) {
    long long d = 0;
    for (const auto& row : m)
        for (long long x : row)
            if (x > 0)
                d += x;
    return d;
}

AdmissibleMatrix::AdmissibleMatrix(GroupSpec group, SquareMatrix m)
    : group_(std::move(group)), entries_(std::move(m)) {
    if (auto report = check_admissible(entries_, group_); !report.ok)
        throw InputError("matrix is not admissible for " + group_.to_string() + ": " + report.failure);
    degree_ = matrix_degree(entries_);
}

AdmissibleMatrix AdmissibleMatrix::transpose() const {
    const std::size_t g = entries_.size();
    SquareMatrix t = zero_matrix(g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            t[j][i] = entries_[i][j];
    return AdmissibleMatrix(group_, std::move(t));
}

std::vector<long long> AdmissibleMatrix::flatten() const {
    std::vector<long long> out;
    out.reserve(entries_.size() * entries_.size());
    for (const auto& row : entries_)
        out.insert(out.end(), row.begin(), row.end());
    return out;
}

SquareMatrix elementary_A(const GroupSpec& group, const GroupElement& i, const GroupElement& a,
                          const GroupElement& j, const GroupElement& b) {
    if (i == a)
        throw InputError("elementary_A needs distinct row indices");
    if (j == b)
        throw InputError("elementary_A needs distinct column indices");
    SquareMatrix m = zero_matrix(group.order());
    const auto ii = group.index_of(i), aa = group.index_of(a), jj = group.index_of(j), bb = group.index_of(b);
    m[ii][jj] += 1;
    m[aa][bb] += 1;
    m[ii][bb] -= 1;
    m[aa][jj] -= 1;
    return m;
}

AdmissibleMatrix x_matrix(int g, int i, int j) {
    if (g < 2)
        throw InputError("cyclic order must be >= 2");
    if (i <= 0 || i >= g || j <= 1 || j >= g)
        throw InputError("(" + std::to_string(i) + "," + std::to_string(j) + ") is not in K for Z" + std::to_string(g));
    SquareMatrix m = zero_matrix(static_cast<std::size_t>(g));
    add_A(m, g, i, 0, j, 0);
    // Case 1 tail: A(i-t, j+t-1; 1, 0), t = 1..i
    auto case1 = [&](int p, int q) {
        for (int t = 1; t <= p; ++t)
            add_A(m, g, p - t, q + t - 1, 1, 0);
    };
    // Case 2 tail: A(q-t, p+t-1; 1, 0), t = 1..g-p
    auto case2 = [&](int p, int q) {
        for (int t = 1; t <= g - p; ++t)
            add_A(m, g, q - t, p + t - 1, 1, 0);
    };
    if (2 * i < g || (2 * i == g && 2 * j == g)) {
        case1(i, j);
    } else if (2 * i > g) {
        case2(i, j);
    } else if (2 * j < g) {
        // i = g/2: the tails with the roles of i and j exchanged.
        for (int t = 1; t <= j; ++t)
            add_A(m, g, j - t, i + t - 1, 1, 0);
    } else {
        for (int t = 1; t <= g - j; ++t)
            add_A(m, g, i - t, j + t - 1, 1, 0);
    }
    AdmissibleMatrix x(GroupSpec({g}), std::move(m));
    if (x.degree() > g)
        throw std::logic_error("X(" + std::to_string(i) + "," + std::to_string(j) + ") exceeds degree bound");
    return x;
}

std::vector<AdmissibleMatrix> cyclic_basis(int g) {
    if (g < 2)
        throw InputError("cyclic order must be >= 2");
    std::vector<AdmissibleMatrix> out;
    for (int i = 1; i < g; ++i)
        for (int j = 2; j < g; ++j)
            out.push_back(x_matrix(g, i, j));
    return out;
}

AdmissibleMatrix b_matrix(const GroupSpec& g, const GroupSpec& h, const GroupElement& i, const GroupElement& j,
                          const GroupElement& k, const GroupElement& l) {
    if (g.is_zero(j))
        throw InputError("B-matrix needs j != 0");
    if (h.is_zero(k))
        throw InputError("B-matrix needs k != 0");
    if (!g.contains(i) || !h.contains(l))
        throw InputError("B-matrix index outside its group");
    const GroupSpec p = g.times(h);
    const std::size_t hs = h.order();
    auto at = [&](const GroupElement& x, const GroupElement& y) { return g.index_of(x) * hs + h.index_of(y); };
    SquareMatrix m = zero_matrix(p.order());
    const GroupElement g0 = g.zero(), h0 = h.zero();
    m[at(i, k)][at(j, l)] += 1;
    m[at(g.add(i, j), h0)][at(g0, l)] += 1;
    m[at(i, h0)][at(g0, h.add(k, l))] += 1;
    m[at(g.add(i, j), h0)][at(g0, h.add(k, l))] -= 1;
    m[at(i, k)][at(g0, l)] -= 1;
    m[at(i, h0)][at(j, l)] -= 1;
    return AdmissibleMatrix(p, std::move(m));
}

std::vector<AdmissibleMatrix> product_basis(const GroupSpec& g, const GroupSpec& h,
                                            const std::vector<AdmissibleMatrix>& basis_g,
                                            const std::vector<AdmissibleMatrix>& basis_h) {
    const std::size_t go = g.order(), ho = h.order();
    if (basis_g.size() != (go - 1) * (go - 2))
        throw InputError("basis of adm(" + g.to_string() + ") must have " + std::to_string((go - 1) * (go - 2)) +
                         " elements, got " + std::to_string(basis_g.size()));
    if (basis_h.size() != (ho - 1) * (ho - 2))
        throw InputError("basis of adm(" + h.to_string() + ") must have " + std::to_string((ho - 1) * (ho - 2)) +
                         " elements, got " + std::to_string(basis_h.size()));
    const GroupSpec p = g.times(h);
    const auto ge = g.elements();
    const auto he = h.elements();
    std::vector<AdmissibleMatrix> out;
    out.reserve((go * ho - 1) * (go * ho - 2));

    // (1)-(3) and (6); (4), (5) are the transposes of (2), (3).
    for (std::size_t i = 1; i < go; ++i)
        for (std::size_t j = 1; j < go; ++j)
            for (std::size_t k = 1; k < ho; ++k)
                for (std::size_t l = 1; l < ho; ++l)
                    out.push_back(b_matrix(g, h, ge[i], ge[j], he[k], he[l]));
    std::vector<AdmissibleMatrix> fam2, fam3;
    for (std::size_t j = 1; j < go; ++j)
        for (std::size_t k = 1; k < ho; ++k)
            for (std::size_t l = 1; l < ho; ++l)
                fam2.push_back(b_matrix(g, h, ge[0], ge[j], he[k], he[l]));
    for (std::size_t i = 1; i < go; ++i)
        for (std::size_t j = 1; j < go; ++j)
            for (std::size_t k = 1; k < ho; ++k)
                fam3.push_back(b_matrix(g, h, ge[i], ge[j], he[k], he[0]));
    out.insert(out.end(), fam2.begin(), fam2.end());
    out.insert(out.end(), fam3.begin(), fam3.end());
    for (const auto& m : fam2)
        out.push_back(m.transpose());
    for (const auto& m : fam3)
        out.push_back(m.transpose());
    for (std::size_t j = 1; j < go; ++j)
        for (std::size_t k = 1; k < ho; ++k)
            out.push_back(b_matrix(g, h, ge[0], ge[j], he[k], he[0]));

    // (7), (8): i -> (i,0) and k -> (0,k).
    for (const auto& m : basis_g) {
        SquareMatrix e = zero_matrix(p.order());
        for (std::size_t a = 0; a < go; ++a)
            for (std::size_t b = 0; b < go; ++b)
                e[a * ho][b * ho] = m(a, b);
        out.emplace_back(p, std::move(e));
    }
    for (const auto& m : basis_h) {
        SquareMatrix e = zero_matrix(p.order());
        for (std::size_t a = 0; a < ho; ++a)
            for (std::size_t b = 0; b < ho; ++b)
                e[a][b] = m(a, b);
        out.emplace_back(p, std::move(e));
    }
    return out;
}

std::string to_string(TripodMode mode) { return mode == TripodMode::DirectCyclic ? "direct-cyclic" : "factored"; }

TripodMode parse_tripod_mode(std::string_view text) {
    if (text == "direct-cyclic")
        return TripodMode::DirectCyclic;
    if (text == "factored")
        return TripodMode::Factored;
    throw InputError("unknown mode '" + std::string(text) + "' (expected direct-cyclic or factored)");
}

namespace {

std::vector<AdmissibleMatrix> fold_factors(const std::vector<int>& factors) {
    GroupSpec acc({factors[0]});
    std::vector<AdmissibleMatrix> basis = cyclic_basis(factors[0]);
    for (std::size_t f = 1; f < factors.size(); ++f) {
        GroupSpec next({factors[f]});
        basis = product_basis(acc, next, basis, cyclic_basis(factors[f]));
        acc = acc.times(next);
    }
    return basis;
}

std::vector<std::pair<int, int>> prime_power_parts(int a) {
    std::vector<std::pair<int, int>> parts; // (prime, prime power)
    for (int p = 2; static_cast<long long>(p) * p <= a; ++p) {
        if (a % p)
            continue;
        int q = 1;
        while (a % p == 0) {
            a /= p;
            q *= p;
        }
        parts.emplace_back(p, q);
    }
    if (a > 1)
        parts.emplace_back(a, a);
    return parts;
}

} // namespace

std::vector<AdmissibleMatrix> admissible_basis(const GroupSpec& group, TripodMode mode) {
    if (mode == TripodMode::DirectCyclic)
        return fold_factors(group.factors());

    // Factored: build over the prime-power presentation, then transport along
    // the CRT isomorphism back to the presentation the caller gave.
    std::vector<int> split;
    std::vector<std::size_t> owner; // original factor of each split factor
    for (std::size_t f = 0; f < group.rank(); ++f)
        for (auto [p, q] : prime_power_parts(group.factors()[f])) {
            split.push_back(q);
            owner.push_back(f);
        }
    if (split == group.factors())
        return fold_factors(group.factors());
    const GroupSpec fine(split);
    std::vector<std::size_t> image(fine.order());
    for (std::size_t u = 0; u < fine.order(); ++u) {
        const GroupElement x = fine.element_at(u);
        std::vector<long long> residues(group.rank());
        for (std::size_t f = 0; f < group.rank(); ++f) {
            std::vector<std::pair<long long, long long>> parts;
            for (std::size_t s = 0; s < split.size(); ++s)
                if (owner[s] == f)
                    parts.emplace_back(x[s], split[s]);
            residues[f] = crt_combine(parts);
        }
        image[u] = group.index_of(group.make(residues));
    }
    std::vector<AdmissibleMatrix> out;
    for (const AdmissibleMatrix& m : fold_factors(split)) {
        SquareMatrix e = zero_matrix(group.order());
        for (std::size_t a = 0; a < fine.order(); ++a)
            for (std::size_t b = 0; b < fine.order(); ++b)
                e[image[a]][image[b]] = m(a, b);
        out.emplace_back(group, std::move(e));
    }
    return out;
}

RootedTree tripod_tree() { return root_default(Tree::claw(3)); }

Binomial matrix_to_binomial(const AdmissibleMatrix& m) {
    const GroupSpec& group = m.group();
    const RootedTree tripod = tripod_tree();
    const auto elems = group.elements();
    std::vector<Flow> lhs, rhs;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j) {
            const long long x = m(i, j);
            if (x == 0)
                continue;
            const GroupElement leaves[3] = {elems[i], elems[j], group.neg(group.add(elems[i], elems[j]))};
            Flow f = flow_from_leaf_assignment(tripod, group, leaves);
            auto& side = x > 0 ? lhs : rhs;
            for (long long c = 0; c < (x > 0 ? x : -x); ++c)
                side.push_back(f);
        }
    return binomial_from_multisets(tripod, group, std::move(lhs), std::move(rhs));
}

SquareMatrix binomial_to_matrix(const Binomial& b, const GroupSpec& group) {
    SquareMatrix m = zero_matrix(group.order());
    for (const Flow& f : b.lhs())
        m[group.index_of(f[0])][group.index_of(f[1])] += 1;
    for (const Flow& f : b.rhs())
        m[group.index_of(f[0])][group.index_of(f[1])] -= 1;
    return m;
}

std::vector<Binomial> tripod_invariants(const GroupSpec& group, TripodMode mode) {
    const long long bound = std::max(3, group.max_factor());
    std::vector<Binomial> out;
    for (const AdmissibleMatrix& m : admissible_basis(group, mode)) {
        if (m.degree() > bound)
            throw std::logic_error("tripod generator of degree " + std::to_string(m.degree()) + " exceeds bound " +
                                   std::to_string(bound));
        out.push_back(matrix_to_binomial(m));
    }
    return out;
}

IntegerMatrix admissibility_conditions(const GroupSpec& group) {
    const std::size_t g = group.order();
    IntegerMatrix a(3 * g, g * g);
    const auto elems = group.elements();
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            const std::size_t col = i * g + j;
            a(i, col) = 1;
            a(g + j, col) = 1;
            a(2 * g + group.index_of(group.add(elems[i], elems[j])), col) = 1;
        }
    return a;
}

} // namespace phyloinv
