#include "phyloinv/lattice.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace phyloinv {

namespace {

void poll(const FactorOptions& opts) {
    if (opts.stop.stop_requested())
        throw Cancelled();
}

// x + k*y
SparseVector axpy(const SparseVector& x, const Integer& k, const SparseVector& y) {
    SparseVector out;
    out.reserve(x.size() + y.size());
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() || j != y.end()) {
        if (j == y.end() || (i != x.end() && i->first < j->first)) {
            out.push_back(*i++);
        } else if (i == x.end() || j->first < i->first) {
            out.emplace_back(j->first, k * j->second);
            ++j;
        } else {
            Integer v = i->second + k * j->second;
            if (v != 0)
                out.emplace_back(i->first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

// a*x + b*y
SparseVector combine(const Integer& a, const SparseVector& x, const Integer& b, const SparseVector& y) {
    SparseVector ax = x;
    for (auto& [c, v] : ax)
        v *= a;
    if (a == 0)
        ax.clear();
    return axpy(ax, b, y);
}

void make_primitive(SparseVector& v) {
    if (v.empty())
        return;
    Integer g = 0;
    for (const auto& [c, x] : v) {
        g = gcd(g, x);
        if (g == 1)
            return;
    }
    for (auto& [c, x] : v)
        x /= g;
}

const Integer* find(const SparseVector& v, std::size_t c) {
    auto it = std::lower_bound(v.begin(), v.end(), c, [](const auto& e, std::size_t k) { return e.first < k; });
    return (it != v.end() && it->first == c) ? &it->second : nullptr;
}

// Echelon rows keyed by pivot column, kept under unimodular operations only.
using Echelon = std::map<std::size_t, SparseVector>;

void insert_row(Echelon& ech, SparseVector v) {
    while (!v.empty()) {
        const std::size_t c = v.front().first;
        auto it = ech.find(c);
        if (it == ech.end()) {
            if (v.front().second < 0)
                for (auto& e : v)
                    e.second = -e.second;
            ech.emplace(c, std::move(v));
            return;
        }
        SparseVector& p = it->second;
        const Integer a = p.front().second;
        const Integer b = v.front().second;
        if (b % a == 0) {
            v = axpy(v, -(b / a), p);
            continue;
        }
        Integer d, s, t;
        mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        SparseVector np = combine(s, p, t, v);
        SparseVector nv = combine(-(b / d), p, a / d, v);
        p = std::move(np);
        v = std::move(nv);
    }
}

Echelon echelon_of(const std::vector<SparseVector>& rows, const FactorOptions& opts) {
    Echelon ech;
    for (const SparseVector& r : rows) {
        poll(opts);
        insert_row(ech, r);
    }
    return ech;
}

// Reduces v against the echelon rows over Q (fraction-free); true iff v ends
// at zero, i.e. v lies in the rational span.
bool in_rational_span(const Echelon& ech, SparseVector v) {
    while (!v.empty()) {
        auto it = ech.find(v.front().first);
        if (it == ech.end())
            return false;
        const Integer a = it->second.front().second;
        const Integer b = v.front().second;
        v = combine(a, v, -b, it->second);
        make_primitive(v);
    }
    return true;
}

void check_dims(const LatticeBasis& a, const LatticeBasis& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw InputError("lattices live in different dimensions " + std::to_string(a.ambient_dim()) + " and " +
                         std::to_string(b.ambient_dim()));
}

std::vector<Integer> snf_diagonal(IntegerMatrix d, IntegerMatrix* u, IntegerMatrix* v, const FactorOptions& opts);

} // namespace

// ---------------------------------------------------------------------------
// IntegerMatrix

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw InputError("ragged matrix literal");
        for (long x : r)
            data_.emplace_back(x);
    }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols) {
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw InputError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                             " entries, expected " + std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = static_cast<long>(rows[i][j]);
    }
    return m;
}

IntegerMatrix IntegerMatrix::transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool IntegerMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        swap((*this)(a, j), (*this)(b, j));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        swap((*this)(i, a), (*this)(i, b));
}

void IntegerMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(src, j) != 0)
            (*this)(dst, j) += k * (*this)(src, j);
}

void IntegerMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        if ((*this)(i, src) != 0)
            (*this)(i, dst) += k * (*this)(i, src);
}

void IntegerMatrix::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(r, j) = -(*this)(r, j);
}

void IntegerMatrix::negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, c) = -(*this)(i, c);
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols() != b.rows())
        throw InputError("matrix product shape mismatch");
    IntegerMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

// ---------------------------------------------------------------------------
// Normal forms

HnfResult hnf(const IntegerMatrix& a, const FactorOptions& opts) {
    IntegerMatrix h = a;
    IntegerMatrix u = IntegerMatrix::identity(a.rows());
    const std::size_t m = h.rows();
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols() && r < m; ++c) {
        poll(opts);
        bool have_pivot = false;
        while (true) {
            // Euclid on the column: bring the smallest nonzero entry up and
            // reduce the rest by it until it is the only one left.
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (h(i, c) != 0 && (best == m || abs(h(i, c)) < abs(h(best, c))))
                    best = i;
            if (best == m)
                break;
            have_pivot = true;
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (h(i, c) == 0)
                    continue;
                Integer q = h(i, c) / h(r, c);
                h.add_row_multiple(i, r, -q);
                u.add_row_multiple(i, r, -q);
                if (h(i, c) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (!have_pivot)
            continue;
        if (h(r, c) < 0) {
            h.negate_row(r);
            u.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
            h.add_row_multiple(i, r, -q);
            u.add_row_multiple(i, r, -q);
        }
        ++r;
    }
    return {std::move(h), std::move(u)};
}

namespace {

std::vector<Integer> snf_diagonal(IntegerMatrix d, IntegerMatrix* u, IntegerMatrix* v, const FactorOptions& opts) {
    const std::size_t m = d.rows(), n = d.cols();
    auto row_op = [&](std::size_t dst, std::size_t src, const Integer& k) {
        d.add_row_multiple(dst, src, k);
        if (u)
            u->add_row_multiple(dst, src, k);
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const Integer& k) {
        d.add_col_multiple(dst, src, k);
        if (v)
            v->add_col_multiple(dst, src, k);
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        d.swap_rows(a, b);
        if (u)
            u->swap_rows(a, b);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        d.swap_cols(a, b);
        if (v)
            v->swap_cols(a, b);
    };

    std::vector<Integer> diag;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        poll(opts);
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (d(i, j) != 0 && (pi == m || abs(d(i, j)) < abs(d(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m)
            break;
        row_swap(t, pi);
        col_swap(t, pj);
        while (true) {
            for (std::size_t i = t + 1; i < m; ++i)
                if (d(i, t) != 0)
                    row_op(i, t, -Integer(d(i, t) / d(t, t)));
            for (std::size_t j = t + 1; j < n; ++j)
                if (d(t, j) != 0)
                    col_op(j, t, -Integer(d(t, j) / d(t, t)));
            // Any remainder is smaller than the pivot: promote it and repeat.
            std::size_t ri = m, cj = n;
            for (std::size_t i = t + 1; i < m && ri == m; ++i)
                if (d(i, t) != 0)
                    ri = i;
            for (std::size_t j = t + 1; j < n && ri == m && cj == n; ++j)
                if (d(t, j) != 0)
                    cj = j;
            if (ri != m) {
                row_swap(t, ri);
                continue;
            }
            if (cj != n) {
                col_swap(t, cj);
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m)
                break;
            row_op(t, bad, 1);
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            if (u)
                u->negate_row(t);
        }
        diag.push_back(d(t, t));
    }
    return diag;
}

} // namespace

SnfResult snf(const IntegerMatrix& a, const FactorOptions& opts) {
    SnfResult out{IntegerMatrix(a.rows(), a.cols()), IntegerMatrix::identity(a.rows()),
                  IntegerMatrix::identity(a.cols())};
    std::vector<Integer> diag = snf_diagonal(a, &out.U, &out.V, opts);
    for (std::size_t i = 0; i < diag.size(); ++i)
        out.D(i, i) = diag[i];
    return out;
}

std::vector<Integer> elementary_divisors(const IntegerMatrix& a, const FactorOptions& opts) {
    return snf_diagonal(a, nullptr, nullptr, opts);
}

Integer determinant(const IntegerMatrix& a) {
    if (a.rows() != a.cols())
        throw InputError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    IntegerMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntegerMatrix& a) {
    IntegerMatrix m = a;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c) == 0)
            ++p;
        if (p == rows)
            continue;
        m.swap_rows(r, p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m(i, j) = (m(i, j) * m(r, c) - m(i, c) * m(r, j)) / prev;
            m(i, c) = 0;
        }
        prev = m(r, c);
        ++r;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Lattices

SparseVector to_sparse(const std::vector<long long>& dense) {
    SparseVector v;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (dense[i] != 0)
            v.emplace_back(i, static_cast<long>(dense[i]));
    return v;
}

std::vector<Integer> to_dense(const SparseVector& v, std::size_t dim) {
    std::vector<Integer> out(dim);
    for (const auto& [c, x] : v) {
        if (c >= dim)
            throw InputError("coordinate " + std::to_string(c) + " outside dimension " + std::to_string(dim));
        out[c] = x;
    }
    return out;
}

namespace {

void check_vector(const SparseVector& v, std::size_t dim) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].first >= dim)
            throw InputError("coordinate " + std::to_string(v[i].first) + " outside dimension " + std::to_string(dim));
        if (i && v[i - 1].first >= v[i].first)
            throw InputError("sparse vector coordinates not strictly increasing");
        if (v[i].second == 0)
            throw InputError("sparse vector stores an explicit zero");
    }
}

} // namespace

LatticeBasis LatticeBasis::from_generators(std::size_t ambient_dim, const std::vector<SparseVector>& gens,
                                           const FactorOptions& opts) {
    for (const SparseVector& g : gens)
        check_vector(g, ambient_dim);
    Echelon ech = echelon_of(gens, opts);
    LatticeBasis b(ambient_dim);
    b.rows_.reserve(ech.size());
    for (auto& [c, row] : ech)
        b.rows_.push_back(std::move(row));
    return b;
}

LatticeBasis LatticeBasis::from_independent_rows(std::size_t ambient_dim, std::vector<SparseVector> rows) {
    for (const SparseVector& r : rows)
        check_vector(r, ambient_dim);
    if (echelon_of(rows, {}).size() != rows.size())
        throw InputError("lattice basis rows are linearly dependent");
    LatticeBasis b(ambient_dim);
    b.rows_ = std::move(rows);
    return b;
}

IntegerMatrix LatticeBasis::hnf_matrix(const FactorOptions& opts) const {
    Echelon ech = echelon_of(rows_, opts);
    std::vector<SparseVector> h;
    for (auto& [c, row] : ech)
        h.push_back(std::move(row));
    for (std::size_t k = 0; k < h.size(); ++k) {
        poll(opts);
        const std::size_t pc = h[k].front().first;
        const Integer& p = h[k].front().second;
        for (std::size_t i = 0; i < k; ++i) {
            const Integer* x = find(h[i], pc);
            if (!x)
                continue;
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), x->get_mpz_t(), p.get_mpz_t());
            if (q != 0)
                h[i] = axpy(h[i], -q, h[k]);
        }
    }
    IntegerMatrix out(h.size(), dim_);
    for (std::size_t i = 0; i < h.size(); ++i)
        for (const auto& [c, x] : h[i])
            out(i, c) = x;
    return out;
}

LatticeBasis kernel_lattice(const IntegerMatrix& a, const FactorOptions& opts) {
    const std::size_t m = a.rows(), n = a.cols();
    struct Pivot {
        std::vector<Integer> col;
        SparseVector comb;
    };
    std::vector<std::optional<Pivot>> pivots(m);
    LatticeBasis out(n);

    auto lead = [&](const std::vector<Integer>& col) {
        std::size_t r = 0;
        while (r < m && col[r] == 0)
            ++r;
        return r;
    };

    for (std::size_t j = 0; j < n; ++j) {
        if (j % 64 == 0)
            poll(opts);
        std::vector<Integer> col(m);
        for (std::size_t i = 0; i < m; ++i)
            col[i] = a(i, j);
        SparseVector comb{{j, Integer(1)}};
        while (true) {
            const std::size_t r = lead(col);
            if (r == m) {
                out.rows_.push_back(std::move(comb));
                break;
            }
            if (!pivots[r]) {
                pivots[r] = Pivot{std::move(col), std::move(comb)};
                break;
            }
            Pivot& p = *pivots[r];
            const Integer pa = p.col[r];
            const Integer b = col[r];
            if (b % pa == 0) {
                const Integer q = b / pa;
                for (std::size_t i = r; i < m; ++i)
                    col[i] -= q * p.col[i];
                comb = axpy(comb, -q, p.comb);
                continue;
            }
            // Unimodular 2x2 step: the pivot becomes gcd(pa, b) and the
            // incoming column loses its entry at r.
            Integer d, s, t;
            mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pa.get_mpz_t(), b.get_mpz_t());
            const Integer x = -(b / d), y = pa / d;
            std::vector<Integer> np(m), nc(m);
            for (std::size_t i = r; i < m; ++i) {
                np[i] = s * p.col[i] + t * col[i];
                nc[i] = x * p.col[i] + y * col[i];
            }
            SparseVector npc = combine(s, p.comb, t, comb);
            SparseVector ncc = combine(x, p.comb, y, comb);
            p.col = std::move(np);
            p.comb = std::move(npc);
            col = std::move(nc);
            comb = std::move(ncc);
        }
    }
    return out;
}

bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b, const FactorOptions& opts) {
    check_dims(a, b);
    if (a.rank() != b.rank())
        return false;
    return a.hnf_matrix(opts) == b.hnf_matrix(opts);
}

bool spans(const std::vector<SparseVector>& vectors, const LatticeBasis& l, const FactorOptions& opts) {
    const Echelon ech = echelon_of(l.rows(), opts);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        check_vector(vectors[i], l.ambient_dim());
        if (!in_rational_span(ech, vectors[i]))
            throw NotInRationalSpan(i);
    }
    return lattice_equal(LatticeBasis::from_generators(l.ambient_dim(), vectors, opts), l, opts);
}

std::optional<Integer> sublattice_index(const LatticeBasis& super, const LatticeBasis& sub, const FactorOptions& opts) {
    check_dims(super, sub);
    const Echelon ech = echelon_of(super.rows(), opts);
    std::map<std::size_t, std::size_t> slot; // pivot column -> coordinate index
    for (const auto& [c, row] : ech)
        slot.emplace(c, slot.size());
    IntegerMatrix coords(sub.rank(), ech.size());
    for (std::size_t i = 0; i < sub.rank(); ++i) {
        poll(opts);
        SparseVector v = sub.rows()[i];
        while (!v.empty()) {
            auto it = ech.find(v.front().first);
            if (it == ech.end() || v.front().second % it->second.front().second != 0)
                throw InputError("sublattice row " + std::to_string(i) + " is not in the super-lattice");
            const Integer q = v.front().second / it->second.front().second;
            coords(i, slot[it->first]) = q;
            v = axpy(v, -q, it->second);
        }
    }
    if (sub.rank() != ech.size())
        return std::nullopt;
    return abs(determinant(coords));
}

// ---------------------------------------------------------------------------
// Sparse Smith form for tall sparse generator matrices

std::vector<Integer> sparse_elementary_divisors(const std::vector<SparseVector>& input, std::size_t n,
                                                const FactorOptions& opts) {
    for (const SparseVector& v : input)
        check_vector(v, n);
    std::vector<SparseVector> rows = input;
    const std::size_t m = rows.size();
    std::vector<std::vector<std::size_t>> col_rows(n);
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& [c, x] : rows[i])
            col_rows[c].push_back(i);
    std::vector<char> active(m, 1);
    std::vector<std::size_t> stamp(m, 0);
    using Entry = std::pair<std::size_t, std::size_t>; // (nnz, row)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::size_t i = 0; i < m; ++i)
        heap.emplace(rows[i].size(), i);

    std::size_t units = 0, step = 0;
    while (!heap.empty()) {
        auto [k, r] = heap.top();
        heap.pop();
        if (!active[r] || rows[r].size() != k)
            continue;
        if (k == 0) {
            active[r] = 0;
            continue;
        }
        if (++step % 256 == 0)
            poll(opts);
        // Unit entry in the sparsest column keeps fill-in low.
        std::size_t pc = n;
        Integer u;
        for (const auto& [c, x] : rows[r])
            if ((x == 1 || x == -1) && (pc == n || col_rows[c].size() < col_rows[pc].size())) {
                pc = c;
                u = x;
            }
        if (pc == n)
            continue; // revisited only if another pivot modifies it
        const SparseVector prow = rows[r];
        for (std::size_t i : col_rows[pc]) {
            if (i == r || !active[i] || stamp[i] == step)
                continue;
            stamp[i] = step;
            const Integer* x = find(rows[i], pc);
            if (!x)
                continue;
            const Integer factor = -(*x) * u;
            SparseVector updated = axpy(rows[i], factor, prow);
            // Register fill-in.
            auto old = rows[i].begin();
            for (const auto& [c, v] : updated) {
                while (old != rows[i].end() && old->first < c)
                    ++old;
                if (old == rows[i].end() || old->first != c)
                    col_rows[c].push_back(i);
            }
            rows[i] = std::move(updated);
            heap.emplace(rows[i].size(), i);
        }
        col_rows[pc].clear();
        active[r] = 0;
        ++units;
    }

    std::vector<std::size_t> rest;
    std::map<std::size_t, std::size_t> cols;
    for (std::size_t i = 0; i < m; ++i)
        if (active[i] && !rows[i].empty()) {
            rest.push_back(i);
            for (const auto& [c, x] : rows[i])
                cols.emplace(c, 0);
        }
    std::size_t next = 0;
    for (auto& [c, slot] : cols)
        slot = next++;
    IntegerMatrix block(rest.size(), cols.size());
    for (std::size_t i = 0; i < rest.size(); ++i)
        for (const auto& [c, x] : rows[rest[i]])
            block(i, cols[c]) = x;
    std::vector<Integer> out(units, Integer(1));
    for (Integer& d : elementary_divisors(block, opts))
        out.push_back(std::move(d));
    return out;
}

std::vector<Integer> image(const IntegerMatrix& a, const SparseVector& x) {
    std::vector<Integer> out(a.rows());
    for (const auto& [c, v] : x) {
        if (c >= a.cols())
            throw InputError("vector coordinate " + std::to_string(c) + " outside " + std::to_string(a.cols()) +
                             " columns");
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (a(i, c) != 0)
                out[i] += a(i, c) * v;
    }
    return out;
}

KernelSpanCheck check_kernel_span(const IntegerMatrix& a, const std::vector<SparseVector>& vectors,
                                  const FactorOptions& opts) {
    KernelSpanCheck out;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const auto y = image(a, vectors[i]);
        if (!std::all_of(y.begin(), y.end(), [](const Integer& x) { return x == 0; })) {
            out.all_in_kernel = false;
            out.outside.push_back(i);
        }
    }
    out.kernel_rank = a.cols() - rank(a);
    const std::vector<Integer> divisors = sparse_elementary_divisors(vectors, a.cols(), opts);
    out.generated_rank = divisors.size();
    for (const Integer& d : divisors)
        out.torsion *= d;
    out.spans = out.all_in_kernel && out.generated_rank == out.kernel_rank && out.torsion == 1;
    return out;
}

} // namespace phyloinv
