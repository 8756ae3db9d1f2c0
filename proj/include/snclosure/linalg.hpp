#pragma once

#include <cstdlib>
#include <optional>
#include <vector>

#include "snclosure/errors.hpp"
#include "snclosure/sparse.hpp"

namespace snclosure {

/* Incremental row basis of a subspace (fields) or row lattice (ZZ).
 *
 * Rows keep pairwise distinct leading columns.  Over a field a stored row is
 * never modified after creation; over ZZ a stored row may be *replaced* by a
 * gcd combination, in which case both the replacement and the displaced
 * remainder count as newly created rows.  insert() reports every created row
 * through `created`, which is what the saturation worklist consumes: once
 * every created row has been multiplied through, the span is closed.
 *
 * finalize() back-eliminates into the canonical form: RREF over fields,
 * row-style HNF over ZZ (positive pivots, entries above a pivot in
 * [0, pivot)), rows ordered by pivot column.
 */
template <ExactScalar K>
class RowBasis {
  public:
    explicit RowBasis(std::int32_t cols) : cols_(cols), pivot_row_(cols, -1) {}

    std::int32_t cols() const { return cols_; }
    std::int32_t rank() const { return (std::int32_t)rows_.size(); }
    const std::vector<SparseVec<K>>& rows() const { return rows_; }

    std::vector<std::int32_t> pivot_cols() const {
        std::vector<std::int32_t> p;
        p.reserve(rows_.size());
        for (std::int32_t c = 0; c < cols_; ++c)
            if (pivot_row_[c] >= 0) p.push_back(c);
        return p;
    }

    void insert(SparseVec<K> v, std::vector<SparseVec<K>>* created = nullptr) {
        std::vector<SparseVec<K>> pending;
        pending.push_back(std::move(v));
        while (!pending.empty()) {
            SparseVec<K> w = std::move(pending.back());
            pending.pop_back();
            insert_one(std::move(w), created, pending);
        }
    }

    // Canonical representative of v modulo the row space / row lattice.
    // Zero exactly on members.
    SparseVec<K> reduce(SparseVec<K> v) const {
        std::size_t i = 0;
        while (i < v.terms.size()) {
            std::int32_t c = v.terms[i].first;
            std::int32_t r = pivot_row_[c];
            if (r < 0) {
                ++i;
                continue;
            }
            if constexpr (scalar_traits<K>::is_field) {
                v.axpy(-v.terms[i].second, rows_[r]);  // pivot coeff is 1
            } else {
                ZZ q;
                mpz_fdiv_q(q.get_mpz_t(), v.terms[i].second.get_mpz_t(),
                           rows_[r].lead_coeff().get_mpz_t());
                if (!snclosure::is_zero(q)) v.axpy(-q, rows_[r]);
            }
            // the term at c is gone (field) or now canonical (ZZ)
            i = skip_to(v, c, /*past=*/!scalar_traits<K>::is_field ? has_term(v, c) : false);
        }
        return v;
    }

    bool member(const SparseVec<K>& v) const { return reduce(v).is_zero(); }

    void finalize() {
        // order rows by pivot column
        std::vector<SparseVec<K>> sorted;
        sorted.reserve(rows_.size());
        for (std::int32_t c = 0; c < cols_; ++c)
            if (pivot_row_[c] >= 0) sorted.push_back(std::move(rows_[pivot_row_[c]]));
        rows_ = std::move(sorted);
        for (std::int32_t c = 0; c < cols_; ++c) pivot_row_[c] = -1;
        for (std::size_t r = 0; r < rows_.size(); ++r) pivot_row_[rows_[r].lead()] = (std::int32_t)r;
        // back-eliminate foreign pivot columns from every row
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            SparseVec<K> v = std::move(rows_[r]);
            std::size_t i = 1;  // term 0 is this row's own pivot
            while (i < v.terms.size()) {
                std::int32_t c = v.terms[i].first;
                std::int32_t pr = pivot_row_[c];
                if (pr < 0 || pr == (std::int32_t)r) {
                    ++i;
                    continue;
                }
                if constexpr (scalar_traits<K>::is_field) {
                    v.axpy(-v.terms[i].second, rows_[pr]);
                } else {
                    ZZ q;
                    mpz_fdiv_q(q.get_mpz_t(), v.terms[i].second.get_mpz_t(),
                               rows_[pr].lead_coeff().get_mpz_t());
                    if (!snclosure::is_zero(q)) v.axpy(-q, rows_[pr]);
                }
                i = skip_to(v, c, !scalar_traits<K>::is_field ? has_term(v, c) : false);
            }
            rows_[r] = std::move(v);
        }
    }

  private:
    std::int32_t cols_;
    std::vector<SparseVec<K>> rows_;
    std::vector<std::int32_t> pivot_row_;  // column -> row index, -1 if free

    static bool has_term(const SparseVec<K>& v, std::int32_t c) { return v.get(c) != nullptr; }

    static std::size_t skip_to(const SparseVec<K>& v, std::int32_t c, bool past) {
        auto it = std::lower_bound(v.terms.begin(), v.terms.end(), c,
                                   [](const auto& t, std::int32_t j) { return t.first < j; });
        std::size_t i = (std::size_t)(it - v.terms.begin());
        if (past && i < v.terms.size() && v.terms[i].first == c) ++i;
        return i;
    }

    void insert_one(SparseVec<K> v, std::vector<SparseVec<K>>* created,
                    std::vector<SparseVec<K>>& pending) {
        while (!v.is_zero()) {
            std::int32_t c = v.lead();
            std::int32_t r = pivot_row_[c];
            if (r < 0) {
                if constexpr (scalar_traits<K>::is_field) {
                    v.divide_by(v.lead_coeff());
                } else {
                    if (mpz_sgn(v.lead_coeff().get_mpz_t()) < 0) v.negate();
                }
                pivot_row_[c] = (std::int32_t)rows_.size();
                if (created) created->push_back(v);
                rows_.push_back(std::move(v));
                return;
            }
            if constexpr (scalar_traits<K>::is_field) {
                v.axpy(-v.lead_coeff(), rows_[r]);
            } else {
                const ZZ& d = rows_[r].lead_coeff();
                const ZZ& a = v.lead_coeff();
                ZZ q, rem;
                mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
                if (snclosure::is_zero(rem)) {
                    v.axpy(-q, rows_[r]);
                } else {
                    ZZ g, s, t;
                    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), d.get_mpz_t(),
                               a.get_mpz_t());
                    SparseVec<K> orig = std::move(rows_[r]);
                    SparseVec<K> combo = s * orig;
                    combo.axpy(t, v);  // lead coeff g > 0 at column c
                    orig.axpy(-divexact(d, g), combo);
                    v.axpy(-divexact(a, g), combo);
                    if (created) created->push_back(combo);
                    rows_[r] = std::move(combo);
                    pending.push_back(std::move(orig));  // lead column > c
                }
            }
        }
    }
};

template <FieldScalar K>
struct RrefResult {
    SparseMatrix<K> matrix;
    std::vector<std::int32_t> pivots;
    std::int32_t rank = 0;
};

// Reduced row echelon form over a field; row space preserved, shape kept
// (zero rows at the bottom).
template <FieldScalar K>
RrefResult<K> rref(const SparseMatrix<K>& m) {
    RowBasis<K> basis(m.ncols);
    for (const auto& r : m.row) basis.insert(r);
    basis.finalize();
    RrefResult<K> out;
    out.rank = basis.rank();
    out.pivots = basis.pivot_cols();
    out.matrix = SparseMatrix<K>(m.nrows, m.ncols);
    for (std::int32_t i = 0; i < basis.rank(); ++i) out.matrix.row[i] = basis.rows()[i];
    return out;
}

// Row-style Hermite normal form over ZZ; same shape, zero rows last,
// positive pivots, entries above each pivot reduced into [0, pivot).
inline SparseMatrix<ZZ> hnf(const SparseMatrix<ZZ>& m) {
    RowBasis<ZZ> basis(m.ncols);
    for (const auto& r : m.row) basis.insert(r);
    basis.finalize();
    SparseMatrix<ZZ> out(m.nrows, m.ncols);
    for (std::int32_t i = 0; i < basis.rank(); ++i) out.row[i] = basis.rows()[i];
    return out;
}

// Membership of v in the row space (fields) or row lattice (ZZ) of m.
template <ExactScalar K>
bool member(const SparseMatrix<K>& m, const SparseVec<K>& v) {
    for (const auto& t : v.terms)
        if (t.first < 0 || t.first >= m.ncols) throw mismatch_error("member: index out of range");
    RowBasis<K> basis(m.ncols);
    for (const auto& r : m.row) basis.insert(r);
    return basis.member(v);
}

template <ExactScalar K>
bool member(const SparseMatrix<K>& m, const std::vector<K>& v) {
    if ((std::int32_t)v.size() != m.ncols)
        throw mismatch_error("member: vector length does not match column count");
    SparseVec<K> sv;
    for (std::int32_t i = 0; i < (std::int32_t)v.size(); ++i)
        if (!is_zero(v[i])) sv.terms.emplace_back(i, v[i]);
    return member(m, sv);
}

// Exact determinant by fraction-free (Bareiss) elimination; the divisions
// are exact over any integral domain.
template <ExactScalar K>
K det(const SparseMatrix<K>& m) {
    if (m.nrows != m.ncols) throw mismatch_error("det: matrix is not square");
    const std::int32_t n = m.nrows;
    if (n == 0) return K(1);
    std::vector<std::vector<K>> a(n, std::vector<K>(n, K(0)));
    for (std::int32_t i = 0; i < n; ++i)
        for (const auto& t : m.row[i].terms) a[i][t.first] = t.second;
    bool negate = false;
    K prev(1);
    for (std::int32_t k = 0; k + 1 < n; ++k) {
        std::int32_t piv = -1;
        for (std::int32_t i = k; i < n; ++i)
            if (!is_zero(a[i][k])) {
                piv = i;
                break;
            }
        if (piv < 0) return K(0);
        if (piv != k) {
            std::swap(a[piv], a[k]);
            negate = !negate;
        }
        for (std::int32_t i = k + 1; i < n; ++i) {
            for (std::int32_t j = k + 1; j < n; ++j)
                a[i][j] = divide(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
            a[i][k] = K(0);
        }
        prev = a[k][k];
    }
    K d = a[n - 1][n - 1];
    return negate ? -d : d;
}

namespace detail {

// Least |entry| in the submatrix at (s,s), lowest row then column on ties.
inline bool snf_locate_pivot(const std::vector<std::vector<ZZ>>& a, std::int32_t s,
                             std::int32_t& pi, std::int32_t& pj) {
    const std::int32_t r = (std::int32_t)a.size();
    const std::int32_t c = r ? (std::int32_t)a[0].size() : 0;
    bool found = false;
    ZZ best;
    for (std::int32_t i = s; i < r; ++i)
        for (std::int32_t j = s; j < c; ++j) {
            if (is_zero(a[i][j])) continue;
            ZZ v = abs(a[i][j]);
            if (!found || v < best) {
                found = true;
                best = v;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace detail

// Invariant factors d_1 | d_2 | ... | d_r (each positive) of the row
// lattice of m; r equals the rank.
inline std::vector<ZZ> snf(const SparseMatrix<ZZ>& m) {
    const std::int32_t r = m.nrows, c = m.ncols;
    std::vector<std::vector<ZZ>> a(r, std::vector<ZZ>(c, ZZ(0)));
    for (std::int32_t i = 0; i < r; ++i)
        for (const auto& t : m.row[i].terms) a[i][t.first] = t.second;

    std::vector<ZZ> diag;
    for (std::int32_t s = 0; s < std::min(r, c); ++s) {
        std::int32_t pi, pj;
        if (!detail::snf_locate_pivot(a, s, pi, pj)) break;
        std::swap(a[pi], a[s]);
        if (pj != s)
            for (std::int32_t i = 0; i < r; ++i) std::swap(a[i][pj], a[i][s]);
        // alternate row and column elimination until row s and column s
        // are clear outside the pivot
        for (;;) {
            bool dirty = false;
            for (std::int32_t i = s + 1; i < r; ++i) {
                if (is_zero(a[i][s])) continue;
                ZZ q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][s].get_mpz_t(), a[s][s].get_mpz_t());
                for (std::int32_t j = s; j < c; ++j) a[i][j] -= q * a[s][j];
                if (!is_zero(a[i][s])) {
                    std::swap(a[i], a[s]);  // strictly smaller pivot
                    dirty = true;
                }
            }
            for (std::int32_t j = s + 1; j < c; ++j) {
                if (is_zero(a[s][j])) continue;
                ZZ q;
                mpz_fdiv_q(q.get_mpz_t(), a[s][j].get_mpz_t(), a[s][s].get_mpz_t());
                for (std::int32_t i = s; i < r; ++i) a[i][j] -= q * a[i][s];
                if (!is_zero(a[s][j])) {
                    for (std::int32_t i = 0; i < r; ++i) std::swap(a[i][j], a[i][s]);
                    dirty = true;
                }
            }
            if (!dirty) break;
        }
        diag.push_back(abs(a[s][s]));
    }
    // divisibility fix-up by gcd/lcm on pairs
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < diag.size(); ++i)
            for (std::size_t j = i + 1; j < diag.size(); ++j) {
                ZZ g;
                mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
                if (g != diag[i]) {
                    ZZ l = divexact(diag[i], g) * diag[j];
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
            }
    }
    return diag;
}

}  // namespace snclosure
