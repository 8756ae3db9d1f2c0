#pragma once

#include <optional>
#include <string>
#include <vector>

#include "snclosure/linalg.hpp"
#include "snclosure/scalar.hpp"

namespace snclosure {

/* A ring of rank n over the base, given by structure constants with
 * distinguished unity at basis index 0:
 *   b_i * b_j = sum_k table[i][j][k] * b_k,   b_0 = 1.
 * Instances are built through validate() or the gallery constructors and
 * are immutable afterwards. */
template <ExactScalar K>
struct RankRing {
    int n = 0;
    std::vector<std::string> names;
    std::vector<std::vector<std::vector<K>>> table;

    const std::vector<K>& product(int i, int j) const { return table[i][j]; }

    friend bool operator==(const RankRing& a, const RankRing& b) {
        return a.n == b.n && a.table == b.table;
    }
    friend bool operator!=(const RankRing& a, const RankRing& b) { return !(a == b); }
};

template <ExactScalar K>
struct RingElement {
    const RankRing<K>* ring = nullptr;
    std::vector<K> coords;
};

struct Violation {
    enum Kind { not_unital, not_commutative, not_associative } kind;
    int i = 0, j = 0, k = 0;

    std::string describe() const {
        switch (kind) {
            case not_unital:
                return "basis element 0 is not the unity: 1*b_" + std::to_string(j) +
                       " != b_" + std::to_string(j);
            case not_commutative:
                return "not commutative at (" + std::to_string(i) + "," + std::to_string(j) + ")";
            default:
                return "not associative at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                       std::to_string(k) + ")";
        }
    }
};

template <ExactScalar K>
struct ValidationResult {
    std::optional<RankRing<K>> ring;
    std::vector<Violation> violations;
    bool ok() const { return ring.has_value(); }
};

namespace detail {

template <ExactScalar K>
std::vector<K> mul_coords(const std::vector<std::vector<std::vector<K>>>& table, int n,
                          const std::vector<K>& u, const std::vector<K>& v) {
    std::vector<K> w(n, K(0));
    for (int i = 0; i < n; ++i) {
        if (is_zero(u[i])) continue;
        for (int j = 0; j < n; ++j) {
            if (is_zero(v[j])) continue;
            K c = u[i] * v[j];
            const auto& t = table[i][j];
            for (int k = 0; k < n; ++k)
                if (!is_zero(t[k])) w[k] = w[k] + c * t[k];
        }
    }
    return w;
}

}  // namespace detail

/* Checks the three structure invariants (unity at index 0, commutativity,
 * associativity) and returns the ring on success; on failure every violated
 * witness is reported. */
template <ExactScalar K>
ValidationResult<K> validate(const std::vector<std::vector<std::vector<K>>>& table,
                             std::vector<std::string> names = {}) {
    ValidationResult<K> res;
    const int n = (int)table.size();
    if (n == 0) {
        res.violations.push_back({Violation::not_unital, 0, 0, 0});
        return res;
    }
    for (const auto& r : table) {
        if ((int)r.size() != n) throw mismatch_error("structure table is not n x n x n");
        for (const auto& v : r)
            if ((int)v.size() != n) throw mismatch_error("structure table is not n x n x n");
    }
    for (int j = 0; j < n; ++j) {
        bool good = true;
        for (int k = 0; k < n; ++k)
            if (!(is_zero(table[0][j][k]) == (k != j)) ||
                (k == j && !is_zero(table[0][j][k] - K(1))))
                good = false;
        if (!good) res.violations.push_back({Violation::not_unital, 0, j, 0});
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (table[i][j] != table[j][i])
                res.violations.push_back({Violation::not_commutative, i, j, 0});
    // associativity: (b_i b_j) b_k == b_i (b_j b_k), coordinate-wise
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                std::vector<K> lhs(n, K(0)), rhs(n, K(0));
                for (int m = 0; m < n; ++m) {
                    if (!is_zero(table[i][j][m]))
                        for (int t = 0; t < n; ++t)
                            lhs[t] = lhs[t] + table[i][j][m] * table[m][k][t];
                    if (!is_zero(table[j][k][m]))
                        for (int t = 0; t < n; ++t)
                            rhs[t] = rhs[t] + table[j][k][m] * table[i][m][t];
                }
                if (lhs != rhs) res.violations.push_back({Violation::not_associative, i, j, k});
            }
    if (res.violations.empty()) {
        RankRing<K> ring;
        ring.n = n;
        if ((int)names.size() == n) {
            ring.names = std::move(names);
        } else {
            ring.names.push_back("1");
            for (int i = 1; i < n; ++i) ring.names.push_back("b" + std::to_string(i));
        }
        ring.table = table;
        res.ring = std::move(ring);
    }
    return res;
}

template <ExactScalar K>
RingElement<K> element(const RankRing<K>& ring, std::vector<K> coords) {
    if ((int)coords.size() != ring.n)
        throw mismatch_error("element coordinate length does not match ring rank");
    return {&ring, std::move(coords)};
}

template <ExactScalar K>
RingElement<K> basis_element(const RankRing<K>& ring, int i) {
    std::vector<K> c(ring.n, K(0));
    c[i] = K(1);
    return {&ring, std::move(c)};
}

template <ExactScalar K>
RingElement<K> ring_one(const RankRing<K>& ring) {
    return basis_element(ring, 0);
}

template <ExactScalar K>
RingElement<K> ring_zero(const RankRing<K>& ring) {
    return {&ring, std::vector<K>(ring.n, K(0))};
}

namespace detail {
template <ExactScalar K>
void check_same_parent(const RingElement<K>& a, const RingElement<K>& b) {
    if (!a.ring || !b.ring || *a.ring != *b.ring)
        throw mismatch_error("ring elements have different parents");
}
}  // namespace detail

template <ExactScalar K>
RingElement<K> operator+(const RingElement<K>& a, const RingElement<K>& b) {
    detail::check_same_parent(a, b);
    RingElement<K> r = a;
    for (int i = 0; i < (int)r.coords.size(); ++i) r.coords[i] = r.coords[i] + b.coords[i];
    return r;
}

template <ExactScalar K>
RingElement<K> operator-(const RingElement<K>& a, const RingElement<K>& b) {
    detail::check_same_parent(a, b);
    RingElement<K> r = a;
    for (int i = 0; i < (int)r.coords.size(); ++i) r.coords[i] = r.coords[i] - b.coords[i];
    return r;
}

template <ExactScalar K>
RingElement<K> operator*(const RingElement<K>& a, const RingElement<K>& b) {
    detail::check_same_parent(a, b);
    return {a.ring, detail::mul_coords(a.ring->table, a.ring->n, a.coords, b.coords)};
}

template <ExactScalar K>
RingElement<K> operator*(const K& c, const RingElement<K>& a) {
    RingElement<K> r = a;
    for (auto& x : r.coords) x = c * x;
    return r;
}

template <ExactScalar K>
bool operator==(const RingElement<K>& a, const RingElement<K>& b) {
    detail::check_same_parent(a, b);
    return a.coords == b.coords;
}

template <ExactScalar K>
bool is_zero_element(const RingElement<K>& a) {
    for (const auto& x : a.coords)
        if (!is_zero(x)) return false;
    return true;
}

// Matrix of multiplication by a: column j holds the coordinates of a*b_j.
template <ExactScalar K>
SparseMatrix<K> mult_matrix(const RankRing<K>& ring, const RingElement<K>& a) {
    if (*a.ring != ring) throw mismatch_error("element does not belong to this ring");
    const int n = ring.n;
    SparseMatrix<K> m(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<K> col(n, K(0));
        for (int k = 0; k < n; ++k) {
            if (is_zero(a.coords[k])) continue;
            const auto& t = ring.table[k][j];
            for (int i = 0; i < n; ++i)
                if (!is_zero(t[i])) col[i] = col[i] + a.coords[k] * t[i];
        }
        for (int i = 0; i < n; ++i)
            if (!is_zero(col[i])) m.set(i, j, col[i]);
    }
    return m;
}

/* Characteristic polynomial x^n - s_1 x^{n-1} + ... + (-1)^n s_n stored as
 * the signed coefficient list [1, -s_1, s_2, ...].  Read in ascending order
 * the same list gives the reverse characteristic polynomial
 * Q_a(T) = det(1 - aT). */
template <ExactScalar K>
struct CharPoly {
    std::vector<K> signed_coeffs;

    int degree() const { return (int)signed_coeffs.size() - 1; }
    K s(int j) const {
        const K& c = signed_coeffs.at(j);
        return (j % 2) ? -c : c;
    }
    const std::vector<K>& reverse_coeffs() const { return signed_coeffs; }
};

namespace detail {

// Berkowitz vertex expansion: division-free, valid over any commutative
// base (needed for GF(2), GF(3) where Newton recurrences would divide).
template <ExactScalar K>
std::vector<K> berkowitz(const std::vector<std::vector<K>>& a, int n) {
    std::vector<K> p{K(1)};
    for (int k = 1; k <= n; ++k) {
        std::vector<K> tcol(k + 1, K(0));
        tcol[0] = K(1);
        tcol[1] = -a[k - 1][k - 1];
        if (k >= 2) {
            std::vector<K> w(k - 1);
            for (int i = 0; i < k - 1; ++i) w[i] = a[i][k - 1];
            for (int d = 2; d <= k; ++d) {
                K dot(0);
                for (int i = 0; i < k - 1; ++i) dot = dot + a[k - 1][i] * w[i];
                tcol[d] = -dot;
                if (d == k) break;
                std::vector<K> w2(k - 1, K(0));
                for (int i = 0; i < k - 1; ++i) {
                    if (is_zero(w[i])) continue;
                    for (int r = 0; r < k - 1; ++r) w2[r] = w2[r] + a[r][i] * w[i];
                }
                w = std::move(w2);
            }
        }
        std::vector<K> np(k + 1, K(0));
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= std::min(i, k - 1); ++j)
                if (i - j <= k) np[i] = np[i] + tcol[i - j] * p[j];
        p = std::move(np);
    }
    return p;
}

}  // namespace detail

template <ExactScalar K>
CharPoly<K> char_poly(const RankRing<K>& ring, const RingElement<K>& a) {
    if (*a.ring != ring) throw mismatch_error("element does not belong to this ring");
    const int n = ring.n;
    SparseMatrix<K> m = mult_matrix(ring, a);
    std::vector<std::vector<K>> dense(n, std::vector<K>(n, K(0)));
    for (int i = 0; i < n; ++i)
        for (const auto& t : m.row[i].terms) dense[i][t.first] = t.second;
    return {detail::berkowitz(dense, n)};
}

// Trace of multiplication by a (equals s_1 of the characteristic polynomial).
template <ExactScalar K>
K trace(const RankRing<K>& ring, const RingElement<K>& a) {
    K t(0);
    for (int k = 0; k < ring.n; ++k) {
        if (is_zero(a.coords[k])) continue;
        K diag(0);
        for (int i = 0; i < ring.n; ++i) diag = diag + ring.table[k][i][i];
        t = t + a.coords[k] * diag;
    }
    return t;
}

// P_a(a) == 0 inside the ring; holds for every valid ring (Cayley-Hamilton).
template <ExactScalar K>
bool cayley_hamilton(const RankRing<K>& ring, const RingElement<K>& a) {
    CharPoly<K> p = char_poly(ring, a);
    RingElement<K> acc = ring_zero(ring);
    acc.coords[0] = p.signed_coeffs[0];
    for (int j = 1; j <= ring.n; ++j) {
        acc = acc * a;
        acc.coords[0] = acc.coords[0] + p.signed_coeffs[j];
    }
    return is_zero_element(acc);
}

// Determinant of the trace-form Gram matrix G[i][j] = Tr(b_i b_j).
template <ExactScalar K>
K discriminant(const RankRing<K>& ring) {
    const int n = ring.n;
    std::vector<K> tau(n, K(0));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) tau[k] = tau[k] + ring.table[k][i][i];
    SparseMatrix<K> gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            K g(0);
            for (int k = 0; k < n; ++k)
                if (!is_zero(ring.table[i][j][k])) g = g + ring.table[i][j][k] * tau[k];
            if (!is_zero(g)) gram.set(i, j, g);
        }
    return det(gram);
}

// The ring is etale when its discriminant is a unit in the base.
template <ExactScalar K>
bool is_etale(const RankRing<K>& ring) {
    K d = discriminant(ring);
    if constexpr (scalar_traits<K>::is_field) {
        return !is_zero(d);
    } else {
        return d == K(1) || d == K(-1);
    }
}

}  // namespace snclosure
