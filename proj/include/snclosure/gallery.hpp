#pragma once

#include <random>
#include <string>
#include <vector>

#include "snclosure/rank_ring.hpp"

namespace snclosure {

namespace detail {

template <ExactScalar K>
std::vector<std::vector<std::vector<K>>> empty_table(int n) {
    return std::vector<std::vector<std::vector<K>>>(
        n, std::vector<std::vector<K>>(n, std::vector<K>(n, K(0))));
}

template <ExactScalar K>
RankRing<K> checked(std::vector<std::vector<std::vector<K>>> table,
                    std::vector<std::string> names) {
    ValidationResult<K> r = validate(table, std::move(names));
    if (!r.ok())
        throw std::logic_error("gallery constructor produced an invalid table: " +
                               r.violations.front().describe());
    return *std::move(r.ring);
}

}  // namespace detail

/* B^n presented with unity first: basis 1, e_1, ..., e_{n-1} where the e_i
 * are complementary orthogonal idempotents (the n-th idempotent is
 * 1 - e_1 - ... - e_{n-1}). */
template <ExactScalar K>
RankRing<K> make_split(int n, const ScalarContext& ctx = {}) {
    if (n < 1) throw mismatch_error("make_split: rank must be positive");
    auto t = detail::empty_table<K>(n);
    const K one = make_scalar<K>(1, ctx);
    for (int j = 0; j < n; ++j) {
        t[0][j][j] = one;
        t[j][0][j] = one;
    }
    for (int i = 1; i < n; ++i) t[i][i][i] = one;  // e_i^2 = e_i, e_i e_j = 0
    std::vector<std::string> names{"1"};
    for (int i = 1; i < n; ++i) names.push_back("e" + std::to_string(i));
    return detail::checked(std::move(t), std::move(names));
}

/* B[x]/f for monic f, basis 1, x, ..., x^{n-1}.  f is the ascending
 * coefficient list of length n+1 with leading coefficient 1. */
template <ExactScalar K>
RankRing<K> make_monogenic(const std::vector<K>& f) {
    const int n = (int)f.size() - 1;
    if (n < 1) throw mismatch_error("make_monogenic: degree must be positive");
    if (!is_zero(f[n] - K(1))) throw mismatch_error("make_monogenic: polynomial is not monic");
    // powers of x modulo f, up to x^(2n-2)
    std::vector<std::vector<K>> pow(2 * n - 1, std::vector<K>(n, K(0)));
    for (int k = 0; k < n; ++k) pow[k][k] = K(1);
    for (int k = n; k <= 2 * n - 2; ++k) {
        std::vector<K> shifted(n, K(0));
        K top = pow[k - 1][n - 1];
        for (int i = n - 1; i >= 1; --i) shifted[i] = pow[k - 1][i - 1];
        for (int i = 0; i < n; ++i) shifted[i] = shifted[i] - top * f[i];
        pow[k] = std::move(shifted);
    }
    auto t = detail::empty_table<K>(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = pow[i + j];
    std::vector<std::string> names{"1", "x"};
    for (int i = 2; i < n; ++i) names.push_back("x^" + std::to_string(i));
    if (n == 1) names.resize(1);
    return detail::checked(std::move(t), std::move(names));
}

/* The rank-3 ring attached to (a,b,c,d): basis 1, x, y with
 *   xy = ad,  x^2 = -ac + bx + ay,  y^2 = -bd + dx + cy. */
template <ExactScalar K>
RankRing<K> make_cubic(const K& a, const K& b, const K& c, const K& d) {
    auto t = detail::empty_table<K>(3);
    const K one(1);
    for (int j = 0; j < 3; ++j) {
        t[0][j][j] = one;
        t[j][0][j] = one;
    }
    // x*y
    t[1][2][0] = a * d;
    t[2][1][0] = a * d;
    // x^2
    t[1][1][0] = -(a * c);
    t[1][1][1] = b;
    t[1][1][2] = a;
    // y^2
    t[2][2][0] = -(b * d);
    t[2][2][1] = d;
    t[2][2][2] = c;
    return detail::checked(std::move(t), {"1", "x", "y"});
}

// Discriminant of the binary cubic form a x^3 + b x^2 y + c x y^2 + d y^3.
template <ExactScalar K>
K cubic_form_disc(const K& a, const K& b, const K& c, const K& d) {
    return K(18) * a * b * c * d - K(4) * b * b * b * d + b * b * c * c - K(4) * a * c * c * c -
           K(27) * a * a * d * d;
}

/* K[x_1,...,x_{n-1}]/(x_1,...,x_{n-1})^2: every product of non-unity basis
 * elements vanishes.  Only defined over a field. */
template <FieldScalar K>
RankRing<K> make_degenerate(int n, const ScalarContext& ctx = {}) {
    if (n < 1) throw mismatch_error("make_degenerate: rank must be positive");
    auto t = detail::empty_table<K>(n);
    const K one = make_scalar<K>(1, ctx);
    for (int j = 0; j < n; ++j) {
        t[0][j][j] = one;
        t[j][0][j] = one;
    }
    std::vector<std::string> names{"1"};
    for (int i = 1; i < n; ++i) names.push_back("x" + std::to_string(i));
    return detail::checked(std::move(t), std::move(names));
}

/* The quartic order Z + 2(Z[t]/(t^4-2)) with basis 1, X=2t, Y=2t^2, Z=2t^3:
 * X^2=2Y, XY=2Z, XZ=8, Y^2=8, YZ=4X, Z^2=4Y. */
inline RankRing<ZZ> make_imprimitive_quartic_order() {
    auto t = detail::empty_table<ZZ>(4);
    const ZZ one(1);
    for (int j = 0; j < 4; ++j) {
        t[0][j][j] = one;
        t[j][0][j] = one;
    }
    auto sym = [&](int i, int j, int k, long v) {
        t[i][j][k] = ZZ(v);
        t[j][i][k] = ZZ(v);
    };
    sym(1, 1, 2, 2);  // X^2 = 2Y
    sym(1, 2, 3, 2);  // XY = 2Z
    sym(1, 3, 0, 8);  // XZ = 8
    sym(2, 2, 0, 8);  // Y^2 = 8
    sym(2, 3, 1, 4);  // YZ = 4X
    sym(3, 3, 2, 4);  // Z^2 = 4Y
    return detail::checked(std::move(t), {"1", "X", "Y", "Z"});
}

namespace detail {

inline std::vector<long long> poly_mod(std::vector<long long> r,
                                       const std::vector<long long>& g, long long p) {
    const int dg = (int)g.size() - 1;
    while ((int)r.size() - 1 >= dg) {
        long long lead = r.back() % p;
        int shift = (int)r.size() - 1 - dg;
        if (lead != 0)
            for (int i = 0; i <= dg; ++i) {
                r[i + shift] = ((r[i + shift] - lead * g[i]) % p + p) % p;
            }
        r.pop_back();
    }
    while (!r.empty() && r.back() % p == 0) r.pop_back();
    return r;
}

inline bool poly_divides(const std::vector<long long>& g, const std::vector<long long>& f,
                         long long p) {
    return poly_mod(f, g, p).empty();
}

}  // namespace detail

// Lexicographically least monic irreducible of degree n over GF(p)
// (coefficients ascending, constant term varies fastest).
inline std::vector<long long> least_irreducible_poly(long long p, int n) {
    if (!is_prime_u64((std::uint64_t)p)) throw mismatch_error("p must be prime");
    double size = 1;
    for (int i = 0; i < n; ++i) size *= (double)p;
    if (n < 1 || size > 1e6) throw mismatch_error("finite field too large for the gallery");
    std::vector<long long> f(n + 1, 0);
    f[n] = 1;
    const long long total = (long long)size;
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = 0; i < n; ++i) {
            f[i] = c % p;
            c /= p;
        }
        bool irreducible = true;
        // trial division by every monic polynomial of degree 1..n/2
        for (int d = 1; 2 * d <= n && irreducible; ++d) {
            long long dtotal = 1;
            for (int i = 0; i < d; ++i) dtotal *= p;
            std::vector<long long> g(d + 1, 0);
            g[d] = 1;
            for (long long gc = 0; gc < dtotal && irreducible; ++gc) {
                long long cc = gc;
                for (int i = 0; i < d; ++i) {
                    g[i] = cc % p;
                    cc /= p;
                }
                if (detail::poly_divides(g, f, p)) irreducible = false;
            }
        }
        if (irreducible) return f;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

// GF(p^n) as a monogenic rank-n ring over GF(p).
inline RankRing<GFp> make_finite_field(long long p, int n) {
    std::vector<long long> f = least_irreducible_poly(p, n);
    std::vector<GFp> coeffs;
    coeffs.reserve(f.size());
    for (long long c : f) coeffs.push_back(GFp::in(p, c));
    return make_monogenic(coeffs);
}

// Direct product A x B, re-based so that index 0 is the unity (1,1).
template <ExactScalar K>
RankRing<K> product_ring(const RankRing<K>& A, const RankRing<K>& B) {
    const int k = A.n, m = B.n, n = k + m;
    // basis: (1,1), (a_i,0) for 1<=i<k, (0,1), (0,b_j) for 1<=j<m
    auto pair_coords = [&](const std::vector<K>& x, const std::vector<K>& y) {
        std::vector<K> c(n, K(0));
        c[0] = x[0];
        for (int i = 1; i < k; ++i) c[i] = x[i];
        c[k] = y[0] - x[0];
        for (int j = 1; j < m; ++j) c[k + j] = y[j];
        return c;
    };
    std::vector<std::vector<K>> ax(n), bx(n);  // components of each basis element
    for (int i = 0; i < n; ++i) {
        ax[i].assign(k, K(0));
        bx[i].assign(m, K(0));
    }
    ax[0][0] = K(1);
    bx[0][0] = K(1);
    for (int i = 1; i < k; ++i) ax[i][i] = K(1);
    bx[k][0] = K(1);
    for (int j = 1; j < m; ++j) bx[k + j][j] = K(1);
    auto t = detail::empty_table<K>(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t[i][j] = pair_coords(detail::mul_coords(A.table, k, ax[i], ax[j]),
                                  detail::mul_coords(B.table, m, bx[i], bx[j]));
    return detail::checked(std::move(t), {});
}

// Image of a ZZ ring under a coefficient map (mod-p reduction, ZZ -> QQ).
template <ExactScalar K2>
RankRing<K2> map_ring(const RankRing<ZZ>& ring, const ScalarContext& ctx = {}) {
    auto t = detail::empty_table<K2>(ring.n);
    for (int i = 0; i < ring.n; ++i)
        for (int j = 0; j < ring.n; ++j)
            for (int k = 0; k < ring.n; ++k) {
                const ZZ& v = ring.table[i][j][k];
                if constexpr (std::is_same_v<K2, GFp>)
                    t[i][j][k] = GFp::in(ctx.p, v);
                else
                    t[i][j][k] = K2(v);
            }
    return detail::checked(std::move(t), ring.names);
}

/* Seeded random valid ring: a random gallery shape (split, monogenic,
 * cubic, degenerate, or a product of smaller random rings) pushed through a
 * random unimodular change of basis that fixes the unity. */
template <ExactScalar K>
RankRing<K> random_ring(int n, std::mt19937_64& rng, const ScalarContext& ctx = {}) {
    auto rand_small = [&](long lo, long hi) {
        return (long)(lo + (long long)(rng() % (unsigned long long)(hi - lo + 1)));
    };
    auto rand_coeff = [&]() -> K {
        if constexpr (std::is_same_v<K, GFp>)
            return GFp::in(ctx.p, rand_small(0, ctx.p - 1));
        else
            return make_scalar<K>(rand_small(-4, 4), ctx);
    };

    RankRing<K> base;
    const int kind = (int)(rng() % 5);
    if (n == 1) {
        base = make_split<K>(1, ctx);
    } else if (kind == 0) {
        base = make_split<K>(n, ctx);
    } else if (kind == 1 && n == 3) {
        base = make_cubic<K>(rand_coeff(), rand_coeff(), rand_coeff(), rand_coeff());
    } else if (kind == 2 && scalar_traits<K>::is_field) {
        if constexpr (scalar_traits<K>::is_field)
            base = make_degenerate<K>(n, ctx);
    } else if (kind == 3 && n >= 2) {
        int split_at = 1 + (int)(rng() % (unsigned)(n - 1));
        base = product_ring(random_ring<K>(split_at, rng, ctx),
                            random_ring<K>(n - split_at, rng, ctx));
    } else {
        std::vector<K> f(n + 1, K(0));
        f[n] = make_scalar<K>(1, ctx);
        for (int i = 0; i < n; ++i) f[i] = rand_coeff();
        base = make_monogenic(f);
    }
    if (base.n != n) base = make_split<K>(n, ctx);  // kind unavailable at this rank

    // random change of basis fixing b_0 = 1
    std::vector<std::vector<K>> T(n, std::vector<K>(n, K(0)));
    std::vector<std::vector<K>> Tinv(n, std::vector<K>(n, K(0)));
    for (int i = 0; i < n; ++i) T[i][i] = Tinv[i][i] = make_scalar<K>(1, ctx);
    const int ops = 2 * n + 2;
    for (int o = 0; o < ops && n > 1; ++o) {
        int i = 1 + (int)(rng() % (unsigned)(n - 1));
        int which = (int)(rng() % 3);
        if (which == 0 && n > 2) {
            int j = 1 + (int)(rng() % (unsigned)(n - 1));
            if (j == i) j = 1 + (i % (n - 1));
            K c = rand_coeff();
            for (int t = 0; t < n; ++t) T[i][t] = T[i][t] + c * T[j][t];
            for (int t = 0; t < n; ++t) Tinv[t][j] = Tinv[t][j] - c * Tinv[t][i];
        } else if (which == 1) {
            K c = rand_coeff();  // translate by a multiple of the unity
            for (int t = 0; t < n; ++t) T[i][t] = T[i][t] + c * T[0][t];
            for (int t = 0; t < n; ++t) Tinv[t][0] = Tinv[t][0] - c * Tinv[t][i];
        } else if (n > 2) {
            int j = 1 + (int)(rng() % (unsigned)(n - 1));
            if (j != i) {
                for (int t = 0; t < n; ++t) std::swap(T[i][t], T[j][t]);
                for (int t = 0; t < n; ++t) std::swap(Tinv[t][i], Tinv[t][j]);
            }
        }
    }
    auto t = detail::empty_table<K>(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<K> prod = detail::mul_coords(base.table, n, T[i], T[j]);
            std::vector<K> y(n, K(0));
            for (int kk = 0; kk < n; ++kk)
                for (int mgl = 0; mgl < n; ++mgl) y[kk] = y[kk] + prod[mgl] * Tinv[mgl][kk];
            t[i][j] = std::move(y);
        }
    return detail::checked(std::move(t), {});
}

}  // namespace snclosure
