#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "snclosure/errors.hpp"

namespace snclosure {

using ZZ = mpz_class;
using QQ = mpq_class;

enum class BaseTag { integers, rationals, prime_field };

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/* Prime-field element with runtime modulus, canonical value in [0, p).
 *
 * A value constructed from a plain integer carries no modulus yet; it binds
 * to the modulus of the first bound operand it meets.  This lets generic
 * code write K(0), K(1), K(-3) without threading a field context around.
 * Combining two values bound to different moduli throws.
 */
class GFp {
  public:
    GFp() : v_(0), p_(0) {}
    GFp(int x) : v_(x), p_(0) {}
    GFp(long x) : v_(x), p_(0) {}
    GFp(long long x) : v_(x), p_(0) {}

    static GFp in(long long p, long long x) {
        check_modulus(p);
        GFp r;
        r.p_ = p;
        r.v_ = mod(x, p);
        return r;
    }
    static GFp in(long long p, const ZZ& x) {
        check_modulus(p);
        GFp r;
        r.p_ = p;
        r.v_ = (long long)mpz_fdiv_ui(x.get_mpz_t(), (unsigned long)p);
        return r;
    }

    bool bound() const { return p_ != 0; }
    long long modulus() const { return p_; }
    long long value() const { return bound() ? v_ : mod_if_needed(); }
    long long raw() const { return v_; }

    friend GFp operator+(const GFp& a, const GFp& b) {
        long long p = merged(a, b);
        if (!p) return GFp(a.v_ + b.v_);
        return in(p, mod(a.v_, p) + mod(b.v_, p));
    }
    friend GFp operator-(const GFp& a, const GFp& b) {
        long long p = merged(a, b);
        if (!p) return GFp(a.v_ - b.v_);
        return in(p, mod(a.v_, p) - mod(b.v_, p));
    }
    friend GFp operator*(const GFp& a, const GFp& b) {
        long long p = merged(a, b);
        if (!p) return GFp(a.v_ * b.v_);
        return in(p, (long long)(((__int128)mod(a.v_, p) * mod(b.v_, p)) % p));
    }
    friend GFp operator/(const GFp& a, const GFp& b) {
        long long p = merged(a, b);
        if (!p) {
            // two unbound literals: behave like exact integer division
            if (b.v_ == 0 || a.v_ % b.v_ != 0)
                throw mismatch_error("inexact division of unbound GF(p) literals");
            return GFp(a.v_ / b.v_);
        }
        return a * b.inverse_with(p);
    }
    GFp operator-() const { return bound() ? in(p_, -v_) : GFp(-v_); }

    GFp& operator+=(const GFp& b) { return *this = *this + b; }
    GFp& operator-=(const GFp& b) { return *this = *this - b; }
    GFp& operator*=(const GFp& b) { return *this = *this * b; }
    GFp& operator/=(const GFp& b) { return *this = *this / b; }

    friend bool operator==(const GFp& a, const GFp& b) {
        long long p = merged(a, b);
        if (!p) return a.v_ == b.v_;
        return mod(a.v_, p) == mod(b.v_, p);
    }
    friend bool operator!=(const GFp& a, const GFp& b) { return !(a == b); }

    GFp inverse() const { return inverse_with(p_); }

  private:
    long long v_;
    long long p_;  // 0 = not yet bound to a field

    static void check_modulus(long long p) {
        if (p < 2 || !is_prime_u64((std::uint64_t)p))
            throw mismatch_error("GF(p) modulus must be prime, got " + std::to_string(p));
        if (p > (1LL << 31))
            throw mismatch_error("GF(p) modulus too large: " + std::to_string(p));
    }
    static long long mod(long long x, long long p) {
        long long r = x % p;
        return r < 0 ? r + p : r;
    }
    long long mod_if_needed() const { return v_; }
    static long long merged(const GFp& a, const GFp& b) {
        if (a.p_ && b.p_ && a.p_ != b.p_)
            throw mismatch_error("mixing GF(" + std::to_string(a.p_) + ") with GF(" +
                                 std::to_string(b.p_) + ")");
        return a.p_ ? a.p_ : b.p_;
    }
    GFp inverse_with(long long p) const {
        if (!p) throw mismatch_error("division in GF(p) requires a bound modulus");
        long long a = mod(v_, p);
        if (a == 0) throw mismatch_error("division by zero in GF(" + std::to_string(p) + ")");
        // extended Euclid
        long long t = 0, newt = 1, r = p, newr = a;
        while (newr != 0) {
            long long q = r / newr;
            long long tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        return in(p, t);
    }
};

template <class K>
struct scalar_traits;

template <>
struct scalar_traits<ZZ> {
    static constexpr BaseTag tag = BaseTag::integers;
    static constexpr bool is_field = false;
    static std::string name() { return "ZZ"; }
};
template <>
struct scalar_traits<QQ> {
    static constexpr BaseTag tag = BaseTag::rationals;
    static constexpr bool is_field = true;
    static std::string name() { return "QQ"; }
};
template <>
struct scalar_traits<GFp> {
    static constexpr BaseTag tag = BaseTag::prime_field;
    static constexpr bool is_field = true;
    static std::string name() { return "GF"; }
};

template <class K>
concept ExactScalar = requires { scalar_traits<K>::tag; };

template <class K>
concept FieldScalar = ExactScalar<K> && scalar_traits<K>::is_field;

inline bool is_zero(const ZZ& x) { return mpz_sgn(x.get_mpz_t()) == 0; }
inline bool is_zero(const QQ& x) { return mpq_sgn(x.get_mpq_t()) == 0; }
inline bool is_zero(const GFp& x) { return x == GFp(0); }

// disambiguate GMP expression templates
template <class U>
bool is_zero(const __gmp_expr<__mpz_struct[1], U>& e) {
    return is_zero(ZZ(e));
}
template <class U>
bool is_zero(const __gmp_expr<__mpq_struct[1], U>& e) {
    return is_zero(QQ(e));
}

// Exact integer quotient; throws if the division is not exact.
inline ZZ divexact(const ZZ& a, const ZZ& b) {
    ZZ q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (!is_zero(r)) throw std::logic_error("inexact integer division");
    return q;
}

// Generic exact division: field inverse for fields, exact quotient over ZZ.
inline QQ divide(const QQ& a, const QQ& b) { return a / b; }
inline GFp divide(const GFp& a, const GFp& b) { return a / b; }
inline ZZ divide(const ZZ& a, const ZZ& b) { return divexact(a, b); }

inline std::string to_string(const ZZ& x) { return x.get_str(); }
inline std::string to_string(const QQ& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}
inline std::string to_string(const GFp& x) { return std::to_string(x.value()); }

// Scalar construction/parsing needs the prime for GF(p); the context is
// ignored elsewhere.
struct ScalarContext {
    long long p = 0;
};

template <ExactScalar K>
K make_scalar(long v, const ScalarContext& ctx);

template <>
inline ZZ make_scalar<ZZ>(long v, const ScalarContext&) {
    return ZZ(v);
}
template <>
inline QQ make_scalar<QQ>(long v, const ScalarContext&) {
    return QQ(v);
}
template <>
inline GFp make_scalar<GFp>(long v, const ScalarContext& ctx) {
    return GFp::in(ctx.p, v);
}

template <ExactScalar K>
K parse_scalar(const std::string& s, const ScalarContext& ctx);

template <>
inline ZZ parse_scalar<ZZ>(const std::string& s, const ScalarContext&) {
    return ZZ(s);
}
template <>
inline QQ parse_scalar<QQ>(const std::string& s, const ScalarContext&) {
    QQ q(s);
    q.canonicalize();
    return q;
}
template <>
inline GFp parse_scalar<GFp>(const std::string& s, const ScalarContext& ctx) {
    return GFp::in(ctx.p, ZZ(s));
}

}  // namespace snclosure
