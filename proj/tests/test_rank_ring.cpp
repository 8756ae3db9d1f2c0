#include <gtest/gtest.h>

#include <random>

#include "snclosure/gallery.hpp"
#include "snclosure/rank_ring.hpp"

using namespace snclosure;

namespace {

template <ExactScalar K>
RingElement<K> elem(const RankRing<K>& r, std::vector<long> coords) {
    std::vector<K> c;
    for (long v : coords) c.push_back(K(v));
    return element(r, std::move(c));
}

RingElement<GFp> elem_mod(const RankRing<GFp>& r, long long p, std::vector<long> coords) {
    std::vector<GFp> c;
    for (long v : coords) c.push_back(GFp::in(p, v));
    return element(r, std::move(c));
}

}  // namespace

TEST(Validate, SplitComponentwiseTable) {
    auto r = make_split<ZZ>(3);
    EXPECT_TRUE(validate(r.table).ok());
    EXPECT_EQ(r.n, 3);
    EXPECT_EQ(r.names[0], "1");
}

TEST(Validate, AssociativityWitness) {
    auto r = make_split<ZZ>(3);
    auto table = r.table;
    // break (b1 b1) b2 = b1 (b1 b2)
    table[1][1] = {ZZ(0), ZZ(0), ZZ(1)};
    auto res = validate(table);
    ASSERT_FALSE(res.ok());
    bool found = false;
    for (const auto& v : res.violations)
        if (v.kind == Violation::not_associative && v.i == 1 && v.j == 1 && v.k == 2) found = true;
    EXPECT_TRUE(found) << "expected witness (1,1,2)";
}

TEST(Validate, CommutativityAndUnityWitnesses) {
    auto table = make_split<ZZ>(2).table;
    table[1][0] = {ZZ(0), ZZ(2)};  // breaks commutativity with (0,1)
    auto res = validate(table);
    ASSERT_FALSE(res.ok());
    bool comm = false;
    for (const auto& v : res.violations)
        if (v.kind == Violation::not_commutative) comm = true;
    EXPECT_TRUE(comm);
}

TEST(Validate, CubicRingFromSpecTable) {
    // (a,b,c,d) = (1,0,0,1): xy = 1, x^2 = y, y^2 = x, i.e. Z[x]/(x^3-1)
    auto r = make_cubic<ZZ>(ZZ(1), ZZ(0), ZZ(0), ZZ(1));
    EXPECT_EQ(r.table[1][2][0], ZZ(1));
    EXPECT_EQ(r.table[1][1][2], ZZ(1));
    EXPECT_EQ(r.table[2][2][1], ZZ(1));
    auto x = basis_element(r, 1);
    auto cube = x * x * x;
    EXPECT_EQ(cube, ring_one(r));
}

TEST(Validate, ShapeErrors) {
    std::vector<std::vector<std::vector<ZZ>>> bad(2);
    bad[0] = {{ZZ(1), ZZ(0)}, {ZZ(0), ZZ(1)}};
    bad[1] = {{ZZ(0), ZZ(1)}};  // ragged
    EXPECT_THROW(validate(bad), mismatch_error);
}

TEST(Validate, FuzzedPerturbationsRejected) {
    std::mt19937_64 rng(2024);
    auto r = make_cubic<ZZ>(ZZ(2), ZZ(-1), ZZ(3), ZZ(1));
    int rejected = 0, trials = 60;
    for (int t = 0; t < trials; ++t) {
        auto table = r.table;
        int i = 1 + (int)(rng() % 2), j = (int)(rng() % 3), k = (int)(rng() % 3);
        table[i][j][k] += ZZ(1 + (long)(rng() % 3));
        if (!validate(table).ok()) ++rejected;
    }
    EXPECT_GE(rejected, trials - 2);  // a random bump almost surely breaks an invariant
}

TEST(MultMatrix, UnityIsIdentity) {
    auto r = make_monogenic<QQ>({QQ(-5), QQ(0), QQ(1)});  // t^2 - 5
    auto m = mult_matrix(r, ring_one(r));
    EXPECT_EQ(m, SparseMatrix<QQ>::identity(2));
}

TEST(MultMatrix, SplitIdempotentProjector) {
    auto r = make_split<ZZ>(3);
    auto m = mult_matrix(r, basis_element(r, 1));
    // multiplication by an idempotent is an idempotent projector of trace 1
    EXPECT_EQ(det(m), ZZ(0));
    ZZ tr(0);
    for (int i = 0; i < 3; ++i) tr += m.entry(i, i);
    EXPECT_EQ(tr, ZZ(1));
    SparseMatrix<ZZ> sq(3, 3);
    for (int i = 0; i < 3; ++i)
        for (const auto& t : m.row[i].terms) sq.row[i].axpy(t.second, m.row[t.first]);
    EXPECT_EQ(sq, m);
}

TEST(MultMatrix, CubicColumnsReadOffTable) {
    auto r = make_cubic<ZZ>(ZZ(1), ZZ(0), ZZ(0), ZZ(1));
    auto m = mult_matrix(r, basis_element(r, 1));  // x
    // columns: x*1 = x, x*x = y, x*y = 1
    EXPECT_EQ(m.entry(1, 0), ZZ(1));
    EXPECT_EQ(m.entry(2, 1), ZZ(1));
    EXPECT_EQ(m.entry(0, 2), ZZ(1));
}

TEST(MultMatrix, ParentMismatch) {
    auto r1 = make_split<ZZ>(2);
    auto r2 = make_monogenic<ZZ>({ZZ(1), ZZ(0), ZZ(1)});
    EXPECT_THROW(mult_matrix(r1, basis_element(r2, 1)), mismatch_error);
}

TEST(CharPoly, CubicCoefficientFormulas) {
    // s1 = b, s2 = ac, s3 = a^2 d for multiplication by x
    long tuples[][4] = {{1, 0, 0, 1}, {2, -1, 3, 1}, {-1, 4, 2, -3}, {3, 2, -2, 5}};
    for (auto& t : tuples) {
        ZZ a(t[0]), b(t[1]), c(t[2]), d(t[3]);
        auto r = make_cubic<ZZ>(a, b, c, d);
        auto p = char_poly(r, basis_element(r, 1));
        EXPECT_EQ(p.s(0), ZZ(1));
        EXPECT_EQ(p.s(1), b);
        EXPECT_EQ(p.s(2), a * c);
        EXPECT_EQ(p.s(3), a * a * d);
        // x + y: T^3 - (b+c)T^2 + (ac+bc+bd-3ad)T - (a^2d+ac^2+b^2d+ad^2-2abd-2acd)
        auto q = char_poly(r, elem(r, {0, 1, 1}));
        EXPECT_EQ(q.s(1), b + c);
        EXPECT_EQ(q.s(2), a * c + b * c + b * d - ZZ(3) * a * d);
        EXPECT_EQ(q.s(3), a * a * d + a * c * c + b * b * d + a * d * d - ZZ(2) * a * b * d -
                              ZZ(2) * a * c * d);
    }
}

TEST(CharPoly, UnityGivesBinomials) {
    for (int n = 1; n <= 5; ++n) {
        auto r = make_split<QQ>(n);
        auto p = char_poly(r, ring_one(r));
        ZZ binom(1);
        for (int j = 0; j <= n; ++j) {
            EXPECT_EQ(p.s(j), QQ(binom)) << "n=" << n << " j=" << j;
            binom = binom * (n - j) / (j + 1);
        }
    }
}

TEST(CharPoly, ReverseCoefficients) {
    auto r = make_monogenic<ZZ>({ZZ(-1), ZZ(-1), ZZ(0), ZZ(1)});  // t^3 - t - 1
    auto p = char_poly(r, basis_element(r, 1));
    // P_x = f itself: signed coefficients [1, 0, -1, -1]
    EXPECT_EQ(p.signed_coeffs, (std::vector<ZZ>{ZZ(1), ZZ(0), ZZ(-1), ZZ(-1)}));
    EXPECT_EQ(p.reverse_coeffs(), p.signed_coeffs);
    EXPECT_EQ(p.s(2), ZZ(-1));
    EXPECT_EQ(p.s(3), ZZ(1));
}

TEST(CayleyHamilton, GalleryAndRandomElements) {
    auto split = make_split<ZZ>(4);
    EXPECT_TRUE(cayley_hamilton(split, basis_element(split, 1)));

    auto mono = make_monogenic<ZZ>({ZZ(-2), ZZ(0), ZZ(0), ZZ(0), ZZ(1)});  // t^4 - 2
    EXPECT_TRUE(cayley_hamilton(mono, basis_element(mono, 1)));
    auto t4 = basis_element(mono, 1);
    t4 = t4 * t4 * t4 * t4;
    EXPECT_EQ(t4, elem(mono, {2, 0, 0, 0}));

    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 10; ++iter) {
        GFp a = GFp::in(7, (long long)(rng() % 7)), b = GFp::in(7, (long long)(rng() % 7));
        GFp c = GFp::in(7, (long long)(rng() % 7)), d = GFp::in(7, (long long)(rng() % 7));
        auto r = make_cubic<GFp>(a, b, c, d);
        EXPECT_TRUE(cayley_hamilton(r, elem_mod(r, 7, {0, 1, 2})));  // x + 2y
    }
}

TEST(CharPoly, ScalingHomogeneity) {
    // s_k(beta a) = beta^k s_k(a)
    std::mt19937_64 rng(31337);
    auto r = make_monogenic<QQ>({QQ(3), QQ(-2), QQ(1), QQ(0), QQ(1)});
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<QQ> coords;
        for (int i = 0; i < 4; ++i) coords.push_back(QQ((long)(rng() % 9) - 4));
        auto a = element(r, coords);
        QQ beta((long)(rng() % 7) - 3);
        auto pa = char_poly(r, a);
        auto pb = char_poly(r, beta * a);
        QQ pw(1);
        for (int k = 0; k <= 4; ++k) {
            EXPECT_EQ(pb.s(k), QQ(pw * pa.s(k)));
            pw = pw * beta;
        }
    }
}

TEST(Discriminant, SplitIsOne) {
    EXPECT_EQ(discriminant(make_split<ZZ>(3)), ZZ(1));
    EXPECT_EQ(discriminant(make_split<ZZ>(5)), ZZ(1));
    EXPECT_TRUE(is_etale(make_split<ZZ>(4)));
}

TEST(Discriminant, MonogenicCubicField) {
    auto r = make_monogenic<ZZ>({ZZ(-1), ZZ(-1), ZZ(0), ZZ(1)});
    EXPECT_EQ(discriminant(r), ZZ(-23));
    EXPECT_FALSE(is_etale(r));
}

TEST(Discriminant, CubicRingMatchesFormDiscriminant) {
    long tuples[][4] = {{1, 0, 0, 1}, {2, -1, 3, 1}, {1, 1, 1, 1}, {-2, 3, 0, 1}};
    for (auto& t : tuples) {
        ZZ a(t[0]), b(t[1]), c(t[2]), d(t[3]);
        auto r = make_cubic<ZZ>(a, b, c, d);
        EXPECT_EQ(discriminant(r), cubic_form_disc(a, b, c, d));
    }
    EXPECT_EQ(discriminant(make_cubic<ZZ>(ZZ(1), ZZ(0), ZZ(0), ZZ(1))), ZZ(-27));
}

TEST(Discriminant, ClassicalPolynomialDiscriminants) {
    // t^2 - c has discriminant 4c
    for (long c : {2L, -3L, 5L, 7L}) {
        auto r = make_monogenic<ZZ>({ZZ(-c), ZZ(0), ZZ(1)});
        EXPECT_EQ(discriminant(r), ZZ(4 * c));
    }
    // t^3 + pt + q has discriminant -4p^3 - 27q^2
    for (auto [p, q] : {std::pair{1L, 1L}, {-1L, -1L}, {2L, -3L}, {0L, 2L}}) {
        auto r = make_monogenic<ZZ>({ZZ(q), ZZ(p), ZZ(0), ZZ(1)});
        EXPECT_EQ(discriminant(r), ZZ(-4 * p * p * p - 27 * q * q));
    }
}

TEST(Discriminant, EtaleOverGF5) {
    // GF(5)[t]/(t^2-2): disc = 8 = 3 != 0 in GF(5)
    auto r = make_monogenic<GFp>({GFp::in(5, -2), GFp::in(5, 0), GFp::in(5, 1)});
    EXPECT_EQ(discriminant(r), GFp::in(5, 3));
    EXPECT_TRUE(is_etale(r));
}

TEST(Gallery, MonogenicDefiningRelation) {
    auto r = make_monogenic<QQ>({QQ(-5), QQ(0), QQ(1)});
    auto x = basis_element(r, 1);
    EXPECT_EQ(x * x, elem(r, {5, 0}));
}

TEST(Gallery, DegenerateSquaresVanish) {
    auto r = make_degenerate<QQ>(4);
    for (int i = 1; i < 4; ++i)
        for (int j = 1; j < 4; ++j)
            EXPECT_TRUE(is_zero_element(basis_element(r, i) * basis_element(r, j)));
}

TEST(Gallery, ImprimitiveQuarticOrderTable) {
    auto r = make_imprimitive_quartic_order();
    auto X = basis_element(r, 1), Y = basis_element(r, 2), Z = basis_element(r, 3);
    EXPECT_EQ(X * X, ZZ(2) * Y);
    EXPECT_EQ(X * Y, ZZ(2) * Z);
    EXPECT_EQ(X * Z, elem(r, {8, 0, 0, 0}));
    EXPECT_EQ(Y * Y, elem(r, {8, 0, 0, 0}));
    EXPECT_EQ(Y * Z, ZZ(4) * X);
    EXPECT_EQ(Z * Z, ZZ(4) * Y);
}

TEST(Gallery, FiniteFieldIsEtale) {
    auto f4 = make_finite_field(2, 2);
    EXPECT_TRUE(is_etale(f4));
    // least irreducible quadratic over GF(2) is t^2 + t + 1
    EXPECT_EQ(f4.table[1][1][0], GFp::in(2, 1));
    EXPECT_EQ(f4.table[1][1][1], GFp::in(2, 1));
    EXPECT_TRUE(is_etale(make_finite_field(3, 2)));
    EXPECT_TRUE(is_etale(make_finite_field(5, 3)));
}

TEST(Gallery, ProductRingValid) {
    auto r = product_ring(make_split<ZZ>(2), make_monogenic<ZZ>({ZZ(-2), ZZ(0), ZZ(1)}));
    EXPECT_EQ(r.n, 4);
    EXPECT_TRUE(validate(r.table).ok());
}

TEST(Gallery, RandomRingsAreValidAndCayleyHamilton) {
    std::mt19937_64 rng(555);
    ScalarContext f5{5};
    for (int iter = 0; iter < 15; ++iter) {
        int n = 2 + (int)(rng() % 3);
        auto rq = random_ring<QQ>(n, rng);
        for (int i = 0; i < n; ++i) EXPECT_TRUE(cayley_hamilton(rq, basis_element(rq, i)));
        auto rf = random_ring<GFp>(n, rng, f5);
        for (int i = 0; i < n; ++i) EXPECT_TRUE(cayley_hamilton(rf, basis_element(rf, i)));
    }
}

template <class K>
concept has_degenerate = requires(int n) { make_degenerate<K>(n); };

TEST(Gallery, DegenerateRequiresField) {
    static_assert(!has_degenerate<ZZ>);
    static_assert(has_degenerate<QQ>);
    static_assert(has_degenerate<GFp>);
}

TEST(Gallery, NonMonicRejected) {
    EXPECT_THROW(make_monogenic<ZZ>({ZZ(1), ZZ(1), ZZ(2)}), mismatch_error);
}
