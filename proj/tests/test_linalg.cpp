#include "doctest.h"

#include "coflat/polylinalg.hpp"
#include "coflat/polynomial.hpp"
#include "coflat/qlinalg.hpp"
#include "test_util.hpp"

using namespace coflat;
using testutil::PolyGen;

namespace {
Polynomial P(const VarSpacePtr& s, const std::string& text) { return Polynomial::parse(s, text); }
} // namespace

TEST_CASE("rref identifies pivots and normalizes rows") {
    QMatrix a = {{Rational(2), Rational(4)}, {Rational(1), Rational(2)}};
    auto pivots = q_rref(a);
    CHECK(pivots == std::vector<int>{0});
    CHECK(a[0][0] == Rational(1));
    CHECK(a[0][1] == Rational(2));
    CHECK(a[1][0].is_zero());
    CHECK(a[1][1].is_zero());
}

TEST_CASE("rank of exact rational matrices") {
    CHECK(q_rank(q_identity(4)) == 4);
    CHECK(q_rank(q_zero(3, 5)) == 0);
    QMatrix a = {{Rational(1), Rational(2), Rational(3)},
                 {Rational(2), Rational(4), Rational(6)},
                 {Rational(1), Rational(1), Rational(1)}};
    CHECK(q_rank(a) == 2);
}

TEST_CASE("solve returns a witness or reports inconsistency") {
    QMatrix a = {{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}};
    auto x = q_solve(a, {Rational(3), Rational(1)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rational(2));
    CHECK((*x)[1] == Rational(1));

    QMatrix sing = {{Rational(1), Rational(1)}, {Rational(2), Rational(2)}};
    CHECK_FALSE(q_solve(sing, {Rational(0), Rational(1)}).has_value());
    auto consistent = q_solve(sing, {Rational(1), Rational(2)});
    REQUIRE(consistent.has_value());
    CHECK((*consistent)[0] + (*consistent)[1] == Rational(1));
}

TEST_CASE("kernel vectors annihilate the matrix") {
    QMatrix a = {{Rational(1), Rational(2), Rational(3)}, {Rational(0), Rational(1), Rational(1)}};
    auto ker = q_kernel(a);
    REQUIRE(ker.size() == 1);
    for (const auto& v : ker) {
        auto image = q_mul_vec(a, v);
        for (const auto& c : image) CHECK(c.is_zero());
    }
    CHECK(q_kernel(q_identity(3)).empty());
}

TEST_CASE("inverse multiplies back to the identity") {
    QMatrix a = {{Rational(2), Rational(1)}, {Rational(1), Rational(1)}};
    auto inv = q_inverse(a);
    REQUIRE(inv.has_value());
    CHECK(q_mul(a, *inv) == q_identity(2));
    CHECK(q_mul(*inv, a) == q_identity(2));
    QMatrix sing = {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    CHECK_FALSE(q_inverse(sing).has_value());
}

TEST_CASE("left inverses recover the identity on full-column-rank input") {
    QMatrix a = {{Rational(1), Rational(0)}, {Rational(1), Rational(1)}, {Rational(0), Rational(2)}};
    auto li = q_left_inverse(a);
    REQUIRE(li.has_value());
    CHECK(q_mul(*li, a) == q_identity(2));

    auto wli = q_weighted_left_inverse(a, {Rational(1), Rational(2), Rational(3)});
    REQUIRE(wli.has_value());
    CHECK(q_mul(*wli, a) == q_identity(2));

    // Rank-deficient input has no left inverse.
    QMatrix thin = {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}, {Rational(3), Rational(6)}};
    CHECK_FALSE(q_left_inverse(thin).has_value());
}

TEST_CASE("exact polynomial division detects multiples") {
    auto s = VarSpace::numbered("x", 2);
    Polynomial p = P(s, "x1^2 - x2^2");
    auto q = poly_divide_exact(p, P(s, "x1 - x2"));
    REQUIRE(q.has_value());
    CHECK(*q == P(s, "x1 + x2"));
    CHECK_FALSE(poly_divide_exact(P(s, "x1^2 + 1"), P(s, "x1 - x2")).has_value());
}

TEST_CASE("polynomial fractions reduce and follow field axioms") {
    auto s = VarSpace::numbered("x", 2);
    PolyFrac a(P(s, "x1^2 - x2^2"), P(s, "x1 - x2"));
    CHECK(a.is_polynomial());
    CHECK(a.as_polynomial() == P(s, "x1 + x2"));

    PolyFrac b(P(s, "1"), P(s, "x1"));
    PolyFrac c = b + b;
    CHECK((c - b - b).is_zero());
    PolyFrac d = b * PolyFrac::of(P(s, "x1"));
    CHECK(d.is_polynomial());
    CHECK(d.as_polynomial() == P(s, "1"));
    PolyFrac e = PolyFrac::of(P(s, "x1 + x2")) / PolyFrac::of(P(s, "x1 + x2"));
    CHECK(e.is_polynomial());
    CHECK(e.as_polynomial() == P(s, "1"));
}

TEST_CASE("Bareiss determinant is exact and multiplicative on samples") {
    auto s = VarSpace::numbered("x", 2);
    PolyMatrix a = {{P(s, "x1"), P(s, "x2")}, {P(s, "x2"), P(s, "x1")}};
    CHECK(poly_det(a) == P(s, "x1^2 - x2^2"));

    PolyMatrix vander = {{P(s, "1"), P(s, "x1"), P(s, "x1^2")},
                         {P(s, "1"), P(s, "x2"), P(s, "x2^2")},
                         {P(s, "1"), P(s, "x1 + x2"), P(s, "(x1 + x2)^2")}};
    // Vandermonde with nodes x1, x2, x1+x2 factors as (x2-x1)(x1+x2-x1)(x1+x2-x2) = (x2-x1)*x2*x1.
    CHECK(poly_det(vander) == P(s, "x1*x2^2 - x1^2*x2"));

    PolyGen gen(11);
    for (int trial = 0; trial < 4; ++trial) {
        PolyMatrix m(2, PolyVector(2, Polynomial::zero(s)));
        PolyMatrix n(2, PolyVector(2, Polynomial::zero(s)));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                m[i][j] = gen.poly(s, 1, 2);
                n[i][j] = gen.poly(s, 1, 2);
            }
        PolyMatrix prod(2, PolyVector(2, Polynomial::zero(s)));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) prod[i][j] += m[i][k] * n[k][j];
        CHECK(poly_det(prod) == poly_det(m) * poly_det(n));
    }
}

TEST_CASE("generic rank sees through polynomial degeneration") {
    auto s = VarSpace::numbered("x", 3);
    PolyMatrix so3 = {{P(s, "0"), P(s, "x3"), P(s, "-x2")},
                      {P(s, "-x3"), P(s, "0"), P(s, "x1")},
                      {P(s, "x2"), P(s, "-x1"), P(s, "0")}};
    CHECK(poly_generic_rank(so3) == 2);
    PolyMatrix diag = {{P(s, "x1"), P(s, "0")}, {P(s, "0"), P(s, "x1*x2")}};
    CHECK(poly_generic_rank(diag) == 2);
    CHECK(poly_generic_rank({{P(s, "0"), P(s, "0")}}) == 0);
}

TEST_CASE("cleared kernels have polynomial entries annihilating the matrix") {
    auto s = VarSpace::numbered("x", 3);
    PolyMatrix so3 = {{P(s, "0"), P(s, "x3"), P(s, "-x2")},
                      {P(s, "-x3"), P(s, "0"), P(s, "x1")},
                      {P(s, "x2"), P(s, "-x1"), P(s, "0")}};
    auto ker = poly_kernel_cleared(so3);
    REQUIRE(ker.size() == 1);
    for (const auto& v : ker)
        for (std::size_t i = 0; i < so3.size(); ++i) {
            Polynomial acc = Polynomial::zero(s);
            for (std::size_t j = 0; j < v.size(); ++j) acc += so3[i][j] * v[j];
            CHECK(acc.is_zero());
        }
    // The radial direction spans the kernel: each entry of v is c * x_i for one scalar c.
    const auto& v = ker[0];
    Polynomial x1 = P(s, "x1");
    CHECK(v[0] * P(s, "x2") == v[1] * x1);
    CHECK(v[0] * P(s, "x3") == v[2] * x1);
}

TEST_CASE("fraction-field solve returns exact rational-function solutions") {
    auto s = VarSpace::numbered("x", 2);
    PolyMatrix a = {{P(s, "x1"), P(s, "0")}, {P(s, "0"), P(s, "x2")}};
    PolyVector b = {P(s, "1"), P(s, "x1")};
    auto sol = polyfrac_solve(a, b);
    REQUIRE(sol.has_value());
    // x = (1/x1, x1/x2): multiply back through the matrix.
    PolyFrac r0 = PolyFrac::of(a[0][0]) * (*sol)[0] + PolyFrac::of(a[0][1]) * (*sol)[1];
    PolyFrac r1 = PolyFrac::of(a[1][0]) * (*sol)[0] + PolyFrac::of(a[1][1]) * (*sol)[1];
    CHECK((r0 - PolyFrac::of(b[0])).is_zero());
    CHECK((r1 - PolyFrac::of(b[1])).is_zero());

    PolyMatrix sing = {{P(s, "x1"), P(s, "x1")}, {P(s, "x1"), P(s, "x1")}};
    CHECK_FALSE(polyfrac_solve(sing, {P(s, "1"), P(s, "0")}).has_value());
}

TEST_CASE("rational matrices lift into polynomial matrices") {
    auto s = VarSpace::numbered("x", 2);
    auto m = poly_matrix_from_q(s, {{Rational(1, 2), Rational(0)}, {Rational(-3), Rational(1)}});
    CHECK(m[0][0] == P(s, "1/2"));
    CHECK(m[1][0] == P(s, "-3"));
    CHECK(poly_det(m) == P(s, "1/2"));
}
