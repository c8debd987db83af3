#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "klr/linalg.hpp"
#include "klr/qarith.hpp"

using namespace klr;

namespace {
LaurentPoly qp(int k) { return LaurentPoly::q_power(k); }
} // namespace

TEST_CASE("laurent basic arithmetic") {
    LaurentPoly a = qp(2) + qp(-2); // q^2 + q^-2
    LaurentPoly b = qp(1) - qp(-1); // q - q^-1
    CHECK(a.str() == "q^-2 + q^2");
    CHECK((a * b).str() == "-q^-3 + q^-1 - q + q^3");
    CHECK((a - a).is_zero());
    CHECK(a.bar() == a);
    CHECK(b.bar() == -b);
    CHECK(a.eval_one() == 2);
    CHECK(a.min_exp() == -2);
    CHECK(a.max_exp() == 2);
    CHECK((LaurentPoly(2) * a).content() == 2);
    CHECK(a.is_bar_invariant());
    CHECK(!b.is_bar_invariant());
    CHECK(a.is_nonneg());
    CHECK(!b.is_nonneg());
    CHECK_THROWS_AS(LaurentPoly().min_exp(), std::domain_error);
}

TEST_CASE("quantum integers in rescaled variable") {
    CHECK(qint(0, 2).is_zero());
    CHECK(qint(1, 2) == LaurentPoly(1));
    CHECK(qint(2, 2) == qp(1) + qp(-1));
    // [3] in q_i = q^2: q^4 + 1 + q^-4
    CHECK(qint(3, 4) == qp(4) + qp(0) + qp(-4));
    CHECK(qint(2, 6) == qp(3) + qp(-3));
    CHECK(qfact(3, 2) == qint(2, 2) * qint(3, 2));
    CHECK(qfact(0, 2) == LaurentPoly(1));
    // [n] is bar-invariant for every n
    for (int n = 1; n <= 5; ++n) CHECK(qint(n, 2).is_bar_invariant());
    CHECK_THROWS_AS(qint(2, 3), std::domain_error);
}

TEST_CASE("exact division and gcd in the Laurent ring") {
    LaurentPoly a = qp(2) - qp(-2); // q^2 - q^-2
    LaurentPoly b = qp(1) + qp(-1); // q + q^-1
    LaurentPoly q;
    REQUIRE(divide_exact(a, b, q));
    CHECK(q == qp(1) - qp(-1));
    CHECK(!divide_exact(b, a, q));
    REQUIRE(divide_exact(LaurentPoly(), b, q));
    CHECK(q.is_zero());

    // gcd picks the min_exp-0, positive-lead representative and includes
    // integer content
    CHECK(laurent_gcd(a, b) == qp(2) + LaurentPoly(1));
    CHECK(laurent_gcd(LaurentPoly(4), LaurentPoly(6)) == LaurentPoly(2));
    CHECK(laurent_gcd(LaurentPoly(), -b) == qp(2) + LaurentPoly(1));
    LaurentPoly c = (qp(1) - qp(-1)) * (qp(3) + LaurentPoly(2));
    LaurentPoly d = (qp(1) - qp(-1)) * (qp(2) - LaurentPoly(5));
    LaurentPoly g = laurent_gcd(c, d);
    CHECK(g == qp(2) - LaurentPoly(1));
    // coprime, gcd is 1
    CHECK(laurent_gcd(qp(2) + LaurentPoly(1), qp(1) - qp(-1)) == LaurentPoly(1));
}

TEST_CASE("rational function canonical form") {
    RatFunc one_minus_q2 = RatFunc(LaurentPoly(1) - qp(2));
    RatFunc f(LaurentPoly(1), LaurentPoly(1) - qp(2));   // 1/(1-q^2)
    RatFunc g(LaurentPoly(1), LaurentPoly(1) - qp(-2));  // 1/(1-q^-2)
    CHECK(f + g == RatFunc(1));
    CHECK(f.bar() == g);
    CHECK(f * one_minus_q2 == RatFunc(1));
    CHECK(RatFunc(qp(4) - LaurentPoly(1), qp(2) - LaurentPoly(1)) == RatFunc(qp(2) + LaurentPoly(1)));
    CHECK((f - f).is_zero());
    CHECK(f != g);
    CHECK((f / f) == RatFunc(1));
    CHECK_THROWS_AS(f / RatFunc(0), std::domain_error);
    CHECK_THROWS_AS(RatFunc(LaurentPoly(1), LaurentPoly()), std::domain_error);

    RatFunc h = RatFunc(qp(1)) * f;
    CHECK(h.is_laurent() == false);
    CHECK(RatFunc(qp(3) + qp(1)).as_laurent() == qp(3) + qp(1));
    CHECK((RatFunc(qp(2) - qp(-2)) / RatFunc(qp(1) + qp(-1))).as_laurent() == qp(1) - qp(-1));
    CHECK_THROWS_AS(f.as_laurent(), std::domain_error);
    CHECK_THROWS_AS(f.eval_one(), std::domain_error);
    CHECK(RatFunc(qp(1) + LaurentPoly(1), qp(1) - LaurentPoly(2)).eval_one() == Rational(-2));
}

TEST_CASE("exact linear algebra over the rational function field") {
    using K = RatFunc;
    K q = RatFunc(qp(1));
    Mat<K> m = {{K(1), q}, {q, q * q}};
    CHECK(rank(m) == 1);
    auto ker = kernel_basis(m);
    REQUIRE(ker.size() == 1);
    for (const auto& row : m) {
        K s = row[0] * ker[0][0] + row[1] * ker[0][1];
        CHECK(s.is_zero());
    }
    Mat<K> u = {{K(1), q}, {K(0), K(1)}};
    auto inv = inverse(u);
    CHECK(inv[0][1] == -q);
    CHECK(mat_mul(u, inv) == Mat<K>{{K(1), K(0)}, {K(0), K(1)}});
    auto sol = solve(u, {q, K(1)});
    REQUIRE(sol.has_value());
    CHECK(mat_vec(u, *sol) == std::vector<K>{q, K(1)});
    // inconsistent system
    CHECK(!solve(Mat<K>{{K(1)}, {K(1)}}, {K(0), K(1)}).has_value());
}

TEST_CASE("exact linear algebra over the rationals") {
    Mat<Rational> m = {{2, 4}, {1, 2}};
    CHECK(rank(m) == 1);
    auto sol = solve(Mat<Rational>{{2, 1}, {1, 3}}, {Rational(1), Rational(2)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == Rational(1, 5));
    CHECK((*sol)[1] == Rational(3, 5));
}
