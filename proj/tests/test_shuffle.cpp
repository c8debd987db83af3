#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "klr/shuffle.hpp"

using namespace klr;

namespace {
LaurentPoly qp(int k) { return LaurentPoly::q_power(k); }
ShuffleElt one_word(const Word& w) { return ShuffleElt::single(w); }
} // namespace

TEST_CASE("shuffle product small examples") {
    ShuffleAlgebra a2(CartanData::named("A2"));
    ShuffleElt p = a2.product(one_word({0}), one_word({1}));
    ShuffleElt expect;
    expect.add({0, 1}, LaurentPoly(1));
    expect.add({1, 0}, qp(1));
    CHECK(p == expect);

    ShuffleAlgebra b2(CartanData::named("B2"));
    ShuffleElt p2 = b2.product(one_word({0}), one_word({0}));
    ShuffleElt expect2;
    expect2.add({0, 0}, LaurentPoly(1) + qp(-2));
    CHECK(p2 == expect2);

    // unit and weight additivity
    CHECK(a2.product(p, one_word({})) == p);
    CHECK(a2.product(one_word({}), p) == p);
    CHECK(*p.weight(2) == Root{1, 1});
}

TEST_CASE("shuffle product associativity") {
    for (const std::string t : {"A2", "B2", "G2"}) {
        ShuffleAlgebra alg(CartanData::named(t));
        ShuffleElt x = one_word({0});
        ShuffleElt y = one_word({0, 1});
        ShuffleElt z = one_word({1, 0});
        CHECK(alg.product(alg.product(x, y), z) == alg.product(x, alg.product(y, z)));
        ShuffleElt w = alg.product(x, x);
        CHECK(alg.product(alg.product(w, y), x) == alg.product(w, alg.product(y, x)));
    }
}

TEST_CASE("mixed weight is rejected") {
    ShuffleElt bad;
    bad.add({0}, LaurentPoly(1));
    bad.add({1}, LaurentPoly(1));
    CHECK_THROWS_AS(bad.weight(2), std::domain_error);
}

TEST_CASE("deconcatenation and split") {
    ShuffleAlgebra a2(CartanData::named("A2"));
    ShuffleElt x;
    x.add({0, 1}, LaurentPoly(1));
    x.add({1, 0}, qp(1));
    auto d = a2.deconcat(x, {1, 0});
    REQUIRE(d.size() == 1);
    CHECK(std::get<0>(d[0]) == Word{0});
    CHECK(std::get<1>(d[0]) == Word{1});
    CHECK(std::get<2>(d[0]) == LaurentPoly(1));
    CHECK(a2.deconcat(x, {0, 0}).size() == 2);

    auto s = a2.split(x, {{1, 0}, {0, 1}});
    REQUIRE(s.size() == 1);
    CHECK(s.begin()->first == std::vector<Word>{{0}, {1}});
    CHECK(s.begin()->second == LaurentPoly(1));
    CHECK_THROWS_AS(a2.split(x, {{1, 0}, {1, 0}}), std::domain_error);
}

TEST_CASE("monomial form values") {
    ShuffleAlgebra a2(CartanData::named("A2"));
    RatFunc a = RatFunc(LaurentPoly(1), LaurentPoly(1) - qp(2)); // 1/(1-q^2)
    CHECK(a2.monomial_form({0}, {0}) == a);
    CHECK(a2.monomial_form({0}, {1}) == RatFunc(0));
    RatFunc den2(LaurentPoly(1), (LaurentPoly(1) - qp(2)) * (LaurentPoly(1) - qp(2)));
    CHECK(a2.monomial_form({0, 1}, {0, 1}) == den2);
    CHECK(a2.monomial_form({0, 1}, {1, 0}) == den2 * RatFunc(qp(1)));

    ShuffleAlgebra g2(CartanData::named("G2"));
    CHECK(g2.monomial_form({1}, {1}) == RatFunc(LaurentPoly(1), LaurentPoly(1) - qp(6)));
}

TEST_CASE("gram matrices are symmetric and cached") {
    ShuffleAlgebra g2(CartanData::named("G2"));
    Root nu{2, 1};
    const auto& words = g2.words_of_weight(nu);
    CHECK(words.size() == 3);
    const auto& g = g2.gram(nu);
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j) {
            CHECK(g[i][j] == g[j][i]);
            CHECK(g[i][j] == g2.monomial_form(words[i], words[j]));
        }
}

TEST_CASE("pairing embedding is multiplicative") {
    ShuffleAlgebra a2(CartanData::named("A2"));
    CHECK(a2.product_rf(a2.monomial_character({0}), a2.monomial_character({1})) ==
          a2.monomial_character({0, 1}));
    ShuffleAlgebra b2(CartanData::named("B2"));
    CHECK(b2.product_rf(b2.monomial_character({0}), b2.monomial_character({0})) ==
          b2.monomial_character({0, 0}));
    ShuffleAlgebra g2(CartanData::named("G2"));
    CHECK(g2.product_rf(g2.monomial_character({0, 1}), g2.monomial_character({0})) ==
          g2.monomial_character({0, 1, 0}));
}

TEST_CASE("product agrees with the twisted coproduct route") {
    ShuffleAlgebra b2(CartanData::named("B2"));
    std::vector<Word> smalls = {{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (const Word& u : smalls)
        for (const Word& v : smalls) {
            if (u.size() + v.size() > 4 || u.size() + v.size() == 0) continue;
            ShuffleElt x = one_word(u), y = one_word(v);
            ShuffleElt p = b2.product(x, y);
            Root nu = weight_of_word(u, 2);
            Root nv = weight_of_word(v, 2);
            for (int i = 0; i < 2; ++i) nu[i] += nv[i];
            for (const Word& jj : b2.words_of_weight(nu))
                CHECK(p.coeff(jj) == b2.product_coeff_via_coproduct(x, y, jj));
        }
}

TEST_CASE("transported form on dual generators") {
    ShuffleAlgebra a2(CartanData::named("A2"));
    CHECK(a2.transported_form(one_word({0}), one_word({0})) ==
          RatFunc(LaurentPoly(1) - qp(2)));
    // the weight (1,1) dual canonical element is the single word (01)
    CHECK(a2.transported_form(one_word({0, 1}), one_word({0, 1})) ==
          RatFunc(LaurentPoly(1) - qp(2)));
    ShuffleAlgebra g2(CartanData::named("G2"));
    CHECK(g2.transported_form(one_word({1}), one_word({1})) ==
          RatFunc(LaurentPoly(1) - qp(6)));
    // symmetry on an asymmetric pair
    ShuffleElt x;
    x.add({0, 1}, LaurentPoly(1));
    ShuffleElt y;
    y.add({1, 0}, qp(2) + LaurentPoly(1));
    CHECK(a2.transported_form(x, y) == a2.transported_form(y, x));
    CHECK_THROWS_AS(a2.transported_form(one_word({0}), one_word({1})), std::domain_error);
}

TEST_CASE("bar, content, q=1 specialization") {
    ShuffleElt x;
    x.add({0, 1}, LaurentPoly(2));
    x.add({1, 0}, LaurentPoly(2) * qp(1));
    CHECK(x.content() == 2);
    ShuffleElt xb = x.bar();
    CHECK(xb.coeff({1, 0}) == LaurentPoly(2) * qp(-1));
    CHECK(xb.bar() == x);
    auto q1 = x.specialize_q1();
    CHECK(q1[{0, 1}] == 2);
    CHECK(q1[{1, 0}] == 2);
    CHECK(!x.coeffs_bar_invariant());
    CHECK(x.coeffs_nonneg());
    ShuffleElt p = x;
    p.add({0, 1}, qp(3) + qp(-3) - LaurentPoly(2));
    CHECK(p.coeff({0, 1}) == qp(3) + qp(-3));
    CHECK(p.coeff({0, 1}).is_bar_invariant());
}
