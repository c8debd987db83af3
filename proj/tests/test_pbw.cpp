#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "klr/pbw.hpp"

using namespace klr;

namespace {

LaurentPoly qp(int k) { return LaurentPoly::q_power(k); }

CuspidalTable table_for(const std::string& type) {
    RootSystem rs(CartanData::named(type));
    return CuspidalTable(ConvexOrder::table_order(rs));
}

ShuffleElt one_word(const Word& w, LaurentPoly c = LaurentPoly(1)) {
    return ShuffleElt::single(w, std::move(c));
}

KPVector unit_vec(const ConvexOrder& co, const Root& a, int n = 1) {
    KPVector m(co.roots().size(), 0);
    m[co.position(a)] = n;
    return m;
}

} // namespace

TEST_CASE("kp vectors enumerate kostant partitions") {
    for (const std::string type : {"A2", "B2", "G2", "A3", "B3", "C3"}) {
        RootSystem rs(CartanData::named(type));
        ConvexOrder co = ConvexOrder::table_order(rs);
        const int rank = rs.rank();
        // all weights of height <= 4
        std::vector<Root> nus;
        Root nu(rank, 0);
        std::function<void(int, int)> gen = [&](int i, int rem) {
            if (i == rank) {
                if (height(nu) > 0) nus.push_back(nu);
                return;
            }
            for (nu[i] = 0; nu[i] <= rem; ++nu[i]) gen(i + 1, rem - nu[i]);
            nu[i] = 0;
        };
        gen(0, 4);
        for (const auto& w : nus) {
            auto ms = kp_vectors(co, w);
            CHECK(Int(ms.size()) == kostant_partition_count(rs, w));
            for (const auto& m : ms) CHECK(kp_weight(co, m) == w);
        }
    }
}

TEST_CASE("kp orders compare at extreme differing index") {
    KPVector m{0, 1, 0}, n{1, 0, 1};
    // largest differing index wins for <, smallest for <'
    CHECK(kp_less(m, n));
    CHECK(!kp_less(n, m));
    CHECK(kp_less_prime(m, n));
    CHECK(!kp_less_prime(n, m));
    CHECK(!kp_less(m, m));
    CHECK(!kp_less_prime(n, n));
    // opposite verdicts are possible
    KPVector a{2, 0, 0}, b{0, 0, 1};
    CHECK(kp_less(a, b));
    CHECK(kp_less_prime(b, a));
}

TEST_CASE("run factorial multiplies balanced factorials per run") {
    CartanData b2 = CartanData::named("B2");
    CHECK(run_factorial(b2, {0, 1}) == LaurentPoly(1));
    CHECK(run_factorial(b2, {0, 0, 1}) == qp(1) + qp(-1));         // [2]! at d=2
    CHECK(run_factorial(b2, {1, 1}) == qp(2) + qp(-2));            // [2]! at d=4
    CHECK(run_factorial(b2, {0, 0, 0}) == (qp(1) + qp(-1)) * (qp(2) + LaurentPoly(1) + qp(-2)));
    CHECK(run_factorial(b2, {0, 1, 0}) == LaurentPoly(1));
}

TEST_CASE("cuspidal characters of rank two table orders") {
    CuspidalTable a2 = table_for("A2");
    const RootSystem& ra = a2.order().system();
    CHECK(a2.cuspidal(ra.simple(0)) == one_word({0}));
    CHECK(a2.cuspidal(Root{1, 1}) == one_word({0, 1}));

    CuspidalTable b2 = table_for("B2");
    CHECK(b2.cuspidal(Root{1, 1}) == one_word({0, 1}));
    CHECK(b2.cuspidal(Root{2, 1}) == one_word({0, 0, 1}, qp(1) + qp(-1)));

    CuspidalTable g2 = table_for("G2");
    CHECK(g2.cuspidal(Root{1, 1}) == one_word({0, 1}));
    CHECK(g2.cuspidal(Root{2, 1}) == one_word({0, 0, 1}, qp(1) + qp(-1)));
}

TEST_CASE("cuspidal characters flip with the convex order") {
    RootSystem rs(CartanData::named("A2"));
    CuspidalTable t(ConvexOrder::from_word(rs, {0, 1, 0}));
    // order a0 < a0+a1 < a1: the middle cuspidal is the other word
    CHECK(t.cuspidal(Root{1, 1}) == one_word({1, 0}));
}

TEST_CASE("cuspidal invariants and good word support") {
    for (const std::string type : {"A2", "B2", "G2", "A3", "B3", "C3"}) {
        CAPTURE(type);
        CuspidalTable t = table_for(type);
        const ConvexOrder& co = t.order();
        for (const auto& a : co.roots()) {
            CAPTURE(a);
            const ShuffleElt& e = t.cuspidal(a);
            CHECK(e.coeffs_bar_invariant());
            CHECK(e.coeffs_nonneg());
            CHECK(e.content() == 1);
            CHECK(*e.weight(co.system().rank()) == a);
            CHECK(!e.coeff(co.good_word(a)).is_zero());
        }
    }
}

TEST_CASE("cuspidal character is independent of the minimal pair") {
    for (const std::string type : {"A3", "B3", "C3", "G2"}) {
        CAPTURE(type);
        CuspidalTable t = table_for(type);
        const ConvexOrder& co = t.order();
        for (const auto& a : co.roots()) {
            if (height(a) == 1) continue;
            for (const auto& pair : minimal_pairs(co, a))
                CHECK(t.cuspidal_via_pair(a, pair) == t.cuspidal(a));
        }
    }
    // a word-induced order as well
    RootSystem rs(CartanData::named("A3"));
    CuspidalTable t(ConvexOrder::from_word(rs, longest_word(rs)));
    for (const auto& a : t.order().roots()) {
        if (height(a) == 1) continue;
        for (const auto& pair : minimal_pairs(t.order(), a))
            CHECK(t.cuspidal_via_pair(a, pair) == t.cuspidal(a));
    }
}

TEST_CASE("cuspidal norms and monomial orthogonality") {
    for (const std::string type : {"A2", "B2", "G2", "A3"}) {
        CAPTURE(type);
        CuspidalTable t = table_for(type);
        const RootSystem& rs = t.order().system();
        for (const auto& a : t.order().roots()) {
            RatFunc norm = t.algebra().transported_form(t.cuspidal(a), t.cuspidal(a));
            CHECK(norm == RatFunc(LaurentPoly(1) - qp(rs.pair(a, a))));
        }
    }
    // distinct monomials of one weight are orthogonal
    CuspidalTable b2 = table_for("B2");
    for (const Root& nu : {Root{2, 1}, Root{2, 2}, Root{3, 1}}) {
        auto ms = kp_vectors(b2.order(), nu);
        std::vector<ShuffleElt> ps;
        for (const auto& m : ms) ps.push_back(standard_character(b2, m));
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j)
                CHECK(b2.algebra().transported_form(ps[i], ps[j]) == RatFunc(0));
    }
}

TEST_CASE("standard and costandard products") {
    CuspidalTable t = table_for("A2");
    const ConvexOrder& co = t.order();
    KPVector m(3, 0);
    m[co.position(Root{0, 1})] = 1;
    m[co.position(Root{1, 0})] = 1;
    ShuffleElt delta = standard_character(t, m);
    ShuffleElt expect;
    expect.add({1, 0}, LaurentPoly(1));
    expect.add({0, 1}, qp(1));
    CHECK(delta == expect);
    ShuffleElt nabla = costandard_character(t, m);
    ShuffleElt expect2;
    expect2.add({0, 1}, LaurentPoly(1));
    expect2.add({1, 0}, qp(1));
    CHECK(nabla == expect2);

    CHECK(standard_character(t, KPVector(3, 0)) == one_word({}));
    KPVector single = unit_vec(co, Root{1, 1});
    CHECK(standard_character(t, single) == costandard_character(t, single));
}

TEST_CASE("expansion recovers dual pbw coordinates") {
    CuspidalTable t = table_for("B2");
    const ConvexOrder& co = t.order();
    for (const Root& nu : {Root{1, 1}, Root{2, 1}, Root{2, 2}}) {
        for (const auto& m : kp_vectors(co, nu)) {
            auto e = expand_in_dual_pbw(t, standard_character(t, m));
            REQUIRE(e.size() == 1);
            CHECK(e.begin()->first == m);
            CHECK(e.begin()->second == LaurentPoly(1));
        }
    }
    // a made-up combination comes back exactly
    auto ms = kp_vectors(co, Root{2, 1});
    REQUIRE(ms.size() == 3);
    ShuffleElt x = standard_character(t, ms[0]).shifted(3) -
                   standard_character(t, ms[2]).scaled(qp(-1) + LaurentPoly(5));
    auto e = expand_in_dual_pbw(t, x);
    REQUIRE(e.size() == 2);
    CHECK(e.at(ms[0]) == qp(3));
    CHECK(e.at(ms[2]) == -(qp(-1) + LaurentPoly(5)));
    CHECK(expand_in_dual_pbw(t, ShuffleElt()).empty());
}

TEST_CASE("costandard expansions are unitriangular downward") {
    for (const std::string type : {"A2", "B2"}) {
        CAPTURE(type);
        CuspidalTable t = table_for(type);
        const ConvexOrder& co = t.order();
        const int rank = co.system().rank();
        std::vector<Root> nus;
        Root nu(rank, 0);
        std::function<void(int, int)> gen = [&](int i, int rem) {
            if (i == rank) {
                if (height(nu) > 0) nus.push_back(nu);
                return;
            }
            for (nu[i] = 0; nu[i] <= rem; ++nu[i]) gen(i + 1, rem - nu[i]);
            nu[i] = 0;
        };
        gen(0, 3);
        for (const auto& w : nus) {
            for (const auto& m : kp_vectors(co, w)) {
                auto e = expand_in_dual_pbw(t, costandard_character(t, m));
                REQUIRE(e.count(m) == 1);
                const LaurentPoly& lead = e.at(m);
                CHECK(lead.min_exp() == lead.max_exp());
                CHECK(lead.lead() == 1);
                for (const auto& [mp, c] : e) {
                    CAPTURE(mp);
                    if (mp == m) continue;
                    CHECK(kp_less(mp, m));
                    CHECK(kp_less_prime(mp, m));
                }
            }
        }
    }
}

TEST_CASE("restriction of standard characters follows the lex pattern") {
    for (const std::string type : {"A2", "B2"}) {
        CAPTURE(type);
        CuspidalTable t = table_for(type);
        const ConvexOrder& co = t.order();
        const int rank = co.system().rank();
        std::vector<Root> nus;
        Root nu(rank, 0);
        std::function<void(int, int)> gen = [&](int i, int rem) {
            if (i == rank) {
                if (height(nu) > 0) nus.push_back(nu);
                return;
            }
            for (nu[i] = 0; nu[i] <= rem; ++nu[i]) gen(i + 1, rem - nu[i]);
            nu[i] = 0;
        };
        gen(0, 3);
        for (const auto& w : nus) {
            auto ms = kp_vectors(co, w);
            for (const auto& m : ms)
                for (const auto& n : ms) {
                    CAPTURE(m);
                    CAPTURE(n);
                    auto v = check_restriction_lemma(t, m, n);
                    CHECK_MESSAGE(v.pass, v.detail);
                }
        }
    }
}

TEST_CASE("cuspidal restrictions stay on the correct side") {
    for (const std::string type : {"A2", "B2", "G2", "A3"}) {
        CAPTURE(type);
        CuspidalTable t = table_for(type);
        for (const auto& a : t.order().roots()) {
            CAPTURE(a);
            auto v = check_cuspidal_restriction(t, a);
            CHECK_MESSAGE(v.pass, v.detail);
        }
    }
    RootSystem rs(CartanData::named("A2"));
    for (Word w : {Word{0, 1, 0}, Word{1, 0, 1}}) {
        CuspidalTable t(ConvexOrder::from_word(rs, w));
        for (const auto& a : t.order().roots()) CHECK(check_cuspidal_restriction(t, a).pass);
    }
}

TEST_CASE("cuspidal powers expand to a single monomial") {
    CuspidalTable a2 = table_for("A2");
    CHECK(check_power_indivisible(a2, Root{1, 1}, 1).pass);
    CHECK(check_power_indivisible(a2, Root{1, 1}, 2).pass);
    CHECK(check_power_indivisible(a2, Root{1, 0}, 3).pass);
    CuspidalTable b2 = table_for("B2");
    CHECK(check_power_indivisible(b2, Root{1, 1}, 2).pass);
    CHECK(check_power_indivisible(b2, Root{2, 1}, 2).pass);
}

TEST_CASE("installing table entries validates them") {
    CuspidalTable src = table_for("B2");
    CuspidalTable dst = table_for("B2");
    ShuffleElt e = src.cuspidal(Root{2, 1});
    dst.set(Root{2, 1}, e);
    CHECK(dst.cuspidal(Root{2, 1}) == e);
    CHECK_THROWS_AS(dst.set(Root{2, 1}, ShuffleElt::single({0, 0, 1}, qp(2))),
                    std::domain_error);
    CHECK_THROWS_AS(dst.set(Root{1, 1}, e), std::domain_error);
    CHECK_THROWS_AS(dst.set(Root{3, 3}, e), std::domain_error);
}

TEST_CASE("degenerate cuspidal requests throw") {
    CuspidalTable t = table_for("A2");
    CHECK_THROWS_AS(t.cuspidal(Root{2, 0}), std::domain_error);
    CHECK_THROWS_AS(t.cuspidal_via_pair(Root{1, 1}, RootPair{Root{1, 0}, Root{1, 0}}),
                    std::domain_error);
    CHECK_THROWS_AS(check_power_indivisible(t, Root{1, 1}, 0), std::domain_error);
    CHECK_THROWS_AS(kp_weight(t.order(), KPVector{1, 2}), std::domain_error);
    CHECK_THROWS_AS(kp_less(KPVector{1}, KPVector{1, 2}), std::domain_error);
}
