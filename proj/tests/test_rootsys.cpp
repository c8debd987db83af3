#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "klr/rootsys.hpp"

#include <algorithm>

using namespace klr;

namespace {

Word wd(const std::string& s) {
    Word w;
    for (char c : s) w.push_back(c - '0');
    return w;
}

std::vector<std::string> good_words(const ConvexOrder& co) {
    std::vector<std::string> out;
    for (const Root& a : co.roots()) {
        std::string s;
        for (int l : co.good_word(a)) s += static_cast<char>('0' + l);
        out.push_back(s);
    }
    return out;
}

} // namespace

TEST_CASE("named Cartan data") {
    auto g2 = CartanData::named("G2");
    CHECK(g2.d(0) == 2);
    CHECK(g2.d(1) == 6);
    CHECK(g2.cartan(0, 1) == -3);
    CHECK(g2.cartan(1, 0) == -1);
    auto f4 = CartanData::named("F4");
    CHECK(f4.d(0) == 2);
    CHECK(f4.d(3) == 4);
    CHECK(f4.cartan(1, 2) == -2);
    CHECK(f4.cartan(2, 1) == -1);
    CHECK(f4.cartan(0, 1) == -1);
    auto b3 = CartanData::named("B3");
    CHECK(b3.d(0) == 2);
    CHECK(b3.d(1) == 4);
    CHECK(b3.cartan(0, 1) == -2);
    CHECK(b3.cartan(1, 0) == -1);
    auto c3 = CartanData::named("C3");
    CHECK(c3.d(0) == 4);
    CHECK(c3.d(1) == 2);
    CHECK(c3.cartan(0, 1) == -1);
    CHECK(c3.cartan(1, 0) == -2);
    CHECK_THROWS_AS(CartanData::named("Q5"), std::domain_error);
    CHECK_THROWS_AS(CartanData::named("D3"), std::domain_error);
    // affine datum is rejected as not finite type
    CartanData affine{{{2, -2}, {-2, 2}}};
    CHECK_THROWS_AS(affine.validate(), std::domain_error);
}

TEST_CASE("positive root counts") {
    auto count = [](const std::string& t) {
        return RootSystem(CartanData::named(t)).positive_roots().size();
    };
    CHECK(count("A1") == 1);
    CHECK(count("A2") == 3);
    CHECK(count("A3") == 6);
    CHECK(count("B2") == 4);
    CHECK(count("B3") == 9);
    CHECK(count("C3") == 9);
    CHECK(count("D4") == 12);
    CHECK(count("G2") == 6);
    CHECK(count("F4") == 24);
    CHECK(count("E6") == 36);
}

TEST_CASE("convex order from reduced word") {
    RootSystem a2(CartanData::named("A2"));
    auto co = ConvexOrder::from_word(a2, {0, 1, 0});
    CHECK(co.roots() == std::vector<Root>{{1, 0}, {1, 1}, {0, 1}});
    CHECK(co.to_word() == Word{0, 1, 0});
    co.check_convexity();
    CHECK_THROWS_AS(ConvexOrder::from_word(a2, {0, 1}), std::domain_error);
    CHECK_THROWS_AS(ConvexOrder::from_word(a2, {0, 0, 1}), std::domain_error);
    CHECK(co.position({1, 1}) == 1);
    CHECK(co.less({1, 0}, {0, 1}));
    CHECK_THROWS_AS(co.good_word({1, 0}), std::domain_error);
}

TEST_CASE("table order matches the published rank 2 and rank 3 tables") {
    {
        auto co = ConvexOrder::table_order(RootSystem(CartanData::named("A2")));
        CHECK(good_words(co) == std::vector<std::string>{"1", "01", "0"});
        CHECK(co.to_word() == Word{1, 0, 1});
    }
    {
        auto co = ConvexOrder::table_order(RootSystem(CartanData::named("B2")));
        CHECK(good_words(co) == std::vector<std::string>{"1", "01", "001", "0"});
        CHECK(co.to_word() == Word{1, 0, 1, 0});
    }
    {
        auto co = ConvexOrder::table_order(RootSystem(CartanData::named("G2")));
        CHECK(good_words(co) ==
              std::vector<std::string>{"1", "01", "00101", "001", "0001", "0"});
        CHECK(co.to_word() == Word{1, 0, 1, 0, 1, 0});
    }
    {
        auto co = ConvexOrder::table_order(RootSystem(CartanData::named("B3")));
        CHECK(good_words(co) == std::vector<std::string>{"2", "12", "012", "0012", "10012",
                                                         "1", "01", "001", "0"});
    }
    {
        auto co = ConvexOrder::table_order(RootSystem(CartanData::named("C3")));
        CHECK(good_words(co) == std::vector<std::string>{"2", "12", "01212", "012", "1012",
                                                         "1", "011", "01", "0"});
    }
}

TEST_CASE("table order properties") {
    for (const char* t : {"A3", "B3", "C3", "G2", "D4", "F4"}) {
        RootSystem rs(CartanData::named(t));
        auto co = ConvexOrder::table_order(rs);
        co.check_convexity();
        // the order comes from a reduced word and round-trips
        Word w = co.to_word();
        auto co2 = ConvexOrder::from_word(rs, w);
        CHECK(co2.roots() == co.roots());
        // good words are distinct and have the right weight
        std::set<Word> seen;
        for (const Root& a : co.roots()) {
            Word g = co.good_word(a);
            CHECK(weight_of_word(g, rs.rank()) == a);
            CHECK(seen.insert(g).second);
            CHECK(co.root_of_good_word(g) == a);
        }
        CHECK(!co.root_of_good_word(Word{0, 0}).has_value());
    }
}

TEST_CASE("straddling and minimal pairs in G2") {
    RootSystem rs(CartanData::named("G2"));
    auto co = ConvexOrder::table_order(rs);
    auto root = [&](const std::string& s) { return weight_of_word(wd(s), 2); };

    auto mp01 = minimal_pairs(co, root("01"));
    REQUIRE(mp01.size() == 1);
    CHECK(mp01[0] == RootPair{root("1"), root("0")});

    auto mp001 = minimal_pairs(co, root("001"));
    REQUIRE(mp001.size() == 1);
    CHECK(mp001[0] == RootPair{root("01"), root("0")});

    auto mp0001 = minimal_pairs(co, root("0001"));
    REQUIRE(mp0001.size() == 1);
    CHECK(mp0001[0] == RootPair{root("001"), root("0")});

    // 3a0+2a1 splits both as (01)+(001) and (1)+(0001); the first dominates
    auto st = straddling_pairs(co, root("00101"));
    CHECK(st.size() == 2);
    auto mp = minimal_pairs(co, root("00101"));
    REQUIRE(mp.size() == 1);
    CHECK(mp[0] == RootPair{root("01"), root("001")});
    CHECK(chosen_minimal_pair(co, root("00101")) == mp[0]);

    CHECK_THROWS_AS(chosen_minimal_pair(co, root("0")), std::domain_error);
}

TEST_CASE("F4 table order spot checks") {
    RootSystem rs(CartanData::named("F4"));
    auto co = ConvexOrder::table_order(rs);
    auto root = [&](const std::string& s) { return weight_of_word(wd(s), 4); };
    // printed good words from the classification table
    for (const char* s : {"0123", "1012", "01012", "10123", "010123", "210123",
                          "1210123", "2010123", "12010123", "112010123",
                          "2112010123", "21012310123"})
        CHECK(co.good_word(root(s)) == wd(s));
    CHECK(co.less(root("10123"), root("21012310123")));
    CHECK(co.less(root("21012310123"), root("210123")));
    auto mp = minimal_pairs(co, root("21012310123"));
    RootPair printed{root("10123"), root("210123")};
    CHECK(std::find(mp.begin(), mp.end(), printed) != mp.end());
}

TEST_CASE("reduced word enumeration") {
    auto n_words = [](const std::string& t) {
        return all_reduced_words_w0(RootSystem(CartanData::named(t)), 100000).size();
    };
    CHECK(n_words("A2") == 2);
    CHECK(n_words("B2") == 2);
    CHECK(n_words("G2") == 2);
    CHECK(n_words("A3") == 16);
    CHECK(n_words("B3") == 42);
    CHECK(n_words("C3") == 42);

    RootSystem a3(CartanData::named("A3"));
    CHECK(longest_word(a3) == all_reduced_words_w0(a3, 1)[0]);
    for (const Word& w : all_reduced_words_w0(a3, 100000)) {
        auto co = ConvexOrder::from_word(a3, w);
        co.check_convexity();
    }

    std::mt19937_64 rng(12345);
    RootSystem f4(CartanData::named("F4"));
    for (int k = 0; k < 5; ++k) {
        Word w = random_reduced_word_w0(f4, rng);
        CHECK(w.size() == 24);
        ConvexOrder::from_word(f4, w).check_convexity();
    }
    std::mt19937_64 rng2(12345);
    CHECK(random_reduced_word_w0(f4, rng2) != Word{});
}

TEST_CASE("kostant partition count") {
    RootSystem a2(CartanData::named("A2"));
    CHECK(kostant_partition_count(a2, {1, 1}) == 2);
    CHECK(kostant_partition_count(a2, {1, 0}) == 1);
    CHECK(kostant_partition_count(a2, {0, 0}) == 1);
    CHECK(kostant_partition_count(a2, {-1, 0}) == 0);
    RootSystem b2(CartanData::named("B2"));
    // 2a0+a1: itself, a0+(a0+a1), a0+a0+a1
    CHECK(kostant_partition_count(b2, {2, 1}) == 3);
    // every positive root has at least one partition
    RootSystem g2(CartanData::named("G2"));
    for (const Root& a : g2.positive_roots()) CHECK(kostant_partition_count(g2, a) >= 1);
}
