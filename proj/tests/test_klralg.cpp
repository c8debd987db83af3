#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "klr/klralg.hpp"
#include "klr/polyrep.hpp"

using namespace klr;

namespace {

KLRTerm mk(Word pw, std::vector<int> ys, Word ii) {
    KLRTerm t;
    t.pword = std::move(pw);
    t.ys = std::move(ys);
    t.ii = std::move(ii);
    return t;
}

// graded degree of a raw input, crossing by crossing
int raw_degree(const CartanData& cd, const Word& ks, const std::vector<int>& ys, const Word& ii) {
    int deg = 0;
    for (std::size_t p = 0; p < ii.size(); ++p) deg += ys[p] * cd.pair(ii[p], ii[p]);
    Word cur = ii;
    for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
        deg -= cd.pair(cur[*it], cur[*it + 1]);
        std::swap(cur[*it], cur[*it + 1]);
    }
    return deg;
}

} // namespace

TEST_CASE("permutation helpers") {
    CHECK(perm_of_word({0, 1}, 3) == Perm{1, 2, 0});
    CHECK(perm_length(Perm{2, 1, 0}) == 3);
    CHECK(perm_inverse(Perm{1, 2, 0}) == Perm{2, 0, 1});
    CHECK(canonical_word(Perm{2, 1, 0}) == Word{0, 1, 0});
    CHECK(canonical_word(Perm{0, 1, 2}).empty());
    CHECK(canonical_word(Perm{1, 0, 2}) == Word{0});
    // every canonical word is reduced and rebuilds its permutation
    Perm w{3, 1, 0, 2};
    Word cw = canonical_word(w);
    CHECK(static_cast<int>(cw.size()) == perm_length(w));
    CHECK(perm_of_word(cw, 4) == w);
    CHECK(permute_word(Perm{1, 2, 0}, Word{5, 6, 7}) == Word{7, 5, 6});
}

TEST_CASE("nilHecke relations: equal letters") {
    KLRAlgebra R(CartanData::named("A2"));
    const Word ii{0, 0, 0};
    // phi_k^2 = 0
    CHECK(R.nf_word({0, 0}, {0, 0, 0}, ii).is_zero());
    CHECK(R.nf_word({1, 1}, {0, 0, 0}, ii).is_zero());
    CHECK(R.nf_word({0, 1, 1, 0}, {0, 0, 0}, ii).is_zero());
    // exact braid move
    CHECK(R.nf_word({0, 1, 0}, {0, 0, 0}, ii) == R.nf_word({1, 0, 1}, {0, 0, 0}, ii));
    // (phi_k y_k - y_{k+1} phi_k) e = -e and (phi_k y_{k+1} - y_k phi_k) e = +e
    const Word jj{0, 0};
    KLRElement crossing = R.nf_word({0}, {0, 0}, jj);
    CHECK(R.nf_word({0}, {1, 0}, jj) - R.lmul_y(1, crossing) == R.idempotent(jj).scaled(LaurentPoly(Int(-1))));
    CHECK(R.nf_word({0}, {0, 1}, jj) - R.lmul_y(0, crossing) == R.idempotent(jj));
}

TEST_CASE("quadratic crossing relation picks up the parameter polynomial") {
    KLRAlgebra A(CartanData::named("A2"));
    KLRElement sq = A.nf_word({0, 0}, {0, 0}, {0, 1});
    KLRElement expect;
    expect.add(mk({}, {1, 0}, {0, 1}), LaurentPoly(1));
    expect.add(mk({}, {0, 1}, {0, 1}), LaurentPoly(Int(-1)));
    CHECK(sq == expect);
    // reversed label order flips the sign
    KLRElement sq2 = A.nf_word({0, 0}, {0, 0}, {1, 0});
    KLRElement expect2;
    expect2.add(mk({}, {1, 0}, {1, 0}), LaurentPoly(Int(-1)));
    expect2.add(mk({}, {0, 1}, {1, 0}), LaurentPoly(1));
    CHECK(sq2 == expect2);

    KLRAlgebra B(CartanData::named("B2"));
    KLRElement bsq = B.nf_word({0, 0}, {0, 0}, {0, 1});
    KLRElement bexpect;
    bexpect.add(mk({}, {2, 0}, {0, 1}), LaurentPoly(1));
    bexpect.add(mk({}, {0, 1}, {0, 1}), LaurentPoly(Int(-1)));
    CHECK(bsq == bexpect);
    // orthogonal letters: the crossing squares to the idempotent
    KLRAlgebra A3(CartanData::named("A3"));
    CHECK(A3.nf_word({0, 0}, {0, 0}, {0, 2}) == A3.idempotent({0, 2}));
}

TEST_CASE("braid defect equals the divided parameter difference") {
    auto defect = [](KLRAlgebra& R, const Word& ii) {
        return R.nf_word({1, 0, 1}, std::vector<int>(3, 0), ii) -
               R.nf_word({0, 1, 0}, std::vector<int>(3, 0), ii);
    };
    KLRAlgebra A(CartanData::named("A2"));
    CHECK(defect(A, {0, 1, 0}) == A.idempotent({0, 1, 0}));
    CHECK(defect(A, {1, 0, 1}) == A.idempotent({1, 0, 1}).scaled(LaurentPoly(Int(-1))));
    // distinct outer letters: no defect
    KLRAlgebra A3(CartanData::named("A3"));
    CHECK(defect(A3, {0, 1, 2}).is_zero());
    CHECK(defect(A3, {2, 1, 0}).is_zero());

    KLRAlgebra B(CartanData::named("B2"));
    KLRElement bd;
    bd.add(mk({}, {1, 0, 0}, {0, 1, 0}), LaurentPoly(1));
    bd.add(mk({}, {0, 0, 1}, {0, 1, 0}), LaurentPoly(1));
    CHECK(defect(B, {0, 1, 0}) == bd);
    CHECK(defect(B, {1, 0, 1}) == B.idempotent({1, 0, 1}).scaled(LaurentPoly(Int(-1))));

    KLRAlgebra G(CartanData::named("G2"));
    KLRElement gd;
    gd.add(mk({}, {2, 0, 0}, {0, 1, 0}), LaurentPoly(1));
    gd.add(mk({}, {1, 0, 1}, {0, 1, 0}), LaurentPoly(1));
    gd.add(mk({}, {0, 0, 2}, {0, 1, 0}), LaurentPoly(1));
    CHECK(defect(G, {0, 1, 0}) == gd);
}

TEST_CASE("normal forms are homogeneous and idempotent under renormalization") {
    std::mt19937 rng(20240817);
    for (const std::string type : {"A2", "B2", "G2"}) {
        KLRAlgebra R(CartanData::named(type));
        for (int trial = 0; trial < 40; ++trial) {
            const int d = 2 + static_cast<int>(rng() % 3);
            Word ii(d);
            for (auto& a : ii) a = static_cast<int>(rng() % 2);
            const int len = 1 + static_cast<int>(rng() % 6);
            Word ks(len);
            for (auto& k : ks) k = static_cast<int>(rng() % (d - 1));
            std::vector<int> ys(d, 0);
            for (int p = 0; p < d; ++p) ys[p] = static_cast<int>(rng() % 2);
            const KLRElement x = R.nf_word(ks, ys, ii);
            const int want = raw_degree(R.cartan(), ks, ys, ii);
            for (const auto& [t, c] : x.terms) {
                CHECK(R.degree(t) == want);
                CHECK(static_cast<int>(t.pword.size()) == perm_length(perm_of_word(t.pword, d)));
                // renormalizing a normal term reproduces it exactly
                CHECK(R.nf_word(t.pword, t.ys, t.ii) == KLRElement::single(t));
            }
        }
    }
}

TEST_CASE("left and right generator folds agree and match the polynomial action") {
    std::mt19937 rng(911);
    int checked = 0;
    for (const std::string type : {"A2", "B2"}) {
        const CartanData cd = CartanData::named(type);
        KLRAlgebra R(cd);
        PolyRep rep(cd);
        for (int trial = 0; trial < 100; ++trial) {
            const int d = 2 + static_cast<int>(rng() % 3);
            Word ii(d);
            for (auto& a : ii) a = static_cast<int>(rng() % 2);
            const int len = 1 + static_cast<int>(rng() % 7);
            // op codes: (0, k) crossing, (1, j) dot
            std::vector<std::pair<int, int>> ops(len);
            Word crossings;
            for (auto& op : ops) {
                if (rng() % 3 == 0) {
                    op = {1, static_cast<int>(rng() % d)};
                } else {
                    op = {0, static_cast<int>(rng() % (d - 1))};
                }
                if (op.first == 0) crossings.push_back(op.second);
            }
            const Word jj = permute_word(perm_of_word(crossings, d), ii);

            KLRElement left = R.idempotent(ii);
            for (auto it = ops.rbegin(); it != ops.rend(); ++it)
                left = it->first == 0 ? R.lmul_phi(it->second, left) : R.lmul_y(it->second, left);
            left = R.lmul_e(jj, left);

            KLRElement right = R.idempotent(jj);
            for (const auto& op : ops)
                right = op.first == 0 ? R.rmul_phi(op.second, right) : R.rmul_y(op.second, right);
            right = R.rmul_e(ii, right);

            CHECK(left == right);

            // third path: polynomial action on a generic vector
            PolyRep::Vec seed;
            for (const auto& e : monomials_up_to(d, 2))
                seed.emplace(PolyRep::Key{ii, e}, LaurentPoly(Int(1 + static_cast<int>(rng() % 5))));
            PolyRep::Vec direct = seed;
            for (auto it = ops.rbegin(); it != ops.rend(); ++it)
                direct = it->first == 0 ? rep.apply_phi(it->second, direct) : rep.apply_y(it->second, direct);
            direct = rep.apply_e(jj, direct);
            CHECK(rep.apply_element(left, seed) == direct);
            if (!left.is_zero()) ++checked;
        }
    }
    CHECK(checked > 60);
}

TEST_CASE("products: associativity probes and random pivot splits") {
    std::mt19937 rng(4242);
    KLRAlgebra R(CartanData::named("B2"));
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 2);
        Word ii(d);
        for (auto& a : ii) a = static_cast<int>(rng() % 2);
        const int len = 2 + static_cast<int>(rng() % 5);
        Word ks(len);
        for (auto& k : ks) k = static_cast<int>(rng() % (d - 1));
        const KLRElement whole = R.nf_word(ks, std::vector<int>(d, 0), ii);
        const std::size_t pivot = 1 + rng() % (ks.size() - 1);
        const Word pre(ks.begin(), ks.begin() + static_cast<long>(pivot));
        const Word suf(ks.begin() + static_cast<long>(pivot), ks.end());
        const KLRElement xs = R.nf_word(suf, std::vector<int>(d, 0), ii);
        // splitting through one idempotent block
        const Word mid = permute_word(perm_of_word(suf, d), ii);
        const KLRElement xp = R.nf_word(pre, std::vector<int>(d, 0), mid);
        KLRElement direct = R.lmul_e(mid, xs);
        for (auto it = pre.rbegin(); it != pre.rend(); ++it) direct = R.lmul_phi(*it, direct);
        CHECK(R.mul(xp, xs) == direct);
        // summing the prefix over every left block reproduces the whole word
        Word sorted = ii;
        std::sort(sorted.begin(), sorted.end());
        KLRElement xpfull;
        do xpfull += R.nf_word(pre, std::vector<int>(d, 0), sorted);
        while (std::next_permutation(sorted.begin(), sorted.end()));
        CHECK(R.mul(xpfull, xs) == whole);
    }
}

TEST_CASE("defining identity of the rank-four fixture word") {
    KLRAlgebra R(CartanData::named("F4"));
    const Word ii{1, 0, 1, 2};
    const KLRElement lhs = R.nf_word({0, 1, 2, 2, 1, 0}, {0, 0, 0, 0}, ii);
    // the crossing square inside s1 s2^2 s1 acts on equal letters, so that
    // summand vanishes outright
    CHECK(R.nf_word({0, 1, 1, 0}, {2, 0, 0, 0}, ii).is_zero());
    KLRElement rhs = R.lmul_phi(1, R.lmul_phi(0, R.lmul_y(0, R.nf_word({1}, {0, 0, 0, 0}, ii))));
    rhs += R.lmul_y(0, R.idempotent(ii));
    rhs += R.nf_word({0, 1, 0}, {0, 0, 1, 0}, ii);
    CHECK(lhs == rhs);
    CHECK(!lhs.is_zero());
    // closed form of the survivor: the half-length crossing word times a dot sum
    KLRElement closed = R.nf_word({0, 1, 0}, {1, 0, 0, 0}, ii);
    closed += R.nf_word({0, 1, 0}, {0, 0, 1, 0}, ii);
    CHECK(lhs == closed);
}

TEST_CASE("graded dimension series") {
    KLRAlgebra A(CartanData::named("A2"));
    const std::map<int, Int> single = A.graded_dim_hom({0}, {0}, 6);
    CHECK(single == std::map<int, Int>{{0, Int(1)}, {2, Int(1)}, {4, Int(1)}, {6, Int(1)}});
    const std::map<int, Int> twice = A.graded_dim_hom({0, 0}, {0, 0}, 2);
    CHECK(twice == std::map<int, Int>{{-2, Int(1)}, {0, Int(3)}, {2, Int(5)}});
    // mismatched components have no morphisms below any cap
    CHECK(A.graded_dim_hom({0, 1}, {0, 1}, -3).empty());
    CHECK_THROWS_AS((void)A.graded_dim_hom({0}, {0, 0}, 3), std::domain_error);
}

TEST_CASE("spanning-set count matches the polynomial-representation rank") {
    std::mt19937 rng(77);
    for (const std::string type : {"A2", "B2"}) {
        const CartanData cd = CartanData::named(type);
        KLRAlgebra R(cd);
        PolyRep rep(cd);
        RootSystem rs(cd);
        for (int h1 = 0; h1 <= 3; ++h1) {
            for (int h2 = 0; h2 + h1 <= 3; ++h2) {
                if (h1 + h2 == 0) continue;
                const int d = h1 + h2;
                Word base;
                for (int s = 0; s < h1; ++s) base.push_back(0);
                for (int s = 0; s < h2; ++s) base.push_back(1);
                std::vector<Word> words;
                Word cur = base;
                std::sort(cur.begin(), cur.end());
                do words.push_back(cur);
                while (std::next_permutation(cur.begin(), cur.end()));
                for (const Word& ii : words) {
                    for (const Word& jj : words) {
                        // candidates: all (w, dots) with w * ii = jj, total dots <= 3
                        std::vector<KLRTerm> cands;
                        Perm w(d);
                        std::iota(w.begin(), w.end(), 0);
                        do {
                            if (permute_word(w, ii) != jj) continue;
                            for (const auto& a : monomials_up_to(d, 3))
                                cands.push_back(mk(canonical_word(w), a, ii));
                        } while (std::next_permutation(w.begin(), w.end()));
                        if (cands.empty()) continue;
                        std::vector<PolyRep::Vec> seeds;
                        int got = 0;
                        const int want = static_cast<int>(cands.size());
                        for (int attempt = 0; attempt < 4; ++attempt) {
                            PolyRep::Vec s;
                            for (const auto& e : monomials_up_to(d, 4))
                                s.emplace(PolyRep::Key{ii, e},
                                          LaurentPoly(Int(1 + static_cast<int>(rng() % 7))));
                            seeds.push_back(std::move(s));
                            got = rank(operator_matrix(rep, cands, seeds));
                            if (got == want) break;
                        }
                        CHECK(got == want);
                    }
                }
            }
        }
    }
}

TEST_CASE("relabelling regression: conventions stay coherent under a label swap") {
    // G2 with its two labels exchanged
    CartanData swapped;
    swapped.bil = {{6, -3}, {-3, 2}};
    swapped.validate();
    KLRAlgebra G(CartanData::named("G2"));
    KLRAlgebra H(swapped);
    PolyRep repG(CartanData::named("G2"));
    PolyRep repH(swapped);
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 2);
        Word ii(d);
        for (auto& a : ii) a = static_cast<int>(rng() % 2);
        Word flip = ii;
        for (auto& a : flip) a = 1 - a;
        const int len = 1 + static_cast<int>(rng() % 5);
        Word ks(len);
        for (auto& k : ks) k = static_cast<int>(rng() % (d - 1));
        const std::vector<int> ys(d, 0);
        const KLRElement xg = G.nf_word(ks, ys, ii);
        const KLRElement xh = H.nf_word(ks, ys, flip);
        // same number of terms and matching graded degrees under the relabelling
        CHECK(xg.terms.size() == xh.terms.size());
        // each engine agrees with its own polynomial action
        PolyRep::Vec sg, sh;
        for (const auto& e : monomials_up_to(d, 2)) {
            const Int c(1 + static_cast<int>(rng() % 5));
            sg.emplace(PolyRep::Key{ii, e}, LaurentPoly(c));
            sh.emplace(PolyRep::Key{flip, e}, LaurentPoly(c));
        }
        CHECK(repG.apply_element(xg, sg) == repG.apply_raw(ks, ys, ii, sg));
        CHECK(repH.apply_element(xh, sh) == repH.apply_raw(ks, ys, flip, sh));
    }
    // dimension series are invariant under relabelling
    CHECK(G.graded_dim_hom({0, 1}, {1, 0}, 4) == H.graded_dim_hom({1, 0}, {0, 1}, 4));
}

TEST_CASE("letter budget and validation errors") {
    KLRAlgebra R(CartanData::named("A2"), 4);
    CHECK_THROWS_AS((void)R.idempotent({0, 1, 0, 1, 0}), std::domain_error);
    CHECK_THROWS_AS((void)R.idempotent({0, 7}), std::domain_error);
    CHECK_THROWS_AS((void)R.nf_word({3}, {0, 0}, {0, 1}), std::domain_error);
    CHECK_THROWS_AS((void)R.nf_word({0}, {-1, 0}, {0, 1}), std::domain_error);
    CHECK_THROWS_AS((void)R.nf_word({0}, {0}, {0, 1}), std::domain_error);
    CHECK_THROWS_AS(KLRAlgebra(CartanData::named("A2"), 0), std::domain_error);
}
