#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "klr/linalg.hpp"
#include "klr/qarith.hpp"
#include "klr/rootsys.hpp"

namespace klr {

// Homogeneous element of the quantum shuffle algebra: a finitely supported
// map word -> Laurent polynomial. All supported words must share one weight;
// zero coefficients are never stored.
class ShuffleElt {
public:
    std::map<Word, LaurentPoly> terms;

    ShuffleElt() = default;
    static ShuffleElt single(const Word& w, LaurentPoly c = LaurentPoly(1));

    bool is_zero() const { return terms.empty(); }
    void add(const Word& w, const LaurentPoly& c);
    LaurentPoly coeff(const Word& w) const;
    // Weight of the supported words; nullopt when zero; throws when mixed.
    std::optional<Root> weight(int rank) const;

    ShuffleElt& operator+=(const ShuffleElt& o);
    ShuffleElt& operator-=(const ShuffleElt& o);
    friend ShuffleElt operator+(ShuffleElt a, const ShuffleElt& b) { return a += b; }
    friend ShuffleElt operator-(ShuffleElt a, const ShuffleElt& b) { return a -= b; }
    ShuffleElt scaled(const LaurentPoly& c) const;
    ShuffleElt shifted(int k) const; // multiply every coefficient by q^k
    friend bool operator==(const ShuffleElt& a, const ShuffleElt& b) {
        return a.terms == b.terms;
    }
    friend bool operator!=(const ShuffleElt& a, const ShuffleElt& b) { return !(a == b); }

    ShuffleElt bar() const;
    std::map<Word, Int> specialize_q1() const;
    bool coeffs_bar_invariant() const;
    bool coeffs_nonneg() const;
    Int content() const; // gcd of the integer contents of all coefficients
};

class ShuffleAlgebra {
public:
    explicit ShuffleAlgebra(CartanData cd);
    const CartanData& cartan() const { return cd_; }
    int rank() const { return cd_.rank(); }

    // Twisted shuffle product: coeff_w(x o y) = sum over complementary
    // position sets A u B with q^{e(A,B)}, e(A,B) = -sum_{a in A, b in B, a>b}
    // w_a.w_b.
    ShuffleElt product(const ShuffleElt& x, const ShuffleElt& y) const;
    ShuffleElt power(const ShuffleElt& x, int n) const;

    // Plain two-part deconcatenation with prefix weight lambda.
    std::vector<std::tuple<Word, Word, LaurentPoly>> deconcat(const ShuffleElt& x,
                                                              const Root& lambda) const;
    // Iterated deconcatenation along an ordered list of part weights.
    std::map<std::vector<Word>, LaurentPoly> split(const ShuffleElt& x,
                                                   const std::vector<Root>& parts) const;

    // (E_ii, E_jj) by the first-letter recursion with (E_i, E_i) = 1/(1-q_i^2);
    // memoized across calls.
    RatFunc monomial_form(const Word& ii, const Word& jj) const;
    const std::vector<Word>& words_of_weight(const Root& nu) const;
    const Mat<RatFunc>& gram(const Root& nu) const;
    // The form carried to the dual side: solve G u = vec(b), return vec(a).u.
    RatFunc transported_form(const ShuffleElt& a, const ShuffleElt& b) const;

    // Character of the monomial E_ii under the pairing embedding:
    // ii -> sum_w (E_ii, E_w) w. Coefficients are genuine rational functions.
    std::map<Word, RatFunc> monomial_character(const Word& ii) const;
    // Shuffle product on rational-function-coefficient characters.
    std::map<Word, RatFunc> product_rf(const std::map<Word, RatFunc>& x,
                                       const std::map<Word, RatFunc>& y) const;

    // Independent route to product coefficients: expand the coproduct of the
    // word monomial in the twisted tensor algebra and pair against x (x) y.
    std::map<std::pair<Word, Word>, LaurentPoly> coproduct_monomial(const Word& jj) const;
    LaurentPoly product_coeff_via_coproduct(const ShuffleElt& x, const ShuffleElt& y,
                                            const Word& jj) const;

private:
    CartanData cd_;
    mutable std::map<std::pair<Word, Word>, RatFunc> form_memo_;
    mutable std::map<Root, std::vector<Word>> words_memo_;
    mutable std::map<Root, Mat<RatFunc>> gram_memo_;
};

} // namespace klr
