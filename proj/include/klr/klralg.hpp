#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "klr/qarith.hpp"
#include "klr/rootsys.hpp"

namespace klr {

// Permutations of strand positions 0..d-1, stored as images.
using Perm = std::vector<int>;

int perm_length(const Perm& w);
Perm perm_of_word(const Word& ks, int d);
Perm perm_inverse(const Perm& w);
// Lexicographically smallest reduced word (greedy minimal left descent).
Word canonical_word(Perm w);
// Strand at position p moves to position w(p): jj[w[p]] = ii[p].
Word permute_word(const Perm& w, const Word& ii);

// Basis term phi_w y^a e_ii: crossing word is the canonical reduced word of
// w, all y's to the right of the crossings, one idempotent.
struct KLRTerm {
    Word pword;
    std::vector<int> ys;
    Word ii;
    friend bool operator<(const KLRTerm& a, const KLRTerm& b) {
        return std::tie(a.pword, a.ys, a.ii) < std::tie(b.pword, b.ys, b.ii);
    }
    friend bool operator==(const KLRTerm& a, const KLRTerm& b) {
        return a.pword == b.pword && a.ys == b.ys && a.ii == b.ii;
    }
};

class KLRElement {
public:
    std::map<KLRTerm, LaurentPoly> terms;

    KLRElement() = default;
    static KLRElement single(KLRTerm t, LaurentPoly c = LaurentPoly(1));

    bool is_zero() const { return terms.empty(); }
    void add(const KLRTerm& t, const LaurentPoly& c);
    KLRElement& operator+=(const KLRElement& o);
    KLRElement& operator-=(const KLRElement& o);
    friend KLRElement operator+(KLRElement a, const KLRElement& b) { return a += b; }
    friend KLRElement operator-(KLRElement a, const KLRElement& b) { return a -= b; }
    KLRElement scaled(const LaurentPoly& c) const;
    friend bool operator==(const KLRElement& a, const KLRElement& b) {
        return a.terms == b.terms;
    }
    friend bool operator!=(const KLRElement& a, const KLRElement& b) { return !(a == b); }
    std::string str() const;
};

// The relations as a rewriting system onto the spanning set phi_w y^a e_ii.
// Generator indices are 0-based: y_j for strand j in [0,d), phi_k for the
// crossing of strands k,k+1 with k in [0,d-1).
class KLRAlgebra {
public:
    explicit KLRAlgebra(CartanData cd, int max_letters = 12);
    const CartanData& cartan() const { return cd_; }
    int max_letters() const { return max_letters_; }

    KLRElement idempotent(const Word& ii) const;
    Word left_word(const KLRTerm& t) const;
    int degree(const KLRTerm& t) const;

    KLRElement lmul_e(const Word& jj, const KLRElement& x) const;
    KLRElement lmul_y(int j, const KLRElement& x) const;
    KLRElement lmul_phi(int k, const KLRElement& x) const;
    KLRElement rmul_e(const Word& jj, const KLRElement& x) const;
    KLRElement rmul_y(int j, const KLRElement& x) const;
    KLRElement rmul_phi(int k, const KLRElement& x) const;
    KLRElement mul(const KLRElement& a, const KLRElement& b) const;

    // phi-word (arbitrary, possibly unreduced) times y^ys e_ii.
    KLRElement nf_word(const Word& ks, const std::vector<int>& ys, const Word& ii) const;

    // Graded dimension series of e_jj R(nu) e_ii up to and including the
    // degree cap, counted over the spanning set.
    std::map<int, Int> graded_dim_hom(const Word& ii, const Word& jj, int degree_cap) const;

private:
    CartanData cd_;
    int max_letters_;
    using TermMap = std::map<KLRTerm, LaurentPoly>;
    mutable std::map<std::tuple<int, Word, Word>, TermMap> phi_memo_;
    mutable std::map<std::tuple<int, Word, Word>, TermMap> y_memo_;

    void check_word(const Word& ii) const;
    // sign * (u^{-a_ij} - v^{-a_ji}); the zero/unit degenerations included
    // phi_k^2 e_jj expansion attached directly onto a term base
    KLRElement q_poly_attached(int i1, int i2, int k, const KLRTerm& base,
                               const LaurentPoly& c) const;
    const TermMap& phi_term0(int k, const Word& pword, const Word& ii) const;
    const TermMap& y_term0(int j, const Word& pword, const Word& ii) const;
    // phi_from y^0 e_ii = phi_to y^0 e_ii + (returned extras); from/to reduced
    KLRElement reexpress_extra(const Word& from, const Word& to, const Word& ii) const;
    KLRElement nf_word0(const Word& ks, const Word& ii) const;
    KLRElement lmul_y_pow(int j, int pow, const KLRElement& x) const;
};

} // namespace klr
