#pragma once

#include "klr/shuffle.hpp"

namespace klr {

// Multiset of positive roots, stored as the multiplicity at each position of
// a fixed convex order (position 0 = smallest root).
using KPVector = std::vector<int>;

Root kp_weight(const ConvexOrder& co, const KPVector& m);
std::vector<KPVector> kp_vectors(const ConvexOrder& co, const Root& nu);
// m < n when n wins at the largest differing index.
bool kp_less(const KPVector& m, const KPVector& n);
// m <' n when n wins at the smallest differing index.
bool kp_less_prime(const KPVector& m, const KPVector& n);

// Maximal-run divided-power factor of a word: prod over maximal runs of a
// letter l of [run length]! in q_l.
LaurentPoly run_factorial(const CartanData& cd, const Word& w);

// Inductive table of cuspidal characters E*_alpha for one convex order.
class CuspidalTable {
public:
    explicit CuspidalTable(ConvexOrder co);

    const ConvexOrder& order() const { return co_; }
    const ShuffleAlgebra& algebra() const { return alg_; }

    // E*_alpha, built on demand through the canonical minimal pair.
    const ShuffleElt& cuspidal(const Root& alpha);
    // The normalized q-commutator for one specific straddling pair.
    ShuffleElt cuspidal_via_pair(const Root& alpha, const RootPair& pair);
    // Build every entry and return the full table.
    const std::map<Root, ShuffleElt>& all();
    // Install a precomputed entry (cache load); validates the invariants.
    void set(const Root& alpha, ShuffleElt value);

private:
    ConvexOrder co_;
    ShuffleAlgebra alg_;
    std::map<Root, ShuffleElt> table_;
};

// Dual PBW monomial: shuffle product of cuspidal powers along increasing
// root order. Also the character of the standard module for m.
ShuffleElt standard_character(CuspidalTable& t, const KPVector& m);
// Decreasing order: the costandard character.
ShuffleElt costandard_character(CuspidalTable& t, const KPVector& m);

// Exact expansion of x over the dual PBW monomials of its weight. Throws
// when x is not in their span or a coefficient is not a Laurent polynomial.
std::map<KPVector, LaurentPoly> expand_in_dual_pbw(CuspidalTable& t, const ShuffleElt& x);

// If a = q^s * b for a single integer power s, return s.
std::optional<int> proportional_q_power(const ShuffleElt& a, const ShuffleElt& b);

struct CheckResult {
    bool pass = true;
    std::string detail;
};

// Vanishing/identification pattern of restricting a standard character along
// the composition n: zero iff n > m or n >' m; at n = m the boxed product of
// cuspidal powers up to one global q-power.
CheckResult check_restriction_lemma(CuspidalTable& t, const KPVector& m, const KPVector& n);
// Every two-part deconcat of E*_alpha has prefix in the span of roots >=
// alpha and suffix in the span of roots <= alpha; at a minimal pair
// (gamma, beta) the component is a rank-one multiple of E*_gamma (x) E*_beta.
CheckResult check_cuspidal_restriction(CuspidalTable& t, const Root& alpha);
// (E*_alpha)^n expands to exactly the monomial n*1_alpha.
CheckResult check_power_indivisible(CuspidalTable& t, const Root& alpha, int n);

} // namespace klr
