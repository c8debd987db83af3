#include "klr/pbw.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace klr {

namespace {

std::string word_str(const Word& w) {
    std::string s;
    for (int l : w) s += std::to_string(l);
    return s.empty() ? "()" : s;
}

std::string root_str(const Root& a) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ')';
    return os.str();
}

Root add_roots(const Root& a, const Root& b) {
    Root r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

// a == q^s * b for one integer s, over any map with LaurentPoly values.
template <class M>
std::optional<int> proportional_maps(const M& a, const M& b) {
    if (a.empty() && b.empty()) return 0;
    if (a.size() != b.size()) return std::nullopt;
    std::optional<int> s;
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return std::nullopt;
        int d = ia->second.min_exp() - ib->second.min_exp();
        if (s && *s != d) return std::nullopt;
        if (ia->second != ib->second.shifted(d)) return std::nullopt;
        s = d;
    }
    return s;
}

} // namespace

Root kp_weight(const ConvexOrder& co, const KPVector& m) {
    const auto& roots = co.roots();
    if (m.size() != roots.size()) throw std::domain_error("kp_weight: length mismatch");
    const int rank = co.system().rank();
    Root nu(rank, 0);
    for (std::size_t k = 0; k < roots.size(); ++k) {
        if (m[k] < 0) throw std::domain_error("kp_weight: negative multiplicity");
        for (int i = 0; i < rank; ++i) nu[i] += m[k] * roots[k][i];
    }
    return nu;
}

std::vector<KPVector> kp_vectors(const ConvexOrder& co, const Root& nu) {
    const auto& roots = co.roots();
    std::vector<KPVector> out;
    KPVector cur(roots.size(), 0);
    std::function<void(std::size_t, Root)> go = [&](std::size_t k, Root rem) {
        if (k == roots.size()) {
            if (height(rem) == 0) out.push_back(cur);
            return;
        }
        for (int c = 0;; ++c) {
            bool fits = true;
            for (std::size_t i = 0; i < rem.size(); ++i)
                if (rem[i] < 0) fits = false;
            if (!fits) break;
            cur[k] = c;
            go(k + 1, rem);
            for (std::size_t i = 0; i < rem.size(); ++i) rem[i] -= roots[k][i];
        }
        cur[k] = 0;
    };
    go(0, nu);
    return out;
}

bool kp_less(const KPVector& m, const KPVector& n) {
    if (m.size() != n.size()) throw std::domain_error("kp_less: length mismatch");
    for (std::size_t i = m.size(); i-- > 0;)
        if (m[i] != n[i]) return n[i] > m[i];
    return false;
}

bool kp_less_prime(const KPVector& m, const KPVector& n) {
    if (m.size() != n.size()) throw std::domain_error("kp_less_prime: length mismatch");
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != n[i]) return n[i] > m[i];
    return false;
}

LaurentPoly run_factorial(const CartanData& cd, const Word& w) {
    LaurentPoly f(1);
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        f = f * qfact(static_cast<int>(j - i), cd.d(w[i]));
        i = j;
    }
    return f;
}

CuspidalTable::CuspidalTable(ConvexOrder co) : co_(std::move(co)), alg_(co_.system().cartan()) {}

const ShuffleElt& CuspidalTable::cuspidal(const Root& alpha) {
    auto it = table_.find(alpha);
    if (it != table_.end()) return it->second;
    const auto& rs = co_.system();
    if (!rs.is_positive_root(alpha))
        throw std::domain_error("cuspidal: " + root_str(alpha) + " is not a positive root");
    ShuffleElt e;
    if (height(alpha) == 1) {
        int i = 0;
        while (alpha[i] == 0) ++i;
        e = ShuffleElt::single({i});
    } else {
        e = cuspidal_via_pair(alpha, chosen_minimal_pair(co_, alpha));
    }
    return table_.emplace(alpha, std::move(e)).first->second;
}

ShuffleElt CuspidalTable::cuspidal_via_pair(const Root& alpha, const RootPair& pair) {
    const auto& rs = co_.system();
    if (add_roots(pair.beta, pair.gamma) != alpha)
        throw std::domain_error("cuspidal: pair does not sum to " + root_str(alpha));
    const ShuffleElt eb = cuspidal(pair.beta);
    const ShuffleElt eg = cuspidal(pair.gamma);
    ShuffleElt c =
        alg_.product(eb, eg) - alg_.product(eg, eb).shifted(rs.pair(pair.beta, pair.gamma));
    if (c.is_zero())
        throw std::domain_error("cuspidal: commutator for " + root_str(alpha) + " vanishes");

    // Primitive part inside the divided-power lattice: divide out the largest
    // factor f such that every coefficient stays divisible by its word's run
    // factorial.
    LaurentPoly f(0);
    for (const auto& [w, cw] : c.terms) {
        LaurentPoly d;
        if (!divide_exact(cw, run_factorial(alg_.cartan(), w), d))
            throw std::domain_error("cuspidal: commutator escapes the divided-power lattice at " +
                                    word_str(w));
        f = laurent_gcd(f, d);
    }
    ShuffleElt e;
    for (const auto& [w, cw] : c.terms) {
        LaurentPoly d;
        if (!divide_exact(cw, f, d))
            throw std::domain_error("cuspidal: lattice content fails to divide at " + word_str(w));
        e.add(w, d);
    }

    // The unique global q-power centering every coefficient, then a global
    // sign. Anything else is a convention bug worth dying over.
    std::optional<int> shift;
    for (const auto& [w, cw] : e.terms) {
        int s = cw.min_exp() + cw.max_exp();
        if (s % 2 != 0)
            throw std::domain_error("cuspidal: no q-power centers the coefficient at " +
                                    word_str(w));
        if (shift && *shift != -s / 2)
            throw std::domain_error("cuspidal: coefficients demand conflicting q-powers");
        shift = -s / 2;
    }
    e = e.shifted(*shift);
    if (!e.coeffs_bar_invariant())
        throw std::domain_error("cuspidal: normalized character is not bar-invariant");
    if (!e.coeffs_nonneg()) {
        e = e.scaled(LaurentPoly(-1));
        if (!e.coeffs_nonneg())
            throw std::domain_error("cuspidal: normalized character has mixed signs");
    }
    if (e.content() != 1)
        throw std::domain_error("cuspidal: normalized character has content > 1");
    return e;
}

const std::map<Root, ShuffleElt>& CuspidalTable::all() {
    for (const auto& a : co_.roots()) cuspidal(a);
    return table_;
}

void CuspidalTable::set(const Root& alpha, ShuffleElt value) {
    const auto& rs = co_.system();
    if (!rs.is_positive_root(alpha))
        throw std::domain_error("cuspidal table: " + root_str(alpha) + " is not a positive root");
    auto wt = value.weight(rs.rank());
    if (!wt || *wt != alpha)
        throw std::domain_error("cuspidal table: entry weight differs from its root");
    if (!value.coeffs_bar_invariant() || !value.coeffs_nonneg() || value.content() != 1)
        throw std::domain_error("cuspidal table: entry violates the normalization");
    table_[alpha] = std::move(value);
}

ShuffleElt standard_character(CuspidalTable& t, const KPVector& m) {
    const auto& roots = t.order().roots();
    if (m.size() != roots.size()) throw std::domain_error("standard_character: length mismatch");
    ShuffleElt r = ShuffleElt::single({});
    for (std::size_t k = 0; k < roots.size(); ++k) {
        if (m[k] < 0) throw std::domain_error("standard_character: negative multiplicity");
        for (int c = 0; c < m[k]; ++c) r = t.algebra().product(r, t.cuspidal(roots[k]));
    }
    return r;
}

ShuffleElt costandard_character(CuspidalTable& t, const KPVector& m) {
    const auto& roots = t.order().roots();
    if (m.size() != roots.size()) throw std::domain_error("costandard_character: length mismatch");
    ShuffleElt r = ShuffleElt::single({});
    for (std::size_t k = roots.size(); k-- > 0;) {
        if (m[k] < 0) throw std::domain_error("costandard_character: negative multiplicity");
        for (int c = 0; c < m[k]; ++c) r = t.algebra().product(r, t.cuspidal(roots[k]));
    }
    return r;
}

std::map<KPVector, LaurentPoly> expand_in_dual_pbw(CuspidalTable& t, const ShuffleElt& x) {
    std::map<KPVector, LaurentPoly> out;
    if (x.is_zero()) return out;
    const Root nu = *x.weight(t.order().system().rank());
    const auto ms = kp_vectors(t.order(), nu);
    const auto& words = t.algebra().words_of_weight(nu);
    Mat<RatFunc> a(words.size(), std::vector<RatFunc>(ms.size(), RatFunc(0)));
    for (std::size_t j = 0; j < ms.size(); ++j) {
        ShuffleElt p = standard_character(t, ms[j]);
        for (std::size_t i = 0; i < words.size(); ++i) a[i][j] = RatFunc(p.coeff(words[i]));
    }
    if (!kernel_basis(a).empty())
        throw std::domain_error("expand: dual root-vector monomials are linearly dependent");
    std::vector<RatFunc> b;
    b.reserve(words.size());
    for (const auto& w : words) b.emplace_back(x.coeff(w));
    auto sol = solve(a, b);
    if (!sol)
        throw std::domain_error("expand: element outside the span of dual root-vector monomials");
    for (std::size_t j = 0; j < ms.size(); ++j)
        if (!(*sol)[j].is_zero()) out[ms[j]] = (*sol)[j].as_laurent();
    return out;
}

std::optional<int> proportional_q_power(const ShuffleElt& a, const ShuffleElt& b) {
    return proportional_maps(a.terms, b.terms);
}

CheckResult check_restriction_lemma(CuspidalTable& t, const KPVector& m, const KPVector& n) {
    const auto& co = t.order();
    const auto& roots = co.roots();
    const int rank = co.system().rank();
    if (kp_weight(co, m) != kp_weight(co, n))
        throw std::domain_error("check_restriction_lemma: weights differ");
    ShuffleElt delta = standard_character(t, m);
    std::vector<Root> parts;
    parts.reserve(roots.size());
    for (std::size_t k = 0; k < roots.size(); ++k) {
        Root p(rank, 0);
        for (int i = 0; i < rank; ++i) p[i] = n[k] * roots[k][i];
        parts.push_back(std::move(p));
    }
    auto comp = t.algebra().split(delta, parts);

    CheckResult r;
    if (kp_less(m, n) || kp_less_prime(m, n)) {
        if (!comp.empty()) {
            r.pass = false;
            r.detail = "restriction along a larger multiset is nonzero";
        }
        return r;
    }
    if (comp.empty()) {
        r.pass = false;
        r.detail = "restriction along a not-larger multiset vanishes";
        return r;
    }
    if (n == m) {
        std::vector<ShuffleElt> factor;
        factor.reserve(roots.size());
        for (std::size_t k = 0; k < roots.size(); ++k)
            factor.push_back(t.algebra().power(t.cuspidal(roots[k]), m[k]));
        std::map<std::vector<Word>, LaurentPoly> expected;
        std::vector<Word> acc;
        std::function<void(std::size_t, LaurentPoly)> go = [&](std::size_t k, LaurentPoly cur) {
            if (k == factor.size()) {
                expected[acc] = std::move(cur);
                return;
            }
            for (const auto& [w, cw] : factor[k].terms) {
                acc.push_back(w);
                go(k + 1, cur * cw);
                acc.pop_back();
            }
        };
        go(0, LaurentPoly(1));
        auto s = proportional_maps(comp, expected);
        if (!s) {
            r.pass = false;
            r.detail = "restriction along the multiset itself is not the boxed cuspidal product";
        }
    }
    return r;
}

CheckResult check_cuspidal_restriction(CuspidalTable& t, const Root& alpha) {
    const auto& co = t.order();
    const auto& rs = co.system();
    const int rank = rs.rank();
    CheckResult r;
    const ShuffleElt e = t.cuspidal(alpha);
    const int apos = co.position(alpha);
    const int nroots = static_cast<int>(co.roots().size());

    // Feasibility of writing nu as an N-combination of the order's roots with
    // positions inside [lo, hi].
    auto representable = [&](const Root& nu, int lo, int hi) {
        std::function<bool(Root, int)> go = [&](Root rem, int k) {
            if (height(rem) == 0) return true;
            if (k > hi) return false;
            const Root& rt = co.roots()[k];
            for (;;) {
                if (go(rem, k + 1)) return true;
                for (int i = 0; i < rank; ++i) rem[i] -= rt[i];
                for (int i = 0; i < rank; ++i)
                    if (rem[i] < 0) return false;
            }
        };
        return go(nu, lo);
    };

    // Enumerate prefix weights coordinatewise below alpha.
    Root lambda(rank, 0);
    std::function<bool(int)> scan = [&](int i) -> bool {
        if (i == rank) {
            if (t.algebra().deconcat(e, lambda).empty()) return true;
            Root mu = alpha;
            for (int j = 0; j < rank; ++j) mu[j] -= lambda[j];
            if (!representable(lambda, apos, nroots - 1)) {
                r.pass = false;
                r.detail = "prefix weight " + root_str(lambda) +
                           " is not a combination of roots above " + root_str(alpha);
                return false;
            }
            if (!representable(mu, 0, apos)) {
                r.pass = false;
                r.detail = "suffix weight " + root_str(mu) +
                           " is not a combination of roots below " + root_str(alpha);
                return false;
            }
            return true;
        }
        for (lambda[i] = 0; lambda[i] <= alpha[i]; ++lambda[i])
            if (!scan(i + 1)) return false;
        lambda[i] = 0;
        return true;
    };
    if (!scan(0)) return r;

    // At a minimal pair (beta, gamma) the (gamma, beta) component must be a
    // rank-one Laurent multiple of E*_gamma (x) E*_beta.
    for (const auto& pair : minimal_pairs(co, alpha)) {
        auto comp = t.algebra().deconcat(e, pair.gamma);
        if (comp.empty()) continue;
        const ShuffleElt eg = t.cuspidal(pair.gamma);
        const ShuffleElt ebt = t.cuspidal(pair.beta);
        std::map<std::pair<Word, Word>, LaurentPoly> got;
        for (const auto& [w1, w2, cw] : comp) got[{w1, w2}] += cw;
        const auto& [rw1, rw2] = got.begin()->first;
        LaurentPoly denom = eg.coeff(rw1) * ebt.coeff(rw2);
        LaurentPoly cmul;
        if (denom.is_zero() || !divide_exact(got.begin()->second, denom, cmul)) {
            r.pass = false;
            r.detail = "component at the minimal pair is not a Laurent multiple of the boxed product";
            return r;
        }
        std::map<std::pair<Word, Word>, LaurentPoly> want;
        for (const auto& [w1, c1] : eg.terms)
            for (const auto& [w2, c2] : ebt.terms) {
                LaurentPoly v = cmul * c1 * c2;
                if (!v.is_zero()) want[{w1, w2}] = std::move(v);
            }
        if (got != want) {
            r.pass = false;
            r.detail = "component at the minimal pair is not proportional to the boxed product";
            return r;
        }
    }
    return r;
}

CheckResult check_power_indivisible(CuspidalTable& t, const Root& alpha, int n) {
    if (n < 1) throw std::domain_error("check_power_indivisible: n must be positive");
    CheckResult r;
    ShuffleElt x = t.algebra().power(t.cuspidal(alpha), n);
    auto expansion = expand_in_dual_pbw(t, x);
    KPVector want(t.order().roots().size(), 0);
    want[t.order().position(alpha)] = n;
    if (expansion.size() != 1 || expansion.begin()->first != want ||
        expansion.begin()->second != LaurentPoly(1)) {
        r.pass = false;
        r.detail = "cuspidal power expands beyond the single monomial";
    }
    return r;
}

} // namespace klr
