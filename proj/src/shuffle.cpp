#include "klr/shuffle.hpp"

#include <algorithm>

namespace klr {

ShuffleElt ShuffleElt::single(const Word& w, LaurentPoly c) {
    ShuffleElt x;
    if (!c.is_zero()) x.terms[w] = std::move(c);
    return x;
}

void ShuffleElt::add(const Word& w, const LaurentPoly& c) {
    auto it = terms.find(w);
    if (it == terms.end()) {
        if (!c.is_zero()) terms.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

LaurentPoly ShuffleElt::coeff(const Word& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? LaurentPoly() : it->second;
}

std::optional<Root> ShuffleElt::weight(int rank) const {
    std::optional<Root> wt;
    for (const auto& [w, c] : terms) {
        Root v = weight_of_word(w, rank);
        if (!wt)
            wt = v;
        else if (*wt != v)
            throw std::domain_error("shuffle element of mixed weight");
    }
    return wt;
}

ShuffleElt& ShuffleElt::operator+=(const ShuffleElt& o) {
    for (const auto& [w, c] : o.terms) add(w, c);
    return *this;
}

ShuffleElt& ShuffleElt::operator-=(const ShuffleElt& o) {
    for (const auto& [w, c] : o.terms) add(w, -c);
    return *this;
}

ShuffleElt ShuffleElt::scaled(const LaurentPoly& c) const {
    ShuffleElt r;
    if (c.is_zero()) return r;
    for (const auto& [w, v] : terms) r.terms[w] = v * c;
    return r;
}

ShuffleElt ShuffleElt::shifted(int k) const {
    ShuffleElt r;
    for (const auto& [w, v] : terms) r.terms[w] = v.shifted(k);
    return r;
}

ShuffleElt ShuffleElt::bar() const {
    ShuffleElt r;
    for (const auto& [w, v] : terms) r.terms[w] = v.bar();
    return r;
}

std::map<Word, Int> ShuffleElt::specialize_q1() const {
    std::map<Word, Int> r;
    for (const auto& [w, v] : terms) r[w] = v.eval_one();
    return r;
}

bool ShuffleElt::coeffs_bar_invariant() const {
    for (const auto& [w, v] : terms)
        if (!v.is_bar_invariant()) return false;
    return true;
}

bool ShuffleElt::coeffs_nonneg() const {
    for (const auto& [w, v] : terms)
        if (!v.is_nonneg()) return false;
    return true;
}

Int ShuffleElt::content() const {
    Int g = 0;
    for (const auto& [w, v] : terms) g = boost::multiprecision::gcd(g, v.content());
    return g;
}

ShuffleAlgebra::ShuffleAlgebra(CartanData cd) : cd_(std::move(cd)) { cd_.validate(); }

namespace {

LaurentPoly shift_by(const LaurentPoly& c, int e) { return c.shifted(e); }
RatFunc shift_by(const RatFunc& c, int e) { return c * RatFunc(LaurentPoly::q_power(e)); }

// Interleave wx and wy into out, twisting by q^{e(A,B)}: choosing the next
// letter from wy while the suffix wx[ix..] remains contributes
// -(that suffix weight).(letter).
template <class C>
void merge_words(const CartanData& cd, const Word& wx, const Word& wy, const C& cxy,
                 std::map<Word, C>& out) {
    const int nx = static_cast<int>(wx.size()), ny = static_cast<int>(wy.size());
    const int r = cd.rank();
    std::vector<std::vector<int>> suf(nx + 1, std::vector<int>(r, 0));
    for (int t = nx - 1; t >= 0; --t) {
        suf[t] = suf[t + 1];
        for (int l = 0; l < r; ++l) suf[t][l] += cd.pair(wx[t], l);
    }
    Word cur;
    cur.reserve(nx + ny);
    auto rec = [&](auto&& self, int ix, int iy, int e) -> void {
        if (ix == nx && iy == ny) {
            auto it = out.find(cur);
            if (it == out.end()) {
                out.emplace(cur, shift_by(cxy, e));
            } else {
                it->second = it->second + shift_by(cxy, e);
            }
            return;
        }
        if (ix < nx) {
            cur.push_back(wx[ix]);
            self(self, ix + 1, iy, e);
            cur.pop_back();
        }
        if (iy < ny) {
            int l = wy[iy];
            cur.push_back(l);
            self(self, ix, iy + 1, e - suf[ix][l]);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0, 0);
}

template <class M>
void prune_zeros(M& m) {
    for (auto it = m.begin(); it != m.end();)
        it = it->second.is_zero() ? m.erase(it) : std::next(it);
}

} // namespace

ShuffleElt ShuffleAlgebra::product(const ShuffleElt& x, const ShuffleElt& y) const {
    x.weight(rank());
    y.weight(rank());
    ShuffleElt out;
    for (const auto& [wx, cx] : x.terms)
        for (const auto& [wy, cy] : y.terms) merge_words(cd_, wx, wy, cx * cy, out.terms);
    prune_zeros(out.terms);
    return out;
}

ShuffleElt ShuffleAlgebra::power(const ShuffleElt& x, int n) const {
    if (n < 0) throw std::domain_error("power: negative exponent");
    ShuffleElt r = ShuffleElt::single({});
    for (int k = 0; k < n; ++k) r = product(r, x);
    return r;
}

std::vector<std::tuple<Word, Word, LaurentPoly>> ShuffleAlgebra::deconcat(
    const ShuffleElt& x, const Root& lambda) const {
    auto wt = x.weight(rank());
    if (wt) {
        for (int i = 0; i < rank(); ++i)
            if (lambda[i] < 0 || lambda[i] > (*wt)[i])
                throw std::domain_error("deconcat: prefix weight not within the element weight");
    }
    const int k = height(lambda);
    std::vector<std::tuple<Word, Word, LaurentPoly>> out;
    for (const auto& [w, c] : x.terms) {
        if (k > static_cast<int>(w.size())) continue;
        Word w1(w.begin(), w.begin() + k);
        if (weight_of_word(w1, rank()) != lambda) continue;
        out.emplace_back(std::move(w1), Word(w.begin() + k, w.end()), c);
    }
    return out;
}

std::map<std::vector<Word>, LaurentPoly> ShuffleAlgebra::split(
    const ShuffleElt& x, const std::vector<Root>& parts) const {
    auto wt = x.weight(rank());
    Root total(rank(), 0);
    for (const auto& p : parts)
        for (int i = 0; i < rank(); ++i) total[i] += p[i];
    if (wt && total != *wt) throw std::domain_error("split: parts do not sum to the weight");
    std::map<std::vector<Word>, LaurentPoly> out;
    for (const auto& [w, c] : x.terms) {
        std::vector<Word> chunks;
        std::size_t at = 0;
        bool ok = true;
        for (const auto& p : parts) {
            std::size_t len = static_cast<std::size_t>(height(p));
            Word piece(w.begin() + at, w.begin() + at + len);
            if (weight_of_word(piece, rank()) != p) {
                ok = false;
                break;
            }
            chunks.push_back(std::move(piece));
            at += len;
        }
        if (ok) out[chunks] += c;
    }
    prune_zeros(out);
    return out;
}

RatFunc ShuffleAlgebra::monomial_form(const Word& ii, const Word& jj) const {
    if (ii.size() != jj.size()) return RatFunc(0);
    if (ii.empty()) return RatFunc(1);
    if (weight_of_word(ii, rank()) != weight_of_word(jj, rank())) return RatFunc(0);
    auto key = std::make_pair(ii, jj);
    auto it = form_memo_.find(key);
    if (it != form_memo_.end()) return it->second;
    const int i1 = ii[0];
    const Word rest(ii.begin() + 1, ii.end());
    RatFunc total(0);
    RatFunc self_pair(LaurentPoly(1), LaurentPoly(1) - LaurentPoly::q_power(cd_.d(i1)));
    int twist = 0;
    for (std::size_t s = 0; s < jj.size(); ++s) {
        if (jj[s] == i1) {
            Word sub = jj;
            sub.erase(sub.begin() + s);
            total += shift_by(self_pair * monomial_form(rest, sub), -twist);
        }
        twist += cd_.pair(jj[s], i1);
    }
    form_memo_.emplace(std::move(key), total);
    return total;
}

const std::vector<Word>& ShuffleAlgebra::words_of_weight(const Root& nu) const {
    auto it = words_memo_.find(nu);
    if (it != words_memo_.end()) return it->second;
    if (static_cast<int>(nu.size()) != rank()) throw std::domain_error("words_of_weight: bad rank");
    std::vector<Word> out;
    Root rem = nu;
    Word cur;
    auto rec = [&](auto&& self) -> void {
        if (height(rem) == 0) {
            out.push_back(cur);
            return;
        }
        for (int l = 0; l < rank(); ++l) {
            if (rem[l] == 0) continue;
            --rem[l];
            cur.push_back(l);
            self(self);
            cur.pop_back();
            ++rem[l];
        }
    };
    rec(rec);
    return words_memo_.emplace(nu, std::move(out)).first->second;
}

const Mat<RatFunc>& ShuffleAlgebra::gram(const Root& nu) const {
    auto it = gram_memo_.find(nu);
    if (it != gram_memo_.end()) return it->second;
    const auto& words = words_of_weight(nu);
    const std::size_t n = words.size();
    Mat<RatFunc> g(n, std::vector<RatFunc>(n, RatFunc(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) g[i][j] = g[j][i] = monomial_form(words[i], words[j]);
    return gram_memo_.emplace(nu, std::move(g)).first->second;
}

RatFunc ShuffleAlgebra::transported_form(const ShuffleElt& a, const ShuffleElt& b) const {
    auto wa = a.weight(rank()), wb = b.weight(rank());
    if (!wa || !wb) return RatFunc(0);
    if (*wa != *wb) throw std::domain_error("transported_form: weight mismatch");
    const auto& words = words_of_weight(*wa);
    std::vector<RatFunc> vb;
    vb.reserve(words.size());
    for (const Word& w : words) vb.push_back(RatFunc(b.coeff(w)));
    auto u = solve(gram(*wa), vb);
    if (!u) throw std::domain_error("transported_form: inconsistent Gram system");
    RatFunc total(0);
    for (std::size_t i = 0; i < words.size(); ++i) {
        LaurentPoly ca = a.coeff(words[i]);
        if (!ca.is_zero()) total += RatFunc(ca) * (*u)[i];
    }
    return total;
}

std::map<Word, RatFunc> ShuffleAlgebra::monomial_character(const Word& ii) const {
    std::map<Word, RatFunc> out;
    for (const Word& w : words_of_weight(weight_of_word(ii, rank()))) {
        RatFunc c = monomial_form(ii, w);
        if (!c.is_zero()) out.emplace(w, std::move(c));
    }
    return out;
}

std::map<Word, RatFunc> ShuffleAlgebra::product_rf(const std::map<Word, RatFunc>& x,
                                                   const std::map<Word, RatFunc>& y) const {
    std::map<Word, RatFunc> out;
    for (const auto& [wx, cx] : x)
        for (const auto& [wy, cy] : y) merge_words(cd_, wx, wy, cx * cy, out);
    prune_zeros(out);
    return out;
}

std::map<std::pair<Word, Word>, LaurentPoly> ShuffleAlgebra::coproduct_monomial(
    const Word& jj) const {
    // Multiply out (l (x) 1 + 1 (x) l) over the letters of jj in the tensor
    // algebra twisted by (x1 (x) x2)(y1 (x) y2) = q^{-|x2|.|y1|} x1y1 (x) x2y2.
    std::map<std::pair<Word, Word>, LaurentPoly> cur;
    cur[{Word{}, Word{}}] = LaurentPoly(1);
    for (int l : jj) {
        std::map<std::pair<Word, Word>, LaurentPoly> next;
        for (const auto& [uv, c] : cur) {
            const auto& [u, v] = uv;
            int twist = 0;
            for (int t : v) twist += cd_.pair(t, l);
            Word u2 = u;
            u2.push_back(l);
            next[{u2, v}] += c.shifted(-twist);
            Word v2 = v;
            v2.push_back(l);
            next[{u, v2}] += c;
        }
        cur = std::move(next);
    }
    prune_zeros(cur);
    return cur;
}

LaurentPoly ShuffleAlgebra::product_coeff_via_coproduct(const ShuffleElt& x, const ShuffleElt& y,
                                                        const Word& jj) const {
    LaurentPoly total;
    for (const auto& [uv, c] : coproduct_monomial(jj)) {
        LaurentPoly cx = x.coeff(uv.first);
        if (cx.is_zero()) continue;
        LaurentPoly cy = y.coeff(uv.second);
        if (cy.is_zero()) continue;
        total += c * cx * cy;
    }
    return total;
}

} // namespace klr
