#include "klr/klralg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace klr {

int perm_length(const Perm& w) {
    int inv = 0;
    for (std::size_t p = 0; p < w.size(); ++p)
        for (std::size_t r = p + 1; r < w.size(); ++r)
            if (w[p] > w[r]) ++inv;
    return inv;
}

Perm perm_of_word(const Word& ks, int d) {
    Perm img(d);
    std::iota(img.begin(), img.end(), 0);
    for (int k : ks) {
        if (k < 0 || k + 1 >= d) throw std::domain_error("crossing index out of range");
        std::swap(img[k], img[k + 1]);
    }
    return img;
}

Perm perm_inverse(const Perm& w) {
    Perm inv(w.size());
    for (std::size_t p = 0; p < w.size(); ++p) inv[w[p]] = static_cast<int>(p);
    return inv;
}

Word canonical_word(Perm w) {
    const int d = static_cast<int>(w.size());
    Perm pos = perm_inverse(w);
    Word out;
    for (;;) {
        int k = -1;
        for (int c = 0; c + 1 < d; ++c) {
            if (pos[c] > pos[c + 1]) { k = c; break; }
        }
        if (k < 0) break;
        out.push_back(k);
        // w := s_k w swaps the values k, k+1
        std::swap(pos[k], pos[k + 1]);
    }
    return out;
}

Word permute_word(const Perm& w, const Word& ii) {
    if (w.size() != ii.size()) throw std::domain_error("permutation/word size mismatch");
    Word jj(ii.size());
    for (std::size_t p = 0; p < ii.size(); ++p) jj[w[p]] = ii[p];
    return jj;
}

KLRElement KLRElement::single(KLRTerm t, LaurentPoly c) {
    KLRElement x;
    if (!c.is_zero()) x.terms.emplace(std::move(t), std::move(c));
    return x;
}

void KLRElement::add(const KLRTerm& t, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto it = terms.find(t);
    if (it == terms.end()) {
        terms.emplace(t, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

KLRElement& KLRElement::operator+=(const KLRElement& o) {
    for (const auto& [t, c] : o.terms) add(t, c);
    return *this;
}

KLRElement& KLRElement::operator-=(const KLRElement& o) {
    for (const auto& [t, c] : o.terms) add(t, -c);
    return *this;
}

KLRElement KLRElement::scaled(const LaurentPoly& c) const {
    KLRElement out;
    if (c.is_zero()) return out;
    for (const auto& [t, coeff] : terms) {
        LaurentPoly prod = coeff * c;
        if (!prod.is_zero()) out.terms.emplace(t, std::move(prod));
    }
    return out;
}

std::string KLRElement::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (int k : t.pword) os << " s" << (k + 1);
        for (std::size_t p = 0; p < t.ys.size(); ++p) {
            if (t.ys[p] == 0) continue;
            os << " y" << (p + 1);
            if (t.ys[p] > 1) os << "^" << t.ys[p];
        }
        os << " e(";
        for (int a : t.ii) os << a;
        os << ")";
    }
    return os.str();
}

KLRAlgebra::KLRAlgebra(CartanData cd, int max_letters)
    : cd_(std::move(cd)), max_letters_(max_letters) {
    if (max_letters_ < 1) throw std::domain_error("letter budget must be positive");
}

void KLRAlgebra::check_word(const Word& ii) const {
    if (static_cast<int>(ii.size()) > max_letters_)
        throw std::domain_error("word exceeds the letter budget");
    for (int a : ii)
        if (a < 0 || a >= cd_.rank()) throw std::domain_error("letter out of range");
}

KLRElement KLRAlgebra::idempotent(const Word& ii) const {
    check_word(ii);
    KLRTerm t;
    t.ys.assign(ii.size(), 0);
    t.ii = ii;
    return KLRElement::single(std::move(t));
}

Word KLRAlgebra::left_word(const KLRTerm& t) const {
    return permute_word(perm_of_word(t.pword, static_cast<int>(t.ii.size())), t.ii);
}

int KLRAlgebra::degree(const KLRTerm& t) const {
    int deg = 0;
    for (std::size_t p = 0; p < t.ii.size(); ++p)
        deg += t.ys[p] * cd_.pair(t.ii[p], t.ii[p]);
    Word cur = t.ii;
    for (auto it = t.pword.rbegin(); it != t.pword.rend(); ++it) {
        const int k = *it;
        deg -= cd_.pair(cur[k], cur[k + 1]);
        std::swap(cur[k], cur[k + 1]);
    }
    return deg;
}

namespace {

// adds a to the exponents of every term of base and scales by c
KLRElement reattach(const std::map<KLRTerm, LaurentPoly>& base, const std::vector<int>& a,
                    const LaurentPoly& c) {
    KLRElement out;
    for (const auto& [t, coeff] : base) {
        KLRTerm shifted = t;
        for (std::size_t p = 0; p < a.size(); ++p) shifted.ys[p] += a[p];
        out.add(shifted, coeff * c);
    }
    return out;
}

} // namespace

KLRElement KLRAlgebra::lmul_e(const Word& jj, const KLRElement& x) const {
    check_word(jj);
    KLRElement out;
    for (const auto& [t, c] : x.terms)
        if (left_word(t) == jj) out.add(t, c);
    return out;
}

KLRElement KLRAlgebra::lmul_y(int j, const KLRElement& x) const {
    KLRElement out;
    for (const auto& [t, c] : x.terms) {
        if (j < 0 || j >= static_cast<int>(t.ii.size()))
            throw std::domain_error("dot index out of range");
        out += reattach(y_term0(j, t.pword, t.ii), t.ys, c);
    }
    return out;
}

KLRElement KLRAlgebra::lmul_phi(int k, const KLRElement& x) const {
    KLRElement out;
    for (const auto& [t, c] : x.terms) {
        if (k < 0 || k + 1 >= static_cast<int>(t.ii.size()))
            throw std::domain_error("crossing index out of range");
        out += reattach(phi_term0(k, t.pword, t.ii), t.ys, c);
    }
    return out;
}

KLRElement KLRAlgebra::lmul_y_pow(int j, int pow, const KLRElement& x) const {
    KLRElement out = x;
    for (int s = 0; s < pow; ++s) out = lmul_y(j, out);
    return out;
}

// phi_k^2 e_jj = Q_{i1,i2}(y_k, y_{k+1}) e_jj with i1 = jj_k, i2 = jj_{k+1}:
// zero for equal letters, the unit for orthogonal distinct letters, and
// sign*(y_k^{-a_{i1,i2}} - y_{k+1}^{-a_{i2,i1}}) otherwise, sign by label order.
KLRElement KLRAlgebra::q_poly_attached(int i1, int i2, int k, const KLRTerm& base,
                                       const LaurentPoly& c) const {
    KLRElement out;
    if (i1 == i2) return out;
    if (cd_.pair(i1, i2) == 0) {
        out.add(base, c);
        return out;
    }
    const int sign = i1 < i2 ? 1 : -1;
    KLRTerm t1 = base;
    t1.ys[k] += -cd_.cartan(i1, i2);
    out.add(t1, sign > 0 ? c : -c);
    KLRTerm t2 = base;
    t2.ys[k + 1] += -cd_.cartan(i2, i1);
    out.add(t2, sign > 0 ? -c : c);
    return out;
}

const KLRAlgebra::TermMap& KLRAlgebra::y_term0(int j, const Word& pword, const Word& ii) const {
    const auto key = std::make_tuple(j, pword, ii);
    auto hit = y_memo_.find(key);
    if (hit != y_memo_.end()) return hit->second;

    const int d = static_cast<int>(ii.size());
    KLRElement out;
    int cur = j;
    for (std::size_t t = 0; t < pword.size(); ++t) {
        const int k = pword[t];
        if (cur == k || cur == k + 1) {
            Word tail(pword.begin() + static_cast<long>(t) + 1, pword.end());
            const Word local = permute_word(perm_of_word(tail, d), ii);
            if (local[k] == local[k + 1]) {
                // y_k phi_k = phi_k y_{k+1} - e and y_{k+1} phi_k = phi_k y_k + e
                Word glued(pword.begin(), pword.begin() + static_cast<long>(t));
                glued.insert(glued.end(), tail.begin(), tail.end());
                const int sgn = cur == k ? -1 : 1;
                out += nf_word0(glued, ii).scaled(LaurentPoly(Int(sgn)));
            }
            cur = cur == k ? k + 1 : k;
        }
    }
    KLRTerm main;
    main.pword = pword;
    main.ys.assign(d, 0);
    main.ys[cur] = 1;
    main.ii = ii;
    out.add(main, LaurentPoly(1));
    return y_memo_.emplace(key, std::move(out.terms)).first->second;
}

const KLRAlgebra::TermMap& KLRAlgebra::phi_term0(int k, const Word& pword, const Word& ii) const {
    const auto key = std::make_tuple(k, pword, ii);
    auto hit = phi_memo_.find(key);
    if (hit != phi_memo_.end()) return hit->second;

    const int d = static_cast<int>(ii.size());
    const Perm w = perm_of_word(pword, d);
    const Perm winv = perm_inverse(w);
    KLRElement out;
    if (winv[k] < winv[k + 1]) {
        // ascent: [k]+pword is a reduced word of s_k w
        Word W;
        W.reserve(pword.size() + 1);
        W.push_back(k);
        W.insert(W.end(), pword.begin(), pword.end());
        Perm wp = w;
        for (auto& v : wp) {
            if (v == k) v = k + 1;
            else if (v == k + 1) v = k;
        }
        const Word C = canonical_word(wp);
        KLRTerm main;
        main.pword = C;
        main.ys.assign(d, 0);
        main.ii = ii;
        out.add(main, LaurentPoly(1));
        if (W != C) out += reexpress_extra(W, C, ii);
    } else {
        // descent: rewrite onto a word with leading k, then contract phi_k^2
        Perm sw = w;
        for (auto& v : sw) {
            if (v == k) v = k + 1;
            else if (v == k + 1) v = k;
        }
        const Word D = canonical_word(sw);
        Word C2;
        C2.reserve(D.size() + 1);
        C2.push_back(k);
        C2.insert(C2.end(), D.begin(), D.end());
        const Word jj = permute_word(sw, ii);
        KLRTerm base;
        base.pword = D;
        base.ys.assign(d, 0);
        base.ii = ii;
        // Q introduces dots on the left; push them through phi_D
        KLRElement withq = q_poly_attached(jj[k], jj[k + 1], k, base, LaurentPoly(1));
        for (const auto& [t, c] : withq.terms) {
            KLRTerm bare = t;
            std::vector<int> extraYs = t.ys;
            bare.ys.assign(d, 0);
            KLRElement cur0 = KLRElement::single(bare, c);
            for (int p = 0; p < d; ++p) cur0 = lmul_y_pow(p, extraYs[p], cur0);
            out += cur0;
        }
        if (pword != C2) {
            const KLRElement extra = reexpress_extra(pword, C2, ii);
            out += lmul_phi(k, extra);
        }
    }
    return phi_memo_.emplace(key, std::move(out.terms)).first->second;
}

KLRElement KLRAlgebra::reexpress_extra(const Word& from, const Word& to, const Word& ii) const {
    if (from == to) return {};
    if (from.empty() || to.empty() || from.size() != to.size())
        throw std::domain_error("rewrite endpoints of unequal length");
    const int d = static_cast<int>(ii.size());
    if (from.front() == to.front()) {
        const Word ftail(from.begin() + 1, from.end());
        const Word ttail(to.begin() + 1, to.end());
        KLRElement inner = reexpress_extra(ftail, ttail, ii);
        return lmul_phi(from.front(), inner);
    }
    const int k = from.front();
    const int t = to.front();
    const Perm w = perm_of_word(from, d);
    const bool adjacent = std::abs(k - t) == 1;
    // both k and t are left descents, so w = (longest dihedral element) * u
    Perm u = w;
    auto lswap = [&u](int c) {
        for (auto& v : u) {
            if (v == c) v = c + 1;
            else if (v == c + 1) v = c;
        }
    };
    if (adjacent) {
        lswap(k); lswap(t); lswap(k);
    } else {
        lswap(k); lswap(t);
    }
    const Word cu = canonical_word(u);
    Word mid_k, mid_t;
    if (adjacent) {
        mid_k = {k, t, k};
        mid_t = {t, k, t};
    } else {
        mid_k = {k, t};
        mid_t = {t, k};
    }
    mid_k.insert(mid_k.end(), cu.begin(), cu.end());
    mid_t.insert(mid_t.end(), cu.begin(), cu.end());

    KLRElement out = reexpress_extra(from, mid_k, ii);
    if (adjacent) {
        const Word jj = permute_word(perm_of_word(cu, d), ii);
        const int kk = std::min(k, t);
        const int i1 = jj[kk], i2 = jj[kk + 1], i3 = jj[kk + 2];
        if (i1 == i3 && i1 != i2 && cd_.pair(i1, i2) != 0) {
            // phi_{kk+1} phi_kk phi_{kk+1} - phi_kk phi_{kk+1} phi_kk acting on
            // e_jj equals sign * sum_{s+r=a-1} y_kk^s y_{kk+2}^r, a = -a_{i1,i2}
            const int a = -cd_.cartan(i1, i2);
            int sign = i1 < i2 ? 1 : -1;
            if (k < t) sign = -sign; // mid_k starts with the smaller index
            KLRTerm base;
            base.pword = cu;
            base.ys.assign(d, 0);
            base.ii = ii;
            const KLRElement baseE = KLRElement::single(base, LaurentPoly(Int(sign)));
            for (int s = 0; s + 1 <= a; ++s) {
                const int r = a - 1 - s;
                out += lmul_y_pow(kk + 2, r, lmul_y_pow(kk, s, baseE));
            }
        }
    }
    out += reexpress_extra(mid_t, to, ii);
    return out;
}

KLRElement KLRAlgebra::nf_word0(const Word& ks, const Word& ii) const {
    KLRTerm seed;
    seed.ys.assign(ii.size(), 0);
    seed.ii = ii;
    KLRElement x = KLRElement::single(seed, LaurentPoly(1));
    for (auto it = ks.rbegin(); it != ks.rend(); ++it) x = lmul_phi(*it, x);
    return x;
}

KLRElement KLRAlgebra::nf_word(const Word& ks, const std::vector<int>& ys, const Word& ii) const {
    check_word(ii);
    if (ys.size() != ii.size()) throw std::domain_error("dot exponent size mismatch");
    for (int e : ys)
        if (e < 0) throw std::domain_error("dot exponents must be nonnegative");
    for (int k : ks)
        if (k < 0 || k + 1 >= static_cast<int>(ii.size()))
            throw std::domain_error("crossing index out of range");
    KLRTerm seed;
    seed.ys = ys;
    seed.ii = ii;
    KLRElement x = KLRElement::single(seed, LaurentPoly(1));
    for (auto it = ks.rbegin(); it != ks.rend(); ++it) x = lmul_phi(*it, x);
    return x;
}

KLRElement KLRAlgebra::rmul_e(const Word& jj, const KLRElement& x) const {
    check_word(jj);
    KLRElement out;
    for (const auto& [t, c] : x.terms)
        if (t.ii == jj) out.add(t, c);
    return out;
}

KLRElement KLRAlgebra::rmul_y(int j, const KLRElement& x) const {
    KLRElement out;
    for (const auto& [t, c] : x.terms) {
        if (j < 0 || j >= static_cast<int>(t.ii.size()))
            throw std::domain_error("dot index out of range");
        KLRTerm bumped = t;
        bumped.ys[j] += 1;
        out.add(bumped, c);
    }
    return out;
}

KLRElement KLRAlgebra::rmul_phi(int k, const KLRElement& x) const {
    KLRElement out;
    for (const auto& [t, c] : x.terms) {
        const int d = static_cast<int>(t.ii.size());
        if (k < 0 || k + 1 >= d) throw std::domain_error("crossing index out of range");
        Word jj = t.ii;
        std::swap(jj[k], jj[k + 1]);
        const bool eq = t.ii[k] == t.ii[k + 1];
        // push phi_k left through y_k^p y_{k+1}^r: states (s, r) keep phi_k,
        // plain states dropped it via the dot-crossing relation on e_jj
        std::map<std::pair<int, int>, Int> keep, plain;
        keep[{0, 0}] = Int(1);
        for (int step = 0; step < t.ys[k]; ++step) {
            // left-multiply by y_k: y_k phi_k = phi_k y_{k+1} - e
            std::map<std::pair<int, int>, Int> nk, np;
            for (const auto& [st, coef] : keep) {
                nk[{st.first, st.second + 1}] += coef;
                if (eq) np[{st.first, st.second}] -= coef;
            }
            for (const auto& [st, coef] : plain) np[{st.first + 1, st.second}] += coef;
            keep = std::move(nk);
            plain = std::move(np);
        }
        for (int step = 0; step < t.ys[k + 1]; ++step) {
            // left-multiply by y_{k+1}: y_{k+1} phi_k = phi_k y_k + e
            std::map<std::pair<int, int>, Int> nk, np;
            for (const auto& [st, coef] : keep) {
                nk[{st.first + 1, st.second}] += coef;
                if (eq) np[{st.first, st.second}] += coef;
            }
            for (const auto& [st, coef] : plain) np[{st.first, st.second + 1}] += coef;
            keep = std::move(nk);
            plain = std::move(np);
        }
        std::vector<int> rest = t.ys;
        rest[k] = 0;
        rest[k + 1] = 0;
        for (const auto& [st, coef] : plain) {
            if (coef == 0) continue;
            KLRTerm pt;
            pt.pword = t.pword;
            pt.ys = rest;
            pt.ys[k] += st.first;
            pt.ys[k + 1] += st.second;
            pt.ii = jj;
            out.add(pt, c * LaurentPoly(coef));
        }
        if (keep.empty()) continue;
        // phi-retaining part: phi_w phi_k with the surviving dots on e_jj
        const Perm w = perm_of_word(t.pword, d);
        const bool rascent = w[k] < w[k + 1];
        for (const auto& [st, coef] : keep) {
            if (coef == 0) continue;
            std::vector<int> b = rest;
            b[k] += st.first;
            b[k + 1] += st.second;
            const LaurentPoly cc = c * LaurentPoly(coef);
            if (rascent) {
                Word W = t.pword;
                W.push_back(k);
                Perm ws = w;
                std::swap(ws[k], ws[k + 1]);
                const Word C = canonical_word(ws);
                KLRTerm main;
                main.pword = C;
                main.ys = b;
                main.ii = jj;
                out.add(main, cc);
                if (W != C) {
                    KLRElement extra = reexpress_extra(W, C, jj);
                    out += reattach(extra.terms, b, cc);
                }
            } else {
                Perm ws = w;
                std::swap(ws[k], ws[k + 1]);
                const Word D = canonical_word(ws);
                Word E = D;
                E.push_back(k);
                KLRTerm base;
                base.pword = D;
                base.ys = b;
                base.ii = jj;
                out += q_poly_attached(jj[k], jj[k + 1], k, base, cc);
                if (t.pword != E) {
                    // phi_{t.pword} = phi_E + extra, right idempotent e_ii here
                    KLRElement extra = reexpress_extra(t.pword, E, t.ii);
                    KLRElement tail;
                    for (const auto& [et, ec] : extra.terms) {
                        KLRElement one = rmul_phi(k, KLRElement::single(et, ec));
                        for (const auto& [ot, oc] : one.terms) {
                            KLRTerm bump = ot;
                            for (int p = 0; p < d; ++p) bump.ys[p] += b[p];
                            tail.add(bump, oc);
                        }
                    }
                    out += tail.scaled(cc);
                }
            }
        }
    }
    return out;
}

KLRElement KLRAlgebra::mul(const KLRElement& a, const KLRElement& b) const {
    KLRElement out;
    for (const auto& [t, c] : a.terms) {
        KLRElement x;
        for (const auto& [tb, cb] : b.terms)
            if (left_word(tb) == t.ii) x.add(tb, cb);
        for (std::size_t p = 0; p < t.ys.size(); ++p)
            x = lmul_y_pow(static_cast<int>(p), t.ys[p], x);
        for (auto it = t.pword.rbegin(); it != t.pword.rend(); ++it) x = lmul_phi(*it, x);
        out += x.scaled(c);
    }
    return out;
}

std::map<int, Int> KLRAlgebra::graded_dim_hom(const Word& ii, const Word& jj, int degree_cap) const {
    check_word(ii);
    check_word(jj);
    if (ii.size() != jj.size()) throw std::domain_error("words of different length");
    const int d = static_cast<int>(ii.size());
    if (d > 8) throw std::domain_error("dimension series limited to eight letters");
    std::map<int, Int> out;
    Perm w(d);
    std::iota(w.begin(), w.end(), 0);
    do {
        if (permute_word(w, ii) != jj) continue;
        KLRTerm t;
        t.pword = canonical_word(w);
        t.ys.assign(d, 0);
        t.ii = ii;
        const int base = degree(t);
        // enumerate dot exponents with bounded graded degree
        std::vector<int> a(d, 0);
        std::vector<int> step(d);
        for (int p = 0; p < d; ++p) step[p] = cd_.pair(ii[p], ii[p]);
        std::function<void(int, int)> rec = [&](int p, int deg) {
            if (deg > degree_cap) return;
            if (p == d) {
                out[deg] += Int(1);
                return;
            }
            for (int e = 0;; ++e) {
                const int nd = deg + e * step[p];
                if (nd > degree_cap) break;
                rec(p + 1, nd);
            }
        };
        rec(0, base);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

} // namespace klr
