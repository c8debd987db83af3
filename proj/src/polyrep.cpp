#include "klr/polyrep.hpp"

#include <functional>
#include <stdexcept>

namespace klr {

PolyRep::Vec PolyRep::unit(const Word& ii) {
    Vec v;
    v.emplace(Key{ii, std::vector<int>(ii.size(), 0)}, LaurentPoly(1));
    return v;
}

namespace {

void accum(PolyRep::Vec& v, const PolyRep::Key& k, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto it = v.find(k);
    if (it == v.end()) {
        v.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}

} // namespace

PolyRep::Vec PolyRep::apply_e(const Word& jj, const Vec& v) const {
    Vec out;
    for (const auto& [k, c] : v)
        if (k.first == jj) accum(out, k, c);
    return out;
}

PolyRep::Vec PolyRep::apply_y(int j, const Vec& v) const {
    Vec out;
    for (const auto& [k, c] : v) {
        if (j < 0 || j >= static_cast<int>(k.second.size()))
            throw std::domain_error("dot index out of range");
        Key nk = k;
        nk.second[j] += 1;
        accum(out, nk, c);
    }
    return out;
}

PolyRep::Vec PolyRep::apply_phi(int k, const Vec& v) const {
    Vec out;
    for (const auto& [key, c] : v) {
        const Word& ii = key.first;
        if (k < 0 || k + 1 >= static_cast<int>(ii.size()))
            throw std::domain_error("crossing index out of range");
        const int i1 = ii[k], i2 = ii[k + 1];
        if (i1 == i2) {
            // divided difference (f - s_k f)/(x_{k+1} - x_k), monomial-wise
            const int a = key.second[k], b = key.second[k + 1];
            if (a == b) continue;
            if (a > b) {
                for (int s = 0; s <= a - b - 1; ++s) {
                    Key nk = key;
                    nk.second[k] = b + s;
                    nk.second[k + 1] = a - 1 - s;
                    accum(out, nk, -c);
                }
            } else {
                for (int s = 0; s <= b - a - 1; ++s) {
                    Key nk = key;
                    nk.second[k] = a + s;
                    nk.second[k + 1] = b - 1 - s;
                    accum(out, nk, c);
                }
            }
        } else {
            Key nk = key;
            std::swap(nk.first[k], nk.first[k + 1]);
            std::swap(nk.second[k], nk.second[k + 1]);
            if (i1 > i2 || cd_.pair(i1, i2) == 0) {
                accum(out, nk, c);
            } else {
                // multiply by x_{k+1}^{-a_{i1,i2}} - x_k^{-a_{i2,i1}}
                Key k1 = nk;
                k1.second[k + 1] += -cd_.cartan(i1, i2);
                accum(out, k1, c);
                Key k2 = nk;
                k2.second[k] += -cd_.cartan(i2, i1);
                accum(out, k2, -c);
            }
        }
    }
    return out;
}

PolyRep::Vec PolyRep::apply_term(const KLRTerm& t, const Vec& v) const {
    Vec cur = apply_e(t.ii, v);
    for (std::size_t p = 0; p < t.ys.size(); ++p)
        for (int s = 0; s < t.ys[p]; ++s) cur = apply_y(static_cast<int>(p), cur);
    for (auto it = t.pword.rbegin(); it != t.pword.rend(); ++it) cur = apply_phi(*it, cur);
    return cur;
}

PolyRep::Vec PolyRep::apply_element(const KLRElement& x, const Vec& v) const {
    Vec out;
    for (const auto& [t, c] : x.terms) {
        Vec img = apply_term(t, v);
        for (const auto& [k, val] : img) accum(out, k, val * c);
    }
    return out;
}

PolyRep::Vec PolyRep::apply_raw(const Word& ks, const std::vector<int>& ys, const Word& ii,
                                const Vec& v) const {
    Vec cur = apply_e(ii, v);
    for (std::size_t p = 0; p < ys.size(); ++p)
        for (int s = 0; s < ys[p]; ++s) cur = apply_y(static_cast<int>(p), cur);
    for (auto it = ks.rbegin(); it != ks.rend(); ++it) cur = apply_phi(*it, cur);
    return cur;
}

Mat<Rational> operator_matrix(const PolyRep& rep, const std::vector<KLRTerm>& candidates,
                              const std::vector<PolyRep::Vec>& seeds) {
    // collect the coordinate set across all images
    std::map<std::pair<std::size_t, PolyRep::Key>, Int> entries;
    std::map<std::pair<std::size_t, PolyRep::Key>, std::size_t> cols;
    for (std::size_t r = 0; r < candidates.size(); ++r) {
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            PolyRep::Vec img = rep.apply_term(candidates[r], seeds[s]);
            for (const auto& [k, c] : img) {
                if (c != LaurentPoly(c.coeff(0)))
                    throw std::domain_error("operator image is not scalar");
                const auto col = std::make_pair(s, k);
                cols.emplace(col, cols.size());
                entries[{r * seeds.size() + s, k}] = c.coeff(0);
            }
        }
    }
    // rebuild a dense matrix: one row per candidate
    Mat<Rational> m(candidates.size(), std::vector<Rational>(cols.size(), Rational(0)));
    for (const auto& [rk, val] : entries) {
        const std::size_t r = rk.first / seeds.size();
        const std::size_t s = rk.first % seeds.size();
        const auto it = cols.find({s, rk.second});
        m[r][it->second] = Rational(val);
    }
    return m;
}

std::vector<std::vector<int>> monomials_up_to(int d, int cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(d, 0);
    std::function<void(int, int)> rec = [&](int p, int left) {
        if (p == d) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[p] = e;
            rec(p + 1, left - e);
        }
        cur[p] = 0;
    };
    rec(0, cap);
    return out;
}

} // namespace klr
