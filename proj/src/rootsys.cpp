#include "klr/rootsys.hpp"

#include <algorithm>
#include <sstream>

namespace klr {

namespace {

std::string root_str(const Root& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

// Determinant by fraction-free elimination; used for positive definiteness.
Int int_det(std::vector<std::vector<Int>> m) {
    const int n = static_cast<int>(m.size());
    Int det = 1;
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    det = m[n - 1][n - 1];
    return sign > 0 ? det : -det;
}

} // namespace

int CartanData::cartan(int i, int j) const {
    int num = 2 * pair(i, j);
    if (num % d(i) != 0) throw std::domain_error("Cartan datum: 2*i.j/i.i not an integer");
    return num / d(i);
}

bool CartanData::is_positive_definite() const {
    const int r = rank();
    for (int k = 1; k <= r; ++k) {
        std::vector<std::vector<Int>> m(k, std::vector<Int>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m[i][j] = bil[i][j];
        if (int_det(std::move(m)) <= 0) return false;
    }
    return true;
}

void CartanData::validate() const {
    const int r = rank();
    if (r == 0) throw std::domain_error("Cartan datum: empty");
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(bil[i].size()) != r) throw std::domain_error("Cartan datum: not square");
        if (d(i) <= 0 || d(i) % 2 != 0)
            throw std::domain_error("Cartan datum: diagonal must be even positive");
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (bil[i][j] != bil[j][i]) throw std::domain_error("Cartan datum: not symmetric");
            if (i != j && bil[i][j] > 0)
                throw std::domain_error("Cartan datum: positive off-diagonal entry");
            if (i != j) {
                int a = cartan(i, j);
                if (a < -3) throw std::domain_error("Cartan datum: entry below -3");
                if ((a == 0) != (cartan(j, i) == 0))
                    throw std::domain_error("Cartan datum: asymmetric orthogonality");
            }
        }
    if (!is_positive_definite()) throw std::domain_error("Cartan datum: not of finite type");
}

CartanData CartanData::named(const std::string& type) {
    if (type.size() < 2) throw std::domain_error("unknown type: " + type);
    char fam = type[0];
    int n = 0;
    try {
        n = std::stoi(type.substr(1));
    } catch (const std::exception&) {
        throw std::domain_error("unknown type: " + type);
    }
    auto zero = [&](int r) { return std::vector<std::vector<int>>(r, std::vector<int>(r, 0)); };
    CartanData cd;
    auto path = [&](const std::vector<int>& diag, auto off) {
        int r = static_cast<int>(diag.size());
        cd.bil = zero(r);
        for (int i = 0; i < r; ++i) cd.bil[i][i] = diag[i];
        for (int i = 0; i + 1 < r; ++i) cd.bil[i][i + 1] = cd.bil[i + 1][i] = off(i);
    };
    switch (fam) {
    case 'A': {
        if (n < 1) throw std::domain_error("A_n needs n >= 1");
        path(std::vector<int>(n, 2), [](int) { return -1; });
        break;
    }
    case 'B': {
        if (n < 2) throw std::domain_error("B_n needs n >= 2");
        std::vector<int> diag(n, 4);
        diag[0] = 2;
        path(diag, [](int) { return -2; });
        break;
    }
    case 'C': {
        if (n < 2) throw std::domain_error("C_n needs n >= 2");
        std::vector<int> diag(n, 2);
        diag[0] = 4;
        path(diag, [](int i) { return i == 0 ? -2 : -1; });
        break;
    }
    case 'D': {
        if (n < 4) throw std::domain_error("D_n needs n >= 4");
        path(std::vector<int>(n, 2), [&](int i) { return i + 1 <= n - 3 ? -1 : 0; });
        cd.bil[n - 3][n - 2] = cd.bil[n - 2][n - 3] = -1;
        cd.bil[n - 3][n - 1] = cd.bil[n - 1][n - 3] = -1;
        break;
    }
    case 'E': {
        if (n < 6 || n > 8) throw std::domain_error("E_n needs 6 <= n <= 8");
        path(std::vector<int>(n, 2), [&](int i) { return i + 1 <= n - 2 ? -1 : 0; });
        cd.bil[n - 2][n - 1] = cd.bil[n - 1][n - 2] = 0;
        cd.bil[2][n - 1] = cd.bil[n - 1][2] = -1;
        break;
    }
    case 'F': {
        if (n != 4) throw std::domain_error("F_n needs n = 4");
        path({2, 2, 4, 4}, [](int i) { return i == 0 ? -1 : -2; });
        break;
    }
    case 'G': {
        if (n != 2) throw std::domain_error("G_n needs n = 2");
        path({2, 6}, [](int) { return -3; });
        break;
    }
    default:
        throw std::domain_error("unknown type: " + type);
    }
    cd.validate();
    return cd;
}

Root weight_of_word(const Word& w, int rank) {
    Root v(rank, 0);
    for (int l : w) {
        if (l < 0 || l >= rank) throw std::domain_error("word letter out of range");
        ++v[l];
    }
    return v;
}

int height(const Root& a) {
    int h = 0;
    for (int x : a) h += x;
    return h;
}

RootSystem::RootSystem(CartanData cd) : cd_(std::move(cd)) {
    cd_.validate();
    const int r = cd_.rank();
    std::vector<std::vector<Root>> by_ht(2);
    for (int i = 0; i < r; ++i) {
        Root e(r, 0);
        e[i] = 1;
        by_ht[1].push_back(e);
        rootset_.insert(e);
    }
    for (std::size_t h = 1; h < by_ht.size(); ++h) {
        if (h > 100 || rootset_.size() > 1000) throw std::domain_error("root system too large");
        for (const Root& a : by_ht[h]) {
            for (int i = 0; i < r; ++i) {
                int p = 0;
                Root v = a;
                while (true) {
                    v[i] -= 1;
                    if (v[i] < 0 || !rootset_.count(v)) break;
                    ++p;
                }
                int c = 0;
                for (int j = 0; j < r; ++j) c += a[j] * cd_.cartan(i, j);
                if (p - c >= 1) {
                    Root b = a;
                    ++b[i];
                    if (!rootset_.count(b)) {
                        rootset_.insert(b);
                        if (by_ht.size() <= h + 1) by_ht.resize(h + 2);
                        by_ht[h + 1].push_back(b);
                    }
                }
            }
        }
        if (by_ht.size() <= h + 1) break;
    }
    positive_.assign(rootset_.begin(), rootset_.end());
    std::sort(positive_.begin(), positive_.end(), [](const Root& a, const Root& b) {
        if (height(a) != height(b)) return height(a) < height(b);
        return a < b;
    });
}

Root RootSystem::simple(int i) const {
    if (i < 0 || i >= rank()) throw std::domain_error("simple root index out of range");
    Root e(rank(), 0);
    e[i] = 1;
    return e;
}

int RootSystem::pair(const Root& a, const Root& b) const {
    int s = 0;
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) s += a[i] * b[j] * cd_.pair(i, j);
    return s;
}

Root RootSystem::reflect(int i, Root v) const {
    int c = 0;
    for (int j = 0; j < rank(); ++j) c += v[j] * cd_.cartan(i, j);
    v[i] -= c;
    return v;
}

namespace {

// A Weyl group element stored as the images of the simple basis vectors.
struct WeylElt {
    std::vector<Root> img;

    static WeylElt identity(int r) {
        WeylElt w;
        for (int i = 0; i < r; ++i) {
            Root e(r, 0);
            e[i] = 1;
            w.img.push_back(e);
        }
        return w;
    }
    Root apply(const Root& v) const {
        Root out(img[0].size(), 0);
        for (std::size_t j = 0; j < img.size(); ++j)
            for (std::size_t k = 0; k < out.size(); ++k) out[k] += v[j] * img[j][k];
        return out;
    }
    bool is_identity() const {
        for (std::size_t j = 0; j < img.size(); ++j)
            for (std::size_t k = 0; k < img.size(); ++k)
                if (img[j][k] != (j == k ? 1 : 0)) return false;
        return true;
    }
    // Replace w by w * s_i.
    void right_mul(const RootSystem& rs, int i) {
        for (int j = 0; j < rs.rank(); ++j) {
            int a = rs.cartan().cartan(i, j);
            if (a == 0 || j == i) continue;
            for (std::size_t k = 0; k < img[j].size(); ++k) img[j][k] -= a * img[i][k];
        }
        for (std::size_t k = 0; k < img[i].size(); ++k) img[i][k] = -img[i][k];
    }
    // Replace w by s_i * w.
    void left_mul(const RootSystem& rs, int i) {
        for (auto& v : img) v = rs.reflect(i, v);
    }
    bool negative_on(int i) const {
        for (int x : img[i])
            if (x < 0) return true;
        return false;
    }
};

WeylElt longest_element(const RootSystem& rs) {
    WeylElt w = WeylElt::identity(rs.rank());
    while (true) {
        int pick = -1;
        for (int i = 0; i < rs.rank(); ++i)
            if (!w.negative_on(i)) {
                pick = i;
                break;
            }
        if (pick < 0) return w;
        w.right_mul(rs, pick);
    }
}

} // namespace

Word longest_word(const RootSystem& rs) {
    WeylElt t = longest_element(rs);
    Word w;
    while (!t.is_identity()) {
        int pick = -1;
        for (int i = 0; i < rs.rank(); ++i)
            if (t.negative_on(i)) {
                pick = i;
                break;
            }
        if (pick < 0) throw std::domain_error("longest_word: stuck");
        w.push_back(pick);
        t.right_mul(rs, pick);
    }
    return w;
}

std::vector<Word> all_reduced_words_w0(const RootSystem& rs, std::size_t limit) {
    std::vector<Word> out;
    Word cur;
    auto dfs = [&](auto&& self, WeylElt& t) -> void {
        if (out.size() >= limit) return;
        if (t.is_identity()) {
            out.push_back(cur);
            return;
        }
        for (int i = 0; i < rs.rank(); ++i) {
            if (!t.negative_on(i)) continue;
            WeylElt nt = t;
            nt.right_mul(rs, i);
            cur.push_back(i);
            self(self, nt);
            cur.pop_back();
            if (out.size() >= limit) return;
        }
    };
    WeylElt t = longest_element(rs);
    dfs(dfs, t);
    return out;
}

Word random_reduced_word_w0(const RootSystem& rs, std::mt19937_64& rng) {
    WeylElt t = longest_element(rs);
    Word w;
    while (!t.is_identity()) {
        std::vector<int> descents;
        for (int i = 0; i < rs.rank(); ++i)
            if (t.negative_on(i)) descents.push_back(i);
        int i = descents[std::uniform_int_distribution<std::size_t>(0, descents.size() - 1)(rng)];
        w.push_back(i);
        t.right_mul(rs, i);
    }
    return w;
}

ConvexOrder::ConvexOrder(RootSystem s, std::vector<Root> o, std::map<Root, Word> keys)
    : sys_(std::move(s)), order_(std::move(o)), keys_(std::move(keys)) {
    if (order_.size() != sys_.positive_roots().size())
        throw std::domain_error("convex order: wrong number of roots");
    for (std::size_t k = 0; k < order_.size(); ++k) {
        if (!sys_.is_positive_root(order_[k]))
            throw std::domain_error("convex order: not a positive root " + root_str(order_[k]));
        if (!pos_.emplace(order_[k], static_cast<int>(k)).second)
            throw std::domain_error("convex order: repeated root " + root_str(order_[k]));
    }
}

ConvexOrder ConvexOrder::from_word(const RootSystem& rs, const Word& word) {
    if (word.size() != rs.positive_roots().size())
        throw std::domain_error("convex order: word length is not the number of positive roots");
    WeylElt p = WeylElt::identity(rs.rank());
    std::vector<Root> order;
    for (int i : word) {
        if (i < 0 || i >= rs.rank()) throw std::domain_error("convex order: letter out of range");
        order.push_back(p.apply(rs.simple(i)));
        p.right_mul(rs, i);
    }
    return ConvexOrder(rs, std::move(order), {});
}

ConvexOrder ConvexOrder::table_order(const RootSystem& rs) {
    const int r = rs.rank();
    std::map<Root, Word> key;
    for (const Root& a : rs.positive_roots()) {
        if (height(a) == 1) {
            int i = 0;
            while (a[i] == 0) ++i;
            key[a] = {r - 1 - i};
            continue;
        }
        std::optional<Word> best;
        for (const Root& b : rs.positive_roots()) {
            if (height(b) >= height(a)) break;
            Root g(r);
            bool ok = true;
            for (int j = 0; j < r; ++j) {
                g[j] = a[j] - b[j];
                if (g[j] < 0) ok = false;
            }
            if (!ok || !rs.is_positive_root(g)) continue;
            const Word& kb = key.at(b);
            const Word& kg = key.at(g);
            if (!(kb < kg)) continue;
            Word cand = kb;
            cand.insert(cand.end(), kg.begin(), kg.end());
            if (!best || *best < cand) best = std::move(cand);
        }
        if (!best) throw std::domain_error("table order: root with no two-root splitting");
        key[a] = *best;
    }
    std::vector<Root> order = rs.positive_roots();
    std::sort(order.begin(), order.end(),
              [&](const Root& x, const Root& y) { return key.at(x) < key.at(y); });
    return ConvexOrder(rs, std::move(order), std::move(key));
}

int ConvexOrder::position(const Root& a) const {
    auto it = pos_.find(a);
    if (it == pos_.end()) throw std::domain_error("position: not a positive root " + root_str(a));
    return it->second;
}

Word ConvexOrder::to_word() const {
    WeylElt q = WeylElt::identity(sys_.rank());
    Word w;
    for (const Root& b : order_) {
        Root g = q.apply(b);
        if (height(g) != 1) throw std::domain_error("to_word: order is not induced by a reduced word");
        int i = 0;
        while (g[i] == 0) ++i;
        if (g[i] != 1) throw std::domain_error("to_word: order is not induced by a reduced word");
        w.push_back(i);
        q.left_mul(sys_, i);
    }
    return w;
}

void ConvexOrder::check_convexity() const {
    const auto n = order_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Root s = order_[i];
            for (std::size_t k = 0; k < s.size(); ++k) s[k] += order_[j][k];
            if (!sys_.is_positive_root(s)) continue;
            std::size_t k = static_cast<std::size_t>(position(s));
            if (!(i < k && k < j))
                throw std::domain_error("convexity violated: " + root_str(order_[i]) + " + " +
                                        root_str(order_[j]) + " = " + root_str(s));
        }
}

Word ConvexOrder::good_word(const Root& a) const {
    if (keys_.empty()) throw std::domain_error("good words are only defined for the table order");
    auto it = keys_.find(a);
    if (it == keys_.end()) throw std::domain_error("good_word: not a positive root " + root_str(a));
    Word w(it->second.rbegin(), it->second.rend());
    for (int& l : w) l = sys_.rank() - 1 - l;
    return w;
}

std::optional<Root> ConvexOrder::root_of_good_word(const Word& w) const {
    Root v = weight_of_word(w, sys_.rank());
    if (!sys_.is_positive_root(v)) return std::nullopt;
    if (good_word(v) != w) return std::nullopt;
    return v;
}

std::vector<RootPair> straddling_pairs(const ConvexOrder& co, const Root& alpha) {
    const auto& rs = co.system();
    int pa = co.position(alpha);
    std::vector<RootPair> out;
    for (const Root& b : co.roots()) {
        if (co.position(b) >= pa) continue;
        Root g(alpha.size());
        bool ok = true;
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            g[k] = alpha[k] - b[k];
            if (g[k] < 0) ok = false;
        }
        if (!ok || !rs.is_positive_root(g)) continue;
        if (co.position(g) <= pa)
            throw std::domain_error("straddling_pairs: order is not convex at " + root_str(alpha));
        out.push_back({b, g});
    }
    std::sort(out.begin(), out.end(), [&](const RootPair& x, const RootPair& y) {
        return co.position(x.gamma) < co.position(y.gamma);
    });
    return out;
}

std::vector<RootPair> minimal_pairs(const ConvexOrder& co, const Root& alpha) {
    auto cands = straddling_pairs(co, alpha);
    std::vector<RootPair> out;
    for (const auto& p : cands) {
        bool dominated = false;
        for (const auto& q : cands) {
            if (q == p) continue;
            if (co.position(q.gamma) <= co.position(p.gamma) &&
                co.position(q.beta) >= co.position(p.beta)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(p);
    }
    return out;
}

RootPair chosen_minimal_pair(const ConvexOrder& co, const Root& alpha) {
    auto cands = straddling_pairs(co, alpha);
    if (cands.empty())
        throw std::domain_error("no straddling pair: " + root_str(alpha) + " is simple");
    return cands.front();
}

Int kostant_partition_count(const RootSystem& rs, const Root& weight) {
    if (static_cast<int>(weight.size()) != rs.rank())
        throw std::domain_error("kostant_partition_count: wrong rank");
    for (int x : weight)
        if (x < 0) return 0;
    const auto& roots = rs.positive_roots();
    std::map<std::pair<std::size_t, Root>, Int> memo;
    auto rec = [&](auto&& self, std::size_t idx, const Root& w) -> Int {
        if (height(w) == 0) return 1;
        if (idx == roots.size()) return 0;
        auto k = std::make_pair(idx, w);
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        Int total = 0;
        Root v = w;
        while (true) {
            total += self(self, idx + 1, v);
            bool ok = true;
            for (std::size_t c = 0; c < v.size(); ++c) {
                v[c] -= roots[idx][c];
                if (v[c] < 0) ok = false;
            }
            if (!ok) break;
        }
        memo.emplace(k, total);
        return total;
    };
    return rec(rec, 0, weight);
}

} // namespace klr
