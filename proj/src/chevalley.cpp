#include <klr/chevalley.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace klr {

namespace {

bool simply_laced_family(char fam) { return fam == 'A' || fam == 'D' || fam == 'E'; }

std::vector<int> tree_distances(const CartanData& cd, int center) {
    const int r = cd.rank();
    std::vector<int> dist(r, -1);
    std::queue<int> q;
    dist[center] = 0;
    q.push(center);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u = 0; u < r; ++u)
            if (u != v && cd.pair(u, v) != 0 && dist[u] < 0) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
    }
    for (int v = 0; v < r; ++v)
        if (dist[v] < 0) throw std::domain_error("diagram is not connected");
    return dist;
}

Root apply_sigma(const std::vector<int>& sigma, const Root& v) {
    Root out(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) out[sigma[i]] = v[i];
    return out;
}

} // namespace

FoldedDatum fold(const std::string& type) {
    if (type.size() < 2) throw std::domain_error("unknown type: " + type);
    const char fam = type[0];
    if (simply_laced_family(fam))
        throw std::domain_error("folding is only defined for types B, C, F and G");
    const CartanData target = CartanData::named(type);
    const int r = target.rank();

    FoldedDatum fd;
    fd.folded = target;
    if (fam == 'B' && r == 2) {
        fd.ambient_type = "A3";
        fd.sigma = {2, 1, 0};
        fd.orbit_of = {0, 1, 0};
        fd.center = 1;
    } else if (fam == 'B') {
        fd.ambient_type = "D" + std::to_string(r + 1);
        fd.sigma.resize(r + 1);
        std::iota(fd.sigma.begin(), fd.sigma.end(), 0);
        std::swap(fd.sigma[r - 1], fd.sigma[r]);
        fd.orbit_of.assign(r + 1, 0);
        for (int i = 0; i <= r - 2; ++i) fd.orbit_of[i] = r - 1 - i;
        fd.center = r - 2;
    } else if (fam == 'C') {
        fd.ambient_type = "A" + std::to_string(2 * r - 1);
        fd.sigma.resize(2 * r - 1);
        fd.orbit_of.resize(2 * r - 1);
        for (int i = 0; i < 2 * r - 1; ++i) {
            fd.sigma[i] = 2 * r - 2 - i;
            fd.orbit_of[i] = std::abs(i - (r - 1));
        }
        fd.center = r - 1;
    } else if (fam == 'G') {
        fd.ambient_type = "D4";
        fd.sigma = {2, 1, 3, 0};
        fd.orbit_of = {0, 1, 0, 0};
        fd.center = 1;
    } else if (fam == 'F') {
        fd.ambient_type = "E6";
        fd.sigma = {4, 3, 2, 1, 0, 5};
        fd.orbit_of = {0, 1, 2, 1, 0, 3};
        fd.center = 2;
    } else {
        throw std::domain_error("unknown type: " + type);
    }
    fd.ambient = CartanData::named(fd.ambient_type);

    const int ar = fd.ambient.rank();
    for (int i = 0; i < ar; ++i)
        for (int j = 0; j < ar; ++j) {
            if (fd.ambient.pair(fd.sigma[i], fd.sigma[j]) != fd.ambient.pair(i, j))
                throw std::domain_error("folding automorphism does not preserve the pairing");
            if (i != j && fd.orbit_of[i] == fd.orbit_of[j] && fd.ambient.pair(i, j) != 0)
                throw std::domain_error("folding orbit contains linked vertices");
        }
    if (fd.sigma[fd.center] != fd.center)
        throw std::domain_error("folding center must be fixed");

    // orbit sums of the ambient Cartan matrix, symmetrized, must give back the
    // squashed datum exactly
    std::vector<int> rep(r, -1);
    for (int i = ar - 1; i >= 0; --i) rep[fd.orbit_of[i]] = i;
    std::vector<std::vector<int>> acart(r, std::vector<int>(r, 0));
    for (int o = 0; o < r; ++o)
        for (int p = 0; p < r; ++p)
            for (int i = 0; i < ar; ++i)
                if (fd.orbit_of[i] == o) acart[o][p] += fd.ambient.cartan(i, rep[p]);
    std::vector<Rational> d(r, Rational(0));
    d[0] = Rational(1);
    for (bool changed = true; changed;) {
        changed = false;
        for (int o = 0; o < r; ++o)
            for (int p = 0; p < r; ++p)
                if (!(d[o] == Rational(0)) && d[p] == Rational(0) && acart[o][p] != 0) {
                    // symmetry d_o * a_op = d_p * a_po
                    d[p] = d[o] * Rational(acart[o][p]) / Rational(acart[p][o]);
                    changed = true;
                }
    }
    Rational dmin = d[0];
    for (const auto& x : d)
        if (x < dmin) dmin = x;
    for (int o = 0; o < r; ++o)
        for (int p = 0; p < r; ++p)
            if (!(d[o] / dmin * Rational(acart[o][p]) == Rational(target.pair(o, p))))
                throw std::domain_error("folding does not reproduce the target pairing");
    return fd;
}

NilpotentAlgebra::NilpotentAlgebra(CartanData cd, RootSystem rs)
    : cd_(std::move(cd)), rs_(std::move(rs)) {}

void NilpotentAlgebra::finish() {
    ad_.assign(dim_, Mat<Rational>(dim_, std::vector<Rational>(dim_, Rational(0))));
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int r = 0; r < dim_; ++r)
                if (!(brk_[i][j][r] == Rational(0))) ad_[i][r][j] = brk_[i][j][r];
}

int NilpotentAlgebra::index_of(const Root& beta, bool negative) const {
    auto it = pos_index_.find(beta);
    if (it == pos_index_.end()) throw std::domain_error("not a positive root of this algebra");
    return it->second + (negative ? npos_ : 0);
}

std::vector<Rational> NilpotentAlgebra::bracket(const std::vector<Rational>& x,
                                                const std::vector<Rational>& y) const {
    std::vector<Rational> out(dim_, Rational(0));
    for (int i = 0; i < dim_; ++i) {
        if (x[i] == Rational(0)) continue;
        for (int j = 0; j < dim_; ++j) {
            if (y[j] == Rational(0)) continue;
            const auto& b = brk_[i][j];
            for (int r = 0; r < dim_; ++r)
                if (!(b[r] == Rational(0))) out[r] = out[r] + x[i] * y[j] * b[r];
        }
    }
    return out;
}

Rational NilpotentAlgebra::structure_constant(const Root& beta, const Root& gamma) const {
    Root sum = beta;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += gamma[i];
    const auto& b = brk_[index_of(beta)][index_of(gamma)];
    return b[index_of(sum)];
}

NilpotentAlgebra NilpotentAlgebra::simply_laced(const CartanData& cd, int center) {
    for (int i = 0; i < cd.rank(); ++i)
        if (cd.pair(i, i) != 2)
            throw std::domain_error("orientation cocycle needs a simply laced datum");
    NilpotentAlgebra L(cd, RootSystem(cd));
    const int r = cd.rank();
    const auto& pos = L.rs_.positive_roots();
    L.npos_ = static_cast<int>(pos.size());
    L.dim_ = 2 * L.npos_ + r;

    L.weights_.assign(L.dim_, Root(r, 0));
    for (int p = 0; p < L.npos_; ++p) {
        L.weights_[p] = pos[p];
        Root neg = pos[p];
        for (int& x : neg) x = -x;
        L.weights_[L.npos_ + p] = neg;
        L.pos_index_[pos[p]] = p;
    }

    std::map<Root, int> signed_index;
    for (int i = 0; i < 2 * L.npos_; ++i) signed_index[L.weights_[i]] = i;

    // edge orientation toward the center; the diagonal always carries a bit
    const auto dist = tree_distances(cd, center);
    std::vector<std::vector<int>> bit(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j)
                bit[i][j] = 1;
            else if (cd.pair(i, j) != 0 && dist[i] > dist[j])
                bit[i][j] = 1;
        }
    auto eps = [&](const Root& a, const Root& b) {
        long long s = 0;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (bit[i][j]) s += static_cast<long long>(a[i]) * b[j];
        return (s % 2 + 2) % 2 == 0 ? Rational(1) : Rational(-1);
    };

    L.brk_.assign(L.dim_, std::vector<std::vector<Rational>>(
                              L.dim_, std::vector<Rational>(L.dim_, Rational(0))));
    auto& brk = L.brk_;
    const int hbase = 2 * L.npos_;
    for (int a = 0; a < 2 * L.npos_; ++a)
        for (int b = 0; b < 2 * L.npos_; ++b) {
            const Root& ga = L.weights_[a];
            const Root& gb = L.weights_[b];
            Root sum(r, 0);
            bool zero_sum = true;
            for (int i = 0; i < r; ++i) {
                sum[i] = ga[i] + gb[i];
                if (sum[i] != 0) zero_sum = false;
            }
            if (zero_sum) {
                // [e_g, e_{-g}] = -(coroot of g), in the norm-two lattice
                for (int i = 0; i < r; ++i) brk[a][b][hbase + i] = Rational(-ga[i]);
            } else if (auto it = signed_index.find(sum); it != signed_index.end()) {
                brk[a][b][it->second] = eps(ga, gb);
            }
        }
    for (int i = 0; i < r; ++i)
        for (int b = 0; b < 2 * L.npos_; ++b) {
            const Root& gb = L.weights_[b];
            long long v = 0;
            for (int j = 0; j < r; ++j) v += static_cast<long long>(cd.pair(i, j)) * gb[j];
            brk[hbase + i][b][b] = Rational(v);
            brk[b][hbase + i][b] = Rational(-v);
        }
    L.finish();
    return L;
}

NilpotentAlgebra NilpotentAlgebra::folded(const FoldedDatum& fd) {
    const NilpotentAlgebra amb = simply_laced(fd.ambient, fd.center);
    NilpotentAlgebra L(fd.folded, RootSystem(fd.folded));
    const int r = fd.folded.rank();
    const int ar = fd.ambient.rank();
    const auto& pos = L.rs_.positive_roots();
    L.npos_ = static_cast<int>(pos.size());
    L.dim_ = 2 * L.npos_ + r;
    L.weights_.assign(L.dim_, Root(r, 0));
    for (int p = 0; p < L.npos_; ++p) {
        L.weights_[p] = pos[p];
        Root neg = pos[p];
        for (int& x : neg) x = -x;
        L.weights_[L.npos_ + p] = neg;
        L.pos_index_[pos[p]] = p;
    }

    auto fold_r = [&](const Root& g) {
        Root v(r, 0);
        for (int i = 0; i < ar; ++i) v[fd.orbit_of[i]] += g[i];
        return v;
    };

    // basis vectors of the fixed-point algebra: orbit sums of ambient root
    // vectors, and orbit sums of ambient coroots
    std::vector<std::vector<Rational>> incl(L.dim_, std::vector<Rational>(amb.dim_, Rational(0)));
    std::vector<int> repidx(L.dim_, -1); // ambient coordinate owned by each basis vector
    std::map<Root, int> folded_signed;
    for (int p = 0; p < L.npos_; ++p) {
        folded_signed[L.weights_[p]] = p;
        folded_signed[L.weights_[L.npos_ + p]] = L.npos_ + p;
    }
    std::map<Root, int> amb_signed;
    for (int a = 0; a < 2 * amb.positive_count(); ++a) amb_signed[amb.weight_of(a)] = a;
    std::vector<int> seen(2 * amb.positive_count(), 0);
    for (int a = 0; a < 2 * amb.positive_count(); ++a) {
        if (seen[a]) continue;
        const Root folded_root = fold_r(amb.weight_of(a));
        auto it = folded_signed.find(folded_root);
        if (it == folded_signed.end())
            throw std::domain_error("ambient root orbit misses the folded root system");
        Root g = amb.weight_of(a);
        do {
            auto gi = amb_signed.find(g);
            if (gi == amb_signed.end())
                throw std::domain_error("folding automorphism does not preserve the roots");
            if (fold_r(g) != folded_root)
                throw std::domain_error("folding orbit is not weight-homogeneous");
            seen[gi->second] = 1;
            incl[it->second][gi->second] = Rational(1);
            g = apply_sigma(fd.sigma, g);
        } while (g != amb.weight_of(a));
        repidx[it->second] = a;
    }
    for (int p = 0; p < 2 * L.npos_; ++p)
        if (repidx[p] < 0) throw std::domain_error("folded root has no ambient orbit");
    for (int o = 0; o < r; ++o) {
        for (int i = 0; i < ar; ++i)
            if (fd.orbit_of[i] == o) {
                incl[2 * L.npos_ + o][amb.cartan_index(i)] = Rational(1);
                if (repidx[2 * L.npos_ + o] < 0)
                    repidx[2 * L.npos_ + o] = amb.cartan_index(i);
            }
    }

    L.brk_.assign(L.dim_, std::vector<std::vector<Rational>>(
                              L.dim_, std::vector<Rational>(L.dim_, Rational(0))));
    for (int i = 0; i < L.dim_; ++i)
        for (int j = 0; j < L.dim_; ++j) {
            const auto w = amb.bracket(incl[i], incl[j]);
            std::vector<Rational> coords(L.dim_, Rational(0));
            for (int k = 0; k < L.dim_; ++k) coords[k] = w[repidx[k]];
            // the bracket of fixed vectors must itself be an exact
            // combination of the orbit sums
            std::vector<Rational> back(amb.dim_, Rational(0));
            for (int k = 0; k < L.dim_; ++k) {
                if (coords[k] == Rational(0)) continue;
                for (int t = 0; t < amb.dim_; ++t)
                    if (!(incl[k][t] == Rational(0))) back[t] = back[t] + coords[k] * incl[k][t];
            }
            if (back != w) throw std::domain_error("folded bracket left the fixed subalgebra");
            L.brk_[i][j] = std::move(coords);
        }
    L.finish();
    return L;
}

NilpotentAlgebra NilpotentAlgebra::for_type(const std::string& type) {
    if (type.empty()) throw std::domain_error("unknown type: " + type);
    if (simply_laced_family(type[0])) return simply_laced(CartanData::named(type), 0);
    return folded(fold(type));
}

std::string NilpotentAlgebra::check_invariants() const {
    const int D = dim_;
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            // antisymmetry
            for (int k = 0; k < D; ++k)
                if (!(brk_[i][j][k] + brk_[j][i][k] == Rational(0)))
                    return "bracket is not antisymmetric";
            // closure onto the correct weight line
            Root sum(cd_.rank(), 0);
            for (int t = 0; t < cd_.rank(); ++t) sum[t] = weights_[i][t] + weights_[j][t];
            for (int k = 0; k < D; ++k)
                if (!(brk_[i][j][k] == Rational(0)) && weights_[k] != sum)
                    return "bracket leaves the weight grading";
        }
    // Jacobi on all triples; brackets are sparse so expand only the support
    for (int i = 0; i < D; ++i)
        for (int j = i + 1; j < D; ++j)
            for (int k = j + 1; k < D; ++k) {
                std::vector<Rational> acc(D, Rational(0));
                auto add_term = [&](int a, int b, int c) {
                    const auto& ab = brk_[a][b];
                    for (int m = 0; m < D; ++m)
                        if (!(ab[m] == Rational(0))) {
                            const auto& mc = brk_[m][c];
                            for (int t = 0; t < D; ++t)
                                if (!(mc[t] == Rational(0))) acc[t] = acc[t] + ab[m] * mc[t];
                        }
                };
                add_term(i, j, k);
                add_term(j, k, i);
                add_term(k, i, j);
                for (int t = 0; t < D; ++t)
                    if (!(acc[t] == Rational(0))) return "Jacobi identity fails";
            }
    // nilpotency of the positive adjoints
    int hmax = 0;
    for (int p = 0; p < npos_; ++p) {
        int h = 0;
        for (int x : weights_[p]) h += x;
        hmax = std::max(hmax, h);
    }
    for (int p = 0; p < npos_; ++p) {
        Mat<Rational> m = ad_[p];
        for (int step = 0; step < 2 * hmax; ++step) m = mat_mul(m, ad_[p]);
        for (const auto& row : m)
            for (const auto& v : row)
                if (!(v == Rational(0))) return "a positive adjoint is not nilpotent";
    }
    return "";
}

namespace {

Mat<Rational> exp_nilpotent(const Mat<Rational>& m) {
    const int n = static_cast<int>(m.size());
    Mat<Rational> out(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) out[i][i] = Rational(1);
    Mat<Rational> term = out;
    Rational f(1);
    for (int k = 1; k <= n; ++k) {
        term = mat_mul(term, m);
        f = f / Rational(k);
        bool zero = true;
        for (int i = 0; i < n && zero; ++i)
            for (int j = 0; j < n && zero; ++j)
                if (!(term[i][j] == Rational(0))) zero = false;
        if (zero) break;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!(term[i][j] == Rational(0))) out[i][j] = out[i][j] + f * term[i][j];
    }
    return out;
}

Mat<Rational> ad_of(const NilpotentAlgebra& L, const std::vector<Rational>& v) {
    Mat<Rational> m(L.dim(), std::vector<Rational>(L.dim(), Rational(0)));
    for (int i = 0; i < L.dim(); ++i) {
        if (v[i] == Rational(0)) continue;
        const auto& a = L.ad(i);
        for (int r = 0; r < L.dim(); ++r)
            for (int c = 0; c < L.dim(); ++c)
                if (!(a[r][c] == Rational(0))) m[r][c] = m[r][c] + v[i] * a[r][c];
    }
    return m;
}

} // namespace

RootVectors root_vectors(const NilpotentAlgebra& L, const ConvexOrder& co) {
    const Word word = co.to_word();
    const auto& order = co.roots();
    const int D = L.dim();

    std::vector<Mat<Rational>> lift;
    for (int i = 0; i < L.cartan().rank(); ++i) {
        const auto e = exp_nilpotent(L.ad(L.index_of(L.roots().simple(i))));
        const auto f = exp_nilpotent(L.ad(L.index_of(L.roots().simple(i), true)));
        lift.push_back(mat_mul(e, mat_mul(f, e)));
    }

    RootVectors out;
    out.order_roots = order;
    for (std::size_t j = 0; j < word.size(); ++j) {
        std::vector<Rational> v(D, Rational(0));
        v[L.index_of(L.roots().simple(word[j]))] = Rational(1);
        for (std::size_t m = j; m-- > 0;) v = mat_vec(lift[word[m]], v);
        const int expect = L.index_of(order[j]);
        for (int t = 0; t < D; ++t)
            if (t != expect && !(v[t] == Rational(0)))
                throw std::domain_error("root vector left its weight line");
        if (v[expect] == Rational(0)) throw std::domain_error("root vector vanished");
        out.coords[order[j]] = std::move(v);
    }
    return out;
}

namespace {

// multilinear polynomials in up to 31 parameters: monomials are subsets
struct MLPoly {
    std::map<std::uint32_t, Rational> c;
    bool zero() const { return c.empty(); }
    void add(std::uint32_t m, const Rational& v) {
        auto it = c.find(m);
        if (it == c.end()) {
            if (!(v == Rational(0))) c.emplace(m, v);
            return;
        }
        it->second = it->second + v;
        if (it->second == Rational(0)) c.erase(it);
    }
};

MLPoly ml_add(const MLPoly& a, const MLPoly& b) {
    MLPoly out = a;
    for (const auto& [m, v] : b.c) out.add(m, v);
    return out;
}

MLPoly ml_mul(const MLPoly& a, const MLPoly& b) {
    MLPoly out;
    for (const auto& [ma, va] : a.c)
        for (const auto& [mb, vb] : b.c)
            if ((ma & mb) == 0) out.add(ma | mb, va * vb);
    return out;
}

MLPoly ml_scale(const MLPoly& a, const Rational& s) {
    MLPoly out;
    if (s == Rational(0)) return out;
    for (const auto& [m, v] : a.c) out.c.emplace(m, v * s);
    return out;
}

using MLMat = std::vector<std::vector<MLPoly>>;

MLMat ml_identity(int n) {
    MLMat out(n, std::vector<MLPoly>(n));
    for (int i = 0; i < n; ++i) out[i][i].add(0, Rational(1));
    return out;
}

MLMat ml_mat_mul(const MLMat& a, const MLMat& b) {
    const int n = static_cast<int>(a.size());
    MLMat out(n, std::vector<MLPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (a[i][k].zero()) continue;
            for (int j = 0; j < n; ++j) {
                if (b[k][j].zero()) continue;
                out[i][j] = ml_add(out[i][j], ml_mul(a[i][k], b[k][j]));
            }
        }
    return out;
}

bool ml_is_identity(const MLMat& m) {
    const int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                if (m[i][j].c.size() != 1) return false;
                auto it = m[i][j].c.find(0);
                if (it == m[i][j].c.end() || !(it->second == Rational(1))) return false;
            } else if (!m[i][j].zero()) {
                return false;
            }
        }
    return true;
}

// rows extracting each root coordinate from a flattened adjoint matrix
struct Extractor {
    std::vector<Root> order_roots;
    std::map<Root, std::vector<Rational>> xcoords;
    std::vector<Mat<Rational>> xad; // ad of each root vector, ascending
    Mat<Rational> rows;             // npos x D^2
};

Extractor make_extractor_raw(const NilpotentAlgebra& L, const ConvexOrder& co) {
    const RootVectors rv = root_vectors(L, co);
    const int P = static_cast<int>(rv.order_roots.size());
    const int D = L.dim();
    Extractor ex;
    ex.order_roots = rv.order_roots;
    ex.xcoords = rv.coords;
    Mat<Rational> a(D * D, std::vector<Rational>(P, Rational(0)));
    for (int j = 0; j < P; ++j) {
        ex.xad.push_back(ad_of(L, rv.coords.at(rv.order_roots[j])));
        for (int r = 0; r < D; ++r)
            for (int cidx = 0; cidx < D; ++cidx) a[r * D + cidx][j] = ex.xad[j][r][cidx];
    }
    // left inverse of the full-column-rank flattening
    Mat<Rational> ata(P, std::vector<Rational>(P, Rational(0)));
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) {
            Rational s(0);
            for (int t = 0; t < D * D; ++t) s = s + a[t][i] * a[t][j];
            ata[i][j] = s;
        }
    const Mat<Rational> inv = inverse(std::move(ata));
    ex.rows.assign(P, std::vector<Rational>(D * D, Rational(0)));
    for (int i = 0; i < P; ++i)
        for (int t = 0; t < D * D; ++t) {
            Rational s(0);
            for (int j = 0; j < P; ++j) s = s + inv[i][j] * a[t][j];
            ex.rows[i][t] = s;
        }
    return ex;
}

// coordinates along the convex order of a unipotent group element given in
// the adjoint representation, extracted by peeling one root flow at a time
std::vector<MLPoly> peel_coordinates(const NilpotentAlgebra& L, const Extractor& ex, MLMat u) {
    const int D = L.dim();
    const int P = static_cast<int>(ex.order_roots.size());
    std::vector<MLPoly> coords(P);
    for (int j = 0; j < P; ++j) {
        // logarithm of the remaining factor
        MLMat w = u;
        for (int i = 0; i < D; ++i) w[i][i].add(0, Rational(-1));
        MLMat term = w;
        MLMat lg = w;
        for (int m = 2;; ++m) {
            term = ml_mat_mul(term, w);
            bool zero = true;
            for (int r = 0; r < D && zero; ++r)
                for (int ccol = 0; ccol < D && zero; ++ccol)
                    if (!term[r][ccol].zero()) zero = false;
            if (zero) break;
            const Rational f = Rational(m % 2 == 0 ? -1 : 1) / Rational(m);
            for (int r = 0; r < D; ++r)
                for (int ccol = 0; ccol < D; ++ccol)
                    if (!term[r][ccol].zero())
                        lg[r][ccol] = ml_add(lg[r][ccol], ml_scale(term[r][ccol], f));
        }
        MLPoly cj;
        for (int r = 0; r < D; ++r)
            for (int ccol = 0; ccol < D; ++ccol) {
                const Rational& s = ex.rows[j][r * D + ccol];
                if (!(s == Rational(0)) && !lg[r][ccol].zero())
                    cj = ml_add(cj, ml_scale(lg[r][ccol], s));
            }
        if (cj.c.count(0)) throw std::domain_error("coordinate peel found a constant term");
        // strip the extracted flow off the front
        const Mat<Rational>& m0 = ex.xad[j];
        MLMat acc = ml_identity(D);
        MLPoly cpow;
        cpow.add(0, Rational(1));
        Mat<Rational> mpow(D, std::vector<Rational>(D, Rational(0)));
        for (int i = 0; i < D; ++i) mpow[i][i] = Rational(1);
        Rational f(1);
        for (int k = 1;; ++k) {
            cpow = ml_mul(cpow, ml_scale(cj, Rational(-1)));
            mpow = mat_mul(mpow, m0);
            f = f / Rational(k);
            if (cpow.zero()) break;
            bool mzero = true;
            for (int r = 0; r < D && mzero; ++r)
                for (int ccol = 0; ccol < D && mzero; ++ccol)
                    if (!(mpow[r][ccol] == Rational(0))) mzero = false;
            if (mzero) break;
            for (int r = 0; r < D; ++r)
                for (int ccol = 0; ccol < D; ++ccol)
                    if (!(mpow[r][ccol] == Rational(0)))
                        acc[r][ccol] = ml_add(acc[r][ccol], ml_scale(cpow, f * mpow[r][ccol]));
        }
        u = ml_mat_mul(acc, u);
        coords[j] = std::move(cj);
    }
    if (!ml_is_identity(u)) throw std::domain_error("coordinate peel did not exhaust the flow");
    return coords;
}

Int ml_int_coeff(const MLPoly& p, std::uint32_t mask) {
    auto it = p.c.find(mask);
    if (it == p.c.end()) return Int(0);
    const Rational& v = it->second;
    if (boost::multiprecision::denominator(v) != 1)
        throw std::domain_error("coordinate pairing is not an integer");
    return Int(boost::multiprecision::numerator(v));
}

// coefficient of t_1...t_n in the position-pos coordinate of the product of
// the simple one-parameter flows exp(t_k e_{i_k})
Int pair_word(const NilpotentAlgebra& L, const Extractor& ex, const Word& ii, int pos) {
    const int n = static_cast<int>(ii.size());
    const int D = L.dim();
    MLMat u = ml_identity(D);
    for (int k = 0; k < n; ++k) {
        const auto& a = L.ad(L.index_of(L.roots().simple(ii[k])));
        MLMat f = ml_identity(D);
        for (int r = 0; r < D; ++r)
            for (int c = 0; c < D; ++c)
                if (!(a[r][c] == Rational(0))) f[r][c].add(1u << k, a[r][c]);
        u = ml_mat_mul(u, f);
    }
    const auto coords = peel_coordinates(L, ex, std::move(u));
    return ml_int_coeff(coords[pos], n == 0 ? 0u : (1u << n) - 1u);
}

// Weyl lifts pin each root vector only up to sign, so the coordinates are
// sign normalized: the first word of the root's weight that pairs to a
// nonzero value must pair positively. Flipping one root vector flips exactly
// its own coordinate and no other, so the scan can fix each root in turn.
Extractor make_extractor(const NilpotentAlgebra& L, const ConvexOrder& co) {
    Extractor ex = make_extractor_raw(L, co);
    const int P = static_cast<int>(ex.order_roots.size());
    for (int j = 0; j < P; ++j) {
        const Root& beta = ex.order_roots[j];
        Word letters;
        for (std::size_t i = 0; i < beta.size(); ++i)
            for (int k = 0; k < beta[i]; ++k) letters.push_back(static_cast<int>(i));
        bool found = false;
        do {
            const Int v = pair_word(L, ex, letters, j);
            if (v == 0) continue;
            found = true;
            if (v < 0) {
                for (auto& x : ex.xcoords.at(beta)) x = -x;
                for (auto& row : ex.xad[j])
                    for (auto& x : row) x = -x;
                for (auto& x : ex.rows[j]) x = -x;
            }
            break;
        } while (std::next_permutation(letters.begin(), letters.end()));
        if (!found) throw std::domain_error("coordinate function pairs to zero with every word");
    }
    return ex;
}

} // namespace

Int z_root_pairing(const NilpotentAlgebra& L, const ConvexOrder& co, const Root& gamma,
                   const Root& beta) {
    const Extractor ex = make_extractor(L, co);
    const int D = L.dim();
    const int jg = co.position(gamma);
    MLMat u = ml_identity(D);
    for (int r = 0; r < D; ++r)
        for (int c = 0; c < D; ++c)
            if (!(ex.xad[jg][r][c] == Rational(0))) u[r][c].add(1u, ex.xad[jg][r][c]);
    const auto coords = peel_coordinates(L, ex, std::move(u));
    return ml_int_coeff(coords[co.position(beta)], 1u);
}

Int z_pairing(const NilpotentAlgebra& L, const ConvexOrder& co, const Word& ii,
              const Root& alpha) {
    if (ii.size() > 20) throw std::domain_error("coordinate pairing exceeds the letter budget");
    if (weight_of_word(ii, L.cartan().rank()) != alpha)
        throw std::domain_error("word weight does not match the root");
    const Extractor ex = make_extractor(L, co);
    return pair_word(L, ex, ii, co.position(alpha));
}

ConvexOrder unfolded_order(const FoldedDatum& fd, const ConvexOrder& co,
                           const RootSystem& ambient_rs) {
    Word w;
    for (int o : co.to_word())
        for (int i = 0; i < fd.ambient.rank(); ++i)
            if (fd.orbit_of[i] == o) w.push_back(i);
    return ConvexOrder::from_word(ambient_rs, w);
}

Root fold_root(const FoldedDatum& fd, const Root& ambient_root) {
    Root v(fd.folded.rank(), 0);
    for (int i = 0; i < fd.ambient.rank(); ++i) v[fd.orbit_of[i]] += ambient_root[i];
    return v;
}

FoldCheckResult fold_check(const FoldedDatum& fd, const NilpotentAlgebra& L,
                           const NilpotentAlgebra& ambient, const ConvexOrder& co,
                           const Word& ii, const Root& alpha) {
    FoldCheckResult out;
    out.direct = z_pairing(L, co, ii, alpha);

    const ConvexOrder aco = unfolded_order(fd, co, ambient.roots());
    Root target;
    for (const Root& g : aco.roots())
        if (fold_root(fd, g) == alpha) {
            target = g;
            break;
        }
    if (target.empty()) throw std::domain_error("no ambient root lies over the target root");

    std::vector<std::vector<int>> fibers;
    for (int o : ii) {
        std::vector<int> fiber;
        for (int i = 0; i < fd.ambient.rank(); ++i)
            if (fd.orbit_of[i] == o) fiber.push_back(i);
        fibers.push_back(std::move(fiber));
    }
    Word jj(ii.size(), 0);
    out.all_nonneg = true;
    std::function<void(std::size_t)> walk = [&](std::size_t k) {
        if (k == fibers.size()) {
            if (weight_of_word(jj, fd.ambient.rank()) != target) return;
            const Int v = z_pairing(ambient, aco, jj, target);
            if (v < 0) out.all_nonneg = false;
            out.total += v;
            out.summands.push_back({jj, v});
            return;
        }
        for (int i : fibers[k]) {
            jj[k] = i;
            walk(k + 1);
        }
    };
    walk(0);
    out.match = out.direct == out.total;
    return out;
}

} // namespace klr
