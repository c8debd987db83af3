#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace klr {

// Dense exact linear algebra over any field-like type K supporting
// construction from int, +, -, *, /, and ==.
template <class K>
using Mat = std::vector<std::vector<K>>;

// In-place Gauss-Jordan over the first `cols` columns (any trailing columns
// ride along as an augmented block). Returns the pivot columns in order.
template <class K>
std::vector<int> row_reduce(Mat<K>& m, int cols) {
    std::vector<int> pivots;
    const int rows = static_cast<int>(m.size());
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!(m[i][col] == K(0))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        K piv = m[r][col];
        for (auto& x : m[r]) x = x / piv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            K f = m[i][col];
            if (f == K(0)) continue;
            for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

template <class K>
int rank(Mat<K> m) {
    if (m.empty()) return 0;
    return static_cast<int>(row_reduce(m, static_cast<int>(m[0].size())).size());
}

// One solution of A x = b, or nullopt when inconsistent (free variables are
// set to zero).
template <class K>
std::optional<std::vector<K>> solve(Mat<K> a, const std::vector<K>& b) {
    const int rows = static_cast<int>(a.size());
    if (rows != static_cast<int>(b.size())) throw std::domain_error("solve: shape mismatch");
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    for (int i = 0; i < rows; ++i) a[i].push_back(b[i]);
    auto pivots = row_reduce(a, cols);
    for (int i = static_cast<int>(pivots.size()); i < rows; ++i)
        if (!(a[i][cols] == K(0))) return std::nullopt;
    std::vector<K> x(cols, K(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
    return x;
}

template <class K>
std::vector<std::vector<K>> kernel_basis(Mat<K> a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    auto pivots = row_reduce(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::vector<K>> basis;
    for (int col = 0; col < cols; ++col) {
        if (is_pivot[col]) continue;
        std::vector<K> v(cols, K(0));
        v[col] = K(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = K(0) - a[r][col];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class K>
Mat<K> inverse(Mat<K> a) {
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(a[i].size()) != n) throw std::domain_error("inverse: not square");
        for (int j = 0; j < n; ++j) a[i].push_back(K(i == j ? 1 : 0));
    }
    auto pivots = row_reduce(a, n);
    if (static_cast<int>(pivots.size()) != n) throw std::domain_error("inverse: singular matrix");
    Mat<K> r(n);
    for (int i = 0; i < n; ++i) r[i].assign(a[i].begin() + n, a[i].end());
    return r;
}

template <class K>
std::vector<K> mat_vec(const Mat<K>& a, const std::vector<K>& x) {
    std::vector<K> y(a.size(), K(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != x.size()) throw std::domain_error("mat_vec: shape mismatch");
        for (std::size_t j = 0; j < x.size(); ++j) y[i] = y[i] + a[i][j] * x[j];
    }
    return y;
}

template <class K>
Mat<K> mat_mul(const Mat<K>& a, const Mat<K>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t n = a.size(), m = b[0].size(), k = b.size();
    Mat<K> r(n, std::vector<K>(m, K(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != k) throw std::domain_error("mat_mul: shape mismatch");
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == K(0)) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] = r[i][j] + a[i][l] * b[l][j];
        }
    }
    return r;
}

} // namespace klr
