#include "klr/fixtures.hpp"

namespace klr {

namespace {

Word asc(int from, int to) { // empty when from > to
    Word w;
    for (int i = from; i <= to; ++i) w.push_back(i);
    return w;
}

Word desc(int from, int to) { // empty when from < to
    Word w;
    for (int i = from; i >= to; --i) w.push_back(i);
    return w;
}

Word cat(std::initializer_list<Word> parts) {
    Word w;
    for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
    return w;
}

} // namespace

std::vector<FixtureRow> fixture_rows_B(int r) {
    std::vector<FixtureRow> rows;
    // alpha_i + ... + alpha_j
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            rows.push_back({"B", asc(i, j), asc(i, j - 1), {j}, 'b', Word{j - i - 1, j - i - 1},
                            cat({asc(i, j - 2), {j, j - 1}})});
    // 2*alpha_0 + alpha_1 + ... + alpha_k
    for (int k = 1; k < r; ++k)
        rows.push_back({"B", cat({{0, 0}, asc(1, k)}), {0}, asc(0, k), 'g', Word{0, 1, 1},
                        cat({{0, 1, 0}, asc(2, k)})});
    // alpha_j + ... + alpha_1 + 2*alpha_0 + alpha_1 + ... + alpha_k (j < k)
    for (int j = 1; j < r; ++j)
        for (int k = j + 1; k < r; ++k)
            rows.push_back({"B", cat({desc(j, 0), asc(0, k)}), {j},
                            cat({desc(j - 1, 0), asc(0, k)}), 'g', Word{0, 0},
                            cat({{j - 1, j}, desc(j - 2, 0), asc(0, k)})});
    return rows;
}

std::vector<FixtureRow> fixture_rows_C(int r) {
    std::vector<FixtureRow> rows;
    rows.push_back({"C", {0, 1}, {0}, {1}, 'g', Word{0, 0}, {1, 0}});
    for (int i = 0; i < r; ++i)
        for (int j = std::max(i + 1, 2); j < r; ++j)
            rows.push_back({"C", asc(i, j), asc(i, j - 1), {j}, 'b', Word{j - i - 1, j - i - 1},
                            cat({asc(i, j - 2), {j, j - 1}})});
    // alpha_0 + 2*alpha_1 + alpha_2 + ... + alpha_k
    for (int k = 2; k < r; ++k)
        rows.push_back({"C", cat({{1, 0}, asc(1, k)}), {1}, asc(0, k), 'g', Word{0, 1, 0},
                        cat({{0, 1, 1}, asc(2, k)})});
    // alpha_j + ... + alpha_1 + alpha_0 + 2*alpha_1 + ... (2 <= j < k)
    for (int j = 2; j < r; ++j)
        for (int k = j + 1; k < r; ++k)
            rows.push_back({"C", cat({desc(j, 1), {0}, asc(1, k)}), {j},
                            cat({desc(j - 1, 1), {0}, asc(1, k)}), 'g', Word{0, 0},
                            cat({{j - 1, j}, desc(j - 2, 0), asc(1, k)})});
    // alpha_0 + 2*(alpha_1 + ... + alpha_j)
    for (int j = 1; j < r; ++j)
        rows.push_back({"C", cat({asc(0, j), asc(1, j)}), asc(0, j), asc(1, j), 'b',
                        cat({desc(j, 1), {0, 0}, asc(1, j)}),
                        cat({{1, 0}, asc(1, j), asc(2, j)})});
    return rows;
}

std::vector<FixtureRow> fixture_rows_F4() {
    return {
        {"F4", {0, 1, 2, 3}, {0}, {1, 2, 3}, 'g', {0, 0}, {1, 0, 2, 3}},
        {"F4", {1, 0, 1, 2}, {1}, {0, 1, 2}, 'g', {0, 1, 2, 2, 1, 0}, {0, 1, 2, 1}},
        {"F4", {0, 1, 0, 1, 2}, {0, 1}, {0, 1, 2}, 'g', {1, 2, 3, 3, 2, 1}, {0, 0, 1, 2, 1}},
        {"F4", {1, 0, 1, 2, 3}, {1}, {0, 1, 2, 3}, 'g', {0, 1, 2, 2, 1, 0}, {0, 1, 2, 1, 3}},
        {"F4", {0, 1, 0, 1, 2, 3}, {0, 1}, {0, 1, 2, 3}, 'g', {1, 2, 3, 3, 2, 1},
         {0, 0, 1, 2, 1, 3}},
        {"F4", {2, 1, 0, 1, 2, 3}, {2}, {1, 0, 1, 2, 3}, 'g', {0, 0}, {1, 2, 0, 1, 2, 3}},
        {"F4", {1, 2, 1, 0, 1, 2, 3}, {1}, {2, 1, 0, 1, 2, 3}, 'g', {0, 1, 2, 2, 1, 0},
         {2, 1, 0, 1, 1, 2, 3}},
        {"F4", {2, 0, 1, 0, 1, 2, 3}, {2}, {0, 1, 0, 1, 2, 3}, 'g', {0, 1, 1, 0},
         {0, 1, 2, 0, 1, 2, 3}},
        {"F4", {1, 2, 0, 1, 0, 1, 2, 3}, {1, 2}, {0, 1, 0, 1, 2, 3}, 'b',
         {3, 2, 4, 3, 1, 2, 2, 1}, {1, 0, 1, 2, 0, 1, 2, 3}},
        {"F4", {1, 1, 2, 0, 1, 0, 1, 2, 3}, {1}, {1, 2, 0, 1, 0, 1, 2, 3}, 'g', {0, 1, 1},
         {1, 2, 1, 0, 1, 0, 1, 2, 3}},
        {"F4", {2, 1, 1, 2, 0, 1, 0, 1, 2, 3}, {2}, {1, 1, 2, 0, 1, 0, 1, 2, 3}, 'g', {0, 0},
         {1, 2, 1, 2, 0, 1, 0, 1, 2, 3}},
        {"F4", {2, 1, 0, 1, 2, 3, 1, 0, 1, 2, 3}, {2, 1, 0, 1, 2, 3}, {1, 0, 1, 2, 3}, 'g',
         {5, 4, 3, 2, 1, 0, 0, 1, 2, 3, 4, 5}, {1, 2, 1, 0, 1, 2, 3, 0, 1, 2, 3}},
    };
}

std::vector<FixtureRow> fixture_rows_G2() {
    return {
        {"G2", {0, 1}, {0}, {1}, 'b', {0, 0}, {1, 0}},
        {"G2", {0, 0, 1}, {0}, {0, 1}, 'g', {}, {}},
        {"G2", {0, 0, 0, 1}, {0}, {0, 0, 1}, 'g', {2, 2, 1, 0}, {0, 0, 1, 0}},
        {"G2", {0, 0, 1, 0, 1}, {0, 0, 1}, {0, 1}, 'g', {1, 1, 0, 2, 3, 1, 2}, {0, 1, 0, 0, 1}},
    };
}

FiniteModule g2_five_dim() {
    const CartanData cd = CartanData::named("G2");
    const Word w001{0, 0, 1};
    const Word w010{0, 1, 0};
    std::vector<ModBasisVec> basis{
        {w001, 3, "v001[3]"},   {w001, 1, "v001[1]"}, {w001, -1, "v001[-1]"},
        {w001, -3, "v001[-3]"}, {w010, 0, "v010[0]"},
    };
    const int n = 5;
    auto zero = Mat<Rational>(n, std::vector<Rational>(n, Rational(0)));
    Mat<Rational> y1 = zero, y2 = zero, y3 = zero, p1 = zero, p2 = zero;
    // y_1 v001[i] = -v001[i+2], y_2 v001[i] = v001[i+2]
    for (int c = 1; c < 4; ++c) {
        y1[c - 1][c] = Rational(-1);
        y2[c - 1][c] = Rational(1);
    }
    // phi_1 lowers inside the v001 string on the outer rungs only
    p1[1][0] = Rational(1);
    p1[3][2] = Rational(1);
    // phi_2 swings through the v010 space
    p2[4][3] = Rational(1);
    p2[0][4] = Rational(1);
    return FiniteModule(cd, std::move(basis), {std::move(y1), std::move(y2), std::move(y3)},
                        {std::move(p1), std::move(p2)});
}

IdentityCheck rank_four_word_identity(const KLRAlgebra& R) {
    IdentityCheck out;
    const Word ii{1, 0, 1, 2};
    const std::vector<int> zeros{0, 0, 0, 0};
    const KLRElement lhs = R.nf_word({0, 1, 2, 2, 1, 0}, zeros, ii);
    if (lhs.is_zero()) {
        out.detail = "left side collapsed to zero";
        return out;
    }
    if (!R.nf_word({0, 1, 1, 0}, {2, 0, 0, 0}, ii).is_zero()) {
        out.detail = "squared-crossing summand failed to vanish";
        return out;
    }
    KLRElement rhs = R.lmul_phi(1, R.lmul_phi(0, R.lmul_y(0, R.nf_word({1}, zeros, ii))));
    rhs += R.lmul_y(0, R.idempotent(ii));
    rhs += R.nf_word({0, 1, 0}, {0, 0, 1, 0}, ii);
    if (lhs != rhs) {
        out.detail = "three-term expansion mismatch: " + lhs.str() + " vs " + rhs.str();
        return out;
    }
    KLRElement closed = R.nf_word({0, 1, 0}, {1, 0, 0, 0}, ii);
    closed += R.nf_word({0, 1, 0}, {0, 0, 1, 0}, ii);
    if (lhs != closed) {
        out.detail = "closed form mismatch: " + lhs.str();
        return out;
    }
    out.pass = true;
    out.detail = "phi1 phi2 phi3^2 phi2 phi1 e(1012) = phi1 phi2 phi1 (y1+y3) e(1012)";
    return out;
}

} // namespace klr
