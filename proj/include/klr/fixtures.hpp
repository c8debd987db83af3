#pragma once

#include <string>
#include <vector>

#include "klr/klralg.hpp"
#include "klr/klrmod.hpp"
#include "klr/rootsys.hpp"

namespace klr {

// One classification-table row: a non-simple positive root alpha written as
// a word, a two-root splitting alpha = gamma + beta (gamma the order-larger
// root), which summand the inductive step recurses into, and, where given,
// a crossing word x (0-based letters) together with the idempotent word jj
// it acts on.
struct FixtureRow {
    std::string family;
    Word alpha, gamma, beta;
    char choice = 'g'; // 'g' or 'b'
    Word xword;        // empty when the table leaves the cell blank
    Word jj;
};

std::vector<FixtureRow> fixture_rows_B(int r);
std::vector<FixtureRow> fixture_rows_C(int r);
std::vector<FixtureRow> fixture_rows_F4();
std::vector<FixtureRow> fixture_rows_G2();

// Five-dimensional module over the G2 weight 2*alpha_0 + alpha_1 with basis
// v001[3], v001[1], v001[-1], v001[-3], v010[0] (bracket = degree).
FiniteModule g2_five_dim();

// The worked crossing-word identity on four strands in F4:
// phi1 phi2 phi3^2 phi2 phi1 e_{1012}
//   = (phi2 phi1 y1 phi2 + y1 + phi1 phi2 phi1 y3) e_{1012}
//   = phi1 phi2 phi1 (y1 + y3) e_{1012},
// the squared-crossing summand phi1 phi2^2 phi1 y1^2 e_{1012} vanishing
// because its inner square acts on equal letters.
struct IdentityCheck {
    bool pass = false;
    std::string detail;
};
IdentityCheck rank_four_word_identity(const KLRAlgebra& R);

} // namespace klr
