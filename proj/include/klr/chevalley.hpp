#pragma once

#include <map>
#include <string>
#include <vector>

#include <klr/linalg.hpp>
#include <klr/qarith.hpp>
#include <klr/rootsys.hpp>

namespace klr {

// A non-simply-laced Cartan datum realized as the orbit quotient of a simply
// laced one under a diagram automorphism. Vertices in a common orbit pair to
// zero, and the orbit sums of coroots reproduce the squashed pairing.
struct FoldedDatum {
    CartanData folded;
    CartanData ambient;
    std::string ambient_type;
    std::vector<int> sigma;    // ambient vertex permutation
    std::vector<int> orbit_of; // ambient vertex -> folded vertex
    int center = 0;            // sigma-fixed vertex the edge orientation points at
};

// fold: supported for B*, C*, F4 and G2; throws on simply laced input.
FoldedDatum fold(const std::string& type);

// The positive nilpotent subalgebra of the semisimple Lie algebra attached to
// a Cartan datum, carried inside the full algebra so Weyl reflections can be
// lifted. Basis: one vector per positive root, one per negative root, then
// the simple coroots. Simply laced types use the orientation cocycle for the
// structure constants; the other types sit inside their simply laced cover as
// the fixed points of the diagram automorphism, with orbit-sum basis vectors.
class NilpotentAlgebra {
  public:
    static NilpotentAlgebra for_type(const std::string& type);
    static NilpotentAlgebra simply_laced(const CartanData& cd, int center);
    static NilpotentAlgebra folded(const FoldedDatum& fd);

    const CartanData& cartan() const { return cd_; }
    const RootSystem& roots() const { return rs_; }
    int dim() const { return dim_; }            // 2 * positives + rank
    int positive_count() const { return npos_; }
    const Root& weight_of(int idx) const { return weights_[idx]; }
    int index_of(const Root& beta, bool negative = false) const;
    int cartan_index(int i) const { return 2 * npos_ + i; }

    const Mat<Rational>& ad(int idx) const { return ad_[idx]; }
    std::vector<Rational> bracket(const std::vector<Rational>& x,
                                  const std::vector<Rational>& y) const;
    // coefficient of the basis vector of beta+gamma in the bracket of the
    // basis vectors of beta and gamma (positive roots)
    Rational structure_constant(const Root& beta, const Root& gamma) const;

    // empty string when bracket closure, antisymmetry, the Jacobi identity
    // and nilpotency of the positive adjoints all hold
    std::string check_invariants() const;

  private:
    NilpotentAlgebra(CartanData cd, RootSystem rs);
    void finish(); // fills ad matrices from the bracket table

    CartanData cd_;
    RootSystem rs_;
    int npos_ = 0, dim_ = 0;
    std::vector<Root> weights_;
    std::map<Root, int> pos_index_;
    // brk_[i][j] = coordinates of [b_i, b_j]
    std::vector<std::vector<std::vector<Rational>>> brk_;
    std::vector<Mat<Rational>> ad_;
};

// Root vectors attached to a convex order: the vector of the k-th order
// position is carried out of the matching Chevalley generator by the lifted
// Weyl reflections of the preceding reflections in the reduced word.
struct RootVectors {
    std::vector<Root> order_roots;                // ascending
    std::map<Root, std::vector<Rational>> coords; // in the algebra basis
};
RootVectors root_vectors(const NilpotentAlgebra& L, const ConvexOrder& co);

// (X_gamma, Z_beta): the first-order coordinate of a one-parameter unipotent
// flow, which must be the Kronecker delta on positive roots.
Int z_root_pairing(const NilpotentAlgebra& L, const ConvexOrder& co, const Root& gamma,
                   const Root& beta);

// (e_ii, Z_alpha): coefficient of t_1...t_n after factoring the product of
// the simple one-parameter flows exp(t_k e_{i_k}) back into root coordinates
// taken along the convex order. Throws when the word weight is not alpha.
// Coordinate signs are normalized per root: the first word of the root's
// weight with a nonzero pairing pairs positively.
Int z_pairing(const NilpotentAlgebra& L, const ConvexOrder& co, const Word& ii,
              const Root& alpha);

struct FoldSummand {
    Word word;
    Int value;
};
// Expand each letter of ii over its fiber in the ambient datum and pair the
// expanded words against the matching ambient coordinate function. The total
// must reproduce the folded pairing and every summand must be nonnegative.
struct FoldCheckResult {
    Int direct = 0, total = 0;
    bool match = false, all_nonneg = false;
    std::vector<FoldSummand> summands;
};
FoldCheckResult fold_check(const FoldedDatum& fd, const NilpotentAlgebra& L,
                           const NilpotentAlgebra& ambient, const ConvexOrder& co,
                           const Word& ii, const Root& alpha);

// Ambient convex order induced by replacing every folded letter of the
// reduced word with its fiber of commuting ambient letters.
ConvexOrder unfolded_order(const FoldedDatum& fd, const ConvexOrder& co,
                           const RootSystem& ambient_rs);
// Image of an ambient root under the orbit quotient.
Root fold_root(const FoldedDatum& fd, const Root& ambient_root);

} // namespace klr
