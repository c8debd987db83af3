#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klr/fp.hpp"
#include "klr/klralg.hpp"
#include "klr/linalg.hpp"
#include "klr/pbw.hpp"
#include "klr/shuffle.hpp"

namespace klr {

struct ModBasisVec {
    Word word;
    int degree = 0;
    std::string label;
};

// Graded finite-dimensional module given by one global matrix per generator.
// Column c of y(j) / phi(k) is the image of basis vector c; entries outside
// the weight-space pattern are shape violations caught by verify_module.
template <class K>
class BasicModule {
public:
    BasicModule(CartanData cd, std::vector<ModBasisVec> basis, std::vector<Mat<K>> y,
                std::vector<Mat<K>> phi);

    const CartanData& cartan() const { return cd_; }
    int strands() const { return d_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    Root nu() const;
    const std::vector<ModBasisVec>& basis() const { return basis_; }
    const Mat<K>& y(int j) const;
    const Mat<K>& phi(int k) const;

    std::vector<K> apply_y(int j, const std::vector<K>& v) const;
    std::vector<K> apply_phi(int k, const std::vector<K>& v) const;

    // Sum of q^{degree} [word] over the basis.
    ShuffleElt character() const;
    BasicModule shifted(int k) const;

private:
    CartanData cd_;
    int d_;
    std::vector<ModBasisVec> basis_;
    std::vector<Mat<K>> y_, phi_;
};

using FiniteModule = BasicModule<Rational>;
using FpModule = BasicModule<Fp>;

struct ModuleVerdict {
    std::vector<std::string> shape_violations;
    std::vector<std::string> relation_violations;
    bool ok() const { return shape_violations.empty() && relation_violations.empty(); }
    std::string str() const;
};

// Checks the weight-space/degree pattern of every matrix (shape) and every
// defining relation on every basis vector (relation), with witnesses.
template <class K>
ModuleVerdict verify_module(const BasicModule<K>& m);

// Induced module on the basis phi_w (x) (m (x) n) over minimal-length left
// coset representatives w; generator actions are straightened through the
// rewriting engine, then the block-preserving residue acts on m (x) n.
template <class K>
BasicModule<K> induce(const KLRAlgebra& R, const BasicModule<K>& a, const BasicModule<K>& b,
                      int dim_budget = 4000);

// Bases of the degree-homogeneous module maps a -> b, keyed by degree shift.
template <class K>
std::map<int, std::vector<Mat<K>>> intertwiners(const BasicModule<K>& a, const BasicModule<K>& b);

// One-dimensional module over a single strand of the given letter.
template <class K>
BasicModule<K> trivial_module(const CartanData& cd, int letter);

// Zero-strand module (unit for induction).
template <class K>
BasicModule<K> empty_module(const CartanData& cd);

FpModule reduce_mod_p(const FiniteModule& m, std::uint64_t p);

struct CuspidalModuleResult {
    FiniteModule module;
    int hom_dim = 0;   // total intertwiner dimension across shifts
    int shift_used = 0;
    RootPair pair;
};

// Module route to the cuspidal object: the kernel of the (up to shift
// unique) intertwiner Ind(S_small (x) S_large) -> Ind(S_large (x) S_small)
// at the canonical two-root splitting, built recursively from the simples.
// Throws when the intertwiner space is zero or the kernel character is not
// an N[q,q^-1]-multiple of the inductively built character of alpha.
CuspidalModuleResult cuspidal_module(const KLRAlgebra& R, CuspidalTable& table, const Root& alpha,
                                     int dim_budget = 4000);

// JSON round trip. Deterministic output (fixed key order, sorted spaces).
std::string module_to_json(const FiniteModule& m);
FiniteModule module_from_json(const std::string& text);

} // namespace klr
