#pragma once

#include <map>
#include <utility>
#include <vector>

#include "klr/klralg.hpp"
#include "klr/linalg.hpp"

namespace klr {

// Polynomial representation: the component labelled by a word ii carries the
// polynomial ring in x_1..x_d, a dot acts by multiplication, a crossing by
// the divided difference on equal letters and a twisted swap otherwise.
// Serves as an independent check on the rewriting engine.
class PolyRep {
public:
    using Key = std::pair<Word, std::vector<int>>;
    using Vec = std::map<Key, LaurentPoly>;

    explicit PolyRep(CartanData cd) : cd_(std::move(cd)) {}
    const CartanData& cartan() const { return cd_; }

    static Vec unit(const Word& ii);
    Vec apply_e(const Word& jj, const Vec& v) const;
    Vec apply_y(int j, const Vec& v) const;
    Vec apply_phi(int k, const Vec& v) const;
    Vec apply_term(const KLRTerm& t, const Vec& v) const;
    Vec apply_element(const KLRElement& x, const Vec& v) const;
    Vec apply_raw(const Word& ks, const std::vector<int>& ys, const Word& ii, const Vec& v) const;

private:
    CartanData cd_;
};

// Images of each candidate on the seed vectors, flattened to rational rows.
// Every image coefficient must be a constant Laurent polynomial.
Mat<Rational> operator_matrix(const PolyRep& rep, const std::vector<KLRTerm>& candidates,
                              const std::vector<PolyRep::Vec>& seeds);

// All monomial exponent vectors of total degree <= cap in d variables.
std::vector<std::vector<int>> monomials_up_to(int d, int cap);

} // namespace klr
