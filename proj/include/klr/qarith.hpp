#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <stdexcept>
#include <string>

namespace klr {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Laurent polynomial in q with arbitrary-precision integer coefficients.
// Invariant: no zero coefficient is ever stored; the zero polynomial is the
// empty map.
class LaurentPoly {
public:
    std::map<int, Int> c;

    LaurentPoly() = default;
    LaurentPoly(int n) {
        if (n != 0) c[0] = n;
    }
    LaurentPoly(const Int& n) {
        if (n != 0) c[0] = n;
    }

    static LaurentPoly q_power(int k);
    static LaurentPoly term(const Int& coeff, int exp);

    bool is_zero() const { return c.empty(); }
    int min_exp() const;
    int max_exp() const;
    Int coeff(int e) const;
    Int lead() const;     // coefficient of max_exp
    Int content() const;  // gcd of all coefficients, >= 0 (0 for the zero poly)
    Int eval_one() const; // value at q = 1
    bool is_bar_invariant() const;
    bool is_nonneg() const;

    LaurentPoly bar() const;          // substitute q -> q^-1
    LaurentPoly shifted(int k) const; // multiply by q^k

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly operator-() const;
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c == b.c; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    std::string str() const;

private:
    void prune(int e);
};

// Exact division in Z[q, q^-1]; returns false (and leaves quot untouched) when
// b does not divide a.
bool divide_exact(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& quot);

// Gcd in the unique factorization domain Z[q, q^-1], with the unit fixed so
// the result has min_exp 0 and positive leading coefficient. Integer content
// is part of the gcd. laurent_gcd(0, 0) = 0.
LaurentPoly laurent_gcd(LaurentPoly a, LaurentPoly b);

// Balanced quantum integer [n] in the variable q_i = q^(d/2) where d = i.i is
// the (even, positive) squared length of the label: [n] = sum q_i^(n-1-2k).
LaurentPoly qint(int n, int d);
// [n]! in the same variable.
LaurentPoly qfact(int n, int d);

// Rational function in q, represented as num/den with integer-coefficient
// Laurent polynomials. Canonical form: den nonzero with min_exp 0 and positive
// leading coefficient, and num, den share no factor (neither polynomial nor
// integer content).
class RatFunc {
public:
    LaurentPoly num, den;

    RatFunc() : num(0), den(1) {}
    RatFunc(int n) : num(n), den(1) {}
    RatFunc(const Int& n) : num(n), den(1) {}
    RatFunc(LaurentPoly p) : num(std::move(p)), den(1) {}
    RatFunc(LaurentPoly n, LaurentPoly d) : num(std::move(n)), den(std::move(d)) {
        canonicalize();
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_laurent() const;
    LaurentPoly as_laurent() const; // throws std::domain_error when not a Laurent polynomial

    RatFunc bar() const { return RatFunc(num.bar(), den.bar()); }
    Rational eval_one() const; // throws std::domain_error on a pole at q = 1

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    RatFunc operator-() const;
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    std::string str() const;

private:
    void canonicalize();
};

} // namespace klr
