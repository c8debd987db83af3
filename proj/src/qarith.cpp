#include "klr/qarith.hpp"

#include <sstream>

namespace klr {

using boost::multiprecision::gcd;

LaurentPoly LaurentPoly::q_power(int k) {
    LaurentPoly p;
    p.c[k] = 1;
    return p;
}

LaurentPoly LaurentPoly::term(const Int& coeff, int exp) {
    LaurentPoly p;
    if (coeff != 0) p.c[exp] = coeff;
    return p;
}

int LaurentPoly::min_exp() const {
    if (c.empty()) throw std::domain_error("min_exp of zero polynomial");
    return c.begin()->first;
}

int LaurentPoly::max_exp() const {
    if (c.empty()) throw std::domain_error("max_exp of zero polynomial");
    return c.rbegin()->first;
}

Int LaurentPoly::coeff(int e) const {
    auto it = c.find(e);
    return it == c.end() ? Int(0) : it->second;
}

Int LaurentPoly::lead() const {
    if (c.empty()) throw std::domain_error("lead of zero polynomial");
    return c.rbegin()->second;
}

Int LaurentPoly::content() const {
    Int g = 0;
    for (const auto& [e, v] : c) g = gcd(g, v);
    if (g < 0) g = -g;
    return g;
}

Int LaurentPoly::eval_one() const {
    Int s = 0;
    for (const auto& [e, v] : c) s += v;
    return s;
}

bool LaurentPoly::is_bar_invariant() const { return *this == bar(); }

bool LaurentPoly::is_nonneg() const {
    for (const auto& [e, v] : c)
        if (v < 0) return false;
    return true;
}

LaurentPoly LaurentPoly::bar() const {
    LaurentPoly r;
    for (const auto& [e, v] : c) r.c[-e] = v;
    return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly r;
    for (const auto& [e, v] : c) r.c[e + k] = v;
    return r;
}

void LaurentPoly::prune(int e) {
    auto it = c.find(e);
    if (it != c.end() && it->second == 0) c.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, v] : o.c) {
        c[e] += v;
        prune(e);
    }
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, v] : o.c) {
        c[e] -= v;
        prune(e);
    }
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [e, v] : c) r.c[e] = -v;
    return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, va] : a.c)
        for (const auto& [eb, vb] : b.c) r.c[ea + eb] += va * vb;
    for (auto it = r.c.begin(); it != r.c.end();)
        it = it->second == 0 ? r.c.erase(it) : std::next(it);
    return r;
}

std::string LaurentPoly::str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : c) {
        Int a = v;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (e == 0) {
            os << a.str();
        } else {
            if (a != 1) os << a.str() << "*";
            os << "q";
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

bool divide_exact(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& quot) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) {
        quot = LaurentPoly();
        return true;
    }
    int shift = a.min_exp() - b.min_exp();
    LaurentPoly rem = a.shifted(-a.min_exp());
    LaurentPoly d = b.shifted(-b.min_exp());
    LaurentPoly q;
    int degd = d.max_exp();
    Int leadd = d.lead();
    while (!rem.is_zero()) {
        int degr = rem.max_exp();
        if (degr < degd) return false;
        Int lr = rem.lead();
        if (lr % leadd != 0) return false;
        LaurentPoly t = LaurentPoly::term(lr / leadd, degr - degd);
        q += t;
        rem -= t * d;
    }
    quot = q.shifted(shift);
    return true;
}

namespace {

// Primitive parts with min_exp 0 and positive leading coefficient.
LaurentPoly primitive(const LaurentPoly& p) {
    if (p.is_zero()) return p;
    Int ct = p.content();
    if (p.lead() < 0) ct = -ct;
    LaurentPoly r;
    int m = p.min_exp();
    for (const auto& [e, v] : p.c) r.c[e - m] = v / ct;
    return r;
}

// Pseudo-remainder of a by b in Z[q]; both inputs have min_exp >= 0.
LaurentPoly pseudo_rem(LaurentPoly a, const LaurentPoly& b) {
    int degb = b.max_exp();
    Int lb = b.lead();
    while (!a.is_zero() && a.max_exp() >= degb) {
        Int la = a.lead();
        int sh = a.max_exp() - degb;
        LaurentPoly scaled;
        for (const auto& [e, v] : a.c) scaled.c[e] = v * lb;
        a = scaled;
        a -= LaurentPoly::term(la, sh) * b;
    }
    return a;
}

} // namespace

LaurentPoly laurent_gcd(LaurentPoly a, LaurentPoly b) {
    if (a.is_zero() && b.is_zero()) return LaurentPoly();
    if (a.is_zero()) return primitive(b) * LaurentPoly(b.content());
    if (b.is_zero()) return primitive(a) * LaurentPoly(a.content());
    Int gc = gcd(a.content(), b.content());
    LaurentPoly A = primitive(a), B = primitive(b);
    if (A.max_exp() < B.max_exp()) std::swap(A, B);
    while (!B.is_zero()) {
        LaurentPoly R = primitive(pseudo_rem(A, B));
        A = B;
        B = R;
    }
    return primitive(A) * LaurentPoly(gc);
}

LaurentPoly qint(int n, int d) {
    if (d <= 0 || d % 2 != 0) throw std::domain_error("qint: squared length must be even positive");
    if (n < 0) throw std::domain_error("qint: negative argument");
    LaurentPoly r;
    for (int k = 0; k < n; ++k) r.c[(d / 2) * (n - 1 - 2 * k)] += 1;
    for (auto it = r.c.begin(); it != r.c.end();)
        it = it->second == 0 ? r.c.erase(it) : std::next(it);
    return r;
}

LaurentPoly qfact(int n, int d) {
    LaurentPoly r(1);
    for (int k = 2; k <= n; ++k) r *= qint(k, d);
    return r;
}

void RatFunc::canonicalize() {
    if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num.is_zero()) {
        den = LaurentPoly(1);
        return;
    }
    LaurentPoly g = laurent_gcd(num, den);
    LaurentPoly qn, qd;
    if (!divide_exact(num, g, qn) || !divide_exact(den, g, qd))
        throw std::domain_error("RatFunc: gcd does not divide");
    int k = qd.min_exp();
    num = qn.shifted(-k);
    den = qd.shifted(-k);
    if (den.lead() < 0) {
        num = -num;
        den = -den;
    }
}

bool RatFunc::is_laurent() const {
    LaurentPoly q;
    return divide_exact(num, den, q);
}

LaurentPoly RatFunc::as_laurent() const {
    LaurentPoly q;
    if (!divide_exact(num, den, q)) throw std::domain_error("RatFunc: not a Laurent polynomial");
    return q;
}

Rational RatFunc::eval_one() const {
    Int d = den.eval_one();
    if (d == 0) throw std::domain_error("RatFunc: pole at q = 1");
    Int n = num.eval_one();
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rational(n, d);
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    num = num * o.den + o.num * den;
    den = den * o.den;
    canonicalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
    num = num * o.den - o.num * den;
    den = den * o.den;
    canonicalize();
    return *this;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    num = num * o.num;
    den = den * o.den;
    canonicalize();
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
    if (o.num.is_zero()) throw std::domain_error("RatFunc: division by zero");
    num = num * o.den;
    den = den * o.num;
    canonicalize();
    return *this;
}

RatFunc RatFunc::operator-() const {
    RatFunc r;
    r.num = -num;
    r.den = den;
    return r;
}

std::string RatFunc::str() const {
    if (den == LaurentPoly(1)) return num.str();
    return "(" + num.str() + ")/(" + den.str() + ")";
}

} // namespace klr
