#include "klr/fp.hpp"

namespace klr {

namespace {
std::uint64_t g_modulus = 2;

std::uint64_t norm(long long n) {
    const long long p = static_cast<long long>(g_modulus);
    long long r = n % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t inv_mod(std::uint64_t a) {
    if (a == 0) throw std::domain_error("Fp: division by zero");
    // extended euclid on (a, p)
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(g_modulus), nr = static_cast<long long>(a);
    while (nr != 0) {
        const long long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw std::domain_error("Fp: modulus is not prime to " + std::to_string(a));
    if (t < 0) t += static_cast<long long>(g_modulus);
    return static_cast<std::uint64_t>(t);
}
} // namespace

void Fp::set_modulus(std::uint64_t p) {
    if (p < 2 || p > (1ull << 31)) throw std::domain_error("Fp: modulus out of range");
    g_modulus = p;
}

std::uint64_t Fp::modulus() { return g_modulus; }

Fp::Fp(long long n) : v(norm(n)) {}

Fp::Fp(const Int& n) {
    Int r = n % Int(g_modulus);
    if (r < 0) r += Int(g_modulus);
    v = static_cast<std::uint64_t>(r);
}

Fp::Fp(const Rational& r) {
    const Fp num(Int(boost::multiprecision::numerator(r)));
    const Fp den(Int(boost::multiprecision::denominator(r)));
    if (den.v == 0) throw std::domain_error("Fp: denominator divisible by the modulus");
    v = (Fp(num) / den).v;
}

Fp Fp::operator-() const { return Fp(0) - *this; }

Fp operator+(Fp a, Fp b) {
    Fp r;
    r.v = (a.v + b.v) % g_modulus;
    return r;
}

Fp operator-(Fp a, Fp b) {
    Fp r;
    r.v = (a.v + g_modulus - b.v) % g_modulus;
    return r;
}

Fp operator*(Fp a, Fp b) {
    Fp r;
    r.v = (a.v * b.v) % g_modulus;
    return r;
}

Fp operator/(Fp a, Fp b) {
    Fp r;
    r.v = (a.v * inv_mod(b.v)) % g_modulus;
    return r;
}

} // namespace klr
