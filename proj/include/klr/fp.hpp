#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "klr/qarith.hpp"

namespace klr {

// Prime field with a process-wide runtime modulus, shaped to slot into the
// field-generic linear algebra (construction from int, +, -, *, /, ==).
struct Fp {
    static void set_modulus(std::uint64_t p);
    static std::uint64_t modulus();

    std::uint64_t v = 0;

    Fp() = default;
    Fp(int n) : Fp(static_cast<long long>(n)) {}
    Fp(long long n);
    explicit Fp(const Int& n);
    explicit Fp(const Rational& r);

    Fp operator-() const;
    friend Fp operator+(Fp a, Fp b);
    friend Fp operator-(Fp a, Fp b);
    friend Fp operator*(Fp a, Fp b);
    friend Fp operator/(Fp a, Fp b);
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
    std::string str() const { return std::to_string(v); }
};

} // namespace klr
