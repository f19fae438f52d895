#pragma once

#include <cstdint>
#include <iosfwd>

namespace torsionlab {

bool is_prime(uint32_t n);

// Residue modulo a prime p, kept in [0, p). The modulus travels with the
// value so that mixed-modulus arithmetic is rejected instead of being
// silently wrong.
class Fp {
public:
    Fp(int64_t value, uint32_t p);

    uint32_t value() const { return v_; }
    uint32_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(Fp rhs) const;
    Fp operator-(Fp rhs) const;
    Fp operator*(Fp rhs) const;
    Fp operator-() const;

    Fp pow(uint64_t e) const;
    Fp inverse() const;        // throws std::domain_error on zero

    bool operator==(const Fp& rhs) const = default;

private:
    uint32_t v_;
    uint32_t p_;
};

std::ostream& operator<<(std::ostream& os, const Fp& a);

Fp inverse(Fp a);

// C(n, k) mod p, evaluated digit by digit in base p so no intermediate
// product leaves the word size. p must be prime.
Fp binom_mod_p(uint64_t n, uint64_t k, uint32_t p);

} // namespace torsionlab
