#include "torsionlab/fp.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace torsionlab {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint32_t d = 3; static_cast<uint64_t>(d) * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

static void require_prime(uint32_t p) {
    if (!is_prime(p))
        throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

Fp::Fp(int64_t value, uint32_t p) : p_(p) {
    require_prime(p);
    int64_t r = value % static_cast<int64_t>(p);
    if (r < 0) r += p;
    v_ = static_cast<uint32_t>(r);
}

static void require_same(const Fp& a, const Fp& b) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("mixed moduli " + std::to_string(a.modulus()) +
                                    " and " + std::to_string(b.modulus()));
}

Fp Fp::operator+(Fp rhs) const {
    require_same(*this, rhs);
    return Fp(static_cast<int64_t>(v_) + rhs.v_, p_);
}

Fp Fp::operator-(Fp rhs) const {
    require_same(*this, rhs);
    return Fp(static_cast<int64_t>(v_) - rhs.v_, p_);
}

Fp Fp::operator*(Fp rhs) const {
    require_same(*this, rhs);
    return Fp(static_cast<int64_t>(v_) * rhs.v_, p_);
}

Fp Fp::operator-() const { return Fp(-static_cast<int64_t>(v_), p_); }

Fp Fp::pow(uint64_t e) const {
    Fp acc(1, p_), base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Fp Fp::inverse() const {
    if (v_ == 0) throw std::domain_error("inverse of zero mod " + std::to_string(p_));
    return pow(p_ - 2);   // Fermat
}

Fp inverse(Fp a) { return a.inverse(); }

std::ostream& operator<<(std::ostream& os, const Fp& a) {
    return os << a.value() << " (mod " << a.modulus() << ")";
}

// C(a, b) for 0 <= b <= a < p, multiplicatively.
static uint32_t small_binom(uint32_t a, uint32_t b, uint32_t p) {
    if (b > a) return 0;
    Fp num(1, p), den(1, p);
    for (uint32_t j = 0; j < b; ++j) {
        num = num * Fp(static_cast<int64_t>(a) - j, p);
        den = den * Fp(static_cast<int64_t>(j) + 1, p);
    }
    return (num * den.inverse()).value();
}

Fp binom_mod_p(uint64_t n, uint64_t k, uint32_t p) {
    require_prime(p);
    if (k > n) return Fp(0, p);
    uint32_t acc = 1;
    while ((n | k) != 0) {
        uint32_t nd = static_cast<uint32_t>(n % p);
        uint32_t kd = static_cast<uint32_t>(k % p);
        if (kd > nd) return Fp(0, p);   // Lucas: one zero digit kills the product
        acc = static_cast<uint32_t>((static_cast<uint64_t>(acc) * small_binom(nd, kd, p)) % p);
        n /= p;
        k /= p;
    }
    return Fp(acc, p);
}

} // namespace torsionlab
