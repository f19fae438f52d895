#include "torsionlab/spectral.hpp"

#include <stdexcept>

namespace torsionlab {

SpectralClass SpectralClass::y_class(uint32_t p, const IndexSeq& I) {
    return SpectralClass{Kind::YClass, Bidegree{ypI_degree(p, I), 0}};
}

SpectralClass SpectralClass::v_power(int64_t e) {
    if (e < 0) throw std::invalid_argument("negative fiber exponent");
    return SpectralClass{Kind::VPower, Bidegree{0, 2 * e}};
}

static int64_t pow_i64(uint32_t p, uint32_t e) {
    __int128 v = 1;
    for (uint32_t i = 0; i < e; ++i) {
        v *= p;
        if (v > INT64_MAX / 8) throw std::overflow_error("prime power overflows");
    }
    return static_cast<int64_t>(v);
}

DifferentialTarget differential_target(uint32_t p, const IndexSeq& I, uint32_t k) {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("odd prime required");
    if (!I.entries.empty() && k >= I.least())
        throw std::invalid_argument("k must lie strictly below the least entry of I");

    std::vector<uint32_t> entries{k};
    entries.insert(entries.end(), I.entries.begin(), I.entries.end());
    IndexSeq target(std::move(entries));

    int64_t index = 2 * (pow_i64(p, k + 1) + 1);
    Bidegree target_bd{ypI_degree(p, target), 0};
    Bidegree source_bd{target_bd.s - index, index - 1};
    return DifferentialTarget{target, index, source_bd, target_bd};
}

DifferentialTarget differential_target(uint32_t p, uint32_t k) {
    return differential_target(p, IndexSeq{}, k);
}

ChernRestriction chern_diag_restriction(uint32_t i, uint32_t n, uint32_t p) {
    if (i < 1 || i > n) throw std::invalid_argument("need 1 <= i <= n");
    unsigned __int128 acc = 1;
    uint32_t k = std::min(i, n - i);
    for (uint32_t j = 1; j <= k; ++j) {
        acc = acc * (n - k + j) / j;
        if (acc > UINT64_MAX) throw std::overflow_error("coefficient out of 64-bit range");
    }
    uint64_t exact = static_cast<uint64_t>(acc);
    return ChernRestriction{exact, Fp(static_cast<int64_t>(exact % p), p)};
}

Fp killing_coefficient(uint32_t n, uint32_t p, const IndexSeq& I) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (n == 0 || n % p != 0) throw std::invalid_argument("p must divide n");
    if (I.size() < 2) throw std::invalid_argument("index sequence must have length >= 2");
    return binom_mod_p(n, p, p).pow(I.least() + 1);
}

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Nonzero: return "Nonzero";
        case VerdictStatus::Zero: return "Zero";
        case VerdictStatus::Unknown: return "Unknown";
    }
    return "Unknown";
}

Verdict ypI_verdict(uint32_t n, uint32_t p, const IndexSeq& I) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (I.entries.empty()) throw std::invalid_argument("empty index sequence");

    bool divides = (n % p == 0);
    if (I.size() == 1 && p != 2 && divides)
        return Verdict{VerdictStatus::Nonzero, kCiteNonzeroLengthOne, std::nullopt};
    if (I.size() >= 2 && divides && (n % (static_cast<uint64_t>(p) * p) != 0))
        return Verdict{VerdictStatus::Zero, kCiteKilledLongerSeq, killing_coefficient(n, p, I)};
    if (I.size() == 1 && I.least() == 0 && !divides)
        return Verdict{VerdictStatus::Zero, kCiteLowestTorsion, std::nullopt};
    return Verdict{VerdictStatus::Unknown, "", std::nullopt};
}

} // namespace torsionlab
