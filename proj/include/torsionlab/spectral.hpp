#pragma once

#include "torsionlab/fp.hpp"
#include "torsionlab/models.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace torsionlab {

struct Bidegree {
    int64_t s, t;
    bool operator==(const Bidegree&) const = default;
};

// The two class shapes tracked on the second page: a y-class sits in
// column (its degree, 0); a power v^e of the degree-2 fiber class sits
// in row (0, 2e).
struct SpectralClass {
    enum class Kind { YClass, VPower };
    Kind kind;
    Bidegree bidegree;

    static SpectralClass y_class(uint32_t p, const IndexSeq& I);
    static SpectralClass v_power(int64_t e);
};

struct DifferentialTarget {
    IndexSeq target;        // I' = (k, I)
    int64_t index;          // 2 (p^(k+1) + 1)
    Bidegree source_bidegree;
    Bidegree target_bidegree;
};

// The differential sending y_I v^(p^(k+1)) to y_I' with I' = (k, I).
// k must lie strictly below the least entry of I; an empty I yields
// I' = (k). The target sits at (deg y_I', 0); the source bidegree is
// derived back from it through the page conventions (s - index,
// index - 1), which matches the product class's total degree though its
// (s, t) split sits one step off the bare v-power row.
DifferentialTarget differential_target(uint32_t p, const IndexSeq& I, uint32_t k);
DifferentialTarget differential_target(uint32_t p, uint32_t k);   // empty I

// The i-th elementary symmetric polynomial in n copies of one variable
// v collapses to C(n,i) v^i: the exact integer and its residue.
struct ChernRestriction {
    uint64_t coefficient;
    Fp residue;
};
ChernRestriction chern_diag_restriction(uint32_t i, uint32_t n, uint32_t p);

// C(n,p)^(least entry of I + 1) mod p, the scalar by which the
// differential annihilates the class. Nonzero exactly when p^2 does not
// divide n. Requires p | n and at least two entries in I.
//
// The coefficient's exponent is pinned to least+1; the companion
// exponent "least" also appears in print for the same scalar, and the
// two disagree as written. Nonzeroness, which is all any verdict uses,
// is the same either way.
Fp killing_coefficient(uint32_t n, uint32_t p, const IndexSeq& I);

enum class VerdictStatus { Nonzero, Zero, Unknown };

std::string to_string(VerdictStatus s);

struct Verdict {
    VerdictStatus status;
    std::string citation;            // empty only for Unknown
    std::optional<Fp> scalar;        // present when arithmetic decides
};

// Closed rule table, never extrapolated:
//   length 1, p odd, p | n                 -> Nonzero  [Thm 1.1(1)]
//   length >= 2, p | n, p^2 does not | n   -> Zero     [Thm 1.2] + scalar
//   I = (0), p does not divide n           -> Zero     [Prop p-torsion lowest]
//   anything else                          -> Unknown
Verdict ypI_verdict(uint32_t n, uint32_t p, const IndexSeq& I);

inline constexpr const char* kCiteNonzeroLengthOne = "Thm 1.1(1)";
inline constexpr const char* kCiteKilledLongerSeq = "Thm 1.2";
inline constexpr const char* kCiteLowestTorsion = "Prop p-torsion lowest";

} // namespace torsionlab
