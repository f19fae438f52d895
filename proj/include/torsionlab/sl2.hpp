#pragma once

#include "torsionlab/algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace torsionlab {

// Two-variable polynomial model F_p[xi, eta]. Internally the generators
// sit in cohomological degree 2 so the graded machinery applies; the
// module's interface speaks the halved (Chow) grading, where xi and eta
// have degree 1.
const AlgebraModel& xieta_model(uint32_t p);

int64_t chow_degree(const Element& x);   // degree() / 2, homogeneous input

// SL_2 over F_p. Construction reduces entries mod p and rejects
// determinant != 1.
struct Mat2 {
    uint32_t p;
    uint32_t m11, m12, m21, m22;

    static Mat2 identity(uint32_t p);
    std::string to_string() const;       // "(m11,m12;m21,m22)"
    bool operator==(const Mat2&) const = default;
};

Mat2 mat2(uint32_t p, int64_t m11, int64_t m12, int64_t m21, int64_t m22);
Mat2 mul(const Mat2& g, const Mat2& h);

// Substitution action: xi -> m11 xi + m21 eta, eta -> m12 xi + m22 eta.
// A left action: act(mul(g,h), x) = act(g, act(h, x)).
Element act(const Mat2& g, const Element& x);

// q = xi^(p^2-p) + eta^(p-1) (xi^(p-1) - eta^(p-1))^(p-1), Chow degree p^2-p.
Element q_class(uint32_t p);
// r = xi eta (xi^(p-1) - eta^(p-1)), Chow degree p+1.
Element r_class(uint32_t p);

// The standard generating pair, in the order the invariance checks
// probe them (pinned so non-invariance witnesses are reproducible).
std::vector<Mat2> sl2_generators(uint32_t p);   // {(1,1;0,1), (0,-1;1,0)}
std::vector<Mat2> sl2_elements(uint32_t p);     // all p(p^2-1), lexicographic

enum class InvariantMode { Generators, FullGroup };

struct InvariantCheck {
    bool invariant;
    std::optional<Mat2> witness;        // a group element moving x, if any
};

// act(g, x) == x for every probed g. x must be homogeneous.
InvariantCheck check_invariant(const Element& x, InvariantMode mode);

// Dimension of the simultaneous fixed space of Chow-degree-d forms
// under the full group, by exact linear algebra. d is capped (12 for
// p = 3, 8 for p = 5, 6 otherwise) unless a positive cap overrides.
int invariant_dim(uint32_t p, uint32_t d, uint32_t cap = 0);
uint32_t invariant_dim_default_cap(uint32_t p);

// Number of monomials q^a r^b of Chow degree d, the expected value of
// invariant_dim at low degrees.
int qr_monomial_count(uint32_t p, uint32_t d);

} // namespace torsionlab
