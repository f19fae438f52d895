#pragma once

#include "torsionlab/algebra.hpp"
#include "torsionlab/steenrod.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace torsionlab {

// Cohomology of B(C_p x mu_p) mod p: exterior a, b in degree 1 and
// polynomial xi, eta in degree 2, with B(a) = xi, B(b) = eta and the
// degree-2 power ops forced by instability. Models are built once per
// prime and live for the whole process.
const AlgebraModel& cpmup_model(uint32_t p);

// zeta = xi b - a eta, the Bockstein-closed degree-3 class.
Element zeta_class(uint32_t p);

// r_k = xi eta (xi^(p^(k+1) - 1) - eta^(p^(k+1) - 1)), written directly.
Element r_k_direct(uint32_t p, uint32_t k);

// The same classes through the operation pipeline: r_0 = B P^1 (zeta),
// then r_k = P^(p^k)(r_(k-1)). Must agree with r_k_direct.
Element r_k_via_steenrod(uint32_t p, uint32_t k);

// Strictly increasing sequence of torsion indices, least entry first.
struct IndexSeq {
    std::vector<uint32_t> entries;

    IndexSeq() = default;
    explicit IndexSeq(std::vector<uint32_t> e);
    static IndexSeq parse(std::string_view text);   // "0,1" or "(0,1)"

    size_t size() const { return entries.size(); }
    uint32_t least() const;                          // the i_m of the word
    std::string to_string() const;                   // "(0,1)"
    bool operator==(const IndexSeq&) const = default;
    bool operator<(const IndexSeq& rhs) const { return entries < rhs.entries; }
};

// Degree bookkeeping for the formal classes: deg x1 = 3,
// deg xbar_k = 2 p^(k+1) + 1, deg y_I = 1 + sum_j (2 p^(i_j + 1) + 1).
int64_t x1_degree();
int64_t xbar_degree(uint32_t p, uint32_t k);
int64_t ypI_degree(uint32_t p, const IndexSeq& I);

// The composite word B P^(p^k) P^(p^(k-1)) ... P^p P^1. The exponent
// ladder uses p-powers; a ladder of plain integers k, ..., 1 is the
// other convention seen for these words, but only the p-power ladder
// has the degree to land on r_k, so that is the one built here.
OpWord y_word(uint32_t p, uint32_t k);

struct YWordCheck {
    bool ok;
    OpWord word;
    Element got;        // word applied to zeta in the B(C_p x mu_p) model
    Element want;       // r_k_direct of the top index
};

// Verifies that y_word(p, k) sends zeta to r_k, which is the
// restriction identity behind the torsion classes.
YWordCheck verify_y_word(uint32_t p, uint32_t k);

// One monomial of the formal mod-p basis of H*(K(Z,3)): an optional x1
// factor, squarefree xbar factors, and y factors with arbitrary
// multiplicity.
struct KZ3Entry {
    bool has_x1 = false;
    std::vector<uint32_t> xbars;                         // ascending k
    std::vector<std::pair<IndexSeq, uint32_t>> ys;       // (I, exponent), ascending
    int64_t degree = 0;
    std::string label;
};

struct KZ3Basis {
    uint32_t p;
    int64_t cap;
    std::vector<KZ3Entry> entries;                       // by degree, then label
};

int64_t kz3_default_cap(uint32_t p);                     // 2 p^2 + 4

// All basis monomials of degree <= D, sorted by (degree, label). The
// one-argument form uses the default cap. Throws when the cap would
// make the list explode past the enumeration budget.
KZ3Basis kz3_enumerate(uint32_t p, int64_t D);
KZ3Basis kz3_enumerate(uint32_t p);

} // namespace torsionlab
