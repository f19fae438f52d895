#pragma once

#include "torsionlab/algebra.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace torsionlab {

// One operation letter. power == 0 encodes the Bockstein; power >= 1 is
// the reduced power of that index.
struct OpToken {
    uint32_t power;
    static OpToken beta() { return OpToken{0}; }
    static OpToken P(uint32_t i) { return OpToken{i}; }
    bool is_beta() const { return power == 0; }
    auto operator<=>(const OpToken&) const = default;
};

// A word in the Bockstein and the reduced powers at an odd prime,
// applied to arguments right to left: the word "B P3 P1" means
// beta(P^3(P^1(x))). P^0 letters are dropped on construction.
class OpWord {
public:
    OpWord(uint32_t p, std::vector<OpToken> tokens);
    static OpWord parse(uint32_t p, std::string_view text);   // "B P9 P3 P1"

    uint32_t prime() const { return p_; }
    const std::vector<OpToken>& tokens() const { return tokens_; }
    bool empty() const { return tokens_.empty(); }

    // Degree shift: +1 per Bockstein, +2 i (p - 1) per reduced power.
    int64_t degree() const;

    // An admissible word has no Bockstein pair and satisfies
    // s_i >= p s_{i+1} + eps_i between consecutive reduced powers,
    // where eps_i is 1 when a Bockstein sits between them.
    bool is_admissible() const;

    std::string to_string() const;
    bool operator==(const OpWord& rhs) const;
    bool operator<(const OpWord& rhs) const;

private:
    uint32_t p_;
    std::vector<OpToken> tokens_;
};

int64_t word_degree(const OpWord& w);

// F_p-linear combination of admissible words, the normal form produced
// by adem_normalize. Coefficients live in [1, p).
class AdmissibleSum {
public:
    explicit AdmissibleSum(uint32_t p);

    uint32_t prime() const { return p_; }
    const std::map<OpWord, uint32_t>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const OpWord& w, int64_t c);

    bool operator==(const AdmissibleSum& rhs) const;
    std::string to_string() const;

private:
    uint32_t p_;
    std::map<OpWord, uint32_t> terms_;
};

// Rewrites a word as a combination of admissible words by applying the
// straightening relations to the leftmost violation until none is left.
AdmissibleSum adem_normalize(const OpWord& w);

// Action on elements of a model carrying an operation table. Uses the
// Bockstein derivation rule and the Cartan formula, with instability on
// generators supplied by the model.
Element apply(const OpWord& w, const Element& x);
Element apply(const AdmissibleSum& s, const Element& x);
Element apply_beta(const Element& x);
Element apply_power(uint32_t k, const Element& x);

} // namespace torsionlab
