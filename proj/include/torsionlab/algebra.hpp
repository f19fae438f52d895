#pragma once

#include "torsionlab/fp.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace torsionlab {

enum class GenKind { Polynomial, Exterior };

struct GeneratorSpec {
    std::string name;
    int64_t degree;     // cohomological degree; parity must match kind
    GenKind kind;
    bool operator==(const GeneratorSpec&) const = default;
};

class AlgebraModel;

// Exponent vector over a model's generators with the weighted degree
// cached. Exterior generators never carry an exponent above 1 here;
// squares of odd-degree generators die in multiplication instead.
//
// Order: by degree, then lexicographically on the exponent vector in
// generator-declaration order, larger vector first. This makes the
// term order of Element canonical.
class Monomial {
public:
    Monomial(const AlgebraModel& m, std::vector<uint32_t> exps);
    static Monomial unit(const AlgebraModel& m);

    const std::vector<uint32_t>& exps() const { return exps_; }
    uint32_t exp(size_t i) const { return exps_[i]; }
    int64_t degree() const { return degree_; }
    bool is_unit() const;

    bool operator==(const Monomial& rhs) const { return exps_ == rhs.exps_; }
    bool operator<(const Monomial& rhs) const;

private:
    Monomial() = default;
    std::vector<uint32_t> exps_;
    int64_t degree_ = 0;
    friend class Element;
};

// Finitely supported F_p-linear combination of monomials. Coefficients
// are stored in [1, p); a vanishing term is removed, so is_zero() is
// just emptiness and operator== is term-map equality.
class Element {
public:
    explicit Element(const AlgebraModel& m);                          // zero
    Element(const AlgebraModel& m, const Monomial& mono, int64_t coeff);

    const AlgebraModel& model() const { return *model_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, uint32_t>& terms() const { return terms_; }

    Element operator+(const Element& rhs) const;
    Element operator-(const Element& rhs) const;
    Element operator*(const Element& rhs) const;
    Element operator-() const;
    Element scaled(int64_t c) const;
    Element pow(uint64_t e) const;

    bool operator==(const Element& rhs) const;

    bool is_homogeneous() const;            // zero counts as homogeneous
    int64_t degree() const;                 // throws unless homogeneous and nonzero
    std::map<int64_t, Element> homogeneous_components() const;

private:
    const AlgebraModel* model_;
    std::map<Monomial, uint32_t> terms_;
    void add_term(const Monomial& mono, int64_t coeff);
    friend Element substitute(const Element&, const std::map<std::string, Element>&);
};

// A graded-commutative presented algebra over F_p together with the
// values of the Bockstein and the reduced powers on its generators.
// Models are immutable once built except for the operation table, which
// factories fill in before handing the model out.
class AlgebraModel {
public:
    AlgebraModel(uint32_t p, std::vector<GeneratorSpec> generators);

    uint32_t prime() const { return p_; }
    size_t generator_count() const { return gens_.size(); }
    const GeneratorSpec& generator(size_t i) const { return gens_.at(i); }
    const std::vector<GeneratorSpec>& generators() const { return gens_; }
    int find_generator(std::string_view name) const;    // -1 when absent

    Element zero() const;
    Element one() const;
    Element gen(size_t i) const;
    Element gen(std::string_view name) const;
    Element gen_power(size_t i, uint32_t e) const;

    // Operation table. Degrees are checked: deg beta(g) = deg g + 1 and
    // deg P^i(g) = deg g + 2 i (p - 1); values must be homogeneous.
    void set_bockstein(std::string_view gen_name, const Element& value);
    void set_power_op(std::string_view gen_name, uint32_t i, const Element& value);

    // Table lookups with the instability defaults: an explicit entry
    // wins; otherwise P^i(g) = 0 above the range, g^p at 2i = deg g for
    // polynomial g, 0 for exterior g at any i >= 1.
    Element bockstein_on_gen(size_t i) const;
    Element power_on_gen(uint32_t k, size_t i) const;
    bool has_bockstein_entry(size_t i) const;

    bool same_presentation(const AlgebraModel& other) const;

private:
    uint32_t p_;
    std::vector<GeneratorSpec> gens_;
    std::map<size_t, Element> bockstein_;
    std::map<std::pair<size_t, uint32_t>, Element> powers_;
};

// Simultaneous substitution. Every image must live in one common model
// and be homogeneous of its generator's degree (zero is allowed);
// generators without an image map to themselves, which requires the
// target model to contain a same-named generator of the same degree.
Element substitute(const Element& x, const std::map<std::string, Element>& images);

// Expression grammar: identifiers, non-negative integer literals, + - *
// ^, parentheses. ^ takes a literal exponent and binds tighter than *.
Element parse(const AlgebraModel& m, std::string_view text);

std::string format(const Element& x);
std::string format(const Monomial& mono, const AlgebraModel& m);

} // namespace torsionlab
