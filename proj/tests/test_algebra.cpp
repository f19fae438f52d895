#include "doctest.h"

#include "torsionlab/algebra.hpp"
#include "torsionlab/checks.hpp"
#include "torsionlab/models.hpp"

#include <random>
#include <stdexcept>

using namespace torsionlab;

namespace {

// small mixed model used throughout: x, y polynomial (degree 2),
// e, z exterior (degree 1)
AlgebraModel mixed_model() {
    return AlgebraModel(3, {{"x", 2, GenKind::Polynomial},
                            {"y", 2, GenKind::Polynomial},
                            {"e", 1, GenKind::Exterior},
                            {"z", 1, GenKind::Exterior}});
}

} // namespace

TEST_CASE("model construction rejects bad presentations") {
    CHECK_THROWS_AS(AlgebraModel(4, {{"x", 2, GenKind::Polynomial}}), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraModel(3, {{"x", 1, GenKind::Polynomial}}), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraModel(3, {{"x", 2, GenKind::Exterior}}), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraModel(3, {{"x", 0, GenKind::Polynomial}}), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraModel(3, {{"x", 2, GenKind::Polynomial}, {"x", 2, GenKind::Polynomial}}),
                    std::invalid_argument);
}

TEST_CASE("monomials keep exterior exponents at most 1") {
    AlgebraModel m = mixed_model();
    CHECK_NOTHROW(Monomial(m, {3, 0, 1, 1}));
    CHECK_THROWS_AS(Monomial(m, {0, 0, 2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Monomial(m, {0, 0}), std::invalid_argument);    // wrong length
    CHECK(Monomial(m, {1, 2, 1, 0}).degree() == 2 + 4 + 1);
    CHECK(Monomial::unit(m).is_unit());
}

TEST_CASE("koszul signs and exterior squares") {
    AlgebraModel m = mixed_model();
    Element e = m.gen("e"), z = m.gen("z"), x = m.gen("x"), y = m.gen("y");
    CHECK((e * e).is_zero());
    CHECK((e * z * e * z).is_zero());
    CHECK(e * z == -(z * e));
    CHECK(e * z == (z * e).scaled(2));    // p - 1 apart at p = 3
    CHECK(x * y == y * x);
    CHECK((x + y) * (x - y) == x * x - y * y);
    CHECK(x * e == e * x);    // even times odd commutes without sign
}

TEST_CASE("element arithmetic and canonical form") {
    AlgebraModel m = mixed_model();
    Element x = m.gen("x"), y = m.gen("y");
    CHECK((x + x + x).is_zero());    // p = 3
    CHECK(x - x == m.zero());
    CHECK(x * m.one() == x);
    CHECK(m.zero() * x == m.zero());
    CHECK(x.scaled(5) == x.scaled(2));
    CHECK((x + y).pow(3) == x.pow(3) + y.pow(3));    // freshman's dream mod 3
    CHECK(x.pow(0) == m.one());
}

TEST_CASE("degrees and homogeneous components") {
    AlgebraModel m = mixed_model();
    Element x = m.gen("x"), e = m.gen("e");
    CHECK((x * x).degree() == 4);
    CHECK(m.zero().is_homogeneous());
    CHECK_THROWS_AS(m.zero().degree(), std::domain_error);
    Element mixed = x + e;
    CHECK_FALSE(mixed.is_homogeneous());
    CHECK_THROWS_AS(mixed.degree(), std::domain_error);
    auto parts = mixed.homogeneous_components();
    CHECK(parts.size() == 2);
    CHECK(parts.at(1) == e);
    CHECK(parts.at(2) == x);
}

TEST_CASE("expression grammar") {
    AlgebraModel m = mixed_model();
    CHECK(parse(m, "x^2*e + 3*y") == Element(m, Monomial(m, {2, 0, 1, 0}), 1));    // 3*y dies mod 3
    Element two_terms = parse(m, "x^2*e + 2*y");
    CHECK(two_terms.term_count() == 2);
    CHECK(parse(m, "z^2").is_zero());    // exterior square canonicalizes away
    CHECK(parse(m, "x - x").is_zero());
    CHECK(parse(m, "-2*x") == parse(m, "x"));
    CHECK(parse(m, "(x + y)^2") == parse(m, "x^2 + 2*x*y + y^2"));
    CHECK(parse(m, "5") == m.one().scaled(5));
}

TEST_CASE("malformed expressions are rejected with positions") {
    AlgebraModel m = mixed_model();
    CHECK_THROWS_AS(parse(m, "w"), std::invalid_argument);         // unknown identifier
    CHECK_THROWS_AS(parse(m, "x +"), std::invalid_argument);
    CHECK_THROWS_AS(parse(m, "(x"), std::invalid_argument);
    CHECK_THROWS_AS(parse(m, "x^"), std::invalid_argument);
    CHECK_THROWS_AS(parse(m, "x^e"), std::invalid_argument);       // exponent must be a literal
    CHECK_THROWS_AS(parse(m, ""), std::invalid_argument);
}

TEST_CASE("formatting is canonical and parse round-trips it") {
    const AlgebraModel& m = cpmup_model(3);
    CHECK(format(m.zero()) == "0");
    CHECK(format(m.one()) == "1");
    CHECK(format(m.one().scaled(2)) == "2");
    CHECK(format(parse(m, "xi*eta^3 + xi^3*eta")) == "xi^3*eta + xi*eta^3");
    CHECK(format(parse(m, "eta - xi")) == "2*xi + eta");

    std::mt19937_64 rng(20260816);
    for (int t = 0; t < 1000; ++t) {
        uint32_t p = (t % 2 == 0) ? 3 : 5;
        Element x = random_cpmup_element(rng, p, 4, 5);
        CHECK(parse(cpmup_model(p), format(x)) == x);
    }
}

TEST_CASE("substitution homomorphisms") {
    const AlgebraModel& m = cpmup_model(3);
    Element xi = m.gen("xi"), eta = m.gen("eta");

    CHECK(substitute(xi * eta + xi, {}) == xi * eta + xi);    // identity map

    // xi -> eta, eta -> -xi sends xi*eta to -xi*eta = 2*xi*eta
    std::map<std::string, Element> rot{{"xi", eta}, {"eta", -xi}};
    CHECK(substitute(xi * eta, rot) == (xi * eta).scaled(2));

    // xi -> xi, eta -> xi + eta fixes r = xi*eta*(xi^2 - eta^2) at p = 3
    std::map<std::string, Element> shear{{"eta", xi + eta}};
    Element r = parse(m, "xi^3*eta - xi*eta^3");
    CHECK(substitute(r, shear) == r);

    // degree-mismatched image is rejected
    CHECK_THROWS_AS(substitute(xi, {{"xi", m.gen("a")}}), std::invalid_argument);

    // multiplicative on random pairs
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        Element u = random_cpmup_element(rng, 3, 3, 3);
        Element v = random_cpmup_element(rng, 3, 3, 3);
        CHECK(substitute(u * v, shear) == substitute(u, shear) * substitute(v, shear));
    }
}

TEST_CASE("mixed models are rejected") {
    AlgebraModel m1 = mixed_model();
    AlgebraModel m2 = mixed_model();    // same presentation, different object: allowed
    CHECK_NOTHROW((void)(m1.gen("x") + m2.gen("x")));
    const AlgebraModel& other = cpmup_model(3);
    CHECK_THROWS_AS((void)(m1.gen("x") + other.gen("xi")), std::invalid_argument);
    CHECK_THROWS_AS((void)(m1.gen("x") * other.gen("xi")), std::invalid_argument);
}

TEST_CASE("operation table guards degrees") {
    AlgebraModel m = mixed_model();
    CHECK_THROWS_AS(m.set_bockstein("x", m.gen("y")), std::invalid_argument);    // deg 2, want 3
    CHECK_NOTHROW(m.set_bockstein("e", m.gen("x")));
    CHECK_THROWS_AS(m.set_power_op("x", 1, m.gen("x")), std::invalid_argument);  // deg 2, want 6
    CHECK_NOTHROW(m.set_power_op("x", 1, m.gen_power(0, 3)));
}
