#include "doctest.h"

#include "torsionlab/sl2.hpp"

#include <stdexcept>

using namespace torsionlab;

TEST_CASE("matrices live in SL2") {
    CHECK_NOTHROW(mat2(3, 1, 1, 0, 1));
    CHECK_NOTHROW(mat2(3, 0, -1, 1, 0));    // entries reduce mod p
    CHECK_THROWS_AS(mat2(3, 1, 0, 0, 2), std::invalid_argument);    // det 2
    CHECK_THROWS_AS(mat2(3, 0, 0, 0, 0), std::invalid_argument);
    CHECK(mat2(3, 0, -1, 1, 0).m12 == 2);
    CHECK(Mat2::identity(5).to_string() == "(1,0;0,1)");
    CHECK(mat2(3, 1, 1, 0, 1).to_string() == "(1,1;0,1)");
}

TEST_CASE("group structure") {
    Mat2 t = mat2(3, 1, 1, 0, 1), s = mat2(3, 0, -1, 1, 0);
    CHECK(mul(t, Mat2::identity(3)) == t);
    CHECK(mul(mul(t, s), t) == mul(t, mul(s, t)));
    CHECK(sl2_elements(3).size() == 24);
    CHECK(sl2_elements(5).size() == 120);
    CHECK(sl2_generators(3) == std::vector<Mat2>{t, s});
}

TEST_CASE("substitution action, pinned instances") {
    const AlgebraModel& m = xieta_model(3);
    Element xi = m.gen("xi"), eta = m.gen("eta");
    Mat2 t = mat2(3, 1, 1, 0, 1), s = mat2(3, 0, -1, 1, 0);

    CHECK(act(Mat2::identity(3), xi * eta + xi.pow(2)) == xi * eta + xi.pow(2));
    CHECK(act(t, xi) == xi);
    CHECK(act(t, eta) == xi + eta);
    CHECK(act(s, xi) == eta);
    CHECK(act(s, eta) == -xi);

    Element r = r_class(3);
    CHECK(act(s, r) == r);
    CHECK(act(t, r) == r);

    // a left action on a composite element
    Element x = xi.pow(2) * eta + eta.pow(3);
    CHECK(act(mul(t, s), x) == act(t, act(s, x)));
}

TEST_CASE("q and r, pinned forms and degrees") {
    const AlgebraModel& m3 = xieta_model(3);
    CHECK(q_class(3) == parse(m3, "xi^6 + eta^2*(xi^2 - eta^2)^2"));
    CHECK(r_class(3) == parse(m3, "xi^3*eta - xi*eta^3"));
    CHECK(chow_degree(q_class(3)) == 6);
    CHECK(chow_degree(r_class(3)) == 4);
    CHECK(chow_degree(r_class(5)) == 6);
    CHECK(chow_degree(q_class(5)) == 20);
}

TEST_CASE("invariance of q and r") {
    for (uint32_t p : {3u, 5u, 7u}) {
        InvariantMode mode = p == 3 ? InvariantMode::FullGroup : InvariantMode::Generators;
        CHECK(check_invariant(q_class(p), mode).invariant);
        CHECK(check_invariant(r_class(p), mode).invariant);
    }
}

TEST_CASE("non-invariance produces the pinned witness") {
    const AlgebraModel& m = xieta_model(3);
    Element x = m.gen("xi") * m.gen("eta");
    InvariantCheck c = check_invariant(x, InvariantMode::Generators);
    CHECK_FALSE(c.invariant);
    REQUIRE(c.witness.has_value());
    CHECK(*c.witness == mat2(3, 1, 1, 0, 1));
    CHECK_FALSE(check_invariant(x, InvariantMode::FullGroup).invariant);

    // inhomogeneous input is a usage error, not a verdict
    CHECK_THROWS_AS(check_invariant(m.gen("xi") + m.gen("xi").pow(2), InvariantMode::Generators),
                    std::invalid_argument);
}

TEST_CASE("fixed-space dimensions, pinned table") {
    const int expected[12] = {0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2};
    for (uint32_t d = 1; d <= 12; ++d) {
        CHECK(invariant_dim(3, d) == expected[d - 1]);
        CHECK(invariant_dim(3, d) == qr_monomial_count(3, d));
    }
    CHECK(invariant_dim(3, 4) == 1);     // spanned by r
    CHECK(invariant_dim(3, 6) == 1);     // spanned by q
    CHECK(invariant_dim(3, 12) == 2);    // q^2 and r^3
    CHECK(invariant_dim(5, 6) == 1);
    CHECK(invariant_dim(3, 0) == 1);
    CHECK_THROWS_AS(invariant_dim(3, 13), std::invalid_argument);    // beyond default cap
    CHECK_NOTHROW(invariant_dim(3, 13, 14));                         // explicit override
}

TEST_CASE("monomial counting in q and r") {
    CHECK(qr_monomial_count(3, 0) == 1);
    CHECK(qr_monomial_count(3, 10) == 1);    // q r
    CHECK(qr_monomial_count(3, 12) == 2);    // q^2, r^3
    CHECK(qr_monomial_count(3, 5) == 0);
    CHECK(qr_monomial_count(5, 6) == 1);     // r
}
