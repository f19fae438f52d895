#include "doctest.h"

#include "torsionlab/cosets.hpp"

#include <numeric>
#include <stdexcept>

using namespace torsionlab;

TEST_CASE("permutation basics") {
    Perm s = make_perm({1, 4, 5, 2, 3, 6});
    CHECK(s.n() == 6);
    CHECK(s(1) == 3);    // 0-based: position 1 holds image 4
    CHECK(s.to_string() == "[1 4 5 2 3 6]");
    CHECK(s.compose(s.inverse()) == Perm::identity(6));
    CHECK(s.inverse().compose(s) == Perm::identity(6));

    Perm t = make_perm({2, 1, 3});
    Perm u = make_perm({1, 3, 2});
    // (t . u)(2) = t(u(2)) = t(3) = 3, with 1-based points
    CHECK(t.compose(u) == make_perm({2, 3, 1}));

    CHECK_THROWS_AS(make_perm({1, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(make_perm({0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(make_perm({1, 2, 4}), std::invalid_argument);
}

TEST_CASE("compositions") {
    Composition W = Composition::parse("3,3");
    CHECK(W.parts == std::vector<uint32_t>{3, 3});
    CHECK(Composition::parse("(3,3)") == W);
    CHECK(W.total() == 6);
    CHECK(W.to_string() == "(3,3)");
    CHECK(W.offset(0) == 0);
    CHECK(W.offset(1) == 3);
    CHECK(Composition::parse("2,0,3").parts == std::vector<uint32_t>{2, 0, 3});
    CHECK_THROWS_AS(Composition::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Composition::parse("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(Composition::parse("a"), std::invalid_argument);
}

TEST_CASE("young subgroups") {
    YoungSubgroup sw = young_subgroup(Composition{{3, 3}});
    CHECK(sw.order() == 36);
    CHECK(young_subgroup(Composition{{6}}).order() == 720);
    CHECK(young_subgroup(Composition{{2, 0, 3}}).order() == 12);    // zero block is trivial

    CHECK(sw.contains(Perm::identity(6)));
    CHECK(sw.contains(make_perm({2, 1, 3, 4, 5, 6})));
    CHECK(sw.contains(make_perm({3, 1, 2, 6, 4, 5})));
    CHECK_FALSE(sw.contains(make_perm({4, 2, 3, 1, 5, 6})));    // crosses the block wall
    CHECK(sw.generators().size() == 4);    // two adjacent transpositions per block

    // generator sanity: every generator is a member
    for (const Perm& g : sw.generators()) CHECK(sw.contains(g));
}

TEST_CASE("double coset labels, pinned examples") {
    std::vector<Composition> k33 = double_cosets(Composition{{3, 3}}, 3);
    REQUIRE(k33.size() == 4);
    CHECK(k33[0] == Composition{{0, 3}});
    CHECK(k33[1] == Composition{{1, 2}});
    CHECK(k33[2] == Composition{{2, 1}});
    CHECK(k33[3] == Composition{{3, 0}});

    CHECK(double_cosets(Composition{{6}}, 3) == std::vector<Composition>{Composition{{3}}});

    std::vector<Composition> k23 = double_cosets(Composition{{2, 3}}, 3);
    REQUIRE(k23.size() == 3);    // k1 <= 2 excludes (3,0)
    CHECK(k23[0] == Composition{{0, 3}});
    CHECK(k23[1] == Composition{{1, 2}});
    CHECK(k23[2] == Composition{{2, 1}});

    CHECK_THROWS_AS(double_cosets(Composition{{2, 2}}, 5), std::invalid_argument);    // p > n
}

TEST_CASE("interleaved W/F types, pinned examples") {
    Composition W{{3, 3}};
    CHECK(w_slash_f(W, {1, 2, 3}) == Composition{{3, 0, 0, 3}});
    CHECK(w_slash_f(W, {1, 2, 4}) == Composition{{2, 1, 1, 2}});
    CHECK(w_slash_f(W, {}) == Composition{{0, 3, 0, 3}});
    CHECK_THROWS_AS(w_slash_f(W, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(w_slash_f(W, {7}), std::invalid_argument);
}

TEST_CASE("normalized representatives, pinned examples") {
    Composition W{{3, 3}};
    CHECK(normalized_rep(Composition{{3, 0}}, W, 3) == Perm::identity(6));
    CHECK(normalized_rep(Composition{{1, 2}}, W, 3) == make_perm({1, 4, 5, 2, 3, 6}));
    CHECK(normalized_rep(Composition{{0, 3}}, W, 3) == make_perm({4, 5, 6, 1, 2, 3}));
    CHECK_THROWS_AS(normalized_rep(Composition{{4, 0}}, W, 4), std::invalid_argument);    // k1 > n1

    CHECK(first_columns_image(make_perm({1, 4, 5, 2, 3, 6}), 3) ==
          std::vector<uint32_t>{1, 4, 5});
}

TEST_CASE("stabilizer intersections, pinned examples") {
    Composition W{{3, 3}};

    StabilizerResult id_res = stabilizer_intersection(Perm::identity(6), W, 3, true);
    CHECK(id_res.type == Composition{{3, 0, 0, 3}});
    CHECK(id_res.order_formula == 36);
    REQUIRE(id_res.order_enumerated.has_value());
    CHECK(*id_res.order_enumerated == 36);

    StabilizerResult r12 = stabilizer_intersection(normalized_rep(Composition{{1, 2}}, W, 3), W, 3, true);
    CHECK(r12.type == Composition{{1, 2, 2, 1}});
    CHECK(r12.order_formula == 4);
    CHECK(*r12.order_enumerated == 4);

    StabilizerResult r21 = stabilizer_intersection(normalized_rep(Composition{{2, 1}}, W, 3), W, 3, true);
    CHECK(r21.type == Composition{{2, 1, 1, 2}});
    CHECK(r21.order_formula == 4);
    CHECK(*r21.order_enumerated == 4);

    // formula-only mode skips the sweep
    CHECK_FALSE(stabilizer_intersection(Perm::identity(6), W, 3).order_enumerated.has_value());
}

TEST_CASE("orbit decompositions, pinned examples") {
    MackeyResult six = mackey_decompose(6, 3);
    REQUIRE(six.reports.size() == 4);
    CHECK(six.summary.orbits == 4);
    CHECK(six.summary.surviving == 2);
    CHECK(six.summary.scalar == 2);
    CHECK(six.summary.invertible);
    uint64_t subsets = 0;
    for (const OrbitReport& r : six.reports) {
        subsets += r.subset_count;
        bool single = !r.vanishes;
        CHECK(r.reason == (single ? "single-block" : "gcd-torsion"));
        CHECK(w_slash_f(Composition{{3, 3}}, first_columns_image(r.representative, 3)) ==
              r.intersection_type);
    }
    CHECK(subsets == binomial_u64(6, 3));

    MackeyResult three = mackey_decompose(3, 3);
    REQUIRE(three.reports.size() == 1);
    CHECK(three.summary.surviving == 1);
    CHECK(three.summary.scalar == 1);
    CHECK(three.summary.invertible);

    MackeyResult nine = mackey_decompose(9, 3);
    CHECK(nine.reports.size() == 10);    // C(3+2,2)
    CHECK(nine.summary.surviving == 3);
    CHECK(nine.summary.scalar == 0);
    CHECK_FALSE(nine.summary.invertible);

    CHECK_THROWS_AS(mackey_decompose(7, 3), std::invalid_argument);    // p must divide n
    CHECK_THROWS_AS(mackey_decompose(4, 2), std::invalid_argument);    // odd primes only
}

TEST_CASE("exhaustive sweeps agree with the formulas") {
    std::map<Composition, uint64_t> sweep = double_cosets_bruteforce(Composition{{3, 3}}, 3);
    REQUIRE(sweep.size() == 4);
    CHECK(sweep.at(Composition{{0, 3}}) == 36);
    CHECK(sweep.at(Composition{{3, 0}}) == 36);
    CHECK(sweep.at(Composition{{1, 2}}) == 324);
    CHECK(sweep.at(Composition{{2, 1}}) == 324);
    uint64_t total = 0;
    for (const auto& [K, size] : sweep) total += size;
    CHECK(total == 720);

    CHECK(all_perms(3).size() == 6);
    CHECK(all_perms(0).size() == 1);
    CHECK_THROWS_AS(all_perms(9), std::invalid_argument);
}

TEST_CASE("exact binomials") {
    CHECK(binomial_u64(6, 3) == 20);
    CHECK(binomial_u64(0, 0) == 1);
    CHECK(binomial_u64(5, 7) == 0);
    CHECK(binomial_u64(60, 30) == 118264581564861424ull);
    CHECK_THROWS_AS(binomial_u64(200, 100), std::overflow_error);
}
