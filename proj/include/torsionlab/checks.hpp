#pragma once

#include "torsionlab/algebra.hpp"
#include "torsionlab/steenrod.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace torsionlab {

struct CheckOutcome {
    bool passed;
    std::string detail;     // counts on success, first counterexample on failure
};

struct CheckSpec {
    std::string id;
    std::string summary;
    int criterion;          // 1..10 for the acceptance gate, 0 for extras
    std::function<CheckOutcome()> run;
};

// The full battery, deterministic for a fixed seed. Checks with
// criterion > 0 are the acceptance gate; the rest make verify-all a
// strict superset of it.
std::vector<CheckSpec> verification_checks(uint64_t seed);

inline constexpr uint64_t kDefaultSeed = 20260816;

struct CheckResult {
    std::string id;
    std::string summary;
    int criterion;
    bool passed;
    std::string detail;
    double seconds;
};

// Runs one check, timing it. A positive budget (seconds) fails the
// check post hoc when exceeded; the TORSIONLAB_BUDGET environment
// variable supplies it for the CLI.
CheckResult run_check(const CheckSpec& spec, std::optional<double> budget_seconds);

std::optional<double> budget_from_env();

// Randomized inputs shared by the battery and the unit tests.
Element random_cpmup_element(std::mt19937_64& rng, uint32_t p, size_t max_terms,
                             uint32_t max_poly_exp);
Element random_cpmup_homogeneous(std::mt19937_64& rng, uint32_t p, int64_t degree,
                                 size_t max_terms);
OpWord random_word(std::mt19937_64& rng, uint32_t p, size_t max_len, uint32_t max_index);

} // namespace torsionlab
