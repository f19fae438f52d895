#pragma once

#include "torsionlab/fp.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torsionlab {

// Permutation of {1,...,n}, stored 0-based: img[j] is the image of j.
// As a permutation matrix, column j holds e_{img[j]}.
struct Perm {
    std::vector<uint32_t> img;

    static Perm identity(size_t n);
    size_t n() const { return img.size(); }
    uint32_t operator()(uint32_t j) const { return img.at(j); }

    Perm compose(const Perm& t) const;      // (s.compose(t))(j) = s(t(j))
    Perm inverse() const;
    std::string to_string() const;          // 1-based images "[1 4 5 2 3 6]"

    auto operator<=>(const Perm&) const = default;
};

Perm make_perm(std::vector<uint32_t> one_based_images);

// Finite sequence of non-negative integers with a prescribed sum; the
// shape of W (blocks of {1..n}), K (entries per block), and the
// interleaved W/F. Zero parts are kept, never compacted.
struct Composition {
    std::vector<uint32_t> parts;

    uint32_t total() const;
    size_t count() const { return parts.size(); }
    std::string to_string() const;          // "(3,3)"
    static Composition parse(std::string_view text);    // "3,3" or "(3,3)"

    // half-open 0-based block ranges [offset(i), offset(i)+parts[i])
    uint32_t offset(size_t i) const;

    auto operator<=>(const Composition&) const = default;
};

// The block-preserving subgroup S_W of S_n determined by W.
struct YoungSubgroup {
    Composition W;

    uint64_t order() const;                  // product of part factorials
    bool contains(const Perm& s) const;
    std::vector<Perm> generators() const;    // adjacent transpositions per block
};

YoungSubgroup young_subgroup(const Composition& W);

// All K with 0 <= k_i <= n_i and sum k_i = p, lexicographically sorted.
// These label the double cosets S_W \ S_n / S_{p,n-p}.
std::vector<Composition> double_cosets(const Composition& W, uint32_t p);

// The interleaved composition (m_1, n_1-m_1, ..., m_r, n_r-m_r) with
// m_i = |F intersect block_i|. F holds 1-based points.
Composition w_slash_f(const Composition& W, const std::vector<uint32_t>& F);

// The normalized double-coset representative for K: its first p columns
// are the block-wise leading basis vectors prescribed by K, in
// increasing order, and the remaining columns carry the complement in
// increasing order.
Perm normalized_rep(const Composition& K, const Composition& W, uint32_t p);

// {s(1), ..., s(p)} as 1-based points, sorted.
std::vector<uint32_t> first_columns_image(const Perm& s, uint32_t p);

struct StabilizerResult {
    Composition type;                        // W/F for F = first-p-columns image
    uint64_t order_formula;                  // product of type-part factorials
    std::optional<uint64_t> order_enumerated;   // certificate sweep, n <= 8
};

// Shape of s S_{p,n-p} s^{-1} intersected with S_W. Certificate mode
// walks all of S_n and counts the intersection honestly.
StabilizerResult stabilizer_intersection(const Perm& s, const Composition& W, uint32_t p,
                                         bool certify = false);

struct OrbitReport {
    Composition K;
    Perm representative;
    Composition intersection_type;           // (p)/K interleaved
    bool vanishes;
    std::string reason;                      // "gcd-torsion" | "single-block"
    uint64_t subset_count;                   // product of C(n_i, k_i)
};

struct MackeySummary {
    size_t orbits;
    size_t surviving;
    uint32_t scalar;                         // n/p mod p
    bool invertible;                         // iff p^2 does not divide n
};

struct MackeyResult {
    uint32_t n, p;
    std::vector<OrbitReport> reports;
    MackeySummary summary;
};

// Orbit decomposition for W = (p,...,p) with n/p parts: one report per
// K; an orbit survives exactly when K concentrates all of p in a single
// block, so the survivor count is n/p and the transfer contributes the
// scalar n/p mod p.
MackeyResult mackey_decompose(uint32_t n, uint32_t p);

// Brute-force oracles, capped at n <= 8.
std::vector<Perm> all_perms(size_t n);
// Double cosets by exhaustive orbit sweep: K label of each class mapped
// to the number of group elements it contains.
std::map<Composition, uint64_t> double_cosets_bruteforce(const Composition& W, uint32_t p);

uint64_t binomial_u64(uint32_t n, uint32_t k);   // exact, overflow-checked

} // namespace torsionlab
