#include "torsionlab/checks.hpp"

#include "torsionlab/cosets.hpp"
#include "torsionlab/models.hpp"
#include "torsionlab/sl2.hpp"
#include "torsionlab/spectral.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>

namespace torsionlab {

// ------------------------------------------------------------ random input

Element random_cpmup_element(std::mt19937_64& rng, uint32_t p, size_t max_terms,
                             uint32_t max_poly_exp) {
    const AlgebraModel& m = cpmup_model(p);
    std::uniform_int_distribution<size_t> nterms(0, max_terms);
    std::uniform_int_distribution<uint32_t> bit(0, 1), exp(0, max_poly_exp),
        coeff(1, p - 1);
    Element out = m.zero();
    size_t k = nterms(rng);
    for (size_t t = 0; t < k; ++t) {
        Monomial mono(m, {bit(rng), bit(rng), exp(rng), exp(rng)});
        out = out + Element(m, mono, coeff(rng));
    }
    return out;
}

Element random_cpmup_homogeneous(std::mt19937_64& rng, uint32_t p, int64_t degree,
                                 size_t max_terms) {
    const AlgebraModel& m = cpmup_model(p);
    std::uniform_int_distribution<size_t> nterms(1, max_terms);
    std::uniform_int_distribution<uint32_t> bit(0, 1), coeff(1, p - 1);
    Element out = m.zero();
    size_t k = nterms(rng);
    for (size_t t = 0; t < k; ++t) {
        // pick the exterior part first, then split the even remainder
        uint32_t e1 = bit(rng), e2 = bit(rng);
        int64_t rest = degree - e1 - e2;
        if (rest < 0 || rest % 2 != 0) {
            --t;    // parity mismatch, retry with fresh exterior bits
            continue;
        }
        std::uniform_int_distribution<int64_t> split(0, rest / 2);
        int64_t i = split(rng);
        Monomial mono(m, {e1, e2, static_cast<uint32_t>(i),
                          static_cast<uint32_t>(rest / 2 - i)});
        out = out + Element(m, mono, coeff(rng));
    }
    return out;
}

OpWord random_word(std::mt19937_64& rng, uint32_t p, size_t max_len, uint32_t max_index) {
    std::uniform_int_distribution<size_t> len(1, max_len);
    std::uniform_int_distribution<uint32_t> kind(0, 3), idx(1, max_index);
    std::vector<OpToken> toks;
    size_t k = len(rng);
    for (size_t t = 0; t < k; ++t) {
        if (kind(rng) == 0)
            toks.push_back(OpToken::beta());
        else
            toks.push_back(OpToken::P(idx(rng)));
    }
    return OpWord(p, std::move(toks));
}

// --------------------------------------------------------------- utilities

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::mt19937_64 seeded(uint64_t seed, const std::string& id) {
    return std::mt19937_64(seed ^ fnv1a(id));
}

CheckOutcome pass(const std::string& detail) { return CheckOutcome{true, detail}; }
CheckOutcome fail(const std::string& detail) { return CheckOutcome{false, detail}; }

int64_t ipow(uint32_t b, uint32_t e) {
    int64_t v = 1;
    while (e--) v *= b;
    return v;
}

// all compositions of n into exactly r non-negative parts
std::vector<Composition> compositions_into(uint32_t n, size_t r) {
    std::vector<Composition> out;
    Composition cur;
    cur.parts.assign(r, 0);
    auto rec = [&](auto&& self, size_t i, uint32_t left) -> void {
        if (i + 1 == r) {
            cur.parts[i] = left;
            out.push_back(cur);
            return;
        }
        for (uint32_t v = 0; v <= left; ++v) {
            cur.parts[i] = v;
            self(self, i + 1, left - v);
        }
    };
    if (r > 0) rec(rec, 0, n);
    return out;
}

// ---------------------------------------------------------------- criteria

CheckOutcome check_adem_special(uint64_t) {
    int cases = 0;
    for (uint32_t p : {3u, 5u, 7u}) {
        for (uint32_t k : {1u, 2u, 3u}) {
            uint32_t a = static_cast<uint32_t>(ipow(p, k));
            uint32_t b = static_cast<uint32_t>(ipow(p, k - 1));
            OpWord input(p, {OpToken::P(a), OpToken::beta(), OpToken::P(b)});
            AdmissibleSum want(p);
            want.add(OpWord(p, {OpToken::beta(), OpToken::P(a), OpToken::P(b)}), 1);
            AdmissibleSum got = adem_normalize(input);
            if (!(got == want))
                return fail("p=" + std::to_string(p) + " k=" + std::to_string(k) +
                            ": got " + got.to_string());
            ++cases;
        }
    }
    return pass(std::to_string(cases) + " (p,k) cases, coefficient exactly 1");
}

CheckOutcome check_rk_pipelines(uint64_t) {
    std::vector<std::pair<uint32_t, uint32_t>> cases = {
        {3, 0}, {3, 1}, {3, 2}, {5, 0}, {5, 1}, {5, 2}, {7, 0}, {7, 1}};
    for (auto [p, k] : cases) {
        Element direct = r_k_direct(p, k);
        Element via = r_k_via_steenrod(p, k);
        if (!(direct == via))
            return fail("p=" + std::to_string(p) + " k=" + std::to_string(k) +
                        ": pipelines disagree: " + format(via) + " vs " + format(direct));
    }
    return pass(std::to_string(cases.size()) + " (p,k) cases, exact equality");
}

CheckOutcome check_self_consistency(uint64_t seed) {
    auto rng = seeded(seed, "steenrod-self-consistency");
    size_t pairs = 0;
    for (uint32_t p : {3u, 5u}) {
        size_t quota = (p == 3) ? 300 : 200;
        for (size_t t = 0; t < quota; ++t) {
            OpWord w = random_word(rng, p, 4, p * p);
            Element x = random_cpmup_element(rng, p, 3, 4);
            Element direct = apply(w, x);
            Element expanded = apply(adem_normalize(w), x);
            if (!(direct == expanded))
                return fail("word " + w.to_string() + " on " + format(x) + ": direct " +
                            format(direct) + " vs expanded " + format(expanded));
            ++pairs;
        }
    }
    return pass(std::to_string(pairs) + " random (word, element) pairs");
}

CheckOutcome check_axioms(uint64_t seed) {
    auto rng = seeded(seed, "steenrod-axioms");
    std::uniform_int_distribution<int64_t> deg(1, 14);
    std::uniform_int_distribution<uint32_t> kdist(1, 6), edist(1, 8), extra(1, 5);
    size_t each = 200;

    for (uint32_t p : {3u, 5u}) {
        const AlgebraModel& m = cpmup_model(p);
        for (size_t t = 0; t < each; ++t) {
            // beta squared
            Element x = random_cpmup_element(rng, p, 3, 4);
            if (!apply_beta(apply_beta(x)).is_zero())
                return fail("beta^2 != 0 on " + format(x));

            // Cartan product rule
            Element hx = random_cpmup_homogeneous(rng, p, deg(rng), 2);
            Element hy = random_cpmup_homogeneous(rng, p, deg(rng), 2);
            uint32_t k = kdist(rng);
            Element lhs = apply_power(k, hx * hy);
            Element rhs = m.zero();
            for (uint32_t i = 0; i <= k; ++i)
                rhs = rhs + apply_power(i, hx) * apply_power(k - i, hy);
            if (!(lhs == rhs))
                return fail("Cartan fails for P^" + std::to_string(k) + " on (" +
                            format(hx) + ")(" + format(hy) + ")");

            // signed derivation rule for beta
            Element bl = apply_beta(hx * hy);
            int64_t sign = (hx.is_zero() || hx.degree() % 2 == 0) ? 1 : -1;
            Element br = apply_beta(hx) * hy + (hx * apply_beta(hy)).scaled(sign);
            if (!(bl == br))
                return fail("derivation rule fails on (" + format(hx) + ")(" + format(hy) + ")");

            // instability on a single polynomial generator power
            uint32_t e = edist(rng);
            size_t gi = 2 + (rng() % 2);    // xi or eta
            Element g = m.gen_power(gi, e);
            if (!(apply_power(e, g) == g.pow(p)))
                return fail("P^e(g^e) != g^(pe) at e=" + std::to_string(e));
            if (!apply_power(e + extra(rng), g).is_zero())
                return fail("P^k(g^e) != 0 above the instability line, e=" + std::to_string(e));
        }
    }
    return pass(std::to_string(each) + " random instances per axiom per prime");
}

CheckOutcome check_invariant_theory(uint64_t) {
    for (uint32_t p : {3u, 5u, 7u}) {
        InvariantMode mode = (p == 3) ? InvariantMode::FullGroup : InvariantMode::Generators;
        for (const Element& x : {q_class(p), r_class(p)}) {
            InvariantCheck c = check_invariant(x, mode);
            if (!c.invariant)
                return fail("p=" + std::to_string(p) + ": " + format(x) + " moved by " +
                            c.witness->to_string());
        }
    }
    const int expected[12] = {0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2};
    for (uint32_t d = 1; d <= 12; ++d) {
        int dim = invariant_dim(3, d);
        if (dim != expected[d - 1])
            return fail("invariant_dim(3," + std::to_string(d) + ") = " + std::to_string(dim) +
                        ", expected " + std::to_string(expected[d - 1]));
        if (dim != qr_monomial_count(3, d))
            return fail("dimension vs q,r-monomial count mismatch at d=" + std::to_string(d));
    }
    return pass("q, r invariant for p in {3,5,7}; fixed-space dims match for d <= 12");
}

CheckOutcome check_double_cosets(uint64_t) {
    size_t cases = 0;
    for (uint32_t p : {3u, 5u}) {
        for (uint32_t n = p; n <= 7; ++n) {
            for (size_t parts = 1; parts <= 3; ++parts) {
                for (const Composition& W : compositions_into(n, parts)) {
                    std::vector<Composition> formula = double_cosets(W, p);
                    std::map<Composition, uint64_t> sweep = double_cosets_bruteforce(W, p);
                    if (formula.size() != sweep.size())
                        return fail("W=" + W.to_string() + " p=" + std::to_string(p) + ": " +
                                    std::to_string(formula.size()) + " labels vs " +
                                    std::to_string(sweep.size()) + " classes");
                    uint64_t subsets = 0, elements = 0;
                    for (const Composition& K : formula) {
                        if (!sweep.count(K))
                            return fail("label " + K.to_string() + " missing from the sweep, W=" +
                                        W.to_string());
                        uint64_t prod = 1;
                        for (size_t i = 0; i < K.count(); ++i)
                            prod *= binomial_u64(W.parts[i], K.parts[i]);
                        subsets += prod;
                    }
                    for (const auto& [K, size] : sweep) elements += size;
                    if (subsets != binomial_u64(n, p))
                        return fail("subset partition sum != C(n,p) for W=" + W.to_string());
                    uint64_t nfact = 1;
                    for (uint32_t i = 2; i <= n; ++i) nfact *= i;
                    if (elements != nfact)
                        return fail("double cosets do not partition S_n for W=" + W.to_string());
                    ++cases;
                }
            }
        }
    }
    return pass(std::to_string(cases) + " (W,p) cases against the exhaustive sweep");
}

CheckOutcome check_stabilizers(uint64_t) {
    Composition W{{3, 3}};
    size_t cases = 0;
    for (const Composition& K : double_cosets(W, 3)) {
        Perm s = normalized_rep(K, W, 3);
        StabilizerResult r = stabilizer_intersection(s, W, 3, true);
        if (!r.order_enumerated || *r.order_enumerated != r.order_formula)
            return fail("K=" + K.to_string() + ": enumerated " +
                        std::to_string(r.order_enumerated.value_or(0)) + " vs formula " +
                        std::to_string(r.order_formula));
        ++cases;
    }
    return pass(std::to_string(cases) + " orbits certified exhaustively in S_6");
}

CheckOutcome check_mackey(uint64_t) {
    struct Case {
        uint32_t n, p;
        bool invertible;
    };
    std::vector<Case> cases = {{3, 3, true},  {6, 3, true},  {9, 3, false},
                               {15, 3, true}, {10, 5, true}, {15, 5, true}};
    for (const Case& c : cases) {
        MackeyResult r = mackey_decompose(c.n, c.p);
        if (r.summary.surviving != c.n / c.p)
            return fail("(" + std::to_string(c.n) + "," + std::to_string(c.p) + "): " +
                        std::to_string(r.summary.surviving) + " survivors, expected " +
                        std::to_string(c.n / c.p));
        if (r.summary.invertible != c.invertible)
            return fail("(" + std::to_string(c.n) + "," + std::to_string(c.p) +
                        "): invertibility flag wrong");
        bool p2 = (c.n % (c.p * c.p) == 0);
        if (r.summary.invertible == p2)
            return fail("invertibility does not track p^2 | n at n=" + std::to_string(c.n));
        for (const OrbitReport& rep : r.reports) {
            bool mixed = false;
            for (uint32_t e : rep.intersection_type.parts)
                if (e > 0 && e < c.p) mixed = true;
            if (rep.vanishes != mixed)
                return fail("vanishing flag disagrees with intersection type at K=" +
                            rep.K.to_string());
        }
    }
    MackeyResult six = mackey_decompose(6, 3);
    if (six.reports.size() != 4 || six.summary.scalar != 2)
        return fail("(6,3) spot values: orbits=" + std::to_string(six.reports.size()) +
                    " scalar=" + std::to_string(six.summary.scalar));
    MackeyResult nine = mackey_decompose(9, 3);
    if (nine.reports.size() != 10 || nine.summary.scalar != 0)
        return fail("(9,3) spot values wrong");
    return pass(std::to_string(cases.size()) + " (n,p) summaries plus spot values");
}

CheckOutcome check_verdicts(uint64_t seed) {
    struct Spot {
        uint32_t n, p;
        std::vector<uint32_t> I;
        VerdictStatus status;
    };
    std::vector<Spot> spots = {{6, 3, {0}, VerdictStatus::Nonzero},
                               {15, 5, {1}, VerdictStatus::Nonzero},
                               {6, 3, {0, 1}, VerdictStatus::Zero},
                               {9, 3, {0, 1}, VerdictStatus::Unknown},
                               {5, 3, {0}, VerdictStatus::Zero}};
    for (const Spot& s : spots) {
        Verdict v = ypI_verdict(s.n, s.p, IndexSeq(s.I));
        if (v.status != s.status)
            return fail("(n=" + std::to_string(s.n) + ", p=" + std::to_string(s.p) + ", I=" +
                        IndexSeq(s.I).to_string() + ") -> " + to_string(v.status));
    }
    Verdict killed = ypI_verdict(6, 3, IndexSeq({0, 1}));
    if (!killed.scalar || killed.scalar->is_zero())
        return fail("(6,3,(0,1)) must carry a nonzero killing coefficient");

    auto rng = seeded(seed, "verdict-sweep");
    std::uniform_int_distribution<uint32_t> ndist(2, 400), pidx(0, 3), len(1, 3), ent(0, 6);
    const uint32_t primes[4] = {2, 3, 5, 7};
    for (int t = 0; t < 500; ++t) {
        uint32_t n = ndist(rng), p = primes[pidx(rng)];
        std::vector<uint32_t> entries;
        uint32_t lo = ent(rng);
        for (uint32_t j = 0; j < len(rng); ++j) {
            entries.push_back(lo);
            lo += 1 + ent(rng) % 3;
        }
        IndexSeq I(entries);
        Verdict a = ypI_verdict(n, p, I);
        Verdict b = ypI_verdict(n, p, I);
        if (a.status != b.status || a.citation != b.citation)
            return fail("verdict not deterministic at n=" + std::to_string(n));
        if (a.status != VerdictStatus::Unknown && a.citation.empty())
            return fail("missing citation at n=" + std::to_string(n) + " I=" + I.to_string());
        if (a.status == VerdictStatus::Zero && a.citation == kCiteKilledLongerSeq) {
            if (!a.scalar || a.scalar->is_zero())
                return fail("killed verdict without a nonzero scalar at n=" + std::to_string(n));
        }
    }
    return pass("5 pinned verdicts plus a 500-case total/deterministic sweep");
}

CheckOutcome check_degree_coherence(uint64_t) {
    struct Spot {
        std::vector<uint32_t> I;
        int64_t degree;
    };
    for (const Spot& s : {Spot{{0}, 8}, Spot{{1}, 20}, Spot{{0, 1}, 27}}) {
        int64_t d = ypI_degree(3, IndexSeq(s.I));
        if (d != s.degree)
            return fail("ypI_degree(3," + IndexSeq(s.I).to_string() + ") = " + std::to_string(d) +
                        ", expected " + std::to_string(s.degree));
    }
    size_t entries = 0;
    for (uint32_t p : {3u, 5u}) {
        KZ3Basis basis = kz3_enumerate(p);
        for (const KZ3Entry& e : basis.entries) {
            int64_t want = e.has_x1 ? x1_degree() : 0;
            for (uint32_t k : e.xbars) want += xbar_degree(p, k);
            for (const auto& [I, mult] : e.ys) want += mult * ypI_degree(p, I);
            if (want != e.degree)
                return fail("entry " + e.label + " lists degree " + std::to_string(e.degree) +
                            ", recomputed " + std::to_string(want));
            if (e.degree > basis.cap)
                return fail("entry " + e.label + " exceeds the cap");
            ++entries;
        }
    }
    return pass(std::to_string(entries) + " basis entries rechecked below the default caps");
}

// ------------------------------------------------------------- extra checks

CheckOutcome check_y_words(uint64_t) {
    for (auto [p, k] : std::vector<std::pair<uint32_t, uint32_t>>{
             {3, 0}, {3, 1}, {3, 2}, {5, 0}, {5, 1}, {7, 0}}) {
        YWordCheck c = verify_y_word(p, k);
        if (!c.ok)
            return fail("p=" + std::to_string(p) + " k=" + std::to_string(k) + ": word " +
                        c.word.to_string() + " gives " + format(c.got));
    }
    return pass("composite words land on r_k for 6 (p,k) pairs");
}

CheckOutcome check_zeta(uint64_t) {
    for (uint32_t p : {3u, 5u, 7u})
        if (!apply_beta(zeta_class(p)).is_zero())
            return fail("zeta is not Bockstein-closed at p=" + std::to_string(p));
    const AlgebraModel& m = cpmup_model(3);
    Element want = parse(m, "xi^3*eta - xi*eta^3");
    Element got = apply(OpWord::parse(3, "B P1"), zeta_class(3));
    if (!(got == want)) return fail("B P1 (zeta) = " + format(got) + " at p=3");
    return pass("zeta closed for p in {3,5,7}; frozen r_0 value matches at p=3");
}

CheckOutcome check_adem_idempotent(uint64_t seed) {
    auto rng = seeded(seed, "adem-idempotent");
    for (int t = 0; t < 200; ++t) {
        uint32_t p = (t % 2 == 0) ? 3 : 5;
        OpWord w = random_word(rng, p, 4, p * p);
        AdmissibleSum s = adem_normalize(w);
        for (const auto& [term, c] : s.terms()) {
            if (!term.is_admissible())
                return fail("inadmissible output term " + term.to_string());
            if (term.degree() != w.degree())
                return fail("degree drift: " + term.to_string() + " from " + w.to_string());
            AdmissibleSum again = adem_normalize(term);
            if (again.terms().size() != 1 || !(again.terms().begin()->first == term) ||
                again.terms().begin()->second != 1)
                return fail("not idempotent on " + term.to_string());
        }
    }
    return pass("200 random words: admissible, degree-preserving, idempotent");
}

CheckOutcome check_parser_roundtrip(uint64_t seed) {
    auto rng = seeded(seed, "parser-roundtrip");
    for (int t = 0; t < 300; ++t) {
        uint32_t p = (t % 2 == 0) ? 3 : 5;
        Element x = random_cpmup_element(rng, p, 4, 5);
        Element back = parse(cpmup_model(p), format(x));
        if (!(back == x)) return fail("round trip broke on " + format(x));
    }
    return pass("300 format/parse round trips");
}

CheckOutcome check_ring_axioms(uint64_t seed) {
    auto rng = seeded(seed, "ring-axioms");
    std::uniform_int_distribution<int64_t> deg(1, 10);
    for (int t = 0; t < 200; ++t) {
        uint32_t p = (t % 2 == 0) ? 3 : 5;
        Element x = random_cpmup_element(rng, p, 3, 3);
        Element y = random_cpmup_element(rng, p, 3, 3);
        Element z = random_cpmup_element(rng, p, 3, 3);
        if (!((x * y) * z == x * (y * z))) return fail("associativity broke");
        if (!(x * (y + z) == x * y + x * z)) return fail("distributivity broke");
        Element hx = random_cpmup_homogeneous(rng, p, deg(rng), 2);
        Element hy = random_cpmup_homogeneous(rng, p, deg(rng), 2);
        if (hx.is_zero() || hy.is_zero()) continue;
        int64_t sign = (hx.degree() * hy.degree()) % 2 == 0 ? 1 : -1;
        if (!(hx * hy == (hy * hx).scaled(sign))) return fail("graded commutativity broke");
    }
    return pass("200 random triples: associative, distributive, graded-commutative");
}

CheckOutcome check_kunneth(uint64_t) {
    for (uint32_t p : {3u, 5u}) {
        // dimension of the full model per degree, by direct enumeration
        auto count_full = [&](int64_t d) {
            int64_t count = 0;
            for (uint32_t e1 = 0; e1 <= 1; ++e1)
                for (uint32_t e2 = 0; e2 <= 1; ++e2)
                    for (int64_t i = 0; e1 + e2 + 2 * i <= d; ++i)
                        if ((d - e1 - e2 - 2 * i) % 2 == 0) ++count;
            return count;
        };
        // one tensor factor: an exterior degree-1 and a polynomial degree-2 class
        auto count_factor = [](int64_t d) -> int64_t {
            int64_t count = 0;
            for (uint32_t e = 0; e <= 1; ++e)
                if (d - e >= 0 && (d - e) % 2 == 0) ++count;
            return count;
        };
        for (int64_t d = 0; d <= 20; ++d) {
            int64_t conv = 0;
            for (int64_t i = 0; i <= d; ++i) conv += count_factor(i) * count_factor(d - i);
            if (conv != count_full(d))
                return fail("p=" + std::to_string(p) + " degree " + std::to_string(d) + ": " +
                            std::to_string(conv) + " vs " + std::to_string(count_full(d)));
        }
    }
    return pass("series product matches model dimensions through degree 20");
}

CheckOutcome check_sl2_action_axioms(uint64_t seed) {
    auto rng = seeded(seed, "sl2-action");
    for (uint32_t p : {3u, 5u}) {
        const AlgebraModel& m = xieta_model(p);
        std::vector<Mat2> elems = sl2_elements(p);
        std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
        std::uniform_int_distribution<uint32_t> exp(0, 4), coeff(1, p - 1);
        if (elems.size() != static_cast<size_t>(p) * (p * p - 1))
            return fail("group order wrong at p=" + std::to_string(p));
        for (int t = 0; t < 100; ++t) {
            Element x = m.zero();
            for (int term = 0; term < 3; ++term)
                x = x + Element(m, Monomial(m, {exp(rng), exp(rng)}), coeff(rng));
            Mat2 g = elems[pick(rng)], h = elems[pick(rng)];
            if (!(act(Mat2::identity(p), x) == x)) return fail("identity action moved an element");
            if (!(act(mul(g, h), x) == act(g, act(h, x))))
                return fail("action axiom broke for g=" + g.to_string() + " h=" + h.to_string());
            if (!x.is_zero() && x.is_homogeneous() && !act(g, x).is_zero() &&
                act(g, x).degree() != x.degree())
                return fail("action changed the degree");
        }
    }
    return pass("identity/composition/degree axioms on 100 random elements per prime");
}

CheckOutcome check_rep_orbits(uint64_t) {
    size_t cases = 0;
    for (uint32_t p : {3u, 5u}) {
        for (uint32_t n = p; n <= 7; ++n) {
            for (size_t parts = 1; parts <= 3; ++parts) {
                for (const Composition& W : compositions_into(n, parts)) {
                    for (const Composition& K : double_cosets(W, p)) {
                        Perm s = normalized_rep(K, W, p);
                        Composition t = w_slash_f(W, first_columns_image(s, p));
                        for (size_t i = 0; i < K.count(); ++i) {
                            if (t.parts[2 * i] != K.parts[i] ||
                                t.parts[2 * i + 1] != W.parts[i] - K.parts[i])
                                return fail("rep for K=" + K.to_string() + " W=" + W.to_string() +
                                            " lands in " + t.to_string());
                        }
                        ++cases;
                    }
                }
            }
        }
    }
    return pass(std::to_string(cases) + " normalized representatives verified in their orbits");
}

CheckOutcome check_differential_consistency(uint64_t) {
    size_t cases = 0;
    for (uint32_t p : {3u, 5u, 7u}) {
        // every strictly increasing sequence with entries <= 3, plus empty
        std::vector<std::vector<uint32_t>> seqs{{}};
        for (uint32_t mask = 1; mask < 16; ++mask) {
            std::vector<uint32_t> s;
            for (uint32_t b = 0; b < 4; ++b)
                if (mask & (1u << b)) s.push_back(b);
            seqs.push_back(s);
        }
        for (const auto& s : seqs) {
            IndexSeq I(s);
            uint32_t bound = s.empty() ? 4 : I.least();
            for (uint32_t k = 0; k < bound; ++k) {
                DifferentialTarget d = differential_target(p, I, k);
                if (d.index != 2 * (ipow(p, k + 1) + 1))
                    return fail("index wrong at p=" + std::to_string(p) + " k=" + std::to_string(k));
                if (d.target_bidegree.s != ypI_degree(p, d.target) || d.target_bidegree.t != 0)
                    return fail("target bidegree wrong at k=" + std::to_string(k));
                int64_t src = d.source_bidegree.s + d.source_bidegree.t;
                int64_t dst = d.target_bidegree.s + d.target_bidegree.t;
                if (dst != src + 1)
                    return fail("total degree step wrong at k=" + std::to_string(k));
                if (d.target.entries.front() != k)
                    return fail("target sequence does not start at k");
                ++cases;
            }
        }
    }
    return pass(std::to_string(cases) + " differentials with consistent bidegree arithmetic");
}

CheckOutcome check_killing_lucas(uint64_t) {
    for (uint32_t p : {3u, 5u, 7u}) {
        for (uint32_t n = p; n <= 200; n += p) {
            Fp c = killing_coefficient(n, p, IndexSeq({0, 1}));
            bool p2 = (n % (p * p) == 0);
            if (c.is_zero() != p2)
                return fail("killing coefficient nonzeroness wrong at n=" + std::to_string(n) +
                            " p=" + std::to_string(p));
        }
    }
    return pass("nonzero iff p^2 does not divide n, all p | n <= 200, p in {3,5,7}");
}

CheckOutcome check_chern(uint64_t) {
    for (uint32_t p : {2u, 3u, 5u, 7u})
        for (uint32_t n = 1; n <= 60; ++n)
            for (uint32_t i = 1; i <= std::min(n, 8u); ++i) {
                ChernRestriction c = chern_diag_restriction(i, n, p);
                if (!(c.residue == binom_mod_p(n, i, p)))
                    return fail("residue mismatch at i=" + std::to_string(i) +
                                " n=" + std::to_string(n) + " p=" + std::to_string(p));
            }
    ChernRestriction spot = chern_diag_restriction(3, 6, 3);
    if (spot.coefficient != 20 || spot.residue.value() != 2)
        return fail("(3,6) spot value wrong");
    if (chern_diag_restriction(1, 17, 5).coefficient != 17) return fail("(1,n) spot value wrong");
    if (chern_diag_restriction(7, 7, 7).coefficient != 1) return fail("(p,p) spot value wrong");
    return pass("exact coefficients agree with the digit-by-digit residues");
}

} // namespace

// ----------------------------------------------------------------- battery

std::vector<CheckSpec> verification_checks(uint64_t seed) {
    auto wrap = [seed](CheckOutcome (*fn)(uint64_t)) {
        return [fn, seed]() { return fn(seed); };
    };
    return {
        {"adem-special", "straightening the marked inadmissible words", 1,
         wrap(check_adem_special)},
        {"rk-pipelines", "direct r_k equals the operation pipeline", 2, wrap(check_rk_pipelines)},
        {"steenrod-self-consistency", "word action equals admissible-expansion action", 3,
         wrap(check_self_consistency)},
        {"steenrod-axioms", "beta^2, Cartan, derivation, instability", 4, wrap(check_axioms)},
        {"invariant-theory", "q, r fixed; fixed-space dimensions match", 5,
         wrap(check_invariant_theory)},
        {"double-cosets", "composition labels against the exhaustive sweep", 6,
         wrap(check_double_cosets)},
        {"stabilizer-orders", "conjugate-intersection orders, certified", 7,
         wrap(check_stabilizers)},
        {"mackey-summaries", "survivor counts and transfer scalars", 8, wrap(check_mackey)},
        {"verdict-table", "pinned verdicts plus a random sweep", 9, wrap(check_verdicts)},
        {"degree-coherence", "class degrees against the basis listing", 10,
         wrap(check_degree_coherence)},
        {"y-words", "composite operation words land on r_k", 0, wrap(check_y_words)},
        {"zeta-closed", "the degree-3 class is Bockstein-closed", 0, wrap(check_zeta)},
        {"adem-idempotent", "normal forms are stable and degree-true", 0,
         wrap(check_adem_idempotent)},
        {"parser-roundtrip", "format then parse is the identity", 0, wrap(check_parser_roundtrip)},
        {"ring-axioms", "associativity, distributivity, graded sign rule", 0,
         wrap(check_ring_axioms)},
        {"kunneth-dims", "tensor-factor series product matches model dimensions", 0,
         wrap(check_kunneth)},
        {"sl2-action-axioms", "substitution action is a degree-preserving action", 0,
         wrap(check_sl2_action_axioms)},
        {"rep-orbits", "normalized representatives sit in their labeled orbits", 0,
         wrap(check_rep_orbits)},
        {"differential-consistency", "index and bidegree arithmetic agree", 0,
         wrap(check_differential_consistency)},
        {"killing-lucas", "killing coefficient vanishing matches the divisibility test", 0,
         wrap(check_killing_lucas)},
        {"chern-restriction", "diagonal restriction coefficients, two ways", 0,
         wrap(check_chern)},
    };
}

CheckResult run_check(const CheckSpec& spec, std::optional<double> budget_seconds) {
    auto start = std::chrono::steady_clock::now();
    CheckOutcome outcome{false, {}};
    try {
        outcome = spec.run();
    } catch (const std::exception& e) {
        outcome = CheckOutcome{false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.passed && budget_seconds && seconds > *budget_seconds) {
        outcome.passed = false;
        outcome.detail = "wall-clock budget exceeded: " + std::to_string(seconds) + "s";
    }
    return CheckResult{spec.id, spec.summary, spec.criterion, outcome.passed, outcome.detail,
                       seconds};
}

std::optional<double> budget_from_env() {
    const char* raw = std::getenv("TORSIONLAB_BUDGET");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    try {
        double v = std::stod(raw);
        if (v <= 0) return std::nullopt;
        return v;
    } catch (...) {
        return std::nullopt;
    }
}

} // namespace torsionlab
