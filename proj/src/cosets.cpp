#include "torsionlab/cosets.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace torsionlab {

// -------------------------------------------------------------------- Perm

Perm Perm::identity(size_t n) {
    Perm s;
    s.img.resize(n);
    std::iota(s.img.begin(), s.img.end(), 0u);
    return s;
}

Perm make_perm(std::vector<uint32_t> one_based_images) {
    Perm s;
    s.img.reserve(one_based_images.size());
    std::vector<bool> seen(one_based_images.size(), false);
    for (uint32_t v : one_based_images) {
        if (v < 1 || v > one_based_images.size() || seen[v - 1])
            throw std::invalid_argument("not a permutation of 1..n");
        seen[v - 1] = true;
        s.img.push_back(v - 1);
    }
    return s;
}

Perm Perm::compose(const Perm& t) const {
    if (n() != t.n()) throw std::invalid_argument("permutation sizes differ");
    Perm out;
    out.img.resize(n());
    for (size_t j = 0; j < n(); ++j) out.img[j] = img[t.img[j]];
    return out;
}

Perm Perm::inverse() const {
    Perm out;
    out.img.resize(n());
    for (size_t j = 0; j < n(); ++j) out.img[img[j]] = static_cast<uint32_t>(j);
    return out;
}

std::string Perm::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t j = 0; j < n(); ++j) {
        if (j) os << " ";
        os << img[j] + 1;
    }
    os << "]";
    return os.str();
}

// ------------------------------------------------------------- Composition

uint32_t Composition::total() const {
    uint64_t t = 0;
    for (uint32_t v : parts) t += v;
    if (t > UINT32_MAX) throw std::overflow_error("composition total out of range");
    return static_cast<uint32_t>(t);
}

uint32_t Composition::offset(size_t i) const {
    uint32_t off = 0;
    for (size_t j = 0; j < i; ++j) off += parts.at(j);
    return off;
}

std::string Composition::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) os << ",";
        os << parts[i];
    }
    os << ")";
    return os.str();
}

Composition Composition::parse(std::string_view text) {
    size_t b = 0, e = text.size();
    while (b < e && (text[b] == ' ' || text[b] == '(')) ++b;
    while (e > b && (text[e - 1] == ' ' || text[e - 1] == ')')) --e;
    Composition out;
    std::istringstream is{std::string(text.substr(b, e - b))};
    std::string piece;
    while (std::getline(is, piece, ',')) {
        size_t s = piece.find_first_not_of(' ');
        size_t t = piece.find_last_not_of(' ');
        if (s == std::string::npos) throw std::invalid_argument("empty part in composition");
        uint32_t v = 0;
        auto res = std::from_chars(piece.data() + s, piece.data() + t + 1, v);
        if (res.ec != std::errc() || res.ptr != piece.data() + t + 1)
            throw std::invalid_argument("bad composition part '" + piece + "'");
        out.parts.push_back(v);
    }
    if (out.parts.empty()) throw std::invalid_argument("empty composition");
    return out;
}

// ----------------------------------------------------------- YoungSubgroup

static uint64_t factorial_u64(uint32_t n) {
    if (n > 20) throw std::overflow_error("factorial out of range");
    uint64_t f = 1;
    for (uint32_t i = 2; i <= n; ++i) f *= i;
    return f;
}

uint64_t binomial_u64(uint32_t n, uint32_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (uint32_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > UINT64_MAX) throw std::overflow_error("binomial out of range");
    }
    return static_cast<uint64_t>(acc);
}

uint64_t YoungSubgroup::order() const {
    uint64_t o = 1;
    for (uint32_t part : W.parts) {
        uint64_t f = factorial_u64(part);
        if (o > UINT64_MAX / f) throw std::overflow_error("group order out of range");
        o *= f;
    }
    return o;
}

bool YoungSubgroup::contains(const Perm& s) const {
    if (s.n() != W.total()) return false;
    uint32_t off = 0;
    for (uint32_t part : W.parts) {
        for (uint32_t j = off; j < off + part; ++j)
            if (s.img[j] < off || s.img[j] >= off + part) return false;
        off += part;
    }
    return true;
}

std::vector<Perm> YoungSubgroup::generators() const {
    std::vector<Perm> gens;
    uint32_t n = W.total(), off = 0;
    for (uint32_t part : W.parts) {
        for (uint32_t j = off; j + 1 < off + part; ++j) {
            Perm t = Perm::identity(n);
            std::swap(t.img[j], t.img[j + 1]);
            gens.push_back(std::move(t));
        }
        off += part;
    }
    return gens;
}

YoungSubgroup young_subgroup(const Composition& W) {
    YoungSubgroup g{W};
    g.order();   // validates the factorials fit
    return g;
}

// ----------------------------------------------------------- double cosets

std::vector<Composition> double_cosets(const Composition& W, uint32_t p) {
    uint32_t n = W.total();
    if (p > n) throw std::invalid_argument("p exceeds the composition total");
    std::vector<Composition> out;
    Composition cur;
    cur.parts.assign(W.count(), 0);
    auto rec = [&](auto&& self, size_t i, uint32_t left) -> void {
        if (i == W.count()) {
            if (left == 0) out.push_back(cur);
            return;
        }
        uint32_t hi = std::min(W.parts[i], left);
        for (uint32_t k = 0; k <= hi; ++k) {
            cur.parts[i] = k;
            self(self, i + 1, left - k);
        }
        cur.parts[i] = 0;
    };
    rec(rec, 0, p);
    std::sort(out.begin(), out.end());
    return out;
}

Composition w_slash_f(const Composition& W, const std::vector<uint32_t>& F) {
    uint32_t n = W.total();
    std::set<uint32_t> points;
    for (uint32_t x : F) {
        if (x < 1 || x > n) throw std::invalid_argument("subset point out of range");
        if (!points.insert(x).second) throw std::invalid_argument("repeated subset point");
    }
    Composition out;
    uint32_t off = 0;
    for (uint32_t part : W.parts) {
        uint32_t m = 0;
        for (uint32_t x = off + 1; x <= off + part; ++x) m += points.count(x);
        out.parts.push_back(m);
        out.parts.push_back(part - m);
        off += part;
    }
    return out;
}

Perm normalized_rep(const Composition& K, const Composition& W, uint32_t p) {
    if (K.count() != W.count()) throw std::invalid_argument("K and W have different lengths");
    if (K.total() != p) throw std::invalid_argument("K does not sum to p");
    uint32_t n = W.total();
    if (p > n) throw std::invalid_argument("p exceeds n");

    std::vector<uint32_t> first, rest;
    uint32_t off = 0;
    for (size_t i = 0; i < W.count(); ++i) {
        if (K.parts[i] > W.parts[i]) throw std::invalid_argument("K exceeds W in a block");
        for (uint32_t j = 0; j < W.parts[i]; ++j)
            (j < K.parts[i] ? first : rest).push_back(off + j);
        off += W.parts[i];
    }
    Perm s;
    s.img = std::move(first);
    s.img.insert(s.img.end(), rest.begin(), rest.end());
    return s;
}

std::vector<uint32_t> first_columns_image(const Perm& s, uint32_t p) {
    if (p > s.n()) throw std::invalid_argument("p exceeds n");
    std::vector<uint32_t> F;
    for (uint32_t j = 0; j < p; ++j) F.push_back(s.img[j] + 1);
    std::sort(F.begin(), F.end());
    return F;
}

// ------------------------------------------------------------- stabilizers

std::vector<Perm> all_perms(size_t n) {
    if (n > 8) throw std::invalid_argument("exhaustive sweep capped at n = 8");
    std::vector<Perm> out;
    Perm s = Perm::identity(n);
    do {
        out.push_back(s);
    } while (std::next_permutation(s.img.begin(), s.img.end()));
    return out;
}

StabilizerResult stabilizer_intersection(const Perm& s, const Composition& W, uint32_t p,
                                         bool certify) {
    uint32_t n = W.total();
    if (s.n() != n) throw std::invalid_argument("permutation size does not match W");

    Composition type = w_slash_f(W, first_columns_image(s, p));
    uint64_t formula = 1;
    for (uint32_t part : type.parts) formula *= factorial_u64(part);

    StabilizerResult result{type, formula, std::nullopt};
    if (certify) {
        YoungSubgroup sw = young_subgroup(W);
        YoungSubgroup cut = young_subgroup(Composition{{p, n - p}});
        Perm sinv = s.inverse();
        uint64_t count = 0;
        for (const Perm& t : all_perms(n))
            if (sw.contains(t) && cut.contains(sinv.compose(t).compose(s))) ++count;
        result.order_enumerated = count;
    }
    return result;
}

// Lehmer-code ranking so the sweep can mark visited permutations in a
// flat bitmap instead of a set.
static uint64_t perm_rank(const Perm& s) {
    size_t n = s.n();
    uint64_t rank = 0;
    for (size_t j = 0; j < n; ++j) {
        uint32_t smaller = 0;
        for (size_t i = j + 1; i < n; ++i)
            if (s.img[i] < s.img[j]) ++smaller;
        rank = rank * (n - j) + smaller;
    }
    return rank;
}

std::map<Composition, uint64_t> double_cosets_bruteforce(const Composition& W, uint32_t p) {
    uint32_t n = W.total();
    if (p > n) throw std::invalid_argument("p exceeds the composition total");
    std::vector<Perm> gens_left = young_subgroup(W).generators();
    std::vector<Perm> gens_right = young_subgroup(Composition{{p, n - p}}).generators();

    std::map<Composition, uint64_t> classes;
    std::vector<bool> seen(factorial_u64(n), false);
    for (const Perm& start : all_perms(n)) {
        if (seen[perm_rank(start)]) continue;
        // flood the double coset S_W . start . S_{p,n-p}
        std::vector<Perm> stack{start};
        seen[perm_rank(start)] = true;
        uint64_t size = 0;
        while (!stack.empty()) {
            Perm cur = stack.back();
            stack.pop_back();
            ++size;
            auto push = [&](Perm next) {
                uint64_t r = perm_rank(next);
                if (!seen[r]) {
                    seen[r] = true;
                    stack.push_back(std::move(next));
                }
            };
            for (const Perm& g : gens_left) push(g.compose(cur));
            for (const Perm& g : gens_right) push(cur.compose(g));
        }
        // label the class by how its first-p image meets the W blocks
        std::vector<uint32_t> F = first_columns_image(start, p);
        Composition label;
        Composition interleaved = w_slash_f(W, F);
        for (size_t i = 0; i < interleaved.parts.size(); i += 2)
            label.parts.push_back(interleaved.parts[i]);
        auto [it, fresh] = classes.emplace(label, size);
        if (!fresh)
            throw std::logic_error("two double cosets share the label " + label.to_string());
        (void)it;
    }
    return classes;
}

// ------------------------------------------------------------------ mackey

MackeyResult mackey_decompose(uint32_t n, uint32_t p) {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("odd prime required");
    if (n == 0 || n % p != 0) throw std::invalid_argument("p must divide n");

    Composition W;
    W.parts.assign(n / p, p);

    MackeyResult result;
    result.n = n;
    result.p = p;
    for (const Composition& K : double_cosets(W, p)) {
        OrbitReport report;
        report.K = K;
        report.representative = normalized_rep(K, W, p);
        report.intersection_type =
            w_slash_f(W, first_columns_image(report.representative, p));
        report.vanishes = false;
        for (uint32_t e : report.intersection_type.parts)
            if (e > 0 && e < p) report.vanishes = true;
        report.reason = report.vanishes ? "gcd-torsion" : "single-block";
        report.subset_count = 1;
        for (size_t i = 0; i < K.count(); ++i)
            report.subset_count *= binomial_u64(W.parts[i], K.parts[i]);
        result.reports.push_back(std::move(report));
    }

    MackeySummary summary;
    summary.orbits = result.reports.size();
    summary.surviving = 0;
    for (const OrbitReport& r : result.reports)
        if (!r.vanishes) ++summary.surviving;
    summary.scalar = Fp(n / p, p).value();
    summary.invertible = summary.scalar != 0;
    result.summary = summary;
    return result;
}

} // namespace torsionlab
