#include "torsionlab/models.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <tuple>
#include <utility>
#include <sstream>
#include <stdexcept>

namespace torsionlab {

static void require_odd_prime(uint32_t p) {
    if (!is_prime(p) || p == 2)
        throw std::invalid_argument("odd prime required, got " + std::to_string(p));
}

// Overflow-checked p^(k+1), needed because degree formulas take k from
// user input.
static int64_t prime_power(uint32_t p, uint32_t e) {
    __int128 v = 1;
    for (uint32_t i = 0; i < e; ++i) {
        v *= p;
        if (v > INT64_MAX / 8) throw std::overflow_error("prime power overflows the degree range");
    }
    return static_cast<int64_t>(v);
}

// ------------------------------------------------------------- cpmup model

const AlgebraModel& cpmup_model(uint32_t p) {
    require_odd_prime(p);
    static std::mutex mu;
    static std::map<uint32_t, AlgebraModel> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;

    // Build in the final map slot: the table entries below hold elements
    // that reference the model's address, so it must not move afterwards.
    AlgebraModel& model =
        cache.emplace(std::piecewise_construct, std::forward_as_tuple(p),
                      std::forward_as_tuple(p,
                                            std::vector<GeneratorSpec>{
                                                {"a", 1, GenKind::Exterior},
                                                {"b", 1, GenKind::Exterior},
                                                {"xi", 2, GenKind::Polynomial},
                                                {"eta", 2, GenKind::Polynomial},
                                            }))
            .first->second;
    model.set_bockstein("a", model.gen("xi"));
    model.set_bockstein("b", model.gen("eta"));
    model.set_bockstein("xi", model.zero());
    model.set_bockstein("eta", model.zero());
    // P^1 on the degree-2 polynomial generators is the p-th power and
    // everything higher vanishes; both follow from instability, so no
    // explicit power entries are needed.
    return model;
}

Element zeta_class(uint32_t p) {
    const AlgebraModel& m = cpmup_model(p);
    return m.gen("xi") * m.gen("b") - m.gen("a") * m.gen("eta");
}

Element r_k_direct(uint32_t p, uint32_t k) {
    const AlgebraModel& m = cpmup_model(p);
    uint32_t e = static_cast<uint32_t>(prime_power(p, k + 1) - 1);
    int xi = m.find_generator("xi"), eta = m.find_generator("eta");
    Element diff = m.gen_power(xi, e) - m.gen_power(eta, e);
    return m.gen("xi") * m.gen("eta") * diff;
}

Element r_k_via_steenrod(uint32_t p, uint32_t k) {
    Element r = apply(OpWord::parse(p, "B P1"), zeta_class(p));
    for (uint32_t j = 1; j <= k; ++j)
        r = apply_power(static_cast<uint32_t>(prime_power(p, j)), r);
    return r;
}

// ---------------------------------------------------------------- IndexSeq

IndexSeq::IndexSeq(std::vector<uint32_t> e) : entries(std::move(e)) {
    for (size_t i = 1; i < entries.size(); ++i)
        if (entries[i - 1] >= entries[i])
            throw std::invalid_argument("index sequence must be strictly increasing");
}

uint32_t IndexSeq::least() const {
    if (entries.empty()) throw std::domain_error("least entry of an empty index sequence");
    return entries.front();
}

std::string IndexSeq::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) os << ",";
        os << entries[i];
    }
    os << ")";
    return os.str();
}

IndexSeq IndexSeq::parse(std::string_view text) {
    size_t b = 0, e = text.size();
    while (b < e && (text[b] == ' ' || text[b] == '(')) ++b;
    while (e > b && (text[e - 1] == ' ' || text[e - 1] == ')')) --e;
    std::vector<uint32_t> entries;
    std::string body(text.substr(b, e - b));
    std::istringstream is(body);
    std::string piece;
    while (std::getline(is, piece, ',')) {
        size_t s = piece.find_first_not_of(' ');
        size_t t = piece.find_last_not_of(' ');
        if (s == std::string::npos) throw std::invalid_argument("empty index in sequence");
        uint32_t v = 0;
        auto res = std::from_chars(piece.data() + s, piece.data() + t + 1, v);
        if (res.ec != std::errc() || res.ptr != piece.data() + t + 1)
            throw std::invalid_argument("bad index '" + piece + "'");
        entries.push_back(v);
    }
    if (entries.empty()) throw std::invalid_argument("empty index sequence");
    return IndexSeq(std::move(entries));
}

// ----------------------------------------------------------------- degrees

int64_t x1_degree() { return 3; }

int64_t xbar_degree(uint32_t p, uint32_t k) {
    require_odd_prime(p);
    return 2 * prime_power(p, k + 1) + 1;
}

int64_t ypI_degree(uint32_t p, const IndexSeq& I) {
    require_odd_prime(p);
    if (I.entries.empty()) throw std::invalid_argument("empty index sequence");
    int64_t d = 1;
    for (uint32_t i : I.entries) d += xbar_degree(p, i);
    return d;
}

// ------------------------------------------------------------------ y word

OpWord y_word(uint32_t p, uint32_t m) {
    std::vector<OpToken> toks;
    toks.push_back(OpToken::beta());
    for (uint32_t j = m + 1; j-- > 0;) {
        int64_t s = prime_power(p, j);
        if (s > UINT32_MAX) throw std::overflow_error("power index out of range");
        toks.push_back(OpToken::P(static_cast<uint32_t>(s)));
    }
    return OpWord(p, std::move(toks));
}

YWordCheck verify_y_word(uint32_t p, uint32_t k) {
    OpWord w = y_word(p, k);
    Element got = apply(w, zeta_class(p));
    Element want = r_k_direct(p, k);
    return YWordCheck{got == want, w, got, want};
}

// --------------------------------------------------------------- KZ3 basis

int64_t kz3_default_cap(uint32_t p) { return 2 * static_cast<int64_t>(p) * p + 4; }

namespace {

std::string y_label(uint32_t p, const IndexSeq& I) {
    return "y" + std::to_string(p) + "," + I.to_string();
}

std::string entry_label(uint32_t p, const KZ3Entry& e) {
    if (!e.has_x1 && e.xbars.empty() && e.ys.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << "*";
        first = false;
    };
    if (e.has_x1) {
        sep();
        os << "x1";
    }
    for (uint32_t k : e.xbars) {
        sep();
        os << "x" << p << "," << k;
    }
    for (const auto& [I, mult] : e.ys) {
        sep();
        os << y_label(p, I);
        if (mult > 1) os << "^" << mult;
    }
    return os.str();
}

// All strictly increasing index sequences whose class degree fits under
// the cap. Entries are bounded because each contributes at least
// 2p^(i+1)+1 to the degree.
std::vector<IndexSeq> index_seqs_under(uint32_t p, int64_t cap) {
    std::vector<IndexSeq> out;
    std::vector<uint32_t> cur;
    auto rec = [&](auto&& self, uint32_t next, int64_t degree_so_far) -> void {
        if (!cur.empty()) out.push_back(IndexSeq(cur));
        for (uint32_t i = next;; ++i) {
            int64_t d = degree_so_far + xbar_degree(p, i);
            if (d > cap) break;
            cur.push_back(i);
            self(self, i + 1, d);
            cur.pop_back();
        }
    };
    rec(rec, 0, 1);   // the +1 is the suspension shift in the y degree
    return out;
}

} // namespace

KZ3Basis kz3_enumerate(uint32_t p) { return kz3_enumerate(p, kz3_default_cap(p)); }

KZ3Basis kz3_enumerate(uint32_t p, int64_t D) {
    require_odd_prime(p);
    if (D < 0) throw std::invalid_argument("degree cap must be non-negative");
    const int64_t cap = D;

    std::vector<IndexSeq> ys = index_seqs_under(p, cap);
    std::sort(ys.begin(), ys.end());
    std::vector<uint32_t> xs;
    for (uint32_t k = 0; xbar_degree(p, k) <= cap; ++k) xs.push_back(k);

    std::vector<KZ3Entry> entries;

    // Choose the y part (multiplicities), then squarefree xbar part,
    // then optionally x1; everything bounded by the degree cap.
    constexpr size_t kEnumerationBudget = 500000;
    auto emit = [&](const KZ3Entry& e) {
        if (entries.size() >= kEnumerationBudget)
            throw std::length_error("degree cap exceeds the enumeration budget");
        entries.push_back(e);
    };

    KZ3Entry cur;
    auto with_x1 = [&](auto&& self_unused) {
        (void)self_unused;
        emit(cur);
        if (cur.degree + x1_degree() <= cap) {
            KZ3Entry e = cur;
            e.has_x1 = true;
            e.degree += x1_degree();
            emit(e);
        }
    };

    auto choose_x = [&](auto&& self, size_t from) -> void {
        with_x1(0);
        for (size_t i = from; i < xs.size(); ++i) {
            int64_t d = cur.degree + xbar_degree(p, xs[i]);
            if (d > cap) break;
            cur.xbars.push_back(xs[i]);
            int64_t saved = cur.degree;
            cur.degree = d;
            self(self, i + 1);
            cur.degree = saved;
            cur.xbars.pop_back();
        }
    };

    auto choose_y = [&](auto&& self, size_t from) -> void {
        choose_x(choose_x, 0);
        for (size_t i = from; i < ys.size(); ++i) {
            int64_t yd = ypI_degree(p, ys[i]);
            if (cur.degree + yd > cap) continue;
            cur.ys.emplace_back(ys[i], 0);
            int64_t saved = cur.degree;
            for (uint32_t mult = 1; saved + static_cast<int64_t>(mult) * yd <= cap; ++mult) {
                cur.ys.back().second = mult;
                cur.degree = saved + static_cast<int64_t>(mult) * yd;
                self(self, i + 1);
            }
            cur.degree = saved;
            cur.ys.pop_back();
        }
    };

    choose_y(choose_y, 0);

    for (KZ3Entry& e : entries) e.label = entry_label(p, e);
    std::sort(entries.begin(), entries.end(), [](const KZ3Entry& a, const KZ3Entry& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.label < b.label;
    });
    return KZ3Basis{p, cap, std::move(entries)};
}

} // namespace torsionlab
