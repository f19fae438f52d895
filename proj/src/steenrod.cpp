#include "torsionlab/steenrod.hpp"

#include <charconv>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace torsionlab {

static void require_odd_prime(uint32_t p) {
    if (!is_prime(p) || p == 2)
        throw std::invalid_argument("odd prime required, got " + std::to_string(p));
}

// ------------------------------------------------------------------ OpWord

OpWord::OpWord(uint32_t p, std::vector<OpToken> tokens) : p_(p), tokens_(std::move(tokens)) {
    require_odd_prime(p);
    // power == 0 already encodes the Bockstein, so a P^0 cannot occur as
    // a token; parse strips the spelling "P0" before it gets here.
}

int64_t OpWord::degree() const {
    int64_t d = 0;
    for (const OpToken& t : tokens_)
        d += t.is_beta() ? 1 : 2 * static_cast<int64_t>(t.power) * (p_ - 1);
    return d;
}

int64_t word_degree(const OpWord& w) { return w.degree(); }

namespace {

struct Violation {
    size_t pos;
    enum Kind { BetaBeta, PowerPower, PowerBetaPower } kind;
};

// Leftmost spot where the word fails admissibility. BetaBeta at (i,i+1),
// PowerPower P^a P^b with a < p b, PowerBetaPower P^a B P^b with a <= p b.
std::optional<Violation> find_violation(const std::vector<OpToken>& t, uint32_t p) {
    for (size_t i = 0; i + 1 < t.size(); ++i) {
        if (t[i].is_beta()) {
            if (t[i + 1].is_beta()) return Violation{i, Violation::BetaBeta};
            continue;
        }
        uint64_t a = t[i].power;
        if (!t[i + 1].is_beta()) {
            if (a < static_cast<uint64_t>(p) * t[i + 1].power)
                return Violation{i, Violation::PowerPower};
        } else if (i + 2 < t.size() && !t[i + 2].is_beta()) {
            if (a <= static_cast<uint64_t>(p) * t[i + 2].power)
                return Violation{i, Violation::PowerBetaPower};
        }
    }
    return std::nullopt;
}

} // namespace

bool OpWord::is_admissible() const { return !find_violation(tokens_, p_).has_value(); }

std::string OpWord::to_string() const {
    if (tokens_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const OpToken& t : tokens_) {
        if (!first) os << " ";
        first = false;
        if (t.is_beta())
            os << "B";
        else
            os << "P" << t.power;
    }
    return os.str();
}

OpWord OpWord::parse(uint32_t p, std::string_view text) {
    std::vector<OpToken> tokens;
    std::istringstream is{std::string(text)};
    std::string tok;
    while (is >> tok) {
        if (tok == "1" && tokens.empty()) continue;    // identity word
        if (tok == "B") {
            tokens.push_back(OpToken::beta());
            continue;
        }
        if (tok.size() >= 2 && tok[0] == 'P') {
            uint32_t v = 0;
            auto res = std::from_chars(tok.data() + 1, tok.data() + tok.size(), v);
            if (res.ec == std::errc() && res.ptr == tok.data() + tok.size()) {
                if (v > 0) tokens.push_back(OpToken::P(v));
                continue;                              // P0 is the identity
            }
        }
        throw std::invalid_argument("bad operation token '" + tok + "'");
    }
    return OpWord(p, std::move(tokens));
}

bool OpWord::operator==(const OpWord& rhs) const {
    return p_ == rhs.p_ && tokens_ == rhs.tokens_;
}

bool OpWord::operator<(const OpWord& rhs) const {
    if (p_ != rhs.p_) return p_ < rhs.p_;
    return tokens_ < rhs.tokens_;
}

// ------------------------------------------------------------ AdmissibleSum

AdmissibleSum::AdmissibleSum(uint32_t p) : p_(p) { require_odd_prime(p); }

void AdmissibleSum::add(const OpWord& w, int64_t c) {
    if (w.prime() != p_) throw std::invalid_argument("word prime does not match sum prime");
    int64_t r = c % static_cast<int64_t>(p_);
    if (r < 0) r += p_;
    if (r == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, static_cast<uint32_t>(r));
        return;
    }
    uint32_t sum = (it->second + static_cast<uint32_t>(r)) % p_;
    if (sum == 0)
        terms_.erase(it);
    else
        it->second = sum;
}

bool AdmissibleSum::operator==(const AdmissibleSum& rhs) const {
    return p_ == rhs.p_ && terms_ == rhs.terms_;
}

std::string AdmissibleSum::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << c << " * ";
        os << w.to_string();
    }
    return os.str();
}

// ------------------------------------------------------------- straightening
//
// Relations used, valid at an odd prime p with the convention that
// C(m, k) vanishes unless 0 <= k <= m:
//
//   B B = 0
//
//   P^a P^b   (a < p b) =
//     sum_i (-1)^(a+i) C((p-1)(b-i) - 1, a - p i) P^(a+b-i) P^i
//
//   P^a B P^b (a <= p b) =
//     sum_i (-1)^(a+i)   C((p-1)(b-i),     a - p i)     B P^(a+b-i) P^i
//   + sum_i (-1)^(a+i+1) C((p-1)(b-i) - 1, a - p i - 1) P^(a+b-i) B P^i
//
// P^0 factors are dropped from the fragments.

namespace {

uint32_t guarded_binom(int64_t m, int64_t k, uint32_t p) {
    if (k < 0 || m < 0 || k > m) return 0;
    return binom_mod_p(static_cast<uint64_t>(m), static_cast<uint64_t>(k), p).value();
}

int64_t parity_sign(int64_t e) { return (e % 2 == 0) ? 1 : -1; }

using Fragment = std::pair<std::vector<OpToken>, int64_t>;

std::vector<Fragment> rewrite_power_power(uint32_t p, uint32_t a, uint32_t b) {
    std::vector<Fragment> out;
    for (int64_t i = 0; i <= static_cast<int64_t>(a) / p; ++i) {
        int64_t m = static_cast<int64_t>(p - 1) * (b - i) - 1;
        uint32_t c = guarded_binom(m, a - static_cast<int64_t>(p) * i, p);
        if (c == 0) continue;
        std::vector<OpToken> frag;
        frag.push_back(OpToken::P(static_cast<uint32_t>(a + b - i)));
        if (i > 0) frag.push_back(OpToken::P(static_cast<uint32_t>(i)));
        out.emplace_back(std::move(frag), parity_sign(a + i) * c);
    }
    return out;
}

std::vector<Fragment> rewrite_power_beta_power(uint32_t p, uint32_t a, uint32_t b) {
    std::vector<Fragment> out;
    for (int64_t i = 0; i <= static_cast<int64_t>(a) / p; ++i) {
        int64_t base = static_cast<int64_t>(p - 1) * (b - i);
        uint32_t c1 = guarded_binom(base, a - static_cast<int64_t>(p) * i, p);
        if (c1 != 0) {
            std::vector<OpToken> frag;
            frag.push_back(OpToken::beta());
            frag.push_back(OpToken::P(static_cast<uint32_t>(a + b - i)));
            if (i > 0) frag.push_back(OpToken::P(static_cast<uint32_t>(i)));
            out.emplace_back(std::move(frag), parity_sign(a + i) * c1);
        }
        uint32_t c2 = guarded_binom(base - 1, a - static_cast<int64_t>(p) * i - 1, p);
        if (c2 != 0) {
            std::vector<OpToken> frag;
            frag.push_back(OpToken::P(static_cast<uint32_t>(a + b - i)));
            frag.push_back(OpToken::beta());
            if (i > 0) frag.push_back(OpToken::P(static_cast<uint32_t>(i)));
            out.emplace_back(std::move(frag), parity_sign(a + i + 1) * c2);
        }
    }
    return out;
}

} // namespace

AdmissibleSum adem_normalize(const OpWord& w) {
    uint32_t p = w.prime();
    AdmissibleSum out(p);
    std::map<std::vector<OpToken>, uint32_t> pending;
    pending[w.tokens()] = 1;

    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const std::vector<OpToken>& toks = node.key();
        uint32_t coeff = node.mapped();

        auto v = find_violation(toks, p);
        if (!v) {
            out.add(OpWord(p, toks), coeff);
            continue;
        }
        if (v->kind == Violation::BetaBeta) continue;   // the term dies

        size_t span = (v->kind == Violation::PowerPower) ? 2 : 3;
        uint32_t a = toks[v->pos].power;
        uint32_t b = toks[v->pos + span - 1].power;
        std::vector<Fragment> frags = (v->kind == Violation::PowerPower)
                                          ? rewrite_power_power(p, a, b)
                                          : rewrite_power_beta_power(p, a, b);

        for (const auto& [frag, c] : frags) {
            std::vector<OpToken> next;
            next.reserve(toks.size() - span + frag.size());
            next.insert(next.end(), toks.begin(), toks.begin() + v->pos);
            next.insert(next.end(), frag.begin(), frag.end());
            next.insert(next.end(), toks.begin() + v->pos + span, toks.end());

            int64_t total = static_cast<int64_t>(coeff) * c % static_cast<int64_t>(p);
            if (total < 0) total += p;
            if (total == 0) continue;
            auto it = pending.find(next);
            if (it == pending.end()) {
                pending.emplace(std::move(next), static_cast<uint32_t>(total));
            } else {
                it->second = (it->second + static_cast<uint32_t>(total)) % p;
                if (it->second == 0) pending.erase(it);
            }
        }
    }
    return out;
}

// ------------------------------------------------------------------- apply

namespace {

// Per-call evaluator. Memoizes on (operation index, exponent vector);
// monomials are peeled one generator copy at a time, so the distinct
// sub-monomials per top-level term stay linear in the exponent sum.
class Applier {
public:
    explicit Applier(const AlgebraModel& m) : m_(m) { require_odd_prime(m.prime()); }

    Element beta(const Element& x) {
        Element out = m_.zero();
        for (const auto& [mono, c] : x.terms())
            out = out + beta_mono(mono).scaled(static_cast<int64_t>(c));
        return out;
    }

    Element power(uint32_t k, const Element& x) {
        if (k == 0) return x;
        Element out = m_.zero();
        for (const auto& [mono, c] : x.terms())
            out = out + power_mono(k, mono).scaled(static_cast<int64_t>(c));
        return out;
    }

private:
    const AlgebraModel& m_;
    std::map<std::vector<uint32_t>, Element> beta_memo_;
    std::map<std::pair<uint32_t, std::vector<uint32_t>>, Element> power_memo_;

    // index of the first generator present, or -1 for the unit monomial
    static int head(const Monomial& mono) {
        for (size_t i = 0; i < mono.exps().size(); ++i)
            if (mono.exp(i)) return static_cast<int>(i);
        return -1;
    }

    static Monomial strip_one(const AlgebraModel& m, const Monomial& mono, size_t i) {
        std::vector<uint32_t> e = mono.exps();
        --e[i];
        return Monomial(m, std::move(e));
    }

    // B(g v) = B(g) v + (-1)^deg(g) g B(v)
    Element beta_mono(const Monomial& mono) {
        int h = head(mono);
        if (h < 0) return m_.zero();
        auto it = beta_memo_.find(mono.exps());
        if (it != beta_memo_.end()) return it->second;

        size_t i = static_cast<size_t>(h);
        Monomial rest = strip_one(m_, mono, i);
        Element g = m_.gen(i);
        Element value = m_.bockstein_on_gen(i) * Element(m_, rest, 1);
        Element tail = g * beta_mono(rest);
        int64_t sign = (m_.generator(i).degree % 2 == 0) ? 1 : -1;
        value = value + tail.scaled(sign);

        beta_memo_.emplace(mono.exps(), value);
        return value;
    }

    // P^k(g v) = sum_{j} P^j(g) P^(k-j)(v), with P^j(g) from the model
    // table (instability defaults included).
    Element power_mono(uint32_t k, const Monomial& mono) {
        if (k == 0) return Element(m_, mono, 1);
        int h = head(mono);
        if (h < 0) return m_.zero();    // P^k(1) = 0 for k >= 1
        auto key = std::make_pair(k, mono.exps());
        auto it = power_memo_.find(key);
        if (it != power_memo_.end()) return it->second;

        size_t i = static_cast<size_t>(h);
        Monomial rest = strip_one(m_, mono, i);
        Element value = m_.zero();
        for (uint32_t j = 0; j <= k; ++j) {
            Element pg = (j == 0) ? m_.gen(i) : m_.power_on_gen(j, i);
            if (pg.is_zero()) continue;
            Element pv = power_mono(k - j, rest);
            if (pv.is_zero()) continue;
            value = value + pg * pv;
        }

        power_memo_.emplace(std::move(key), value);
        return value;
    }
};

} // namespace

Element apply_beta(const Element& x) { return Applier(x.model()).beta(x); }

Element apply_power(uint32_t k, const Element& x) { return Applier(x.model()).power(k, x); }

Element apply(const OpWord& w, const Element& x) {
    if (w.prime() != x.model().prime())
        throw std::invalid_argument("word prime does not match model characteristic");
    Applier ap(x.model());
    Element cur = x;
    for (auto it = w.tokens().rbegin(); it != w.tokens().rend(); ++it)
        cur = it->is_beta() ? ap.beta(cur) : ap.power(it->power, cur);
    return cur;
}

Element apply(const AdmissibleSum& s, const Element& x) {
    if (s.prime() != x.model().prime())
        throw std::invalid_argument("sum prime does not match model characteristic");
    Element out = x.model().zero();
    for (const auto& [w, c] : s.terms())
        out = out + apply(w, x).scaled(static_cast<int64_t>(c));
    return out;
}

} // namespace torsionlab
