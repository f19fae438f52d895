#include "torsionlab/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace torsionlab {

static bool is_odd_gen(const GeneratorSpec& g) { return g.kind == GenKind::Exterior; }

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(const AlgebraModel& m, std::vector<uint32_t> exps)
    : exps_(std::move(exps)) {
    if (exps_.size() != m.generator_count())
        throw std::invalid_argument("exponent vector length does not match generator count");
    degree_ = 0;
    for (size_t i = 0; i < exps_.size(); ++i) {
        const GeneratorSpec& g = m.generator(i);
        if (is_odd_gen(g) && exps_[i] > 1)
            throw std::invalid_argument("exterior generator " + g.name + " with exponent > 1");
        degree_ += static_cast<int64_t>(exps_[i]) * g.degree;
    }
}

Monomial Monomial::unit(const AlgebraModel& m) {
    return Monomial(m, std::vector<uint32_t>(m.generator_count(), 0));
}

bool Monomial::is_unit() const {
    return std::all_of(exps_.begin(), exps_.end(), [](uint32_t e) { return e == 0; });
}

bool Monomial::operator<(const Monomial& rhs) const {
    if (degree_ != rhs.degree_) return degree_ < rhs.degree_;
    return exps_ > rhs.exps_;     // larger exponent vector prints first
}

// ----------------------------------------------------------------- Element

Element::Element(const AlgebraModel& m) : model_(&m) {}

Element::Element(const AlgebraModel& m, const Monomial& mono, int64_t coeff) : model_(&m) {
    if (mono.exps().size() != m.generator_count())
        throw std::invalid_argument("monomial does not belong to this model");
    add_term(mono, coeff);
}

void Element::add_term(const Monomial& mono, int64_t coeff) {
    uint32_t p = model_->prime();
    int64_t r = coeff % static_cast<int64_t>(p);
    if (r < 0) r += p;
    if (r == 0) return;
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
        terms_.emplace(mono, static_cast<uint32_t>(r));
        return;
    }
    uint32_t sum = (it->second + static_cast<uint32_t>(r)) % p;
    if (sum == 0)
        terms_.erase(it);
    else
        it->second = sum;
}

static void require_same_model(const Element& a, const Element& b) {
    if (!a.model().same_presentation(b.model()))
        throw std::invalid_argument("elements live in different models");
}

Element Element::operator+(const Element& rhs) const {
    require_same_model(*this, rhs);
    Element out = *this;
    for (const auto& [mono, c] : rhs.terms_) out.add_term(mono, c);
    return out;
}

Element Element::operator-(const Element& rhs) const {
    require_same_model(*this, rhs);
    Element out = *this;
    for (const auto& [mono, c] : rhs.terms_) out.add_term(mono, -static_cast<int64_t>(c));
    return out;
}

Element Element::operator-() const { return scaled(-1); }

Element Element::scaled(int64_t c) const {
    Element out(*model_);
    for (const auto& [mono, k] : terms_) out.add_term(mono, c * static_cast<int64_t>(k));
    return out;
}

// Product of two monomials. Returns false when an exterior generator
// squares; otherwise fills the merged exponent vector and the Koszul
// sign (+1/-1) from the number of odd-odd transpositions needed to
// interleave the two factor sequences.
static bool merge_monomials(const AlgebraModel& m, const Monomial& a, const Monomial& b,
                            std::vector<uint32_t>& exps, int& sign) {
    size_t n = m.generator_count();
    exps.assign(n, 0);
    std::vector<size_t> odds_a;
    for (size_t i = 0; i < n; ++i) {
        if (is_odd_gen(m.generator(i)) && a.exp(i) && b.exp(i)) return false;
        exps[i] = a.exp(i) + b.exp(i);
        if (is_odd_gen(m.generator(i)) && a.exp(i)) odds_a.push_back(i);
    }
    size_t inversions = 0;
    for (size_t j = 0; j < n; ++j) {
        if (!is_odd_gen(m.generator(j)) || !b.exp(j)) continue;
        // odd factor j of b moves left past every odd factor of a with larger index
        inversions += odds_a.end() - std::upper_bound(odds_a.begin(), odds_a.end(), j);
    }
    sign = (inversions % 2 == 0) ? 1 : -1;
    return true;
}

Element Element::operator*(const Element& rhs) const {
    require_same_model(*this, rhs);
    Element out(*model_);
    std::vector<uint32_t> exps;
    int sign = 1;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : rhs.terms_) {
            if (!merge_monomials(*model_, ma, mb, exps, sign)) continue;
            int64_t c = static_cast<int64_t>(ca) * cb * sign;
            out.add_term(Monomial(*model_, exps), c);
        }
    }
    return out;
}

Element Element::pow(uint64_t e) const {
    Element acc = model_->one();
    Element base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool Element::operator==(const Element& rhs) const {
    if (!model_->same_presentation(rhs.model())) return false;
    return terms_ == rhs.terms_;
}

bool Element::is_homogeneous() const {
    if (terms_.empty()) return true;
    int64_t d = terms_.begin()->first.degree();
    for (const auto& [mono, c] : terms_)
        if (mono.degree() != d) return false;
    return true;
}

int64_t Element::degree() const {
    if (terms_.empty()) throw std::domain_error("degree of the zero element");
    if (!is_homogeneous()) throw std::domain_error("degree of a non-homogeneous element");
    return terms_.begin()->first.degree();
}

std::map<int64_t, Element> Element::homogeneous_components() const {
    std::map<int64_t, Element> out;
    for (const auto& [mono, c] : terms_) {
        auto [it, fresh] = out.try_emplace(mono.degree(), *model_);
        it->second.add_term(mono, c);
    }
    return out;
}

// -------------------------------------------------------------- AlgebraModel

AlgebraModel::AlgebraModel(uint32_t p, std::vector<GeneratorSpec> generators)
    : p_(p), gens_(std::move(generators)) {
    if (!is_prime(p)) throw std::invalid_argument("model characteristic must be prime");
    for (size_t i = 0; i < gens_.size(); ++i) {
        const GeneratorSpec& g = gens_[i];
        if (g.name.empty()) throw std::invalid_argument("generator with empty name");
        if (g.degree <= 0) throw std::invalid_argument("generator degree must be positive");
        bool odd = (g.degree % 2) != 0;
        if (odd != (g.kind == GenKind::Exterior))
            throw std::invalid_argument("generator " + g.name +
                                        ": parity of degree does not match kind");
        for (size_t j = 0; j < i; ++j)
            if (gens_[j].name == g.name)
                throw std::invalid_argument("duplicate generator name " + g.name);
    }
}

int AlgebraModel::find_generator(std::string_view name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return static_cast<int>(i);
    return -1;
}

Element AlgebraModel::zero() const { return Element(*this); }

Element AlgebraModel::one() const { return Element(*this, Monomial::unit(*this), 1); }

Element AlgebraModel::gen(size_t i) const { return gen_power(i, 1); }

Element AlgebraModel::gen(std::string_view name) const {
    int i = find_generator(name);
    if (i < 0) throw std::invalid_argument("unknown generator " + std::string(name));
    return gen(static_cast<size_t>(i));
}

Element AlgebraModel::gen_power(size_t i, uint32_t e) const {
    if (i >= gens_.size()) throw std::out_of_range("generator index");
    if (e == 0) return one();
    std::vector<uint32_t> exps(gens_.size(), 0);
    exps[i] = e;
    return Element(*this, Monomial(*this, std::move(exps)), 1);
}

static void check_table_value(const AlgebraModel& m, const Element& v, int64_t want_degree,
                              const std::string& what) {
    if (!v.model().same_presentation(m))
        throw std::invalid_argument(what + ": value lives in a different model");
    if (v.is_zero()) return;
    if (!v.is_homogeneous() || v.degree() != want_degree)
        throw std::invalid_argument(what + ": value is not homogeneous of degree " +
                                    std::to_string(want_degree));
}

void AlgebraModel::set_bockstein(std::string_view gen_name, const Element& value) {
    int i = find_generator(gen_name);
    if (i < 0) throw std::invalid_argument("unknown generator " + std::string(gen_name));
    check_table_value(*this, value, gens_[i].degree + 1, "bockstein(" + gens_[i].name + ")");
    bockstein_.insert_or_assign(static_cast<size_t>(i), value);
}

void AlgebraModel::set_power_op(std::string_view gen_name, uint32_t i, const Element& value) {
    int g = find_generator(gen_name);
    if (g < 0) throw std::invalid_argument("unknown generator " + std::string(gen_name));
    if (i == 0) throw std::invalid_argument("P^0 is the identity; no table entry allowed");
    int64_t want = gens_[g].degree + 2 * static_cast<int64_t>(i) * (p_ - 1);
    check_table_value(*this, value, want, "power(" + std::to_string(i) + ", " + gens_[g].name + ")");
    powers_.insert_or_assign(std::make_pair(static_cast<size_t>(g), i), value);
}

bool AlgebraModel::has_bockstein_entry(size_t i) const { return bockstein_.count(i) != 0; }

Element AlgebraModel::bockstein_on_gen(size_t i) const {
    auto it = bockstein_.find(i);
    if (it != bockstein_.end()) return it->second;
    throw std::domain_error("operation table has no bockstein entry for generator " +
                            gens_.at(i).name);
}

Element AlgebraModel::power_on_gen(uint32_t k, size_t i) const {
    if (k == 0) return gen(i);
    auto it = powers_.find(std::make_pair(i, k));
    if (it != powers_.end()) return it->second;
    const GeneratorSpec& g = gens_.at(i);
    // Instability: a power op of index k on a class of degree d is zero
    // for 2k > d, the p-th power at 2k = d.
    if (2 * static_cast<int64_t>(k) > g.degree) return zero();
    if (2 * static_cast<int64_t>(k) == g.degree && g.kind == GenKind::Polynomial)
        return gen_power(i, p_);
    throw std::domain_error("operation table has no entry for P^" + std::to_string(k) +
                            " on generator " + g.name);
}

bool AlgebraModel::same_presentation(const AlgebraModel& other) const {
    if (this == &other) return true;
    return p_ == other.p_ && gens_ == other.gens_;
}

// -------------------------------------------------------------- substitute

Element substitute(const Element& x, const std::map<std::string, Element>& images) {
    const AlgebraModel& src = x.model();
    const AlgebraModel* dst = nullptr;
    for (const auto& [name, img] : images) {
        int gi = src.find_generator(name);
        if (gi < 0)
            throw std::invalid_argument("substitute: unknown generator " + name);
        if (dst == nullptr) dst = &img.model();
        if (!img.model().same_presentation(*dst))
            throw std::invalid_argument("substitute: images live in different models");
        if (!img.is_zero() &&
            (!img.is_homogeneous() || img.degree() != src.generator(gi).degree))
            throw std::invalid_argument("substitute: image of " + name +
                                        " is not homogeneous of degree " +
                                        std::to_string(src.generator(gi).degree));
    }
    if (dst == nullptr) dst = &src;

    // Image of every generator, identity where none was given.
    std::vector<Element> img;
    img.reserve(src.generator_count());
    for (size_t i = 0; i < src.generator_count(); ++i) {
        const GeneratorSpec& g = src.generator(i);
        auto it = images.find(g.name);
        if (it != images.end()) {
            img.push_back(it->second);
            continue;
        }
        int j = dst->find_generator(g.name);
        if (j < 0 || dst->generator(j).degree != g.degree)
            throw std::invalid_argument("substitute: no image for generator " + g.name +
                                        " and the target model has no matching one");
        img.push_back(dst->gen(static_cast<size_t>(j)));
    }

    Element out = dst->zero();
    for (const auto& [mono, c] : x.terms()) {
        Element term = dst->one().scaled(static_cast<int64_t>(c));
        // Declaration order matches the canonical factor order, so the
        // Koszul signs of the images compose correctly.
        for (size_t i = 0; i < src.generator_count() && !term.is_zero(); ++i)
            if (mono.exp(i)) term = term * img[i].pow(mono.exp(i));
        out = out + term;
    }
    return out;
}

// ------------------------------------------------------------------- parse

namespace {

struct Lexer {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + msg);
    }
    uint64_t number() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected a number");
        uint64_t v = 0;
        auto res = std::from_chars(text.data() + start, text.data() + pos, v);
        if (res.ec != std::errc()) fail("number out of range");
        return v;
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        if (pos >= text.size() || !(std::isalpha(static_cast<unsigned char>(text[pos]))))
            fail("expected an identifier");
        ++pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        return std::string(text.substr(start, pos - start));
    }
};

struct Parser {
    Lexer lex;
    const AlgebraModel& m;

    Element expr() {
        int sign = 1;
        char c = lex.peek();
        if (c == '+' || c == '-') {
            ++lex.pos;
            sign = (c == '-') ? -1 : 1;
        }
        Element acc = term().scaled(sign);
        while (true) {
            c = lex.peek();
            if (c == '+' || c == '-') {
                ++lex.pos;
                Element t = term();
                acc = (c == '+') ? acc + t : acc - t;
            } else {
                return acc;
            }
        }
    }

    Element term() {
        Element acc = factor();
        while (lex.peek() == '*') {
            ++lex.pos;
            acc = acc * factor();
        }
        return acc;
    }

    Element factor() {
        Element base = atom();
        if (lex.peek() == '^') {
            ++lex.pos;
            uint64_t e = lex.number();
            return base.pow(e);
        }
        return base;
    }

    Element atom() {
        char c = lex.peek();
        if (c == '(') {
            ++lex.pos;
            Element inner = expr();
            if (lex.peek() != ')') lex.fail("expected ')'");
            ++lex.pos;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return m.one().scaled(static_cast<int64_t>(lex.number() % m.prime()));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name = lex.ident();
            int i = m.find_generator(name);
            if (i < 0) lex.fail("unknown generator '" + name + "'");
            return m.gen(static_cast<size_t>(i));
        }
        lex.fail("unexpected character");
    }
};

} // namespace

Element parse(const AlgebraModel& m, std::string_view text) {
    Parser parser{Lexer{text}, m};
    Element out = parser.expr();
    if (parser.lex.peek() != '\0') parser.lex.fail("trailing input");
    return out;
}

// ------------------------------------------------------------------ format

std::string format(const Monomial& mono, const AlgebraModel& m) {
    if (mono.is_unit()) return "1";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < m.generator_count(); ++i) {
        if (!mono.exp(i)) continue;
        if (!first) os << "*";
        first = false;
        os << m.generator(i).name;
        if (mono.exp(i) > 1) os << "^" << mono.exp(i);
    }
    return os.str();
}

std::string format(const Element& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : x.terms()) {
        if (!first) os << " + ";
        first = false;
        if (mono.is_unit()) {
            os << c;
        } else if (c != 1) {
            os << c << "*" << format(mono, x.model());
        } else {
            os << format(mono, x.model());
        }
    }
    return os.str();
}

} // namespace torsionlab
