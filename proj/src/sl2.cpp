#include "torsionlab/sl2.hpp"

#include <map>
#include <mutex>
#include <tuple>
#include <utility>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace torsionlab {

static void require_odd_prime(uint32_t p) {
    if (!is_prime(p) || p == 2)
        throw std::invalid_argument("odd prime required, got " + std::to_string(p));
}

const AlgebraModel& xieta_model(uint32_t p) {
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
                                                {"xi", 2, GenKind::Polynomial},
                                                {"eta", 2, GenKind::Polynomial},
                                            }))
            .first->second;
    model.set_bockstein("xi", model.zero());
    model.set_bockstein("eta", model.zero());
    return model;
}

int64_t chow_degree(const Element& x) { return x.degree() / 2; }

// -------------------------------------------------------------------- Mat2

Mat2 mat2(uint32_t p, int64_t m11, int64_t m12, int64_t m21, int64_t m22) {
    require_odd_prime(p);
    auto red = [p](int64_t v) {
        int64_t r = v % static_cast<int64_t>(p);
        if (r < 0) r += p;
        return static_cast<uint32_t>(r);
    };
    Mat2 g{p, red(m11), red(m12), red(m21), red(m22)};
    uint32_t det = (Fp(g.m11, p) * Fp(g.m22, p) - Fp(g.m12, p) * Fp(g.m21, p)).value();
    if (det != 1)
        throw std::invalid_argument("determinant " + std::to_string(det) + " != 1, not in SL2");
    return g;
}

Mat2 Mat2::identity(uint32_t p) { return mat2(p, 1, 0, 0, 1); }

std::string Mat2::to_string() const {
    std::ostringstream os;
    os << "(" << m11 << "," << m12 << ";" << m21 << "," << m22 << ")";
    return os.str();
}

Mat2 mul(const Mat2& g, const Mat2& h) {
    if (g.p != h.p) throw std::invalid_argument("matrices over different primes");
    uint32_t p = g.p;
    auto dot = [p](uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
        return (Fp(a, p) * Fp(b, p) + Fp(c, p) * Fp(d, p)).value();
    };
    return Mat2{p, dot(g.m11, h.m11, g.m12, h.m21), dot(g.m11, h.m12, g.m12, h.m22),
                dot(g.m21, h.m11, g.m22, h.m21), dot(g.m21, h.m12, g.m22, h.m22)};
}

Element act(const Mat2& g, const Element& x) {
    const AlgebraModel& m = xieta_model(g.p);
    if (!x.model().same_presentation(m))
        throw std::invalid_argument("element does not live in the two-generator model");
    Element xi = m.gen("xi"), eta = m.gen("eta");
    std::map<std::string, Element> images{
        {"xi", xi.scaled(g.m11) + eta.scaled(g.m21)},
        {"eta", xi.scaled(g.m12) + eta.scaled(g.m22)},
    };
    return substitute(x, images);
}

// ------------------------------------------------------------ named classes

Element q_class(uint32_t p) {
    const AlgebraModel& m = xieta_model(p);
    Element xi = m.gen("xi"), eta = m.gen("eta");
    Element diff = xi.pow(p - 1) - eta.pow(p - 1);
    return xi.pow(static_cast<uint64_t>(p) * p - p) + eta.pow(p - 1) * diff.pow(p - 1);
}

Element r_class(uint32_t p) {
    const AlgebraModel& m = xieta_model(p);
    Element xi = m.gen("xi"), eta = m.gen("eta");
    return xi * eta * (xi.pow(p - 1) - eta.pow(p - 1));
}

// ------------------------------------------------------------- group sweep

std::vector<Mat2> sl2_generators(uint32_t p) {
    return {mat2(p, 1, 1, 0, 1), mat2(p, 0, -1, 1, 0)};
}

std::vector<Mat2> sl2_elements(uint32_t p) {
    require_odd_prime(p);
    std::vector<Mat2> out;
    out.reserve(static_cast<size_t>(p) * (p * p - 1));
    for (uint32_t a = 0; a < p; ++a)
        for (uint32_t b = 0; b < p; ++b)
            for (uint32_t c = 0; c < p; ++c)
                for (uint32_t d = 0; d < p; ++d) {
                    uint32_t det = (Fp(a, p) * Fp(d, p) - Fp(b, p) * Fp(c, p)).value();
                    if (det == 1) out.push_back(Mat2{p, a, b, c, d});
                }
    return out;
}

InvariantCheck check_invariant(const Element& x, InvariantMode mode) {
    if (!x.is_zero() && !x.is_homogeneous())
        throw std::invalid_argument("invariance check needs a homogeneous element");
    uint32_t p = x.model().prime();
    std::vector<Mat2> probe =
        (mode == InvariantMode::Generators) ? sl2_generators(p) : sl2_elements(p);
    for (const Mat2& g : probe)
        if (!(act(g, x) == x)) return InvariantCheck{false, g};
    return InvariantCheck{true, std::nullopt};
}

// ----------------------------------------------------------- invariant_dim

uint32_t invariant_dim_default_cap(uint32_t p) {
    if (p == 3) return 12;
    if (p == 5) return 8;
    return 6;
}

namespace {

// Row-reduce over F_p, returning the rank. Rows are modified in place.
size_t rank_mod_p(std::vector<std::vector<uint32_t>>& rows, uint32_t p) {
    size_t rank = 0;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
        size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        uint32_t inv = Fp(rows[rank][col], p).inverse().value();
        for (size_t j = col; j < cols; ++j)
            rows[rank][j] = (Fp(rows[rank][j], p) * Fp(inv, p)).value();
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            uint32_t f = rows[r][col];
            for (size_t j = col; j < cols; ++j)
                rows[r][j] = (Fp(rows[r][j], p) - Fp(f, p) * Fp(rows[rank][j], p)).value();
        }
        ++rank;
    }
    return rank;
}

} // namespace

int invariant_dim(uint32_t p, uint32_t d, uint32_t cap) {
    require_odd_prime(p);
    if (cap == 0) cap = invariant_dim_default_cap(p);
    if (d > cap)
        throw std::invalid_argument("degree " + std::to_string(d) +
                                    " exceeds the fixed-space cap " + std::to_string(cap));
    if (d == 0) return 1;

    const AlgebraModel& m = xieta_model(p);
    size_t dim = d + 1;   // basis xi^i eta^(d-i)
    auto basis_index = [&](const Monomial& mono) { return mono.exp(0); };

    // Stack (act(g) - id) for all group elements; the fixed space is the
    // common kernel, so each block enters transposed: row j holds the
    // j-th output coordinate of every basis image. Stacking the images
    // themselves would measure the coinvariant quotient instead, and in
    // this modular setting (p divides the group order) the two differ.
    std::vector<std::vector<uint32_t>> rows;
    for (const Mat2& g : sl2_elements(p)) {
        std::vector<std::vector<uint32_t>> block(dim, std::vector<uint32_t>(dim, 0));
        for (uint32_t i = 0; i <= d; ++i) {
            Element image = act(g, m.gen_power(0, i) * m.gen_power(1, d - i));
            for (const auto& [mono, c] : image.terms()) block[basis_index(mono)][i] = c;
            block[i][i] = (Fp(block[i][i], p) - Fp(1, p)).value();
        }
        for (auto& row : block) rows.push_back(std::move(row));
    }
    size_t rank = rank_mod_p(rows, p);
    return static_cast<int>(dim - rank);
}

int qr_monomial_count(uint32_t p, uint32_t d) {
    uint32_t dq = p * p - p, dr = p + 1;
    int count = 0;
    for (uint32_t a = 0; a * dq <= d; ++a)
        if ((d - a * dq) % dr == 0) ++count;
    return count;
}

} // namespace torsionlab
