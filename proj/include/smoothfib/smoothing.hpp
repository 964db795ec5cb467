#pragma once

// Lattice data of the smoothing: the labelled generating set of the dual of
// sigma-tilde, the binomial relations among its characters, chart expressions
// and fibre models. Summand and edge indices are 1-based.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cone.hpp"
#include "dd.hpp"
#include "polytope.hpp"

namespace smoothfib {

struct CharacterLabel {
    enum class Kind { T, X, Y, WPlus, WMinus, Extra };

    Kind kind = Kind::T;
    std::size_t i = 0;
    std::size_t j = 0;

    static CharacterLabel t(std::size_t i) { return {Kind::T, i, 0}; }
    static CharacterLabel x(std::size_t i, std::size_t j) { return {Kind::X, i, j}; }
    static CharacterLabel y(std::size_t i) { return {Kind::Y, i, 0}; }
    static CharacterLabel w_plus(std::size_t i, std::size_t l) { return {Kind::WPlus, i, l}; }
    static CharacterLabel w_minus(std::size_t i, std::size_t l) { return {Kind::WMinus, i, l}; }
    static CharacterLabel extra(std::size_t i) { return {Kind::Extra, i, 0}; }

    std::string str() const {
        auto s = [](std::size_t v) { return std::to_string(v); };
        switch (kind) {
            case Kind::T: return "t" + s(i);
            case Kind::X: return "x" + s(i) + "," + s(j);
            case Kind::Y: return "y" + s(i);
            case Kind::WPlus: return "w+" + s(i) + "," + s(j);
            case Kind::WMinus: return "w-" + s(i) + "," + s(j);
            case Kind::Extra: return "z" + s(i);
        }
        return "?";
    }

    auto operator<=>(const CharacterLabel&) const = default;
};

struct GeneratorSet {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<std::pair<CharacterLabel, IntVec>> entries;

    const IntVec& operator[](const CharacterLabel& l) const {
        for (const auto& [lab, v] : entries)
            if (lab == l) return v;
        throw Error(ErrorKind::RangeError, "no generator labelled " + l.str());
    }

    std::vector<IntVec> vectors() const {
        std::vector<IntVec> out;
        for (const auto& e : entries) out.push_back(e.second);
        return out;
    }

    std::size_t count(CharacterLabel::Kind kind) const {
        std::size_t c = 0;
        for (const auto& e : entries) c += e.first.kind == kind;
        return c;
    }
};

// (v, phi(v)) in Z^{n+k}.
inline IntVec lift(const MinkowskiDecomposition& d, const IntVec& v) { return concat(v, phi(d, v)); }

// Labelled characters: t_i, then x/y/w+/w- per summand, then the remaining
// Hilbert basis elements of the dual of sigma-tilde in lexicographic order.
inline GeneratorSet generator_set(const MinkowskiDecomposition& d) {
    require_admissible(d);
    GeneratorSet g;
    g.n = d.n;
    g.k = d.k();
    using L = CharacterLabel;
    for (std::size_t i = 1; i <= g.k; ++i) {
        IntVec t(g.n + g.k, Int(0));
        t[g.n + i - 1] = 1;
        g.entries.emplace_back(L::t(i), t);
    }
    for (std::size_t p = 1; p <= g.k; ++p) {
        SummandMatrices s = summand_matrices(d, p);
        for (std::size_t l = 0; l < s.a.cols(); ++l) g.entries.emplace_back(L::x(p, l + 1), lift(d, s.a.col(l)));
        g.entries.emplace_back(L::y(p), lift(d, s.b));
        for (std::size_t l = 0; l < s.c.cols(); ++l) g.entries.emplace_back(L::w_plus(p, l + 1), lift(d, s.c.col(l)));
        for (std::size_t l = 0; l < s.c.cols(); ++l) g.entries.emplace_back(L::w_minus(p, l + 1), lift(d, -s.c.col(l)));
    }
    std::set<IntVec> labelled;
    for (const auto& e : g.entries) labelled.insert(e.second);
    std::set<IntVec> extras;
    for (const auto& h : hilbert_basis(sigma_tilde(d).dual())) {
        IntVec v(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(g.n));
        if (is_zero(v)) continue;
        IntVec lv = lift(d, v);
        if (!labelled.count(lv)) extras.insert(lv);
    }
    std::size_t idx = 1;
    for (const auto& e : extras) g.entries.emplace_back(L::extra(idx++), e);
    return g;
}

// A binomial lhs - rhs; repeated labels encode powers.
struct BinomialRelation {
    std::vector<CharacterLabel> lhs;
    std::vector<CharacterLabel> rhs;

    std::string str() const {
        auto side = [](const std::vector<CharacterLabel>& s) {
            std::string out;
            for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "*" : "") + s[i].str();
            return out.empty() ? std::string("1") : out;
        };
        return side(lhs) + " - " + side(rhs);
    }
};

inline bool verify_binomial(const GeneratorSet& g, const BinomialRelation& r) {
    IntVec a(g.n + g.k, Int(0)), b(g.n + g.k, Int(0));
    for (const auto& l : r.lhs) a = a + g[l];
    for (const auto& l : r.rhs) b = b + g[l];
    return a == b;
}

namespace detail {

inline std::vector<CharacterLabel> t_power(const IntVec& e) {
    std::vector<CharacterLabel> out;
    for (std::size_t j = 0; j < e.size(); ++j)
        for (Int c = 0; c < e[j]; ++c) out.push_back(CharacterLabel::t(j + 1));
    return out;
}

}  // namespace detail

// Exponent vector beta with y_p * prod_l x_{p,l} = prod_j t_j^{beta_j}.
inline IntVec relation_xy(const MinkowskiDecomposition& d, std::size_t p) {
    require_admissible(d);
    SummandMatrices s = summand_matrices(d, p);
    IntVec beta = phi(d, s.b);
    for (std::size_t l = 0; l < s.a.cols(); ++l) beta = beta + phi(d, s.a.col(l));
    ensure(beta[p - 1] == 1, "y*x relation has exponent of t_p different from 1");
    return beta;
}

inline BinomialRelation relation_xy_binomial(const MinkowskiDecomposition& d, std::size_t p) {
    BinomialRelation r;
    r.lhs.push_back(CharacterLabel::y(p));
    for (std::size_t l = 1; l <= d.m(p); ++l) r.lhs.push_back(CharacterLabel::x(p, l));
    r.rhs = detail::t_power(relation_xy(d, p));
    return r;
}

// Exponent vector eta with w+_{p,j} * w-_{p,j} = prod_l t_l^{eta_l}.
inline IntVec relation_w(const MinkowskiDecomposition& d, std::size_t p, std::size_t j) {
    require_admissible(d);
    SummandMatrices s = summand_matrices(d, p);
    if (j < 1 || j > s.c.cols()) throw Error(ErrorKind::RangeError, "no w-coordinate " + std::to_string(j));
    IntVec c = s.c.col(j - 1);
    IntVec eta = phi(d, c) + phi(d, -c);
    ensure(eta[p - 1] == 0, "w relation involves t_p");
    return eta;
}

inline BinomialRelation relation_w_binomial(const MinkowskiDecomposition& d, std::size_t p, std::size_t j) {
    BinomialRelation r;
    r.lhs = {CharacterLabel::w_plus(p, j), CharacterLabel::w_minus(p, j)};
    r.rhs = detail::t_power(relation_w(d, p, j));
    return r;
}

// A character written as a Laurent monomial in the chart coordinates of summand p.
struct ChartExpression {
    std::size_t p = 0;
    bool singular = false;
    Int y = 0;            // exponent of y_p (zero on the smooth chart)
    std::vector<Int> x;   // exponents of x_{p,l}
    std::vector<Int> w;   // exponents of w+_{p,l}
    IntVec t;             // exponents of t_1..t_k

    std::vector<std::pair<CharacterLabel, Int>> monomial() const {
        std::vector<std::pair<CharacterLabel, Int>> out;
        if (y != 0) out.emplace_back(CharacterLabel::y(p), y);
        for (std::size_t l = 0; l < x.size(); ++l)
            if (x[l] != 0) out.emplace_back(CharacterLabel::x(p, l + 1), x[l]);
        for (std::size_t l = 0; l < w.size(); ++l)
            if (w[l] != 0) out.emplace_back(CharacterLabel::w_plus(p, l + 1), w[l]);
        for (std::size_t l = 0; l < t.size(); ++l)
            if (t[l] != 0) out.emplace_back(CharacterLabel::t(l + 1), t[l]);
        return out;
    }
};

// Sum of exponent * generator over the expression.
inline IntVec evaluate(const GeneratorSet& g, const ChartExpression& e) {
    IntVec s(g.n + g.k, Int(0));
    for (const auto& [lab, ex] : e.monomial()) s = s + ex * g[lab];
    return s;
}

// On the singular chart the x-exponents are shifted by
// xi_plus = max(0, -xi_1, ..., -xi_m) and y_p carries xi_plus.
inline ChartExpression express_in_chart(const MinkowskiDecomposition& d, const IntVec& zhat, std::size_t p,
                                        bool singular) {
    require_admissible(d);
    if (zhat.size() != d.n) throw Error(ErrorKind::DimensionMismatch, "express_in_chart");
    SummandMatrices s = summand_matrices(d, p);
    const std::size_t m = s.v.rows();
    ChartExpression e;
    e.p = p;
    e.singular = singular;
    IntVec xi = s.v * zhat;
    IntVec xw = s.e.rows() ? s.e * zhat : IntVec{};
    Int xp = 0;
    if (singular)
        for (const auto& v : xi) xp = std::max(xp, Int(-v));
    e.y = xp;
    IntVec tail = phi(d, zhat);
    if (singular) tail = tail - xp * phi(d, s.b);
    for (std::size_t l = 0; l < m; ++l) {
        e.x.push_back(xi[l] + xp);
        tail = tail - e.x.back() * phi(d, s.a.col(l));
    }
    for (std::size_t l = 0; l < xw.size(); ++l) {
        e.w.push_back(xw[l]);
        tail = tail - xw[l] * phi(d, s.c.col(l));
    }
    e.t = tail;
    if (singular) ensure(e.t[p - 1] == 0, "singular chart expression involves t_p");
    return e;
}

struct FibreModel {
    std::size_t p = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<CharacterLabel> product_coords;  // y_p, x_{p,1..m}: the fibre y*x = eps
    std::vector<CharacterLabel> torus_coords;    // w+_{p,1..n-m}
};

// The fibre over t_p = eps near the singular locus of summand p is
// {y x_1 ... x_m = eps} x (C*)^{n-m}.
inline FibreModel fibre_model(const MinkowskiDecomposition& d, std::size_t p) {
    require_admissible(d);
    FibreModel f;
    f.p = p;
    f.m = summand(d, p).rays.size();
    f.n = d.n;
    f.product_coords.push_back(CharacterLabel::y(p));
    for (std::size_t l = 1; l <= f.m; ++l) f.product_coords.push_back(CharacterLabel::x(p, l));
    for (std::size_t l = 1; l <= f.n - f.m; ++l) f.torus_coords.push_back(CharacterLabel::w_plus(p, l));
    return f;
}

struct Grading {
    IntVec u;
    Int degree;
};

// A primitive integer u and degree > 0 with <m, u> = degree for every generator,
// or nothing when no such functional exists.
inline std::optional<Grading> check_homogeneity(const GeneratorSet& g) {
    const std::size_t dim = g.n + g.k;
    std::vector<IntVec> rows = g.vectors();
    RatMat a = to_rat(IntMat::from_rows(rows, dim));
    auto sol = solve_rational(a, RatVec(rows.size(), Rat(1)), dim);
    if (!sol) return std::nullopt;
    RatVec x = *sol;
    x.push_back(Rat(1));
    IntVec scaled = primitive_from_rat(x);
    Grading gr{IntVec(scaled.begin(), scaled.end() - 1), scaled.back()};
    for (const auto& r : rows) ensure(dot(r, gr.u) == gr.degree, "grading check");
    return gr;
}

}  // namespace smoothfib
