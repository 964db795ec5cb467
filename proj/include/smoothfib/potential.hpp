#pragma once

// Potentials of the smoothing: factors, the closed form, its mutation
// factorisation, the Newton polytope and critical loci.

#include <algorithm>
#include <complex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "laurent.hpp"
#include "polytope.hpp"
#include "roots.hpp"
#include "upoly.hpp"

namespace smoothfib {

// Sum of z^v over the vertices of m.
inline LaurentPoly factor(const LatticePolytope& m) {
    LaurentPoly p(m.ambient_dim());
    for (const auto& v : m.vertices()) p += LaurentPoly::monomial(m.ambient_dim(), v);
    return p;
}

// z_{n+1} * prod_p factor(M_p).
inline LaurentPoly build_potential(const MinkowskiDecomposition& d) {
    LaurentPoly po = LaurentPoly::variable(d.n + 1, d.n);
    for (const auto& s : d.summands) po = po * factor(s.polytope).extended(d.n + 1);
    return po;
}

// Substitutes z_{n+1} -> z_{n+1} * factor(M_p).
inline LaurentPoly mutate(const LaurentPoly& po, const MinkowskiDecomposition& d, std::size_t p) {
    if (po.nvars() != d.n + 1) throw Error(ErrorKind::DimensionMismatch, "mutate");
    LaurentPoly f = factor(summand(d, p).polytope).extended(d.n + 1);
    LaurentPoly out(d.n + 1);
    for (const auto& [e, c] : po.terms()) {
        if (e[d.n] < 0) throw Error(ErrorKind::NegativeExponent, "z_{n+1} appears with a negative power");
        out += LaurentPoly::monomial(d.n + 1, e, c) * f.pow(static_cast<unsigned>(e[d.n]));
    }
    return out;
}

// Mutations of z_{n+1} by every summand in turn.
inline LaurentPoly mutation_fold(const MinkowskiDecomposition& d) {
    LaurentPoly po = LaurentPoly::variable(d.n + 1, d.n);
    for (std::size_t p = 1; p <= d.k(); ++p) po = mutate(po, d, p);
    return po;
}

inline LatticePolytope newton_polytope(const LaurentPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::EmptyInput, "zero polynomial");
    return convex_hull(p.support());
}

// Largest modulus of the analytic gradient at a point.
inline long double gradient_norm(const LaurentPoly& p, const std::vector<Complex>& z) {
    long double worst = 0;
    for (std::size_t i = 0; i < p.nvars(); ++i) worst = std::max(worst, std::abs(p.partial(i).eval(z)));
    return worst;
}

// Largest gap between the analytic partial derivatives and central differences of step h.
inline long double numeric_gradient_check(const LaurentPoly& p, const std::vector<Complex>& z, long double h) {
    for (const auto& x : z)
        if (x == Complex(0)) throw Error(ErrorKind::ZeroCoordinate, "numeric_gradient_check");
    long double worst = 0;
    for (std::size_t i = 0; i < p.nvars(); ++i) {
        std::vector<Complex> a = z, b = z;
        a[i] += h;
        b[i] -= h;
        Complex fd = (p.eval(a) - p.eval(b)) / (2 * h);
        worst = std::max(worst, std::abs(fd - p.partial(i).eval(z)));
    }
    return worst;
}

enum class CriticalVerdict { None, FiniteFamilies, PositiveDimensional, HeuristicOnly };

inline const char* to_string(CriticalVerdict v) {
    switch (v) {
        case CriticalVerdict::None: return "None";
        case CriticalVerdict::FiniteFamilies: return "FiniteFamilies";
        case CriticalVerdict::PositiveDimensional: return "PositiveDimensional";
        case CriticalVerdict::HeuristicOnly: return "HeuristicOnly";
    }
    return "?";
}

struct CriticalPoint {
    std::vector<Complex> z;  // z_1..z_n, with z_{n+1} = 1
    long double gradient = 0;
};

// Points where the i-th and j-th factors vanish and no earlier factor does:
// z1 runs over the roots of z1_minpoly and z2 over the roots of relation(z1, .).
struct CriticalComponent {
    std::size_t i = 0, j = 0;  // 1-based factor indices
    QPoly z1_minpoly;
    BiPoly relation;  // monic in z2, coefficients reduced modulo z1_minpoly
    std::vector<QPoly> z2_minpolys;
    std::size_t count = 0;
    bool on_unit_circle = false;
    std::vector<CriticalPoint> points;
};

struct CriticalReport {
    CriticalVerdict verdict = CriticalVerdict::None;
    bool authoritative = true;
    bool factorization_certified = true;
    std::size_t count = 0;
    std::vector<CriticalComponent> components;
    std::vector<std::pair<std::size_t, std::size_t>> positive_dimensional_pairs;
    std::vector<std::string> common_factors;
    std::vector<CriticalPoint> heuristic_points;
    long double max_gradient = 0;
};

inline std::string str(const BiPoly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (int j = a.degree(); j >= 0; --j) {
        const QPoly& c = a.coeffs()[static_cast<std::size_t>(j)];
        if (c.is_zero()) continue;
        std::string mono = j == 0 ? "" : (j == 1 ? "z2" : "z2^" + std::to_string(j));
        std::string cs = str(c, "z1");
        bool single = c.coeffs().size() == 1 || std::count_if(c.coeffs().begin(), c.coeffs().end(),
                                                                [](const Rat& x) { return x != 0; }) == 1;
        std::string term;
        if (mono.empty()) term = cs;
        else if (cs == "1") term = mono;
        else if (cs == "-1") term = "-" + mono;
        else term = (single ? cs : "(" + cs + ")") + "*" + mono;
        if (!out.empty()) {
            if (term[0] == '-') out += " - " + term.substr(1);
            else out += " + " + term;
        } else {
            out = term;
        }
    }
    return out;
}

namespace detail {

inline bool on_circle(const std::vector<Complex>& zs, long double tol) {
    for (const auto& z : zs)
        if (std::fabs(std::abs(z) - 1.0L) > tol) return false;
    return true;
}

// Complex Gauss-Newton with Levenberg damping on G = (dF/dz_1..dF/dz_n, F).
inline std::vector<CriticalPoint> heuristic_critical(const LaurentPoly& f, const LaurentPoly& po) {
    const std::size_t n = f.nvars();
    std::vector<LaurentPoly> g;
    for (std::size_t i = 0; i < n; ++i) g.push_back(f.partial(i));
    g.push_back(f);
    std::vector<std::vector<LaurentPoly>> jac(g.size());
    for (std::size_t r = 0; r < g.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) jac[r].push_back(g[r].partial(c));
    std::mt19937_64 rng(20240613);
    std::uniform_real_distribution<long double> rad(0.3L, 2.0L), ang(0.0L, 2 * std::acos(-1.0L));
    std::vector<CriticalPoint> found;
    for (int start = 0; start < 40; ++start) {
        std::vector<Complex> z(n);
        for (auto& x : z) x = std::polar(rad(rng), ang(rng));
        long double mu = 1e-3L;
        bool ok = false;
        for (int it = 0; it < 200; ++it) {
            bool bad = false;
            for (const auto& x : z)
                if (std::abs(x) < 1e-8L || std::abs(x) > 1e8L) bad = true;
            if (bad) break;
            std::vector<Complex> gv(g.size());
            long double norm = 0;
            for (std::size_t r = 0; r < g.size(); ++r) {
                gv[r] = g[r].eval(z);
                norm = std::max(norm, std::abs(gv[r]));
            }
            if (norm < 1e-13L) {
                ok = true;
                break;
            }
            // (J^H J + mu I) dz = -J^H G
            std::vector<std::vector<Complex>> a(n, std::vector<Complex>(n + 1, Complex(0)));
            std::vector<std::vector<Complex>> jv(g.size(), std::vector<Complex>(n));
            for (std::size_t r = 0; r < g.size(); ++r)
                for (std::size_t c = 0; c < n; ++c) jv[r][c] = jac[r][c].eval(z);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t r = 0; r < g.size(); ++r) a[i][j] += std::conj(jv[r][i]) * jv[r][j];
                a[i][i] += mu;
                for (std::size_t r = 0; r < g.size(); ++r) a[i][n] -= std::conj(jv[r][i]) * gv[r];
            }
            for (std::size_t c = 0; c < n; ++c) {
                std::size_t piv = c;
                for (std::size_t r = c + 1; r < n; ++r)
                    if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
                std::swap(a[c], a[piv]);
                if (std::abs(a[c][c]) == 0) break;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == c) continue;
                    Complex fct = a[r][c] / a[c][c];
                    for (std::size_t k = c; k <= n; ++k) a[r][k] -= fct * a[c][k];
                }
            }
            std::vector<Complex> trial = z;
            for (std::size_t i = 0; i < n; ++i)
                if (std::abs(a[i][i]) > 0) trial[i] += a[i][n] / a[i][i];
            long double tnorm = 0;
            bool finite = true;
            for (const auto& x : trial)
                if (!std::isfinite(std::abs(x)) || std::abs(x) < 1e-12L) finite = false;
            if (finite)
                for (const auto& gg : g) tnorm = std::max(tnorm, std::abs(gg.eval(trial)));
            if (finite && tnorm < norm) {
                z = trial;
                mu = std::max(mu / 10, 1e-15L);
            } else {
                mu *= 10;
                if (mu > 1e10L) break;
            }
        }
        if (!ok) continue;
        std::vector<Complex> full = z;
        full.push_back(1);
        long double gn = gradient_norm(po, full);
        if (gn >= 1e-10L) continue;
        bool dup = false;
        for (const auto& p : found) {
            long double dist = 0;
            for (std::size_t i = 0; i < n; ++i) dist = std::max(dist, std::abs(p.z[i] - z[i]));
            if (dist < 1e-6L) dup = true;
        }
        if (!dup) found.push_back({z, gn});
    }
    std::sort(found.begin(), found.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        for (std::size_t i = 0; i < a.z.size(); ++i) {
            if (a.z[i].real() != b.z[i].real()) return a.z[i].real() < b.z[i].real();
            if (a.z[i].imag() != b.z[i].imag()) return a.z[i].imag() < b.z[i].imag();
        }
        return false;
    });
    return found;
}

}  // namespace detail

// Critical points of the potential in the torus. For n = 2 the answer is exact:
// a critical point is a common zero of two factors, and each pair is solved by
// resultant, factorization and gcds modulo the z1-factor. Other dimensions use
// a multi-start numerical search whose verdict is not authoritative.
inline CriticalReport critical_exists(const MinkowskiDecomposition& d, long double circle_tol = 1e-12L) {
    CriticalReport rep;
    const std::size_t n = d.n, k = d.k();
    LaurentPoly po = build_potential(d);
    std::vector<LaurentPoly> p;
    LaurentPoly f = LaurentPoly::constant(n, Rat(1));
    for (const auto& s : d.summands) {
        p.push_back(factor(s.polytope));
        f = f * p.back();
    }
    if (n != 2) {
        rep.verdict = CriticalVerdict::HeuristicOnly;
        rep.authoritative = false;
        rep.heuristic_points = detail::heuristic_critical(f, po);
        for (const auto& q : rep.heuristic_points) rep.max_gradient = std::max(rep.max_gradient, q.gradient);
        return rep;
    }
    std::vector<BiPoly> fc;
    for (const auto& q : p) fc.push_back(clear_denominators(q));
    const std::vector<BiPoly> checks{clear_denominators(f), clear_denominators(f.partial(0)),
                                     clear_denominators(f.partial(1))};

    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            BiPoly common = gcd(fc[i], fc[j]);
            if (!is_constant(common)) {
                rep.positive_dimensional_pairs.emplace_back(i + 1, j + 1);
                rep.common_factors.push_back(str(common));
                continue;
            }
            QPoly r = resultant(fc[i], fc[j]);
            ensure(!r.is_zero(), "vanishing resultant without a common factor");
            std::size_t low = 0;
            while (r.coeff(low) == 0) ++low;
            QPoly s = squarefree_part(r.shifted_down(low));
            if (s.degree() < 1) continue;
            Factorization fac = factor_squarefree(s);
            rep.factorization_certified = rep.factorization_certified && fac.certified;
            std::vector<QPoly> queue = fac.factors;
            while (!queue.empty()) {
                QPoly m = queue.back();
                queue.pop_back();
                try {
                    QuotientRing ring(m);
                    BiPoly g = ring.gcd(fc[i], fc[j]);
                    if (g.degree() < 1) continue;
                    // drop z2 = 0
                    while (g.degree() >= 1 && g.coeff(0).is_zero()) g = g.shifted_down(1);
                    if (g.degree() >= 1) ring.inverse(g.coeff(0));
                    if (g.degree() >= 1) g = ring.divmod(g, ring.gcd(g, g.derivative())).first;
                    for (std::size_t l = 0; l < j && g.degree() >= 1; ++l) {
                        if (l == i) continue;
                        BiPoly h = ring.gcd(g, fc[l]);
                        if (h.degree() >= 1) g = ring.divmod(g, h).first;
                    }
                    if (g.degree() < 1) continue;
                    g = ring.make_monic(g);
                    for (const auto& c : checks)
                        ensure(ring.divmod(c, g).second.is_zero(), "critical witness fails exact substitution");

                    CriticalComponent comp;
                    comp.i = i + 1;
                    comp.j = j + 1;
                    comp.z1_minpoly = ring.modulus();
                    comp.relation = g;
                    comp.count = static_cast<std::size_t>(m.degree() * g.degree());
                    QPoly elim = resultant(swap_vars(g), swap_vars(BiPoly(comp.z1_minpoly)));
                    Factorization z2f = factor_squarefree(squarefree_part(elim));
                    rep.factorization_certified = rep.factorization_certified && z2f.certified;
                    comp.z2_minpolys = z2f.factors;
                    comp.on_unit_circle = true;
                    for (const auto& a : complex_roots(comp.z1_minpoly)) {
                        std::vector<Complex> gz = specialize_z1(g, a);
                        for (const auto& b : polynomial_roots(gz)) {
                            CriticalPoint cp;
                            cp.z = {a, b};
                            cp.gradient = gradient_norm(po, {a, b, Complex(1)});
                            rep.max_gradient = std::max(rep.max_gradient, cp.gradient);
                            if (!detail::on_circle(cp.z, circle_tol)) comp.on_unit_circle = false;
                            comp.points.push_back(cp);
                        }
                    }
                    ensure(comp.points.size() == comp.count, "numeric witness count");
                    rep.count += comp.count;
                    rep.components.push_back(std::move(comp));
                } catch (const ZeroDivisor& z) {
                    queue.push_back(z.factor);
                    queue.push_back(monic(exact_div(m, z.factor)));
                }
            }
        }
    if (!rep.positive_dimensional_pairs.empty()) rep.verdict = CriticalVerdict::PositiveDimensional;
    else if (rep.count > 0) rep.verdict = CriticalVerdict::FiniteFamilies;
    else rep.verdict = CriticalVerdict::None;
    return rep;
}

}  // namespace smoothfib
