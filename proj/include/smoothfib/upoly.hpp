#pragma once

// Dense univariate polynomials over Q and over Q[z1], with the exact
// elimination tools needed for plane curves: pseudo-remainders, subresultant
// resultants, gcds, arithmetic modulo a univariate polynomial with zero-divisor
// splitting, and factorization over Q certified by exact division.

#include <algorithm>
#include <complex>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "exactlin.hpp"
#include "laurent.hpp"
#include "roots.hpp"

namespace smoothfib {

template <class R>
class UPoly {
public:
    UPoly() = default;
    UPoly(const R& c) {
        if (!(c == R(0))) c_.push_back(c);
    }
    UPoly(int c) : UPoly(R(c)) {}
    explicit UPoly(std::vector<R> c) : c_(std::move(c)) { trim(); }

    static UPoly x() { return UPoly(std::vector<R>{R(0), R(1)}); }

    static UPoly monomial(const R& c, std::size_t d) {
        std::vector<R> v(d + 1, R(0));
        v[d] = c;
        return UPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<R>& coeffs() const { return c_; }
    R coeff(std::size_t i) const { return i < c_.size() ? c_[i] : R(0); }
    const R& lc() const { return c_.back(); }

    UPoly operator-() const {
        std::vector<R> v = c_;
        for (auto& x : v) x = -x;
        return UPoly(std::move(v));
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<R> v(std::max(a.c_.size(), b.c_.size()), R(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = v[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] = v[i] + b.c_[i];
        return UPoly(std::move(v));
    }

    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<R> v(a.c_.size() + b.c_.size() - 1, R(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        return UPoly(std::move(v));
    }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    // Multiplies every coefficient by s.
    UPoly scaled(const R& s) const {
        std::vector<R> v = c_;
        for (auto& x : v) x = x * s;
        return UPoly(std::move(v));
    }

    UPoly derivative() const {
        if (c_.size() < 2) return UPoly();
        std::vector<R> v(c_.size() - 1, R(0));
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * R(static_cast<int>(i));
        return UPoly(std::move(v));
    }

    UPoly pow(unsigned e) const {
        UPoly r(1);
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    // Exact division by x^s.
    UPoly shifted_down(std::size_t s) const {
        for (std::size_t i = 0; i < s && i < c_.size(); ++i)
            ensure(c_[i] == R(0), "shift of a polynomial with a low-order term");
        if (s >= c_.size()) return UPoly();
        return UPoly(std::vector<R>(c_.begin() + static_cast<std::ptrdiff_t>(s), c_.end()));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == R(0)) c_.pop_back();
    }

    std::vector<R> c_;
};

using QPoly = UPoly<Rat>;   // Q[z1]
using BiPoly = UPoly<QPoly>;  // Q[z1][z2]

// ---------------------------------------------------------------- Q[x]

inline Rat eval(const QPoly& a, const Rat& x) {
    Rat s = 0;
    for (std::size_t i = a.coeffs().size(); i-- > 0;) s = s * x + a.coeffs()[i];
    return s;
}

inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw Error(ErrorKind::RangeError, "division by the zero polynomial");
    std::vector<Rat> r = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {QPoly(), a};
    std::vector<Rat> q(static_cast<std::size_t>(a.degree() - db + 1), Rat(0));
    for (int i = a.degree(); i >= db; --i) {
        Rat f = r[static_cast<std::size_t>(i)] / b.lc();
        if (f == 0) continue;
        q[static_cast<std::size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

inline QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

inline QPoly exact_div(const QPoly& a, const QPoly& b) {
    auto [q, r] = divmod(a, b);
    ensure(r.is_zero(), "inexact polynomial division");
    return q;
}

inline QPoly monic(const QPoly& a) { return a.is_zero() ? a : a.scaled(Rat(1) / a.lc()); }

inline QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// s*a + t*b = gcd(a, b) (monic).
inline QPoly ext_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t) {
    QPoly r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        QPoly tmp = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(tmp);
        tmp = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(tmp);
    }
    if (r0.is_zero()) {
        s = 0;
        t = 0;
        return r0;
    }
    Rat inv = Rat(1) / r0.lc();
    s = s0.scaled(inv);
    t = t0.scaled(inv);
    return r0.scaled(inv);
}

inline QPoly squarefree_part(const QPoly& a) {
    if (a.degree() <= 0) return monic(a);
    return monic(exact_div(a, gcd(a, a.derivative())));
}

// Integer coefficients, content one, positive leading coefficient.
inline std::vector<Int> integer_primitive(const QPoly& a) {
    Int den = 1;
    for (const auto& c : a.coeffs()) den = lcm(den, boost::multiprecision::denominator(c));
    IntVec v;
    for (const auto& c : a.coeffs())
        v.push_back(boost::multiprecision::numerator(c) * (den / boost::multiprecision::denominator(c)));
    v = primitive(v);
    if (!v.empty() && v.back() < 0)
        for (auto& x : v) x = -x;
    return v;
}

inline std::string str(const QPoly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::string out;
    for (int i = a.degree(); i >= 0; --i) {
        Rat c = a.coeffs()[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        bool neg = c < 0;
        if (neg) c = -c;
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        if (mono.empty()) out += c.str();
        else if (c == 1) out += mono;
        else out += c.str() + "*" + mono;
    }
    return out;
}

inline std::vector<Complex> to_complex(const QPoly& a) {
    std::vector<Complex> c;
    for (const auto& x : a.coeffs()) c.emplace_back(static_cast<long double>(x), 0.0L);
    return c;
}

inline std::vector<Complex> complex_roots(const QPoly& a) {
    if (a.degree() < 1) return {};
    return polynomial_roots(to_complex(a));
}

struct Factorization {
    std::vector<QPoly> factors;  // monic
    bool certified = true;       // every factor proven irreducible over Q
};

// Factors a square-free polynomial over Q by grouping numerical roots into
// candidate factors whose integer coefficients are then checked by exact division.
inline Factorization factor_squarefree(const QPoly& a, int max_degree = 16) {
    Factorization out;
    QPoly rest = monic(a);
    if (rest.degree() < 1) return out;
    if (rest.degree() > max_degree) {
        out.factors.push_back(rest);
        out.certified = false;
        return out;
    }
    std::vector<Complex> roots = complex_roots(rest);
    std::size_t size = 1;
    while (rest.degree() >= 2 && 2 * size <= static_cast<std::size_t>(rest.degree())) {
        bool found = false;
        std::vector<Int> ip = integer_primitive(rest);
        long double lead = static_cast<long double>(ip.back());
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            long double im = 0;
            for (auto i : idx) im += roots[i].imag();
            if (std::fabs(im) < 1e-8L) {
                std::vector<Complex> prod{Complex(1)};
                for (auto i : idx) {
                    std::vector<Complex> next(prod.size() + 1, Complex(0));
                    for (std::size_t j = 0; j < prod.size(); ++j) {
                        next[j + 1] += prod[j];
                        next[j] -= prod[j] * roots[i];
                    }
                    prod = std::move(next);
                }
                bool ok = true;
                std::vector<Rat> cand;
                for (const auto& c : prod) {
                    long double v = c.real() * lead;
                    if (std::fabs(v) > 1e17L || std::fabs(c.imag() * lead) > 1e-6L * std::max(1.0L, std::fabs(v))) {
                        ok = false;
                        break;
                    }
                    cand.emplace_back(static_cast<long long>(std::llround(v)));
                }
                if (ok) {
                    QPoly g = monic(QPoly(cand));
                    if (g.degree() == static_cast<int>(size) && (rest % g).is_zero()) {
                        out.factors.push_back(g);
                        rest = exact_div(rest, g);
                        std::vector<Complex> keep;
                        for (std::size_t i = 0; i < roots.size(); ++i)
                            if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(roots[i]);
                        roots = std::move(keep);
                        found = true;
                        break;
                    }
                }
            }
            // next combination
            std::size_t k = size;
            while (k > 0 && idx[k - 1] == roots.size() - size + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++size;
    }
    if (rest.degree() >= 1) out.factors.push_back(rest);
    std::sort(out.factors.begin(), out.factors.end(), [](const QPoly& x, const QPoly& y) {
        if (x.degree() != y.degree()) return x.degree() < y.degree();
        return x.coeffs() < y.coeffs();
    });
    return out;
}

// ---------------------------------------------------------------- Q[z1][z2]

inline QPoly content(const BiPoly& a) {
    QPoly g;
    for (const auto& c : a.coeffs()) g = gcd(g, c);
    return g;
}

inline BiPoly div_coeffs(const BiPoly& a, const QPoly& c) {
    std::vector<QPoly> v;
    for (const auto& x : a.coeffs()) v.push_back(exact_div(x, c));
    return BiPoly(std::move(v));
}

inline BiPoly primitive_part(const BiPoly& a) {
    if (a.is_zero()) return a;
    return div_coeffs(a, content(a));
}

// lc(b)^(deg a - deg b + 1) * a mod b.
inline BiPoly prem(const BiPoly& a, const BiPoly& b) {
    if (b.is_zero()) throw Error(ErrorKind::RangeError, "pseudo-division by zero");
    BiPoly r = a;
    const int db = b.degree();
    int e = a.degree() - db + 1;
    if (e <= 0) return a;
    while (!r.is_zero() && r.degree() >= db) {
        BiPoly s = BiPoly::monomial(r.lc(), static_cast<std::size_t>(r.degree() - db));
        r = r.scaled(b.lc()) - s * b;
        --e;
    }
    return r.scaled(b.lc().pow(static_cast<unsigned>(e)));
}

// Resultant with respect to z2 by the subresultant algorithm.
inline QPoly resultant(BiPoly a, BiPoly b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    QPoly ca = content(a), cb = content(b);
    a = div_coeffs(a, ca);
    b = div_coeffs(b, cb);
    QPoly t = ca.pow(static_cast<unsigned>(b.degree())) * cb.pow(static_cast<unsigned>(a.degree()));
    QPoly s = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
    }
    if (b.degree() == 0) return s * t * b.lc().pow(static_cast<unsigned>(a.degree()));
    QPoly g = 1, h = 1;
    for (;;) {
        const int delta = a.degree() - b.degree();
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
        BiPoly r = prem(a, b);
        a = b;
        b = div_coeffs(r, g * h.pow(static_cast<unsigned>(delta)));
        g = a.lc();
        if (delta > 0) h = exact_div(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
        if (b.degree() > 0) continue;
        if (b.is_zero()) return QPoly();
        const auto da = static_cast<unsigned>(a.degree());
        h = exact_div(b.lc().pow(da), h.pow(da - 1));
        return s * t * h;
    }
}

// Gcd in Q[z1, z2] (up to a unit) by the primitive remainder sequence.
inline BiPoly gcd(const BiPoly& x, const BiPoly& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    QPoly c = gcd(content(x), content(y));
    BiPoly a = primitive_part(x), b = primitive_part(y);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        BiPoly r = prem(a, b);
        a = std::move(b);
        b = r.is_zero() ? r : primitive_part(r);
    }
    return primitive_part(a).scaled(c);
}

inline bool is_constant(const BiPoly& a) { return a.degree() <= 0 && (a.is_zero() || a.lc().degree() <= 0); }

// Exchanges the roles of z1 and z2.
inline BiPoly swap_vars(const BiPoly& a) {
    std::size_t d1 = 0;
    for (const auto& c : a.coeffs()) d1 = std::max<std::size_t>(d1, static_cast<std::size_t>(std::max(c.degree(), 0)));
    std::vector<std::vector<Rat>> m(d1 + 1, std::vector<Rat>(a.coeffs().size(), Rat(0)));
    for (std::size_t j = 0; j < a.coeffs().size(); ++j)
        for (std::size_t i = 0; i < a.coeffs()[j].coeffs().size(); ++i) m[i][j] = a.coeffs()[j].coeffs()[i];
    std::vector<QPoly> out;
    for (auto& row : m) out.emplace_back(std::move(row));
    return BiPoly(std::move(out));
}

// Multiplies a two-variable Laurent polynomial by the monomial that makes all
// exponents non-negative with no monomial factor left.
inline BiPoly clear_denominators(const LaurentPoly& p) {
    if (p.nvars() != 2) throw Error(ErrorKind::DimensionMismatch, "expected two variables");
    if (p.is_zero()) return BiPoly();
    Int m1 = p.terms().begin()->first[0], m2 = p.terms().begin()->first[1];
    for (const auto& [e, c] : p.terms()) {
        m1 = std::min(m1, e[0]);
        m2 = std::min(m2, e[1]);
    }
    std::size_t d2 = 0;
    for (const auto& [e, c] : p.terms()) d2 = std::max(d2, static_cast<std::size_t>(e[1] - m2));
    std::vector<std::vector<Rat>> coeffs(d2 + 1);
    for (const auto& [e, c] : p.terms()) {
        auto i = static_cast<std::size_t>(e[0] - m1), j = static_cast<std::size_t>(e[1] - m2);
        if (coeffs[j].size() <= i) coeffs[j].resize(i + 1, Rat(0));
        coeffs[j][i] += c;
    }
    std::vector<QPoly> v;
    for (auto& c : coeffs) v.emplace_back(std::move(c));
    return BiPoly(std::move(v));
}

inline std::vector<Complex> specialize_z1(const BiPoly& a, Complex z1) {
    std::vector<Complex> out;
    for (const auto& c : a.coeffs()) out.push_back(horner(to_complex(c), z1));
    return out;
}

// ---------------------------------------------------------------- Q[z1]/(f)

// Raised when a non-invertible, non-zero element of Q[z1]/(f) is met.
struct ZeroDivisor {
    QPoly factor;  // proper monic factor of f
};

class QuotientRing {
public:
    explicit QuotientRing(QPoly f) : f_(monic(f)) {}

    const QPoly& modulus() const { return f_; }
    QPoly reduce(const QPoly& a) const { return a % f_; }

    QPoly inverse(const QPoly& a) const {
        QPoly s, t;
        QPoly g = ext_gcd(reduce(a), f_, s, t);
        if (g.degree() > 0) throw ZeroDivisor{g};
        ensure(!g.is_zero(), "inverse of zero");
        return reduce(s);
    }

    BiPoly reduce(const BiPoly& a) const {
        std::vector<QPoly> v;
        for (const auto& c : a.coeffs()) v.push_back(reduce(c));
        return BiPoly(std::move(v));
    }

    BiPoly mul(const BiPoly& a, const BiPoly& b) const { return reduce(a * b); }

    BiPoly make_monic(const BiPoly& a) const {
        if (a.is_zero()) return a;
        return reduce(a.scaled(inverse(a.lc())));
    }

    std::pair<BiPoly, BiPoly> divmod(const BiPoly& a, const BiPoly& b) const {
        BiPoly r = reduce(a);
        BiPoly bb = reduce(b);
        if (bb.is_zero()) throw Error(ErrorKind::RangeError, "division by zero");
        QPoly inv = inverse(bb.lc());
        BiPoly q;
        while (!r.is_zero() && r.degree() >= bb.degree()) {
            BiPoly s = BiPoly::monomial(reduce(r.lc() * inv), static_cast<std::size_t>(r.degree() - bb.degree()));
            q = q + s;
            r = reduce(r - s * bb);
        }
        return {q, r};
    }

    BiPoly gcd(BiPoly a, BiPoly b) const {
        a = reduce(a);
        b = reduce(b);
        while (!b.is_zero()) {
            BiPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return make_monic(a);
    }

private:
    QPoly f_;
};

}  // namespace smoothfib
