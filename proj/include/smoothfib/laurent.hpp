#pragma once

// Sparse Laurent polynomials with rational coefficients.

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "exactlin.hpp"

namespace smoothfib {

class LaurentPoly {
public:
    using Complex = std::complex<long double>;

    explicit LaurentPoly(std::size_t nvars = 0) : n_(nvars) {}

    static LaurentPoly monomial(std::size_t nvars, const IntVec& exp, const Rat& c = Rat(1)) {
        if (exp.size() != nvars) throw Error(ErrorKind::DimensionMismatch, "monomial exponent");
        LaurentPoly p(nvars);
        if (c != 0) p.terms_[exp] = c;
        return p;
    }

    static LaurentPoly constant(std::size_t nvars, const Rat& c) {
        return monomial(nvars, IntVec(nvars, Int(0)), c);
    }

    // z_var (0-based).
    static LaurentPoly variable(std::size_t nvars, std::size_t var) {
        IntVec e(nvars, Int(0));
        e.at(var) = 1;
        return monomial(nvars, e);
    }

    std::size_t nvars() const { return n_; }
    const std::map<IntVec, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rat coefficient(const IntVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check(b);
        LaurentPoly r(a.n_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }

    friend LaurentPoly operator*(const Rat& s, const LaurentPoly& a) {
        LaurentPoly r(a.n_);
        for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    LaurentPoly pow(unsigned e) const {
        LaurentPoly r = constant(n_, Rat(1));
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    LaurentPoly partial(std::size_t var) const {
        if (var >= n_) throw Error(ErrorKind::RangeError, "partial derivative variable");
        LaurentPoly r(n_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            IntVec f = e;
            f[var] -= 1;
            r.add_term(f, c * Rat(e[var]));
        }
        return r;
    }

    // Adds variables (with exponent zero) at the end.
    LaurentPoly extended(std::size_t nvars) const {
        LaurentPoly r(nvars);
        for (const auto& [e, c] : terms_) {
            IntVec f = e;
            f.resize(nvars, Int(0));
            r.terms_[f] = c;
        }
        return r;
    }

    Complex eval(const std::vector<Complex>& z) const {
        if (z.size() != n_) throw Error(ErrorKind::DimensionMismatch, "eval point");
        Complex s = 0;
        for (const auto& [e, c] : terms_) {
            Complex t = static_cast<long double>(c);
            for (std::size_t i = 0; i < n_; ++i) {
                if (e[i] == 0) continue;
                if (z[i] == Complex(0)) {
                    if (e[i] < 0) throw Error(ErrorKind::ZeroCoordinate, "negative power of zero");
                    t = 0;
                    continue;
                }
                t *= ipow(z[i], static_cast<long>(e[i]));
            }
            s += t;
        }
        return s;
    }

    // Exponents of the terms, in lexicographic order.
    std::vector<IntVec> support() const {
        std::vector<IntVec> out;
        for (const auto& kv : terms_) out.push_back(kv.first);
        return out;
    }

    // Canonical text form, terms in lexicographic exponent order.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rat a = c;
            bool neg = a < 0;
            if (neg) a = -a;
            out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < n_; ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "z" + std::to_string(i + 1);
                if (e[i] != 1) mono += "^" + e[i].str();
            }
            if (mono.empty()) out += a.str();
            else if (a == 1) out += mono;
            else out += a.str() + "*" + mono;
        }
        return out;
    }

    static Complex ipow(Complex base, long e) {
        if (e < 0) return Complex(1) / ipow(base, -e);
        Complex r = 1;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

private:
    void check(const LaurentPoly& o) const {
        if (o.n_ != n_) throw Error(ErrorKind::DimensionMismatch, "variable count");
    }

    void add_term(const IntVec& e, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::size_t n_;
    std::map<IntVec, Rat> terms_;
};

}  // namespace smoothfib
