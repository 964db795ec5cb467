#pragma once

// Exact integer linear algebra: Hermite and Smith forms, unimodular
// completion and inverse, kernels and linear solves over Z and Q.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "errors.hpp"

namespace smoothfib {

using Int = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// ---------------------------------------------------------------- scalars

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::abs(a / gcd(a, b) * b);
}

// Returns g = gcd(a, b) >= 0 with x*a + y*b == g.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    x = old_s;
    y = old_t;
    return old_r;
}

// ---------------------------------------------------------------- vectors

inline IntVec make_vec(std::initializer_list<long> xs) {
    IntVec v;
    v.reserve(xs.size());
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot product");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline IntVec operator+(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector sum");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec operator-(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector difference");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IntVec operator-(const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline IntVec operator*(const Int& s, const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline bool is_zero(const IntVec& a) {
    return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

inline Int content(const IntVec& a) {
    Int g = 0;
    for (const auto& x : a) g = gcd(g, x);
    return g;
}

// Divides by the gcd of the entries; the zero vector is returned unchanged.
inline IntVec primitive(const IntVec& a) {
    Int g = content(a);
    if (g == 0 || g == 1) return a;
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] / g;
    return r;
}

// Multiplies by -1 if needed so the first non-zero entry is positive.
inline IntVec sign_normalized(IntVec a) {
    for (const auto& x : a) {
        if (x > 0) break;
        if (x < 0) { for (auto& y : a) y = -y; break; }
    }
    return a;
}

inline IntVec concat(const IntVec& a, const IntVec& b) {
    IntVec r(a);
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline std::string to_string(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

// ---------------------------------------------------------------- matrices

class IntMat {
public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMat(std::initializer_list<std::initializer_list<long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
            for (long x : r) data_.emplace_back(x);
        }
    }

    static IntMat from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
        IntMat m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "row length");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntMat from_cols(const std::vector<IntVec>& cols, std::size_t rows) {
        return from_rows(cols, rows).transpose();
    }

    static IntMat identity(std::size_t n) {
        IntMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVec row(std::size_t i) const {
        return IntVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    IntVec col(std::size_t j) const {
        IntVec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    std::vector<IntVec> row_list() const {
        std::vector<IntVec> r;
        r.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) r.push_back(row(i));
        return r;
    }

    void append_row(const IntVec& r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "append_row");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    IntMat transpose() const {
        IntMat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // Rows [r0, r1) and columns [c0, c1).
    IntMat block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
        IntMat b(r1 - r0, c1 - c0);
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
        return b;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    // row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const Int& f) {
        if (f == 0) return;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
    }

    void add_col(std::size_t dst, std::size_t src, const Int& f) {
        if (f == 0) return;
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
    }

    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }

    void negate_col(std::size_t j) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
    }

    friend bool operator==(const IntMat& a, const IntMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMat operator*(const IntMat& a, const IntMat& b) {
        if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product");
        IntMat c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Int& x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
            }
        return c;
    }

    friend IntVec operator*(const IntMat& a, const IntVec& v) {
        if (a.cols_ != v.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
        IntVec r(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMat& m) {
        os << "[";
        for (std::size_t i = 0; i < m.rows_; ++i) os << (i ? "," : "") << to_string(m.row(i));
        return os << "]";
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

inline IntMat vstack(const IntMat& a, const IntMat& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "vstack");
    IntMat r = a;
    for (std::size_t i = 0; i < b.rows(); ++i) r.append_row(b.row(i));
    return r;
}

inline IntMat hstack(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "hstack");
    return vstack(a.transpose(), b.transpose()).transpose();
}

// ---------------------------------------------------------------- Hermite

struct HnfResult {
    IntMat h;  // row-style Hermite normal form
    IntMat u;  // unimodular, u * a == h
};

// Row-style HNF: pivots positive, entries above a pivot reduced into [0, pivot),
// zero rows last.
inline HnfResult hnf(const IntMat& a) {
    const std::size_t m = a.rows(), n = a.cols();
    IntMat h = a;
    IntMat u = IntMat::identity(m);
    std::size_t r = 0;
    for (std::size_t j = 0; j < n && r < m; ++j) {
        for (std::size_t i = r + 1; i < m; ++i) {
            if (h(i, j) == 0) continue;
            if (h(r, j) == 0) {
                h.swap_rows(r, i);
                u.swap_rows(r, i);
                continue;
            }
            if (h(i, j) % h(r, j) == 0) {
                Int q = h(i, j) / h(r, j);
                h.add_row(i, r, -q);
                u.add_row(i, r, -q);
                continue;
            }
            Int x, y;
            Int a0 = h(r, j), b0 = h(i, j);
            Int g = ext_gcd(a0, b0, x, y);
            Int p = -b0 / g, q = a0 / g;
            for (IntMat* mat : {&h, &u}) {
                for (std::size_t c = 0; c < mat->cols(); ++c) {
                    Int top = x * (*mat)(r, c) + y * (*mat)(i, c);
                    Int bot = p * (*mat)(r, c) + q * (*mat)(i, c);
                    (*mat)(r, c) = std::move(top);
                    (*mat)(i, c) = std::move(bot);
                }
            }
        }
        if (h(r, j) == 0) continue;
        if (h(r, j) < 0) {
            h.negate_row(r);
            u.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(h(i, j), h(r, j));
            h.add_row(i, r, -q);
            u.add_row(i, r, -q);
        }
        ++r;
    }
    return {std::move(h), std::move(u)};
}

// Column-style reduction: a * u == l with l lower echelon (l = hnf(a^T).h^T).
struct ColumnHnf {
    IntMat l;
    IntMat u;
    std::size_t rank;
};

inline ColumnHnf column_hnf(const IntMat& a) {
    HnfResult r = hnf(a.transpose());
    std::size_t rank = 0;
    for (std::size_t i = 0; i < r.h.rows(); ++i)
        if (!is_zero(r.h.row(i))) ++rank;
    return {r.h.transpose(), r.u.transpose(), rank};
}

// ---------------------------------------------------------------- Smith

// Invariant factors d_1 | d_2 | ... of length min(rows, cols), zeros last.
inline std::vector<Int> snf_invariant_factors(const IntMat& a) {
    IntMat m = a;
    const std::size_t rows = m.rows(), cols = m.cols(), k = std::min(rows, cols);
    std::vector<Int> d;
    for (std::size_t t = 0; t < k; ++t) {
        // pick the smallest non-zero entry of the trailing block as pivot
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m(i, j) != 0 && (!found || abs(m(i, j)) < abs(m(pi, pj)))) {
                    found = true; pi = i; pj = j;
                }
        if (!found) break;
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0) continue;
                m.add_row(i, t, -(m(i, t) / m(t, t)));
                if (m(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0) continue;
                m.add_col(j, t, -(m(t, j) / m(t, t)));
                if (m(t, j) != 0) clean = false;
            }
            if (!clean) {
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (m(i, t) != 0 && abs(m(i, t)) < abs(m(bi, bj))) { bi = i; bj = t; }
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m(t, j) != 0 && abs(m(t, j)) < abs(m(bi, bj))) { bi = t; bj = j; }
                m.swap_rows(t, bi);
                m.swap_cols(t, bj);
                continue;
            }
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        m.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        d.push_back(abs(m(t, t)));
    }
    d.resize(k, Int(0));
    return d;
}

// ---------------------------------------------------------------- determinant, rank

inline Int det(const IntMat& a) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "det of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMat m = a;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && m(s, k) == 0) ++s;
            if (s == n) return 0;
            m.swap_rows(k, s);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

inline std::size_t rank(const IntMat& a) { return column_hnf(a).rank; }

// ---------------------------------------------------------------- completion

struct Completion {
    IntMat e;  // complementary rows: [v; e] is unimodular
    IntMat a;  // v*a = I, e*a = 0
    IntMat c;  // v*c = 0, e*c = I
};

inline bool is_primitive_system(const IntMat& v) {
    if (v.rows() > v.cols()) return false;
    for (const auto& d : snf_invariant_factors(v))
        if (d != 1) return false;
    return true;
}

// Completes a primitive system to a unimodular basis. Deterministic: derived
// from the column reduction of v, with each column of c sign-normalized so its
// first non-zero entry is positive.
inline Completion complete_basis(const IntMat& v) {
    const std::size_t m = v.rows(), n = v.cols();
    if (m > n) throw Error(ErrorKind::DimensionMismatch, "more rows than columns");
    if (!is_primitive_system(v)) throw Error(ErrorKind::NotPrimitive, "rows do not extend to a basis");
    ColumnHnf ch = column_hnf(v);
    // v * u = [I | 0], so v is the first m rows of u^{-1}.
    IntMat w = hnf(ch.u).u;  // u unimodular => hnf(u).h == I and hnf(u).u == u^{-1}
    Completion out;
    out.e = w.block(m, n, 0, n);
    out.a = ch.u.block(0, n, 0, m);
    out.c = ch.u.block(0, n, m, n);
    for (std::size_t l = 0; l < n - m; ++l) {
        IntVec col = out.c.col(l);
        if (sign_normalized(col) != col) {
            out.c.negate_col(l);
            out.e.negate_row(l);
        }
    }
    return out;
}

inline IntMat complete_to_basis(const IntMat& v) { return complete_basis(v).e; }

inline IntMat unimodular_inverse(const IntMat& u) {
    if (u.rows() != u.cols()) throw Error(ErrorKind::DimensionMismatch, "non-square matrix");
    Int d = det(u);
    if (d != 1 && d != -1) throw Error(ErrorKind::NotUnimodular, "determinant is " + d.str());
    return hnf(u).u;
}

// ---------------------------------------------------------------- kernels and solves

// Rows form a lattice basis of {x in Z^n : a x = 0}, in Hermite form.
inline IntMat kernel_basis(const IntMat& a) {
    const std::size_t n = a.cols();
    if (a.rows() == 0) return IntMat::identity(n);
    ColumnHnf ch = column_hnf(a);
    IntMat k = ch.u.block(0, n, ch.rank, n).transpose();
    if (k.rows() == 0) return IntMat(0, n);
    IntMat h = hnf(k).h;
    return h.block(0, k.rows(), 0, n);
}

// Some x in Z^n with a x == b, or nullopt.
inline std::optional<IntVec> solve_integer(const IntMat& a, const IntVec& b) {
    if (a.rows() != b.size()) throw Error(ErrorKind::DimensionMismatch, "solve_integer");
    const std::size_t n = a.cols();
    ColumnHnf ch = column_hnf(a);
    IntVec y(n, Int(0));
    std::size_t prow = 0;
    for (std::size_t k = 0; k < ch.rank; ++k) {
        while (prow < a.rows() && ch.l(prow, k) == 0) ++prow;
        Int rhs = b[prow];
        for (std::size_t i = 0; i < k; ++i) rhs -= ch.l(prow, i) * y[i];
        if (rhs % ch.l(prow, k) != 0) return std::nullopt;
        y[k] = rhs / ch.l(prow, k);
    }
    if (ch.l * y != b) return std::nullopt;
    return ch.u * y;
}

using RatMat = std::vector<RatVec>;

inline RatMat to_rat(const IntMat& a) {
    RatMat r(a.rows(), RatVec(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i][j] = Rat(a(i, j));
    return r;
}

// A solution of a x == b over Q with free variables set to zero, or nullopt.
inline std::optional<RatVec> solve_rational(RatMat a, RatVec b, std::size_t ncols) {
    const std::size_t m = a.size();
    if (b.size() != m) throw Error(ErrorKind::DimensionMismatch, "solve_rational");
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t j = 0; j < ncols && r < m; ++j) {
        std::size_t p = r;
        while (p < m && a[p][j] == 0) ++p;
        if (p == m) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        Rat inv = 1 / a[r][j];
        for (auto& x : a[r]) x *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || a[i][j] == 0) continue;
            Rat f = a[i][j];
            for (std::size_t c = 0; c < ncols; ++c) a[i][c] -= f * a[r][c];
            b[i] -= f * b[r];
        }
        pivots.push_back(j);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        if (b[i] != 0) return std::nullopt;
    RatVec x(ncols, Rat(0));
    for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = b[i];
    return x;
}

// Scales a rational vector to the primitive integer vector with the same direction.
inline IntVec primitive_from_rat(const RatVec& x) {
    Int den = 1;
    for (const auto& q : x) den = lcm(den, boost::multiprecision::denominator(q));
    IntVec v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        v[i] = boost::multiprecision::numerator(x[i]) * (den / boost::multiprecision::denominator(x[i]));
    return primitive(v);
}

}  // namespace smoothfib
