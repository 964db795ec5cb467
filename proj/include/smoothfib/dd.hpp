#pragma once

// Rational polyhedral cones in Z^d: double description, duality, Hilbert bases
// and semigroup membership.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "exactlin.hpp"

namespace smoothfib {

// Generators of {x : a x >= 0}: a lattice basis of the lineality space and the
// extreme rays of the pointed part inside its orthogonal complement.
struct VRep {
    IntMat lineality;
    IntMat rays;
};

namespace detail {

struct DdRay {
    IntVec v;
    boost::dynamic_bitset<> zero;  // processed rows on which the ray is tight
};

inline IntMat sorted_rows(std::vector<IntVec> rows, std::size_t d) {
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return IntMat::from_rows(rows, d);
}

}  // namespace detail

inline VRep double_description(const IntMat& a, std::size_t d) {
    if (a.rows() > 0 && a.cols() != d) throw Error(ErrorKind::DimensionMismatch, "double_description");
    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        IntVec r = a.row(i);
        if (!is_zero(r)) rows.push_back(primitive(r));
    }
    VRep out;
    out.lineality = kernel_basis(IntMat::from_rows(rows, d));
    const std::size_t lin = out.lineality.rows();
    if (lin == d) {
        out.rays = IntMat(0, d);
        return out;
    }
    for (std::size_t i = 0; i < lin; ++i) {
        rows.push_back(out.lineality.row(i));
        rows.push_back(-out.lineality.row(i));
    }
    const std::size_t m = rows.size();

    // d independent rows give a simplicial starting cone
    std::vector<std::size_t> basis;
    IntMat sel(0, d);
    for (std::size_t i = 0; i < m && basis.size() < d; ++i) {
        IntMat trial = vstack(sel, IntMat::from_rows({rows[i]}, d));
        if (rank(trial) > basis.size()) {
            sel = trial;
            basis.push_back(i);
        }
    }
    ensure(basis.size() == d, "double description lost full rank");

    std::vector<detail::DdRay> rays;
    RatMat a0 = to_rat(sel);
    for (std::size_t j = 0; j < d; ++j) {
        RatVec e(d, Rat(0));
        e[j] = 1;
        auto x = solve_rational(a0, e, d);
        ensure(x.has_value(), "singular starting system");
        detail::DdRay r{primitive_from_rat(*x), boost::dynamic_bitset<>(m)};
        for (std::size_t k = 0; k < d; ++k)
            if (k != j) r.zero.set(basis[k]);
        rays.push_back(std::move(r));
    }

    std::vector<bool> in_basis(m, false);
    for (auto b : basis) in_basis[b] = true;

    for (std::size_t t = 0; t < m; ++t) {
        if (in_basis[t]) continue;
        std::vector<Int> s(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<detail::DdRay> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            s[i] = dot(rows[t], rays[i].v);
            if (s[i] > 0) {
                pos.push_back(i);
                next.push_back(rays[i]);
            } else if (s[i] < 0) {
                neg.push_back(i);
            } else {
                next.push_back(rays[i]);
                next.back().zero.set(t);
            }
        }
        for (std::size_t p : pos)
            for (std::size_t q : neg) {
                boost::dynamic_bitset<> common = rays[p].zero & rays[q].zero;
                if (common.count() + 2 < d) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                    if (r != p && r != q && common.is_subset_of(rays[r].zero)) adjacent = false;
                if (!adjacent) continue;
                IntVec v = primitive(s[p] * rays[q].v - s[q] * rays[p].v);
                common.set(t);
                next.push_back({std::move(v), std::move(common)});
            }
        rays = std::move(next);
    }

    std::vector<IntVec> rv;
    for (auto& r : rays) rv.push_back(std::move(r.v));
    out.rays = detail::sorted_rows(std::move(rv), d);
    return out;
}

class PolyhedralCone {
public:
    PolyhedralCone() = default;

    static PolyhedralCone from_generators(std::size_t dim, const std::vector<IntVec>& gens) {
        for (const auto& g : gens)
            if (g.size() != dim) throw Error(ErrorKind::DimensionMismatch, "generator length");
        PolyhedralCone c;
        c.dim_ = dim;
        VRep dual = double_description(IntMat::from_rows(gens, dim), dim);
        c.facets_ = dual.rays;
        c.equations_ = dual.lineality;
        VRep primal = double_description(c.h_matrix(), dim);
        c.rays_ = primal.rays;
        c.lineality_ = primal.lineality;
        return c;
    }

    static PolyhedralCone from_inequalities(std::size_t dim, const std::vector<IntVec>& ineqs,
                                            const std::vector<IntVec>& eqs = {}) {
        std::vector<IntVec> rows = ineqs;
        for (const auto& e : eqs) {
            rows.push_back(e);
            rows.push_back(-e);
        }
        for (const auto& r : rows)
            if (r.size() != dim) throw Error(ErrorKind::DimensionMismatch, "inequality length");
        PolyhedralCone c;
        c.dim_ = dim;
        VRep primal = double_description(IntMat::from_rows(rows, dim), dim);
        c.rays_ = primal.rays;
        c.lineality_ = primal.lineality;
        VRep dual = double_description(c.v_matrix(), dim);
        c.facets_ = dual.rays;
        c.equations_ = dual.lineality;
        return c;
    }

    std::size_t ambient_dim() const { return dim_; }
    std::size_t dim() const { return dim_ - equations_.rows(); }
    const IntMat& rays() const { return rays_; }
    const IntMat& lineality() const { return lineality_; }
    const IntMat& facets() const { return facets_; }
    const IntMat& equations() const { return equations_; }

    bool is_pointed() const { return lineality_.rows() == 0; }
    bool is_full_dimensional() const { return equations_.rows() == 0; }

    // Extreme rays followed by +/- lineality basis vectors.
    std::vector<IntVec> generators() const { return v_matrix().row_list(); }

    bool contains(const IntVec& x) const {
        if (x.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "contains");
        for (std::size_t i = 0; i < equations_.rows(); ++i)
            if (dot(equations_.row(i), x) != 0) return false;
        for (std::size_t i = 0; i < facets_.rows(); ++i)
            if (dot(facets_.row(i), x) < 0) return false;
        return true;
    }

    PolyhedralCone dual() const {
        PolyhedralCone d;
        d.dim_ = dim_;
        d.rays_ = facets_;
        d.lineality_ = equations_;
        d.facets_ = rays_;
        d.equations_ = lineality_;
        return d;
    }

    friend bool operator==(const PolyhedralCone& a, const PolyhedralCone& b) {
        return a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.lineality_ == b.lineality_;
    }

private:
    IntMat v_matrix() const {
        IntMat m = rays_;
        if (m.rows() == 0) m = IntMat(0, dim_);
        for (std::size_t i = 0; i < lineality_.rows(); ++i) {
            m.append_row(lineality_.row(i));
            m.append_row(-lineality_.row(i));
        }
        return m;
    }

    IntMat h_matrix() const {
        IntMat m = facets_;
        if (m.rows() == 0) m = IntMat(0, dim_);
        for (std::size_t i = 0; i < equations_.rows(); ++i) {
            m.append_row(equations_.row(i));
            m.append_row(-equations_.row(i));
        }
        return m;
    }

    std::size_t dim_ = 0;
    IntMat rays_, lineality_, facets_, equations_;
};

inline PolyhedralCone dual(const PolyhedralCone& c) { return c.dual(); }

inline bool is_strongly_convex(const PolyhedralCone& c) { return c.is_pointed(); }

// Mutual containment of generators.
inline bool cones_equal(const PolyhedralCone& a, const PolyhedralCone& b) {
    if (a.ambient_dim() != b.ambient_dim()) return false;
    for (const auto& g : a.generators())
        if (!b.contains(g)) return false;
    for (const auto& g : b.generators())
        if (!a.contains(g)) return false;
    return true;
}

// A linear functional that is positive on every non-zero point of a pointed cone.
inline IntVec positive_functional(const PolyhedralCone& c) {
    if (!c.is_pointed()) throw Error(ErrorKind::NotPointed, "cone contains a line");
    IntVec l(c.ambient_dim(), Int(0));
    for (std::size_t i = 0; i < c.facets().rows(); ++i) l = l + c.facets().row(i);
    return l;
}

namespace detail {

// Calls f on every integer point of the box [lo, hi].
template <class F>
void for_each_box_point(const IntVec& lo, const IntVec& hi, F&& f) {
    const std::size_t d = lo.size();
    for (std::size_t i = 0; i < d; ++i)
        if (lo[i] > hi[i]) return;
    IntVec x = lo;
    for (;;) {
        f(static_cast<const IntVec&>(x));
        std::size_t i = 0;
        while (i < d) {
            if (x[i] < hi[i]) {
                ++x[i];
                break;
            }
            x[i] = lo[i];
            ++i;
        }
        if (i == d) return;
    }
}

}  // namespace detail

// Minimal generating set of the semigroup c ∩ Z^d, sorted lexicographically.
// Irreducible elements lie in the zonotope spanned by the extreme rays, so the
// search runs over its bounding box.
inline std::vector<IntVec> hilbert_basis(const PolyhedralCone& c) {
    if (!c.is_pointed()) throw Error(ErrorKind::NotPointed, "hilbert_basis");
    if (!c.is_full_dimensional()) throw Error(ErrorKind::NotFullDimensional, "hilbert_basis");
    const std::size_t d = c.ambient_dim();
    if (d == 0) return {};
    IntVec lo(d, Int(0)), hi(d, Int(0));
    for (std::size_t r = 0; r < c.rays().rows(); ++r)
        for (std::size_t i = 0; i < d; ++i) {
            const Int& x = c.rays()(r, i);
            (x < 0 ? lo[i] : hi[i]) += x;
        }
    IntVec ell = positive_functional(c);
    std::vector<std::pair<Int, IntVec>> pts;
    detail::for_each_box_point(lo, hi, [&](const IntVec& x) {
        if (!is_zero(x) && c.contains(x)) pts.emplace_back(dot(ell, x), x);
    });
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<Int, IntVec>> basis;
    for (const auto& [lx, x] : pts) {
        bool reducible = false;
        for (const auto& [lh, h] : basis) {
            if (lh >= lx) break;
            if (c.contains(x - h)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) basis.emplace_back(lx, x);
    }
    std::vector<IntVec> out;
    for (auto& [l, x] : basis) out.push_back(std::move(x));
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

class SemigroupSearch {
public:
    explicit SemigroupSearch(const std::vector<IntVec>& gens) {
        std::set<IntVec> uniq;
        std::size_t dim = 0;
        for (const auto& g : gens) {
            dim = g.size();
            if (!is_zero(g)) uniq.insert(g);
        }
        gens_.assign(uniq.begin(), uniq.end());
        dim_ = dim;
        cone_ = PolyhedralCone::from_generators(dim_, gens_);
        ell_ = positive_functional(cone_);
        std::sort(gens_.begin(), gens_.end(), [&](const IntVec& a, const IntVec& b) {
            Int la = dot(ell_, a), lb = dot(ell_, b);
            return la != lb ? la > lb : a < b;
        });
        for (const auto& g : gens_) lg_.push_back(dot(ell_, g));
        for (std::size_t i = 0; i < gens_.size(); ++i)
            suffix_.push_back(PolyhedralCone::from_generators(
                dim_, std::vector<IntVec>(gens_.begin() + i, gens_.end())));
        min_l_ = lg_.empty() ? Int(1) : *std::min_element(lg_.begin(), lg_.end());
    }

    const PolyhedralCone& cone() const { return cone_; }

    // Largest number of summands any representation of v can use.
    Int certified_bound(const IntVec& v) const { return floor_div(dot(ell_, v), min_l_); }

    bool find(const IntVec& v, const Int& budget) {
        memo_.clear();
        return rec(0, v, budget);
    }

private:
    bool rec(std::size_t i, const IntVec& w, const Int& budget) {
        if (is_zero(w)) return true;
        if (i == gens_.size() || budget == 0) return false;
        Int lw = dot(ell_, w);
        if (lw <= 0 || lw > budget * lg_[i]) return false;
        if (!suffix_[i].contains(w)) return false;
        auto key = std::make_pair(i, w);
        auto it = memo_.find(key);
        if (it != memo_.end() && it->second >= budget) return false;
        Int cmax = std::min(budget, lw / lg_[i]);
        for (Int c = cmax; c >= 0; --c) {
            if (rec(i + 1, w - c * gens_[i], budget - c)) return true;
        }
        memo_[key] = budget;
        return false;
    }

    std::size_t dim_ = 0;
    std::vector<IntVec> gens_;
    std::vector<Int> lg_;
    std::vector<PolyhedralCone> suffix_;
    PolyhedralCone cone_;
    IntVec ell_;
    Int min_l_;
    std::map<std::pair<std::size_t, IntVec>, Int> memo_;
};

}  // namespace detail

// Whether v is a sum of at most `bound` generators. A negative answer is only
// returned when the bound covers every possible representation; otherwise
// BoundTooSmall is raised.
inline bool semigroup_contains(const std::vector<IntVec>& gens, const IntVec& v, const Int& bound) {
    if (is_zero(v)) return true;
    if (gens.empty()) return false;
    detail::SemigroupSearch s(gens);
    if (!s.cone().contains(v)) return false;
    Int cert = s.certified_bound(v);
    if (s.find(v, std::min(bound, cert))) return true;
    if (bound >= cert) return false;
    throw Error(ErrorKind::BoundTooSmall, "no representation with at most " + bound.str() + " terms");
}

// Every lattice point of c in [-box, box]^d is a non-negative integer
// combination of gens (and every generator lies in c).
inline bool verify_generates(const std::vector<IntVec>& gens, const PolyhedralCone& c, long box) {
    const std::size_t d = c.ambient_dim();
    for (const auto& g : gens)
        if (g.size() != d) throw Error(ErrorKind::DimensionMismatch, "verify_generates");
    for (const auto& g : gens)
        if (!c.contains(g)) return false;
    if (gens.empty()) return c.dim() == 0;
    detail::SemigroupSearch s(gens);
    bool ok = true;
    detail::for_each_box_point(IntVec(d, Int(-box)), IntVec(d, Int(box)), [&](const IntVec& x) {
        if (!ok || is_zero(x) || !c.contains(x)) return;
        if (!s.cone().contains(x) || !s.find(x, s.certified_bound(x))) ok = false;
    });
    return ok;
}

}  // namespace smoothfib
