#pragma once

// Lattice polytopes, Minkowski decompositions and the per-summand lattice data.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dd.hpp"
#include "exactlin.hpp"

namespace smoothfib {

class LatticePolytope {
public:
    LatticePolytope() = default;

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return cone_.dim() - 1; }

    // Vertices in lexicographic order.
    const std::vector<IntVec>& vertices() const { return vertices_; }

    // Cone over P x {1}.
    const PolyhedralCone& homogenized() const { return cone_; }

    bool contains(const IntVec& x) const { return cone_.contains(concat(x, make_vec({1}))); }

    bool has_vertex(const IntVec& x) const {
        return std::binary_search(vertices_.begin(), vertices_.end(), x);
    }

    friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
        return a.n_ == b.n_ && a.vertices_ == b.vertices_;
    }

    friend LatticePolytope convex_hull(const std::vector<IntVec>& pts);

private:
    std::size_t n_ = 0;
    std::vector<IntVec> vertices_;
    PolyhedralCone cone_;
};

// Vertices are the extreme rays of the cone over the homogenized points.
inline LatticePolytope convex_hull(const std::vector<IntVec>& pts) {
    if (pts.empty()) throw Error(ErrorKind::EmptyInput, "convex_hull of no points");
    const std::size_t n = pts.front().size();
    std::vector<IntVec> hom;
    for (const auto& p : pts) {
        if (p.size() != n) throw Error(ErrorKind::DimensionMismatch, "convex_hull point length");
        hom.push_back(concat(p, make_vec({1})));
    }
    LatticePolytope q;
    q.n_ = n;
    q.cone_ = PolyhedralCone::from_generators(n + 1, hom);
    const IntMat& r = q.cone_.rays();
    for (std::size_t i = 0; i < r.rows(); ++i) {
        IntVec v = r.row(i);
        ensure(v[n] == 1, "hull ray off the height-one slice");
        v.pop_back();
        q.vertices_.push_back(std::move(v));
    }
    std::sort(q.vertices_.begin(), q.vertices_.end());
    return q;
}

inline LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
    if (p.ambient_dim() != q.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "minkowski_sum");
    std::vector<IntVec> s;
    for (const auto& a : p.vertices())
        for (const auto& b : q.vertices()) s.push_back(a + b);
    return convex_hull(s);
}

// All lattice points, lexicographically sorted.
inline std::vector<IntVec> lattice_points(const LatticePolytope& q) {
    const std::size_t n = q.ambient_dim();
    IntVec lo = q.vertices().front(), hi = lo;
    for (const auto& v : q.vertices())
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    std::vector<IntVec> out;
    detail::for_each_box_point(lo, hi, [&](const IntVec& x) {
        if (q.contains(x)) out.push_back(x);
    });
    std::sort(out.begin(), out.end());
    return out;
}

// max over q of <c, -v>.
inline Int eta0(const LatticePolytope& q, const IntVec& c) {
    if (c.size() != q.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "eta0");
    Int best = -dot(c, q.vertices().front());
    for (const auto& v : q.vertices()) best = std::max(best, Int(-dot(c, v)));
    return best;
}

// A summand together with the declared order of its non-zero vertices.
struct Summand {
    LatticePolytope polytope;
    std::vector<IntVec> rays;
};

// Hulls the points; non-zero vertices keep their order of first appearance.
inline Summand make_summand(const std::vector<IntVec>& pts) {
    Summand s{convex_hull(pts), {}};
    std::set<IntVec> seen;
    for (const auto& p : pts)
        if (!is_zero(p) && s.polytope.has_vertex(p) && seen.insert(p).second) s.rays.push_back(p);
    return s;
}

struct MinkowskiDecomposition {
    std::size_t n = 0;
    std::vector<Summand> summands;
    LatticePolytope target;

    std::size_t k() const { return summands.size(); }
    std::size_t m(std::size_t p) const { return summands.at(p - 1).rays.size(); }  // 1-based
};

// Builds a decomposition; a given target must equal the Minkowski sum.
inline MinkowskiDecomposition make_decomposition(const std::vector<std::vector<IntVec>>& summands,
                                                 const std::optional<std::vector<IntVec>>& target = {}) {
    if (summands.empty()) throw Error(ErrorKind::EmptyInput, "no summands");
    MinkowskiDecomposition d;
    d.n = summands.front().empty() ? 0 : summands.front().front().size();
    for (const auto& s : summands) {
        if (s.empty()) throw Error(ErrorKind::EmptyInput, "summand without points");
        for (const auto& p : s)
            if (p.size() != d.n) throw Error(ErrorKind::DimensionMismatch, "summand point length");
        d.summands.push_back(make_summand(s));
    }
    LatticePolytope sum = d.summands.front().polytope;
    for (std::size_t i = 1; i < d.summands.size(); ++i) sum = minkowski_sum(sum, d.summands[i].polytope);
    if (target) {
        LatticePolytope t = convex_hull(*target);
        if (!(t == sum)) throw Error(ErrorKind::TargetMismatch, "target is not the Minkowski sum of the summands");
    }
    d.target = std::move(sum);
    return d;
}

// (eta0(M_1, v), ..., eta0(M_k, v)).
inline IntVec phi(const MinkowskiDecomposition& d, const IntVec& v) {
    IntVec out;
    out.reserve(d.k());
    for (const auto& s : d.summands) out.push_back(eta0(s.polytope, v));
    return out;
}

struct AdmissibilityReport {
    bool ok = true;
    std::vector<std::string> violations;
    std::vector<std::size_t> point_summands;  // 1-based indices of {0} summands
};

inline AdmissibilityReport is_admissible(const MinkowskiDecomposition& d) {
    AdmissibilityReport r;
    auto fail = [&](std::size_t p, const std::string& msg) {
        r.ok = false;
        r.violations.push_back("summand " + std::to_string(p + 1) + ": " + msg);
    };
    for (std::size_t p = 0; p < d.k(); ++p) {
        const Summand& s = d.summands[p];
        if (!s.polytope.has_vertex(IntVec(d.n, Int(0)))) {
            fail(p, "origin is not a vertex");
            continue;
        }
        if (s.rays.empty()) {
            if (d.k() < 2) fail(p, "single point polytope");
            else r.point_summands.push_back(p + 1);
            continue;
        }
        if (s.polytope.vertices().size() != s.rays.size() + 1) {
            fail(p, "not a simplex at the origin");
            continue;
        }
        if (s.rays.size() > d.n) {
            fail(p, "more edges than the dimension");
            continue;
        }
        IntMat v = IntMat::from_rows(s.rays, d.n);
        if (rank(v) != s.rays.size()) {
            fail(p, "edge vectors are linearly dependent");
            continue;
        }
        if (!is_primitive_system(v)) fail(p, "edge vectors do not extend to a lattice basis");
    }
    if (r.ok && d.target.dim() != d.n) {
        r.ok = false;
        r.violations.push_back("Minkowski sum is not full-dimensional");
    }
    return r;
}

// Same decomposition without {0} summands; the Minkowski sum is unchanged.
inline MinkowskiDecomposition drop_point_summands(const MinkowskiDecomposition& d) {
    MinkowskiDecomposition out;
    out.n = d.n;
    out.target = d.target;
    for (const auto& s : d.summands)
        if (!s.rays.empty()) out.summands.push_back(s);
    if (out.summands.empty()) throw Error(ErrorKind::NotAdmissible, "no non-trivial summand");
    return out;
}

inline void require_admissible(const MinkowskiDecomposition& d) {
    AdmissibilityReport r = is_admissible(d);
    if (!r.ok) throw Error(ErrorKind::NotAdmissible, r.violations.front());
    if (!r.point_summands.empty())
        throw Error(ErrorKind::NotAdmissible, "point summands must be dropped first");
}

struct SummandMatrices {
    IntMat v;  // m x n, rows are the edge vectors
    IntMat e;  // (n-m) x n
    IntMat a;  // n x m
    IntMat c;  // n x (n-m)
    IntVec b;  // minus the sum of the columns of a
};

// Summand indices are 1-based throughout the public interface.
inline const Summand& summand(const MinkowskiDecomposition& d, std::size_t p) {
    if (p < 1 || p > d.k()) throw Error(ErrorKind::RangeError, "summand index " + std::to_string(p));
    return d.summands[p - 1];
}

inline SummandMatrices summand_matrices(const MinkowskiDecomposition& d, std::size_t p) {
    const Summand& s = summand(d, p);
    if (s.rays.empty()) throw Error(ErrorKind::NotAdmissible, "point summand");
    IntMat v = IntMat::from_rows(s.rays, d.n);
    if (s.polytope.vertices().size() != s.rays.size() + 1 || !is_primitive_system(v))
        throw Error(ErrorKind::NotAdmissible, "summand " + std::to_string(p));
    Completion comp = complete_basis(v);
    SummandMatrices out{v, comp.e, comp.a, comp.c, IntVec(d.n, Int(0))};
    for (std::size_t l = 0; l < out.a.cols(); ++l) out.b = out.b - out.a.col(l);
    return out;
}

}  // namespace smoothfib
