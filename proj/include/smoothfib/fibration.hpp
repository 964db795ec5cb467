#pragma once

// Base diagram of the fibration: collapsing cycles, monodromy shears, the
// region fan of each summand, cut transfer and the final cone.
// Summand and edge indices are 1-based; region 0 is the positive region.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cone.hpp"
#include "polytope.hpp"

namespace smoothfib {

struct CollapsingCycle {
    IntVec direction;     // primitive, first non-zero entry positive
    std::string stratum;  // coordinates vanishing on the stratum
};

inline std::vector<CollapsingCycle> collapsing_cycles(const MinkowskiDecomposition& d, std::size_t p) {
    const auto& rays = summand(d, p).rays;
    std::vector<CollapsingCycle> out;
    const std::string ps = std::to_string(p);
    for (std::size_t i = 0; i < rays.size(); ++i)
        out.push_back({sign_normalized(primitive(rays[i])),
                       "x" + ps + "," + std::to_string(i + 1) + "=y" + ps + "=0"});
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            out.push_back({sign_normalized(primitive(rays[i] - rays[j])),
                           "x" + ps + "," + std::to_string(i + 1) + "=x" + ps + "," + std::to_string(j + 1) + "=0"});
    return out;
}

// Open region {lambda : <a, lambda> > 0 for every normal a}.
struct Region {
    std::size_t index = 0;
    std::vector<IntVec> normals;

    bool contains(const IntVec& lambda) const {
        for (const auto& a : normals)
            if (dot(a, lambda) <= 0) return false;
        return true;
    }

    bool closure_contains(const IntVec& lambda) const {
        for (const auto& a : normals)
            if (dot(a, lambda) < 0) return false;
        return true;
    }
};

// D_{p,0} = {<v_l, .> > 0 for all l}; D_{p,j} = {<v_j, .> < 0, <v_j - v_l, .> < 0 for l != j}.
inline std::vector<Region> regions(const MinkowskiDecomposition& d, std::size_t p) {
    const auto& v = summand(d, p).rays;
    std::vector<Region> out;
    Region r0{0, {}};
    for (const auto& x : v) r0.normals.push_back(x);
    out.push_back(r0);
    for (std::size_t j = 0; j < v.size(); ++j) {
        Region r{j + 1, {-v[j]}};
        for (std::size_t l = 0; l < v.size(); ++l)
            if (l != j) r.normals.push_back(v[l] - v[j]);
        out.push_back(r);
    }
    return out;
}

// Index of the open region containing lambda, or nullopt on a wall.
inline std::optional<std::size_t> locate(const std::vector<Region>& rs, const IntVec& lambda) {
    for (const auto& r : rs)
        if (r.contains(lambda)) return r.index;
    return std::nullopt;
}

inline const IntVec& edge(const MinkowskiDecomposition& d, std::size_t p, std::size_t j) {
    const auto& rays = summand(d, p).rays;
    if (j < 1 || j > rays.size()) throw Error(ErrorKind::RangeError, "edge index " + std::to_string(j));
    return rays[j - 1];
}

// Identity with the first n entries of the last column equal to v_{p,j}.
inline IntMat monodromy(const MinkowskiDecomposition& d, std::size_t p, std::size_t j) {
    const IntVec& v = edge(d, p, j);
    IntMat m = IntMat::identity(d.n + 1);
    for (std::size_t i = 0; i < d.n; ++i) m(i, d.n) = v[i];
    return m;
}

// Identity with last row (-v_{p,j}, 1); the inverse transpose of the monodromy.
inline IntMat affine_monodromy(const MinkowskiDecomposition& d, std::size_t p, std::size_t j) {
    const IntVec& v = edge(d, p, j);
    IntMat m = IntMat::identity(d.n + 1);
    for (std::size_t i = 0; i < d.n; ++i) m(d.n, i) = -v[i];
    return m;
}

// Affine map on region j of summand p (identity on region 0).
inline IntMat region_map(const MinkowskiDecomposition& d, std::size_t p, std::size_t j) {
    return j == 0 ? IntMat::identity(d.n + 1) : affine_monodromy(d, p, j);
}

// Crossing from region j into region i of summand p: last row (v_j - v_i, 1).
inline IntMat cancellation_matrix(const MinkowskiDecomposition& d, std::size_t p, std::size_t i, std::size_t j) {
    return region_map(d, p, i) * unimodular_inverse(region_map(d, p, j));
}

class BaseDiagram {
public:
    explicit BaseDiagram(MinkowskiDecomposition d) : d_(std::move(d)), applied_(d_.k(), false) {}

    const MinkowskiDecomposition& decomposition() const { return d_; }
    const std::vector<std::size_t>& order() const { return order_; }
    bool applied(std::size_t p) const { return applied_.at(p - 1); }
    bool complete() const { return order_.size() == d_.k(); }

    // Height of the boundary over the base direction c.
    Int boundary_height(const IntVec& c) const {
        Int h = 0;
        for (std::size_t p : order_) h += eta0(summand(d_, p).polytope, c);
        return h;
    }

    // Applies the transferred region maps to a point (c, h).
    IntVec image(IntVec point) const {
        if (point.size() != d_.n + 1) throw Error(ErrorKind::DimensionMismatch, "image");
        IntVec c(point.begin(), point.end() - 1);
        for (std::size_t p : order_) {
            std::size_t r = 0;
            for (const auto& reg : regions(d_, p))
                if (reg.closure_contains(c)) {
                    r = reg.index;
                    break;
                }
            point = region_map(d_, p, r) * point;
        }
        return point;
    }

    std::vector<CollapsingCycle> remaining_cycles() const {
        std::vector<CollapsingCycle> out;
        for (std::size_t p = 1; p <= d_.k(); ++p)
            if (!applied(p))
                for (auto& c : collapsing_cycles(d_, p)) out.push_back(std::move(c));
        return out;
    }

    friend BaseDiagram transfer_cut(const BaseDiagram& b, std::size_t p);

private:
    MinkowskiDecomposition d_;
    std::vector<bool> applied_;
    std::vector<std::size_t> order_;
};

inline BaseDiagram transfer_cut(const BaseDiagram& b, std::size_t p) {
    summand(b.d_, p);
    if (b.applied(p)) throw Error(ErrorKind::AlreadyApplied, "cut of summand " + std::to_string(p));
    BaseDiagram out = b;
    out.applied_[p - 1] = true;
    out.order_.push_back(p);
    // The transferred boundary is the image of the zero section.
    for (const auto& v : out.d_.target.vertices()) {
        IntVec c = sign_normalized(v);
        for (const IntVec& dir : {c, IntVec(-c)}) {
            IntVec img = out.image(concat(dir, make_vec({0})));
            ensure(img.back() == out.boundary_height(dir), "boundary height disagrees with region maps");
        }
    }
    return out;
}

// Cone above the transferred boundary, built from vertex tuples of the summands
// and checked against the dual of the cone over the target.
inline PolyhedralCone final_cone(const BaseDiagram& b) {
    if (!b.complete()) throw Error(ErrorKind::CutsRemaining, std::to_string(b.remaining_cycles().size()) + " cycles");
    const auto& d = b.decomposition();
    std::vector<IntVec> sums{IntVec(d.n, Int(0))};
    for (std::size_t p : b.order()) {
        std::vector<IntVec> next;
        for (const auto& s : sums)
            for (const auto& v : summand(d, p).polytope.vertices()) next.push_back(s + v);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        sums = std::move(next);
    }
    std::vector<IntVec> ineqs;
    for (const auto& s : sums) ineqs.push_back(concat(s, make_vec({1})));
    PolyhedralCone c = PolyhedralCone::from_inequalities(d.n + 1, ineqs);
    if (!cones_equal(c, cone_over(d.target).dual()))
        throw Error(ErrorKind::CrossCheckFailed, "final cone differs from the dual of the cone over the target");
    return c;
}

struct HeightOne {
    IntMat normalization;   // identity with last row (w, 1)
    LatticePolytope qdual;  // slice at height one after normalization
};

// Integer shear putting every extreme ray at height one, if one exists.
inline std::optional<HeightOne> height_one_normalization(const PolyhedralCone& c) {
    const std::size_t dim = c.ambient_dim();
    if (dim == 0 || !c.is_pointed()) return std::nullopt;
    IntVec top(dim, Int(0));
    top[dim - 1] = 1;
    if (!c.contains(top)) return std::nullopt;
    const IntMat& r = c.rays();
    const std::size_t n = dim - 1;
    IntMat a(r.rows(), n);
    IntVec rhs(r.rows());
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = r(i, j);
        rhs[i] = 1 - r(i, n);
    }
    auto w = solve_integer(a, rhs);
    if (!w) return std::nullopt;
    HeightOne h;
    h.normalization = IntMat::identity(dim);
    for (std::size_t j = 0; j < n; ++j) h.normalization(n, j) = (*w)[j];
    std::vector<IntVec> heads;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        IntVec img = h.normalization * r.row(i);
        ensure(img[n] == 1, "normalized ray off height one");
        img.pop_back();
        heads.push_back(img);
    }
    h.qdual = convex_hull(heads);
    return h;
}

// Time at which a disk of symplectic area s closes over the direction v.
inline Rat disk_time(const IntVec& v, const Rat& s) {
    if (s < 0) throw Error(ErrorKind::NegativeArea, "area must be non-negative");
    Rat t = s / Rat(dot(v, v) + 1);
    ensure(t * Rat(dot(v, v) + 1) == s, "disk time identity");
    return t;
}

}  // namespace smoothfib
