#pragma once

// Brute-force cone references that avoid double description: membership via
// Caratheodory and Cramer's rule, Hilbert bases by level-ordered reducibility.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include <smoothfib/exactlin.hpp>

#include "linalg_oracle.hpp"

namespace oracle {

using smoothfib::IntVec;
using smoothfib::Rat;

// x lies in the full-dimensional cone spanned by gens iff it is a non-negative
// combination of some d linearly independent generators.
inline bool in_cone(const std::vector<IntVec>& gens, const IntVec& x) {
    const std::size_t d = x.size();
    std::vector<std::vector<std::size_t>> subs;
    std::vector<std::size_t> cur;
    subsets(gens.size(), d, 0, cur, subs);
    for (const auto& s : subs) {
        IntMat m(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) m(i, j) = gens[s[j]][i];
        Int det = leibniz_det(m);
        if (det == 0) continue;
        bool ok = true;
        for (std::size_t j = 0; j < d && ok; ++j) {
            IntMat mj = m;
            for (std::size_t i = 0; i < d; ++i) mj(i, j) = x[i];
            Int dj = leibniz_det(mj);
            // coefficient dj / det must be >= 0
            if ((dj < 0 && det > 0) || (dj > 0 && det < 0)) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

inline Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Smallest-norm integer functional in [-r, r]^d positive on every generator.
inline std::optional<IntVec> positive_functional(const std::vector<IntVec>& gens, long r = 6) {
    const std::size_t d = gens.front().size();
    std::optional<IntVec> best;
    Int best_norm = 0;
    IntVec f(d, Int(-r));
    for (;;) {
        bool ok = true;
        for (const auto& g : gens)
            if (dot(f, g) <= 0) ok = false;
        if (ok) {
            Int nrm = 0;
            for (const auto& x : f) nrm += x * x;
            if (!best || nrm < best_norm) best = f, best_norm = nrm;
        }
        std::size_t i = 0;
        while (i < d && f[i] == r) f[i++] = -r;
        if (i == d) break;
        ++f[i];
    }
    return best;
}

// Membership by Cramer's rule in machine integers, with the adjugate of every
// invertible d-subset of generators computed once.
class SimplicialCover {
public:
    explicit SimplicialCover(const std::vector<IntVec>& gens) : d_(gens.front().size()) {
        std::vector<std::vector<std::size_t>> subs;
        std::vector<std::size_t> cur;
        subsets(gens.size(), d_, 0, cur, subs);
        for (const auto& s : subs) {
            IntMat m(d_, d_);
            for (std::size_t i = 0; i < d_; ++i)
                for (std::size_t j = 0; j < d_; ++j) m(i, j) = gens[s[j]][i];
            Int det = leibniz_det(m);
            if (det == 0) continue;
            // row j of the adjugate gives det * (coefficient j)
            std::vector<std::vector<long long>> adj(d_, std::vector<long long>(d_));
            for (std::size_t j = 0; j < d_; ++j)
                for (std::size_t i = 0; i < d_; ++i) {
                    IntMat mj = m;
                    for (std::size_t r = 0; r < d_; ++r) mj(r, j) = r == i ? 1 : 0;
                    adj[j][i] = static_cast<long long>(leibniz_det(mj));
                }
            pieces_.push_back({det > 0 ? 1 : -1, std::move(adj)});
        }
    }

    bool contains(const std::vector<long long>& x) const {
        for (const auto& [sign, adj] : pieces_) {
            bool ok = true;
            for (std::size_t j = 0; j < d_ && ok; ++j) {
                long long c = 0;
                for (std::size_t i = 0; i < d_; ++i) c += adj[j][i] * x[i];
                if (c * sign < 0) ok = false;
            }
            if (ok) return true;
        }
        return false;
    }

private:
    std::size_t d_;
    std::vector<std::pair<int, std::vector<std::vector<long long>>>> pieces_;
};

// Hilbert basis of a pointed full-dimensional cone: every element has
// functional value at most the sum over the generators, and the slice of the
// cone below that value lies in the box spanned by the scaled generators.
// A point is reducible iff subtracting some smaller irreducible element stays
// in the cone, so points are scanned by increasing functional value.
inline std::set<IntVec> hilbert_basis(const std::vector<IntVec>& gens) {
    const std::size_t d = gens.front().size();
    IntVec l = *positive_functional(gens);
    Int total = 0;
    for (const auto& g : gens) total += dot(l, g);
    std::vector<long long> lo(d, 0), hi(d, 0), ll(d);
    for (std::size_t i = 0; i < d; ++i) ll[i] = static_cast<long long>(l[i]);
    for (const auto& g : gens) {
        Int lg = dot(l, g);
        for (std::size_t i = 0; i < d; ++i) {
            Int num = total * g[i];
            lo[i] = std::min(lo[i], static_cast<long long>(smoothfib::floor_div(num, lg)));
            hi[i] = std::max(hi[i], static_cast<long long>(smoothfib::ceil_div(num, lg)));
        }
    }
    const long long ltot = static_cast<long long>(total);
    SimplicialCover cover(gens);
    std::map<long long, std::vector<std::vector<long long>>> by_level;
    std::vector<long long> x = lo;
    for (;;) {
        long long lx = 0;
        for (std::size_t i = 0; i < d; ++i) lx += ll[i] * x[i];
        if (lx > 0 && lx <= ltot && cover.contains(x)) by_level[lx].push_back(x);
        std::size_t i = 0;
        while (i < d && x[i] == hi[i]) x[i] = lo[i], ++i;
        if (i == d) break;
        ++x[i];
    }
    std::vector<std::pair<long long, std::vector<long long>>> basis;
    std::vector<long long> r(d);
    for (const auto& [lv, xs] : by_level)
        for (const auto& p : xs) {
            bool reducible = false;
            for (const auto& [lh, h] : basis) {
                if (lh >= lv) break;
                for (std::size_t i = 0; i < d; ++i) r[i] = p[i] - h[i];
                if (cover.contains(r)) {
                    reducible = true;
                    break;
                }
            }
            if (!reducible) basis.emplace_back(lv, p);
        }
    std::set<IntVec> out;
    for (const auto& [lv, p] : basis) {
        IntVec v;
        for (long long c : p) v.push_back(Int(c));
        out.insert(v);
    }
    return out;
}

// Lattice points of a convex polygon given by any point set, by half-plane
// tests against every supporting line through two of the points.
inline std::vector<IntVec> polygon_lattice_points(const std::vector<IntVec>& pts) {
    auto cross = [](const IntVec& o, const IntVec& a, const IntVec& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    Int x0 = pts[0][0], x1 = x0, y0 = pts[0][1], y1 = y0;
    for (const auto& p : pts) {
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
    }
    std::vector<IntVec> out;
    for (Int x = x0; x <= x1; ++x)
        for (Int y = y0; y <= y1; ++y) {
            IntVec q{x, y};
            // q is in the hull iff no pair (a, b) has every point on one side strictly
            // and q strictly on the other
            bool inside = true;
            for (const auto& a : pts)
                for (const auto& b : pts) {
                    if (a == b || !inside) continue;
                    bool all_left = true;
                    for (const auto& c : pts)
                        if (cross(a, b, c) < 0) all_left = false;
                    if (all_left && cross(a, b, q) < 0) inside = false;
                }
            if (inside) {
                // degenerate hulls: q must also lie on the segment spanned by pts
                bool collinear = true;
                for (const auto& c : pts)
                    if (cross(pts[0], pts.back(), c) != 0) collinear = false;
                if (collinear && cross(pts[0], pts.back(), q) != 0) inside = false;
            }
            if (inside) out.push_back(q);
        }
    return out;
}

}  // namespace oracle
