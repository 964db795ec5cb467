#pragma once

// Cones attached to polytopes and decompositions.

#include "dd.hpp"
#include "polytope.hpp"

namespace smoothfib {

// Cone over Q x {1} in R^{n+1}.
inline PolyhedralCone cone_over(const LatticePolytope& q) { return q.homogenized(); }

// Cone in R^{n+k} generated by (v, e_i) for v a vertex of the i-th summand.
inline PolyhedralCone sigma_tilde(const MinkowskiDecomposition& d) {
    const std::size_t n = d.n, k = d.k();
    std::vector<IntVec> gens;
    for (std::size_t i = 0; i < k; ++i)
        for (const auto& v : d.summands[i].polytope.vertices()) {
            IntVec g = v;
            g.resize(n + k, Int(0));
            g[n + i] = 1;
            gens.push_back(std::move(g));
        }
    return PolyhedralCone::from_generators(n + k, gens);
}

}  // namespace smoothfib
