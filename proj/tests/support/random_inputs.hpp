#pragma once

#include <random>
#include <vector>

#include <smoothfib/dd.hpp>
#include <smoothfib/polytope.hpp>

#include "oracles/cone_oracle.hpp"

namespace fixtures {

using smoothfib::IntMat;

// Random full-dimensional pointed cone with generator entries in [-r, r].
inline std::vector<IntVec> random_pointed_gens(std::mt19937_64& rng, std::size_t d, long r) {
    std::uniform_int_distribution<long> c(-r, r);
    std::uniform_int_distribution<std::size_t> extra(0, 3);
    for (;;) {
        std::vector<IntVec> gens;
        const std::size_t m = d + extra(rng);
        for (std::size_t i = 0; i < m; ++i) {
            IntVec g(d);
            for (auto& x : g) x = c(rng);
            if (!smoothfib::is_zero(g)) gens.push_back(g);
        }
        if (gens.size() < d || smoothfib::rank(IntMat::from_rows(gens, d)) != d) continue;
        if (!oracle::positive_functional(gens)) continue;
        return gens;
    }
}

// Random unimodular 2x2 matrix as a product of elementary moves.
inline IntMat random_unimodular(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> op(0, 3), s(-2, 2);
    IntMat u = IntMat::identity(2);
    for (int i = 0; i < 4; ++i) {
        int o = op(rng);
        if (o == 0) u.add_row(0, 1, s(rng));
        else if (o == 1) u.add_row(1, 0, s(rng));
        else if (o == 2) u.swap_rows(0, 1);
        else u.negate_row(0);
    }
    return u;
}

// Random admissible planar decomposition of unimodular triangles and segments.
inline MinkowskiDecomposition random_admissible(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> ks(1, 3), kind(0, 1);
    for (;;) {
        std::vector<std::vector<IntVec>> summands;
        const int k = ks(rng);
        for (int i = 0; i < k; ++i) {
            IntMat u = random_unimodular(rng);
            if (kind(rng)) summands.push_back({make_vec({0, 0}), u.row(0), u.row(1)});
            else summands.push_back({make_vec({0, 0}), u.row(0)});
        }
        auto d = smoothfib::make_decomposition(summands);
        if (smoothfib::is_admissible(d).ok) return d;
    }
}

}  // namespace fixtures
