#pragma once

#include <string>
#include <vector>

#include <smoothfib/polytope.hpp>

namespace fixtures {

using smoothfib::IntVec;
using smoothfib::make_vec;
using smoothfib::MinkowskiDecomposition;

inline std::vector<IntVec> pts(std::initializer_list<std::initializer_list<long>> xs) {
    std::vector<IntVec> out;
    for (const auto& x : xs) out.push_back(make_vec(x));
    return out;
}

inline std::vector<IntVec> triangle() { return pts({{0, 0}, {1, 0}, {0, 1}}); }
inline std::vector<IntVec> segment(long a, long b) { return pts({{0, 0}, {a, b}}); }

inline MinkowskiDecomposition q5() { return smoothfib::make_decomposition({triangle(), segment(1, 1)}); }

inline MinkowskiDecomposition q6_dec1() {
    return smoothfib::make_decomposition({pts({{0, 0}, {1, 0}, {1, 1}}), pts({{0, 0}, {0, 1}, {1, 1}})});
}

inline MinkowskiDecomposition q6_dec2() {
    return smoothfib::make_decomposition({segment(1, 0), segment(0, 1), segment(1, 1)});
}

inline MinkowskiDecomposition lens(long p, long q) {
    return smoothfib::make_decomposition({segment(1, 0), segment(q, p)});
}

inline MinkowskiDecomposition q3() { return smoothfib::make_decomposition({triangle(), triangle(), triangle()}); }

inline MinkowskiDecomposition no_critical() {
    return smoothfib::make_decomposition({triangle(), segment(1, 0)});
}

inline MinkowskiDecomposition unit_triangle() { return smoothfib::make_decomposition({triangle()}); }

struct Named {
    std::string name;
    MinkowskiDecomposition d;
};

inline std::vector<Named> all() {
    return {{"q5", q5()},          {"q6_dec1", q6_dec1()}, {"q6_dec2", q6_dec2()},
            {"lens_2_1", lens(2, 1)}, {"q3", q3()},         {"no_critical", no_critical()},
            {"triangle", unit_triangle()}};
}

}  // namespace fixtures
