#include <set>

#include <gtest/gtest.h>

#include <smoothfib/cone.hpp>
#include <smoothfib/polytope.hpp>

#include "oracles/cone_oracle.hpp"
#include "oracles/linalg_oracle.hpp"
#include "support/fixtures.hpp"

using namespace smoothfib;
using fixtures::pts;

namespace {

std::set<IntVec> as_set(const std::vector<IntVec>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Hull, DropsDuplicatesAndInteriorPoints) {
    EXPECT_EQ(convex_hull(pts({{0, 0}, {1, 0}, {0, 1}, {0, 0}})).vertices(), pts({{0, 0}, {0, 1}, {1, 0}}));
    LatticePolytope s = convex_hull(pts({{0, 0}, {2, 0}, {1, 0}}));
    EXPECT_EQ(s.vertices(), pts({{0, 0}, {2, 0}}));
    EXPECT_EQ(s.dim(), 1u);
    EXPECT_EQ(convex_hull(pts({{3, 4}})).dim(), 0u);
}

TEST(Hull, SquareWithInteriorPoints) {
    LatticePolytope q = convex_hull(pts({{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}, {1, 0}}));
    EXPECT_EQ(q.vertices(), pts({{0, 0}, {0, 2}, {2, 0}, {2, 2}}));
    EXPECT_TRUE(q.contains(make_vec({1, 2})));
    EXPECT_FALSE(q.contains(make_vec({3, 1})));
}

TEST(Hull, ThreeDimensionalOctahedron) {
    LatticePolytope q =
        convex_hull(pts({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}, {0, 0, 0}}));
    EXPECT_EQ(q.vertices().size(), 6u);
    EXPECT_EQ(q.dim(), 3u);
    EXPECT_EQ(lattice_points(q).size(), 7u);
}

TEST(Minkowski, Q5) {
    auto q5 = minkowski_sum(convex_hull(fixtures::triangle()), convex_hull(fixtures::segment(1, 1)));
    EXPECT_EQ(as_set(q5.vertices()), as_set(pts({{0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 2}})));
}

TEST(Minkowski, Q6AndIdentity) {
    auto q6 = minkowski_sum(convex_hull(pts({{0, 0}, {1, 0}, {1, 1}})), convex_hull(pts({{0, 0}, {0, 1}, {1, 1}})));
    EXPECT_EQ(as_set(q6.vertices()), as_set(pts({{0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 2}, {2, 2}})));
    auto origin = convex_hull(pts({{0, 0}}));
    EXPECT_EQ(minkowski_sum(q6, origin), q6);
}

TEST(LatticePoints, AgainstOracle) {
    EXPECT_EQ(lattice_points(convex_hull(fixtures::triangle())).size(), 3u);
    EXPECT_EQ(lattice_points(convex_hull(fixtures::segment(1, 1))), pts({{0, 0}, {1, 1}}));
    auto big = pts({{0, 0}, {2, 0}, {0, 2}});
    EXPECT_EQ(lattice_points(convex_hull(big)).size(), 6u);
    for (const auto& poly : {big, pts({{0, 0}, {3, 1}, {1, 3}, {-1, 2}}), pts({{-2, -1}, {4, 1}, {0, 5}})}) {
        auto ours = as_set(lattice_points(convex_hull(poly)));
        auto ref = as_set(oracle::polygon_lattice_points(poly));
        EXPECT_EQ(ours, ref);
    }
}

TEST(Eta0, Q5Values) {
    auto d = fixtures::q5();
    EXPECT_EQ(eta0(d.target, make_vec({0, -1})), 2);
    EXPECT_EQ(eta0(d.target, make_vec({-1, -1})), 3);
    EXPECT_EQ(eta0(d.target, make_vec({0, 0})), 0);
    EXPECT_EQ(eta0(d.target, make_vec({1, 1})), 0);
}

TEST(Phi, Q5Values) {
    auto d = fixtures::q5();
    EXPECT_EQ(phi(d, make_vec({-1, -1})), make_vec({1, 2}));
    EXPECT_EQ(phi(d, make_vec({0, -1})), make_vec({1, 1}));
    EXPECT_EQ(phi(d, make_vec({0, 0})), make_vec({0, 0}));
}

TEST(Decomposition, DeclaredEdgeOrder) {
    auto d = make_decomposition({pts({{0, 0}, {0, 1}, {1, 0}}), fixtures::segment(1, 1)});
    EXPECT_EQ(d.summands[0].rays, pts({{0, 1}, {1, 0}}));
    EXPECT_EQ(d.m(1), 2u);
    EXPECT_EQ(d.m(2), 1u);
    EXPECT_EQ(d.k(), 2u);
}

TEST(Decomposition, TargetMismatch) {
    try {
        make_decomposition({fixtures::triangle(), fixtures::segment(1, 1)}, pts({{0, 0}, {1, 0}, {0, 1}}));
        FAIL() << "expected TargetMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TargetMismatch);
    }
    EXPECT_NO_THROW(make_decomposition({fixtures::triangle(), fixtures::segment(1, 1)},
                                       pts({{0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 2}, {1, 1}})));
}

TEST(Admissibility, Fixtures) {
    for (const auto& f : fixtures::all()) EXPECT_TRUE(is_admissible(f.d).ok) << f.name;
}

TEST(Admissibility, Violations) {
    EXPECT_FALSE(is_admissible(make_decomposition({fixtures::segment(2, 0), fixtures::segment(0, 1)})).ok);
    EXPECT_FALSE(is_admissible(make_decomposition({pts({{1, 0}, {0, 1}, {1, 1}})})).ok);
    EXPECT_FALSE(is_admissible(make_decomposition({pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}})})).ok);
    EXPECT_FALSE(is_admissible(make_decomposition({pts({{0, 0}, {2, 1}, {1, 2}})})).ok);
    // segments along a single line sum to a segment
    EXPECT_FALSE(is_admissible(make_decomposition({fixtures::segment(1, 0), fixtures::segment(1, 0)})).ok);
}

TEST(Admissibility, PointSummandsAreDropped) {
    auto d = make_decomposition({fixtures::triangle(), pts({{0, 0}}), fixtures::segment(1, 1)});
    auto r = is_admissible(d);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.point_summands, std::vector<std::size_t>{2});
    EXPECT_THROW(require_admissible(d), Error);
    auto e = drop_point_summands(d);
    EXPECT_EQ(e.k(), 2u);
    EXPECT_EQ(e.target, d.target);
    EXPECT_FALSE(is_admissible(make_decomposition({pts({{0, 0}})})).ok);
}

TEST(SummandMatrices, Q5) {
    auto d = fixtures::q5();
    auto m1 = summand_matrices(d, 1);
    EXPECT_EQ(m1.v, IntMat::identity(2));
    EXPECT_EQ(m1.a, IntMat::identity(2));
    EXPECT_EQ(m1.c.cols(), 0u);
    EXPECT_EQ(m1.e.rows(), 0u);
    EXPECT_EQ(m1.b, make_vec({-1, -1}));
    auto m2 = summand_matrices(d, 2);
    EXPECT_EQ(m2.v, (IntMat{{1, 1}}));
    // V A = I, V C = 0, E A = 0, E C = +-I and [A | C] unimodular
    EXPECT_EQ(m2.v * m2.a, IntMat::identity(1));
    EXPECT_EQ(m2.v * m2.c, IntMat(1, 1));
    EXPECT_EQ(m2.e * m2.a, IntMat(1, 1));
    Int ac = oracle::leibniz_det(hstack(m2.a, m2.c));
    EXPECT_TRUE(ac == 1 || ac == -1);
    EXPECT_THROW(summand(d, 3), Error);
    EXPECT_THROW(summand(d, 0), Error);
}

TEST(SummandMatrices, RejectsNonPrimitiveSegment) {
    auto d = make_decomposition({fixtures::segment(2, 0)});
    EXPECT_THROW(summand_matrices(d, 1), Error);
}

TEST(ConeOver, Q5AndPoint) {
    auto d = fixtures::q5();
    auto c = cone_over(d.target);
    std::set<IntVec> r;
    for (const auto& x : c.rays().row_list()) r.insert(x);
    EXPECT_EQ(r, as_set(pts({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {2, 1, 1}, {1, 2, 1}})));
    EXPECT_TRUE(is_strongly_convex(c));
    auto p = cone_over(convex_hull(pts({{0, 0}})));
    EXPECT_EQ(p.rays().row_list(), pts({{0, 0, 1}}));
}

TEST(SigmaTilde, Q5Generators) {
    auto st = sigma_tilde(fixtures::q5());
    std::set<IntVec> r;
    for (const auto& x : st.rays().row_list()) r.insert(x);
    EXPECT_EQ(r, as_set(pts({{0, 0, 1, 0}, {1, 0, 1, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 1}})));
    EXPECT_TRUE(is_strongly_convex(st));
}

TEST(SigmaTilde, SingleSummandIsConeOver) {
    auto d = fixtures::unit_triangle();
    EXPECT_TRUE(cones_equal(sigma_tilde(d), cone_over(d.target)));
}

TEST(SigmaTilde, Q6ThreeSegments) {
    auto st = sigma_tilde(fixtures::q6_dec2());
    EXPECT_EQ(st.ambient_dim(), 5u);
    EXPECT_EQ(st.rays().rows(), 6u);
}
