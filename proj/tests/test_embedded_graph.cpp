#include <gtest/gtest.h>

#include "knotlat/embedded_graph.hpp"

using namespace knotlat;

namespace {

// triangle 0-1-2 with edges e0: 0-1, e1: 1-2, e2: 2-0, planar rotations
EmbeddedGraph triangle() {
    return EmbeddedGraph::from_rotations({{0, 5}, {2, 1}, {4, 3}});
}

// the 5-loop bouquet on the torus carried as the running example:
// rotation word (1+ 2+ 3+ 4+ 5+ 2- 1- 3- 5- 4-)
EmbeddedGraph running_bouquet() {
    return EmbeddedGraph::from_rotations({{0, 2, 4, 6, 8, 3, 1, 5, 9, 7}});
}

// two interleaved loops: the standard torus bouquet
EmbeddedGraph torus_bouquet2() {
    return EmbeddedGraph::from_rotations({{0, 2, 1, 3}});
}

}  // namespace

TEST(EmbeddedGraph, TriangleFacesAndDual) {
    auto g = triangle();
    EXPECT_EQ(g.num_vertices(), 3u);
    EXPECT_EQ(g.num_edges(), 3u);
    EXPECT_EQ(g.num_faces(), 2u);
    EXPECT_EQ(g.genus(), 0u);
    auto d = g.dual();
    EXPECT_EQ(d.num_vertices(), 2u);
    EXPECT_EQ(d.num_edges(), 3u);
    EXPECT_EQ(d.num_faces(), 3u);
    EXPECT_EQ(d.genus(), 0u);
}

TEST(EmbeddedGraph, RunningBouquetStructure) {
    auto g = running_bouquet();
    EXPECT_EQ(g.num_vertices(), 1u);
    EXPECT_EQ(g.num_edges(), 5u);
    EXPECT_EQ(g.num_faces(), 4u);
    EXPECT_EQ(g.genus(), 1u);

    // dual = two triangles sharing one edge: degree sequence (2,2,3,3)
    auto d = g.dual();
    EXPECT_EQ(d.num_vertices(), 4u);
    EXPECT_EQ(d.num_edges(), 5u);
    EXPECT_EQ(d.genus(), 1u);
    std::vector<int> degs;
    for (const auto& r : d.rotations()) degs.push_back(int(r.size()));
    std::sort(degs.begin(), degs.end());
    EXPECT_EQ(degs, (std::vector<int>{2, 2, 3, 3}));
}

TEST(EmbeddedGraph, DoubleDualIsReversedOriginal) {
    for (auto g : {triangle(), running_bouquet(), torus_bouquet2()}) {
        auto dd = g.dual().dual();
        EXPECT_EQ(dd.num_vertices(), g.num_vertices());
        EXPECT_TRUE(dd.isomorphic_to(g) || dd.isomorphic_to(g.reversed()));
        // and it is the reversed-orientation copy for the interleaved bouquet
    }
}

TEST(EmbeddedGraph, CycleAndCutBases) {
    auto g = running_bouquet();
    auto cb = g.cycle_basis();
    // bouquet: all 5 edges are loops, basis = unit vectors
    EXPECT_EQ(cb.vectors, IMat::identity(5));
    EXPECT_EQ(g.vertex_cuts(), IMat(1, 5));  // loops contribute nothing

    auto d = g.dual();
    auto dcb = d.cycle_basis();
    EXPECT_EQ(dcb.vectors.rows(), 2u);  // E - V + 1 = 5 - 4 + 1
    // every cycle vector is annihilated by every vertex cut
    IMat cuts = d.vertex_cuts();
    IMat prod = dcb.vectors * cuts.transpose();
    for (std::size_t i = 0; i < prod.rows(); ++i)
        for (std::size_t j = 0; j < prod.cols(); ++j) EXPECT_EQ(prod(i, j), 0);
}

TEST(EmbeddedGraph, SingleEdgeCases) {
    // single edge between two vertices: no cycles, one independent cut
    auto g = EmbeddedGraph::from_rotations({{0}, {1}});
    EXPECT_EQ(g.cycle_basis().vectors.rows(), 0u);
    IMat cuts = g.vertex_cuts();
    EXPECT_EQ(cuts(0, 0), 1);
    EXPECT_EQ(cuts(1, 0), -1);
    EXPECT_EQ(g.num_faces(), 1u);
    EXPECT_EQ(g.genus(), 0u);
}

TEST(EmbeddedGraph, FacialWalksPartitionAndLieInCycleSpace) {
    for (auto g : {triangle(), running_bouquet(), torus_bouquet2()}) {
        std::size_t total = 0;
        for (const auto& f : g.faces()) total += f.size();
        EXPECT_EQ(total, 2 * g.num_edges());
        IMat f = g.face_vectors();
        IMat cuts = g.vertex_cuts();
        IMat prod = f * cuts.transpose();
        for (std::size_t i = 0; i < prod.rows(); ++i)
            for (std::size_t j = 0; j < prod.cols(); ++j) EXPECT_EQ(prod(i, j), 0);
    }
}

TEST(EmbeddedGraph, PlanarCycleDualExample) {
    // planar n-cycle dualizes to an n-fold dipole
    auto g = triangle();
    auto d = g.dual();
    EXPECT_EQ(d.num_vertices(), 2u);
    // all three dual edges join the two vertices
    for (int e = 0; e < 3; ++e) EXPECT_NE(d.tail(e), d.head(e));
}

TEST(Intersection, TorusGeneratorsCrossOnce) {
    auto g = torus_bouquet2();
    EmbeddedGraph::Walk a{0}, b{2};
    long x = g.intersection_number(a, b);
    EXPECT_EQ(std::abs(x), 1);
    EXPECT_EQ(g.intersection_number(b, a), -x);
    EXPECT_EQ(g.intersection_number(a, a), 0);
}

TEST(Intersection, RunningBouquetMatchesHomologyClasses) {
    auto g = running_bouquet();
    // homology classes: e1,e2 -> (1,0); e3 -> (1,1); e4,e5 -> (0,1)
    std::vector<std::pair<long, long>> cls{{1, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 1}};
    long sign = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            EmbeddedGraph::Walk wi{2 * i}, wj{2 * j};
            long x = g.intersection_number(wi, wj);
            long expect = cls[i].first * cls[j].second - cls[i].second * cls[j].first;
            if (expect == 0) {
                EXPECT_EQ(x, 0) << "i=" << i << " j=" << j;
            } else {
                ASSERT_NE(x, 0) << "i=" << i << " j=" << j;
                long s = x / expect;
                EXPECT_EQ(std::abs(x), std::abs(expect));
                if (sign == 0) sign = s;
                EXPECT_EQ(s, sign) << "inconsistent global sign at i=" << i << " j=" << j;
            }
        }
    EXPECT_NE(sign, 0);
}

TEST(Intersection, SharedEdgeTrianglesOnTorus) {
    // the two triangle cycles of the dual graph share one edge and generate
    // H_1 of the torus, so they must intersect exactly once
    auto d = running_bouquet().dual();
    auto cb = d.cycle_basis();
    ASSERT_EQ(cb.walks.size(), 2u);
    long x = d.intersection_number(cb.walks[0], cb.walks[1]);
    EXPECT_EQ(std::abs(x), 1);
    EXPECT_EQ(d.intersection_number(cb.walks[1], cb.walks[0]), -x);
}

TEST(Intersection, PlanarAlwaysZero) {
    auto g = triangle();
    auto cb = g.cycle_basis();
    for (const auto& wa : cb.walks)
        for (const auto& wb : cb.walks) EXPECT_EQ(g.intersection_number(wa, wb), 0);
}

TEST(TreeCotree, GeneratorCountAndInclusion) {
    auto g = running_bouquet();
    auto tc = g.tree_cotree();
    EXPECT_EQ(tc.free_edges.size(), 2u);  // 2g on the torus
    auto cb = g.cycle_basis();
    IMat inc = g.inclusion_matrix(cb.vectors, tc);
    EXPECT_EQ(inc.rows(), 2u);
    EXPECT_EQ(inc.cols(), 5u);
    // kernel of the inclusion must contain the face boundaries and have rank 3
    IMat k = integer_kernel(inc);
    EXPECT_EQ(k.cols(), 3u);
    // e1 - e2 is null-homologous (both are gamma_1)
    EXPECT_TRUE(in_column_lattice(k, {Int(1), Int(-1), Int(0), Int(0), Int(0)}));

    auto tri = triangle();
    auto tct = tri.tree_cotree();
    EXPECT_TRUE(tct.free_edges.empty());
    IMat inct = tri.inclusion_matrix(tri.cycle_basis().vectors, tct);
    EXPECT_EQ(inct.rows(), 0u);
}

TEST(TwoIsomorphic, SelfAndBasicSeparation) {
    auto g = triangle();
    EXPECT_TRUE(two_isomorphic(g, g));
    // 3-cycle vs 3-edge dipole have different circuits
    auto dipole = EmbeddedGraph::from_rotations({{0, 2, 4}, {1, 3, 5}});
    EXPECT_FALSE(two_isomorphic(g, dipole));
}

TEST(TwoIsomorphic, TreesAndWhitneyPair) {
    // path with 3 edges vs star: same (empty) cycle space
    auto path = EmbeddedGraph::from_rotations({{0}, {1, 2}, {3, 4}, {5}});
    auto star = EmbeddedGraph::from_rotations({{0, 2, 4}, {1}, {3}, {5}});
    EXPECT_TRUE(two_isomorphic(path, star));

    // Whitney twist on a 2-separation: one 6-edge circuit plus two pendants,
    // twisted copy is 2-isomorphic but not graph-isomorphic
    // G1: cycle u-a1-a2-v-b2-b1-u, pendants at a1 and b2
    // vertices: 0=u 1=a1 2=a2 3=v 4=b1 5=b2 6=p 7=q
    // edges: e0 u-a1 {0,1}, e1 a1-a2 {2,3}, e2 a2-v {4,5}, e3 v-b2 {6,7},
    //        e4 b2-b1 {8,9}, e5 b1-u {10,11}, e6 a1-p {12,13}, e7 b2-q {14,15}
    auto g1 = EmbeddedGraph::from_rotations({
        {0, 11},       // u
        {1, 2, 12},    // a1
        {3, 4},        // a2
        {5, 6},        // v
        {9, 10},       // b1
        {7, 8, 14},    // b2
        {13},          // p
        {15},          // q
    });
    // G2: twisted side B: cycle u-a1-a2-v-b1-b2-u, pendants at a1 and b2
    auto g2 = EmbeddedGraph::from_rotations({
        {0, 11},       // u  (e5 now u-b2)
        {1, 2, 12},    // a1
        {3, 4},        // a2
        {5, 6},        // v  (e3 now v-b1)
        {7, 8},        // b1
        {9, 10, 14},   // b2
        {13},          // p
        {15},          // q
    });
    EXPECT_TRUE(two_isomorphic(g1, g2));
    EXPECT_THROW(two_isomorphic(g1, g2, 4), TooLargeError);
}

TEST(CanonicalForm, RelabellingInvariance) {
    // same triangle with vertices listed in another order / rotated lists
    auto g = triangle();
    auto h = EmbeddedGraph::from_rotations({{4, 3}, {5, 0}, {1, 2}});
    EXPECT_TRUE(g.isomorphic_to(h));
    auto loop = EmbeddedGraph::from_rotations({{0, 1}});
    EXPECT_FALSE(g.isomorphic_to(loop));
}
