#include <gtest/gtest.h>

#include <random>

#include "ccm/errors.hpp"
#include "ccm/lattice.hpp"
#include "support/oracles.hpp"

namespace ccm {
namespace {

TEST(Lattice, HypercubicOneDimensionalNeighbours) {
  const auto z1 = LatticeSpec::hypercubic(1);
  EXPECT_EQ(z1.degree(), 2);
  const auto nb = neighbors(z1, VertexId{{0}});
  ASSERT_EQ(nb.size(), 2u);
  EXPECT_EQ(nb[0], VertexId{{-1}});
  EXPECT_EQ(nb[1], VertexId{{1}});
}

TEST(Lattice, HypercubicTwoDimensionalNeighbours) {
  const auto nb = neighbors(LatticeSpec::hypercubic(2), VertexId{{0, 0}});
  const std::vector<VertexId> expected = {
      VertexId{{-1, 0}}, VertexId{{1, 0}}, VertexId{{0, -1}}, VertexId{{0, 1}}};
  EXPECT_EQ(nb, expected);
}

TEST(Lattice, TriangularNeighboursUseAxialOffsets) {
  const auto tri = LatticeSpec::triangular();
  EXPECT_EQ(tri.degree(), 6);
  const auto nb = neighbors(tri, VertexId{{0, 0}});
  const std::vector<VertexId> expected = {VertexId{{1, 0}},  VertexId{{-1, 0}},
                                          VertexId{{0, 1}},  VertexId{{0, -1}},
                                          VertexId{{1, -1}}, VertexId{{-1, 1}}};
  EXPECT_EQ(nb, expected);
}

TEST(Lattice, GeneratorsComeInOppositePairs) {
  for (const auto& spec : {LatticeSpec::hypercubic(1), LatticeSpec::hypercubic(3),
                           LatticeSpec::triangular()}) {
    const auto& g = spec.generators();
    for (int dir = 0; dir < spec.degree(); ++dir) {
      const auto sum = g[dir] + g[LatticeSpec::opposite(dir)];
      EXPECT_EQ(sum, spec.origin()) << spec.tag() << " dir " << dir;
    }
  }
}

TEST(Lattice, ArityMismatchIsInvalidVertex) {
  const auto z2 = LatticeSpec::hypercubic(2);
  EXPECT_THROW(neighbors(z2, VertexId{{0}}), InvalidVertex);
  EXPECT_THROW(distance(z2, VertexId{{0, 0}}, VertexId{{1, 2, 3}}), InvalidVertex);
  EXPECT_THROW(distance(LatticeSpec::triangular(), VertexId{{0}}, VertexId{{0, 0}}), InvalidVertex);
}

TEST(Lattice, Tags) {
  EXPECT_EQ(LatticeSpec::from_tag("z1"), LatticeSpec::hypercubic(1));
  EXPECT_EQ(LatticeSpec::from_tag("z3").degree(), 6);
  EXPECT_EQ(LatticeSpec::from_tag("tri"), LatticeSpec::triangular());
  EXPECT_THROW(LatticeSpec::from_tag("hex"), ParameterError);
  EXPECT_THROW(LatticeSpec::from_tag("z"), ParameterError);
  EXPECT_THROW(LatticeSpec::from_tag("z0"), ParameterError);
}

TEST(Lattice, DistanceExamples) {
  EXPECT_EQ(distance(LatticeSpec::hypercubic(2), VertexId{{0, 0}}, VertexId{{3, -4}}), 7);
  const auto tri = LatticeSpec::triangular();
  EXPECT_EQ(distance(tri, VertexId{{0, 0}}, VertexId{{2, -1}}), 2);
  EXPECT_EQ(testing::bfs_distance(tri, VertexId{{0, 0}}, VertexId{{2, -1}}), 2);
  for (const auto& spec : {LatticeSpec::hypercubic(3), tri}) {
    const VertexId v{std::vector<int>(spec.dim(), 5)};
    EXPECT_EQ(distance(spec, v, v), 0);
  }
}

TEST(Lattice, DistanceMatchesBfsOnRandomPairs) {
  std::mt19937_64 gen(11);
  for (const auto& spec : {LatticeSpec::hypercubic(2), LatticeSpec::triangular()}) {
    const auto from_origin = testing::bfs_ball(spec, spec.origin(), 20);
    std::vector<VertexId> pool;
    for (const auto& [v, d] : from_origin) pool.push_back(v);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto& a = pool[pick(gen)];
      const auto& b = pool[pick(gen)];
      // Translate so a sits at the origin and read the BFS table.
      VertexId diff = b;
      for (std::size_t i = 0; i < diff.coords.size(); ++i) diff.coords[i] -= a.coords[i];
      const int d = distance(spec, a, b);
      if (d <= 20) {
        EXPECT_EQ(d, from_origin.at(diff)) << spec.tag() << " " << to_string(a) << " " << to_string(b);
      } else {
        EXPECT_FALSE(from_origin.count(diff));
      }
      const auto& c = pool[pick(gen)];
      EXPECT_LE(distance(spec, a, b), distance(spec, a, c) + distance(spec, c, b));
    }
  }
}

TEST(Lattice, NeighbourRelationIsSymmetricAndTranslationInvariant) {
  std::mt19937 gen(3);
  std::uniform_int_distribution<int> coord(-50, 50);
  for (const auto& spec : {LatticeSpec::hypercubic(1), LatticeSpec::hypercubic(2),
                           LatticeSpec::hypercubic(3), LatticeSpec::triangular()}) {
    for (int trial = 0; trial < 200; ++trial) {
      VertexId v{std::vector<int>(spec.dim())};
      VertexId t{std::vector<int>(spec.dim())};
      for (auto& x : v.coords) x = coord(gen);
      for (auto& x : t.coords) x = coord(gen);
      const auto nb = neighbors(spec, v);
      ASSERT_EQ(static_cast<int>(nb.size()), spec.degree());
      for (const auto& w : nb) {
        const auto back = neighbors(spec, w);
        EXPECT_NE(std::find(back.begin(), back.end(), v), back.end());
        EXPECT_EQ(distance(spec, v, w), 1);
      }
      const auto shifted = neighbors(spec, v + t);
      for (std::size_t i = 0; i < nb.size(); ++i) EXPECT_EQ(shifted[i], nb[i] + t);
    }
  }
}

TEST(Lattice, IncidentEdgesAreCanonical) {
  const auto edges = incident_edges(LatticeSpec::hypercubic(1), VertexId{{0}});
  ASSERT_EQ(edges.size(), 2u);
  EXPECT_EQ(edges[0].a, VertexId{{-1}});
  EXPECT_EQ(edges[0].b, VertexId{{0}});
  EXPECT_EQ(EdgeId::make(VertexId{{1}}, VertexId{{0}}), EdgeId::make(VertexId{{0}}, VertexId{{1}}));
}

TEST(Region, PathBallSizes) {
  const auto z1 = LatticeSpec::hypercubic(1);
  for (int n = 0; n <= 10; ++n) {
    const auto region = ball(z1, n);
    EXPECT_EQ(region->size(), static_cast<std::size_t>(2 * n + 1));
    if (n >= 1) EXPECT_EQ(sphere(*region, n).size(), 2u);
  }
}

TEST(Region, SquareBallMatchesBfs) {
  const auto z2 = LatticeSpec::hypercubic(2);
  const auto region = ball(z2, 5);
  const auto reference = testing::bfs_ball(z2, z2.origin(), 5);
  EXPECT_EQ(region->size(), reference.size());
  std::size_t outer = 0;
  for (const auto& [v, d] : reference) outer += d == 5 ? 1 : 0;
  EXPECT_EQ(sphere(*region, 5).size(), outer);
  EXPECT_EQ(region->size(), 61u);
  EXPECT_EQ(outer, 20u);
}

TEST(Region, TriangularSpheresHaveSixNVertices) {
  const auto tri = LatticeSpec::triangular();
  const auto region = ball(tri, 3);
  const auto reference = testing::bfs_ball(tri, tri.origin(), 3);
  for (int n = 1; n <= 3; ++n) {
    std::size_t expected = 0;
    for (const auto& [v, d] : reference) expected += d == n ? 1 : 0;
    EXPECT_EQ(sphere(*region, n).size(), expected);
    EXPECT_EQ(expected, static_cast<std::size_t>(6 * n));
  }
}

TEST(Region, OrderingIsByDistanceThenCoordinates) {
  for (const auto& spec : {LatticeSpec::hypercubic(2), LatticeSpec::triangular()}) {
    const auto region = ball(spec, 6);
    const auto vs = region->vertices();
    EXPECT_EQ(vs.front(), spec.origin());
    for (std::size_t i = 1; i < vs.size(); ++i) {
      const int da = distance(spec, spec.origin(), vs[i - 1]);
      const int db = distance(spec, spec.origin(), vs[i]);
      EXPECT_TRUE(da < db || (da == db && vs[i - 1] < vs[i]));
      EXPECT_EQ(region->distance_of(static_cast<std::int32_t>(i)), db);
    }
  }
}

TEST(Region, SmallerBallIsAPrefix) {
  const auto tri = LatticeSpec::triangular();
  const auto small = ball(tri, 3);
  const auto large = ball(tri, 7);
  ASSERT_EQ(large->ball_size(3), small->size());
  for (std::size_t i = 0; i < small->size(); ++i) {
    EXPECT_EQ(small->vertices()[i], large->vertices()[i]);
  }
}

TEST(Region, SphereIsBallDifference) {
  const auto z3 = LatticeSpec::hypercubic(3);
  const auto region = ball(z3, 4);
  EXPECT_EQ(sphere(*region, 0), std::vector<VertexId>{z3.origin()});
  for (int k = 1; k <= 4; ++k) {
    EXPECT_EQ(sphere(*region, k).size(), region->ball_size(k) - region->ball_size(k - 1));
    for (const auto& v : sphere(*region, k)) EXPECT_EQ(distance(z3, z3.origin(), v), k);
  }
}

TEST(Region, NeighbourTableAgreesWithCoordinates) {
  const auto tri = LatticeSpec::triangular();
  const auto region = ball(tri, 4);
  for (std::size_t i = 0; i < region->size(); ++i) {
    const auto idx = static_cast<std::int32_t>(i);
    const auto nb = neighbors(tri, region->vertex(idx));
    for (int dir = 0; dir < tri.degree(); ++dir) {
      const auto w = region->neighbor(idx, dir);
      if (w == Region::kOutside) {
        EXPECT_FALSE(region->contains(nb[dir]));
      } else {
        EXPECT_EQ(region->vertex(w), nb[dir]);
      }
    }
  }
}

TEST(Region, Errors) {
  const auto z2 = LatticeSpec::hypercubic(2);
  EXPECT_THROW(ball(z2, -1), ParameterError);
  const auto region = ball(z2, 2);
  EXPECT_THROW(sphere(*region, 3), OutOfRange);
  EXPECT_THROW(sphere(*region, -1), OutOfRange);
  EXPECT_THROW(region->index_of(VertexId{{3, 0}}), OutOfRange);
  EXPECT_THROW(region->index_of(VertexId{{0}}), InvalidVertex);
}

}  // namespace
}  // namespace ccm
