#include <gtest/gtest.h>

#include <cmath>

#include "ccm/analysis.hpp"
#include "ccm/errors.hpp"
#include "ccm/exploration.hpp"
#include "ccm/oracle.hpp"
#include "support/oracles.hpp"

namespace ccm {
namespace {

// Brute force over every corruption subset and every compass assignment of
// the ball, using only the raw bond rule. Returns θ_n(p) exactly.
Rational brute_theta(const LatticeSpec& spec, int n, const Rational& p) {
  const auto dist = testing::bfs_ball(spec, spec.origin(), n);
  std::vector<VertexId> vs;
  for (const auto& [v, d] : dist) vs.push_back(v);
  const std::size_t m = vs.size();
  const int d = spec.degree();
  std::uint64_t compass_total = 1;
  for (std::size_t i = 0; i < m; ++i) compass_total *= static_cast<std::uint64_t>(d);
  Rational theta = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    std::uint64_t hits = 0;
    for (std::uint64_t code = 0; code < compass_total; ++code) {
      std::vector<testing::RawVertex> raw;
      std::uint64_t c = code;
      for (std::size_t i = 0; i < m; ++i) {
        raw.push_back({vs[i], ((mask >> i) & 1ULL) != 0, static_cast<int>(c % d)});
        c /= d;
      }
      hits += testing::raw_one_arm(spec, raw, n) ? 1 : 0;
    }
    const int k = __builtin_popcountll(mask);
    theta += power(p, k) * power(1 - p, static_cast<unsigned>(m) - k) * Rational(BigInt(hits)) /
             Rational(BigInt(compass_total));
  }
  return theta;
}

const std::vector<Rational> kProbes = {Rational(0), Rational(1, 4), Rational(1, 2),
                                       Rational(3, 4), Rational(1)};

TEST(ExactTheta, RadiusOneOnThePathIsCertain) {
  const auto t = exact_theta(LatticeSpec::hypercubic(1), 1);
  EXPECT_EQ(t.poly, Polynomial({Rational(1)}));
}

TEST(ExactTheta, PathRadiusTwoMatchesBruteForce) {
  const auto z1 = LatticeSpec::hypercubic(1);
  const auto t = exact_theta(z1, 2);
  EXPECT_EQ(t(Rational(0)), Rational(13, 16));
  for (const auto& p : kProbes) EXPECT_EQ(t(p), brute_theta(z1, 2, p)) << to_string(p);
  // Frozen from the brute-force oracle above.
  const Polynomial expected({Rational(13, 16), Rational(3, 4), Rational(-9, 8), Rational(3, 4),
                             Rational(-3, 16)});
  EXPECT_EQ(t.poly, expected);
}

TEST(ExactTheta, SmallBallsMatchBruteForce) {
  // z1 n=3 and z2 n=1 keep the brute force under a second.
  for (const auto& [spec, n] : {std::pair{LatticeSpec::hypercubic(1), 3},
                                std::pair{LatticeSpec::hypercubic(2), 1}}) {
    const auto t = exact_theta(spec, n);
    for (const auto& p : {Rational(0), Rational(1, 3), Rational(1)}) {
      EXPECT_EQ(t(p), brute_theta(spec, n, p)) << spec.tag() << " n=" << n;
    }
  }
}

TEST(ExactTheta, MonotoneAndCertainAtOne) {
  for (const auto& [spec, n] : {std::pair{LatticeSpec::hypercubic(1), 4},
                                std::pair{LatticeSpec::hypercubic(2), 1},
                                std::pair{LatticeSpec::triangular(), 1}}) {
    const auto t = exact_theta(spec, n);
    EXPECT_EQ(t(Rational(1)), Rational(1));
    Rational prev = t(Rational(0));
    EXPECT_GE(prev, 0);
    for (int i = 1; i <= 100; ++i) {
      const Rational now = t(Rational(i, 100));
      EXPECT_GE(now, prev);
      prev = now;
    }
  }
}

TEST(ExactTheta, SubRadiiAgreeWithDedicatedModels) {
  const auto z1 = LatticeSpec::hypercubic(1);
  const ExactModel model(z1, 4);
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(model.theta(k).poly, exact_theta(z1, k).poly) << k;
}

TEST(ExactTheta, MatchesMonteCarlo) {
  for (const auto& [spec, n, p] : {std::tuple{LatticeSpec::triangular(), 1, 0.1},
                                   std::tuple{LatticeSpec::hypercubic(1), 4, 0.3},
                                   std::tuple{LatticeSpec::hypercubic(2), 1, 0.0}}) {
    const double exact = exact_theta(spec, n)(p);
    const auto mc = mc_theta(spec, n, p, 200000, 77);
    const double se = std::sqrt(exact * (1 - exact) / 200000.0);
    EXPECT_LE(std::abs(mc.mean - exact), 4 * se + 1e-12) << spec.tag();
  }
}

TEST(ExactTheta, MatchesMonteCarloOnAFineGrid) {
  const auto spec = LatticeSpec::hypercubic(1);
  const auto exact = exact_theta(spec, 3);
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    const double th = exact(p);
    const auto mc = mc_theta(spec, 3, p, 100000, 300 + i);
    EXPECT_LE(std::abs(mc.mean - th), 4 * std::sqrt(th * (1 - th) / 1e5) + 1e-12) << p;
  }
}

TEST(Revealment, PathExamples) {
  const auto z1 = LatticeSpec::hypercubic(1);
  const ExactModel model(z1, 2);
  const auto& region = model.region();
  const auto idx = [&](int x) { return region.index_of(VertexId{{x}}); };
  // T_1 starts from ±1 and so reveals the whole ball.
  for (int x = -2; x <= 2; ++x) EXPECT_EQ(model.revealment(1, idx(x), Rational(1, 3)), Rational(1));
  // T_2 reaches the origin iff an outer edge is open; each is closed with
  // probability ((1 - p) / 2)^2.
  for (const auto& p : kProbes) {
    const Rational closed = power((1 - p) / 2, 2);
    EXPECT_EQ(model.revealment(2, idx(0), p), 1 - closed * closed) << to_string(p);
    EXPECT_EQ(model.revealment(2, idx(1), p), Rational(1));
    EXPECT_EQ(model.revealment(2, idx(2), p), Rational(1));
  }
  EXPECT_EQ(exact_revealment(z1, 2, 2, VertexId{{0}}, Rational(0)), Rational(15, 16));
}

TEST(Revealment, MatchesMonteCarlo) {
  const auto spec = LatticeSpec::hypercubic(1);
  const int n = 4;
  const double p = 0.2;
  const ExactModel model(spec, n);
  const auto region = ball(spec, n);
  const int samples = 20000;
  std::vector<int> counts(region->size(), 0);
  for (int s = 0; s < samples; ++s) {
    const auto run = run_decision_tree(sample(region, p, 900 + s), n, 3);
    for (auto i : run.log.order()) ++counts[i];
  }
  for (std::size_t i = 0; i < region->size(); ++i) {
    const double exact = to_double(model.revealment(3, static_cast<std::int32_t>(i), from_double(p)));
    const double mean = static_cast<double>(counts[i]) / samples;
    EXPECT_LE(std::abs(mean - exact), 4 * std::sqrt(exact * (1 - exact) / samples) + 1e-12);
  }
}

// Influence by brute force: resample X_v given the rest.
Rational brute_influence(const LatticeSpec& spec, int n, const VertexId& target, const Rational& p) {
  const auto dist = testing::bfs_ball(spec, spec.origin(), n);
  std::vector<VertexId> vs;
  for (const auto& [v, d] : dist) {
    if (v != target) vs.push_back(v);
  }
  const int d = spec.degree();
  const std::size_t m = vs.size();
  std::uint64_t atoms = 1;
  for (std::size_t i = 0; i < m; ++i) atoms *= static_cast<std::uint64_t>(d + 1);
  Rational total = 0;
  for (std::uint64_t code = 0; code < atoms; ++code) {
    std::vector<testing::RawVertex> raw;
    Rational weight = 1;
    std::uint64_t c = code;
    for (std::size_t i = 0; i < m; ++i) {
      const int s = static_cast<int>(c % (d + 1));
      c /= d + 1;
      raw.push_back({vs[i], s == d, s == d ? 0 : s});
      weight *= s == d ? p : (1 - p) / d;
    }
    if (weight == 0) continue;
    raw.push_back({target, true, 0});
    Rational q = p * (testing::raw_one_arm(spec, raw, n) ? 1 : 0);
    for (int a = 0; a < d; ++a) {
      raw.back() = {target, false, a};
      q += (1 - p) / d * (testing::raw_one_arm(spec, raw, n) ? 1 : 0);
    }
    total += weight * 2 * q * (1 - q);
  }
  return total;
}

TEST(Influence, MatchesBruteForce) {
  const auto z1 = LatticeSpec::hypercubic(1);
  const ExactModel model(z1, 3);
  for (const auto& p : {Rational(0), Rational(1, 4), Rational(2, 3)}) {
    for (int x = -3; x <= 3; ++x) {
      EXPECT_EQ(model.influence(model.region().index_of(VertexId{{x}}), p),
                brute_influence(z1, 3, VertexId{{x}}, p))
          << x << " " << to_string(p);
    }
  }
  const auto z2 = LatticeSpec::hypercubic(2);
  EXPECT_EQ(exact_influence(z2, 1, VertexId{{1, 0}}, Rational(1, 5)),
            brute_influence(z2, 1, VertexId{{1, 0}}, Rational(1, 5)));
}

TEST(Influence, VanishesWhenTheEventIsCertain) {
  const ExactModel model(LatticeSpec::hypercubic(1), 1);
  for (std::int32_t v = 0; v < 3; ++v) {
    EXPECT_EQ(model.influence(v, Rational(1, 2)), Rational(0));
    EXPECT_EQ(model.pivotal(v, Rational(1, 2)), Rational(0));
  }
  // Nothing is random at p = 1.
  const ExactModel z2(LatticeSpec::hypercubic(2), 1);
  for (std::int32_t v = 0; v < 5; ++v) EXPECT_EQ(z2.influence(v, Rational(1)), Rational(0));
}

TEST(Pivotal, RussoIdentityIsExact) {
  for (const auto& [spec, n] : {std::pair{LatticeSpec::hypercubic(1), 2},
                                std::pair{LatticeSpec::hypercubic(1), 3},
                                std::pair{LatticeSpec::hypercubic(2), 1},
                                std::pair{LatticeSpec::triangular(), 1}}) {
    const ExactModel model(spec, n);
    const auto dtheta = model.theta().poly.derivative();
    for (const auto& p : kProbes) {
      const auto r = russo_audit(model, p);
      EXPECT_TRUE(r.holds);
      EXPECT_EQ(r.lhs, dtheta(p));
      EXPECT_EQ(r.slack, Rational(0));
      Rational sum = 0;
      for (std::size_t v = 0; v < model.vertex_count(); ++v) {
        const auto pv = model.pivotal(static_cast<std::int32_t>(v), p);
        EXPECT_GE(pv, 0);
        sum += pv;
      }
      EXPECT_EQ(sum, dtheta(p));
    }
  }
}

TEST(Audits, AllHoldOnSmallInstances) {
  for (const auto& [spec, n] : {std::pair{LatticeSpec::hypercubic(1), 2},
                                std::pair{LatticeSpec::hypercubic(1), 3},
                                std::pair{LatticeSpec::hypercubic(2), 1}}) {
    const ExactModel model(spec, n);
    const auto reports = audit_all(model, {Rational(1, 4), Rational(1, 2), Rational(3, 4)});
    EXPECT_FALSE(reports.empty());
    for (const auto& r : reports) {
      EXPECT_TRUE(r.holds) << r.name << " " << spec.tag() << " n=" << n;
      EXPECT_EQ(r.slack, r.rhs - r.lhs);
      EXPECT_EQ(r.holds, r.kind == AuditKind::identity ? r.lhs == r.rhs : r.lhs <= r.rhs);
    }
  }
}

TEST(Audits, ReportShapes) {
  const auto z1 = LatticeSpec::hypercubic(1);
  const auto osss = osss_audit(z1, 3, 2, Rational(1, 2));
  EXPECT_EQ(osss.kind, AuditKind::inequality);
  EXPECT_EQ(osss.context.lattice, "z1");
  EXPECT_EQ(osss.context.k, 2);
  const ExactModel model(z1, 3);
  const Rational p(1, 2);
  const auto th = model.theta()(p);
  EXPECT_EQ(osss.lhs, th * (1 - th));
  const auto rev = revealment_sum_audit(z1, 3, VertexId{{1}}, p);
  EXPECT_EQ(rev.rhs, 2 * 2 * model.partial_sum(p));
  EXPECT_EQ(rev.context.v, VertexId{{1}});
  const auto diff = diff_ineq_audit(model, p);
  EXPECT_EQ(diff.lhs, Rational(3) / (4 * 2 * model.partial_sum(p)) * th * (1 - th));
  EXPECT_EQ(model.partial_sum(p), model.theta(1)(p) + model.theta(2)(p) + model.theta(3)(p));
  const auto ip = influence_pivotal_audit(model, p);
  EXPECT_EQ(ip.rhs, model.theta().poly.derivative()(p));
}

TEST(Oracle, Errors) {
  EXPECT_THROW(exact_theta(LatticeSpec::hypercubic(2), 2), EnumerationTooLarge);
  EXPECT_NO_THROW(check_budget(LatticeSpec::triangular(), 1, {}));
  EXPECT_THROW(check_budget(LatticeSpec::hypercubic(1), -1, {}), ParameterError);
  const ExactModel model(LatticeSpec::hypercubic(1), 2);
  EXPECT_THROW(model.theta(3), OutOfRange);
  EXPECT_THROW(model.revealment(0, 0, Rational(1, 2)), ParameterError);
  EXPECT_THROW(model.influence(5, Rational(1, 2)), OutOfRange);
  EXPECT_THROW(model.influence(0, Rational(3, 2)), ParameterError);
  const ExactModel zero(LatticeSpec::hypercubic(1), 0);
  EXPECT_EQ(zero.theta().poly, Polynomial({Rational(1)}));
  EXPECT_THROW(diff_ineq_audit(zero, Rational(1, 2)), ParameterError);
  EXPECT_THROW(exact_influence(LatticeSpec::hypercubic(1), 2, VertexId{{3}}, Rational(1, 2)),
               OutOfRange);
}

}  // namespace
}  // namespace ccm
