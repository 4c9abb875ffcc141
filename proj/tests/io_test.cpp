#include <gtest/gtest.h>

#include "ccm/errors.hpp"
#include "ccm/io.hpp"

namespace ccm {
namespace {

using io::json;

TEST(Io, ConfigurationRecord) {
  const auto c = sample(ball(LatticeSpec::hypercubic(2), 2), 0.25, 7);
  const auto j = io::configuration_json(c);
  EXPECT_EQ(j["family"], "hypercubic");
  EXPECT_EQ(j["D"], 2);
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["seed"], 7);
  ASSERT_EQ(j["vertices"].size(), 13u);
  EXPECT_EQ(j["vertices"][0]["coords"], json::array({0, 0}));
  for (const auto& v : j["vertices"]) {
    EXPECT_EQ(v["corrupted"].get<bool>(), v["u"].get<double>() < 0.25);
  }
  EXPECT_EQ(j["open_edges"].size(), open_edges(c).size());
}

TEST(Io, DumpKeepsFullPrecision) {
  const json j = {{"x", 0.1}, {"inf", std::numeric_limits<double>::infinity()}, {"v", {1, 2}}};
  const auto text = io::dump(j);
  EXPECT_NE(text.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(text.find("\"inf\": null"), std::string::npos);
  const auto back = json::parse(text);
  EXPECT_EQ(back["x"].get<double>(), 0.1);
  EXPECT_TRUE(back["inf"].is_null());
}

TEST(Io, Theta) {
  const auto j = io::theta_json(make_estimate(0.5, 4, 10, 3, 1));
  EXPECT_EQ(j["hits"], 3);
  EXPECT_DOUBLE_EQ(j["mean"].get<double>(), 0.3);
  EXPECT_TRUE(j.contains("stderr"));
}

TEST(Io, PolynomialAndAudits) {
  const ExactModel model(LatticeSpec::hypercubic(1), 2);
  const auto audits = audit_all(model, {Rational(1, 2)});
  const auto j = io::theta_polynomial_json(model.theta(), audits);
  EXPECT_EQ(j["spec"]["lattice"], "z1");
  EXPECT_EQ(j["spec"]["degree"], 2);
  EXPECT_EQ(j["theta_coefficients"],
            json::array({"13/16", "3/4", "-9/8", "3/4", "-3/16"}));
  ASSERT_EQ(j["audits"].size(), audits.size());
  const auto& a = j["audits"][0];
  for (const char* key : {"name", "kind", "lhs", "rhs", "slack", "holds", "context"}) {
    EXPECT_TRUE(a.contains(key)) << key;
  }
  EXPECT_EQ(a["context"]["p"], "1/2");
  EXPECT_EQ(parse_rational(a["slack"].get<std::string>()),
            parse_rational(a["rhs"].get<std::string>()) - parse_rational(a["lhs"].get<std::string>()));
}

TEST(Io, Trace) {
  const auto c = sample(ball(LatticeSpec::triangular(), 3), 0.2, 1);
  const auto run = run_decision_tree(c, 3, 2);
  const auto j = io::trace_json(c, 3, 2, run);
  EXPECT_EQ(j["connected"], run.connected);
  EXPECT_EQ(j["reveal_order"].size(), run.log.size());
  EXPECT_EQ(j["one_arm_direct"], run.connected);
}

}  // namespace
}  // namespace ccm
