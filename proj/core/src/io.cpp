#include "ccm/io.hpp"

#include <cmath>
#include <cstdio>

namespace ccm::io {

namespace {

void write(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
  switch (j.type()) {
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        write(it.value(), out, indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ", ";
        first = false;
        write(e, out, indent, depth + 1);
      }
      out += "]";
      return;
    }
    default:
      out += j.dump();
  }
}

json context_json(const AuditContext& c) {
  json j = {{"lattice", c.lattice}, {"n", c.n}, {"p", to_string(c.p)}};
  j["k"] = c.k ? json(*c.k) : json(nullptr);
  j["v"] = c.v ? vertex_json(*c.v) : json(nullptr);
  return j;
}

}  // namespace

json vertex_json(const VertexId& v) { return json(v.coords); }

json configuration_json(const Configuration& config) {
  const Region& region = config.region();
  json vertices = json::array();
  for (std::size_t i = 0; i < region.size(); ++i) {
    const auto idx = static_cast<std::int32_t>(i);
    const CompassVariable x = config.variable(idx);
    vertices.push_back({{"coords", vertex_json(region.vertex(idx))},
                        {"u", x.u},
                        {"a", x.a},
                        {"corrupted", config.corrupted(idx)}});
  }
  json edges = json::array();
  for (const auto& e : open_edges(config)) edges.push_back({vertex_json(e.a), vertex_json(e.b)});
  return {{"family", region.spec().family_name()},
          {"D", region.spec().dim()},
          {"n", region.radius()},
          {"p", config.p()},
          {"seed", config.seed()},
          {"vertices", std::move(vertices)},
          {"open_edges", std::move(edges)}};
}

json trace_json(const Configuration& config, int n, int k, const ArmResult& run) {
  json order = json::array();
  for (auto i : run.log.order()) order.push_back(vertex_json(config.region().vertex(i)));
  json cluster = json::array();
  for (auto i : run.cluster) cluster.push_back(vertex_json(config.region().vertex(i)));
  return {{"n", n},
          {"k", k},
          {"connected", run.connected},
          {"revealed", run.log.size()},
          {"reveal_order", std::move(order)},
          {"cluster", std::move(cluster)},
          {"one_arm_direct", one_arm_direct(config, n)}};
}

json theta_json(const ThetaEstimate& e) {
  return {{"p", e.p},         {"n", e.n},       {"replicas", e.replicas},
          {"hits", e.hits},   {"mean", e.mean}, {"stderr", e.std_error},
          {"seed", e.seed}};
}

json theta_polynomial_json(const ThetaPolynomial& theta, const std::vector<AuditReport>& audits) {
  json coeffs = json::array();
  for (std::size_t j = 0; j <= static_cast<std::size_t>(std::max(theta.poly.degree(), 0)); ++j) {
    coeffs.push_back(to_string(theta.poly.coefficient(j)));
  }
  json reports = json::array();
  for (const auto& r : audits) reports.push_back(audit_json(r));
  return {{"spec", {{"lattice", theta.spec.tag()},
                    {"family", theta.spec.family_name()},
                    {"D", theta.spec.dim()},
                    {"degree", theta.spec.degree()}}},
          {"n", theta.n},
          {"theta_coefficients", std::move(coeffs)},
          {"audits", std::move(reports)}};
}

json audit_json(const AuditReport& r) {
  return {{"name", r.name},
          {"kind", r.kind == AuditKind::identity ? "identity" : "inequality"},
          {"lhs", to_string(r.lhs)},
          {"rhs", to_string(r.rhs)},
          {"slack", to_string(r.slack)},
          {"lhs_approx", to_double(r.lhs)},
          {"rhs_approx", to_double(r.rhs)},
          {"holds", r.holds},
          {"context", context_json(r.context)}};
}

json decay_json(const DecayFit& f) {
  return {{"p", f.p},         {"n_lo", f.n_lo},           {"n_hi", f.n_hi},
          {"used_n", f.used_n}, {"rate", f.rate},         {"slope", f.slope},
          {"intercept", f.intercept}, {"r_squared", f.r_squared}};
}

json pc_json(const PcEstimate& e) {
  return {{"method", e.method}, {"value", e.value},   {"lo", e.lo},
          {"hi", e.hi},         {"n", e.n},           {"n_list", e.n_list},
          {"crossings", e.crossings}};
}

json mean_field_json(const MeanFieldReport& r) {
  return {{"pc", r.pc},       {"window_lo", r.window_lo}, {"window_hi", r.window_hi},
          {"n", r.n},         {"p", r.ps},                {"theta", r.thetas},
          {"c_fit", r.c_fit}, {"violations", r.violations}};
}

json sn_json(const SnSeries& s) {
  return {{"p", s.p}, {"theta", s.theta}, {"S", s.sums}, {"exponents", s.exponents}, {"T", s.tn}};
}

std::string dump(const json& j) {
  std::string out;
  write(j, out, 2, 0);
  out += "\n";
  return out;
}

}  // namespace ccm::io
