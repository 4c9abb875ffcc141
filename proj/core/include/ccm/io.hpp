#pragma once

// JSON views of the library types for the command-line interface.

#include <nlohmann/json.hpp>

#include "ccm/analysis.hpp"
#include "ccm/exploration.hpp"
#include "ccm/model.hpp"
#include "ccm/oracle.hpp"

namespace ccm::io {

using nlohmann::json;

// Finite doubles printed with 17 significant digits survive a round trip,
// so plain JSON numbers are enough here.
json vertex_json(const VertexId& v);

// {family, D, n, p, seed, vertices: [{coords, u, a, corrupted}],
//  open_edges: [[coords, coords]]}
json configuration_json(const Configuration& config);

json trace_json(const Configuration& config, int n, int k, const ArmResult& run);

json theta_json(const ThetaEstimate& e);

// {spec, n, theta_coefficients: ["num/den", ...], audits: [...]}
json theta_polynomial_json(const ThetaPolynomial& theta, const std::vector<AuditReport>& audits);

json audit_json(const AuditReport& report);

json decay_json(const DecayFit& fit);
json pc_json(const PcEstimate& e);
json mean_field_json(const MeanFieldReport& r);
json sn_json(const SnSeries& s);

// Serializes with every float at 17 significant digits.
std::string dump(const json& j);

}  // namespace ccm::io
