#pragma once

// The corrupted compass model on a finite ball: per-vertex variables
// X_v = (U_v, A_v), the corrupted set K = {v : U_v < p}, and the bond map.

#include <cstdint>
#include <optional>
#include <vector>

#include "ccm/lattice.hpp"

namespace ccm {

struct CompassVariable {
  double u = 0.0;  // U_v, uniform on [0, 1]
  int a = 0;       // A_v as an index into the generator order of the lattice

  bool operator==(const CompassVariable&) const = default;
};

enum class EdgeState : std::uint8_t { closed, open, outside };

// A region, a parameter p and one realisation of all X_v in the region.
//
// A sampled configuration is lazy: X_v is recomputed from (seed, index) on
// every access and nothing is stored per vertex. An explicit configuration
// owns its variables. Both are immutable.
class Configuration {
 public:
  // Lazy configuration backed by the counter-based generator.
  Configuration(RegionPtr region, double p, std::uint64_t seed);
  // Explicit variables, one per region vertex in region order.
  Configuration(RegionPtr region, double p, std::vector<CompassVariable> x,
                std::uint64_t seed = 0);

  const Region& region() const { return *region_; }
  const RegionPtr& region_ptr() const { return region_; }
  double p() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  bool is_lazy() const { return x_.empty(); }

  CompassVariable variable(std::int32_t index) const {
    return x_.empty() ? derive(index) : x_[index];
  }
  CompassVariable variable(const VertexId& v) const;

  bool corrupted(std::int32_t index) const { return variable(index).u < p_; }

  // State of the edge from `index` along generator `dir`; `outside` when the
  // other endpoint is not in the region.
  EdgeState edge_state(std::int32_t index, int dir) const;
  // Throws OutOfRange when an endpoint is outside the region and
  // InvalidVertex when the endpoints are not adjacent.
  EdgeState edge_state(const EdgeId& e) const;

  // Same variables, different parameter.
  Configuration with_parameter(double p) const;
  // Explicit copy of a lazy configuration.
  Configuration materialize() const;

 private:
  CompassVariable derive(std::int32_t index) const;

  RegionPtr region_;
  double p_;
  std::uint64_t seed_;
  std::vector<CompassVariable> x_;
};

// Throws ParameterError unless 0 <= p <= 1.
void check_probability(double p);

Configuration sample(RegionPtr region, double p, std::uint64_t seed);

Configuration with_parameter(const Configuration& config, double p);

std::vector<VertexId> corrupted_set(const Configuration& config);
std::size_t corrupted_count(const Configuration& config);

// All open edges with both endpoints in the region, in canonical order.
std::vector<EdgeId> open_edges(const Configuration& config);

}  // namespace ccm
