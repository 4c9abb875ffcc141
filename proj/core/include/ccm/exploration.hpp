#pragma once

// The one-arm event f = 1{0 <-> ∂Λ_n}, the sphere-seeded decision tree T_k
// and its Determine(v) step.
//
// All routines work inside Λ_n for a given n no larger than the region
// radius. Edges leaving Λ_n are treated as absent.

#include <cstdint>
#include <vector>

#include "ccm/model.hpp"

namespace ccm {

// Which variables a decision tree has looked at, in the order it did so.
class RevealLog {
 public:
  explicit RevealLog(std::size_t region_size = 0) : seen_(region_size, 0) {}

  // Returns false if `index` was already revealed.
  bool reveal(std::int32_t index);
  bool contains(std::int32_t index) const {
    return index >= 0 && static_cast<std::size_t>(index) < seen_.size() && seen_[index];
  }
  std::size_t size() const { return order_.size(); }
  const std::vector<std::int32_t>& order() const { return order_; }

 private:
  std::vector<std::uint8_t> seen_;
  std::vector<std::int32_t> order_;
};

struct ArmResult {
  bool connected = false;
  // Open cluster of ∂Λ_k inside Λ_n, in discovery order.
  std::vector<std::int32_t> cluster;
  RevealLog log;
};

// Reveals X_v and X_w for every neighbour w of v inside Λ_n, then returns
// the state of each edge of N(v) in generator order (`outside` for edges
// that leave Λ_n). Throws OutOfRange if v is not in Λ_n.
std::vector<EdgeState> determine(const Configuration& config, int n, std::int32_t v,
                                 RevealLog& log);

// T_k: Determine every vertex of ∂Λ_k, then every newly reached vertex, FIFO,
// until the whole open cluster of ∂Λ_k in Λ_n is known. There is no early
// exit once f is decided. Throws ParameterError unless 1 <= k <= n and
// OutOfRange if n exceeds the region radius.
ArmResult run_decision_tree(const Configuration& config, int n, int k);

// Breadth-first search from the origin over open edges inside Λ_n.
bool one_arm_direct(const Configuration& config, int n);

// Reusable scratch buffers for repeated one-arm checks on one region.
class OneArmWorkspace {
 public:
  bool operator()(const Configuration& config, int n);

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<std::int32_t> queue_;
  std::uint32_t epoch_ = 0;
};

// Open cluster of v in the whole region, sorted by region index.
std::vector<VertexId> cluster_of(const Configuration& config, const VertexId& v);
std::vector<std::int32_t> cluster_indices(const Configuration& config, std::int32_t v);

}  // namespace ccm
