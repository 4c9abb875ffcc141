#include "ccm/exploration.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ccm/errors.hpp"

namespace ccm {

namespace {

std::int32_t scope_limit(const Configuration& config, int n) {
  if (n < 0 || n > config.region().radius()) {
    throw OutOfRange("radius " + std::to_string(n) + " exceeds the region radius " +
                     std::to_string(config.region().radius()));
  }
  return static_cast<std::int32_t>(config.region().ball_size(n));
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::int32_t find(std::int32_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::int32_t> parent_;
};

}  // namespace

bool RevealLog::reveal(std::int32_t index) {
  if (index < 0) throw OutOfRange("negative vertex index in reveal log");
  if (static_cast<std::size_t>(index) >= seen_.size()) seen_.resize(index + 1, 0);
  if (seen_[index]) return false;
  seen_[index] = 1;
  order_.push_back(index);
  return true;
}

std::vector<EdgeState> determine(const Configuration& config, int n, std::int32_t v,
                                 RevealLog& log) {
  const std::int32_t limit = scope_limit(config, n);
  if (v < 0 || v >= limit) {
    throw OutOfRange("Determine called on a vertex outside the ball of radius " +
                     std::to_string(n));
  }
  const Region& region = config.region();
  std::vector<EdgeState> states(region.degree(), EdgeState::outside);
  log.reveal(v);
  for (int dir = 0; dir < region.degree(); ++dir) {
    const std::int32_t w = region.neighbor(v, dir);
    if (w == Region::kOutside || w >= limit) continue;
    log.reveal(w);
    states[dir] = config.edge_state(v, dir);
  }
  return states;
}

ArmResult run_decision_tree(const Configuration& config, int n, int k) {
  if (k < 1 || k > n) {
    throw ParameterError("decision tree index k=" + std::to_string(k) + " outside [1, " +
                         std::to_string(n) + "]");
  }
  const std::int32_t limit = scope_limit(config, n);
  const Region& region = config.region();

  ArmResult result{false, {}, RevealLog(static_cast<std::size_t>(limit))};
  std::vector<std::uint8_t> in_cluster(limit, 0);
  DisjointSets components(limit);

  const auto [first, last] = region.sphere_range(k);
  for (std::int32_t s = first; s < last; ++s) {
    in_cluster[s] = 1;
    result.cluster.push_back(s);
  }
  // result.cluster doubles as the FIFO queue.
  for (std::size_t head = 0; head < result.cluster.size(); ++head) {
    const std::int32_t v = result.cluster[head];
    const auto states = determine(config, n, v, result.log);
    for (int dir = 0; dir < region.degree(); ++dir) {
      if (states[dir] != EdgeState::open) continue;
      const std::int32_t w = region.neighbor(v, dir);
      components.unite(v, w);
      if (!in_cluster[w]) {
        in_cluster[w] = 1;
        result.cluster.push_back(w);
      }
    }
  }

  // A path from the origin to ∂Λ_n passes through ∂Λ_k, so f is read off
  // the components of the explored cluster.
  constexpr std::int32_t origin = 0;
  if (in_cluster[origin]) {
    const std::int32_t root = components.find(origin);
    const auto [outer_first, outer_last] = region.sphere_range(n);
    for (std::int32_t u = outer_first; u < outer_last && !result.connected; ++u) {
      result.connected = in_cluster[u] && components.find(u) == root;
    }
  }
  return result;
}

bool OneArmWorkspace::operator()(const Configuration& config, int n) {
  const std::int32_t limit = scope_limit(config, n);
  if (n == 0) return true;
  const Region& region = config.region();
  const std::int32_t outer = static_cast<std::int32_t>(region.sphere_range(n).first);

  if (stamp_.size() < static_cast<std::size_t>(limit)) stamp_.assign(limit, 0);
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  queue_.clear();
  queue_.push_back(0);
  stamp_[0] = epoch_;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const std::int32_t v = queue_[head];
    const CompassVariable xv = config.variable(v);
    const bool v_corrupt = xv.u < config.p();
    for (int dir = 0; dir < region.degree(); ++dir) {
      const std::int32_t w = region.neighbor(v, dir);
      if (w == Region::kOutside || w >= limit || stamp_[w] == epoch_) continue;
      bool open = v_corrupt || xv.a == dir;
      if (!open) {
        const CompassVariable xw = config.variable(w);
        open = xw.u < config.p() || xw.a == LatticeSpec::opposite(dir);
      }
      if (!open) continue;
      if (w >= outer) return true;
      stamp_[w] = epoch_;
      queue_.push_back(w);
    }
  }
  return false;
}

bool one_arm_direct(const Configuration& config, int n) {
  OneArmWorkspace workspace;
  return workspace(config, n);
}

std::vector<std::int32_t> cluster_indices(const Configuration& config, std::int32_t v) {
  const Region& region = config.region();
  if (v < 0 || static_cast<std::size_t>(v) >= region.size()) {
    throw OutOfRange("cluster seed outside the region");
  }
  std::vector<std::uint8_t> seen(region.size(), 0);
  std::vector<std::int32_t> cluster{v};
  seen[v] = 1;
  for (std::size_t head = 0; head < cluster.size(); ++head) {
    const std::int32_t u = cluster[head];
    for (int dir = 0; dir < region.degree(); ++dir) {
      const std::int32_t w = region.neighbor(u, dir);
      if (w == Region::kOutside || seen[w]) continue;
      if (config.edge_state(u, dir) != EdgeState::open) continue;
      seen[w] = 1;
      cluster.push_back(w);
    }
  }
  std::sort(cluster.begin(), cluster.end());
  return cluster;
}

std::vector<VertexId> cluster_of(const Configuration& config, const VertexId& v) {
  std::vector<VertexId> out;
  for (auto i : cluster_indices(config, config.region().index_of(v))) {
    out.push_back(config.region().vertex(i));
  }
  return out;
}

}  // namespace ccm
