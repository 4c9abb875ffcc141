#include "ccm/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccm/errors.hpp"
#include "ccm/rng.hpp"

namespace ccm {

namespace {

constexpr std::uint64_t kUniformStream = rng::tag("compass.u");
constexpr std::uint64_t kCompassStream = rng::tag("compass.a");

}  // namespace

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError("parameter p must lie in [0, 1], got " + std::to_string(p));
  }
}

Configuration::Configuration(RegionPtr region, double p, std::uint64_t seed)
    : region_(std::move(region)), p_(p), seed_(seed) {
  check_probability(p);
  if (!region_) throw ParameterError("configuration needs a region");
}

Configuration::Configuration(RegionPtr region, double p, std::vector<CompassVariable> x,
                             std::uint64_t seed)
    : region_(std::move(region)), p_(p), seed_(seed), x_(std::move(x)) {
  check_probability(p);
  if (!region_) throw ParameterError("configuration needs a region");
  if (x_.size() != region_->size()) {
    throw ParameterError("expected " + std::to_string(region_->size()) +
                         " compass variables, got " + std::to_string(x_.size()));
  }
  const int d = region_->degree();
  for (const auto& cv : x_) {
    if (!(cv.u >= 0.0 && cv.u <= 1.0) || cv.a < 0 || cv.a >= d) {
      throw ParameterError("compass variable out of range");
    }
  }
}

CompassVariable Configuration::derive(std::int32_t index) const {
  const auto i = static_cast<std::uint64_t>(index);
  const auto d = static_cast<std::uint32_t>(region_->degree());
  return CompassVariable{
      rng::unit_real(rng::derive_seed(seed_, kUniformStream, i)),
      static_cast<int>(rng::bounded(rng::derive_seed(seed_, kCompassStream, i), d)),
  };
}

CompassVariable Configuration::variable(const VertexId& v) const {
  return variable(region_->index_of(v));
}

EdgeState Configuration::edge_state(std::int32_t index, int dir) const {
  const std::int32_t w = region_->neighbor(index, dir);
  if (w == Region::kOutside) return EdgeState::outside;
  const CompassVariable xv = variable(index);
  if (xv.u < p_ || xv.a == dir) return EdgeState::open;
  const CompassVariable xw = variable(w);
  if (xw.u < p_ || xw.a == LatticeSpec::opposite(dir)) return EdgeState::open;
  return EdgeState::closed;
}

EdgeState Configuration::edge_state(const EdgeId& e) const {
  const std::int32_t v = region_->index_of(e.a);
  region_->index_of(e.b);
  const auto& gens = region_->spec().generators();
  for (int dir = 0; dir < static_cast<int>(gens.size()); ++dir) {
    if (e.a + gens[dir] == e.b) return edge_state(v, dir);
  }
  throw InvalidVertex("edge endpoints " + to_string(e.a) + " and " + to_string(e.b) +
                      " are not adjacent");
}

Configuration Configuration::with_parameter(double p) const {
  Configuration out = *this;
  check_probability(p);
  out.p_ = p;
  return out;
}

Configuration Configuration::materialize() const {
  std::vector<CompassVariable> x(region_->size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = variable(static_cast<std::int32_t>(i));
  return Configuration(region_, p_, std::move(x), seed_);
}

Configuration sample(RegionPtr region, double p, std::uint64_t seed) {
  return Configuration(std::move(region), p, seed);
}

Configuration with_parameter(const Configuration& config, double p) {
  return config.with_parameter(p);
}

std::vector<VertexId> corrupted_set(const Configuration& config) {
  std::vector<VertexId> out;
  const auto n = static_cast<std::int32_t>(config.region().size());
  for (std::int32_t i = 0; i < n; ++i) {
    if (config.corrupted(i)) out.push_back(config.region().vertex(i));
  }
  return out;
}

std::size_t corrupted_count(const Configuration& config) {
  std::size_t count = 0;
  const auto n = static_cast<std::int32_t>(config.region().size());
  for (std::int32_t i = 0; i < n; ++i) count += config.corrupted(i) ? 1 : 0;
  return count;
}

std::vector<EdgeId> open_edges(const Configuration& config) {
  std::vector<EdgeId> out;
  const Region& region = config.region();
  const auto n = static_cast<std::int32_t>(region.size());
  for (std::int32_t i = 0; i < n; ++i) {
    for (int dir = 0; dir < region.degree(); ++dir) {
      const std::int32_t w = region.neighbor(i, dir);
      // Each edge once, from its lexicographically smaller endpoint.
      if (w == Region::kOutside || region.vertex(w) < region.vertex(i)) continue;
      if (config.edge_state(i, dir) == EdgeState::open) {
        out.push_back(EdgeId{region.vertex(i), region.vertex(w)});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ccm
