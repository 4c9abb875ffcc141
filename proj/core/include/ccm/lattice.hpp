#pragma once

// Vertex-transitive lattices, graph distance and ball/sphere enumeration.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccm {

enum class Family { hypercubic, triangular };

struct VertexId {
  std::vector<int> coords;

  auto operator<=>(const VertexId&) const = default;
  bool operator==(const VertexId&) const = default;
};

VertexId operator+(const VertexId& v, const VertexId& t);

std::string to_string(const VertexId& v);

// Unordered pair of adjacent vertices, stored with a <= b.
struct EdgeId {
  VertexId a;
  VertexId b;

  static EdgeId make(VertexId v, VertexId w);

  auto operator<=>(const EdgeId&) const = default;
  bool operator==(const EdgeId&) const = default;
};

class LatticeSpec {
 public:
  static LatticeSpec hypercubic(int dim);
  static LatticeSpec triangular();

  // "z1", "z2", "z3" (any "z<D>"), "tri".
  static LatticeSpec from_tag(std::string_view tag);

  Family family() const { return family_; }
  // Coordinate arity: D for hypercubic, 2 (axial) for triangular.
  int dim() const { return dim_; }
  int degree() const { return static_cast<int>(generators_.size()); }
  std::string tag() const;
  std::string family_name() const;

  // Generator offsets in canonical order. Offsets come in opposite pairs,
  // so generator(i ^ 1) == -generator(i).
  const std::vector<VertexId>& generators() const { return generators_; }
  static constexpr int opposite(int dir) { return dir ^ 1; }

  VertexId origin() const { return VertexId{std::vector<int>(dim_, 0)}; }

  bool operator==(const LatticeSpec& o) const {
    return family_ == o.family_ && dim_ == o.dim_;
  }

 private:
  LatticeSpec(Family family, int dim, std::vector<VertexId> generators);

  Family family_;
  int dim_;
  std::vector<VertexId> generators_;
};

// Throws InvalidVertex on coordinate arity mismatch.
void check_vertex(const LatticeSpec& spec, const VertexId& v);

std::vector<VertexId> neighbors(const LatticeSpec& spec, const VertexId& v);
std::vector<EdgeId> incident_edges(const LatticeSpec& spec, const VertexId& v);

// Closed-form graph distance (L1 for hypercubic, hex metric for axial).
int distance(const LatticeSpec& spec, const VertexId& v, const VertexId& w);

// The ball of radius n around the origin, with vertices ordered by
// (distance, lexicographic coords). The ordering of a smaller ball is a
// prefix of the ordering of any larger one, so vertex indices are stable
// across radii.
class Region {
 public:
  static constexpr std::int32_t kOutside = -1;

  Region(LatticeSpec spec, int radius);

  const LatticeSpec& spec() const { return spec_; }
  int radius() const { return radius_; }
  int degree() const { return spec_.degree(); }
  std::size_t size() const { return vertices_.size(); }

  std::span<const VertexId> vertices() const { return vertices_; }
  const VertexId& vertex(std::int32_t index) const { return vertices_.at(index); }

  // Index of v, or kOutside when v is not in the region.
  std::int32_t find(const VertexId& v) const;
  // Like find() but throws OutOfRange.
  std::int32_t index_of(const VertexId& v) const;
  bool contains(const VertexId& v) const { return find(v) != kOutside; }

  int distance_of(std::int32_t index) const { return dist_[index]; }

  // Neighbour of `index` along generator `dir`, or kOutside.
  std::int32_t neighbor(std::int32_t index, int dir) const {
    return neighbors_[static_cast<std::size_t>(index) * spec_.degree() + dir];
  }

  // |Λ_k| for 0 <= k <= radius; Λ_k occupies indices [0, ball_size(k)).
  std::size_t ball_size(int k) const;
  // Indices of ∂Λ_k as a contiguous range [first, last).
  std::pair<std::int32_t, std::int32_t> sphere_range(int k) const;

 private:
  LatticeSpec spec_;
  int radius_;
  std::vector<VertexId> vertices_;
  std::vector<int> dist_;
  std::vector<std::int32_t> neighbors_;
  std::vector<std::size_t> sphere_start_;
  std::map<VertexId, std::int32_t> index_;
};

using RegionPtr = std::shared_ptr<const Region>;

// Throws ParameterError for n < 0.
RegionPtr ball(const LatticeSpec& spec, int n);

// ∂Λ_k as a vertex list. Throws OutOfRange for k outside [0, radius].
std::vector<VertexId> sphere(const Region& region, int k);

}  // namespace ccm
