#include "ccm/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>

#include "ccm/errors.hpp"

namespace ccm {

VertexId operator+(const VertexId& v, const VertexId& t) {
  if (v.coords.size() != t.coords.size()) {
    throw InvalidVertex("coordinate arity mismatch in translation");
  }
  VertexId out = v;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += t.coords[i];
  return out;
}

std::string to_string(const VertexId& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    if (i) os << ',';
    os << v.coords[i];
  }
  os << ')';
  return os.str();
}

EdgeId EdgeId::make(VertexId v, VertexId w) {
  if (w < v) std::swap(v, w);
  return EdgeId{std::move(v), std::move(w)};
}

LatticeSpec::LatticeSpec(Family family, int dim, std::vector<VertexId> generators)
    : family_(family), dim_(dim), generators_(std::move(generators)) {}

LatticeSpec LatticeSpec::hypercubic(int dim) {
  if (dim < 1) throw ParameterError("hypercubic dimension must be positive");
  std::vector<VertexId> gens;
  for (int axis = 0; axis < dim; ++axis) {
    for (int sign : {-1, +1}) {
      VertexId g{std::vector<int>(dim, 0)};
      g.coords[axis] = sign;
      gens.push_back(std::move(g));
    }
  }
  return LatticeSpec(Family::hypercubic, dim, std::move(gens));
}

LatticeSpec LatticeSpec::triangular() {
  std::vector<VertexId> gens = {
      VertexId{{1, 0}}, VertexId{{-1, 0}}, VertexId{{0, 1}},
      VertexId{{0, -1}}, VertexId{{1, -1}}, VertexId{{-1, 1}},
  };
  return LatticeSpec(Family::triangular, 2, std::move(gens));
}

LatticeSpec LatticeSpec::from_tag(std::string_view tag) {
  if (tag == "tri") return triangular();
  if (tag.size() >= 2 && tag[0] == 'z') {
    int dim = 0;
    for (char c : tag.substr(1)) {
      if (c < '0' || c > '9') throw ParameterError("unknown lattice tag: " + std::string(tag));
      dim = dim * 10 + (c - '0');
      if (dim > 16) throw ParameterError("unsupported lattice dimension: " + std::string(tag));
    }
    return hypercubic(dim);
  }
  throw ParameterError("unknown lattice tag: " + std::string(tag));
}

std::string LatticeSpec::tag() const {
  if (family_ == Family::triangular) return "tri";
  return "z" + std::to_string(dim_);
}

std::string LatticeSpec::family_name() const {
  return family_ == Family::triangular ? "triangular" : "hypercubic";
}

void check_vertex(const LatticeSpec& spec, const VertexId& v) {
  if (static_cast<int>(v.coords.size()) != spec.dim()) {
    throw InvalidVertex("vertex " + to_string(v) + " has arity " +
                        std::to_string(v.coords.size()) + ", lattice " + spec.tag() +
                        " expects " + std::to_string(spec.dim()));
  }
}

std::vector<VertexId> neighbors(const LatticeSpec& spec, const VertexId& v) {
  check_vertex(spec, v);
  std::vector<VertexId> out;
  out.reserve(spec.degree());
  for (const auto& g : spec.generators()) out.push_back(v + g);
  return out;
}

std::vector<EdgeId> incident_edges(const LatticeSpec& spec, const VertexId& v) {
  std::vector<EdgeId> out;
  for (auto& w : neighbors(spec, v)) out.push_back(EdgeId::make(v, std::move(w)));
  return out;
}

int distance(const LatticeSpec& spec, const VertexId& v, const VertexId& w) {
  check_vertex(spec, v);
  check_vertex(spec, w);
  if (spec.family() == Family::hypercubic) {
    int d = 0;
    for (std::size_t i = 0; i < v.coords.size(); ++i) d += std::abs(w.coords[i] - v.coords[i]);
    return d;
  }
  const int dx = w.coords[0] - v.coords[0];
  const int dy = w.coords[1] - v.coords[1];
  if ((dx >= 0) == (dy >= 0)) return std::abs(dx + dy);
  return std::max(std::abs(dx), std::abs(dy));
}

Region::Region(LatticeSpec spec, int radius) : spec_(std::move(spec)), radius_(radius) {
  if (radius < 0) throw ParameterError("ball radius must be nonnegative");

  // Plain BFS; graph distance comes out of the traversal depth.
  std::map<VertexId, int> depth;
  std::deque<VertexId> queue;
  const VertexId origin = spec_.origin();
  depth.emplace(origin, 0);
  queue.push_back(origin);
  while (!queue.empty()) {
    VertexId v = std::move(queue.front());
    queue.pop_front();
    const int dv = depth.at(v);
    if (dv == radius_) continue;
    for (const auto& g : spec_.generators()) {
      VertexId w = v + g;
      if (depth.emplace(w, dv + 1).second) queue.push_back(std::move(w));
    }
  }

  std::vector<std::pair<int, VertexId>> ordered;
  ordered.reserve(depth.size());
  for (auto& [v, d] : depth) ordered.emplace_back(d, v);
  std::sort(ordered.begin(), ordered.end());

  vertices_.reserve(ordered.size());
  dist_.reserve(ordered.size());
  sphere_start_.assign(static_cast<std::size_t>(radius_) + 2, 0);
  for (auto& [d, v] : ordered) {
    index_.emplace(v, static_cast<std::int32_t>(vertices_.size()));
    ++sphere_start_[d + 1];
    dist_.push_back(d);
    vertices_.push_back(std::move(v));
  }
  for (std::size_t k = 1; k < sphere_start_.size(); ++k) sphere_start_[k] += sphere_start_[k - 1];

  const int deg = spec_.degree();
  neighbors_.assign(vertices_.size() * deg, kOutside);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (int dir = 0; dir < deg; ++dir) {
      neighbors_[i * deg + dir] = find(vertices_[i] + spec_.generators()[dir]);
    }
  }
}

std::int32_t Region::find(const VertexId& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? kOutside : it->second;
}

std::int32_t Region::index_of(const VertexId& v) const {
  check_vertex(spec_, v);
  const auto i = find(v);
  if (i == kOutside) {
    throw OutOfRange("vertex " + to_string(v) + " lies outside the ball of radius " +
                     std::to_string(radius_));
  }
  return i;
}

std::size_t Region::ball_size(int k) const {
  if (k < 0 || k > radius_) {
    throw OutOfRange("ball radius " + std::to_string(k) + " outside [0, " +
                     std::to_string(radius_) + "]");
  }
  return sphere_start_[k + 1];
}

std::pair<std::int32_t, std::int32_t> Region::sphere_range(int k) const {
  if (k < 0 || k > radius_) {
    throw OutOfRange("sphere radius " + std::to_string(k) + " outside [0, " +
                     std::to_string(radius_) + "]");
  }
  return {static_cast<std::int32_t>(sphere_start_[k]),
          static_cast<std::int32_t>(sphere_start_[k + 1])};
}

RegionPtr ball(const LatticeSpec& spec, int n) {
  return std::make_shared<const Region>(spec, n);
}

std::vector<VertexId> sphere(const Region& region, int k) {
  auto [first, last] = region.sphere_range(k);
  return {region.vertices().begin() + first, region.vertices().begin() + last};
}

}  // namespace ccm
