#include "ccm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "ccm/errors.hpp"
#include "ccm/exploration.hpp"
#include "ccm/model.hpp"
#include "ccm/rng.hpp"

namespace ccm {

namespace {

constexpr std::uint64_t kReplicaStream = rng::tag("theta.replica");
constexpr std::uint64_t kSweepStream = rng::tag("sweep.cell");
constexpr std::uint64_t kPcStream = rng::tag("pc.n");

// Counts replicas r in [0, replicas) for which `hit(workspace, seed_r)` holds,
// split into contiguous chunks over `threads` workers. Integer counts make
// the total independent of the split.
template <class Hit>
std::uint64_t count_hits(std::uint64_t replicas, std::uint64_t seed, unsigned threads,
                         const Hit& hit) {
  threads = std::max(1u, threads);
  if (threads == 1 || replicas < 2 * threads) {
    OneArmWorkspace ws;
    std::uint64_t hits = 0;
    for (std::uint64_t r = 0; r < replicas; ++r) hits += hit(ws, replica_seed(seed, r)) ? 1 : 0;
    return hits;
  }
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      const std::uint64_t begin = replicas * t / threads;
      const std::uint64_t end = replicas * (t + 1) / threads;
      OneArmWorkspace ws;
      std::uint64_t hits = 0;
      for (std::uint64_t r = begin; r < end; ++r) hits += hit(ws, replica_seed(seed, r)) ? 1 : 0;
      partial[t] = hits;
    });
  }
  for (auto& w : workers) w.join();
  std::uint64_t total = 0;
  for (auto h : partial) total += h;
  return total;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParameterError("malformed number: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw ParameterError("malformed number: " + s);
  }
}

std::uint64_t parse_u64(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size() || s.empty() || s[0] == '-') throw ParameterError("malformed integer: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw ParameterError("malformed integer: " + s);
  }
}

bool same_p(double a, double b) { return std::abs(a - b) <= 1e-12; }

}  // namespace

ThetaEstimate make_estimate(double p, int n, std::uint64_t replicas, std::uint64_t hits,
                            std::uint64_t seed) {
  ThetaEstimate e;
  e.p = p;
  e.n = n;
  e.replicas = replicas;
  e.hits = hits;
  e.seed = seed;
  e.mean = replicas ? static_cast<double>(hits) / static_cast<double>(replicas) : 0.0;
  e.std_error = replicas ? std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(replicas)) : 0.0;
  return e;
}

std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t replica) {
  return rng::derive_seed(seed, kReplicaStream, replica);
}

ThetaEstimate mc_theta(const RegionPtr& region, int n, double p, std::uint64_t replicas,
                       std::uint64_t seed, unsigned threads) {
  check_probability(p);
  if (replicas == 0) throw ParameterError("replicas must be positive");
  if (n < 0 || n > region->radius()) throw ParameterError("n outside the region radius");
  const std::uint64_t hits =
      count_hits(replicas, seed, threads, [&](OneArmWorkspace& ws, std::uint64_t s) {
        return ws(Configuration(region, p, s), n);
      });
  return make_estimate(p, n, replicas, hits, seed);
}

ThetaEstimate mc_theta(const LatticeSpec& spec, int n, double p, std::uint64_t replicas,
                       std::uint64_t seed, unsigned threads) {
  if (n < 0) throw ParameterError("n must be nonnegative");
  return mc_theta(ball(spec, n), n, p, replicas, seed, threads);
}

ThetaEstimate mc_isolation(const LatticeSpec& spec, double p, std::uint64_t replicas,
                           std::uint64_t seed, unsigned threads) {
  const ThetaEstimate arm = mc_theta(spec, 2, p, replicas, seed, threads);
  return make_estimate(p, 2, replicas, replicas - arm.hits, seed);
}

std::uint64_t sweep_cell_seed(std::uint64_t master, std::uint64_t cell) {
  return rng::derive_seed(master, kSweepStream, cell);
}

SweepResult theta_sweep(const LatticeSpec& spec, const std::vector<int>& n_list,
                        const std::vector<double>& p_grid, std::uint64_t replicas,
                        std::uint64_t seed, unsigned threads) {
  if (n_list.empty() || p_grid.empty()) throw ParameterError("sweep grid is empty");
  for (double p : p_grid) check_probability(p);
  SweepResult out{spec, {}};
  std::uint64_t cell = 0;
  for (int n : n_list) {
    if (n < 0) throw ParameterError("n must be nonnegative");
    const RegionPtr region = ball(spec, n);
    for (double p : p_grid) {
      out.cells.push_back(mc_theta(region, n, p, replicas, sweep_cell_seed(seed, cell++), threads));
    }
  }
  return out;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::ostringstream os;
  os << "family,D,n,p,replicas,hits,mean,stderr,seed\n";
  for (const auto& c : sweep.cells) {
    os << sweep.spec.family_name() << ',' << sweep.spec.dim() << ',' << c.n << ','
       << format_double(c.p) << ',' << c.replicas << ',' << c.hits << ',' << format_double(c.mean)
       << ',' << format_double(c.std_error) << ',' << c.seed << '\n';
  }
  return os.str();
}

SweepResult parse_sweep_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "family,D,n,p,replicas,hits,mean,stderr,seed") {
    throw ParameterError("sweep CSV: unexpected header");
  }
  std::optional<LatticeSpec> spec;
  std::vector<ThetaEstimate> cells;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) throw ParameterError("sweep CSV: expected 9 fields in: " + line);
    const int dim = static_cast<int>(parse_u64(f[1]));
    LatticeSpec row_spec = f[0] == "triangular" ? LatticeSpec::triangular()
                           : f[0] == "hypercubic"
                               ? LatticeSpec::hypercubic(dim)
                               : throw ParameterError("sweep CSV: unknown family " + f[0]);
    if (row_spec.dim() != dim) throw ParameterError("sweep CSV: bad dimension for " + f[0]);
    if (spec && !(*spec == row_spec)) throw ParameterError("sweep CSV: mixed lattices");
    spec = row_spec;
    ThetaEstimate c;
    c.n = static_cast<int>(parse_u64(f[2]));
    c.p = parse_double(f[3]);
    c.replicas = parse_u64(f[4]);
    c.hits = parse_u64(f[5]);
    c.mean = parse_double(f[6]);
    c.std_error = parse_double(f[7]);
    c.seed = parse_u64(f[8]);
    if (c.hits > c.replicas) throw ParameterError("sweep CSV: hits exceed replicas");
    cells.push_back(c);
  }
  if (!spec) throw ParameterError("sweep CSV: no rows");
  return SweepResult{*spec, std::move(cells)};
}

std::vector<double> parse_grid(const std::string& text) {
  const auto f = split(text, ':');
  if (f.size() == 1) return {parse_double(f[0])};
  if (f.size() != 3) throw ParameterError("grid must be lo:hi:count, got " + text);
  const double lo = parse_double(f[0]);
  const double hi = parse_double(f[1]);
  const auto count = parse_u64(f[2]);
  if (count == 0 || hi < lo) throw ParameterError("malformed grid " + text);
  if (count == 1) return {lo};
  std::vector<double> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) /
                                               static_cast<double>(count - 1));
  }
  return out;
}

DecayFit decay_fit(const SweepResult& sweep, double p, FitWindow window) {
  std::vector<std::pair<int, double>> points;
  for (const auto& c : sweep.cells) {
    if (!same_p(c.p, p) || c.n < window.n_lo || c.n > window.n_hi) continue;
    if (!(c.mean > 0.0) || !(c.std_error < 0.25 * c.mean)) continue;
    points.emplace_back(c.n, std::log(c.mean));
  }
  std::sort(points.begin(), points.end());
  if (points.size() < 4) {
    throw FitInfeasible("decay fit at p=" + format_double(p) + " has " +
                        std::to_string(points.size()) + " usable points, needs 4");
  }
  double mx = 0, my = 0;
  for (auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  const double count = static_cast<double>(points.size());
  mx /= count;
  my /= count;
  double sxx = 0, sxy = 0, syy = 0;
  for (auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw FitInfeasible("decay fit needs at least two distinct n");

  DecayFit fit;
  fit.p = p;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.rate = -fit.slope;
  double ss_res = 0;
  for (auto& [x, y] : points) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss_res += r * r;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  for (auto& [x, y] : points) fit.used_n.push_back(x);
  fit.n_lo = fit.used_n.front();
  fit.n_hi = fit.used_n.back();
  return fit;
}

double crossing_point(const std::function<double(double)>& theta, double tau, double tolerance) {
  double lo = 0.0, hi = 1.0;
  if (theta(lo) > tau || theta(hi) < tau) {
    throw EstimationFailed("theta does not cross " + format_double(tau) + " on [0, 1]");
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (theta(mid) < tau) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PcEstimate summarize_crossings(std::string method, std::vector<int> n_list,
                               std::vector<double> crossings) {
  if (crossings.size() < 2 || crossings.size() != n_list.size()) {
    throw ParameterError("critical point estimate needs at least two values of n");
  }
  PcEstimate e;
  e.method = std::move(method);
  e.value = crossings.back();
  e.lo = std::min(crossings[crossings.size() - 2], crossings.back());
  e.hi = std::max(crossings[crossings.size() - 2], crossings.back());
  e.n = n_list.back();
  e.n_list = std::move(n_list);
  e.crossings = std::move(crossings);
  return e;
}

PcEstimate pc_estimate(const LatticeSpec& spec, const std::vector<int>& n_list,
                       std::uint64_t replicas, std::uint64_t seed, unsigned threads, double tau,
                       double tolerance) {
  if (n_list.size() < 2) throw ParameterError("critical point estimate needs at least two values of n");
  std::vector<int> ns = n_list;
  std::sort(ns.begin(), ns.end());
  std::vector<double> crossings;
  for (int n : ns) {
    const RegionPtr region = ball(spec, n);
    const std::uint64_t s = rng::derive_seed(seed, kPcStream, static_cast<std::uint64_t>(n));
    crossings.push_back(crossing_point(
        [&](double p) { return mc_theta(region, n, p, replicas, s, threads).mean; }, tau,
        tolerance));
  }
  return summarize_crossings("bisection-crossing tau=" + format_double(tau), std::move(ns),
                             std::move(crossings));
}

PcEstimate pc_estimate(const SweepResult& sweep, double tau) {
  std::map<int, std::vector<std::pair<double, double>>> curves;
  for (const auto& c : sweep.cells) curves[c.n].emplace_back(c.p, c.mean);
  std::vector<int> ns;
  std::vector<double> crossings;
  for (auto& [n, pts] : curves) {
    std::sort(pts.begin(), pts.end());
    if (pts.size() < 2) throw ParameterError("sweep needs at least two p values per n");
    auto interp = [&pts](double p) {
      if (p <= pts.front().first) return pts.front().second;
      if (p >= pts.back().first) return pts.back().second;
      auto it = std::lower_bound(pts.begin(), pts.end(), std::make_pair(p, -1.0));
      const auto& [p1, t1] = *it;
      const auto& [p0, t0] = *(it - 1);
      return t0 + (t1 - t0) * (p - p0) / (p1 - p0);
    };
    // Outside the sampled p range the curve is extended flat, so a crossing
    // that is not bracketed by the sweep fails here rather than extrapolating.
    if (interp(0.0) > tau || interp(1.0) < tau) {
      throw EstimationFailed("sweep curve at n=" + std::to_string(n) + " does not cross tau");
    }
    ns.push_back(n);
    crossings.push_back(crossing_point(interp, tau, 1e-9));
  }
  return summarize_crossings("sweep-interpolation tau=" + format_double(tau), std::move(ns),
                             std::move(crossings));
}

MeanFieldReport mean_field_check(const SweepResult& sweep, double pc, double window_lo,
                                 double window_hi) {
  if (!(window_lo > pc) || !(window_hi <= 1.0) || window_hi < window_lo) {
    throw ParameterError("mean-field window must lie inside (pc, 1]");
  }
  MeanFieldReport report;
  report.pc = pc;
  report.window_lo = window_lo;
  report.window_hi = window_hi;
  for (const auto& c : sweep.cells) report.n = std::max(report.n, c.n);
  std::vector<std::pair<double, double>> pts;
  for (const auto& c : sweep.cells) {
    if (c.n == report.n && c.p >= window_lo - 1e-12 && c.p <= window_hi + 1e-12) {
      pts.emplace_back(c.p, c.mean);
    }
  }
  if (pts.empty()) throw ParameterError("mean-field window contains no sweep points");
  std::sort(pts.begin(), pts.end());
  report.c_fit = std::numeric_limits<double>::infinity();
  for (auto& [p, theta] : pts) {
    report.ps.push_back(p);
    report.thetas.push_back(theta);
    report.c_fit = std::min(report.c_fit, theta / (p - pc));
    if (!(theta > 0.0)) report.violations.push_back(p);
  }
  return report;
}

SnSeries sn_series(double p, const std::vector<double>& theta) {
  if (theta.empty()) throw ParameterError("S_n series needs θ_1..θ_n");
  SnSeries s;
  s.p = p;
  s.theta = theta;
  double sum = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    sum += theta[i];
    weighted += theta[i] / k;
    s.sums.push_back(sum);
    if (i >= 1) {
      s.exponents.push_back(std::log(sum) / std::log(k));
      s.tn.push_back(weighted / std::log(k));
    }
  }
  return s;
}

SnSeries sn_series(const SweepResult& sweep, double p) {
  std::vector<std::pair<int, double>> pts;
  for (const auto& c : sweep.cells) {
    if (same_p(c.p, p)) pts.emplace_back(c.n, c.mean);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> theta;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].first != static_cast<int>(i + 1)) {
      throw ParameterError("S_n series needs every n from 1 without gaps");
    }
    theta.push_back(pts[i].second);
  }
  return sn_series(p, theta);
}

SharpnessConstants sharpness_constants(int d, double delta) {
  if (d < 3) throw DomainError("constants need degree d >= 3");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  const double dd = d;
  SharpnessConstants c;
  c.c0 = std::pow(1.0 - delta, 2 * d) * (1.0 / dd) * std::pow((dd - 2.0) / dd, 2 * d - 2);
  c.c1 = c.c0 / (4.0 * dd);
  return c;
}

}  // namespace ccm
