#pragma once

// Monte Carlo estimation of θ_n(p) and the diagnostics built on top of it:
// parameter sweeps, S_n / T_n series, exponential decay fits, critical point
// estimation by curve crossing, the linear lower bound check above p_c, and
// the explicit constants of the isolated-pair construction.
//
// Every random quantity derives from a master seed, so results never depend
// on the number of worker threads.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ccm/lattice.hpp"

namespace ccm {

struct ThetaEstimate {
  double p = 0.0;
  int n = 0;
  std::uint64_t replicas = 0;
  std::uint64_t hits = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
};

ThetaEstimate make_estimate(double p, int n, std::uint64_t replicas, std::uint64_t hits,
                            std::uint64_t seed);

// Seed of replica r of a θ estimate with master seed `seed`. Independent of p,
// so estimates at different p with one seed share their variables.
std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t replica);

// Throws ParameterError when replicas == 0, p is outside [0, 1] or n < 0.
ThetaEstimate mc_theta(const LatticeSpec& spec, int n, double p, std::uint64_t replicas,
                       std::uint64_t seed, unsigned threads = 1);
// Same, on a prebuilt ball of radius >= n.
ThetaEstimate mc_theta(const RegionPtr& region, int n, double p, std::uint64_t replicas,
                       std::uint64_t seed, unsigned threads = 1);

struct SweepResult {
  LatticeSpec spec;
  std::vector<ThetaEstimate> cells;  // n-major, then p
};

// Seed of the cell at position `cell` in the n-major grid.
std::uint64_t sweep_cell_seed(std::uint64_t master, std::uint64_t cell);

// Full factorial grid over n_list x p_grid. Throws ParameterError on an
// empty grid.
SweepResult theta_sweep(const LatticeSpec& spec, const std::vector<int>& n_list,
                        const std::vector<double>& p_grid, std::uint64_t replicas,
                        std::uint64_t seed, unsigned threads = 1);

// CSV with header family,D,n,p,replicas,hits,mean,stderr,seed and 17
// significant digits for every float.
std::string sweep_csv(const SweepResult& sweep);
// Throws ParameterError on a malformed table or mixed lattices.
SweepResult parse_sweep_csv(const std::string& text);

// `count` evenly spaced points from lo to hi inclusive ("lo:hi:count").
std::vector<double> parse_grid(const std::string& text);

struct DecayFit {
  double p = 0.0;
  int n_lo = 0;
  int n_hi = 0;
  std::vector<int> used_n;
  double rate = 0.0;  // c in θ_n ≈ A exp(-c n)
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct FitWindow {
  int n_lo = 0;
  int n_hi = 1 << 30;
};

// Least squares of log(mean) against n over the sweep cells at p inside the
// window, keeping cells with hits > 0 and relative stderr < 25%. Throws
// FitInfeasible with fewer than 4 usable cells.
DecayFit decay_fit(const SweepResult& sweep, double p, FitWindow window = {});

struct PcEstimate {
  std::string method;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
  std::vector<int> n_list;
  std::vector<double> crossings;
};

// Bisection for theta(p) = tau on [0, 1], assuming theta nondecreasing.
// Throws EstimationFailed when theta(0) > tau or theta(1) < tau.
double crossing_point(const std::function<double(double)>& theta, double tau,
                      double tolerance = 1e-4);

// Crossings at each n (bisection with one seed per n, so the estimated curve
// is monotone in p); point estimate from the largest n, bracket from the last
// two. Throws ParameterError with fewer than two n values.
PcEstimate pc_estimate(const LatticeSpec& spec, const std::vector<int>& n_list,
                       std::uint64_t replicas, std::uint64_t seed, unsigned threads = 1,
                       double tau = 0.5, double tolerance = 1e-4);

// Same estimator on a previously computed sweep, using linear interpolation
// between the grid points of each n.
PcEstimate pc_estimate(const SweepResult& sweep, double tau = 0.5);

// Combines per-n crossings into a PcEstimate.
PcEstimate summarize_crossings(std::string method, std::vector<int> n_list,
                               std::vector<double> crossings);

struct MeanFieldReport {
  double pc = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  int n = 0;  // column used as the θ(p) proxy
  std::vector<double> ps;
  std::vector<double> thetas;
  double c_fit = 0.0;
  std::vector<double> violations;  // p values where the proxy is not positive
};

// Uses the largest-n column of the sweep inside [window_lo, window_hi].
// Throws ParameterError when the window is not inside (pc, 1] or holds no
// sweep points.
MeanFieldReport mean_field_check(const SweepResult& sweep, double pc, double window_lo,
                                 double window_hi);

struct SnSeries {
  double p = 0.0;
  std::vector<double> theta;      // θ_1..θ_n
  std::vector<double> sums;       // S_1..S_n
  std::vector<double> exponents;  // log S_k / log k, k = 2..n
  std::vector<double> tn;         // T_k, k = 2..n
};

// Throws ParameterError unless the values are θ_1..θ_n with no gaps.
SnSeries sn_series(double p, const std::vector<double>& theta);
SnSeries sn_series(const SweepResult& sweep, double p);

struct SharpnessConstants {
  double c0 = 0.0;
  double c1 = 0.0;
};

// C_0 = (1 - δ)^(2d) (1/d) ((d - 2)/d)^(2d - 2), C_1 = C_0 / (4d).
// Throws DomainError unless d >= 3 and 0 < δ < 1.
SharpnessConstants sharpness_constants(int d, double delta);

// P(0 is not connected to ∂Λ_2) by Monte Carlo.
ThetaEstimate mc_isolation(const LatticeSpec& spec, double p, std::uint64_t replicas,
                           std::uint64_t seed, unsigned threads = 1);

}  // namespace ccm
