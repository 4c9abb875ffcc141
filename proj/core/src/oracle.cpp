#include "ccm/oracle.hpp"

#include <cmath>
#include <string>

#include "ccm/errors.hpp"
#include "ccm/exploration.hpp"
#include "ccm/model.hpp"

namespace ccm {

namespace {

// Atomic state encoding: 0..d-1 = uncorrupted with that compass, d = corrupted.
// The enumeration evaluates the real exploration code on an explicit
// configuration at p = 1/2 whose U values sit on the right side of 1/2.
constexpr double kProbeP = 0.5;
constexpr double kCorruptU = 0.25;
constexpr double kCleanU = 0.75;

template <class Visit>
void for_each_atom(const RegionPtr& region, std::size_t vertex_count, int degree,
                   Visit&& visit) {
  std::vector<int> digits(vertex_count, 0);
  std::vector<CompassVariable> x(region->size(), CompassVariable{kCleanU, 0});
  std::uint64_t index = 0;
  while (true) {
    std::size_t corrupted = 0;
    for (std::size_t i = 0; i < vertex_count; ++i) {
      const bool c = digits[i] == degree;
      corrupted += c ? 1 : 0;
      x[i] = c ? CompassVariable{kCorruptU, 0} : CompassVariable{kCleanU, digits[i]};
    }
    visit(index, corrupted, Configuration(region, kProbeP, x));
    ++index;
    std::size_t pos = 0;
    while (pos < vertex_count && ++digits[pos] > degree) digits[pos++] = 0;
    if (pos == vertex_count) break;
  }
}

Polynomial counts_to_polynomial(const std::vector<std::uint64_t>& counts, std::size_t m,
                                int degree) {
  // Σ_j counts[j] p^j (1 - p)^(m - j) / d^(m - j)
  std::vector<Rational> coeffs(m + 1);
  for (std::size_t j = 0; j <= m && j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    const std::size_t rest = m - j;
    const Rational scale = Rational(BigInt(counts[j])) / power(Rational(degree), rest);
    BigInt binom = 1;
    for (std::size_t i = 0; i <= rest; ++i) {
      const Rational term = scale * Rational(binom);
      coeffs[j + i] += (i % 2 == 0) ? term : Rational(-term);
      binom = binom * (rest - i) / (i + 1);
    }
  }
  return Polynomial(std::move(coeffs));
}

void check_p(const Rational& p) {
  if (p < 0 || p > 1) throw ParameterError("p must lie in [0, 1], got " + to_string(p));
}

AuditContext context_for(const ExactModel& model, const Rational& p) {
  AuditContext ctx;
  ctx.lattice = model.region().spec().tag();
  ctx.n = model.n();
  ctx.p = p;
  return ctx;
}

}  // namespace

void check_budget(const LatticeSpec& spec, int n, const EnumerationBudget& budget) {
  if (n < 0) throw ParameterError("radius must be nonnegative");
  const Region region(spec, n);
  const double bits =
      static_cast<double>(region.size()) * std::log2(2.0 * static_cast<double>(spec.degree()));
  if (bits > budget.max_bits) {
    throw EnumerationTooLarge("enumeration of " + spec.tag() + " n=" + std::to_string(n) +
                              " needs " + std::to_string(bits) + " bits, budget is " +
                              std::to_string(budget.max_bits));
  }
}

ExactModel::ExactModel(const LatticeSpec& spec, int n, EnumerationBudget budget)
    : region_(ball(spec, n)),
      n_(n),
      degree_(spec.degree()),
      vertex_count_(region_->size()),
      atom_count_(1) {
  check_budget(spec, n, budget);
  const std::size_t N = vertex_count_;
  const int d = degree_;
  for (std::size_t i = 0; i < N; ++i) atom_count_ *= static_cast<std::uint64_t>(d + 1);

  hits_.assign(n + 1, std::vector<std::uint64_t>(N + 1, 0));
  std::vector<std::uint8_t> f(atom_count_, 0);
  std::vector<std::uint8_t> corrupted(atom_count_, 0);
  OneArmWorkspace one_arm;
  for_each_atom(region_, N, d, [&](std::uint64_t a, std::size_t j, const Configuration& cfg) {
    corrupted[a] = static_cast<std::uint8_t>(j);
    for (int k = 0; k <= n; ++k) {
      const bool hit = one_arm(cfg, k);
      if (hit) ++hits_[k][j];
      if (k == n) f[a] = hit ? 1 : 0;
    }
  });

  influence_.assign(N, std::vector<std::uint64_t>((N + 1) * 2 * (d + 1), 0));
  std::uint64_t stride = 1;
  for (std::size_t v = 0; v < N; ++v) {
    auto& table = influence_[v];
    for (std::uint64_t a = 0; a < atom_count_; ++a) {
      if (static_cast<int>((a / stride) % (d + 1)) != d) continue;
      const std::uint64_t base = a - static_cast<std::uint64_t>(d) * stride;
      int m = 0;
      for (int c = 0; c < d; ++c) m += f[base + c * stride];
      const std::size_t j = corrupted[a] - 1u;
      ++table[(j * 2 + f[a]) * (d + 1) + m];
    }
    stride *= static_cast<std::uint64_t>(d + 1);
  }
}

Rational ExactModel::atom_weight(std::size_t m, std::size_t j, const Rational& p) const {
  return power(p, static_cast<unsigned>(j)) *
         power((1 - p) / degree_, static_cast<unsigned>(m - j));
}

void ExactModel::check_index(std::int32_t v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= vertex_count_) {
    throw OutOfRange("vertex index " + std::to_string(v) + " outside the enumerated ball");
  }
}

ThetaPolynomial ExactModel::theta(int k) const {
  if (k < 0 || k > n_) throw OutOfRange("theta radius outside [0, n]");
  return ThetaPolynomial{region_->spec(), k,
                         counts_to_polynomial(hits_[k], vertex_count_, degree_)};
}

Rational ExactModel::partial_sum(const Rational& p) const {
  check_p(p);
  Rational s = 0;
  for (int k = 1; k <= n_; ++k) {
    for (std::size_t j = 0; j <= vertex_count_; ++j) {
      if (hits_[k][j]) s += Rational(BigInt(hits_[k][j])) * atom_weight(vertex_count_, j, p);
    }
  }
  return s;
}

Rational ExactModel::influence(std::int32_t v, const Rational& p) const {
  check_index(v);
  check_p(p);
  const int d = degree_;
  const auto& table = influence_[v];
  Rational total = 0;
  for (std::size_t j = 0; j + 1 <= vertex_count_; ++j) {
    for (int fc = 0; fc < 2; ++fc) {
      for (int m = 0; m <= d; ++m) {
        const std::uint64_t count = table[(j * 2 + fc) * (d + 1) + m];
        if (!count) continue;
        // Probability that the resampled X_v gives f = 1.
        const Rational q = p * fc + (1 - p) * Rational(m, d);
        total += Rational(BigInt(count)) * atom_weight(vertex_count_ - 1, j, p) * 2 * q * (1 - q);
      }
    }
  }
  return total;
}

Rational ExactModel::pivotal(std::int32_t v, const Rational& p) const {
  check_index(v);
  check_p(p);
  const int d = degree_;
  const auto& table = influence_[v];
  Rational total = 0;
  for (std::size_t j = 0; j + 1 <= vertex_count_; ++j) {
    for (int fc = 0; fc < 2; ++fc) {
      for (int m = 0; m <= d; ++m) {
        const std::uint64_t count = table[(j * 2 + fc) * (d + 1) + m];
        if (!count) continue;
        // The compass of v is kept when its status flips, so the flip
        // changes f for exactly the compasses whose value disagrees with f
        // at "corrupted", whichever status v started in.
        const int disagree = fc ? d - m : m;
        total += Rational(BigInt(count)) * atom_weight(vertex_count_ - 1, j, p) *
                 Rational(disagree, d);
      }
    }
  }
  return total;
}

void ExactModel::build_revealment() const {
  const std::size_t N = vertex_count_;
  std::vector<std::uint64_t> table(static_cast<std::size_t>(n_) * N * (N + 1), 0);
  for_each_atom(region_, N, degree_, [&](std::uint64_t, std::size_t j, const Configuration& cfg) {
    for (int k = 1; k <= n_; ++k) {
      const ArmResult run = run_decision_tree(cfg, n_, k);
      for (std::int32_t v : run.log.order()) {
        ++table[((static_cast<std::size_t>(k) - 1) * N + v) * (N + 1) + j];
      }
    }
  });
  reveal_ = std::move(table);
}

Rational ExactModel::revealment(int k, std::int32_t v, const Rational& p) const {
  if (k < 1 || k > n_) throw ParameterError("decision tree index outside [1, n]");
  check_index(v);
  check_p(p);
  if (reveal_.empty()) build_revealment();
  const std::size_t N = vertex_count_;
  Rational total = 0;
  for (std::size_t j = 0; j <= N; ++j) {
    const std::uint64_t count = reveal_[((static_cast<std::size_t>(k) - 1) * N + v) * (N + 1) + j];
    if (count) total += Rational(BigInt(count)) * atom_weight(N, j, p);
  }
  return total;
}

ThetaPolynomial exact_theta(const LatticeSpec& spec, int n, EnumerationBudget budget) {
  return ExactModel(spec, n, budget).theta();
}

Rational exact_influence(const LatticeSpec& spec, int n, const VertexId& v, const Rational& p,
                         EnumerationBudget budget) {
  const ExactModel model(spec, n, budget);
  return model.influence(model.region().index_of(v), p);
}

Rational exact_revealment(const LatticeSpec& spec, int n, int k, const VertexId& v,
                          const Rational& p, EnumerationBudget budget) {
  const ExactModel model(spec, n, budget);
  return model.revealment(k, model.region().index_of(v), p);
}

Rational exact_pivotal(const LatticeSpec& spec, int n, const VertexId& v, const Rational& p,
                       EnumerationBudget budget) {
  const ExactModel model(spec, n, budget);
  return model.pivotal(model.region().index_of(v), p);
}

AuditReport make_report(std::string name, AuditKind kind, Rational lhs, Rational rhs,
                        AuditContext context) {
  AuditReport r;
  r.name = std::move(name);
  r.kind = kind;
  r.holds = kind == AuditKind::identity ? lhs == rhs : lhs <= rhs;
  r.slack = rhs - lhs;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.context = std::move(context);
  return r;
}

AuditReport russo_audit(const ExactModel& model, const Rational& p) {
  const Rational derivative = model.theta().poly.derivative()(p);
  Rational pivotal_sum = 0;
  for (std::size_t v = 0; v < model.vertex_count(); ++v) {
    pivotal_sum += model.pivotal(static_cast<std::int32_t>(v), p);
  }
  return make_report("russo", AuditKind::identity, derivative, pivotal_sum,
                     context_for(model, p));
}

AuditReport osss_audit(const ExactModel& model, int k, const Rational& p) {
  const Rational theta = model.theta()(p);
  Rational rhs = 0;
  for (std::size_t v = 0; v < model.vertex_count(); ++v) {
    const auto iv = static_cast<std::int32_t>(v);
    const Rational inf = model.influence(iv, p);
    if (inf != 0) rhs += model.revealment(k, iv, p) * inf;
  }
  AuditContext ctx = context_for(model, p);
  ctx.k = k;
  return make_report("osss", AuditKind::inequality, theta * (1 - theta), rhs, std::move(ctx));
}

AuditReport revealment_sum_audit(const ExactModel& model, std::int32_t v, const Rational& p) {
  if (model.n() < 1) throw ParameterError("revealment sums need n >= 1");
  Rational lhs = 0;
  for (int k = 1; k <= model.n(); ++k) lhs += model.revealment(k, v, p);
  AuditContext ctx = context_for(model, p);
  ctx.v = model.region().vertex(v);
  return make_report("revealment_sum", AuditKind::inequality, lhs,
                     2 * model.degree() * model.partial_sum(p), std::move(ctx));
}

AuditReport influence_pivotal_audit(const ExactModel& model, const Rational& p) {
  Rational influence_sum = 0;
  for (std::size_t v = 0; v < model.vertex_count(); ++v) {
    influence_sum += model.influence(static_cast<std::int32_t>(v), p);
  }
  return make_report("influence_pivotal", AuditKind::inequality, influence_sum / 2,
                     model.theta().poly.derivative()(p), context_for(model, p));
}

AuditReport diff_ineq_audit(const ExactModel& model, const Rational& p) {
  if (model.n() < 1) throw ParameterError("the differential inequality needs n >= 1");
  const Rational theta = model.theta()(p);
  const Rational s = model.partial_sum(p);
  const Rational lhs = Rational(model.n()) / (4 * model.degree() * s) * theta * (1 - theta);
  return make_report("differential_inequality", AuditKind::inequality, lhs,
                     model.theta().poly.derivative()(p), context_for(model, p));
}

AuditReport russo_audit(const LatticeSpec& spec, int n, const Rational& p,
                        EnumerationBudget budget) {
  return russo_audit(ExactModel(spec, n, budget), p);
}

AuditReport osss_audit(const LatticeSpec& spec, int n, int k, const Rational& p,
                       EnumerationBudget budget) {
  return osss_audit(ExactModel(spec, n, budget), k, p);
}

AuditReport revealment_sum_audit(const LatticeSpec& spec, int n, const VertexId& v,
                                 const Rational& p, EnumerationBudget budget) {
  const ExactModel model(spec, n, budget);
  return revealment_sum_audit(model, model.region().index_of(v), p);
}

AuditReport influence_pivotal_audit(const LatticeSpec& spec, int n, const Rational& p,
                                    EnumerationBudget budget) {
  return influence_pivotal_audit(ExactModel(spec, n, budget), p);
}

AuditReport diff_ineq_audit(const LatticeSpec& spec, int n, const Rational& p,
                            EnumerationBudget budget) {
  return diff_ineq_audit(ExactModel(spec, n, budget), p);
}

std::vector<AuditReport> audit_all(const ExactModel& model, const std::vector<Rational>& ps) {
  std::vector<AuditReport> out;
  for (const auto& p : ps) {
    out.push_back(russo_audit(model, p));
    out.push_back(influence_pivotal_audit(model, p));
    out.push_back(diff_ineq_audit(model, p));
    for (int k = 1; k <= model.n(); ++k) out.push_back(osss_audit(model, k, p));
    for (std::size_t v = 0; v < model.vertex_count(); ++v) {
      out.push_back(revealment_sum_audit(model, static_cast<std::int32_t>(v), p));
    }
  }
  return out;
}

}  // namespace ccm
