#pragma once

// Exhaustive enumeration on small balls: θ_n(p) as an exact polynomial,
// influences, revealments of T_k, pivotality, and exact audits of the
// inequalities that chain them together.
//
// U_v matters only through 1{U_v < p}, so each vertex takes one of d + 1
// atomic states: corrupted (weight p) or uncorrupted with compass c
// (weight (1 - p)/d). The enumeration runs over (d + 1)^|Λ_n| atoms.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ccm/lattice.hpp"
#include "ccm/rational.hpp"

namespace ccm {

struct EnumerationBudget {
  // Limit on |Λ_n| * log2(2d), the size of the (corruption, compass) space.
  double max_bits = 36.0;

  static EnumerationBudget unlimited() {
    return EnumerationBudget{std::numeric_limits<double>::infinity()};
  }
};

// Throws EnumerationTooLarge when the ball exceeds the budget.
void check_budget(const LatticeSpec& spec, int n, const EnumerationBudget& budget);

struct ThetaPolynomial {
  LatticeSpec spec;
  int n = 0;
  Polynomial poly;

  Rational operator()(const Rational& p) const { return poly(p); }
  double operator()(double p) const { return poly(p); }
};

// Enumerates Λ_n once and answers every exact query against that table.
// Revealment tables are built on first use; the object is not safe for
// concurrent revealment() calls until then.
class ExactModel {
 public:
  ExactModel(const LatticeSpec& spec, int n, EnumerationBudget budget = {});

  const Region& region() const { return *region_; }
  int n() const { return n_; }
  int degree() const { return degree_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::uint64_t atom_count() const { return atom_count_; }

  // θ_k for 0 <= k <= n, computed on the Λ_n atom space.
  ThetaPolynomial theta(int k) const;
  ThetaPolynomial theta() const { return theta(n_); }
  // S_n(p) = Σ_{k=1..n} θ_k(p).
  Rational partial_sum(const Rational& p) const;

  // Inf_v(f) = P(f(ω) != f(ω̃_v)) with X_v resampled independently.
  Rational influence(std::int32_t v, const Rational& p) const;
  // P(flipping the corruption status of v changes f).
  Rational pivotal(std::int32_t v, const Rational& p) const;
  // P(T_k reveals X_v).
  Rational revealment(int k, std::int32_t v, const Rational& p) const;

 private:
  // p^j ((1 - p)/d)^(m - j): weight of one atom on m vertices with j corrupted.
  Rational atom_weight(std::size_t m, std::size_t j, const Rational& p) const;
  void check_index(std::int32_t v) const;
  void build_revealment() const;

  RegionPtr region_;
  int n_;
  int degree_;
  std::size_t vertex_count_;
  std::uint64_t atom_count_;

  // hits_[k][j]: atoms with j corrupted vertices on which 0 <-> ∂Λ_k.
  std::vector<std::vector<std::uint64_t>> hits_;
  // influence_[v][(j * 2 + f_corrupt) * (d + 1) + m]: configurations of the
  // other vertices with j corrupted, f at "v corrupted", and m compasses of v
  // for which f = 1.
  std::vector<std::vector<std::uint64_t>> influence_;
  // reveal_[((k - 1) * N + v) * (N + 1) + j]
  mutable std::vector<std::uint64_t> reveal_;
};

ThetaPolynomial exact_theta(const LatticeSpec& spec, int n, EnumerationBudget budget = {});
Rational exact_influence(const LatticeSpec& spec, int n, const VertexId& v, const Rational& p,
                         EnumerationBudget budget = {});
Rational exact_revealment(const LatticeSpec& spec, int n, int k, const VertexId& v,
                          const Rational& p, EnumerationBudget budget = {});
Rational exact_pivotal(const LatticeSpec& spec, int n, const VertexId& v, const Rational& p,
                       EnumerationBudget budget = {});

enum class AuditKind { inequality, identity };

struct AuditContext {
  std::string lattice;
  int n = 0;
  std::optional<int> k;
  Rational p;
  std::optional<VertexId> v;
};

// lhs <= rhs (inequality) or lhs == rhs (identity), decided exactly.
struct AuditReport {
  std::string name;
  AuditKind kind = AuditKind::inequality;
  Rational lhs;
  Rational rhs;
  bool holds = false;
  Rational slack;  // rhs - lhs
  AuditContext context;
};

AuditReport make_report(std::string name, AuditKind kind, Rational lhs, Rational rhs,
                        AuditContext context);

// θ_n'(p) = Σ_v P(v pivotal).
AuditReport russo_audit(const ExactModel& model, const Rational& p);
// θ_n(1 - θ_n) <= Σ_v Rev_v(T_k) Inf_v(f).
AuditReport osss_audit(const ExactModel& model, int k, const Rational& p);
// Σ_{k=1..n} Rev_v(T_k) <= 2d S_n(p).
AuditReport revealment_sum_audit(const ExactModel& model, std::int32_t v, const Rational& p);
// ½ Σ_v Inf_v(f) <= θ_n'(p).
AuditReport influence_pivotal_audit(const ExactModel& model, const Rational& p);
// n / (4d S_n) θ_n(1 - θ_n) <= θ_n'(p).
AuditReport diff_ineq_audit(const ExactModel& model, const Rational& p);

AuditReport russo_audit(const LatticeSpec& spec, int n, const Rational& p,
                        EnumerationBudget budget = {});
AuditReport osss_audit(const LatticeSpec& spec, int n, int k, const Rational& p,
                       EnumerationBudget budget = {});
AuditReport revealment_sum_audit(const LatticeSpec& spec, int n, const VertexId& v,
                                 const Rational& p, EnumerationBudget budget = {});
AuditReport influence_pivotal_audit(const LatticeSpec& spec, int n, const Rational& p,
                                    EnumerationBudget budget = {});
AuditReport diff_ineq_audit(const LatticeSpec& spec, int n, const Rational& p,
                            EnumerationBudget budget = {});

// Every audit for every k in 1..n and every v in Λ_n, for each p.
std::vector<AuditReport> audit_all(const ExactModel& model, const std::vector<Rational>& ps);

}  // namespace ccm
