// Relation pipelines: the theta divisor and its powers, coefficient
// extraction from the DR relations, boundary expressions for psi/kappa
// monomials and the reduction to strata with property star.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "taut/pixton.hpp"
#include "taut/strata.hpp"

namespace taut {

// --- theta divisor --------------------------------------------------------

// -1/4 sum_{h=0}^{g} sum_{P subset [n]} a_P^2 delta_h^P with a_P in the
// variables a1..an, unstable conventions applied and the (h,P)/(g-h,P^c)
// double count kept.
PClass theta_divisor(int g, int n);
QClass theta_divisor_at(int g, const RampVector& A);

// The formal (g+1)-st power of theta_divisor(g, n).
PClass theta_power_relation(int g, int n);
// Same for A given as polynomials (e.g. with the last entry eliminated).
PClass theta_power_relation(int g, const std::vector<MultiPoly>& A);
PClass theta_divisor(int g, const std::vector<MultiPoly>& A);

// sum_{k <= max_degree} Theta^k / k! at an integer A.
QClass exp_theta(int g, const RampVector& A, int max_degree);

// a1..a_{n-1}, -(a1+...+a_{n-1}).
std::vector<MultiPoly> eliminated_ramp(int n);

// --- DR relations ---------------------------------------------------------

// (g+1)! * Pi_*(Psi_C [Omega_{g,A}]_{g+1}) as a function of integer
// (a_1..a_{N-1}) with a_N = -(a_1+...+a_{N-1}), and its coefficients.
class DRRelation {
 public:
  // multiplier: psi exponent per leg of M_{g,N}; forget: legs pushed forward,
  // any order.
  DRRelation(int g, int N, std::vector<int> multiplier, std::vector<int> forget);
  ~DRRelation();
  DRRelation(DRRelation&&) noexcept;

  int genus() const;
  int source_markings() const;
  int target_markings() const;
  std::string describe() const;

  QClass evaluate(const std::vector<long>& a) const;
  // Coefficient of prod a_i^{m_i}, times (g+1)!; |m| must be 2g+2.
  QClass coefficient(const std::vector<int>& monomial) const;
  // The part of the coefficient coming from strata with at least one edge on
  // the source space.
  QClass boundary_source_coefficient(const std::vector<int>& monomial) const;
  std::size_t evaluations() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

QClass dr_relation_coefficient(int g, const std::vector<int>& monomial, const std::vector<int>& multiplier,
                               const std::vector<int>& forget);

// --- boundary expressions -----------------------------------------------

struct ProvenanceStep {
  std::string relation;
  std::string a_monomial;
  std::string step;
  bool operator==(const ProvenanceStep&) const = default;
};

struct BoundaryExpression {
  QClass value;
  std::vector<ProvenanceStep> provenance;
};

struct RelationRecord {
  int g = 0;
  int n = 0;
  std::string monomial;
  BoundaryExpression expression;
};

std::string monomial_key(int g, int n, const Monomial& m);
Monomial monomial_of(const Stratum& edgeless);
QClass boundary_only(const QClass& c);  // throws DefectError on an edgeless term

class RelationDatabase;

// Caches relation families and expressions. All derivations go through DR
// relations on M_{g,2g+3}, the pullback formulas and the forgetful maps.
class BoundaryEngine {
 public:
  explicit BoundaryEngine(RelationDatabase* db = nullptr);
  ~BoundaryEngine();

  // Refuses (ValidationError) when deg < g, or deg < g - 1 for n = 0, or for
  // the degree-0 monomial.
  BoundaryExpression express(int g, int n, const Monomial& m);

  // Replaces every edgeless term of c by its boundary expression.
  BoundaryExpression express_class(const QClass& c);

  // Boundary expressions for all degree-(g+1) psi monomials on M_{g,2g+3} by
  // descending induction on the power of psi_{2g+3}. The second member holds,
  // per relation used, its (a-monomial, relation class).
  std::vector<RelationRecord> psi_lemma(int g, std::vector<std::pair<std::string, QClass>>* relations = nullptr);

  // The relation obtained from the a-monomial tied to K in the family with
  // multiplier Psi_C, pushed to M_{g,n}; asserts that its boundary part on the
  // source pushes to the boundary.
  QClass pushforward_relation(int g, int n, const std::vector<int>& multiplier, const std::vector<int>& a_monomial);

  // Rewrites c as a combination of strata with property star.
  QClass star_reduce(const QClass& c);

  std::size_t cached_expressions() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool has_property_star(const Stratum& s);
int genus_zero_vertices(const Stratum& s);

// Convenience wrappers over a process-wide engine.
BoundaryExpression boundary_expression(int g, int n, const Monomial& m);
QClass theorem_star_reduce(const QClass& c);
std::vector<RelationRecord> psi_boundary_lemma(int g);

}  // namespace taut
