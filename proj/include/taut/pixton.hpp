// Weightings modulo r and the DR cycle class Omega_{g,A}: the graph sum at a fixed
// r, its interpolation in r, and the constant term.
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "taut/strata.hpp"

namespace taut {

using RampVector = std::vector<long>;

// Throws ValidationError unless A has n entries summing to zero.
void validate_ramp(int n, const RampVector& A);

// Calls fn(w) once per weighting modulo r; w is indexed by half-edge. Values on
// the complement of a spanning tree are free, the tree values are solved from
// the leaves inwards.
void for_each_weighting(const StableGraph& g, const RampVector& A, long r,
                        const std::function<void(const std::vector<long>&)>& fn);
std::vector<std::vector<long>> enumerate_weightings(const StableGraph& g, const RampVector& A, long r);
bool is_weighting(const StableGraph& g, const RampVector& A, long r, const std::vector<long>& w);

// Stable graphs of type (g, n) with at most max_edges edges, computed once per
// process.
const std::vector<StableGraph>& cached_stable_graphs(int g, int n, int max_edges);

struct OmegaOptions {
  int min_degree = 0;
  int max_degree = 0;
  // Terms rejected here are never computed. Receives the undecorated-by-kappa
  // stratum before normalization.
  std::function<bool(const Stratum&)> keep;
};

// Omega on M_{g,n}, truncated to min_degree..max_degree. Graph data
// and decorations are prepared once; evaluation at a given A is then cheap.
class PixtonClass {
 public:
  PixtonClass(int g, int n, OmegaOptions options);
  ~PixtonClass();
  PixtonClass(PixtonClass&&) noexcept;
  PixtonClass& operator=(PixtonClass&&) noexcept;

  int genus() const;
  int markings() const;

  // Omega^r_{g,A} at one value of r.
  QClass at_r(const RampVector& A, long r) const;

  // Coefficients as polynomials in r through the given samples (degree at most
  // samples.size() - 1, no consistency check).
  PClass interpolate(const RampVector& A, const std::vector<long>& samples) const;

  // Constant term in r. Each coefficient is interpolated on two disjoint
  // sample sets which must agree; on disagreement the samples move up and the
  // degree bound grows, and after the last attempt InterpolationMismatch is
  // thrown.
  QClass constant_term(const RampVector& A) const;

  // Degree bound in r used for the first attempt: twice the top codimension.
  int degree_bound() const;

  // The two disjoint sample sets of the given attempt.
  std::pair<std::vector<long>, std::vector<long>> sample_sets(const RampVector& A, int attempt = 0) const;

  std::size_t graph_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

QClass omega_r(int g, const RampVector& A, long r, int max_degree);
QClass omega_constant_term(int g, const RampVector& A, int max_degree);

}  // namespace taut
