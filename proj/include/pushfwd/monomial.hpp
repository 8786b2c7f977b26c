#pragma once
// Spectrum derivation, exact volumes and densities of monomial pushforward
// measures on the unit and signed cubes, and continuity classification at 0.

#include <vector>

#include "pushfwd/types.hpp"

namespace pushfwd {

// Run of coincident (within tolerance) spectrum nodes.
struct Cluster {
  double value = 0;  // representative: mean of the member nodes
  int count = 0;     // multiplicity
};

// Node data derived from an exponent pair: c_i = (b_i+1)/a_i over the axes
// with a_i > 0, and kappa = prod_{a_i>0} 1/a_i * prod_{a_i=0} 1/(b_i+1).
struct Spectrum {
  std::vector<double> nodes;      // active-axis c values, ascending
  double prefactor = 1;           // kappa
  std::vector<Cluster> clusters;  // single-linkage runs, ascending
  double cluster_tol = 0;         // absolute tolerance the clustering used
};

inline constexpr double kClusterTolRel = 1e-9;
inline constexpr double kPathSwitchGap = 0.05;

Spectrum derive_spectrum(const ExponentData& e,
                         double cluster_tol_rel = kClusterTolRel);

// Clustering over raw node values with an explicit prefactor; lets tests and
// callers evaluate synthetic spectra directly.
Spectrum spectrum_from_nodes(std::vector<double> nodes, double prefactor,
                             double cluster_tol_rel = kClusterTolRel);

// Closed-form selection.  Auto switches on the cluster gaps: the
// partial-fraction form runs only when every cluster is a singleton and the
// smallest between-cluster gap reaches kPathSwitchGap; otherwise clusters
// closer than the gap are evaluated jointly by the series form.  The forced
// modes exist for cross-validation.
enum class EvalStrategy { Auto, PartialFraction, SeriesOnly };

struct Evaluated {
  double value = 0;
  EvalPath path = EvalPath::Series;
};

// Density at q in (0,1] of the pushforward of x^B dx on [0,1]^n under x^A:
//   rho(q) = kappa * sum_i q^{c_i - 1} / prod_{j != i} (c_j - c_i)
// at pairwise distinct nodes, extended to coincident nodes by divided
// differences (a single cluster of multiplicity m gives
// kappa * q^{c-1} (-log q)^{m-1} / (m-1)!).  q outside (0,1] is a domain
// error at this level; callers hold the conventions rho(q>=1) = 0 and
// rho(0) = limit_at_zero.
double density_unit_cube(const ExponentData& e, double q);
Evaluated density_unit_cube_ex(const ExponentData& e, double q,
                               EvalStrategy strategy = EvalStrategy::Auto);
Evaluated density_from_spectrum(const Spectrum& sp, double q,
                                EvalStrategy strategy = EvalStrategy::Auto);

// Mass of {x in [0,1]^n : x^A > q} under x^B dx for q in (0,1]:
//   V(q) = kappa * (1/prod c_i - sum_i q^{c_i} / (c_i prod_{j!=i}(c_j - c_i)))
// in the partial-fraction form, series form under the same switch as the
// density.  V(0+) = total_mass, V(q>=1) = 0 are the caller-side conventions.
double volume(const ExponentData& e, double q);
Evaluated volume_ex(const ExponentData& e, double q,
                    EvalStrategy strategy = EvalStrategy::Auto);
Evaluated volume_from_spectrum(const Spectrum& sp, double q,
                               EvalStrategy strategy = EvalStrategy::Auto);

// prod_i 1/(b_i + 1), the |x^B| mass of the unit cube.
double total_mass(const ExponentData& e);

// Limit of the density at q -> 0+ together with the leading exponents:
// rho(q) ~ const * q^p (-log q)^m with p = min c_i - 1 and m one less than
// the multiplicity of the minimizing cluster.
struct LimitInfo {
  double value = 0;           // 0, positive, or +infinity
  double leading_power = 0;   // p
  int leading_log_power = 0;  // m
};
LimitInfo limit_at_zero(const ExponentData& e);
LimitInfo limit_from_spectrum(const Spectrum& sp);

enum class Parity { SomeOdd, AllEven, NonInteger };
enum class FrsCase { Case1, Case2, Outside };

Parity parity_of(const ExponentData& e);

// Density at any real q of the pushforward of |x^B| dx on [-1,1]^n under
// x^A; zero for |q| >= 1, the scaled limit at q = 0.  Some a_i odd makes the
// density even in q with factor 2^{n-1}; all even concentrates on q > 0 with
// factor 2^n.  Integer-valued A is required for that bookkeeping; passing
// require_integer_a = false lets non-integer exponents through as the
// absolute-value map |x|^A (one-sided support, factor 2^n).
double density_signed_cube(const ExponentData& e, double q,
                           bool require_integer_a = true);

// Same value plus the route tag: the route the spectrum selects wherever a
// closed form runs, Limit at the points resolved by boundary constants
// (q = 0 and everything outside the support).
Evaluated density_signed_cube_ex(const ExponentData& e, double q,
                                 bool require_integer_a = true);

// Mass of {x in [-1,1]^n : x^A > q} under |x^B| dx, for any real q.  The
// antiderivative of density_signed_cube: constant 0 above q = 1 and equal to
// the full signed-cube mass below q = -1.
double mass_above_signed(const ExponentData& e, double q,
                         bool require_integer_a = true);
Evaluated mass_above_signed_ex(const ExponentData& e, double q,
                               bool require_integer_a = true);

struct ContinuityVerdict {
  FrsCase frs_case = FrsCase::Outside;
  Parity parity = Parity::NonInteger;
  LimitInfo limit;
};

const char* to_string(FrsCase c);
const char* to_string(Parity p);

// Classification for integer exponents.  Case1: a_i <= b_i on every axis.
// Case2: some a_d = 1 and a_i <= b_i on every other axis.  Either case
// forces a finite density limit at 0; Outside carries no guarantee.
ContinuityVerdict classify(const ExponentData& e);

}  // namespace pushfwd
