#pragma once
// Complete homogeneous symmetric polynomials h_k and divided differences of
// the exponential, the scalar kernels behind every closed-form density here.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pushfwd::symfun {

// h_k(nodes), the sum of all monomials of total degree k in the nodes
// (with repetition).  h_0 = 1 and h_k = 0 for k < 0, including over an
// empty node list.
double complete_homogeneous(int k, std::span<const double> nodes);

// binom(k+n-1, n-1) * max_abs^k, an upper bound on |h_k| over any n nodes
// bounded by max_abs in absolute value (monomial count times max monomial).
double h_tail_bound(int k, int n, double max_abs);

// Thrown when a certified series truncation cannot reach its tolerance
// within the term cap.  Carries the partial sum and the outstanding bound.
struct EvaluationError : std::runtime_error {
  double partial_sum;
  double tail_bound;
  int terms;
  EvaluationError(const std::string& msg, double partial, double bound, int t)
      : std::runtime_error(msg), partial_sum(partial), tail_bound(bound), terms(t) {}
};

inline constexpr int kSeriesTermCap = 10000;

// Divided difference of t -> exp(t*s) over the nodes, evaluated as
//   sum_{i>=0} h_{i-n+1}(nodes) s^i / i!,   n = nodes.size() >= 1.
// At pairwise distinct nodes this equals sum_r exp(z_r s) / prod_{j!=r}
// (z_r - z_j); at a single node of multiplicity m it equals
// exp(z s) s^{m-1} / (m-1)!.  Truncation is certified through h_tail_bound:
// once the geometric tail closure applies, summation stops when the bound
// drops below rel_tol times the accumulated value.  Throws EvaluationError
// if kSeriesTermCap terms do not suffice.
double exp_series(std::span<const double> nodes, double s, double rel_tol = 1e-13);

namespace detail {

// Extended-precision core of exp_series, for callers that fold the result
// into further long double arithmetic.
long double exp_series_ld(std::span<const double> nodes, long double s,
                          double rel_tol);

// Lazily extended table of h_0..h_k over a fixed node list, built by the
// one-node-at-a-time recurrence h[j] += z * h[j-1] in extended precision.
class HSeries {
 public:
  explicit HSeries(std::vector<double> nodes);
  long double at(int k);

 private:
  void extend(int k);
  std::vector<double> nodes_;
  std::vector<long double> h_;
};

}  // namespace detail

}  // namespace pushfwd::symfun
