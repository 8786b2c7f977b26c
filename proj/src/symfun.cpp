#include "pushfwd/symfun.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace pushfwd::symfun {

namespace detail {

HSeries::HSeries(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  h_.assign(1, 1.0L);
}

void HSeries::extend(int k) {
  int cap = static_cast<int>(h_.size()) - 1;
  int target = std::max(k, cap == 0 ? 63 : 2 * cap);
  std::vector<long double> h(static_cast<std::size_t>(target) + 1, 0.0L);
  h[0] = 1.0L;
  for (double z : nodes_) {
    for (int j = 1; j <= target; ++j) h[j] += static_cast<long double>(z) * h[j - 1];
  }
  h_ = std::move(h);
}

long double HSeries::at(int k) {
  if (k < 0) return 0.0L;
  if (k >= static_cast<int>(h_.size())) extend(k);
  return h_[static_cast<std::size_t>(k)];
}

}  // namespace detail

double complete_homogeneous(int k, std::span<const double> nodes) {
  if (k < 0) return 0.0;
  if (k == 0) return 1.0;
  if (nodes.empty()) return 0.0;
  std::vector<long double> h(static_cast<std::size_t>(k) + 1, 0.0L);
  h[0] = 1.0L;
  for (double z : nodes) {
    for (int j = 1; j <= k; ++j) h[j] += static_cast<long double>(z) * h[j - 1];
  }
  return static_cast<double>(h[static_cast<std::size_t>(k)]);
}

double h_tail_bound(int k, int n, double max_abs) {
  if (k < 0 || n <= 0) return 0.0;
  if (max_abs < 0) throw std::invalid_argument("h_tail_bound: max_abs must be >= 0");
  // binom(k+n-1, n-1) computed multiplicatively; stays exact well past any k
  // reachable under the term cap.
  long double binom = 1.0L;
  for (int j = 1; j <= n - 1; ++j)
    binom *= static_cast<long double>(k + j) / static_cast<long double>(j);
  long double value = binom * powl(static_cast<long double>(max_abs), k);
  return static_cast<double>(value);
}

double exp_series(std::span<const double> nodes, double s, double rel_tol) {
  return static_cast<double>(
      detail::exp_series_ld(nodes, static_cast<long double>(s), rel_tol));
}

long double detail::exp_series_ld(std::span<const double> nodes, long double s,
                                  double rel_tol) {
  const int n = static_cast<int>(nodes.size());
  if (n < 1) throw std::invalid_argument("exp_series: nodes must be nonempty");
  if (!(rel_tol > 0)) throw std::invalid_argument("exp_series: rel_tol must be positive");

  long double max_abs = 0.0L;
  for (double z : nodes) max_abs = std::max(max_abs, fabsl(static_cast<long double>(z)));
  const long double ms = max_abs * fabsl(s);

  detail::HSeries h(std::vector<double>(nodes.begin(), nodes.end()));

  // Terms t_i = h_{i-n+1}(nodes) s^i / i!, first nonzero at i = n-1.
  // Bound terms by beta_i = binom(i, n-1) max_abs^{i-n+1} |s|^i / i! with the
  // exact ratio beta_{i+1}/beta_i = max_abs*|s| / (i+2-n); once that ratio is
  // <= 1/2 the tail is at most twice the next bound.
  long double acc = 0.0L, comp = 0.0L;
  long double pw = 1.0L;  // s^i / i!
  long double beta = 1.0L / [&] {
    long double f = 1.0L;
    for (int j = 2; j <= n - 1; ++j) f *= j;
    return f;
  }();  // beta_{n-1} = |s|^{n-1} / (n-1)!  (|s| powers folded in below)
  for (int i = 1; i <= n - 1; ++i) beta *= fabsl(s);

  for (int i = 0; i <= kSeriesTermCap; ++i) {
    if (i >= n - 1) {
      long double term = h.at(i - n + 1) * pw;
      long double y = term - comp;
      long double t = acc + y;
      comp = (t - acc) - y;
      acc = t;

      long double ratio = ms / static_cast<long double>(i + 2 - n);
      long double next_beta = beta * ratio;
      if (ratio <= 0.5L) {
        long double tail = 2.0L * next_beta;
        if (tail <= static_cast<long double>(rel_tol) * fabsl(acc) + 1e-300L)
          return acc;
      }
      beta = next_beta;
    }
    pw *= s / static_cast<long double>(i + 1);
  }
  throw EvaluationError("exp_series: term cap reached before certified convergence",
                        static_cast<double>(acc), static_cast<double>(beta),
                        kSeriesTermCap);
}

}  // namespace pushfwd::symfun
