#pragma once
// Shared helpers for the unit and acceptance suites: independent reference
// implementations (brute-force symmetric polynomials, direct partial
// fractions), a tanh-sinh integrator for singular endpoints, a small least
// squares solver, a deterministic test sampler, and a CLI subprocess runner.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pushfwd/rng.hpp"

namespace testutil {

// h_k by explicit enumeration of all degree-k monomials, small inputs only.
inline long double brute_h(int k, std::span<const double> x) {
  if (k < 0) return 0.0L;
  if (x.empty()) return k == 0 ? 1.0L : 0.0L;
  long double acc = 0.0L, pw = 1.0L;
  for (int e = 0; e <= k; ++e) {
    acc += pw * brute_h(k - e, x.subspan(1));
    pw *= static_cast<long double>(x[0]);
  }
  return acc;
}

// Divided difference of t -> exp(t s) over pairwise distinct nodes, summed
// literally term by term.
inline long double direct_dd_exp(std::span<const double> x, long double s) {
  long double acc = 0.0L;
  for (std::size_t r = 0; r < x.size(); ++r) {
    long double denom = 1.0L;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != r) denom *= static_cast<long double>(x[r]) - x[j];
    acc += expl(x[r] * s) / denom;
  }
  return acc;
}

// Integral of f over (0,1) by tanh-sinh quadrature; handles integrable power
// and log singularities at the endpoints.  f is evaluated only at interior
// points representable as double.
template <class F>
double tanh_sinh_01(F&& f, double rel_tol = 1e-11) {
  constexpr long double kPi = 3.14159265358979323846264338327950288L;
  constexpr double kTMax = 6.8;
  auto contrib = [&](long double t) -> long double {
    const long double u = 0.5L * kPi * sinhl(t);
    const long double em = expl(-2.0L * fabsl(u));
    const long double x = (u >= 0) ? 1.0L / (1.0L + em) : em / (1.0L + em);
    const long double w = kPi * coshl(t) * em / ((1.0L + em) * (1.0L + em));
    const double xd = static_cast<double>(x);
    if (xd <= 0.0 || xd >= 1.0 || w == 0.0L) return 0.0L;
    return w * static_cast<long double>(f(xd));
  };
  auto level_sum = [&](long double h, bool odd_only) {
    long double acc = odd_only ? 0.0L : contrib(0.0L);
    const long double step = odd_only ? 2.0L * h : h;
    const long double start = odd_only ? h : step;
    for (long double t = start; t <= kTMax; t += step) {
      const long double term = contrib(t) + contrib(-t);
      acc += term;
      if (fabsl(term) < 1e-24L * fabsl(acc) && t > 2.0L) break;
    }
    return acc;
  };

  long double h = 1.0L;
  long double total = level_sum(h, false);
  long double value = h * total;
  for (int level = 1; level <= 14; ++level) {
    h *= 0.5L;
    total += level_sum(h, true);
    const long double next = h * total;
    const bool settled = fabsl(next - value) <= rel_tol * fabsl(next);
    value = next;
    if (settled && level >= 5) return static_cast<double>(value);
  }
  return static_cast<double>(value);
}

// Least squares fit min ||A c - y|| by scaled normal equations and Cholesky
// in long double.  A is row major, m rows and p columns, m >= p.
inline std::vector<long double> least_squares(const std::vector<long double>& a,
                                              const std::vector<long double>& y,
                                              std::size_t p) {
  const std::size_t m = y.size();
  if (p == 0 || m < p || a.size() != m * p)
    throw std::invalid_argument("least_squares: bad shapes");
  std::vector<long double> scale(p, 0.0L);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < p; ++j)
      scale[j] = std::max(scale[j], fabsl(a[i * p + j]));
  for (auto& s : scale)
    if (s == 0.0L) s = 1.0L;

  std::vector<long double> g(p * p, 0.0L), rhs(p, 0.0L);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const long double aij = a[i * p + j] / scale[j];
      rhs[j] += aij * y[i];
      for (std::size_t l = 0; l <= j; ++l)
        g[j * p + l] += aij * a[i * p + l] / scale[l];
    }

  // Cholesky g = L L^T on the lower triangle, with a tiny ridge for safety.
  const long double ridge = 1e-28L;
  for (std::size_t j = 0; j < p; ++j) g[j * p + j] += ridge;
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t l = 0; l < j; ++l) {
      long double s = g[j * p + l];
      for (std::size_t t = 0; t < l; ++t) s -= g[j * p + t] * g[l * p + t];
      g[j * p + l] = s / g[l * p + l];
    }
    long double s = g[j * p + j];
    for (std::size_t t = 0; t < j; ++t) s -= g[j * p + t] * g[j * p + t];
    if (s <= 0.0L) throw std::runtime_error("least_squares: not positive definite");
    g[j * p + j] = sqrtl(s);
  }
  std::vector<long double> c(p);
  for (std::size_t j = 0; j < p; ++j) {
    long double s = rhs[j];
    for (std::size_t t = 0; t < j; ++t) s -= g[j * p + t] * c[t];
    c[j] = s / g[j * p + j];
  }
  for (std::size_t jj = p; jj-- > 0;) {
    long double s = c[jj];
    for (std::size_t t = jj + 1; t < p; ++t) s -= g[t * p + jj] * c[t];
    c[jj] = s / g[jj * p + jj];
  }
  for (std::size_t j = 0; j < p; ++j) c[j] /= scale[j];
  return c;
}

// Deterministic sampler for test data, a thin counter on top of CounterRng.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed, std::uint64_t stream = 0)
      : gen_(seed, stream) {}
  double next() { return gen_.uniform(count_++); }
  double range(double lo, double hi) { return lo + (hi - lo) * next(); }
  int index(int m) {
    return std::min(m - 1, static_cast<int>(next() * static_cast<double>(m)));
  }

 private:
  pushfwd::rng::CounterRng gen_;
  std::uint64_t count_ = 0;
};

#ifdef PUSHFWD_CLI_PATH
struct CliResult {
  int exit_code;
  std::string output;
};

// Runs the installed CLI with the given argument string, stderr folded into
// stdout, and returns the exit code and combined output.
inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PUSHFWD_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  const int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return {code, out};
}
#endif

}  // namespace testutil
