#include "pushfwd/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pushfwd/symfun.hpp"

namespace pushfwd {

namespace {

constexpr double kEngineRelTol = 1e-13;

struct Kahan {
  long double acc = 0.0L, comp = 0.0L;
  void add(long double term) {
    long double y = term - comp;
    long double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }
};

// Cluster index range [c0,c1) and node index range [n0,n1) of one
// evaluation group.
struct GroupRange {
  int c0, c1, n0, n1;
};

// Merge consecutive clusters whose representatives sit closer than the
// path-switch gap; sub-threshold neighbors must be evaluated jointly or the
// combination step cancels catastrophically.
std::vector<GroupRange> evaluation_groups(const Spectrum& sp, EvalStrategy st) {
  std::vector<GroupRange> gs;
  const int nc = static_cast<int>(sp.clusters.size());
  if (st == EvalStrategy::SeriesOnly) {
    gs.push_back({0, nc, 0, static_cast<int>(sp.nodes.size())});
    return gs;
  }
  int c0 = 0, n0 = 0, n = n0;
  for (int c = 0; c < nc; ++c) {
    n += sp.clusters[static_cast<std::size_t>(c)].count;
    bool last = (c == nc - 1);
    if (last || sp.clusters[static_cast<std::size_t>(c) + 1].value -
                        sp.clusters[static_cast<std::size_t>(c)].value >=
                    kPathSwitchGap) {
      gs.push_back({c0, c + 1, n0, n});
      c0 = c + 1;
      n0 = n;
    }
  }
  return gs;
}

std::vector<long double> conv(const std::vector<long double>& x,
                              const std::vector<long double>& y) {
  const std::size_t d = x.size();
  std::vector<long double> z(d, 0.0L);
  for (std::size_t i = 0; i < d; ++i) {
    if (x[i] == 0.0L) continue;
    for (std::size_t j = 0; j + i < d; ++j) z[i + j] += x[i] * y[j];
  }
  return z;
}

// Taylor coefficients about omega of prod (t - p)^{-1} over the poles,
// folded into coef/bnd (signed values and absolute bounds).
void fold_poles(std::vector<long double>& coef, std::vector<long double>& bnd,
                long double omega, const std::vector<long double>& poles) {
  const std::size_t d = coef.size();
  for (long double p : poles) {
    std::vector<long double> g(d), gb(d);
    long double delta = omega - p;
    long double cur = 1.0L / delta;
    for (std::size_t r = 0; r < d; ++r) {
      g[r] = cur;
      gb[r] = fabsl(cur);
      cur *= -1.0L / delta;
    }
    coef = conv(coef, g);
    bnd = conv(bnd, gb);
  }
}

// Divided difference over a node multiset of the function whose Taylor
// coefficients about the multiset mean are supplied by `build`:
//   dd = sum_{d >= m-1} T_d h_{d-m+1}(nodes - mean).
// |h_k| <= binom(d, m-1) R^{d-m+1} with R the centered radius; truncation
// waits for a sustained geometric decrease of the term bounds, then requires
// the projected tail below rel_tol of the accumulated value.  Throws
// EvaluationError at the term cap.
template <class BuildCoeffs>
long double dd_taylor(const std::vector<long double>& centered, long double R,
                      BuildCoeffs&& build, double rel_tol, const char* ctx) {
  const int m = static_cast<int>(centered.size());
  int cap = 128;
  std::vector<long double> T, B;
  build(cap, T, B);

  std::vector<long double> h(static_cast<std::size_t>(cap) + 1, 0.0L);
  auto fill_h = [&](int upto) {
    std::fill(h.begin(), h.end(), 0.0L);
    h.resize(static_cast<std::size_t>(upto) + 1, 0.0L);
    h[0] = 1.0L;
    for (long double z : centered)
      for (int j = 1; j <= upto; ++j)
        h[static_cast<std::size_t>(j)] += z * h[static_cast<std::size_t>(j) - 1];
  };
  fill_h(cap);

  Kahan sum;
  long double binom = 1.0L;  // binom(d, m-1), starting at d = m-1
  long double rp = 1.0L;     // R^{d-m+1}
  long double prev_bound = std::numeric_limits<long double>::infinity();
  int streak = 0;
  for (int d = m - 1; d <= symfun::kSeriesTermCap; ++d) {
    if (d >= cap) {
      cap *= 2;
      build(cap, T, B);
      fill_h(cap);
    }
    std::size_t k = static_cast<std::size_t>(d - m + 1);
    sum.add(T[static_cast<std::size_t>(d)] * h[k]);
    long double bound = B[static_cast<std::size_t>(d)] * binom * rp;
    streak = (bound <= 0.75L * prev_bound) ? streak + 1 : 0;
    prev_bound = bound;
    if (streak >= 4 &&
        3.0L * bound <= static_cast<long double>(rel_tol) * fabsl(sum.acc) + 1e-300L)
      return sum.acc;
    if (R == 0.0L && d >= m - 1 + 1) return sum.acc;  // exact confluent cutoff
    binom *= static_cast<long double>(d + 1) / static_cast<long double>(d + 2 - m);
    rp *= R;
  }
  throw symfun::EvaluationError(
      std::string(ctx) + ": term cap reached before convergence",
      static_cast<double>(sum.acc), static_cast<double>(prev_bound),
      symfun::kSeriesTermCap);
}

struct GroupView {
  std::vector<long double> wnodes;  // member nodes, w = 1 - c
  std::vector<long double> wpoles;  // all other nodes, w = 1 - c
  long double omega;                // mean of member w nodes
  long double radius;               // max |w - omega|
};

GroupView make_group_view(const Spectrum& sp, const GroupRange& g) {
  GroupView v;
  Kahan mean;
  for (int i = 0; i < static_cast<int>(sp.nodes.size()); ++i) {
    long double w = 1.0L - static_cast<long double>(sp.nodes[static_cast<std::size_t>(i)]);
    if (i >= g.n0 && i < g.n1) {
      v.wnodes.push_back(w);
      mean.add(w);
    } else {
      v.wpoles.push_back(w);
    }
  }
  v.omega = mean.acc / static_cast<long double>(v.wnodes.size());
  v.radius = 0.0L;
  for (long double w : v.wnodes) v.radius = std::max(v.radius, fabsl(w - v.omega));
  return v;
}

long double psi_at(const GroupView& v, long double t) {
  long double p = 1.0L;
  for (long double w : v.wpoles) p *= 1.0L / (t - w);
  return p;
}

// Group contribution to rho/kappa: divided difference over the group nodes of
// exp(t s) * prod_ext (t - w_j)^{-1}.
long double density_group(const GroupView& v, long double s, double rel_tol) {
  if (v.wnodes.size() == 1)
    return expl(v.wnodes[0] * s) * psi_at(v, v.wnodes[0]);

  std::vector<long double> centered(v.wnodes.size());
  for (std::size_t i = 0; i < v.wnodes.size(); ++i) centered[i] = v.wnodes[i] - v.omega;

  auto build = [&](int cap, std::vector<long double>& T, std::vector<long double>& B) {
    std::size_t d = static_cast<std::size_t>(cap) + 1;
    T.assign(d, 0.0L);
    long double pw = 1.0L;
    for (std::size_t k = 0; k < d; ++k) {
      T[k] = pw;  // s^k / k!
      pw *= s / static_cast<long double>(k + 1);
    }
    B = T;  // s > 0: the exp coefficients are their own bound
    fold_poles(T, B, v.omega, v.wpoles);
  };
  long double dd = dd_taylor(centered, v.radius, build, rel_tol, "density series");
  return expl(v.omega * s) * dd;
}

// The mass form V/kappa = 1/prod c - sum_i q^{c_i} / (c_i prod_{j!=i}(c_j -
// c_i)) is (-1)^n times the divided difference of q^t over the multiset
// {0, c_1, ..., c_n}: the 1/c_i weights and the constant term are the
// partial-fraction contribution of the extra node at zero.  Evaluating that
// divided difference group by group keeps q^t, an entire function, as the
// expanded kernel, so the truncation bound of every group series decays
// factorially with no pole-radius restriction.
struct MassGroup {
  std::vector<long double> cnodes;  // member nodes of {0} + spectrum
  std::vector<long double> cpoles;  // the remaining augmented nodes
  long double mu;                   // mean of member nodes
  long double radius;               // max |c - mu|
};

std::vector<MassGroup> mass_groups(const Spectrum& sp, EvalStrategy st) {
  const int n = static_cast<int>(sp.nodes.size());
  std::vector<long double> caug;
  caug.reserve(static_cast<std::size_t>(n) + 1);
  caug.push_back(0.0L);
  for (double c : sp.nodes) caug.push_back(static_cast<long double>(c));

  std::vector<std::pair<int, int>> ranges;  // [lo,hi) over caug
  if (st == EvalStrategy::SeriesOnly) {
    ranges.emplace_back(0, n + 1);
  } else {
    const bool zero_chains = sp.clusters.front().value < kPathSwitchGap;
    if (!zero_chains) ranges.emplace_back(0, 1);
    bool first = true;
    for (const GroupRange& g : evaluation_groups(sp, st)) {
      ranges.emplace_back(first && zero_chains ? 0 : g.n0 + 1, g.n1 + 1);
      first = false;
    }
  }

  std::vector<MassGroup> out;
  out.reserve(ranges.size());
  for (auto [lo, hi] : ranges) {
    MassGroup v;
    Kahan mean;
    for (int i = 0; i <= n; ++i) {
      if (i >= lo && i < hi) {
        v.cnodes.push_back(caug[static_cast<std::size_t>(i)]);
        mean.add(caug[static_cast<std::size_t>(i)]);
      } else {
        v.cpoles.push_back(caug[static_cast<std::size_t>(i)]);
      }
    }
    v.mu = mean.acc / static_cast<long double>(v.cnodes.size());
    v.radius = 0.0L;
    for (long double c : v.cnodes) v.radius = std::max(v.radius, fabsl(c - v.mu));
    out.push_back(std::move(v));
  }
  return out;
}

long double mass_group_value(const MassGroup& v, long double lnq, double rel_tol) {
  auto inv_poles = [&](long double t) {
    long double p = 1.0L;
    for (long double c : v.cpoles) p *= 1.0L / (t - c);
    return p;
  };
  if (v.cnodes.size() == 1)
    return expl(v.cnodes[0] * lnq) * inv_poles(v.cnodes[0]);

  std::vector<long double> centered(v.cnodes.size());
  for (std::size_t i = 0; i < v.cnodes.size(); ++i) centered[i] = v.cnodes[i] - v.mu;

  auto build = [&](int cap, std::vector<long double>& T, std::vector<long double>& B) {
    std::size_t d = static_cast<std::size_t>(cap) + 1;
    T.assign(d, 0.0L);
    B.assign(d, 0.0L);
    long double pw = 1.0L;
    for (std::size_t k = 0; k < d; ++k) {
      T[k] = pw;  // (ln q)^k / k!
      B[k] = fabsl(pw);
      pw *= lnq / static_cast<long double>(k + 1);
    }
    fold_poles(T, B, v.mu, v.cpoles);
  };
  long double dd = dd_taylor(centered, v.radius, build, rel_tol, "volume series");
  return expl(v.mu * lnq) * dd;
}

void require_valid(const Spectrum& sp) {
  if (sp.nodes.empty())
    throw std::invalid_argument("spectrum: at least one node required");
  if (!(sp.prefactor > 0) || !std::isfinite(sp.prefactor))
    throw std::invalid_argument("spectrum: prefactor must be positive and finite");
}

bool strictly_distinct(const Spectrum& sp) {
  for (std::size_t i = 1; i < sp.nodes.size(); ++i)
    if (sp.nodes[i] == sp.nodes[i - 1]) return false;
  return true;
}

// sum_{k >= m} z^k / k!, the exponential tail past the first m terms.
long double exp_tail(long double z, int m) {
  if (m <= 0) return expl(z);
  if (m == 1) return expm1l(z);
  if (fabsl(z) >= static_cast<long double>(m)) {
    long double prefix = 0.0L, pw = 1.0L;
    for (int k = 0; k < m; ++k) {
      prefix += pw;
      pw *= z / (k + 1);
    }
    return expl(z) - prefix;
  }
  long double pw = 1.0L;
  for (int k = 1; k <= m; ++k) pw *= z / k;
  Kahan acc;
  acc.add(pw);
  for (int k = m; k < m + 600; ++k) {
    pw *= z / (k + 1);
    acc.add(pw);
    if (fabsl(pw) <= 1e-21L * fabsl(acc.acc)) break;
  }
  return acc.acc;
}

// Partial fractions with the terms recentered at the node mean: subtracting
// the exactly vanishing sums sum_i P(c_i)/prod_{j!=i}(c_j - c_i), deg P <=
// n-2, turns each numerator q^{c_i-1} into q^{cbar-1} times an exponential
// tail, which removes the catastrophic cancellation at small node gaps
// while computing the identical closed form.  A huge spread (where the
// recentering factors would overflow) has no cancellation to remove, so the
// literal sum takes over.
Evaluated density_pf(const Spectrum& sp, double q) {
  const long double lnq = logl(static_cast<long double>(q));
  const std::size_t n = sp.nodes.size();
  Kahan cmean;
  for (double c : sp.nodes) cmean.add(static_cast<long double>(c));
  const long double cbar = cmean.acc / static_cast<long double>(n);

  long double spread = 0.0L;
  for (double c : sp.nodes)
    spread = std::max(spread, fabsl((static_cast<long double>(c) - cbar) * lnq));

  Kahan sum;
  for (std::size_t i = 0; i < n; ++i) {
    long double ci = sp.nodes[i];
    long double denom = 1.0L;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) denom *= static_cast<long double>(sp.nodes[j]) - ci;
    if (spread > 500.0L)
      sum.add(expl((ci - 1.0L) * lnq) / denom);
    else
      sum.add(exp_tail((ci - cbar) * lnq, static_cast<int>(n) - 1) / denom);
  }
  long double scale = spread > 500.0L ? 1.0L : expl((cbar - 1.0L) * lnq);
  return {static_cast<double>(static_cast<long double>(sp.prefactor) * scale *
                              sum.acc),
          EvalPath::PartialFraction};
}

// Same recentering as density_pf, applied to the mass form written as
// (-1)^n times the divided difference of q^t over {0, c_1, ..., c_n}; the
// extra node raises the annihilated polynomial degree by one, so the
// exponential tails start at order n + 1 - 1.
Evaluated volume_pf(const Spectrum& sp, double q) {
  const long double lnq = logl(static_cast<long double>(q));
  const std::size_t m = sp.nodes.size() + 1;
  std::vector<long double> y(m, 0.0L);
  for (std::size_t i = 1; i < m; ++i) y[i] = sp.nodes[i - 1];
  Kahan ymean;
  for (long double v : y) ymean.add(v);
  const long double ybar = ymean.acc / static_cast<long double>(m);

  long double spread = 0.0L;
  for (long double v : y) spread = std::max(spread, fabsl((v - ybar) * lnq));

  Kahan sum;
  for (std::size_t k = 0; k < m; ++k) {
    long double denom = 1.0L;
    for (std::size_t j = 0; j < m; ++j)
      if (j != k) denom *= y[k] - y[j];
    if (spread > 500.0L)
      sum.add(expl(y[k] * lnq) / denom);
    else
      sum.add(exp_tail((y[k] - ybar) * lnq, static_cast<int>(m) - 1) / denom);
  }
  long double scale = spread > 500.0L ? 1.0L : expl(ybar * lnq);
  if (m % 2 == 0) scale = -scale;
  return {static_cast<double>(static_cast<long double>(sp.prefactor) * scale *
                              sum.acc),
          EvalPath::PartialFraction};
}

EvalPath route_label(const Spectrum& sp) {
  auto groups = evaluation_groups(sp, EvalStrategy::Auto);
  bool all_single_node = true;
  for (const GroupRange& g : groups)
    if (g.n1 - g.n0 != 1) all_single_node = false;
  if (all_single_node) return EvalPath::PartialFraction;
  if (sp.clusters.size() == 1 && sp.clusters[0].count >= 2)
    return EvalPath::Confluent;
  return EvalPath::Series;
}

Evaluated eval_spectrum(const Spectrum& sp, double q, EvalStrategy st, bool density) {
  require_valid(sp);
  if (!(q > 0.0 && q <= 1.0))
    throw std::domain_error("evaluation requires q in (0,1]");

  if (st == EvalStrategy::PartialFraction) {
    if (!strictly_distinct(sp))
      throw std::domain_error(
          "partial-fraction form needs pairwise distinct nodes");
    return density ? density_pf(sp, q) : volume_pf(sp, q);
  }
  EvalPath label = EvalPath::Series;
  if (st == EvalStrategy::Auto) {
    label = route_label(sp);
    if (label == EvalPath::PartialFraction)
      return density ? density_pf(sp, q) : volume_pf(sp, q);
  }

  const long double lnq = logl(static_cast<long double>(q));
  Kahan sum;
  long double sign = 1.0L;
  if (density) {
    for (const GroupRange& g : evaluation_groups(sp, st)) {
      GroupView v = make_group_view(sp, g);
      sum.add(density_group(v, -lnq, kEngineRelTol));
    }
  } else {
    if (q == 1.0) return {0.0, label};
    for (const MassGroup& v : mass_groups(sp, st))
      sum.add(mass_group_value(v, lnq, kEngineRelTol));
    if (sp.nodes.size() % 2 == 1) sign = -1.0L;
  }
  double value =
      static_cast<double>(static_cast<long double>(sp.prefactor) * sign * sum.acc);
  return {value, label};
}

}  // namespace

Spectrum spectrum_from_nodes(std::vector<double> nodes, double prefactor,
                             double cluster_tol_rel) {
  if (nodes.empty())
    throw std::invalid_argument("spectrum: at least one node required");
  for (double c : nodes)
    if (!std::isfinite(c) || c <= 0)
      throw std::invalid_argument("spectrum: nodes must be finite and positive");
  if (!(cluster_tol_rel >= 0))
    throw std::invalid_argument("spectrum: cluster tolerance must be >= 0");
  std::sort(nodes.begin(), nodes.end());

  Spectrum sp;
  sp.nodes = std::move(nodes);
  sp.prefactor = prefactor;
  sp.cluster_tol = cluster_tol_rel * sp.nodes.back();

  std::size_t run = 0;
  while (run < sp.nodes.size()) {
    std::size_t end = run + 1;
    while (end < sp.nodes.size() && sp.nodes[end] - sp.nodes[end - 1] <= sp.cluster_tol)
      ++end;
    Kahan mean;
    for (std::size_t i = run; i < end; ++i) mean.add(sp.nodes[i]);
    sp.clusters.push_back(
        {static_cast<double>(mean.acc / static_cast<long double>(end - run)),
         static_cast<int>(end - run)});
    run = end;
  }
  return sp;
}

Spectrum derive_spectrum(const ExponentData& e, double cluster_tol_rel) {
  std::vector<double> nodes;
  long double kappa = 1.0L;
  for (std::size_t i = 0; i < e.dim(); ++i) {
    if (e.a[i] > 0) {
      nodes.push_back((e.b[i] + 1.0) / e.a[i]);
      kappa /= static_cast<long double>(e.a[i]);
    } else {
      kappa /= static_cast<long double>(e.b[i]) + 1.0L;
    }
  }
  return spectrum_from_nodes(std::move(nodes), static_cast<double>(kappa),
                             cluster_tol_rel);
}

Evaluated density_from_spectrum(const Spectrum& sp, double q, EvalStrategy st) {
  return eval_spectrum(sp, q, st, true);
}

Evaluated volume_from_spectrum(const Spectrum& sp, double q, EvalStrategy st) {
  return eval_spectrum(sp, q, st, false);
}

Evaluated density_unit_cube_ex(const ExponentData& e, double q, EvalStrategy st) {
  return density_from_spectrum(derive_spectrum(e), q, st);
}

double density_unit_cube(const ExponentData& e, double q) {
  return density_unit_cube_ex(e, q).value;
}

Evaluated volume_ex(const ExponentData& e, double q, EvalStrategy st) {
  return volume_from_spectrum(derive_spectrum(e), q, st);
}

double volume(const ExponentData& e, double q) { return volume_ex(e, q).value; }

double total_mass(const ExponentData& e) {
  long double m = 1.0L;
  for (double b : e.b) m /= static_cast<long double>(b) + 1.0L;
  return static_cast<double>(m);
}

LimitInfo limit_from_spectrum(const Spectrum& sp) {
  require_valid(sp);
  const Cluster& lead = sp.clusters.front();
  LimitInfo out;
  out.leading_power = lead.value - 1.0;
  out.leading_log_power = lead.count - 1;

  const double tol_eq = std::max(sp.cluster_tol, 1e-12);
  if (lead.value > 1.0 + tol_eq) {
    out.value = 0.0;
  } else if (std::fabs(lead.value - 1.0) <= tol_eq) {
    if (lead.count == 1) {
      long double prod = sp.prefactor;
      for (std::size_t j = static_cast<std::size_t>(lead.count); j < sp.nodes.size(); ++j)
        prod /= static_cast<long double>(sp.nodes[j]) - 1.0L;
      out.value = static_cast<double>(prod);
    } else {
      out.value = std::numeric_limits<double>::infinity();
    }
  } else {
    out.value = std::numeric_limits<double>::infinity();
  }
  return out;
}

LimitInfo limit_at_zero(const ExponentData& e) {
  return limit_from_spectrum(derive_spectrum(e));
}

Parity parity_of(const ExponentData& e) {
  if (!e.integer_a()) return Parity::NonInteger;
  for (double v : e.a)
    if (std::fmod(v, 2.0) == 1.0) return Parity::SomeOdd;
  return Parity::AllEven;
}

Evaluated density_signed_cube_ex(const ExponentData& e, double q,
                                 bool require_integer_a) {
  Parity par = parity_of(e);
  if (par == Parity::NonInteger && require_integer_a)
    throw std::domain_error(
        "density_signed_cube: non-integer A; pass require_integer_a=false for "
        "the |x|^A interpretation");
  const bool one_sided = (par != Parity::SomeOdd);
  const double factor = std::exp2(one_sided ? static_cast<double>(e.dim())
                                            : static_cast<double>(e.dim()) - 1.0);
  Spectrum sp = derive_spectrum(e);
  if (q == 0.0) return {factor * limit_from_spectrum(sp).value, EvalPath::Limit};
  if (std::fabs(q) >= 1.0 || (one_sided && q < 0.0)) return {0.0, EvalPath::Limit};
  Evaluated inner =
      density_from_spectrum(sp, one_sided ? q : std::fabs(q), EvalStrategy::Auto);
  return {factor * inner.value, inner.path};
}

double density_signed_cube(const ExponentData& e, double q, bool require_integer_a) {
  return density_signed_cube_ex(e, q, require_integer_a).value;
}

Evaluated mass_above_signed_ex(const ExponentData& e, double q,
                               bool require_integer_a) {
  Parity par = parity_of(e);
  if (par == Parity::NonInteger && require_integer_a)
    throw std::domain_error(
        "mass_above_signed: non-integer A; pass require_integer_a=false for "
        "the |x|^A interpretation");
  const bool one_sided = (par != Parity::SomeOdd);
  const double n = static_cast<double>(e.dim());
  const double total = std::exp2(n) * total_mass(e);
  if (q >= 1.0) return {0.0, EvalPath::Limit};
  if (q <= -1.0) return {total, EvalPath::Limit};
  if (one_sided && q <= 0.0) return {total, EvalPath::Limit};
  if (!one_sided && q == 0.0) return {total / 2.0, EvalPath::Limit};
  Evaluated inner = volume_ex(e, std::fabs(q));
  if (one_sided) return {std::exp2(n) * inner.value, inner.path};
  if (q > 0.0) return {std::exp2(n - 1.0) * inner.value, inner.path};
  return {total - std::exp2(n - 1.0) * inner.value, inner.path};
}

double mass_above_signed(const ExponentData& e, double q, bool require_integer_a) {
  return mass_above_signed_ex(e, q, require_integer_a).value;
}

const char* to_string(FrsCase c) {
  switch (c) {
    case FrsCase::Case1: return "Case1";
    case FrsCase::Case2: return "Case2";
    case FrsCase::Outside: return "Outside";
  }
  return "?";
}

const char* to_string(Parity p) {
  switch (p) {
    case Parity::SomeOdd: return "SomeOdd";
    case Parity::AllEven: return "AllEven";
    case Parity::NonInteger: return "NonInteger";
  }
  return "?";
}

ContinuityVerdict classify(const ExponentData& e) {
  if (!e.integer_a() || !e.integer_b())
    throw std::domain_error("classify: A and B must be integer-valued");

  ContinuityVerdict v;
  v.parity = parity_of(e);
  v.limit = limit_at_zero(e);

  const std::size_t n = e.dim();
  bool case1 = true;
  for (std::size_t i = 0; i < n; ++i)
    if (e.a[i] > e.b[i]) case1 = false;

  if (case1) {
    v.frs_case = FrsCase::Case1;
    return v;
  }
  for (std::size_t d = 0; d < n; ++d) {
    if (e.a[d] != 1.0) continue;
    bool rest = true;
    for (std::size_t i = 0; i < n; ++i)
      if (i != d && e.a[i] > e.b[i]) rest = false;
    if (rest) {
      v.frs_case = FrsCase::Case2;
      return v;
    }
  }
  v.frs_case = FrsCase::Outside;
  return v;
}

}  // namespace pushfwd
