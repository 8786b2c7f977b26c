#include "pushfwd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pushfwd/rng.hpp"

namespace pushfwd::oracle {

namespace {

// Fixed stream count: partial sums are materialized per (atom, stream) and
// reduced in ascending order, so the histogram is a pure function of
// (atoms, edges, samples, seed) for any thread count or blocking.
constexpr int kStreams = 64;
constexpr std::size_t kAtomBlock = 32;

struct AtomSampling {
  double base = 0;  // coeff * box volume
  std::uint64_t count = 0;
  bool integer_a = true;
};

void require_edges(const std::vector<double>& edges) {
  if (edges.size() < 2)
    throw std::invalid_argument("histogram: need at least two bin edges");
  for (std::size_t j = 0; j < edges.size(); ++j) {
    if (!std::isfinite(edges[j]))
      throw std::invalid_argument("histogram: bin edges must be finite");
    if (j > 0 && !(edges[j - 1] < edges[j]))
      throw std::invalid_argument("histogram: bin edges must increase strictly");
  }
}

// Partial sums of f and f^2 per bin for one (atom, stream) slice of the
// counter range; f is the signed weight coeff * vol * |x^B| of a draw
// landing in the bin.
void run_stream(const BoxAtom& atom, const AtomSampling& plan,
                const std::vector<double>& edges, bool absolute_map,
                std::uint64_t seed, std::uint64_t atom_index, int stream,
                double* sumf, double* sumf2) {
  const std::size_t n = atom.box.dim();
  const std::uint64_t chunk = (plan.count + kStreams - 1) / kStreams;
  const std::uint64_t begin = std::min<std::uint64_t>(chunk * stream, plan.count);
  const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, plan.count);
  const rng::CounterRng gen(seed, atom_index);
  const std::ptrdiff_t bins = static_cast<std::ptrdiff_t>(edges.size()) - 1;

  for (std::uint64_t i = begin; i < end; ++i) {
    double f = plan.base;
    double v = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const Interval& iv = atom.box.iv[j];
      const double u = gen.uniform(i * n + j);
      const double x = iv.lo + (iv.hi - iv.lo) * u;
      const double ax = std::fabs(x);
      f *= std::pow(ax, atom.expo.b[j]);
      double m = std::pow(ax, atom.expo.a[j]);
      if (!absolute_map && x < 0.0 && std::fmod(atom.expo.a[j], 2.0) == 1.0)
        m = -m;
      v *= m;
    }
    const std::ptrdiff_t p =
        std::lower_bound(edges.begin(), edges.end(), v) - edges.begin();
    if (p >= 1 && p <= bins) {
      sumf[p - 1] += f;
      sumf2[p - 1] += f * f;
    }
  }
}

Histogram mc_core(const AtomSet& atoms, std::vector<double> edges,
                  std::uint64_t samples, std::uint64_t seed, bool absolute_map,
                  bool threaded) {
  require_edges(edges);
  if (atoms.empty()) throw std::invalid_argument("mc_histogram: empty atom set");
  if (samples < 2 * atoms.size())
    throw std::invalid_argument(
        "mc_histogram: need at least two draws per atom for error estimates");

  const std::size_t bins = edges.size() - 1;
  std::vector<AtomSampling> plan(atoms.size());
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    const BoxAtom& atom = atoms[a];
    double vol = 1.0;
    bool negative = false;
    for (const Interval& iv : atom.box.iv) {
      vol *= iv.hi - iv.lo;
      negative = negative || iv.lo < 0.0;
    }
    plan[a].base = atom.coeff * vol;
    plan[a].count = samples / atoms.size() + (a < samples % atoms.size() ? 1 : 0);
    plan[a].integer_a = atom.expo.integer_a();
    if (!absolute_map && negative && !plan[a].integer_a)
      throw std::domain_error(
          "mc_histogram: non-integer exponents over a box reaching x < 0; "
          "use absolute_map for the |x|^A interpretation");
  }

  Histogram h;
  h.edges = std::move(edges);
  h.mass.assign(bins, 0.0);
  h.stderr_.assign(bins, 0.0);
  h.samples = samples;

  std::vector<double> var(bins, 0.0);
  std::vector<double> partial;  // block-local (atom, stream, 2, bins)
  const std::size_t stride = 2 * bins;

  for (std::size_t b0 = 0; b0 < atoms.size(); b0 += kAtomBlock) {
    const std::size_t b1 = std::min(atoms.size(), b0 + kAtomBlock);
    const std::ptrdiff_t tasks =
        static_cast<std::ptrdiff_t>((b1 - b0) * kStreams);
    partial.assign(static_cast<std::size_t>(tasks) * stride, 0.0);

    if (threaded) {
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t t = 0; t < tasks; ++t) {
        const std::size_t a = b0 + static_cast<std::size_t>(t) / kStreams;
        const int s = static_cast<int>(t % kStreams);
        double* slot = partial.data() + static_cast<std::size_t>(t) * stride;
        run_stream(atoms[a], plan[a], h.edges, absolute_map, seed, a, s, slot,
                   slot + bins);
      }
    } else {
      for (std::ptrdiff_t t = 0; t < tasks; ++t) {
        const std::size_t a = b0 + static_cast<std::size_t>(t) / kStreams;
        const int s = static_cast<int>(t % kStreams);
        double* slot = partial.data() + static_cast<std::size_t>(t) * stride;
        run_stream(atoms[a], plan[a], h.edges, absolute_map, seed, a, s, slot,
                   slot + bins);
      }
    }

    for (std::size_t a = b0; a < b1; ++a) {
      const double na = static_cast<double>(plan[a].count);
      for (std::size_t j = 0; j < bins; ++j) {
        double sf = 0.0, sf2 = 0.0;
        for (int s = 0; s < kStreams; ++s) {
          const double* slot =
              partial.data() + ((a - b0) * kStreams + s) * stride;
          sf += slot[j];
          sf2 += slot[bins + j];
        }
        const double mean = sf / na;
        h.mass[j] += mean;
        var[j] += std::max(0.0, (sf2 - na * mean * mean) / (na - 1.0) / na);
      }
    }
  }
  for (std::size_t j = 0; j < bins; ++j) h.stderr_[j] = std::sqrt(var[j]);
  return h;
}

struct BracketSums {
  long double lo = 0, hi = 0;
  long double lo_c = 0, hi_c = 0;
  void add_lo(long double m) {
    long double y = m - lo_c, t = lo + y;
    lo_c = (t - lo) - y;
    lo = t;
  }
  void add_hi(long double m) {
    long double y = m - hi_c, t = hi + y;
    hi_c = (t - hi) - y;
    hi = t;
  }
};

BracketSums bracket_at(const ExponentData& e, double q, int m) {
  const std::size_t n = e.dim();
  std::vector<std::vector<long double>> pw(n), mass(n);
  for (std::size_t i = 0; i < n; ++i) {
    pw[i].resize(static_cast<std::size_t>(m) + 1);
    mass[i].resize(static_cast<std::size_t>(m));
    const long double p = static_cast<long double>(e.b[i]) + 1.0L;
    long double prev_mb = 0.0L;
    for (int g = 0; g <= m; ++g) {
      const long double t = static_cast<long double>(g) / m;
      pw[i][static_cast<std::size_t>(g)] = powl(t, static_cast<long double>(e.a[i]));
      const long double mb = powl(t, p) / p;
      if (g > 0) mass[i][static_cast<std::size_t>(g) - 1] = mb - prev_mb;
      prev_mb = mb;
    }
  }

  BracketSums out;
  const long double qq = static_cast<long double>(q);
  // Depth-first over cells with running corner and mass products; the
  // factors never exceed 1, so a prefix high corner at or below q prunes
  // the whole subtree.
  auto descend = [&](auto&& self, std::size_t depth, long double plo,
                     long double phi, long double pm) -> void {
    if (phi <= qq) return;
    if (depth == n) {
      if (plo > qq) out.add_lo(pm);
      out.add_hi(pm);
      return;
    }
    for (int g = 0; g < m; ++g) {
      self(self, depth + 1, plo * pw[depth][static_cast<std::size_t>(g)],
           phi * pw[depth][static_cast<std::size_t>(g) + 1],
           pm * mass[depth][static_cast<std::size_t>(g)]);
    }
  };
  descend(descend, 0, 1.0L, 1.0L, 1.0L);
  return out;
}

}  // namespace

Histogram mc_histogram(const AtomSet& atoms, std::vector<double> edges,
                       std::uint64_t samples, std::uint64_t seed,
                       bool absolute_map) {
  return mc_core(atoms, std::move(edges), samples, seed, absolute_map, true);
}

Histogram mc_histogram_serial(const AtomSet& atoms, std::vector<double> edges,
                              std::uint64_t samples, std::uint64_t seed,
                              bool absolute_map) {
  return mc_core(atoms, std::move(edges), samples, seed, absolute_map, false);
}

double Bracket::error() const { return std::max(value - lo, hi - value); }

Bracket quadrature_mass_above(const ExponentData& e, double q, int cells_per_axis) {
  if (cells_per_axis < 1)
    throw std::invalid_argument("quadrature: need at least one cell per axis");
  long double cells = 1.0L;
  for (std::size_t i = 0; i < e.dim(); ++i) cells *= 2.0L * cells_per_axis;
  if (cells > 1e9L)
    throw std::invalid_argument("quadrature: refined grid exceeds 1e9 cells");

  const BracketSums c1 = bracket_at(e, q, cells_per_axis);
  const BracketSums c2 = bracket_at(e, q, 2 * cells_per_axis);
  const long double mid1 = (c1.lo + c1.hi) / 2.0L;
  const long double mid2 = (c2.lo + c2.hi) / 2.0L;
  long double value = 2.0L * mid2 - mid1;
  value = std::min(std::max(value, c2.lo), c2.hi);

  Bracket out;
  out.lo = static_cast<double>(c2.lo);
  out.hi = static_cast<double>(c2.hi);
  out.value = static_cast<double>(value);
  return out;
}

CompareReport compare_masses(const Histogram& h,
                             const std::vector<double>& closed_mass) {
  if (closed_mass.size() + 1 != h.edges.size())
    throw std::invalid_argument("compare: one closed-form mass per bin required");
  CompareReport r;
  r.z.resize(closed_mass.size());
  for (std::size_t j = 0; j < closed_mass.size(); ++j) {
    const double diff = closed_mass[j] - h.mass[j];
    if (h.stderr_[j] > 0.0)
      r.z[j] = diff / h.stderr_[j];
    else
      r.z[j] = diff == 0.0
                   ? 0.0
                   : std::copysign(std::numeric_limits<double>::infinity(), diff);
    if (std::fabs(r.z[j]) > std::fabs(r.max_abs_z)) {
      r.max_abs_z = std::fabs(r.z[j]);
      r.worst_bin = j;
    }
  }
  return r;
}

}  // namespace pushfwd::oracle
