#pragma once

// Brute-force reference answers for the closed forms, kept deliberately
// independent of the monomial module: nothing here knows the density or
// volume formulas, only the defining integrals.

#include <cstdint>
#include <vector>

#include "pushfwd/types.hpp"

namespace pushfwd::oracle {

// Weighted histogram of x^A over draws x uniform in the atoms' boxes with
// weight coeff * box_volume * |x^B|.  mass[j] estimates the atom-set measure
// of the bin (edges[j], edges[j+1]]; stderr_[j] is the standard error of
// that estimate.  Draws split as evenly as possible across atoms, remainder
// to the earlier ones.  With absolute_map the map is prod |x_i|^{a_i};
// otherwise boxes reaching x_i < 0 need integer a_i (throws
// std::domain_error if not).
struct Histogram {
  std::vector<double> edges;
  std::vector<double> mass;
  std::vector<double> stderr_;
  std::uint64_t samples = 0;
};

Histogram mc_histogram(const AtomSet& atoms, std::vector<double> edges,
                       std::uint64_t samples, std::uint64_t seed,
                       bool absolute_map = false);

// Single-threaded reference path.  Bitwise-equal output to mc_histogram for
// every thread count is a test invariant.
Histogram mc_histogram_serial(const AtomSet& atoms, std::vector<double> edges,
                              std::uint64_t samples, std::uint64_t seed,
                              bool absolute_map = false);

// Rigorous bracket of the unit-cube mass of {x : x^A > q} under x^B dx on a
// tensor grid, m cells per axis.  x^A is coordinatewise nondecreasing, so a
// cell lies fully inside once its low corner clears q and is disjoint only
// when its high corner fails; per-cell masses are exact products of
// (hi^{b+1} - lo^{b+1})/(b+1).  Hence lo <= truth <= hi up to roundoff.
// value applies one Richardson step to the bracket midpoints at m and 2m,
// clamped into the bracket at 2m; error() stays a rigorous bound.
struct Bracket {
  double value = 0;
  double lo = 0;
  double hi = 0;
  double error() const;
};

Bracket quadrature_mass_above(const ExponentData& e, double q, int cells_per_axis);

// Per-bin z-scores of closed-form bin masses against an MC histogram:
// z = (closed - mc) / stderr, taken as 0 when both the deviation and the
// standard error vanish and +-infinity when only the standard error does.
struct CompareReport {
  std::vector<double> z;
  double max_abs_z = 0;
  std::size_t worst_bin = 0;
};

CompareReport compare_masses(const Histogram& h,
                             const std::vector<double>& closed_mass);

}  // namespace pushfwd::oracle
