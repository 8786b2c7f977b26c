#pragma once
// Shared data types for the pushforward-density library.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pushfwd {

// Exponent pair (A, B) for the map x^A = prod_i x_i^{a_i} and the measure
// |x^B| dx.  Entries are finite nonnegative reals; at least one a_i must be
// positive or the map collapses to a constant.
struct ExponentData {
  std::vector<double> a;
  std::vector<double> b;

  ExponentData() = default;

  ExponentData(std::vector<double> a_in, std::vector<double> b_in)
      : a(std::move(a_in)), b(std::move(b_in)) {
    if (a.size() != b.size())
      throw std::invalid_argument("ExponentData: A and B must have equal length");
    if (a.empty())
      throw std::invalid_argument("ExponentData: dimension must be at least 1");
    bool any_positive = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!std::isfinite(a[i]) || !std::isfinite(b[i]) || a[i] < 0 || b[i] < 0)
        throw std::invalid_argument(
            "ExponentData: exponents must be finite and nonnegative");
      if (a[i] > 0) any_positive = true;
    }
    if (!any_positive)
      throw std::invalid_argument("ExponentData: not all a_i equal to zero");
  }

  std::size_t dim() const { return a.size(); }

  bool integer_a() const {
    for (double v : a)
      if (v != std::floor(v)) return false;
    return true;
  }
  bool integer_b() const {
    for (double v : b)
      if (v != std::floor(v)) return false;
    return true;
  }
};

// Closed interval, one axis of a box.
struct Interval {
  double lo = 0;
  double hi = 0;
};

// Axis-aligned product of closed intervals inside [-1,1]^n.
struct Box {
  std::vector<Interval> iv;

  Box() = default;
  explicit Box(std::vector<Interval> iv_in) : iv(std::move(iv_in)) { validate(); }

  std::size_t dim() const { return iv.size(); }

  void validate() const {
    if (iv.empty()) throw std::invalid_argument("Box: dimension must be at least 1");
    for (const Interval& s : iv) {
      if (!(s.lo < s.hi))
        throw std::invalid_argument("Box: each interval needs lo < hi");
      if (s.lo < -1.0 || s.hi > 1.0)
        throw std::invalid_argument("Box: intervals must lie within [-1,1]");
    }
  }
};

// Weighted box carrying its own exponent data.
struct BoxAtom {
  double coeff = 0;
  Box box;
  ExponentData expo;

  BoxAtom() = default;
  BoxAtom(double c, Box bx, ExponentData e)
      : coeff(c), box(std::move(bx)), expo(std::move(e)) {
    if (box.dim() != expo.dim())
      throw std::invalid_argument("BoxAtom: box and exponent dimensions differ");
    if (!std::isfinite(coeff))
      throw std::invalid_argument("BoxAtom: coeff must be finite");
  }
};

using AtomSet = std::vector<BoxAtom>;

// Which closed form produced a density/volume value.
enum class EvalPath { PartialFraction, Series, Confluent, Limit };

inline const char* to_string(EvalPath p) {
  switch (p) {
    case EvalPath::PartialFraction: return "partial-fraction";
    case EvalPath::Series: return "series";
    case EvalPath::Confluent: return "confluent";
    case EvalPath::Limit: return "limit";
  }
  return "?";
}

inline EvalPath eval_path_from_string(const std::string& s) {
  if (s == "partial-fraction") return EvalPath::PartialFraction;
  if (s == "series") return EvalPath::Series;
  if (s == "confluent") return EvalPath::Confluent;
  if (s == "limit") return EvalPath::Limit;
  throw std::invalid_argument("unknown evaluation path tag: " + s);
}

// Density values on a grid of q points, with the evaluation path per point.
struct DensityProfile {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<EvalPath> path;

  void validate() const {
    if (grid.size() != values.size() || grid.size() != path.size())
      throw std::invalid_argument("DensityProfile: column lengths differ");
  }
};

}  // namespace pushfwd
