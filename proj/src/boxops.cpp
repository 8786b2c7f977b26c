#include "pushfwd/boxops.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pushfwd/monomial.hpp"

namespace pushfwd::boxops {

namespace {

void require_kbox_args(int k, std::size_t dim) {
  if (k < 0) throw std::invalid_argument("kbox: k must be >= 0");
  if (dim == 0) throw std::invalid_argument("kbox: dimension must be at least 1");
}

double cell_edge(int k, int idx) {
  return -1.0 + 2.0 * static_cast<double>(idx) / static_cast<double>(2 * k + 1);
}

struct Scaling {
  double lambda_prod_b = 1;  // prod lambda_i^{b_i+1}
  double capital_lambda = 1; // prod lambda_i^{a_i}
};

Scaling atom_scaling(const BoxAtom& atom) {
  Scaling s;
  for (std::size_t i = 0; i < atom.box.dim(); ++i) {
    const Interval& iv = atom.box.iv[i];
    if (iv.lo != -iv.hi)
      throw std::domain_error(
          "scaled evaluation needs origin-centered boxes; run "
          "reflect_decompose first");
    s.lambda_prod_b *= std::pow(iv.hi, atom.expo.b[i] + 1.0);
    s.capital_lambda *= std::pow(iv.hi, atom.expo.a[i]);
  }
  return s;
}

Evaluated scaled_density_ex(const BoxAtom& atom, double q, bool require_integer_a) {
  Scaling s = atom_scaling(atom);
  Evaluated inner =
      density_signed_cube_ex(atom.expo, q / s.capital_lambda, require_integer_a);
  return {atom.coeff * s.lambda_prod_b * inner.value / s.capital_lambda,
          inner.path};
}

bool atom_key_less(const BoxAtom& x, const BoxAtom& y) {
  if (x.box.dim() != y.box.dim()) return x.box.dim() < y.box.dim();
  for (std::size_t i = 0; i < x.box.dim(); ++i) {
    if (x.box.iv[i].lo != y.box.iv[i].lo) return x.box.iv[i].lo < y.box.iv[i].lo;
    if (x.box.iv[i].hi != y.box.iv[i].hi) return x.box.iv[i].hi < y.box.iv[i].hi;
    if (x.expo.a[i] != y.expo.a[i]) return x.expo.a[i] < y.expo.a[i];
    if (x.expo.b[i] != y.expo.b[i]) return x.expo.b[i] < y.expo.b[i];
  }
  return false;
}

bool atom_key_equal(const BoxAtom& x, const BoxAtom& y) {
  return !atom_key_less(x, y) && !atom_key_less(y, x);
}

}  // namespace

std::uint64_t kbox_cell_count(int k, std::size_t dim) {
  require_kbox_args(k, dim);
  const std::uint64_t base = 2ULL * static_cast<std::uint64_t>(k) + 1ULL;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / base)
      throw std::overflow_error("kbox: cell count exceeds 64 bits");
    count *= base;
  }
  return count;
}

Box kbox_cell(int k, std::span<const int> r) {
  require_kbox_args(k, r.size());
  std::vector<Interval> iv;
  iv.reserve(r.size());
  for (int ri : r) {
    if (ri < 0 || ri > 2 * k)
      throw std::invalid_argument("kbox: cell index out of range");
    iv.push_back({cell_edge(k, ri), cell_edge(k, ri + 1)});
  }
  return Box(std::move(iv));
}

std::vector<Box> kbox_cells(int k, std::size_t dim) {
  const std::uint64_t total = kbox_cell_count(k, dim);
  std::vector<Box> cells;
  cells.reserve(total);
  std::vector<int> r(dim, 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    cells.push_back(kbox_cell(k, r));
    for (std::size_t i = dim; i-- > 0;) {
      if (++r[i] <= 2 * k) break;
      r[i] = 0;
    }
  }
  return cells;
}

std::vector<Box> split_at_zero(const Box& box) {
  box.validate();
  std::vector<std::vector<Interval>> parts(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const Interval& iv = box.iv[i];
    if (iv.lo < 0.0 && iv.hi > 0.0) {
      parts[i] = {{iv.lo, 0.0}, {0.0, iv.hi}};
    } else {
      parts[i] = {iv};
    }
  }
  std::vector<Box> out;
  std::vector<std::size_t> pick(box.dim(), 0);
  while (true) {
    std::vector<Interval> iv(box.dim());
    for (std::size_t i = 0; i < box.dim(); ++i) iv[i] = parts[i][pick[i]];
    out.push_back(Box(std::move(iv)));
    std::size_t i = box.dim();
    bool rolled_over = true;
    while (i-- > 0) {
      if (++pick[i] < parts[i].size()) {
        rolled_over = false;
        break;
      }
      pick[i] = 0;
    }
    if (rolled_over) return out;
  }
}

AtomSet reflect_decompose(const Box& box, const ExponentData& e) {
  box.validate();
  if (box.dim() != e.dim())
    throw std::invalid_argument("reflect_decompose: dimension mismatch");

  struct Term {
    double t;
    int sign;
  };
  std::vector<std::vector<Term>> options(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const Interval& iv = box.iv[i];
    if (iv.lo < 0.0 && iv.hi > 0.0)
      throw std::domain_error(
          "reflect_decompose: interval crosses zero; apply split_at_zero "
          "first");
    const double l = iv.hi <= 0.0 ? -iv.hi : iv.lo;
    const double h = iv.hi <= 0.0 ? -iv.lo : iv.hi;
    options[i].push_back({h, +1});
    if (l > 0.0) options[i].push_back({l, -1});
  }

  const double half_pow = std::exp2(-static_cast<double>(box.dim()));
  AtomSet atoms;
  std::vector<std::size_t> pick(box.dim(), 0);
  while (true) {
    double coeff = half_pow;
    std::vector<Interval> iv(box.dim());
    for (std::size_t i = 0; i < box.dim(); ++i) {
      const Term& term = options[i][pick[i]];
      coeff *= term.sign;
      iv[i] = {-term.t, term.t};
    }
    atoms.emplace_back(coeff, Box(std::move(iv)), e);
    std::size_t i = box.dim();
    bool rolled_over = true;
    while (i-- > 0) {
      if (++pick[i] < options[i].size()) {
        rolled_over = false;
        break;
      }
      pick[i] = 0;
    }
    if (rolled_over) return atoms;
  }
}

AtomSet kbox_atoms(int k, const ExponentData& e) {
  AtomSet atoms;
  for (const Box& cell : kbox_cells(k, e.dim()))
    for (const Box& piece : split_at_zero(cell)) {
      AtomSet part = reflect_decompose(piece, e);
      atoms.insert(atoms.end(), part.begin(), part.end());
    }
  return consolidate(std::move(atoms));
}

AtomSet consolidate(AtomSet atoms) {
  std::stable_sort(atoms.begin(), atoms.end(), atom_key_less);
  AtomSet out;
  for (BoxAtom& atom : atoms) {
    if (!out.empty() && atom_key_equal(out.back(), atom))
      out.back().coeff += atom.coeff;
    else
      out.push_back(std::move(atom));
  }
  std::erase_if(out, [](const BoxAtom& a) { return a.coeff == 0.0; });
  return out;
}

double scaled_density(const BoxAtom& atom, double q, bool require_integer_a) {
  return scaled_density_ex(atom, q, require_integer_a).value;
}

double scaled_mass_above(const BoxAtom& atom, double q, bool require_integer_a) {
  Scaling s = atom_scaling(atom);
  return atom.coeff * s.lambda_prod_b *
         mass_above_signed(atom.expo, q / s.capital_lambda, require_integer_a);
}

DensityProfile assemble_profile(const AtomSet& atoms, std::vector<double> grid,
                                bool require_integer_a) {
  if (atoms.empty())
    throw std::invalid_argument("assemble_profile: empty atom set");
  DensityProfile profile;
  profile.grid = std::move(grid);
  profile.values.reserve(profile.grid.size());
  profile.path.reserve(profile.grid.size());
  for (double q : profile.grid) {
    Evaluated first = scaled_density_ex(atoms.front(), q, require_integer_a);
    double value = first.value;
    for (std::size_t i = 1; i < atoms.size(); ++i)
      value += scaled_density(atoms[i], q, require_integer_a);
    profile.values.push_back(value);
    profile.path.push_back(first.path);
  }
  profile.validate();
  return profile;
}

BoxAtom marginalize(const BoxAtom& atom) {
  std::vector<Interval> iv;
  std::vector<double> a, b;
  double weight = 1.0;
  auto antideriv = [](double t, double b_i) {
    const double p = b_i + 1.0;
    return std::copysign(std::pow(std::fabs(t), p) / p, t);
  };
  for (std::size_t i = 0; i < atom.box.dim(); ++i) {
    if (atom.expo.a[i] == 0.0) {
      weight *= antideriv(atom.box.iv[i].hi, atom.expo.b[i]) -
                antideriv(atom.box.iv[i].lo, atom.expo.b[i]);
    } else {
      iv.push_back(atom.box.iv[i]);
      a.push_back(atom.expo.a[i]);
      b.push_back(atom.expo.b[i]);
    }
  }
  if (a.empty())
    throw std::domain_error("marginalize: no axis with positive a_i remains");
  return BoxAtom(atom.coeff * weight, Box(std::move(iv)),
                 ExponentData(std::move(a), std::move(b)));
}

}  // namespace pushfwd::boxops
