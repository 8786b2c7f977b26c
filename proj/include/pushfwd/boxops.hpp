#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pushfwd/types.hpp"

namespace pushfwd::boxops {

// Tiling of [-1,1]^n into (2k+1)^n congruent closed cells.  Cell index
// r = (r_0..r_{n-1}), 0 <= r_i <= 2k, covers
//   [-1 + 2 r_i / (2k+1), -1 + 2 (r_i+1) / (2k+1)]
// on axis i.  The odd cell count keeps the tiling mirror symmetric with a
// single cell centered on the origin.
std::uint64_t kbox_cell_count(int k, std::size_t dim);
Box kbox_cell(int k, std::span<const int> r);
std::vector<Box> kbox_cells(int k, std::size_t dim);

// Cuts the box along every axis whose interval crosses zero, so that each
// returned piece lies in a single closed orthant.  Pieces keep the original
// boundary; a cut at an endpoint produces no extra piece.
std::vector<Box> split_at_zero(const Box& box);

// Rewrites a single-orthant box as a signed combination of origin-centered
// boxes via the per-axis identity, valid against any mirror-even weight:
//   1_{[l,h]} + 1_{[-h,-l]} = 1_{[-h,h]} - 1_{[-l,l]},  0 <= l < h.
// Summed against |x^B| and pushed through x^A the result therefore carries
// the even part in q of the box's pushforward; it matches the pushforward
// itself whenever every a_i is even, and mirror-symmetric atom sets (such as
// a full kbox tiling) always recombine exactly.  Axes with l = 0 contribute
// a single term.  Throws std::domain_error if some interval has both
// endpoints' signs strictly mixed.
AtomSet reflect_decompose(const Box& box, const ExponentData& e);

// split_at_zero + reflect_decompose over every kbox cell, consolidated.
AtomSet kbox_atoms(int k, const ExponentData& e);

// Merges atoms with bitwise-equal boxes and exponents by summing
// coefficients; drops atoms with coefficient exactly zero.
AtomSet consolidate(AtomSet atoms);

// Pushforward density of coeff * |x^B| dx on the atom's centered box under
// x^A, by rescaling to the signed unit cube:
//   lambda_i = half width,  Lambda = prod lambda_i^{a_i},
//   value = coeff * prod lambda_i^{b_i+1} * rho_signed(q / Lambda) / Lambda.
// Requires every box interval centered: lo = -hi.
double scaled_density(const BoxAtom& atom, double q, bool require_integer_a = true);

// Antiderivative counterpart: coeff-weighted mass of {x in box : x^A > q}.
double scaled_mass_above(const BoxAtom& atom, double q,
                         bool require_integer_a = true);

// Sum of scaled_density over the atoms at each grid point.  The recorded
// per-point path is the route taken for the first atom (Limit where its
// scaled argument resolves by boundary constants); atoms sharing one
// ExponentData, the only case the CLI produces, all take the same route.
DensityProfile assemble_profile(const AtomSet& atoms, std::vector<double> grid,
                                bool require_integer_a = true);

// Integrates out every axis with a_i = 0: the factor measure contributes
//   G(hi) - G(lo),  G(t) = sign(t) |t|^{b+1} / (b+1),
// folded into the coefficient; remaining axes keep their order.  Throws
// std::domain_error if no axis with a_i > 0 would remain.
BoxAtom marginalize(const BoxAtom& atom);

}  // namespace pushfwd::boxops
