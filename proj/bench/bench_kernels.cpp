// Timing harness for the two heavy kernels: the Monte Carlo histogram
// (threaded vs the serial reference, which must agree bit for bit) and the
// closed-form profile assembly over a kbox atom set.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "pushfwd/boxops.hpp"
#include "pushfwd/monomial.hpp"
#include "pushfwd/oracle.hpp"
#include "pushfwd/types.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<double> linear_edges(double lo, double hi, int bins) {
  std::vector<double> edges(bins + 1);
  for (int i = 0; i <= bins; ++i)
    edges[i] = lo + (hi - lo) * static_cast<double>(i) / bins;
  return edges;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace pushfwd;
  std::uint64_t samples = 4'000'000;
  int k = 8;
  if (argc > 1) samples = std::strtoull(argv[1], nullptr, 10);
  if (argc > 2) k = std::atoi(argv[2]);

  ExponentData e({1.0, 2.0}, {0.0, 3.0});
  AtomSet atoms = boxops::kbox_atoms(k, e);
  std::vector<double> edges = linear_edges(-1.0, 1.0, 64);

  std::printf("mc histogram: %llu samples, %zu atoms, %zu bins\n",
              static_cast<unsigned long long>(samples), atoms.size(),
              edges.size() - 1);

  auto t0 = std::chrono::steady_clock::now();
  oracle::Histogram par = oracle::mc_histogram(atoms, edges, samples, 7);
  const double t_par = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  oracle::Histogram ser = oracle::mc_histogram_serial(atoms, edges, samples, 7);
  const double t_ser = seconds_since(t0);

  const bool same =
      par.mass.size() == ser.mass.size() &&
      std::memcmp(par.mass.data(), ser.mass.data(),
                  par.mass.size() * sizeof(double)) == 0 &&
      std::memcmp(par.stderr_.data(), ser.stderr_.data(),
                  par.stderr_.size() * sizeof(double)) == 0;

  std::printf("  threaded: %8.3f s  (%6.2f Msamples/s)\n", t_par,
              static_cast<double>(samples) / t_par / 1e6);
  std::printf("  serial:   %8.3f s  (%6.2f Msamples/s)\n", t_ser,
              static_cast<double>(samples) / t_ser / 1e6);
  std::printf("  bitwise equal: %s\n", same ? "yes" : "NO");

  const int points = 20001;
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = -1.0 + 2.0 * static_cast<double>(i) / (points - 1);

  t0 = std::chrono::steady_clock::now();
  DensityProfile prof = boxops::assemble_profile(atoms, grid);
  double acc = 0;
  for (double v : prof.values) acc += v;
  const double t_prof = seconds_since(t0);
  std::printf("profile assembly: %d points x %zu atoms in %.3f s (checksum %g)\n",
              points, atoms.size(), t_prof, acc);

  return same ? 0 : 1;
}
