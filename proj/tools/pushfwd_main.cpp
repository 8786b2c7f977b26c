#include <charconv>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pushfwd/boxops.hpp"
#include "pushfwd/io.hpp"
#include "pushfwd/monomial.hpp"
#include "pushfwd/oracle.hpp"
#include "pushfwd/types.hpp"

namespace {

using namespace pushfwd;

constexpr int kExitUsage = 2;
constexpr int kExitCompareFailed = 1;

std::vector<double> parse_vec(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::string field;
  std::istringstream in(text);
  while (std::getline(in, field, ',')) {
    double v = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last)
      throw std::invalid_argument(std::string(flag) + ": cannot parse '" +
                                  field + "' as a number");
    out.push_back(v);
  }
  if (out.empty())
    throw std::invalid_argument(std::string(flag) + ": empty list");
  return out;
}

EvalStrategy strategy_from(const std::string& name) {
  if (name == "auto") return EvalStrategy::Auto;
  if (name == "partial-fraction") return EvalStrategy::PartialFraction;
  return EvalStrategy::SeriesOnly;
}

nlohmann::json spectrum_json(const Spectrum& sp) {
  nlohmann::json j;
  j["nodes"] = sp.nodes;
  j["kappa"] = sp.prefactor;
  j["clusters"] = nlohmann::json::array();
  for (const Cluster& c : sp.clusters)
    j["clusters"].push_back({{"value", c.value}, {"count", c.count}});
  return j;
}

// Options shared by the value-producing subcommands.
struct ProfileArgs {
  std::string a_text, b_text;
  double q = -1;
  std::string grid_text;
  bool signed_cube = false;
  bool absolute_map = false;
  std::string strategy = "auto";
  std::string format = "text";
  std::string out_path;
  bool plot = false;
};

void add_expo_options(CLI::App* sub, ProfileArgs& args) {
  sub->add_option("--A", args.a_text, "map exponents, comma separated")
      ->required();
  sub->add_option("--B", args.b_text, "measure exponents, comma separated")
      ->required();
}

void add_output_options(CLI::App* sub, ProfileArgs& args) {
  sub->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  sub->add_option("--out", args.out_path, "write output to this file");
  sub->add_flag("--plot", args.plot,
                "also write a matplotlib script next to the CSV output");
}

std::vector<double> resolve_grid(const ProfileArgs& args, bool q_given) {
  if (q_given == !args.grid_text.empty())
    throw std::invalid_argument("exactly one of --q and --grid is required");
  if (q_given) return {args.q};
  return io::parse_grid(args.grid_text);
}

// Emits the profile in the chosen format and handles --out / --plot.
int deliver_profile(const ProfileArgs& args, const DensityProfile& profile,
                    const nlohmann::json& meta) {
  if (args.plot && (args.format != "csv" || args.out_path.empty()))
    throw std::invalid_argument("--plot needs --format csv and --out");

  std::string payload;
  if (args.format == "text") {
    std::ostringstream os;
    for (std::size_t i = 0; i < profile.grid.size(); ++i)
      os << "q=" << io::format_double(profile.grid[i])
         << " value=" << io::format_double(profile.values[i])
         << " path=" << to_string(profile.path[i]) << '\n';
    payload = os.str();
  } else if (args.format == "csv") {
    std::ostringstream os;
    io::write_profile_csv(os, profile);
    payload = os.str();
  } else {
    nlohmann::json j = meta;
    j["profile"] = io::profile_to_json(profile);
    payload = j.dump(2) + "\n";
  }

  if (args.out_path.empty()) {
    std::cout << payload;
  } else {
    io::write_text_file(args.out_path, payload);
    std::cout << "wrote " << args.out_path << '\n';
    if (args.plot) {
      std::string script_path = args.out_path + ".py";
      io::write_text_file(script_path, io::plot_script(args.out_path));
      std::cout << "wrote " << script_path << '\n';
    }
  }
  return 0;
}

struct ClassifyArgs {
  std::string a_text, b_text;
  std::string format = "text";
  std::string out_path;
};

int run_classify(const ClassifyArgs& args) {
  ExponentData e(parse_vec(args.a_text, "--A"), parse_vec(args.b_text, "--B"));
  ContinuityVerdict v = classify(e);
  Spectrum sp = derive_spectrum(e);
  const bool continuous = v.parity == Parity::SomeOdd
                              ? std::isfinite(v.limit.value)
                              : v.limit.value == 0.0;

  std::string payload;
  if (args.format == "text") {
    std::ostringstream os;
    os << "case: " << to_string(v.frs_case) << '\n'
       << "parity: " << to_string(v.parity) << '\n'
       << "nodes:";
    for (double c : sp.nodes) os << ' ' << io::format_double(c);
    os << '\n'
       << "kappa: " << io::format_double(sp.prefactor) << '\n'
       << "limit at zero: " << io::format_double(v.limit.value) << '\n'
       << "leading power: " << io::format_double(v.limit.leading_power) << '\n'
       << "leading log power: " << v.limit.leading_log_power << '\n'
       << "continuous at zero: " << (continuous ? "yes" : "no") << '\n';
    payload = os.str();
  } else if (args.format == "csv") {
    std::ostringstream os;
    os << "case,parity,kappa,limit,leading_power,leading_log_power,continuous\n"
       << to_string(v.frs_case) << ',' << to_string(v.parity) << ','
       << io::format_double(sp.prefactor) << ','
       << io::format_double(v.limit.value) << ','
       << io::format_double(v.limit.leading_power) << ','
       << v.limit.leading_log_power << ',' << (continuous ? "yes" : "no")
       << '\n';
    payload = os.str();
  } else {
    nlohmann::json j;
    j["case"] = to_string(v.frs_case);
    j["parity"] = to_string(v.parity);
    j["spectrum"] = spectrum_json(sp);
    j["limit"] = {{"value", io::json_number(v.limit.value)},
                  {"leading_power", v.limit.leading_power},
                  {"leading_log_power", v.limit.leading_log_power}};
    j["continuous_at_zero"] = continuous;
    payload = j.dump(2) + "\n";
  }

  if (args.out_path.empty())
    std::cout << payload;
  else {
    io::write_text_file(args.out_path, payload);
    std::cout << "wrote " << args.out_path << '\n';
  }
  return 0;
}

int run_value_profile(const ProfileArgs& args, bool q_given, bool want_density) {
  ExponentData e(parse_vec(args.a_text, "--A"), parse_vec(args.b_text, "--B"));
  if (args.signed_cube && args.strategy != "auto")
    throw std::invalid_argument(
        "--strategy selects among the unsigned unit-cube forms; drop it or "
        "drop --signed");
  const EvalStrategy st = strategy_from(args.strategy);
  const bool ria = !args.absolute_map;
  std::vector<double> grid = resolve_grid(args, q_given);

  DensityProfile profile;
  profile.grid = grid;
  for (double q : grid) {
    Evaluated ev;
    if (args.signed_cube) {
      ev = want_density ? density_signed_cube_ex(e, q, ria)
                        : mass_above_signed_ex(e, q, ria);
    } else if (q == 0.0) {
      ev = want_density ? Evaluated{limit_at_zero(e).value, EvalPath::Limit}
                        : Evaluated{total_mass(e), EvalPath::Limit};
    } else if (q > 0.0 && q <= 1.0) {
      ev = want_density ? density_unit_cube_ex(e, q, st) : volume_ex(e, q, st);
    } else {
      throw std::invalid_argument(
          "unsigned evaluation needs q in [0,1]; pass --signed for the "
          "two-sided cube");
    }
    profile.values.push_back(ev.value);
    profile.path.push_back(ev.path);
  }

  nlohmann::json meta;
  meta["kind"] = want_density ? "density" : "volume";
  meta["signed"] = args.signed_cube;
  meta["a"] = e.a;
  meta["b"] = e.b;
  meta["spectrum"] = spectrum_json(derive_spectrum(e));
  return deliver_profile(args, profile, meta);
}

struct AssembleArgs {
  ProfileArgs common;
  std::string atoms_path;
  int k = -1;
};

int run_assemble(const AssembleArgs& args) {
  AtomSet atoms;
  if (!args.atoms_path.empty()) {
    if (args.k >= 0 || !args.common.a_text.empty())
      throw std::invalid_argument("--atoms excludes --k/--A/--B");
    atoms = io::load_atoms(args.atoms_path);
  } else {
    if (args.k < 0 || args.common.a_text.empty() || args.common.b_text.empty())
      throw std::invalid_argument(
          "assemble needs either --atoms FILE or all of --k/--A/--B");
    ExponentData e(parse_vec(args.common.a_text, "--A"),
                   parse_vec(args.common.b_text, "--B"));
    atoms = boxops::kbox_atoms(args.k, e);
  }
  if (args.common.grid_text.empty())
    throw std::invalid_argument("assemble needs --grid");

  DensityProfile profile =
      boxops::assemble_profile(atoms, io::parse_grid(args.common.grid_text),
                               !args.common.absolute_map);

  nlohmann::json meta;
  meta["kind"] = "assembled-density";
  meta["atom_count"] = atoms.size();
  return deliver_profile(args.common, profile, meta);
}

struct CompareArgs {
  std::string a_text, b_text;
  std::string mode = "mc";
  std::uint64_t samples = 2'000'000;
  std::uint64_t seed = 1;
  int bins = 64;
  bool signed_cube = false;
  bool absolute_map = false;
  std::string atoms_path;
  double q = 0.5;
  bool q_given = false;
  int cells = 128;
  double zmax = 5.0;
  std::string format = "text";
  std::string out_path;
};

int run_compare_quadrature(const CompareArgs& args, const ExponentData& e) {
  if (args.signed_cube || !args.atoms_path.empty())
    throw std::invalid_argument(
        "quadrature mode covers the unsigned unit cube; drop --signed/--atoms");
  if (!(args.q > 0.0 && args.q < 1.0))
    throw std::invalid_argument("quadrature mode needs --q in (0,1)");

  const double closed = volume(e, args.q);
  const oracle::Bracket br = oracle::quadrature_mass_above(e, args.q, args.cells);
  const double tolerance = br.error() + 1e-12 * std::fabs(closed);
  const double discrepancy = std::fabs(closed - br.value);
  const bool pass = discrepancy <= tolerance;

  std::string payload;
  if (args.format == "text") {
    std::ostringstream os;
    os << "mode: quadrature\n"
       << "q: " << io::format_double(args.q) << '\n'
       << "closed volume: " << io::format_double(closed) << '\n'
       << "bracket value: " << io::format_double(br.value) << '\n'
       << "bracket: [" << io::format_double(br.lo) << ", "
       << io::format_double(br.hi) << "]\n"
       << "discrepancy: " << io::format_double(discrepancy) << '\n'
       << "tolerance: " << io::format_double(tolerance) << '\n'
       << "verdict: " << (pass ? "PASS" : "FAIL") << '\n';
    payload = os.str();
  } else if (args.format == "csv") {
    std::ostringstream os;
    os << "q,closed,bracket_value,bracket_lo,bracket_hi,discrepancy,tolerance,"
          "pass\n"
       << io::format_double(args.q) << ',' << io::format_double(closed) << ','
       << io::format_double(br.value) << ',' << io::format_double(br.lo) << ','
       << io::format_double(br.hi) << ',' << io::format_double(discrepancy)
       << ',' << io::format_double(tolerance) << ',' << (pass ? "yes" : "no")
       << '\n';
    payload = os.str();
  } else {
    nlohmann::json j;
    j["mode"] = "quadrature";
    j["q"] = args.q;
    j["cells"] = args.cells;
    j["closed"] = closed;
    j["bracket"] = {{"value", br.value}, {"lo", br.lo}, {"hi", br.hi}};
    j["discrepancy"] = discrepancy;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    payload = j.dump(2) + "\n";
  }

  if (args.out_path.empty())
    std::cout << payload;
  else {
    io::write_text_file(args.out_path, payload);
    std::cout << "wrote " << args.out_path << '\n'
              << "verdict: " << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? 0 : kExitCompareFailed;
}

int run_compare_mc(const CompareArgs& args) {
  const bool ria = !args.absolute_map;
  if (args.bins < 1) throw std::invalid_argument("--bins must be positive");

  AtomSet atoms;
  bool scaled_atoms = false;
  ExponentData e;
  if (!args.atoms_path.empty()) {
    if (!args.a_text.empty() || !args.b_text.empty())
      throw std::invalid_argument("--atoms replaces --A/--B in mc mode");
    atoms = io::load_atoms(args.atoms_path);
    scaled_atoms = true;
  } else {
    e = ExponentData(parse_vec(args.a_text, "--A"),
                     parse_vec(args.b_text, "--B"));
    std::vector<Interval> iv(e.dim(),
                             args.signed_cube ? Interval{-1.0, 1.0}
                                              : Interval{0.0, 1.0});
    atoms.emplace_back(1.0, Box(std::move(iv)), e);
  }

  const double hull_lo = (args.signed_cube || scaled_atoms) ? -1.0 : 0.0;
  std::vector<double> edges;
  for (int j = 0; j <= args.bins; ++j)
    edges.push_back(hull_lo + (1.0 - hull_lo) * static_cast<double>(j) /
                                  static_cast<double>(args.bins));
  edges.front() = hull_lo;
  edges.back() = 1.0;

  auto closed_above = [&](double t) {
    if (scaled_atoms) {
      double sum = 0;
      for (const BoxAtom& atom : atoms)
        sum += boxops::scaled_mass_above(atom, t, ria);
      return sum;
    }
    if (args.signed_cube) return mass_above_signed(e, t, ria);
    if (t >= 1.0) return 0.0;
    if (t <= 0.0) return total_mass(e);
    return volume(e, t);
  };
  std::vector<double> closed(static_cast<std::size_t>(args.bins));
  for (int j = 0; j < args.bins; ++j)
    closed[static_cast<std::size_t>(j)] =
        closed_above(edges[static_cast<std::size_t>(j)]) -
        closed_above(edges[static_cast<std::size_t>(j) + 1]);

  const oracle::Histogram h = oracle::mc_histogram(atoms, edges, args.samples,
                                                   args.seed, args.absolute_map);
  const oracle::CompareReport rep = oracle::compare_masses(h, closed);
  const bool pass = rep.max_abs_z <= args.zmax;

  std::string payload;
  if (args.format == "text") {
    std::ostringstream os;
    os << "mode: mc\n"
       << "atoms: " << atoms.size() << '\n'
       << "samples: " << h.samples << '\n'
       << "bins: " << args.bins << '\n'
       << "max |z|: " << io::format_double(rep.max_abs_z) << " (bin "
       << rep.worst_bin << ")\n"
       << "z threshold: " << io::format_double(args.zmax) << '\n'
       << "verdict: " << (pass ? "PASS" : "FAIL") << '\n';
    payload = os.str();
  } else if (args.format == "csv") {
    std::ostringstream os;
    os << "bin_lo,bin_hi,mc_mass,stderr,closed_mass,z\n";
    for (int j = 0; j < args.bins; ++j) {
      const std::size_t u = static_cast<std::size_t>(j);
      os << io::format_double(h.edges[u]) << ','
         << io::format_double(h.edges[u + 1]) << ','
         << io::format_double(h.mass[u]) << ','
         << io::format_double(h.stderr_[u]) << ','
         << io::format_double(closed[u]) << ',' << io::format_double(rep.z[u])
         << '\n';
    }
    payload = os.str();
  } else {
    nlohmann::json j;
    j["mode"] = "mc";
    j["samples"] = h.samples;
    j["seed"] = args.seed;
    j["edges"] = h.edges;
    j["mc_mass"] = h.mass;
    j["stderr"] = h.stderr_;
    j["closed_mass"] = closed;
    j["z"] = nlohmann::json::array();
    for (double z : rep.z) j["z"].push_back(io::json_number(z));
    j["max_abs_z"] = io::json_number(rep.max_abs_z);
    j["worst_bin"] = rep.worst_bin;
    j["zmax"] = args.zmax;
    j["pass"] = pass;
    payload = j.dump(2) + "\n";
  }

  if (args.out_path.empty())
    std::cout << payload;
  else {
    io::write_text_file(args.out_path, payload);
    std::cout << "wrote " << args.out_path << '\n'
              << "verdict: " << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? 0 : kExitCompareFailed;
}

int run_compare(const CompareArgs& args) {
  if (args.mode == "quadrature")
    return run_compare_quadrature(
        args, ExponentData(parse_vec(args.a_text, "--A"),
                           parse_vec(args.b_text, "--B")));
  return run_compare_mc(args);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact pushforward densities of monomial measures under monomial maps"};
  app.require_subcommand(1);

  ClassifyArgs cl;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "continuity of the signed-cube density at q = 0");
  classify_cmd->add_option("--A", cl.a_text, "map exponents, comma separated")
      ->required();
  classify_cmd
      ->add_option("--B", cl.b_text, "measure exponents, comma separated")
      ->required();
  classify_cmd->add_option("--format", cl.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  classify_cmd->add_option("--out", cl.out_path, "write output to this file");

  ProfileArgs de;
  CLI::App* density_cmd =
      app.add_subcommand("density", "pushforward density values");
  add_expo_options(density_cmd, de);
  CLI::Option* de_q = density_cmd->add_option("--q", de.q, "single point");
  density_cmd->add_option("--grid", de.grid_text,
                          "grid start:stop:count or start:stop:count:log");
  density_cmd->add_flag("--signed", de.signed_cube,
                        "evaluate over [-1,1]^n instead of [0,1]^n");
  density_cmd->add_flag(
      "--absolute-map", de.absolute_map,
      "interpret the map as prod |x_i|^{a_i} (allows non-integer A)");
  density_cmd->add_option("--strategy", de.strategy, "closed-form route")
      ->check(CLI::IsMember({"auto", "partial-fraction", "series"}));
  add_output_options(density_cmd, de);

  ProfileArgs vo;
  CLI::App* volume_cmd =
      app.add_subcommand("volume", "mass of the superlevel set {x^A > q}");
  add_expo_options(volume_cmd, vo);
  CLI::Option* vo_q = volume_cmd->add_option("--q", vo.q, "single point");
  volume_cmd->add_option("--grid", vo.grid_text,
                         "grid start:stop:count or start:stop:count:log");
  volume_cmd->add_flag("--signed", vo.signed_cube,
                       "evaluate over [-1,1]^n instead of [0,1]^n");
  volume_cmd->add_flag(
      "--absolute-map", vo.absolute_map,
      "interpret the map as prod |x_i|^{a_i} (allows non-integer A)");
  volume_cmd->add_option("--strategy", vo.strategy, "closed-form route")
      ->check(CLI::IsMember({"auto", "partial-fraction", "series"}));
  add_output_options(volume_cmd, vo);

  CompareArgs co;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "closed forms against brute-force reference answers");
  compare_cmd->add_option("--A", co.a_text, "map exponents, comma separated");
  compare_cmd->add_option("--B", co.b_text, "measure exponents, comma separated");
  compare_cmd->add_option("--mode", co.mode, "reference kind")
      ->check(CLI::IsMember({"mc", "quadrature"}));
  compare_cmd->add_option("--samples", co.samples, "Monte Carlo draw count");
  compare_cmd->add_option("--seed", co.seed, "Monte Carlo seed");
  compare_cmd->add_option("--bins", co.bins, "histogram bin count");
  compare_cmd->add_flag("--signed", co.signed_cube,
                        "compare over [-1,1]^n instead of [0,1]^n");
  compare_cmd->add_flag(
      "--absolute-map", co.absolute_map,
      "interpret the map as prod |x_i|^{a_i} (allows non-integer A)");
  compare_cmd->add_option("--atoms", co.atoms_path,
                          "JSON atom list replacing the default cube");
  CLI::Option* co_q =
      compare_cmd->add_option("--q", co.q, "quadrature comparison point");
  compare_cmd->add_option("--cells", co.cells,
                          "quadrature cells per axis (refined run doubles it)");
  compare_cmd->add_option("--zmax", co.zmax, "largest acceptable |z| per bin");
  compare_cmd->add_option("--format", co.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  compare_cmd->add_option("--out", co.out_path, "write output to this file");

  AssembleArgs as;
  CLI::App* assemble_cmd = app.add_subcommand(
      "assemble", "density profile of an atom list over a grid");
  assemble_cmd->add_option("--atoms", as.atoms_path, "JSON atom list");
  assemble_cmd->add_option("--k", as.k,
                           "build atoms from the (2k+1)^n tiling of [-1,1]^n");
  assemble_cmd->add_option("--A", as.common.a_text,
                           "map exponents, comma separated");
  assemble_cmd->add_option("--B", as.common.b_text,
                           "measure exponents, comma separated");
  assemble_cmd->add_option("--grid", as.common.grid_text,
                           "grid start:stop:count or start:stop:count:log");
  assemble_cmd->add_flag(
      "--absolute-map", as.common.absolute_map,
      "interpret the map as prod |x_i|^{a_i} (allows non-integer A)");
  add_output_options(assemble_cmd, as.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& h) {
    return app.exit(h);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (classify_cmd->parsed()) return run_classify(cl);
    if (density_cmd->parsed())
      return run_value_profile(de, de_q->count() > 0, true);
    if (volume_cmd->parsed())
      return run_value_profile(vo, vo_q->count() > 0, false);
    if (compare_cmd->parsed()) {
      co.q_given = co_q->count() > 0;
      if (co.mode == "quadrature" && !co.q_given)
        throw std::invalid_argument("quadrature mode needs --q");
      return run_compare(co);
    }
    if (assemble_cmd->parsed()) return run_assemble(as);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitUsage;
  }
  std::cerr << "error: no subcommand\n";
  return kExitUsage;
}
