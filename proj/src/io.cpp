#include "pushfwd/io.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace pushfwd::io {

namespace {

double parse_double_field(const std::string& field, const char* what) {
  double v = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last)
    throw std::invalid_argument(std::string("grid: cannot parse ") + what +
                                " from '" + field + "'");
  return v;
}

long parse_count_field(const std::string& field) {
  long v = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last || v < 1)
    throw std::invalid_argument("grid: count must be a positive integer, got '" +
                                field + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, p);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> fields;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ':')) fields.push_back(cur);
  if (fields.size() != 3 && fields.size() != 4)
    throw std::invalid_argument(
        "grid: expected start:stop:count or start:stop:count:log, got '" +
        text + "'");
  const bool log_spacing = fields.size() == 4;
  if (log_spacing && fields[3] != "log")
    throw std::invalid_argument("grid: fourth field must be 'log', got '" +
                                fields[3] + "'");

  const double start = parse_double_field(fields[0], "start");
  const double stop = parse_double_field(fields[1], "stop");
  const long count = parse_count_field(fields[2]);
  if (!std::isfinite(start) || !std::isfinite(stop))
    throw std::invalid_argument("grid: endpoints must be finite");
  if (log_spacing && (start <= 0.0 || stop <= 0.0))
    throw std::invalid_argument("grid: log spacing needs positive endpoints");

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    grid.push_back(start);
    return grid;
  }
  for (long i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    grid.push_back(log_spacing
                       ? std::exp(std::log(start) +
                                  f * (std::log(stop) - std::log(start)))
                       : start + f * (stop - start));
  }
  grid.front() = start;
  grid.back() = stop;
  return grid;
}

void write_profile_csv(std::ostream& os, const DensityProfile& p) {
  p.validate();
  os << "q,value,path\n";
  for (std::size_t i = 0; i < p.grid.size(); ++i)
    os << format_double(p.grid[i]) << ',' << format_double(p.values[i]) << ','
       << to_string(p.path[i]) << '\n';
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

nlohmann::json profile_to_json(const DensityProfile& p) {
  p.validate();
  nlohmann::json j;
  j["grid"] = p.grid;
  j["values"] = nlohmann::json::array();
  for (double v : p.values) j["values"].push_back(json_number(v));
  j["path"] = nlohmann::json::array();
  for (EvalPath path : p.path) j["path"].push_back(to_string(path));
  return j;
}

nlohmann::json atoms_to_json(const AtomSet& atoms) {
  nlohmann::json list = nlohmann::json::array();
  for (const BoxAtom& atom : atoms) {
    nlohmann::json ja;
    ja["coeff"] = atom.coeff;
    ja["box"] = nlohmann::json::array();
    for (const Interval& iv : atom.box.iv)
      ja["box"].push_back({iv.lo, iv.hi});
    ja["a"] = atom.expo.a;
    ja["b"] = atom.expo.b;
    list.push_back(std::move(ja));
  }
  return nlohmann::json{{"atoms", std::move(list)}};
}

AtomSet atoms_from_json(const nlohmann::json& j) {
  const nlohmann::json* list = &j;
  if (j.is_object()) {
    if (!j.contains("atoms"))
      throw std::invalid_argument("atoms: object form needs an 'atoms' array");
    list = &j.at("atoms");
  }
  if (!list->is_array())
    throw std::invalid_argument("atoms: expected an array of atom objects");

  AtomSet atoms;
  for (std::size_t idx = 0; idx < list->size(); ++idx) {
    const nlohmann::json& ja = (*list)[idx];
    try {
      const double coeff = ja.at("coeff").get<double>();
      std::vector<Interval> iv;
      for (const nlohmann::json& side : ja.at("box")) {
        if (!side.is_array() || side.size() != 2)
          throw std::invalid_argument("each box side needs exactly [lo, hi]");
        iv.push_back({side[0].get<double>(), side[1].get<double>()});
      }
      ExponentData expo(ja.at("a").get<std::vector<double>>(),
                        ja.at("b").get<std::vector<double>>());
      atoms.emplace_back(coeff, Box(std::move(iv)), std::move(expo));
    } catch (const std::exception& ex) {
      throw std::invalid_argument("atoms[" + std::to_string(idx) +
                                  "]: " + ex.what());
    }
  }
  return atoms;
}

AtomSet load_atoms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open atoms file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw std::runtime_error("cannot parse atoms file " + path + ": " + ex.what());
  }
  return atoms_from_json(j);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::string plot_script(const std::string& csv_path) {
  std::string png = csv_path;
  const std::size_t dot = png.find_last_of('.');
  if (dot != std::string::npos && png.find('/', dot) == std::string::npos)
    png.resize(dot);
  png += ".png";

  std::ostringstream os;
  os << "#!/usr/bin/env python3\n"
     << "import csv\n"
     << "import matplotlib\n"
     << "matplotlib.use(\"Agg\")\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "qs, vals = [], []\n"
     << "with open(" << nlohmann::json(csv_path).dump() << ") as f:\n"
     << "    for row in csv.DictReader(f):\n"
     << "        qs.append(float(row[\"q\"]))\n"
     << "        vals.append(float(row[\"value\"]))\n\n"
     << "fig, ax = plt.subplots(figsize=(7, 4.5))\n"
     << "ax.plot(qs, vals, marker=\".\", lw=1)\n"
     << "ax.set_xlabel(\"q\")\n"
     << "ax.set_ylabel(\"value\")\n"
     << "ax.grid(True, alpha=0.3)\n"
     << "fig.tight_layout()\n"
     << "fig.savefig(" << nlohmann::json(png).dump() << ", dpi=150)\n"
     << "print(\"wrote\", " << nlohmann::json(png).dump() << ")\n";
  return os.str();
}

}  // namespace pushfwd::io
