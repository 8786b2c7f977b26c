#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "pushfwd/io.hpp"

using namespace pushfwd;
using namespace pushfwd::io;

TEST_CASE("format_double round-trips and names non-finite values") {
  for (double v : {0.25, 0.1, 1.0 / 3.0, -2.5e-300, 6.02e23, -0.0}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("grid parsing: linear, log, and the degenerate count") {
  std::vector<double> lin = parse_grid("0:1:5");
  REQUIRE(lin.size() == 5);
  CHECK(lin.front() == 0.0);
  CHECK(lin.back() == 1.0);
  CHECK(lin[2] == doctest::Approx(0.5).epsilon(1e-15));

  std::vector<double> lg = parse_grid("0.001:1:4:log");
  REQUIRE(lg.size() == 4);
  CHECK(lg.front() == 0.001);
  CHECK(lg.back() == 1.0);
  CHECK(lg[1] == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(lg[2] == doctest::Approx(0.1).epsilon(1e-14));

  std::vector<double> one = parse_grid("0.3:0.9:1");
  REQUIRE(one.size() == 1);
  CHECK(one[0] == 0.3);

  CHECK_THROWS_AS(parse_grid("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("a:b:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("-1:1:3:log"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1:3:lin"), std::invalid_argument);
}

TEST_CASE("profile CSV golden output") {
  DensityProfile p;
  p.grid = {0.5, 1.0};
  p.values = {0.25, 0.0};
  p.path = {EvalPath::PartialFraction, EvalPath::Limit};
  std::ostringstream os;
  write_profile_csv(os, p);
  CHECK(os.str() == "q,value,path\n0.5,0.25,partial-fraction\n1,0,limit\n");
}

TEST_CASE("profile JSON encodes non-finite values as strings") {
  DensityProfile p;
  p.grid = {0.0, 0.5};
  p.values = {std::numeric_limits<double>::infinity(), 0.25};
  p.path = {EvalPath::Limit, EvalPath::Series};
  nlohmann::json j = profile_to_json(p);
  CHECK(j["values"][0].is_string());
  CHECK(j["values"][0] == "inf");
  CHECK(j["values"][1] == 0.25);
  CHECK(j["path"][1] == "series");
}

TEST_CASE("atom lists survive a JSON round trip") {
  ExponentData e({1.0, 2.0}, {0.0, 1.5});
  AtomSet atoms{
      {0.5, Box{{Interval{-0.75, 0.75}, Interval{-0.2, 0.4}}}, e},
      {-0.25, Box{{Interval{-1.0, 1.0}, Interval{-1.0, 1.0}}}, e},
  };
  nlohmann::json j = atoms_to_json(atoms);
  AtomSet back = atoms_from_json(j);
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back[i].coeff == atoms[i].coeff);
    for (std::size_t d = 0; d < 2; ++d) {
      CHECK(back[i].box.iv[d].lo == atoms[i].box.iv[d].lo);
      CHECK(back[i].box.iv[d].hi == atoms[i].box.iv[d].hi);
      CHECK(back[i].expo.a[d] == atoms[i].expo.a[d]);
      CHECK(back[i].expo.b[d] == atoms[i].expo.b[d]);
    }
  }
  // The bare array form is accepted too.
  CHECK(atoms_from_json(j["atoms"]).size() == 2);
}

TEST_CASE("atom parse errors carry the offending index") {
  nlohmann::json bad = nlohmann::json::array();
  bad.push_back({{"coeff", 1.0}, {"a", {1.0}}, {"b", {0.0}}});  // box missing
  try {
    atoms_from_json(bad);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& err) {
    CHECK(std::string(err.what()).find("atoms[0]") != std::string::npos);
  }
}

TEST_CASE("load_atoms reports unreadable files") {
  CHECK_THROWS_AS(load_atoms("/nonexistent/path/atoms.json"),
                  std::runtime_error);
}

TEST_CASE("plot script embeds the CSV path") {
  const std::string script = plot_script("/tmp/some profile.csv");
  CHECK(script.find("matplotlib") != std::string::npos);
  CHECK(script.find("\"/tmp/some profile.csv\"") != std::string::npos);
  CHECK(script.back() == '\n');
}

TEST_CASE("json_number falls back to strings off the real line") {
  CHECK(json_number(2.5) == 2.5);
  CHECK(json_number(-std::numeric_limits<double>::infinity()) == "-inf");
}
