#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <regex>
#include <sstream>

#include "nearcrit/config.hpp"
#include "nearcrit/experiments.hpp"
#include "nearcrit/svg.hpp"
#include "nearcrit/table.hpp"

using namespace nearcrit;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nearcrit_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("CSV round trip is exact") {
  Table t;
  t.add_meta("experiment", "crossing");
  t.add_meta("note", "a, b");
  t.columns = {"n", "value", "label"};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) t.add_row({std::int64_t{i}, u(rng) * std::pow(10.0, i % 40 - 20), std::string("row \"") + std::to_string(i)});
  t.add_row({std::int64_t{-5}, 1.0, std::string("")});
  t.add_row({std::int64_t{0}, 0.1, std::string("x,y")});
  const Table back = parse_csv(to_csv(t));
  CHECK(back == t);
  CHECK(format_real(1.0) == "1.0");
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK_THROWS_AS(t.add_row({std::int64_t{1}}), std::invalid_argument);
  CHECK_THROWS(parse_csv("a,b\n1\n"));

  const fs::path dir = scratch_dir("csv");
  write_csv(dir / "t.csv", t);
  CHECK(read_csv(dir / "t.csv") == t);
  CHECK(t.number(0, "n") == 0.0);
  CHECK_THROWS(t.number(0, "label"));
}

TEST_CASE("configuration files") {
  const auto cfg = parse_config_text("# comment\n\nn = 16\np_mode = critical\n  samples=20  \n");
  CHECK(cfg.at("n") == "16");
  CHECK(cfg.at("p-mode") == "critical");
  CHECK(cfg.at("samples") == "20");
  CHECK_THROWS_AS(parse_config_text("n = 1\nn = 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("just words\n"), std::invalid_argument);
  CHECK(parse_int_list("32, 64,128") == std::vector<int>{32, 64, 128});
  CHECK(parse_real_list("0.5,0.25") == std::vector<double>{0.5, 0.25});
  CHECK_THROWS_AS(parse_int_list("3,x"), std::invalid_argument);
  CHECK(parse_seed("18446744073709551615") == std::numeric_limits<std::uint64_t>::max());
  CHECK_THROWS_AS(parse_seed("-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_real("0.5x", "p"), std::invalid_argument);
}

TEST_CASE("SVG rendering") {
  const TriangleDomain d(2);
  std::vector<std::uint8_t> black(d.size(), 1);
  for (SiteIndex i = 0; i < d.size(); ++i)
    if (d.boundary_class(i) == BoundaryClass::WhiteBoundary) black[i] = 0;
  const InterfacePath path = explore(d, Coloring::dense(d, black));
  SvgScene scene;
  scene.black = &black;
  scene.path = &path;
  scene.regions = {Disc{{0, 0.3}, 0.1}};
  const std::string svg = render_svg(d, scene);
  CHECK(count_of(svg, "<polygon class=\"hex\"") == d.size());
  CHECK(count_of(svg, "class=\"interface\"") == 1);
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);

  SUBCASE("all-black interface runs along the right side") {
    const TriangleDomain big(32);
    std::vector<std::uint8_t> all(big.size(), 1);
    for (SiteIndex i = 0; i < big.size(); ++i)
      if (big.boundary_class(i) == BoundaryClass::WhiteBoundary) all[i] = 0;
    const InterfacePath p = explore(big, Coloring::dense(big, all));
    SvgScene s;
    s.black = &all;
    s.path = &p;
    const std::string doc = render_svg(big, s);
    const auto start = doc.find("points=\"", doc.find("class=\"interface\""));
    std::istringstream pts(doc.substr(start + 8, doc.find('"', start + 8) - start - 8));
    std::string pair;
    std::size_t n = 0;
    while (pts >> pair) {
      const double x = std::stod(pair.substr(0, pair.find(',')));
      const double y = std::stod(pair.substr(pair.find(',') + 1));
      // Canvas: unit x maps to (x + 0.52) * 1000, unit y to (0.886 - y) * 1000.
      const double ux = x / 1000.0 - 0.52;
      const double uy = std::sqrt(3.0) / 2.0 + 0.02 - y / 1000.0;
      const double to_right_side = (std::sqrt(3.0) / 2.0 - uy - std::sqrt(3.0) * ux) / 2.0;
      CHECK(ux > -1.0 / 32);
      if (uy > 2.0 / 32) CHECK(std::abs(to_right_side) < 1.5 / 32);
      ++n;
    }
    CHECK(n == p.length() + 1);
  }
  CHECK_THROWS_AS(render_svg(TriangleDomain(2050), scene), std::invalid_argument);
}

TEST_CASE("experiment configuration validation") {
  ExperimentConfig c;
  c.experiment = "crossing";
  c.params = {{"n", "16"}, {"p", "0.5"}};
  validate_config(c);
  CHECK(c.params.at("samples") == "10000");

  ExperimentConfig unknown = c;
  unknown.params["bogus"] = "1";
  CHECK_THROWS_AS(validate_config(unknown), std::invalid_argument);
  ExperimentConfig missing;
  missing.experiment = "crossing";
  missing.params = {{"n", "16"}};
  CHECK_THROWS_AS(validate_config(missing), std::invalid_argument);
  ExperimentConfig odd = c;
  odd.params["n"] = "15";
  CHECK_THROWS_AS(validate_config(odd), std::invalid_argument);
  ExperimentConfig bad_p = c;
  bad_p.params["p"] = "1.2";
  CHECK_THROWS_AS(validate_config(bad_p), std::invalid_argument);
  ExperimentConfig nope;
  nope.experiment = "nothing";
  CHECK_THROWS_AS(validate_config(nope), std::invalid_argument);

  for (const ExperimentSpec& spec : experiment_specs())
    for (const KeySpec& k : spec.keys) CHECK_FALSE(k.help.empty());
}

TEST_CASE("experiments run and write their files") {
  const fs::path dir = scratch_dir("run");
  ExperimentConfig c;
  c.experiment = "enumerate";
  c.params = {{"n", "2"}, {"p", "0.5"}};
  ExperimentResult r = run_experiment(c);
  CHECK(r.summary.rfind("R=0.5", 0) == 0);

  c.experiment = "crossing";
  c.params = {{"n", "16"}, {"p", "0.5"}, {"samples", "2000"}, {"svg", (dir / "c.svg").string()},
              {"path-dump", (dir / "c.path").string()}};
  c.seed = 7;
  c.output = (dir / "a.csv").string();
  write_outputs(c, run_experiment(c));
  c.output = (dir / "b.csv").string();
  c.workers = 3;
  write_outputs(c, run_experiment(c));
  std::ifstream a(dir / "a.csv"), b(dir / "b.csv");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(fs::exists(dir / "c.svg"));
  CHECK(fs::exists(dir / "c.path"));

  c.experiment = "length";
  c.params = {{"p-mode", "critical"}, {"n-list", "16,32,64"}, {"samples", "50"}};
  c.output = (dir / "len.csv").string();
  r = run_experiment(c);
  write_outputs(c, r);
  const Table t = read_csv(dir / "len.csv");
  CHECK(t.rows.size() == 3);
  bool has_slope = false;
  for (const auto& [k, v] : t.metadata) has_slope = has_slope || k == "fit_slope";
  CHECK(has_slope);

  c.experiment = "pstar";
  c.params = {{"n", "16"}, {"samples", "100"}, {"max-samples", "200"}, {"tolerance", "0.0001"}};
  c.output = (dir / "pstar.csv").string();
  r = run_experiment(c);
  write_outputs(c, r);
  CHECK(read_csv(dir / "pstar.csv").rows.size() == 1);

  ExperimentConfig bad;
  bad.experiment = "crossing";
  bad.params = {{"n", "3"}, {"p", "0.5"}};
  bad.output = (dir / "bad.csv").string();
  CHECK_THROWS(run_experiment(bad));
  CHECK_FALSE(fs::exists(dir / "bad.csv"));
}

TEST_CASE("every experiment runs at a tiny scale") {
  const std::map<std::string, std::map<std::string, std::string>> tiny = {
      {"crossing", {{"n", "8"}, {"p", "0.5"}, {"samples", "20"}}},
      {"pstar", {{"n", "8"}, {"samples", "50"}, {"max-samples", "100"}, {"tolerance", "0.05"}}},
      {"corrlen", {{"p-list", "0.7,0.8,0.9"}, {"samples", "50"}, {"max-samples", "100"}, {"n-max", "16"}, {"arm-samples", "20"}}},
      {"arms", {{"pattern", "2"}, {"radii", "2,4,8"}, {"samples", "50"}}},
      {"quasimult", {{"n1", "2"}, {"n2", "4"}, {"samples", "50"}}},
      {"length", {{"n-list", "8,16"}, {"samples", "10"}}},
      {"dimension", {{"n", "64"}, {"lambdas", "1,2,4,8"}, {"samples", "5"}}},
      {"asymmetry", {{"n", "16"}, {"samples", "20"}}},
      {"regime-sweep", {{"b-list", "0.5,1"}, {"n-list", "8,16"}, {"samples", "20"}}},
      {"pivotal-sweep", {{"n", "32"}, {"p-hi", "0.6"}, {"fields", "5"}}},
      {"goodtri", {{"n", "128"}, {"samples", "3"}, {"fhat-samples", "5"}}},
      {"enumerate", {{"n", "4"}, {"p", "0.3"}}},
      {"render", {{"n", "8"}, {"svg", (fs::temp_directory_path() / "nearcrit_tiny.svg").string()}, {"p2", "0.6"}}},
  };
  for (const ExperimentSpec& spec : experiment_specs()) {
    CAPTURE(spec.name);
    ExperimentConfig c;
    c.experiment = spec.name;
    c.params = tiny.at(spec.name);
    const ExperimentResult r = run_experiment(c);
    CHECK_FALSE(r.summary.empty());
    CHECK(parse_csv(to_csv(r.table)) == r.table);
  }
}
