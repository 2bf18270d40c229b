#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gupheat/cli/commands.hpp"
#include "gupheat/cli/csv.hpp"
#include "gupheat/cli/figures.hpp"
#include "gupheat/cli/run_config.hpp"

using namespace gupheat;
using namespace gupheat::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("gupheat-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream s(line);
  for (std::string cell; std::getline(s, cell, ',');) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -4.0711383244180564e-10, 0.0}) {
    CHECK(std::stod(format_number(v)) == v);
  }
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(700.0) == "700");
}

TEST_CASE("einstein subcommand") {
  const auto r = run({"einstein", "--n-points", "700"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 702);
  CHECK(ls[0] == "# gup-heat einstein v1 normalization=3NkB");
  CHECK(ls[1] == kCurveHeader);
  CHECK(split(ls[2])[0] == "1");
  CHECK(split(ls.back())[0] == "700");
  for (std::size_t i = 2; i < ls.size(); ++i) {
    const auto cells = split(ls[i]);
    REQUIRE(cells.size() == 6);
    CHECK(cells[5] == "ok");
  }

  const auto free = run({"einstein", "--kb-gamma2", "0", "--n-points", "20"});
  REQUIRE(free.code == 0);
  const auto fl = lines(free.out);
  for (std::size_t i = 2; i < fl.size(); ++i) CHECK(split(fl[i])[2] == "0");

  const auto abs = run({"einstein", "--units", "absolute", "--t-min", "240", "--t-max", "240",
                        "--n-points", "1", "--n-atoms", "2"});
  REQUIRE(abs.code == 0);
  const auto cells = split(lines(abs.out)[2]);
  CHECK(std::stod(cells[1]) == doctest::Approx(6.0 * constants::k_B * 0.920674).epsilon(1e-6));
  CHECK(lines(abs.out)[0].find("J/K") != std::string::npos);
}

TEST_CASE("einstein error paths") {
  auto r = run({"einstein", "--theta-E", "-5"});
  CHECK(r.code == 2);
  auto diag = json::parse(lines(r.err).back());
  CHECK(diag["code"] == "domain_error");
  CHECK(diag.contains("context"));

  TempDir dir;
  const fs::path target = dir.path / "missing" / "out.csv";
  r = run({"einstein", "--out", target.string()});
  CHECK(r.code == 2);
  CHECK_FALSE(fs::exists(target));
  CHECK(json::parse(lines(r.err).back())["code"] == "io_error");

  r = run({"einstein", "--bogus"});
  CHECK(r.code == 2);
  r = run({});
  CHECK(r.code == 2);
  r = run({"einstein", "--kb-gamma2", "0.01", "--n-points", "3"});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("writing to a file leaves no temporary behind") {
  TempDir dir;
  const fs::path target = dir.path / "e.csv";
  const auto r = run({"einstein", "--n-points", "5", "--out", target.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(fs::exists(target));
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir.path)) {
    (void)e;
    ++n;
  }
  CHECK(n == 1);
}

TEST_CASE("config files, overrides and strictness") {
  TempDir dir;
  const fs::path cfg = dir.path / "run.json";
  std::ofstream(cfg) << R"({"einstein": {"theta_E": 300, "kb_gamma2": 0},
                            "grid": {"t_min": 300, "t_max": 300, "n_points": 1}})";
  auto r = run({"einstein", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  CHECK(std::stod(split(lines(r.out)[2])[1]) == doctest::Approx(0.920674).epsilon(1e-6));

  r = run({"einstein", "--config", cfg.string(), "--theta-E", "600", "--t-min", "600", "--t-max", "600"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(split(lines(r.out)[2])[0]) == 600.0);
  CHECK(std::stod(split(lines(r.out)[2])[1]) == doctest::Approx(0.920674).epsilon(1e-6));

  const fs::path unknown = dir.path / "unknown.json";
  std::ofstream(unknown) << R"({"einstein": {"theta": 300}})";
  r = run({"einstein", "--config", unknown.string()});
  CHECK(r.code == 2);
  auto diag = json::parse(lines(r.err).back());
  CHECK(diag["code"] == "config_error");

  const fs::path wrong_block = dir.path / "wrong.json";
  std::ofstream(wrong_block) << R"({"debye": {"theta_D": 300}})";
  r = run({"einstein", "--config", wrong_block.string()});
  CHECK(r.code == 2);

  r = run({"einstein", "--config", (dir.path / "nope.json").string()});
  CHECK(r.code == 2);

  const RunConfig parsed = parse_run_config(json::parse(R"({"debye": {"amp_factor": 1e-40}, "format": "json"})"));
  REQUIRE(parsed.debye);
  CHECK(parsed.debye->amp_factor == 1e-40);
  CHECK(parsed.format == Format::json);
  const RunConfig again = parse_run_config(to_json(parsed));
  CHECK(again.debye->amp_factor == 1e-40);
  CHECK_THROWS_AS(parse_run_config(json::parse(R"({"einstein": {}, "debye": {}})")), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json::parse(R"({"grid": {"n_points": "many"}})")), ConfigError);
}

TEST_CASE("debye subcommand") {
  auto r = run({"debye", "--n-points", "70"});
  REQUIRE(r.code == 0);
  auto ls = lines(r.out);
  CHECK(ls[0] == "# gup-heat debye v1 normalization=9NkB");
  for (std::size_t i = 2; i < ls.size(); ++i) {
    const auto c = split(ls[i]);
    CHECK(std::stod(c[3]) <= std::stod(c[1]));
  }

  r = run({"debye", "--kb-gamma2", "0", "--amp-factor", "0", "--n-points", "10"});
  REQUIRE(r.code == 0);
  ls = lines(r.out);
  for (std::size_t i = 2; i < ls.size(); ++i) CHECK(split(ls[i])[4] == "0");

  r = run({"debye", "--normalization", "3NkB", "--n-points", "2"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out)[0] == "# gup-heat debye v1 normalization=3NkB");

  // One Gauss-Kronrod panel cannot resolve the wide low-temperature band; the
  // narrow high-temperature bands still meet the default absolute tolerance.
  r = run({"debye", "--rel-tol", "1e-30", "--max-subdivisions", "1", "--n-points", "5"});
  CHECK(r.code == 0);
  ls = lines(r.out);
  REQUIRE(ls.size() == 7);
  int flagged = 0;
  for (std::size_t i = 2; i < ls.size(); ++i) {
    const auto c = split(ls[i]);
    REQUIRE(c.size() == 6);
    if (c[5] == "numerical_error") {
      ++flagged;
      CHECK(c[1] == "nan");
    } else {
      CHECK(c[5] == "ok");
    }
  }
  CHECK(split(ls[2])[5] == "numerical_error");
  CHECK(flagged >= 1);
  CHECK(r.err.find("flagged_points") != std::string::npos);

  r = run({"debye", "--rel-tol", "1e-30", "--abs-tol", "1e-300", "--max-subdivisions", "1",
           "--n-points", "5"});
  CHECK(r.code == 0);
  ls = lines(r.out);
  for (std::size_t i = 2; i < ls.size(); ++i) CHECK(split(ls[i])[5] == "numerical_error");

  r = run({"debye", "--n-points", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["points"].size() == 3);
  CHECK(doc["normalization"] == "9NkB");
}

TEST_CASE("oracle-check subcommand") {
  auto r = run({"oracle-check"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# verdict=pass") != std::string::npos);

  r = run({"oracle-check", "--b", "1e-3"});
  CHECK(r.code == 2);
  r = run({"oracle-check", "--delta", "0"});
  CHECK(r.code == 2);
  r = run({"oracle-check", "--delta", "1e-9"});
  CHECK(r.code == 2);

  r = run({"oracle-check", "--format", "json", "--b", "1e-3", "--b", "1e-4"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["pairs"].size() == 2);
  CHECK(doc["fitted_order"].get<double>() == doctest::Approx(2.0).epsilon(0.1));
  CHECK(doc["pass"] == true);

  // far outside the perturbative range the discrepancy no longer scales as b^2
  r = run({"oracle-check", "--b", "0.5", "--b", "2", "--b", "8"});
  CHECK(r.code == 1);
}

TEST_CASE("chain subcommand") {
  TempDir dir;
  const fs::path out = dir.path / "scan.csv";
  auto r = run({"chain", "--out", out.string()});
  REQUIRE(r.code == 0);
  const auto ls = lines(slurp(out));
  REQUIRE(ls.size() == 6);
  CHECK(ls[1] == kChainHeader);
  const auto fit = json::parse(slurp(dir.path / "scan.fit.json"));
  CHECK(fit["no_signal"] == false);
  CHECK(fit["exponent"].get<double>() == doctest::Approx(2.0).epsilon(0.05));

  const fs::path lin = dir.path / "linear.csv";
  r = run({"chain", "--gamma2", "0", "--out", lin.string()});
  REQUIRE(r.code == 0);
  const auto lin_fit = json::parse(slurp(dir.path / "linear.fit.json"));
  CHECK(lin_fit["no_signal"] == true);
  for (std::size_t i = 2; i < 6; ++i) {
    CHECK(std::abs(std::stod(split(lines(slurp(lin))[i])[3])) < 1e-6);
  }

  r = run({"chain", "--dt", "0.5"});
  CHECK(r.code == 1);
  CHECK(r.out.find("drift_gate") != std::string::npos);

  r = run({"chain", "--amplitude", "0.1", "--amplitude", "0.2"});
  CHECK(r.code == 2);
  r = run({"chain", "--mode-index", "40"});
  CHECK(r.code == 2);
}

TEST_CASE("figures subcommand") {
  TempDir dir;
  auto r = run({"figures", "--out", dir.path.string(), "--describe"});
  REQUIRE(r.code == 0);
  for (const char* f : {"fig1.csv", "fig2.csv", "fig3.csv", "fig4.csv", "figures.json"}) {
    CHECK(fs::exists(dir.path / f));
  }

  const auto fig1 = lines(slurp(dir.path / "fig1.csv"));
  REQUIRE(fig1.size() == 703);
  CHECK(fig1[2] == "0,0,0,0,nan,limit");
  CHECK(split(fig1[3])[0] == "1");

  const auto fig4 = lines(slurp(dir.path / "fig4.csv"));
  const auto header = split(fig4[1]);
  REQUIRE(header.size() == 7);
  CHECK(header[1] == "relative_delta_kbg2_1e-1");
  CHECK(header[5] == "relative_delta_kbg2_1e-9");
  CHECK(fig4.size() == 703);
  for (std::size_t i = 3; i < fig4.size(); ++i) CHECK(split(fig4[i]).size() == 7);

  const auto catalog = json::parse(slurp(dir.path / "figures.json"));
  CHECK(catalog == figure_catalog());
  const auto& f1 = catalog["figures"][0];
  CHECK(f1["insets"] == json::parse("[[40.0, 50.0], [100.0, 130.0]]"));
  CHECK(catalog["figures"][3]["insets"].size() == 3);
  CHECK(catalog["figures"][2]["params"]["theta_D"] == 343.0);

  r = run({"figures", "--figure", "fig9"});
  CHECK(r.code == 2);
  r = run({"figures", "--out", (dir.path / "absent").string()});
  CHECK(r.code == 2);
}

TEST_CASE("figure specs") {
  const auto f1 = figure_spec(FigureId::fig1);
  const auto& e = std::get<EinsteinParams>(f1.params);
  CHECK(e.theta_E == 240.0);
  CHECK(e.kb_gamma2 == doctest::Approx(std::pow(10.0, -4.5)));
  CHECK(f1.sweep.empty());
  const auto f4 = figure_spec(FigureId::fig4);
  CHECK(std::get<DebyeParams>(f4.params).theta_D == 343.0);
  REQUIRE(f4.sweep.size() == 5);
  CHECK(f4.sweep[0].value() == 1e-1);
  CHECK(f4.sweep[4].value() == doctest::Approx(1e-9));
  CHECK(parse_figure_id("fig2") == FigureId::fig2);
  CHECK_FALSE(parse_figure_id("fig5"));
}

TEST_CASE("figure output is byte-identical across runs") {
  TempDir a, b;
  REQUIRE(run({"figures", "--out", a.path.string()}).code == 0);
  REQUIRE(run({"figures", "--out", b.path.string()}).code == 0);
  for (const char* f : {"fig1.csv", "fig2.csv", "fig3.csv", "fig4.csv"}) {
    CHECK(slurp(a.path / f) == slurp(b.path / f));
  }
}
