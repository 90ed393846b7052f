#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "mlb/mixture.hpp"
#include "mlb_cli/cli.hpp"
#include "mlb_cli/config.hpp"
#include "mlb_cli/runner.hpp"
#include "mlb_cli/verify.hpp"
#include "support/test_support.hpp"

namespace fs = std::filesystem;
using doctest::Approx;
using namespace mlb;
using namespace mlb::cli;

namespace {

// Fresh scratch directory per test case, removed on exit.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    path_ = fs::temp_directory_path() / ("mlb-test-" + tag + "-" + std::to_string(counter_++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  [[nodiscard]] const fs::path& path() const { return path_; }

  fs::path write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p;
  }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> raw;
  std::vector<std::vector<double>> rows;

  [[nodiscard]] std::size_t column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (header[k] == name) return k;
    }
    FAIL("missing column " << name);
    return 0;
  }
};

Csv read_csv(const fs::path& p) {
  Csv csv;
  const auto lines = split(slurp(p), '\n');
  REQUIRE(!lines.empty());
  csv.header = split(lines.front(), ',');
  for (std::size_t l = 1; l < lines.size(); ++l) {
    if (lines[l].empty()) continue;
    auto cells = split(lines[l], ',');
    std::vector<double> values;
    for (const auto& c : cells) values.push_back(std::strtod(c.c_str(), nullptr));
    csv.raw.push_back(std::move(cells));
    csv.rows.push_back(std::move(values));
  }
  return csv;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kTwoSpecies = R"(name: two
species:
  - {name: a, mass: 1, density: 1, velocity: 0.5, theta: 0.25}
  - {name: b, mass: 1, density: 1, velocity: -0.25, theta: 0.125}
kappa: 2
time: {dt: 0.2, t_end: 2}
)";

}  // namespace

TEST_SUITE("presets") {
  TEST_CASE("test-1 preset carries the published setup") {
    const auto c = preset("paper-test-1");
    REQUIRE(c.species.size() == 2);
    CHECK(c.species[0].mass == 1.0);
    CHECK(c.species[1].mass == 1.0);
    CHECK(c.species[0].velocity == 0.5);
    CHECK(c.species[1].velocity == -0.25);
    CHECK(c.species[0].temperature == 0.25);
    CHECK(c.species[1].temperature == 0.125);
    CHECK(c.species[0].density == 1.0);
    CHECK(c.v_max == 4.0);
    CHECK(c.cells == 80);
    CHECK(c.dt == 0.2);
    CHECK(c.t_end == 20.0);
    CHECK(c.step_count() == 100);
    const auto k = c.kappa_table();
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) CHECK(k(i, j) == 2.0);
    }
    const auto limit = conserved_state(c.analytic_moments());
    CHECK(limit.velocity.front() == Approx(0.125).epsilon(1e-15));
    CHECK(limit.temperature == Approx(0.328125).epsilon(1e-15));
  }

  TEST_CASE("test-2 preset uses mass ratio 2 and kappa 3") {
    const auto c = preset("paper-test-2");
    CHECK(c.species[0].mass == 2.0);
    CHECK(c.species[1].mass == 1.0);
    // theta = 0.25 for the heavy species, so T = 0.5.
    CHECK(c.species[0].temperature == 0.5);
    CHECK(c.species[1].temperature == 0.125);
    const auto k = c.kappa_table();
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) CHECK(k(i, j) == 3.0);
    }
    CHECK(k(1, 0) == Approx(2.0 * kappa_lower_bound(1.0, 2.0)));
    const auto limit = conserved_state(c.analytic_moments());
    CHECK(limit.velocity.front() == Approx(0.25).epsilon(1e-15));
    CHECK(limit.temperature == Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("initial distributions are the configured Maxwellians") {
    const auto c = preset("paper-test-1");
    const auto f = c.initial_distributions();
    const auto g = c.grid();
    CHECK(g.size() == 80);
    const auto m = moments_of(f.species(0), g, 1.0);
    CHECK(std::abs(m.velocity - 0.5) <= 1e-6);
    CHECK(std::abs(m.temperature - 0.25) <= 1e-6);
  }

  TEST_CASE("unknown preset and listing") {
    CHECK_THROWS_AS(preset("paper-test-3"), ConfigError);
    const auto names = preset_names();
    CHECK(names.size() == 2);
    for (const auto& n : names) CHECK(!preset_description(n).empty());
    const auto r = invoke({"presets"});
    CHECK(r.code == kExitSuccess);
    CHECK(r.out.find("paper-test-1") != std::string::npos);
    CHECK(r.out.find("paper-test-2") != std::string::npos);
  }
}

TEST_SUITE("config loading") {
  TEST_CASE("a parsed file matches the equivalent preset") {
    const auto c = parse_config(kTwoSpecies, "two.yaml");
    const auto p = preset("paper-test-1");
    REQUIRE(c.species.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(c.species[i].temperature == p.species[i].temperature);
      CHECK(c.species[i].velocity == p.species[i].velocity);
    }
    CHECK(c.species[0].name == "a");
    CHECK(c.step_count() == 10);
  }

  TEST_CASE("kappa below mu for equal masses cites mu = 1 and the line") {
    const std::string text = R"(species:
  - {mass: 1, density: 1, temperature: 1}
  - {mass: 1, density: 1, temperature: 1}
kappa: 0.5
)";
    try {
      (void)parse_config(text, "bad.yaml");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      const std::string what = e.what();
      CHECK(e.line() == 4);
      CHECK(what.find("bad.yaml:4:") == 0);
      CHECK(what.find("kappa") != std::string::npos);
      CHECK(what.find("< mu_1,1 = 1 ") != std::string::npos);
    }
  }

  TEST_CASE("table entry below mu names the offending ordered pair") {
    const std::string text = R"(species:
  - {mass: 2, density: 1, temperature: 1}
  - {mass: 1, density: 1, temperature: 1}
kappa:
  table:
    - [3, 3]
    - [1, 3]
)";
    try {
      (void)parse_config(text, "table.yaml");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      const std::string what = e.what();
      CHECK(e.line() == 7);
      CHECK(what.find("kappa(2,1)") != std::string::npos);
      CHECK(what.find("mu_2,1 = 1.5") != std::string::npos);
    }
  }

  TEST_CASE("scaled kappa uses c times the larger mu of the pair") {
    const std::string text = R"(species:
  - {mass: 2, density: 1, temperature: 1}
  - {mass: 1, density: 1, temperature: 1}
kappa: {scale: 2}
)";
    const auto k = parse_config(text, "s.yaml").kappa_table();
    CHECK(k(0, 1) == Approx(3.0));
    CHECK(k(1, 0) == Approx(3.0));
  }

  TEST_CASE("YAML syntax errors carry a line number") {
    try {
      (void)parse_config("species:\n  - {mass: 1\nkappa: 2\n", "syntax.yaml");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() >= 1);
      CHECK(std::string(e.what()).find("syntax.yaml:") == 0);
    }
  }

  TEST_CASE("unknown keys, missing temperature and bad values are rejected") {
    const std::string base = "species:\n  - {mass: 1, density: 1, temperature: 1}\nkappa: 2\n";
    CHECK_THROWS_AS(parse_config(base + "colour: red\n", "x"), ConfigError);
    CHECK_THROWS_AS(parse_config("species:\n  - {mass: 1, density: 1}\nkappa: 2\n", "x"), ConfigError);
    CHECK_THROWS_AS(parse_config("species:\n  - {mass: 1, temperature: 1, theta: 1}\nkappa: 2\n", "x"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("species:\n  - {mass: -1, temperature: 1}\nkappa: 2\n", "x"), ConfigError);
    CHECK_THROWS_AS(parse_config(base + "time: {dt: 0}\n", "x"), ConfigError);
    CHECK_THROWS_AS(parse_config(base + "mode: fluid\n", "x"), ConfigError);
    CHECK_THROWS_AS(parse_config("species:\n  - {mass: 1, temperature: 1}\n", "x"), ConfigError);
    try {
      (void)parse_config("species:\n  - {mass: 1, density: 1}\nkappa: 2\n", "x");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 2);
    }
  }

  TEST_CASE("load_config reads files and reports missing ones") {
    ScratchDir dir("load");
    const auto p = dir.write("c.yaml", kTwoSpecies);
    CHECK(load_config(p).species.size() == 2);
    CHECK(resolve_config(p.string()).name == "two");
    CHECK(resolve_config("paper-test-2").species[0].mass == 2.0);
    CHECK_THROWS_AS(load_config(dir.path() / "absent.yaml"), ConfigError);
  }
}

TEST_SUITE("run") {
  TEST_CASE("CSV layout, row count and full precision") {
    ScratchDir dir("csv");
    auto c = parse_config(kTwoSpecies, "two.yaml");
    for (const int stride : {1, 3}) {
      c.stride = stride;
      c.csv = "t" + std::to_string(stride) + ".csv";
      const auto s = run_simulation(c, dir.path());
      REQUIRE_FALSE(s.failed);
      const auto csv = read_csv(s.csv_path);
      CHECK(csv.header == split(csv_header(2), ','));
      CHECK(csv.header.front() == "t");
      CHECK(csv.header[1] == "u_1");
      CHECK(csv.header[2] == "T_1");
      CHECK(csv.header[3] == "n_1");
      CHECK(csv.header[4] == "E_1");
      CHECK(csv.header.size() == 1 + 4 * 2 + 8);
      CHECK(csv.rows.size() == static_cast<std::size_t>(1 + c.step_count() / stride));
      for (const auto& row : csv.rows) CHECK(row.size() == csv.header.size());
      // Round trip through text is exact at 17 significant digits.
      for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        CHECK(csv.rows[r][csv.column("u_1")] == s.samples[r].velocity[0]);
        CHECK(csv.rows[r][csv.column("H")] == s.samples[r].entropy);
      }
      CHECK(csv.raw[1][csv.column("T_1")].size() >= 17);
    }
  }

  TEST_CASE("identical configs give bit-identical CSV") {
    ScratchDir a("det-a"), b("det-b");
    const auto c = parse_config(kTwoSpecies, "two.yaml");
    const auto sa = run_simulation(c, a.path());
    const auto sb = run_simulation(c, b.path());
    CHECK(slurp(sa.csv_path) == slurp(sb.csv_path));
    CHECK(!slurp(sa.csv_path).empty());
  }

  TEST_CASE("row to row: entropy does not increase and totals hold within the residual") {
    for (const char* name : {"paper-test-1", "paper-test-2"}) {
      ScratchDir dir("rows");
      auto c = preset(name);
      c.t_end = 6.0;
      const auto s = run_simulation(c, dir.path());
      REQUIRE_FALSE(s.failed);
      const auto csv = read_csv(s.csv_path);
      const auto h = csv.column("H"), p = csv.column("total_momentum"), e = csv.column("total_energy");
      const auto pr = csv.column("momentum_residual"), er = csv.column("energy_residual");
      const auto mr = csv.column("mass_residual");
      const auto& first = csv.rows.front();
      double p_scale = 0.0;
      const auto initial = c.analytic_moments();
      for (std::size_t i = 0; i < initial.size(); ++i) {
        p_scale += initial.mass_density(i) * std::abs(initial.velocity(i).front());
      }
      for (std::size_t r = 1; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        CHECK(row[h] <= csv.rows[r - 1][h]);
        CHECK(std::abs(row[e] - first[e]) <= (row[er] + 1e-15) * std::abs(first[e]) * (1 + 1e-9));
        CHECK(std::abs(row[p] - first[p]) <= (row[pr] + 1e-15) * p_scale * (1 + 1e-9));
        CHECK(row[mr] <= 1e-12);
        CHECK(row[pr] <= 1e-10);
        CHECK(row[er] <= 1e-10);
      }
      CHECK(s.max_entropy_increase <= 0.0);
      CHECK(s.max_gst_iterations >= 2);
    }
  }

  TEST_CASE("the plot is written with both panels and the limit lines") {
    ScratchDir dir("svg");
    auto c = preset("paper-test-1");
    c.t_end = 2.0;
    const auto s = run_simulation(c, dir.path());
    REQUIRE(fs::exists(s.plot_path));
    const auto svg = slurp(s.plot_path);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("velocity") != std::string::npos);
    CHECK(svg.find("temperature") != std::string::npos);
    CHECK(svg.find("u_inf") != std::string::npos);
    CHECK(svg.find("T_inf") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
  }

  TEST_CASE("empty output directory writes nothing") {
    auto c = preset("paper-test-1");
    c.t_end = 0.4;
    const auto s = run_simulation(c);
    CHECK(s.csv_path.empty());
    CHECK(s.plot_path.empty());
    CHECK(s.samples.size() == 3);
  }

  TEST_CASE("moments mode relaxes without a grid and conserves totals") {
    auto c = preset("paper-test-1");
    c.mode = Mode::Moments;
    c.t_end = 200.0;
    c.dt = 1.0;
    c.reference_dt = 1e-2;
    const auto s = run_simulation(c);
    REQUIRE_FALSE(s.failed);
    const auto& f = s.final_sample();
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(std::abs(f.velocity[i] - 0.125) <= 1e-6);
      CHECK(std::abs(f.temperature[i] - 0.328125) <= 1e-6);
    }
    CHECK(std::isnan(f.entropy));
    CHECK(s.max_momentum_residual <= 1e-12);
    CHECK(s.max_energy_residual <= 1e-12);
  }

  TEST_CASE("solver failure keeps the partial CSV") {
    ScratchDir dir("fail");
    auto c = preset("paper-test-1");
    c.gst_max_iterations = 1;
    const auto s = run_simulation(c, dir.path());
    CHECK(s.failed);
    CHECK(s.steps_completed == 0);
    CHECK(s.failure.find("step 1") != std::string::npos);
    const auto csv = read_csv(s.csv_path);
    CHECK(csv.rows.size() == 1);
  }
}

TEST_SUITE("verify") {
  TEST_CASE("both presets pass every check") {
    for (const char* name : {"paper-test-1", "paper-test-2"}) {
      const auto report = verify_config(preset(name));
      CHECK(report.passed());
      CHECK(report.rows.size() >= 4);
      for (const auto& row : report.rows) {
        CHECK_MESSAGE(row.passed, row.name);
        if (row.name.rfind("symmetry", 0) == 0 || row.name == "matching rates") {
          CHECK(row.residual <= kVerifyTolerance);
        }
      }
    }
  }

  TEST_CASE("test 1 satisfies the two-species premises so the implication is confirmed") {
    const auto report = verify_config(preset("paper-test-1"));
    bool found = false;
    for (const auto& row : report.rows) {
      if (row.name.find("two-species") == std::string::npos) continue;
      found = true;
      CHECK(row.passed);
      CHECK(row.detail.find("confirmed") != std::string::npos);
    }
    CHECK(found);
  }

  TEST_CASE("an injected asymmetric delta fails with its residual printed") {
    const auto c = preset("paper-test-2");
    const auto moments = c.analytic_moments();
    const auto species = c.species_set();
    auto coefficients = assemble_coefficients(species, c.kappa_table(), moments);
    // Shift delta_12 = rho_1 lambda_12 (1 - alpha_12) by a relative 1e-6 through alpha_12.
    auto& p12 = coefficients.at(0, 1);
    p12.alpha = 1.0 - (1.0 - p12.alpha) * (1.0 + 1e-6);
    p12.delta = moments.mass_density(0) * p12.lambda * (1.0 - p12.alpha);
    const auto report = verify_coefficients(moments, species, coefficients);
    CHECK_FALSE(report.passed());
    bool flagged = false;
    for (const auto& row : report.rows) {
      if (row.name.find("symmetry") == std::string::npos) continue;
      CHECK_FALSE(row.passed);
      CHECK(row.residual == Approx(1e-6).epsilon(1e-3));
      flagged = true;
    }
    CHECK(flagged);
    std::ostringstream out;
    print_report(out, report);
    CHECK(out.str().find("verification FAILED") != std::string::npos);
    CHECK(out.str().find("e-06") != std::string::npos);
  }

  TEST_CASE("perturbed mixture weights break the matching row") {
    const auto c = preset("paper-test-1");
    const auto moments = c.analytic_moments();
    const auto species = c.species_set();
    auto coefficients = assemble_coefficients(species, c.kappa_table(), moments);
    coefficients.at(0, 1).alpha += 1e-3;
    CHECK(matching_error(moments, species, coefficients) > 1e-6);
    CHECK_FALSE(verify_coefficients(moments, species, coefficients).passed());
  }

  TEST_CASE("rate_relative_error uses the largest scale") {
    CHECK(rate_relative_error(1.0, 1.0, 0.0) == 0.0);
    CHECK(rate_relative_error(1.0, 0.5, 0.0) == Approx(0.5));
    CHECK(rate_relative_error(1e-20, 0.0, 1.0) == Approx(1e-20));
  }
}

TEST_SUITE("command line") {
  TEST_CASE("exit codes") {
    ScratchDir dir("cli");
    const auto out = dir.path().string();
    CHECK(invoke({"run", "paper-test-1", "--out", out, "--t-end", "1"}).code == kExitSuccess);
    CHECK(fs::exists(dir.path() / "trajectory.csv"));
    CHECK(invoke({"verify", "paper-test-2"}).code == kExitSuccess);

    const auto bad = dir.write("bad.yaml", "species:\n  - {mass: 1, temperature: 1}\n  - {mass: 1, temperature: 1}\nkappa: 0.5\n");
    const auto r = invoke({"run", bad.string(), "--out", out});
    CHECK(r.code == kExitConfigError);
    CHECK(r.err.find("bad.yaml:4:") != std::string::npos);
    CHECK(invoke({"verify", bad.string()}).code == kExitConfigError);
    CHECK(invoke({"run", "no-such-preset-or-file"}).code == kExitConfigError);
    CHECK(invoke({"run", "paper-test-1", "--mode", "fluid"}).code == kExitConfigError);
    CHECK(invoke({"run", "paper-test-1", "--dt", "-1"}).code == kExitConfigError);
    CHECK(invoke({}).code == kExitConfigError);

    const auto stiff = dir.write("stiff.yaml", std::string(kTwoSpecies) + "solver: {gst_max_iterations: 1}\n");
    const auto f = invoke({"run", stiff.string(), "--out", out});
    CHECK(f.code == kExitSolverFailure);
    CHECK(f.err.find("solver failure") != std::string::npos);
  }

  TEST_CASE("overrides reach the run") {
    ScratchDir dir("override");
    const auto r = invoke({"run", "paper-test-1", "--out", dir.path().string(), "--mode", "moments", "--dt", "0.5",
                        "--t-end", "2"});
    CHECK(r.code == kExitSuccess);
    CHECK(r.out.find("moments mode") != std::string::npos);
    CHECK(read_csv(dir.path() / "trajectory.csv").rows.size() == 5);
  }

  TEST_CASE("help exits cleanly") {
    const auto r = invoke({"--help"});
    CHECK(r.code == kExitSuccess);
    CHECK(r.out.find("run") != std::string::npos);
  }

#ifdef MLB_EXE_PATH
  TEST_CASE("the installed executable reports the same exit codes") {
    ScratchDir dir("exe");
    const std::string exe = MLB_EXE_PATH;
    const auto quiet = " > " + (dir.path() / "log.txt").string() + " 2>&1";
    const auto status = [&](const std::string& args) {
      const int raw = std::system((exe + " " + args + quiet).c_str());
      return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("presets") == 0);
    CHECK(status("run paper-test-2 --t-end 0.4 --out " + dir.path().string()) == 0);
    CHECK(status("run " + (dir.path() / "missing.yaml").string()) == 1);
  }
#endif
}
