#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "kp5/errors.hpp"
#include "kp5/field_io.hpp"
#include "kp5/harness/commands.hpp"
#include "kp5/harness/config.hpp"
#include "kp5/norms.hpp"

using namespace kp5;
using namespace kp5::harness;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("kp5_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Every regular file under dir except the lock, by relative path.
std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).generic_string()] = slurp(e.path());
  }
  return out;
}

const char* kGaussian = R"({
  "grid": {"nx": 16, "ny": 16, "lx": "8pi", "ly": "8pi"},
  "dispersion": {"kp": "KP1", "alpha": 1.0},
  "solver": {"dt": 0.01, "t_final": 0.05, "cutoff_T": 0.1, "picard_tol": 1e-14},
  "initial_data": {"type": "gaussian", "amplitude": 0.01, "sigma_x": 2, "sigma_y": 2},
  "monitors": [[0, 0], {"s1": 1, "s2": 2}],
  "output": {"directory": "run", "snapshot_stride": 2},
  "seed": 3
})";

struct Sink {
  std::ostringstream log;
  std::ostringstream err;
};

}  // namespace

TEST_CASE("parse_length") {
  CHECK(parse_length("2pi") == doctest::Approx(2 * pi).epsilon(1e-15));
  CHECK(parse_length("pi") == doctest::Approx(pi).epsilon(1e-15));
  CHECK(parse_length("0.5 * pi") == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(parse_length("32π") == doctest::Approx(32 * pi).epsilon(1e-15));
  CHECK(parse_length("3.5") == 3.5);
  CHECK_THROWS_AS(parse_length("two pi"), ConfigError);
  CHECK_THROWS_AS(parse_length(""), ConfigError);
  CHECK_THROWS_AS(parse_length("2pix"), ConfigError);
}

TEST_CASE("config defaults and strictness") {
  const RunConfig d = parse_config("{}");
  CHECK(d.grid.nx == 64);
  CHECK(d.grid.lx == doctest::Approx(2 * pi));
  CHECK(d.solver.dt == 1e-3);
  CHECK(d.solver.quadrature_nodes == 2);
  CHECK(d.monitors.size() == 1);
  CHECK(d.output.snapshot_stride == 0);
  CHECK(std::holds_alternative<GaussianData>(d.initial_data));

  const RunConfig c = parse_config(kGaussian);
  CHECK(c.grid.lx == doctest::Approx(8 * pi));
  CHECK(c.monitors.size() == 2);
  CHECK(c.monitors[1].s2 == 2.0);
  CHECK(c.seed == 3);

  CHECK_THROWS_AS(parse_config(R"({"grid": {"nx": 16, "nz": 4}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"colour": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"nx": 15}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"nx": "16"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"dispersion": {"kp": "KP3"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"solver": {"dt": 0.03, "t_final": 0.1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"solver": {"cutoff_T": 1.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"initial_data": {"type": "soliton"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"initial_data": {"type": "gaussian", "j": 3}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"monitors": [[-1, 0]]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"seed": -4})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), IoError);
}

TEST_CASE("canonical config and hash") {
  const RunConfig a = parse_config(kGaussian);
  const RunConfig b = parse_config(canonical_json(a));
  CHECK(canonical_json(a) == canonical_json(b));
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  RunConfig c = a;
  c.seed = 4;
  CHECK(config_hash(c) != config_hash(a));
}

TEST_CASE("make_initial_data: mode_sum") {
  const RunConfig cfg = parse_config(R"({"grid": {"nx": 8, "ny": 8, "lx": 3.0, "ly": 5.0},
    "initial_data": {"type": "mode_sum", "modes": [[1, 0, 1, 0]]}})");
  const Field f = make_initial_data(cfg);
  const auto u = f.physical();
  const SpectralGrid& g = f.grid();
  for (int j = 0; j < 8; ++j) {
    for (int i = 0; i < 8; ++i) CHECK(u[g.index(i, j)] == doctest::Approx(std::cos(2 * pi * g.x(i) / 3.0)).epsilon(1e-13));
  }
  // The pure y-mode lies on ξ = 0 and is removed.
  const RunConfig y = parse_config(R"({"grid": {"nx": 8, "ny": 8},
    "initial_data": {"type": "mode_sum", "modes": [{"k": 0, "l": 2, "amplitude": 1, "phase": 0.3}]}})");
  CHECK(make_initial_data(y).is_zero());
}

TEST_CASE("make_initial_data: gaussian has zero x-mean") {
  const RunConfig cfg = parse_config(kGaussian);
  const Field f = make_initial_data(cfg);
  CHECK(zero_line_content(f) == 0.0);
  CHECK(f.is_real());
  CHECK(f.l2_norm() > 0.0);
  const auto u = f.physical();
  const SpectralGrid& g = f.grid();
  for (int j = 0; j < g.ny(); ++j) {
    double row = 0.0;
    for (int i = 0; i < g.nx(); ++i) row += u[g.index(i, j)];
    CHECK(std::abs(row) < 1e-15);
  }
}

TEST_CASE("make_initial_data: random_shell and file") {
  const RunConfig cfg = parse_config(R"({"grid": {"nx": 32, "ny": 32, "lx": "8pi", "ly": "8pi"},
    "initial_data": {"type": "random_shell", "j": 3, "seed": 7}})");
  const Field a = make_initial_data(cfg);
  const Field b = make_initial_data(cfg);
  CHECK(a.l2_norm() > 0.0);
  for (std::size_t n = 0; n < a.grid().size(); ++n) CHECK(a.spectral()[n] == b.spectral()[n]);

  const fs::path dir = scratch("file_data");
  write_dump(dir / "phi.kp5f", a, 0.0);
  spit(dir / "cfg.json", R"({"grid": {"nx": 32, "ny": 32, "lx": "8pi", "ly": "8pi"},
    "initial_data": {"type": "file", "path": "phi.kp5f"}})");
  const Field c = make_initial_data(load_config(dir / "cfg.json"));
  CHECK(l2_distance(a, c) < 1e-13 * a.l2_norm());

  spit(dir / "bad.json", R"({"grid": {"nx": 16, "ny": 32, "lx": "8pi", "ly": "8pi"},
    "initial_data": {"type": "file", "path": "phi.kp5f"}})");
  CHECK_THROWS_AS(make_initial_data(load_config(dir / "bad.json")), FormatError);
}

TEST_CASE("simulate: zero data") {
  const fs::path dir = scratch("sim_zero");
  spit(dir / "cfg.json", R"({"grid": {"nx": 16, "ny": 16}, "solver": {"dt": 0.01, "t_final": 0.1},
    "initial_data": {"type": "mode_sum", "modes": []}, "output": {"directory": "out"}})");
  Sink s;
  CommandOptions o;
  o.config = dir / "cfg.json";
  CHECK(cmd_simulate(o, s.log, s.err) == kExitOk);
  const auto rows = lines(slurp(dir / "out" / "diagnostics.csv"));
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == "t,mass,energy,h_0_0");
  for (std::size_t n = 1; n < rows.size(); ++n) CHECK(rows[n].substr(rows[n].find(',') + 1, 2) == "0,");
  CHECK(!fs::exists(dir / "out" / ".kp5.lock"));
}

TEST_CASE("simulate: outputs, row count, manifest and determinism") {
  const fs::path dir = scratch("sim_gauss");
  spit(dir / "cfg.json", kGaussian);
  Sink s;
  CommandOptions o;
  o.config = dir / "cfg.json";
  o.quiet = true;
  o.out = dir / "a";
  CHECK(cmd_simulate(o, s.log, s.err) == kExitOk);
  o.out = dir / "b";
  CHECK(cmd_simulate(o, s.log, s.err) == kExitOk);

  const auto rows = lines(slurp(dir / "a" / "diagnostics.csv"));
  CHECK(rows.size() == 5 + 1 + 1);
  CHECK(rows[0] == "t,mass,energy,h_0_0,h_1_2");
  CHECK(fs::exists(dir / "a" / "snapshots" / "state_000000.kp5f"));
  CHECK(fs::exists(dir / "a" / "snapshots" / "state_000002.kp5f"));
  CHECK(fs::exists(dir / "a" / "snapshots" / "state_000004.kp5f"));
  CHECK(fs::exists(dir / "a" / "snapshots" / "state_000005.kp5f"));
  CHECK_FALSE(fs::exists(dir / "a" / "snapshots" / "state_000001.kp5f"));

  const auto m = nlohmann::json::parse(slurp(dir / "a" / "manifest.json"));
  CHECK(m["command"] == "simulate");
  CHECK(m["status"] == "completed");
  CHECK(m["seed"] == 3);
  CHECK(m["config_hash"].get<std::string>().size() == 16);
  CHECK(m["final"].contains("h_1_2"));
  // The manifest reproduces the run.
  spit(dir / "again.json", m["config"].dump());
  o.config = dir / "again.json";
  o.out = dir / "c";
  CHECK(cmd_simulate(o, s.log, s.err) == kExitOk);
  CHECK(slurp(dir / "c" / "diagnostics.csv") == slurp(dir / "a" / "diagnostics.csv"));

  // Byte-identical apart from the differing output directory in the manifest.
  auto ta = tree(dir / "a");
  auto tb = tree(dir / "b");
  ta.erase("manifest.json");
  tb.erase("manifest.json");
  CHECK(ta == tb);

  const FieldDump last = read_dump(dir / "a" / "snapshots" / "state_000005.kp5f");
  CHECK(last.time == doctest::Approx(0.05));
}

TEST_CASE("simulate: exit codes") {
  const fs::path dir = scratch("sim_codes");
  Sink s;
  CommandOptions o;
  CHECK(cmd_simulate(o, s.log, s.err) == kExitConfig);
  spit(dir / "bad.json", R"({"grid": {"nx": 16, "bogus": 1}})");
  o.config = dir / "bad.json";
  CHECK(cmd_simulate(o, s.log, s.err) == kExitConfig);
  CHECK(s.err.str().find("bogus") != std::string::npos);

  o.config = dir / "missing.json";
  CHECK(cmd_simulate(o, s.log, s.err) == kExitIo);

  spit(dir / "cfg.json", kGaussian);
  o.config = dir / "cfg.json";
  o.out = dir / "locked";
  fs::create_directories(dir / "locked");
  spit(dir / "locked" / ".kp5.lock", "");
  CHECK(cmd_simulate(o, s.log, s.err) == kExitIo);

  spit(dir / "blow.json", R"({"grid": {"nx": 16, "ny": 16, "lx": "8pi", "ly": "8pi"},
    "solver": {"dt": 0.01, "t_final": 0.05},
    "initial_data": {"type": "gaussian", "amplitude": 1e200, "sigma_x": 2, "sigma_y": 2}})");
  o.config = dir / "blow.json";
  o.out = dir / "blow";
  o.quiet = true;
  CHECK(cmd_simulate(o, s.log, s.err) == kExitBlowUp);
  const auto m = nlohmann::json::parse(slurp(dir / "blow" / "manifest.json"));
  CHECK(m["status"] == "blow_up");
  CHECK(m["exit_code"] == 3);
  CHECK(fs::exists(dir / "blow" / "blowup_last_finite.kp5f"));
}

TEST_CASE("picard command") {
  const fs::path dir = scratch("picard");
  spit(dir / "cfg.json", kGaussian);
  Sink s;
  CommandOptions o;
  o.config = dir / "cfg.json";
  o.out = dir / "a";
  CHECK(cmd_picard(o, s.log, s.err) == kExitOk);
  const auto rows = lines(slurp(dir / "a" / "picard_distances.csv"));
  REQUIRE(rows.size() >= 3);
  CHECK(rows[0] == "n,d");
  double prev = INFINITY;
  for (std::size_t n = 1; n < rows.size(); ++n) {
    const double d = std::stod(rows[n].substr(rows[n].find(',') + 1));
    CHECK(d < prev);
    prev = d;
  }
  o.out = dir / "b";
  CHECK(cmd_picard(o, s.log, s.err) == kExitOk);
  CHECK(slurp(dir / "a" / "picard_distances.csv") == slurp(dir / "b" / "picard_distances.csv"));
  CHECK(slurp(dir / "a" / "picard_final.kp5f") == slurp(dir / "b" / "picard_final.kp5f"));

  spit(dir / "zero.json", R"({"grid": {"nx": 16, "ny": 16}, "solver": {"dt": 0.01, "t_final": 0.05, "cutoff_T": 0.1},
    "initial_data": {"type": "mode_sum", "modes": []}})");
  o.config = dir / "zero.json";
  o.out = dir / "zero";
  CHECK(cmd_picard(o, s.log, s.err) == kExitOk);
  CHECK(lines(slurp(dir / "zero" / "picard_distances.csv"))[1] == "0,0");

  spit(dir / "big.json", R"({"grid": {"nx": 32, "ny": 32, "lx": "8pi", "ly": "8pi"},
    "solver": {"dt": 0.01, "t_final": 0.9, "cutoff_T": 0.9, "picard_max_iters": 200},
    "initial_data": {"type": "gaussian", "amplitude": 40, "sigma_x": 2, "sigma_y": 2}})");
  o.config = dir / "big.json";
  o.out = dir / "big";
  Sink e;
  CHECK(cmd_picard(o, e.log, e.err) == kExitContraction);
  CHECK(e.err.str().find("advisory") != std::string::npos);
  CHECK(nlohmann::json::parse(slurp(dir / "big" / "manifest.json"))["status"] == "contraction_failure");
}

TEST_CASE("verify command") {
  const fs::path dir = scratch("verify");
  Sink s;
  CommandOptions o;
  o.out = dir / "a";
  o.suite = "resonance";
  o.samples = 500;
  o.seed = 9;
  CHECK(cmd_verify(o, s.log, s.err) == kExitOk);
  CHECK(fs::exists(dir / "a" / "resonance.csv"));
  const auto summary = nlohmann::json::parse(slurp(dir / "a" / "resonance_summary.json"));
  CHECK(summary["passed"] == true);
  CHECK(summary["summary"]["max_residual"].get<double>() <= 1e-9);
  CHECK(lines(slurp(dir / "a" / "resonance.csv")).size() == 6 * 500 + 1);
  o.out = dir / "b";
  CHECK(cmd_verify(o, s.log, s.err) == kExitOk);
  CHECK(tree(dir / "a") == tree(dir / "b"));

  o.suite = "dyadic";
  o.samples = 10000;
  CHECK(cmd_verify(o, s.log, s.err) == kExitOk);
  o.suite = "kp2bound";
  o.samples = 1000;
  CHECK(cmd_verify(o, s.log, s.err) == kExitOk);
  o.suite = "strichartz";
  o.samples = 1;
  CHECK(cmd_verify(o, s.log, s.err) == kExitOk);
  CHECK(lines(slurp(dir / "b" / "strichartz.csv"))[0] == "j,r,sample,ratio");

  o.suite = "nonsense";
  CHECK(cmd_verify(o, s.log, s.err) == kExitConfig);
}

TEST_CASE("norms command") {
  const fs::path dir = scratch("norms");
  const RunConfig cfg = parse_config(kGaussian);
  const Field f = make_initial_data(cfg);
  write_dump(dir / "phi.kp5f", f, 0.25);
  Sink s;
  CommandOptions o;
  o.input = dir / "phi.kp5f";
  o.out = dir / "out";
  CHECK(cmd_norms(o, s.log, s.err) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "norms.json"));
  CHECK(j["time"] == 0.25);
  CHECK(j["mass"].get<double>() == doctest::Approx(mass(f)).epsilon(1e-12));
  CHECK(j["sobolev"]["h_2_1"].get<double>() == doctest::Approx(sobolev_aniso_norm(f, {2, 1, 0})).epsilon(1e-12));
  CHECK(j["zero_mass"] == true);
  CHECK(j["energy"].is_number());
  CHECK(s.log.str() == slurp(dir / "out" / "norms.json"));

  o.input = dir / "missing.kp5f";
  o.out.reset();
  CHECK(cmd_norms(o, s.log, s.err) == kExitIo);
  spit(dir / "junk.kp5f", "KP5Fxx");
  o.input = dir / "junk.kp5f";
  CHECK(cmd_norms(o, s.log, s.err) == kExitIo);
}

TEST_CASE("resonance-map command") {
  const fs::path dir = scratch("rmap");
  spit(dir / "cfg.json", R"({"resonance_map": {"xi_max": 5, "points": 11, "mu1": 1, "mu2": -1},
    "dispersion": {"kp": "KP2", "alpha": 0}})");
  Sink s;
  CommandOptions o;
  o.config = dir / "cfg.json";
  o.out = dir / "a";
  CHECK(cmd_resonance_map(o, s.log, s.err) == kExitOk);
  const auto rows = lines(slurp(dir / "a" / "resonance_map.csv"));
  CHECK(rows[0] == "xi1,xi2,mu1,mu2,R");
  // 11×11 lattice minus 21 points on the axes; ξ₁ + ξ₂ = 0 stays since μ₁ + μ₂ = 0.
  CHECK(rows.size() == 1 + 100);
  o.out = dir / "b";
  CHECK(cmd_resonance_map(o, s.log, s.err) == kExitOk);
  CHECK(slurp(dir / "a" / "resonance_map.csv") == slurp(dir / "b" / "resonance_map.csv"));
  CHECK(slurp(dir / "a" / "manifest.json") != "");
}
