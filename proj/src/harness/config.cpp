#include "kp5/harness/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kp5/errors.hpp"
#include "kp5/field_io.hpp"
#include "kp5/random_fields.hpp"
#include "kp5/sampling.hpp"

namespace kp5::harness {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

// A JSON object whose keys must all be consumed by name.
class Section {
 public:
  Section(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json& raw(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }

  double number(const char* key, double fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(path(key) + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(path(key) + ": not finite");
    return d;
  }

  long long integer(const char* key, long long fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError(path(key) + ": expected an integer");
    return v.get<long long>();
  }

  std::uint64_t u64(const char* key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
    throw ConfigError(path(key) + ": expected a non-negative integer");
  }

  std::string string(const char* key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(path(key) + ": expected a string");
    return v.get<std::string>();
  }

  double length(const char* key, double fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      try {
        return parse_length(v.get<std::string>());
      } catch (const ConfigError& e) {
        throw ConfigError(path(key) + ": " + e.what());
      }
    }
    throw ConfigError(path(key) + ": expected a number or a string like \"2pi\"");
  }

  std::string path(const char* key) const { return where_ + "." + key; }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.contains(k)) throw ConfigError(where_ + ": unknown key '" + k + "'");
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

int to_int(long long v, const std::string& where) {
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError(where + ": out of range");
  }
  return static_cast<int>(v);
}

GridSpec parse_grid(const json& j) {
  Section s(j, "grid");
  GridSpec g;
  g.nx = to_int(s.integer("nx", g.nx), "grid.nx");
  g.ny = to_int(s.integer("ny", g.ny), "grid.ny");
  g.lx = s.length("lx", g.lx);
  g.ly = s.length("ly", g.ly);
  s.finish();
  return g;
}

DispersionParams parse_dispersion(const json& j) {
  Section s(j, "dispersion");
  DispersionParams p;
  const std::string kind = s.string("kp", "KP1");
  if (kind == "KP1" || kind == "kp1") {
    p.kp_sign = KpSign::KP1;
  } else if (kind == "KP2" || kind == "kp2") {
    p.kp_sign = KpSign::KP2;
  } else {
    throw ConfigError("dispersion.kp: expected \"KP1\" or \"KP2\"");
  }
  p.alpha = s.number("alpha", 1.0);
  const std::string zm = s.string("zero_mode", "project_out");
  if (zm == "project_out") {
    p.zero_mode = ZeroModePolicy::ProjectOut;
  } else if (zm == "error") {
    p.zero_mode = ZeroModePolicy::Error;
  } else {
    throw ConfigError("dispersion.zero_mode: expected \"project_out\" or \"error\"");
  }
  s.finish();
  return p;
}

SolverConfig parse_solver(const json& j) {
  Section s(j, "solver");
  SolverConfig c;
  c.dt = s.number("dt", c.dt);
  c.t_final = s.number("t_final", c.t_final);
  c.picard_max_iters = to_int(s.integer("picard_max_iters", c.picard_max_iters), "solver.picard_max_iters");
  c.picard_tol = s.number("picard_tol", c.picard_tol);
  c.quadrature_nodes = to_int(s.integer("quadrature_nodes", c.quadrature_nodes), "solver.quadrature_nodes");
  c.cutoff_T = s.number("cutoff_T", c.cutoff_T);
  s.finish();
  return c;
}

InitialData parse_initial(const json& j, const std::filesystem::path& base_dir) {
  Section s(j, "initial_data");
  const std::string type = s.string("type", "gaussian");
  InitialData out;
  if (type == "gaussian") {
    GaussianData g;
    g.amplitude = s.number("amplitude", g.amplitude);
    g.sigma_x = s.length("sigma_x", g.sigma_x);
    g.sigma_y = s.length("sigma_y", g.sigma_y);
    if (s.has("center")) {
      const json& c = s.raw("center");
      if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
        throw ConfigError("initial_data.center: expected [x, y]");
      }
      g.center_x = c[0].get<double>();
      g.center_y = c[1].get<double>();
    }
    if (!(g.sigma_x > 0.0) || !(g.sigma_y > 0.0)) throw ConfigError("initial_data: sigma must be positive");
    out = g;
  } else if (type == "mode_sum") {
    ModeSumData m;
    if (s.has("modes")) {
      const json& arr = s.raw("modes");
      if (!arr.is_array()) throw ConfigError("initial_data.modes: expected an array");
      for (std::size_t n = 0; n < arr.size(); ++n) {
        const std::string where = "initial_data.modes[" + std::to_string(n) + "]";
        ModeTerm t;
        if (arr[n].is_array()) {
          const json& a = arr[n];
          if (a.size() != 4 || !a[0].is_number_integer() || !a[1].is_number_integer() || !a[2].is_number() ||
              !a[3].is_number()) {
            throw ConfigError(where + ": expected [k, l, amplitude, phase]");
          }
          t = {to_int(a[0].get<long long>(), where), to_int(a[1].get<long long>(), where), a[2].get<double>(),
               a[3].get<double>()};
        } else {
          Section ms(arr[n], where);
          t.k = to_int(ms.integer("k", 0), where);
          t.l = to_int(ms.integer("l", 0), where);
          t.amplitude = ms.number("amplitude", 0.0);
          t.phase = ms.number("phase", 0.0);
          ms.finish();
        }
        m.modes.push_back(t);
      }
    }
    out = m;
  } else if (type == "random_shell") {
    RandomShellData r;
    r.j = to_int(s.integer("j", r.j), "initial_data.j");
    if (r.j < 0) throw ConfigError("initial_data.j: must be >= 0");
    if (s.has("seed")) r.seed = s.u64("seed", 0);
    r.amplitude = s.number("amplitude", r.amplitude);
    out = r;
  } else if (type == "file") {
    if (!s.has("path")) throw ConfigError("initial_data: file variant needs 'path'");
    std::filesystem::path p = s.string("path", "");
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    out = FileData{p};
  } else {
    throw ConfigError("initial_data.type: unknown variant '" + type + "'");
  }
  s.finish();
  return out;
}

std::vector<NormSpec> parse_monitors(const json& j) {
  if (!j.is_array()) throw ConfigError("monitors: expected an array");
  std::vector<NormSpec> out;
  for (std::size_t n = 0; n < j.size(); ++n) {
    const std::string where = "monitors[" + std::to_string(n) + "]";
    NormSpec spec;
    if (j[n].is_array()) {
      if (j[n].size() != 2 || !j[n][0].is_number() || !j[n][1].is_number()) {
        throw ConfigError(where + ": expected [s1, s2]");
      }
      spec.s1 = j[n][0].get<double>();
      spec.s2 = j[n][1].get<double>();
    } else {
      Section s(j[n], where);
      spec.s1 = s.number("s1", 0.0);
      spec.s2 = s.number("s2", 0.0);
      s.finish();
    }
    if (spec.s1 < 0.0 || spec.s2 < 0.0) throw ConfigError(where + ": indices must be non-negative");
    out.push_back(spec);
  }
  return out;
}

OutputSpec parse_output(const json& j, const std::filesystem::path& base_dir) {
  Section s(j, "output");
  OutputSpec o;
  std::filesystem::path dir = s.string("directory", o.directory.string());
  if (dir.is_relative() && !base_dir.empty() && s.has("directory")) dir = base_dir / dir;
  o.directory = dir;
  o.snapshot_stride = to_int(s.integer("snapshot_stride", o.snapshot_stride), "output.snapshot_stride");
  if (o.snapshot_stride < 0) throw ConfigError("output.snapshot_stride: must be >= 0");
  s.finish();
  return o;
}

ResonanceMapSpec parse_resonance_map(const json& j) {
  Section s(j, "resonance_map");
  ResonanceMapSpec r;
  r.xi_max = s.number("xi_max", r.xi_max);
  r.points = to_int(s.integer("points", r.points), "resonance_map.points");
  r.mu1 = s.number("mu1", r.mu1);
  r.mu2 = s.number("mu2", r.mu2);
  s.finish();
  if (!(r.xi_max > 0.0) || r.points < 2) throw ConfigError("resonance_map: need xi_max > 0 and points >= 2");
  return r;
}

}  // namespace

double parse_length(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != ' ' && c != '*') t.push_back(c);
  }
  double factor = 1.0;
  if (t.size() >= 2 && t.ends_with("pi")) {
    factor = std::numbers::pi;
    t.erase(t.size() - 2);
  } else if (t.ends_with("π")) {
    factor = std::numbers::pi;
    t.erase(t.size() - std::string("π").size());
  }
  double coeff = 1.0;
  if (!t.empty()) {
    std::size_t used = 0;
    try {
      coeff = std::stod(t, &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse length '" + text + "'");
    }
    if (used != t.size()) throw ConfigError("cannot parse length '" + text + "'");
  } else if (factor == 1.0) {
    throw ConfigError("empty length");
  }
  const double v = coeff * factor;
  if (!std::isfinite(v)) throw ConfigError("length '" + text + "' is not finite");
  return v;
}

SpectralGrid RunConfig::make_grid() const {
  try {
    return SpectralGrid(grid.nx, grid.ny, grid.lx, grid.ly);
  } catch (const SpecError& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  Section s(doc, "config");
  RunConfig cfg;
  if (s.has("grid")) cfg.grid = parse_grid(s.raw("grid"));
  if (s.has("dispersion")) cfg.dispersion = parse_dispersion(s.raw("dispersion"));
  if (s.has("solver")) cfg.solver = parse_solver(s.raw("solver"));
  if (s.has("initial_data")) cfg.initial_data = parse_initial(s.raw("initial_data"), base_dir);
  if (s.has("monitors")) cfg.monitors = parse_monitors(s.raw("monitors"));
  if (s.has("output")) cfg.output = parse_output(s.raw("output"), base_dir);
  if (s.has("resonance_map")) cfg.resonance_map = parse_resonance_map(s.raw("resonance_map"));
  cfg.seed = s.u64("seed", cfg.seed);
  s.finish();

  cfg.make_grid();
  try {
    cfg.solver.validate();
  } catch (const SpecError& e) {
    throw ConfigError(std::string("solver: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

std::string canonical_json(const RunConfig& cfg, int indent) {
  ojson j;
  j["grid"] = {{"nx", cfg.grid.nx}, {"ny", cfg.grid.ny}, {"lx", cfg.grid.lx}, {"ly", cfg.grid.ly}};
  j["dispersion"] = {{"kp", cfg.dispersion.kp_sign == KpSign::KP1 ? "KP1" : "KP2"},
                     {"alpha", cfg.dispersion.alpha},
                     {"zero_mode", cfg.dispersion.zero_mode == ZeroModePolicy::ProjectOut ? "project_out" : "error"}};
  j["solver"] = {{"dt", cfg.solver.dt},
                 {"t_final", cfg.solver.t_final},
                 {"picard_max_iters", cfg.solver.picard_max_iters},
                 {"picard_tol", cfg.solver.picard_tol},
                 {"quadrature_nodes", cfg.solver.quadrature_nodes},
                 {"cutoff_T", cfg.solver.cutoff_T}};
  ojson init;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, GaussianData>) {
          init["type"] = "gaussian";
          init["amplitude"] = d.amplitude;
          init["sigma_x"] = d.sigma_x;
          init["sigma_y"] = d.sigma_y;
          init["center"] = {d.center_x.value_or(0.5 * cfg.grid.lx), d.center_y.value_or(0.5 * cfg.grid.ly)};
        } else if constexpr (std::is_same_v<T, ModeSumData>) {
          init["type"] = "mode_sum";
          init["modes"] = ojson::array();
          for (const auto& m : d.modes) init["modes"].push_back({m.k, m.l, m.amplitude, m.phase});
        } else if constexpr (std::is_same_v<T, RandomShellData>) {
          init["type"] = "random_shell";
          init["j"] = d.j;
          init["seed"] = d.seed.value_or(cfg.seed);
          init["amplitude"] = d.amplitude;
        } else {
          init["type"] = "file";
          init["path"] = d.path.generic_string();
        }
      },
      cfg.initial_data);
  j["initial_data"] = init;
  j["monitors"] = ojson::array();
  for (const auto& m : cfg.monitors) j["monitors"].push_back({{"s1", m.s1}, {"s2", m.s2}});
  j["output"] = {{"directory", cfg.output.directory.generic_string()}, {"snapshot_stride", cfg.output.snapshot_stride}};
  j["resonance_map"] = {{"xi_max", cfg.resonance_map.xi_max},
                        {"points", cfg.resonance_map.points},
                        {"mu1", cfg.resonance_map.mu1},
                        {"mu2", cfg.resonance_map.mu2}};
  j["seed"] = cfg.seed;
  return j.dump(indent);
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = canonical_json(cfg, -1);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Field make_initial_data(const RunConfig& cfg) {
  const SpectralGrid grid = cfg.make_grid();
  Field f(grid);
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, GaussianData>) {
          const double cx = d.center_x.value_or(0.5 * grid.lx());
          const double cy = d.center_y.value_or(0.5 * grid.ly());
          std::vector<double> u(grid.size());
          for (int j = 0; j < grid.ny(); ++j) {
            const double ry = std::remainder(grid.y(j) - cy, grid.ly()) / d.sigma_y;
            for (int i = 0; i < grid.nx(); ++i) {
              const double rx = std::remainder(grid.x(i) - cx, grid.lx()) / d.sigma_x;
              u[grid.index(i, j)] = d.amplitude * std::exp(-0.5 * (rx * rx + ry * ry));
            }
          }
          f = Field::from_physical(grid, u);
        } else if constexpr (std::is_same_v<T, ModeSumData>) {
          std::vector<double> u(grid.size(), 0.0);
          for (const auto& m : d.modes) {
            for (int j = 0; j < grid.ny(); ++j) {
              for (int i = 0; i < grid.nx(); ++i) {
                const double arg = 2.0 * std::numbers::pi *
                                       (static_cast<double>(m.k) * i / grid.nx() + static_cast<double>(m.l) * j / grid.ny()) +
                                   m.phase;
                u[grid.index(i, j)] += m.amplitude * std::cos(arg);
              }
            }
          }
          f = Field::from_physical(grid, u);
        } else if constexpr (std::is_same_v<T, RandomShellData>) {
          SampleRng rng(d.seed.value_or(cfg.seed), 0);
          f = random_shell_field(grid, d.j, rng);
          f *= d.amplitude;
        } else {
          FieldDump dump = read_dump(d.path);
          if (!(dump.field.grid() == grid)) throw FormatError("initial data file '" + d.path.string() +
                                                              "' does not match the configured grid");
          f = dump.field;
        }
      },
      cfg.initial_data);
  return nyquist_project(zero_mode_project(f));
}

}  // namespace kp5::harness
