#include "kp5/harness/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <fftw3.h>
#include <json.hpp>

#include "kp5/errors.hpp"
#include "kp5/evolution.hpp"
#include "kp5/field_io.hpp"
#include "kp5/harness/config.hpp"
#include "kp5/norms.hpp"
#include "kp5/resonance.hpp"
#include "kp5/suites.hpp"

#ifndef KP5_VERSION
#define KP5_VERSION "0.0.0"
#endif

namespace kp5::harness {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// Exclusive ownership of an output directory for the lifetime of a command.
class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory '" + dir_.string() + "': " + ec.message());
    lock_ = dir_ / ".kp5.lock";
    std::FILE* fp = std::fopen(lock_.c_str(), "wx");
    if (fp == nullptr) {
      throw IoError("output directory '" + dir_.string() + "' is locked by another run (remove " +
                    lock_.string() + " if stale)");
    }
    std::fclose(fp);
  }
  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;
  ~OutputDir() {
    std::error_code ec;
    fs::remove(lock_, ec);
  }

  fs::path operator/(const fs::path& name) const { return dir_ / name; }
  const fs::path& path() const { return dir_; }

 private:
  fs::path dir_;
  fs::path lock_;
};

class TextFile {
 public:
  explicit TextFile(const fs::path& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoError("cannot write '" + path.string() + "'");
  }
  template <class T>
  TextFile& operator<<(const T& v) {
    out_ << v;
    return *this;
  }
  void close() {
    out_.close();
    if (!out_) throw IoError("write failed for '" + path_.string() + "'");
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

void write_text(const fs::path& path, const std::string& text) {
  TextFile f(path);
  f << text;
  f.close();
}

std::string norm_label(const NormSpec& m) {
  return "h_" + format_double(m.s1) + "_" + format_double(m.s2);
}

std::string diagnostics_header(const std::vector<NormSpec>& monitors) {
  std::string h = "t,mass,energy";
  for (const auto& m : monitors) h += "," + norm_label(m);
  return h;
}

std::string diagnostics_row(const DiagnosticRecord& r) {
  std::string row = format_double(r.t) + "," + format_double(r.mass) + "," + format_double(r.energy);
  for (double v : r.norms) row += "," + format_double(v);
  return row;
}

ojson record_json(const DiagnosticRecord& r, const std::vector<NormSpec>& monitors) {
  ojson j;
  j["t"] = r.t;
  j["mass"] = r.mass;
  j["energy"] = r.energy;
  for (std::size_t n = 0; n < monitors.size() && n < r.norms.size(); ++n) j[norm_label(monitors[n])] = r.norms[n];
  return j;
}

ojson versions() {
  return {{"kp5", KP5_VERSION}, {"fftw", std::string(fftw_version)}, {"kp5f_format", kDumpVersion}};
}

ojson manifest_base(const std::string& command, const RunConfig& cfg) {
  ojson m;
  m["command"] = command;
  m["versions"] = versions();
  m["config_hash"] = config_hash(cfg);
  m["seed"] = cfg.seed;
  m["config"] = ojson::parse(canonical_json(cfg, -1));
  return m;
}

void write_manifest(const OutputDir& dir, const ojson& m) { write_text(dir / "manifest.json", m.dump(2) + "\n"); }

RunConfig resolve_config(const CommandOptions& opts, bool required) {
  RunConfig cfg;
  if (opts.config) {
    cfg = load_config(*opts.config);
  } else if (required) {
    throw ConfigError("--config is required for this command");
  }
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.out) cfg.output.directory = *opts.out;
  return cfg;
}

std::string snapshot_name(int n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "state_%06d.kp5f", n);
  return buf;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Kp5Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

int cmd_simulate(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve_config(opts, true);
    const Field phi = make_initial_data(cfg);
    const int steps = cfg.solver.step_count();
    OutputDir dir(cfg.output.directory);
    fs::create_directories(dir / "snapshots");

    TextFile csv(dir / "diagnostics.csv");
    csv << diagnostics_header(cfg.monitors) << '\n';
    ojson artifacts = ojson::array({"diagnostics.csv"});

    EvolveOptions eo;
    eo.monitors = cfg.monitors;
    eo.state_stride = cfg.output.snapshot_stride > 0 ? cfg.output.snapshot_stride : steps;
    eo.quiet = opts.quiet;
    eo.warn = [&](const std::string& msg) { err << msg << '\n'; };
    eo.on_record = [&](const DiagnosticRecord& r) { csv << diagnostics_row(r) << '\n'; };
    eo.on_state = [&](double t, const Field& f) {
      const int n = static_cast<int>(std::lround(t / cfg.solver.dt));
      const std::string name = snapshot_name(n);
      write_dump(dir / "snapshots" / name, f, t);
      artifacts.push_back("snapshots/" + name);
    };

    ojson manifest = manifest_base("simulate", cfg);
    int code = kExitOk;
    try {
      const Trajectory traj = evolve(phi, cfg.solver, cfg.dispersion, eo);
      const auto& first = traj.diagnostics.front();
      const auto& last = traj.diagnostics.back();
      manifest["status"] = "completed";
      manifest["steps"] = steps;
      manifest["initial"] = record_json(first, cfg.monitors);
      manifest["final"] = record_json(last, cfg.monitors);
      manifest["relative_mass_drift"] = first.mass != 0.0 ? std::abs(last.mass - first.mass) / first.mass : 0.0;
      manifest["printed_energy_final"] = printed_energy_functional(traj.states.back(), cfg.dispersion.alpha);
      if (!opts.quiet) {
        log << "simulate: " << steps << " steps to t = " << format_double(last.t) << ", mass "
            << format_double(last.mass) << ", energy " << format_double(last.energy) << '\n';
      }
    } catch (const BlowUpError& e) {
      const std::string name = "blowup_last_finite.kp5f";
      write_dump(dir / name, e.partial().states.back(), e.time_reached());
      artifacts.push_back(name);
      manifest["status"] = "blow_up";
      manifest["time_reached"] = e.time_reached();
      manifest["message"] = e.what();
      if (!e.partial().diagnostics.empty()) manifest["final"] = record_json(e.partial().diagnostics.back(), cfg.monitors);
      err << e.what() << '\n';
      code = kExitBlowUp;
    }
    csv.close();
    artifacts.push_back("manifest.json");
    manifest["exit_code"] = code;
    manifest["artifacts"] = artifacts;
    write_manifest(dir, manifest);
    return code;
  });
}

int cmd_picard(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve_config(opts, true);
    const Field phi = make_initial_data(cfg);
    OutputDir dir(cfg.output.directory);

    std::vector<double> distances;
    PicardOptions po;
    po.monitors = cfg.monitors;
    po.on_distance = [&](int n, double d) {
      distances.push_back(d);
      if (!opts.quiet) log << "picard: d_" << n << " = " << format_double(d) << '\n';
    };

    ojson manifest = manifest_base("picard", cfg);
    ojson artifacts = ojson::array({"picard_distances.csv"});
    auto write_distances = [&] {
      TextFile csv(dir / "picard_distances.csv");
      csv << "n,d\n";
      for (std::size_t n = 0; n < distances.size(); ++n) csv << n << ',' << format_double(distances[n]) << '\n';
      csv.close();
    };

    int code = kExitOk;
    try {
      const PicardResult res = duhamel_picard(phi, cfg.solver, cfg.dispersion, po);
      write_distances();
      TextFile csv(dir / "diagnostics.csv");
      csv << diagnostics_header(cfg.monitors) << '\n';
      for (const auto& r : res.trajectory.diagnostics) csv << diagnostics_row(r) << '\n';
      csv.close();
      write_dump(dir / "picard_final.kp5f", res.trajectory.states.back(), res.trajectory.times.back());
      artifacts.push_back("diagnostics.csv");
      artifacts.push_back("picard_final.kp5f");
      manifest["status"] = res.converged ? "converged" : "max_iterations";
      manifest["converged"] = res.converged;
      manifest["iterations"] = res.distances.size();
      manifest["final_distance"] = res.distances.empty() ? 0.0 : res.distances.back();
      manifest["final"] = record_json(res.trajectory.diagnostics.back(), cfg.monitors);
      if (!res.converged) err << "warning: Picard iteration stopped at the iteration cap before reaching picard_tol\n";
    } catch (const ContractionFailure& e) {
      distances = e.distances();
      write_distances();
      manifest["status"] = "contraction_failure";
      manifest["message"] = e.what();
      err << e.what() << '\n'
          << "advisory: the Duhamel map is not contracting; reduce cutoff_T, t_final or the data amplitude\n";
      code = kExitContraction;
    }
    artifacts.push_back("manifest.json");
    manifest["exit_code"] = code;
    manifest["artifacts"] = artifacts;
    write_manifest(dir, manifest);
    return code;
  });
}

int cmd_verify(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    if (!is_suite(opts.suite)) {
      std::string known;
      for (const auto& n : suite_names()) known += " " + n;
      throw ConfigError("unknown suite '" + opts.suite + "' (expected one of:" + known + ")");
    }
    const RunConfig cfg = resolve_config(opts, false);
    const SuiteReport rep = run_suite(opts.suite, cfg.seed, opts.samples);
    OutputDir dir(cfg.output.directory);

    TextFile csv(dir / (rep.suite + ".csv"));
    for (std::size_t c = 0; c < rep.columns.size(); ++c) csv << (c ? "," : "") << rep.columns[c];
    csv << '\n';
    for (const auto& row : rep.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) csv << (c ? "," : "") << format_double(row[c]);
      csv << '\n';
    }
    csv.close();

    ojson summary;
    summary["suite"] = rep.suite;
    summary["seed"] = cfg.seed;
    summary["samples"] = opts.samples;
    summary["passed"] = rep.passed();
    ojson stats;
    for (const auto& [k, v] : rep.summary) stats[k] = v;
    summary["summary"] = stats;
    summary["checks"] = ojson::array();
    for (const auto& c : rep.checks) {
      ojson cj{{"name", c.name}, {"passed", c.passed}, {"value", c.value}};
      if (std::isfinite(c.threshold)) {
        cj["threshold"] = c.threshold;
      } else {
        cj["threshold"] = nullptr;
      }
      summary["checks"].push_back(cj);
    }
    write_text(dir / (rep.suite + "_summary.json"), summary.dump(2) + "\n");

    ojson manifest;
    manifest["command"] = "verify";
    manifest["versions"] = versions();
    manifest["suite"] = rep.suite;
    manifest["seed"] = cfg.seed;
    manifest["samples"] = opts.samples;
    manifest["passed"] = rep.passed();
    manifest["exit_code"] = rep.passed() ? kExitOk : kExitVerifyFailed;
    manifest["artifacts"] = {rep.suite + ".csv", rep.suite + "_summary.json", "manifest.json"};
    write_manifest(dir, manifest);

    if (!opts.quiet) {
      for (const auto& c : rep.checks) {
        log << (c.passed ? "PASS " : "FAIL ") << rep.suite << ": " << c.name << " = " << format_double(c.value)
            << '\n';
      }
    }
    return rep.passed() ? kExitOk : kExitVerifyFailed;
  });
}

int cmd_norms(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve_config(opts, false);
    if (opts.input.empty()) throw ConfigError("norms needs an input KP5F file");
    const FieldDump dump = read_dump(opts.input);
    const Field& f = dump.field;
    const SpectralGrid& g = f.grid();

    ojson out;
    out["input"] = opts.input.filename().generic_string();
    out["time"] = dump.time;
    out["grid"] = {{"nx", g.nx()}, {"ny", g.ny()}, {"lx", g.lx()}, {"ly", g.ly()}};
    out["l2"] = f.l2_norm();
    out["mass"] = mass(f);
    out["momentum"] = momentum(f);
    out["zero_line_content"] = zero_line_content(f);
    ojson sob;
    for (int s1 = 0; s1 <= 2; ++s1) {
      for (int s2 = 0; s2 <= 2; ++s2) {
        const NormSpec spec{double(s1), double(s2), 0.0};
        sob[norm_label(spec)] = sobolev_aniso_norm(f, spec);
      }
    }
    for (const auto& m : cfg.monitors) sob[norm_label(m)] = sobolev_aniso_norm(f, m);
    out["sobolev"] = sob;
    bool zero_mass = true;
    try {
      require_zero_mass(f, "norms");
    } catch (const ZeroMassError&) {
      zero_mass = false;
    }
    out["zero_mass"] = zero_mass;
    if (zero_mass) {
      const EnergyTerms e = energy_terms(f);
      out["energy_terms"] = {{"dxx_sq", e.dxx_sq}, {"dx_sq", e.dx_sq}, {"transverse_sq", e.transverse_sq},
                             {"cubic", e.cubic}};
      out["energy"] = energy_functional(f, cfg.dispersion);
      out["printed_energy"] = printed_energy_functional(f, cfg.dispersion.alpha);
      out["dispersion"] = {{"kp", cfg.dispersion.kp_sign == KpSign::KP1 ? "KP1" : "KP2"},
                           {"alpha", cfg.dispersion.alpha}};
    } else {
      out["energy"] = nullptr;
    }
    const std::string text = out.dump(2) + "\n";
    if (opts.out) {
      OutputDir dir(*opts.out);
      write_text(dir / "norms.json", text);
      ojson manifest;
      manifest["command"] = "norms";
      manifest["versions"] = versions();
      manifest["input"] = opts.input.generic_string();
      manifest["config_hash"] = config_hash(cfg);
      manifest["config"] = ojson::parse(canonical_json(cfg, -1));
      manifest["exit_code"] = kExitOk;
      manifest["artifacts"] = {"norms.json", "manifest.json"};
      write_manifest(dir, manifest);
    }
    if (!opts.quiet) log << text;
    return kExitOk;
  });
}

int cmd_resonance_map(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve_config(opts, false);
    const ResonanceMapSpec& rm = cfg.resonance_map;
    OutputDir dir(cfg.output.directory);
    TextFile csv(dir / "resonance_map.csv");
    csv << "xi1,xi2,mu1,mu2,R\n";
    int written = 0;
    for (int a = 0; a < rm.points; ++a) {
      const double xi1 = -rm.xi_max + 2.0 * rm.xi_max * a / (rm.points - 1);
      for (int b = 0; b < rm.points; ++b) {
        const double xi2 = -rm.xi_max + 2.0 * rm.xi_max * b / (rm.points - 1);
        if (xi1 == 0.0 || xi2 == 0.0) continue;
        if (xi1 + xi2 == 0.0 && rm.mu1 + rm.mu2 != 0.0) continue;
        const double r = resonance(xi1, xi2, rm.mu1, rm.mu2, cfg.dispersion);
        csv << format_double(xi1) << ',' << format_double(xi2) << ',' << format_double(rm.mu1) << ','
            << format_double(rm.mu2) << ',' << format_double(r) << '\n';
        ++written;
      }
    }
    csv.close();
    ojson manifest = manifest_base("resonance-map", cfg);
    manifest["rows"] = written;
    manifest["exit_code"] = kExitOk;
    manifest["artifacts"] = {"resonance_map.csv", "manifest.json"};
    write_manifest(dir, manifest);
    if (!opts.quiet) log << "resonance-map: " << written << " points\n";
    return kExitOk;
  });
}

}  // namespace kp5::harness
