#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kp5/dispersion.hpp"
#include "kp5/evolution.hpp"
#include "kp5/field.hpp"
#include "kp5/grid.hpp"
#include "kp5/norms.hpp"

namespace kp5::harness {

struct GridSpec {
  int nx = 64;
  int ny = 64;
  double lx = 2.0 * std::numbers::pi;
  double ly = 2.0 * std::numbers::pi;
};

struct GaussianData {
  double amplitude = 0.1;
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  /// Defaults to the box centre.
  std::optional<double> center_x;
  std::optional<double> center_y;
};

struct ModeTerm {
  int k = 0;
  int l = 0;
  double amplitude = 0.0;
  double phase = 0.0;
};

/// Σ amplitude·cos(2π(k x/lx + l y/ly) + phase)
struct ModeSumData {
  std::vector<ModeTerm> modes;
};

struct RandomShellData {
  int j = 0;
  /// Falls back to the run seed.
  std::optional<std::uint64_t> seed;
  double amplitude = 1.0;
};

struct FileData {
  std::filesystem::path path;
};

using InitialData = std::variant<GaussianData, ModeSumData, RandomShellData, FileData>;

struct OutputSpec {
  std::filesystem::path directory = "kp5_out";
  /// Snapshot every n steps; 0 keeps only the initial and final states.
  int snapshot_stride = 0;
};

struct ResonanceMapSpec {
  double xi_max = 20.0;
  int points = 201;
  double mu1 = 1.0;
  double mu2 = -0.5;
};

struct RunConfig {
  GridSpec grid;
  DispersionParams dispersion;
  SolverConfig solver;
  InitialData initial_data = GaussianData{};
  std::vector<NormSpec> monitors{{0.0, 0.0, 0.0}};
  OutputSpec output;
  ResonanceMapSpec resonance_map;
  std::uint64_t seed = 0;

  SpectralGrid make_grid() const;
};

/// Parses one JSON document. Unknown keys, wrong types and invalid values
/// raise ConfigError. Relative file paths resolve against base_dir.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Canonical JSON of the fully defaulted config (stable key order).
std::string canonical_json(const RunConfig& cfg, int indent = 2);

/// FNV-1a 64-bit of canonical_json(cfg, -1), as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// Lengths are numbers or strings such as "2pi", "pi", "0.5pi", "32*pi".
double parse_length(const std::string& text);

/// Builds φ on the config grid, then removes the ξ = 0 line and the Nyquist
/// lines. The file variant throws FormatError on a shape mismatch.
Field make_initial_data(const RunConfig& cfg);

}  // namespace kp5::harness
