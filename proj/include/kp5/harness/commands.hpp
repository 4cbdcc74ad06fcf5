#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace kp5::harness {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfig = 2,
  kExitBlowUp = 3,
  kExitIo = 4,
  kExitContraction = 5,
};

struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  bool quiet = false;
  /// verify: suite name and sample count (0 = suite default).
  std::string suite;
  std::size_t samples = 0;
  /// norms: the KP5F dump to read.
  std::filesystem::path input;
};

/// Each command returns an ExitCode and reports progress on `log` unless
/// quiet; errors always go to `err`.
int cmd_simulate(const CommandOptions& opts, std::ostream& log, std::ostream& err);
int cmd_picard(const CommandOptions& opts, std::ostream& log, std::ostream& err);
int cmd_verify(const CommandOptions& opts, std::ostream& log, std::ostream& err);
int cmd_norms(const CommandOptions& opts, std::ostream& log, std::ostream& err);
int cmd_resonance_map(const CommandOptions& opts, std::ostream& log, std::ostream& err);

/// %.17g
std::string format_double(double v);

}  // namespace kp5::harness
