#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kp5 {

struct SuiteCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

/// Tabular samples plus summary statistics and the pass/fail checks of one
/// verification suite.
struct SuiteReport {
  std::string suite;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, double>> summary;
  std::vector<SuiteCheck> checks;

  bool passed() const;
};

/// resonance, kp2bound, strichartz, convolution, dyadic, unitarity
const std::vector<std::string>& suite_names();

bool is_suite(std::string_view name);

/// samples = 0 picks the suite's default size. Unknown names throw SpecError.
SuiteReport run_suite(std::string_view name, std::uint64_t seed, std::size_t samples = 0);

SuiteReport run_resonance_suite(std::uint64_t seed, std::size_t samples_per_case = 10000);
SuiteReport run_kp2bound_suite(std::uint64_t seed, std::size_t samples = 10000);
SuiteReport run_strichartz_suite(std::uint64_t seed, std::size_t samples_per_shell = 100);
SuiteReport run_convolution_suite(std::size_t a_points = 201);
SuiteReport run_dyadic_suite(std::size_t x_points = 1000000);
SuiteReport run_unitarity_suite(std::uint64_t seed, std::size_t fields = 100);

/// Least-squares slope of ys against xs.
double regression_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace kp5
