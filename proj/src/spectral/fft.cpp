#include "kp5/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "kp5/errors.hpp"

namespace kp5::fft {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const std::vector<int>& extents, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(extents, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t total = 1;
    for (int e : extents) total *= static_cast<std::size_t>(e);
    // Planning with FFTW_ESTIMATE leaves the scratch buffer untouched.
    std::vector<std::complex<double>> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft(static_cast<int>(extents.size()), extents.data(), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw Kp5Error("FFTW failed to create a plan");
    plans_.emplace(std::move(key), plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(std::span<std::complex<double>> data, const std::vector<int>& extents, int sign) {
  std::size_t total = 1;
  for (int e : extents) total *= static_cast<std::size_t>(e);
  if (total != data.size()) throw SpecError("transform extents do not match buffer size");
  fftw_plan plan = cache().get(extents, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
  const double scale = 1.0 / std::sqrt(static_cast<double>(total));
  for (auto& v : data) v *= scale;
}

}  // namespace

void forward(std::span<std::complex<double>> data, const std::vector<int>& extents) {
  run(data, extents, FFTW_FORWARD);
}

void inverse(std::span<std::complex<double>> data, const std::vector<int>& extents) {
  run(data, extents, FFTW_BACKWARD);
}

}  // namespace kp5::fft
