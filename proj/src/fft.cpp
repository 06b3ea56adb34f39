#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace qnls::detail {
namespace {

// FFTW planning is not thread safe; execution with the new-array interface is.
// Plans are created once per (size, direction) and kept for the process lifetime.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign, bool in_place) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n, sign, in_place);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<cplx> scratch_in(n), scratch_out(n);
    auto* src = reinterpret_cast<fftw_complex*>(scratch_in.data());
    auto* dst = in_place ? src : reinterpret_cast<fftw_complex*>(scratch_out.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), src, dst, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<const cplx> in, std::span<cplx> out, int sign) {
  const bool in_place = in.data() == out.data();
  fftw_plan plan = cache().get(in.size(), sign, in_place);
  // Out-of-place complex DFT plans preserve their input (FFTW default).
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  fftw_execute_dft(plan, src, reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void fft_forward(std::span<const cplx> in, std::span<cplx> out) { execute(in, out, FFTW_FORWARD); }

void fft_backward(std::span<const cplx> in, std::span<cplx> out) {
  execute(in, out, FFTW_BACKWARD);
}

}  // namespace qnls::detail
