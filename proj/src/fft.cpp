#include "gsqg/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace gsqg::fft {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find({n, sign});
    if (it != plans_.end()) return it->second;
    std::vector<cplx> a(n), b(n);
    // FFTW_UNALIGNED: the plan may be executed on any std::vector storage.
    fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                      reinterpret_cast<fftw_complex*>(b.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(std::make_pair(n, sign), plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<const cplx> in, std::span<cplx> out, int sign) {
  const int n = static_cast<int>(in.size());
  fftw_plan plan = cache().get(n, sign);
  // Out-of-place complex plans leave their input untouched.
  if (in.data() == out.data()) {
    std::vector<cplx> copy(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(copy.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return;
  }
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) {
  execute(in, out, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(in.size());
  for (auto& v : out) v *= scale;
}

void backward(std::span<const cplx> in, std::span<cplx> out) { execute(in, out, FFTW_BACKWARD); }

}  // namespace gsqg::fft
