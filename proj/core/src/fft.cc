#include "fft.h"

#include <fftw3.h>

#include <mutex>
#include <new>

namespace chromatone {

namespace {

std::mutex& PlannerMutex() {
  static std::mutex m;
  return m;
}

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  std::lock_guard lock(PlannerMutex());
  real_ = static_cast<double*>(fftw_malloc(sizeof(double) * n));
  bins_ = static_cast<std::complex<double>*>(
      fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)));
  if (real_ == nullptr || bins_ == nullptr) {
    fftw_free(real_);
    fftw_free(bins_);
    throw std::bad_alloc();
  }
  auto* c = reinterpret_cast<fftw_complex*>(bins_);
  // FFTW_ESTIMATE keeps plan selection deterministic across instances, which
  // the streaming == batch guarantee relies on.
  forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_, c, FFTW_ESTIMATE);
  inverse_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), c, real_, FFTW_ESTIMATE);
  for (std::size_t i = 0; i < n; ++i) real_[i] = 0.0;
}

RealFft::~RealFft() {
  std::lock_guard lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_));
  fftw_free(real_);
  fftw_free(bins_);
}

void RealFft::Forward() { fftw_execute(static_cast<fftw_plan>(forward_)); }

void RealFft::Inverse() { fftw_execute(static_cast<fftw_plan>(inverse_)); }

}  // namespace chromatone
