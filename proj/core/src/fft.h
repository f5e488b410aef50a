#ifndef CHROMATONE_SRC_FFT_H_
#define CHROMATONE_SRC_FFT_H_

#include <complex>
#include <cstddef>
#include <span>

namespace chromatone {

/// Real-input FFT of fixed size backed by an FFTW plan. Plans are created
/// under a process-wide lock (the FFTW planner is not thread-safe); executing
/// is lock-free because every instance owns its buffers.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::span<double> real() { return {real_, n_}; }
  std::span<std::complex<double>> bins() { return {bins_, n_ / 2 + 1}; }

  /// real() -> bins(), unnormalized.
  void Forward();
  /// bins() -> real(), unnormalized (scaled by n). Overwrites bins().
  void Inverse();

 private:
  std::size_t n_;
  double* real_;
  std::complex<double>* bins_;
  void* forward_;
  void* inverse_;
};

}  // namespace chromatone

#endif  // CHROMATONE_SRC_FFT_H_
