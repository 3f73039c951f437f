#pragma once
#include <complex>
#include <memory>

namespace wavetr {

/// Out-of-place 2D complex FFT workspace (FFTW under the hood, ESTIMATE plans
/// so the algorithm choice is deterministic). Plan creation is serialized
/// internally; one workspace must not be shared across threads.
class Fft2D {
 public:
  explicit Fft2D(int n);
  ~Fft2D();
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  int n() const { return n_; }

  /// Unnormalized forward DFT (sign -1 exponent), in and out of length n*n.
  void forward(const std::complex<double>* in, std::complex<double>* out);
  /// Unnormalized backward DFT (sign +1 exponent).
  void backward(const std::complex<double>* in, std::complex<double>* out);

  /// Per-thread plan cache. Reference valid for the thread's lifetime.
  static Fft2D& thread_cached(int n);

 private:
  int n_;
  void* plan_fwd_;
  void* plan_bwd_;
  void* buf_in_;
  void* buf_out_;
};

}  // namespace wavetr
