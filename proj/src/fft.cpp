#include "wavetr/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace wavetr {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft2D::Fft2D(int n) : n_(n) {
  const std::size_t count = static_cast<std::size_t>(n) * n;
  buf_in_ = fftw_malloc(sizeof(fftw_complex) * count);
  buf_out_ = fftw_malloc(sizeof(fftw_complex) * count);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_2d(n, n, static_cast<fftw_complex*>(buf_in_),
                               static_cast<fftw_complex*>(buf_out_), FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_2d(n, n, static_cast<fftw_complex*>(buf_in_),
                               static_cast<fftw_complex*>(buf_out_), FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft2D::~Fft2D() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_in_);
  fftw_free(buf_out_);
}

void Fft2D::forward(const std::complex<double>* in, std::complex<double>* out) {
  const std::size_t bytes = sizeof(fftw_complex) * static_cast<std::size_t>(n_) * n_;
  std::memcpy(buf_in_, in, bytes);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(out, buf_out_, bytes);
}

void Fft2D::backward(const std::complex<double>* in, std::complex<double>* out) {
  const std::size_t bytes = sizeof(fftw_complex) * static_cast<std::size_t>(n_) * n_;
  std::memcpy(buf_in_, in, bytes);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  std::memcpy(out, buf_out_, bytes);
}

Fft2D& Fft2D::thread_cached(int n) {
  thread_local std::map<int, std::unique_ptr<Fft2D>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<Fft2D>(n)).first;
  return *it->second;
}

}  // namespace wavetr
