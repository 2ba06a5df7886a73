#include "nbicem/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace nbicem {

namespace {
// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

UnitaryFft::UnitaryFft(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("UnitaryFft: size must be positive");
  buf_ = reinterpret_cast<cxd*>(fftw_alloc_complex(static_cast<size_t>(n)));
  if (buf_ == nullptr) throw std::bad_alloc();
  auto* b = reinterpret_cast<fftw_complex*>(buf_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fwd_plan_ = fftw_plan_dft_1d(n, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_plan_ = fftw_plan_dft_1d(n, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (fwd_plan_ == nullptr || bwd_plan_ == nullptr)
    throw std::runtime_error("UnitaryFft: plan creation failed");
}

UnitaryFft::~UnitaryFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_plan_));
  fftw_free(reinterpret_cast<fftw_complex*>(buf_));
}

VecXc UnitaryFft::idft(const VecXc& x) const {
  if (x.size() != n_) throw std::invalid_argument("UnitaryFft::idft: size mismatch");
  for (int i = 0; i < n_; ++i) buf_[i] = x[i];
  fftw_execute(static_cast<fftw_plan>(bwd_plan_));  // +j exponent, unscaled
  VecXc out(n_);
  const double s = 1.0 / std::sqrt(static_cast<double>(n_));
  for (int i = 0; i < n_; ++i) out[i] = buf_[i] * s;
  return out;
}

VecXc UnitaryFft::dft(const VecXc& x) const {
  if (x.size() != n_) throw std::invalid_argument("UnitaryFft::dft: size mismatch");
  for (int i = 0; i < n_; ++i) buf_[i] = x[i];
  fftw_execute(static_cast<fftw_plan>(fwd_plan_));  // -j exponent, unscaled
  VecXc out(n_);
  const double s = 1.0 / std::sqrt(static_cast<double>(n_));
  for (int i = 0; i < n_; ++i) out[i] = buf_[i] * s;
  return out;
}

}  // namespace nbicem
