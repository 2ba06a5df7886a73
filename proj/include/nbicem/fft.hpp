#pragma once

#include "nbicem/types.hpp"

namespace nbicem {

/// Unitary N-point DFT pair backed by FFTW.
///
/// Convention: the IDFT matrix F_N has entries exp(+j*2*pi*m*n/N)/sqrt(N),
/// so idft(x) = F_N * x and dft(x) = F_N^H * x. Both directions preserve the
/// l2 norm exactly (up to roundoff), which keeps every power bookkeeping in
/// the library free of hidden scale factors.
///
/// Instances are cheap to construct (FFTW_ESTIMATE planning) and are not
/// thread-safe; use one instance per thread. Plan creation itself is guarded
/// by a global mutex as FFTW requires.
class UnitaryFft {
 public:
  explicit UnitaryFft(int n);
  ~UnitaryFft();

  UnitaryFft(const UnitaryFft&) = delete;
  UnitaryFft& operator=(const UnitaryFft&) = delete;

  int size() const { return n_; }

  /// F_N * x (inverse DFT, +j exponent, 1/sqrt(N)).
  VecXc idft(const VecXc& x) const;

  /// F_N^H * x (forward DFT, -j exponent, 1/sqrt(N)).
  VecXc dft(const VecXc& x) const;

 private:
  int n_;
  void* fwd_plan_;   // fftw_plan, kept opaque to avoid leaking fftw3.h
  void* bwd_plan_;
  cxd* buf_;         // fftw-aligned in/out scratch, length n_
};

}  // namespace nbicem
