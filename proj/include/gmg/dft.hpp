#pragma once

#include <cstddef>
#include <memory>

#include "gmg/common.hpp"

namespace gmg {

// Unitary discrete Fourier transform of fixed length n:
//   forward: (F_n v)_k = (1/sqrt n) sum_j v_j e^{-2 pi i j k / n}
//   inverse: the conjugate transpose (F_n is symmetric, so F_n^H = conj(F_n)).
// Lengths with only factors 2/3/5 run on a mixed-radix Cooley-Tukey recursion;
// any other length falls back to Bluestein's chirp algorithm on a padded
// smooth length, so every n is supported in O(n log n).
class DftPlan {
 public:
  explicit DftPlan(std::size_t n);

  std::size_t length() const { return n_; }

  void forward(const cplx* in, cplx* out) const;
  void inverse(const cplx* in, cplx* out) const;
  Vec forward(const Vec& v) const;
  Vec inverse(const Vec& v) const;

  // Unnormalized kernels (no 1/sqrt n); used for convolution embeddings.
  void forward_raw(const cplx* in, cplx* out) const;
  void inverse_raw(const cplx* in, cplx* out) const;  // conjugate kernel

 private:
  std::size_t n_;
  bool smooth_;
  std::vector<cplx> tw_;   // tw_[t]  = e^{-2 pi i t / n}
  std::vector<cplx> twc_;  // conj(tw_)

  // Bluestein state (only when !smooth_).
  std::size_t conv_n_ = 0;
  std::shared_ptr<DftPlan> inner_;
  std::vector<cplx> chirp_;       // e^{-i pi j^2 / n}
  std::vector<cplx> chirp_spec_;  // forward_raw of the circularly embedded conj chirp

  void rec(const cplx* x, std::size_t stride, cplx* out, std::size_t n,
           std::size_t step, const cplx* tw) const;
  void raw(const cplx* in, cplx* out, bool forward) const;
  void bluestein(const cplx* in, cplx* out, bool forward) const;
};

bool is_smooth_235(std::size_t n);
std::size_t next_smooth_235(std::size_t n);

}  // namespace gmg
