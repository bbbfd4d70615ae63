#include "gmg/dft.hpp"

#include <cmath>
#include <stdexcept>

namespace gmg {

bool is_smooth_235(std::size_t n) {
  if (n == 0) return false;
  for (std::size_t f : {2u, 3u, 5u})
    while (n % f == 0) n /= f;
  return n == 1;
}

std::size_t next_smooth_235(std::size_t n) {
  while (!is_smooth_235(n)) ++n;
  return n;
}

DftPlan::DftPlan(std::size_t n) : n_(n), smooth_(is_smooth_235(n)) {
  if (n == 0) throw std::invalid_argument("DftPlan: zero length");
  if (smooth_) {
    tw_.resize(n_);
    twc_.resize(n_);
    for (std::size_t t = 0; t < n_; ++t) {
      tw_[t] = std::polar(1.0, -two_pi * static_cast<double>(t) / n_);
      twc_[t] = std::conj(tw_[t]);
    }
  } else {
    // Bluestein: DFT as a circular convolution with a chirp, on a smooth
    // length >= 2n-1. Chirp angles use j^2 mod 2n to stay exact in int64.
    conv_n_ = next_smooth_235(2 * n_ - 1);
    inner_ = std::make_shared<DftPlan>(conv_n_);
    chirp_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const std::uint64_t q = (static_cast<std::uint64_t>(j) * j) % (2 * n_);
      chirp_[j] = std::polar(1.0, -std::numbers::pi * static_cast<double>(q) / n_);
    }
    Vec b(conv_n_, cplx(0.0));
    b[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n_; ++j) {
      b[j] = std::conj(chirp_[j]);
      b[conv_n_ - j] = std::conj(chirp_[j]);
    }
    chirp_spec_.resize(conv_n_);
    inner_->forward_raw(b.data(), chirp_spec_.data());
  }
}

// out[0..n) <- unnormalized DFT of x[0], x[stride], ..., x[(n-1)*stride].
// step = n_/n; tw points at the master twiddle table (or its conjugate).
void DftPlan::rec(const cplx* x, std::size_t stride, cplx* out, std::size_t n,
                  std::size_t step, const cplx* tw) const {
  if (n == 1) {
    out[0] = x[0];
    return;
  }
  std::size_t r = n % 2 == 0 ? 2 : (n % 3 == 0 ? 3 : 5);
  const std::size_t m = n / r;
  for (std::size_t j = 0; j < r; ++j)
    rec(x + j * stride, stride * r, out + j * m, m, step * r, tw);
  cplx t[5];
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t j = 0; j < r; ++j)
      t[j] = out[j * m + s] * tw[(j * s * step) % n_];
    for (std::size_t q = 0; q < r; ++q) {
      cplx acc = t[0];
      for (std::size_t j = 1; j < r; ++j)
        acc += t[j] * tw[(j * q * m * step) % n_];
      out[q * m + s] = acc;
    }
  }
}

void DftPlan::raw(const cplx* in, cplx* out, bool forward) const {
  if (smooth_) {
    rec(in, 1, out, n_, 1, forward ? tw_.data() : twc_.data());
  } else {
    bluestein(in, out, forward);
  }
}

void DftPlan::bluestein(const cplx* in, cplx* out, bool forward) const {
  Vec a(conv_n_, cplx(0.0)), A(conv_n_), y(conv_n_);
  for (std::size_t j = 0; j < n_; ++j) {
    const cplx c = forward ? chirp_[j] : std::conj(chirp_[j]);
    a[j] = in[j] * c;
  }
  inner_->forward_raw(a.data(), A.data());
  if (forward) {
    for (std::size_t t = 0; t < conv_n_; ++t) A[t] *= chirp_spec_[t];
  } else {
    for (std::size_t t = 0; t < conv_n_; ++t) A[t] *= std::conj(chirp_spec_[t]);
  }
  inner_->inverse_raw(A.data(), y.data());
  const double inv = 1.0 / static_cast<double>(conv_n_);
  for (std::size_t k = 0; k < n_; ++k) {
    const cplx c = forward ? chirp_[k] : std::conj(chirp_[k]);
    out[k] = y[k] * inv * c;
  }
}

void DftPlan::forward_raw(const cplx* in, cplx* out) const { raw(in, out, true); }
void DftPlan::inverse_raw(const cplx* in, cplx* out) const { raw(in, out, false); }

void DftPlan::forward(const cplx* in, cplx* out) const {
  forward_raw(in, out);
  const double s = 1.0 / std::sqrt(static_cast<double>(n_));
  for (std::size_t i = 0; i < n_; ++i) out[i] *= s;
}

void DftPlan::inverse(const cplx* in, cplx* out) const {
  inverse_raw(in, out);
  const double s = 1.0 / std::sqrt(static_cast<double>(n_));
  for (std::size_t i = 0; i < n_; ++i) out[i] *= s;
}

Vec DftPlan::forward(const Vec& v) const {
  if (v.size() != n_) throw std::invalid_argument("DftPlan: length mismatch");
  Vec out(n_);
  forward(v.data(), out.data());
  return out;
}

Vec DftPlan::inverse(const Vec& v) const {
  if (v.size() != n_) throw std::invalid_argument("DftPlan: length mismatch");
  Vec out(n_);
  inverse(v.data(), out.data());
  return out;
}

}  // namespace gmg
