#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace gmg {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double x) {
  double y = std::fmod(x, two_pi);
  if (y < 0.0) y += two_pi;
  if (y >= two_pi) y = 0.0;
  return y;
}

// Distance between two angles on the circle, in [0, pi].
inline double angle_distance(double a, double b) {
  double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return d > std::numbers::pi ? two_pi - d : d;
}

inline double norm2(const Vec& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

// Conjugates the first argument.
inline cplx dot(const Vec& a, const Vec& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline void axpy(cplx alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// splitmix64 step, used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic uniform reals in [0,1): 53-bit draws from mt19937_64.
// (std::uniform_real_distribution is implementation-defined, which would break
// reproducibility of emitted tables across toolchains.)
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : eng_(seed) {}
  double next() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  std::uint64_t next_raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gmg
