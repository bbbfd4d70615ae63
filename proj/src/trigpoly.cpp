#include "gmg/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gmg {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// Golden-section maximization of fn on [lo, hi].
double golden_max(const std::function<double(double)>& fn, double lo,
                  double hi) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = fn(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = fn(x1);
    }
  }
  return std::max(f1, f2);
}

}  // namespace

TrigPoly::TrigPoly() : degree_(0), coeffs_(1, cplx(0.0)), real_valued_(true) {}

TrigPoly::TrigPoly(int degree, std::vector<cplx> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)), real_valued_(false) {
  if (degree_ < 0 || coeffs_.size() != static_cast<std::size_t>(2 * degree_ + 1))
    throw std::invalid_argument(
        "TrigPoly: coefficient vector must have length 2*degree+1");
  detect_real();
}

void TrigPoly::detect_real() {
  double scale = 0.0;
  for (const cplx& c : coeffs_) scale = std::max(scale, std::abs(c));
  const double tol = 1e-13 * std::max(scale, 1.0);
  for (int j = 0; j <= degree_; ++j) {
    if (std::abs(coeffs_[degree_ + j] - std::conj(coeffs_[degree_ - j])) > tol) {
      real_valued_ = false;
      return;
    }
  }
  real_valued_ = true;
  // Kill symmetry drift exactly so eval_real and Hermitian matvecs stay clean.
  for (int j = 1; j <= degree_; ++j) {
    cplx m = 0.5 * (coeffs_[degree_ + j] + std::conj(coeffs_[degree_ - j]));
    coeffs_[degree_ + j] = m;
    coeffs_[degree_ - j] = std::conj(m);
  }
  coeffs_[degree_] = cplx(coeffs_[degree_].real(), 0.0);
}

TrigPoly TrigPoly::constant(double c) { return TrigPoly(0, {cplx(c)}); }

TrigPoly TrigPoly::cosine_factor(double xhat) {
  // 2 - 2cos(x - xhat) = -e^{i xhat} e^{-ix} + 2 - e^{-i xhat} e^{ix}
  return TrigPoly(1, {-std::polar(1.0, xhat), cplx(2.0), -std::polar(1.0, -xhat)});
}

cplx TrigPoly::coeff(int j) const {
  if (j < -degree_ || j > degree_) return cplx(0.0);
  return coeffs_[degree_ + j];
}

cplx TrigPoly::eval(double x) const {
  const cplx w = std::polar(1.0, x);
  cplx term = std::polar(1.0, -degree_ * x);
  cplx acc = 0.0;
  for (int j = -degree_; j <= degree_; ++j) {
    acc += coeffs_[degree_ + j] * term;
    term *= w;
  }
  return acc;
}

double TrigPoly::eval_real(double x) const { return eval(x).real(); }

TrigPoly TrigPoly::multiply(const TrigPoly& other) const {
  const int d = degree_ + other.degree_;
  std::vector<cplx> out(2 * d + 1, cplx(0.0));
  for (int j = -degree_; j <= degree_; ++j) {
    const cplx aj = coeffs_[degree_ + j];
    if (aj == cplx(0.0)) continue;
    for (int k = -other.degree_; k <= other.degree_; ++k)
      out[d + j + k] += aj * other.coeffs_[other.degree_ + k];
  }
  return TrigPoly(d, std::move(out));
}

TrigPoly TrigPoly::conjugate() const {
  std::vector<cplx> out(coeffs_.size());
  for (int j = -degree_; j <= degree_; ++j)
    out[degree_ + j] = std::conj(coeffs_[degree_ - j]);
  return TrigPoly(degree_, std::move(out));
}

TrigPoly TrigPoly::mod_square() const { return multiply(conjugate()); }

TrigPoly TrigPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("TrigPoly::pow: negative exponent");
  TrigPoly acc = TrigPoly::constant(1.0);
  for (int i = 0; i < e; ++i) acc = acc.multiply(*this);
  return acc;
}

double TrigPoly::sup_norm() const {
  return sup_norm_fn([this](double x) { return std::abs(eval(x)); });
}

double TrigPoly::mean_coefficient() const {
  if (!real_valued_)
    throw std::invalid_argument(
        "TrigPoly::mean_coefficient: symbol is not real-valued");
  return coeffs_[degree_].real();
}

double TrigPoly::coeff_l1() const {
  double s = 0.0;
  for (const cplx& c : coeffs_) s += std::abs(c);
  return s;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) { return a.multiply(b); }

SymbolZero make_zero(double location, int order) {
  if (order < 2 || order % 2 != 0)
    throw std::invalid_argument("make_zero: order must be even and >= 2");
  SymbolZero z;
  z.location = wrap_angle(location);
  z.order = order;
  z.beta = (order + 1) / 2;
  return z;
}

PointSet::PointSet(std::vector<double> pts) : points(std::move(pts)) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (angle_distance(points[i], points[j]) <= 1e-12)
        throw std::invalid_argument("PointSet: points must be distinct mod 2*pi");
}

std::pair<PointSet, PointSet> omega_set(double x0, int g) {
  if (g < 2) throw std::invalid_argument("omega_set: g must be >= 2");
  std::vector<double> omega, mirror;
  for (int k = 0; k < g; ++k) {
    double y = wrap_angle(x0 + two_pi * k / g);
    omega.push_back(y);
    if (k > 0) mirror.push_back(y);
  }
  return {PointSet(std::move(omega)), PointSet(std::move(mirror))};
}

TrigPoly projector_symbol(const std::vector<SymbolZero>& zeros, int g) {
  if (zeros.empty())
    throw std::invalid_argument("projector_symbol: empty zero list");
  if (g < 2) throw std::invalid_argument("projector_symbol: g must be >= 2");
  TrigPoly p = TrigPoly::constant(1.0);
  for (const SymbolZero& z : zeros) {
    auto [omega, mirror] = omega_set(z.location, g);
    for (double xhat : mirror.points)
      p = p.multiply(TrigPoly::cosine_factor(xhat).pow(z.beta));
  }
  return p;
}

TrigPoly coarse_symbol(const TrigPoly& f, const TrigPoly& p, int g) {
  if (g < 2) throw std::invalid_argument("coarse_symbol: g must be >= 2");
  TrigPoly q = f.multiply(p.mod_square());
  const int dh = q.degree() / g;
  std::vector<cplx> out(2 * dh + 1);
  for (int j = -dh; j <= dh; ++j) out[dh + j] = q.coeff(g * j);
  return TrigPoly(dh, std::move(out));
}

std::vector<SymbolZero> relocate_zeros(const std::vector<SymbolZero>& zeros,
                                       int g) {
  if (g < 2) throw std::invalid_argument("relocate_zeros: g must be >= 2");
  std::vector<SymbolZero> out;
  for (const SymbolZero& z : zeros) {
    double moved = wrap_angle(g * z.location);
    bool merged = false;
    for (SymbolZero& w : out) {
      if (angle_distance(w.location, moved) <= 1e-9) {
        w.order = std::max(w.order, z.order);
        w.beta = (w.order + 1) / 2;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(make_zero(moved, z.order));
  }
  return out;
}

bool ConditionReport::all_ok() const {
  if (!orbit_sum_ok) return false;
  for (bool ok : limit_ok)
    if (!ok) return false;
  return true;
}

ConditionReport check_tgm_conditions_fn(const std::function<double(double)>& f,
                                        double scale,
                                        const std::vector<SymbolZero>& zeros,
                                        const TrigPoly& p, int g) {
  if (g < 2)
    throw std::invalid_argument("check_tgm_conditions: g must be >= 2");
  ConditionReport rep;
  const double noise_floor = 100.0 * eps * std::max(scale, 1.0);

  for (const SymbolZero& z : zeros) {
    bool zero_ok = true;
    for (int k = 1; k < g; ++k) {
      // Probe the ratio p^2(y)/f(x) along x -> x0 with y the k-th mirror
      // image of x; skip samples where f is below the evaluation noise floor.
      std::vector<double> ratios;
      for (int t = 1; t <= 6; ++t) {
        const double x = z.location + std::pow(10.0, -t);
        const double fx = f(wrap_angle(x));
        if (std::abs(fx) <= noise_floor) continue;
        const double y = wrap_angle(x + two_pi * k / g);
        const double p2 = std::norm(p.eval(y));
        ratios.push_back(fx > 0.0 ? p2 / fx
                                  : std::numeric_limits<double>::infinity());
      }
      bool finite;
      if (ratios.size() < 2) {
        finite = false;  // cannot establish boundedness
      } else {
        bool non_increasing = true;
        double mx = ratios[0];
        for (std::size_t i = 1; i < ratios.size(); ++i) {
          if (ratios[i] > ratios[i - 1] * (1.0 + 1e-6)) non_increasing = false;
          mx = std::max(mx, ratios[i]);
        }
        finite = non_increasing || mx <= 1e3 * ratios[0];
        if (!std::isfinite(mx)) finite = false;
      }
      if (!finite) {
        zero_ok = false;
        ConditionReport::Violation v;
        v.zero = z;
        v.mirror_point = wrap_angle(z.location + two_pi * k / g);
        v.measured = ratios.empty() ? std::numeric_limits<double>::quiet_NaN()
                                    : ratios.back();
        rep.violations.push_back(v);
      }
    }
    rep.limit_ok.push_back(zero_ok);
  }

  // Orbit-sum positivity: min_x sum_{k} p^2(x + 2 pi k / g).
  const int samples = 4096;
  double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = two_pi * i / samples;
    double s = 0.0;
    for (int k = 0; k < g; ++k) s += std::norm(p.eval(wrap_angle(x + two_pi * k / g)));
    mn = std::min(mn, s);
    mx = std::max(mx, s);
  }
  rep.orbit_sum_min = mn;
  rep.orbit_sum_max = mx;
  rep.orbit_sum_ok = mn > 1e-10 * std::max(mx, 1e-300);
  return rep;
}

ConditionReport check_tgm_conditions(const TrigPoly& f,
                                     const std::vector<SymbolZero>& zeros,
                                     const TrigPoly& p, int g) {
  return check_tgm_conditions_fn(
      [&f](double x) { return f.eval(x).real(); }, f.coeff_l1(), zeros, p, g);
}

double sup_norm_fn(const std::function<double(double)>& fn, int samples) {
  double best = 0.0;
  int best_i = 0;
  for (int i = 0; i < samples; ++i) {
    const double v = std::abs(fn(two_pi * i / samples));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double lo = two_pi * (best_i - 1) / samples;
  const double hi = two_pi * (best_i + 1) / samples;
  const double refined = golden_max(
      [&fn](double x) { return std::abs(fn(wrap_angle(x))); }, lo, hi);
  return std::max(best, refined);
}

double fit_zero_order(const std::function<double(double)>& fn, double x0,
                      double scale) {
  const double noise_floor = 100.0 * eps * std::max(scale, 1.0);
  std::vector<double> lx, ly;
  for (double delta : {1e-1, 1e-2, 1e-3}) {
    const double v = fn(wrap_angle(x0 + delta));
    if (v <= noise_floor) continue;
    lx.push_back(std::log(delta));
    ly.push_back(std::log(v));
  }
  const std::size_t m = lx.size();
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

void verify_zero_claims(const std::function<double(double)>& fn, double sup,
                        double scale, const std::vector<SymbolZero>& zeros) {
  for (const SymbolZero& z : zeros) {
    const double v = std::abs(fn(z.location));
    if (v > 1e-10 * std::max(sup, 1e-300)) {
      std::ostringstream msg;
      msg << "symbol does not vanish at claimed zero x0=" << z.location
          << " (|f(x0)|=" << v << ", sup=" << sup << ")";
      throw std::runtime_error(msg.str());
    }
    const double slope = fit_zero_order(fn, z.location, scale);
    if (!(std::fabs(slope - z.order) <= 0.2)) {
      std::ostringstream msg;
      msg << "zero at x0=" << z.location << " has fitted order " << slope
          << ", claimed " << z.order;
      throw std::runtime_error(msg.str());
    }
  }
}

}  // namespace gmg
