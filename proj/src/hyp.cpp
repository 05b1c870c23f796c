#include "sombrero/hyp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "sombrero/error.hpp"

namespace sombrero::hyp {

namespace {

/// Neumaier's variant of Kahan summation.
template <typename T>
class BasicCompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_ = 0;
  T comp_ = 0;
};

using CompensatedSum = BasicCompensatedSum<double>;

/// Series terms are carried in extended precision (x87 long double on the usual targets):
/// the rounding error of the term recursion, not the summation, limits a double-only series.
using Wide = long double;
using WideComplex = std::complex<Wide>;

struct WideComplexSum {
  BasicCompensatedSum<Wide> re, im;
  void add(WideComplex x) {
    re.add(x.real());
    im.add(x.imag());
  }
  WideComplex value() const { return {re.value(), im.value()}; }
};

bool is_nonpositive_integer(double b) { return b <= 0.0 && b == std::floor(b); }

double digits_lost(double scale, double magnitude) {
  if (magnitude == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, std::log10(scale / magnitude));
}

constexpr double kQuadratureRelTol = 1e-12;

/// Gamma(a) U(a,b;z) = int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt, returned already divided by Gamma(a).
double tricomi_quadrature(double a, double b, double z) {
  using boost::math::quadrature::exp_sinh;
  using boost::math::quadrature::tanh_sinh;

  const double c = static_cast<double>(b) - a - 1.0;
  const double log_gamma = std::lgamma(a);

  // Peak of the integrand for a > 1: z t^2 + (z - b + 2) t - (a - 1) = 0.
  double peak = 0.0;
  if (a > 1.0) {
    const double p = z - b + 2.0;
    peak = (-p + std::sqrt(p * p + 4.0 * z * (a - 1.0))) / (2.0 * z);
  }
  const double split = std::max(1.0, peak);

  double head = 0.0, head_err = 0.0, head_l1 = 0.0;
  if (a < 1.0) {
    // t = s^(1/a) removes the t^(a-1) endpoint singularity: t^(a-1) dt = ds / a.
    const double inv_a = 1.0 / a;
    auto f = [&](double s) {
      if (s <= 0.0) return std::exp(-std::lgamma(a + 1.0));
      const double t = std::pow(s, inv_a);
      return std::exp(-z * t + c * std::log1p(t) - std::lgamma(a + 1.0));
    };
    tanh_sinh<double> integrator;
    head = integrator.integrate(f, 0.0, std::pow(split, a), 1e-14, &head_err, &head_l1);
  } else {
    auto f = [&](double t) {
      if (t <= 0.0) return a == 1.0 ? std::exp(-log_gamma) : 0.0;
      return std::exp(-z * t + (a - 1.0) * std::log(t) + c * std::log1p(t) - log_gamma);
    };
    tanh_sinh<double> integrator;
    head = integrator.integrate(f, 0.0, split, 1e-14, &head_err, &head_l1);
  }

  auto tail_f = [&](double u) {
    const double t = split + u;
    return std::exp(-z * t + (a - 1.0) * std::log(t) + c * std::log1p(t) - log_gamma);
  };
  exp_sinh<double> tail_integrator;
  double tail_err = 0.0, tail_l1 = 0.0;
  const double tail = tail_integrator.integrate(tail_f, 0.0, std::numeric_limits<double>::infinity(), 1e-14,
                                                &tail_err, &tail_l1);

  const double value = head + tail;
  const double err = head_err + tail_err;
  if (!std::isfinite(value) || !(err <= kQuadratureRelTol * std::abs(value))) {
    throw SolverError(ErrorKind::QuadratureFailure,
                      "U(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(z) +
                          ") error estimate " + std::to_string(err));
  }
  return value;
}

TricomiEval tricomi_recurrence(double a, double b, double z, int shift) {
  const double top = a + shift;
  double u_next = tricomi_quadrature(top + 1.0, b, z);
  double u = tricomi_quadrature(top, b, z);
  // First-order forward error bound, seeded with the quadrature tolerance.
  double err_next = kQuadratureRelTol * std::abs(u_next);
  double err = kQuadratureRelTol * std::abs(u);
  constexpr double kRound = 1.2e-16;

  double k = top;
  for (int step = 0; step < shift; ++step) {
    // U(k-1) + (b - 2k - z) U(k) + k (k - b + 1) U(k+1) = 0
    const double c1 = -(b - 2.0 * k - z);
    const double c2 = -k * (k - b + 1.0);
    const double t1 = c1 * u;
    const double t2 = c2 * u_next;
    const double u_prev = t1 + t2;
    const double err_prev = std::abs(c1) * err + std::abs(c2) * err_next +
                            kRound * (std::abs(t1) + std::abs(t2));
    u_next = u;
    err_next = err;
    u = u_prev;
    err = err_prev;
    k -= 1.0;
  }

  TricomiEval out;
  out.value = u;
  out.terms_used = shift;
  const double rel = u == 0.0 ? std::numeric_limits<double>::infinity() : err / std::abs(u);
  out.cancellation_digits = std::max(0.0, std::log10(rel / 1e-16));
  if (out.surviving_digits() < kMinSurvivingDigits) {
    throw SolverError(ErrorKind::RecurrenceUnstable,
                      "downward recurrence for U(" + std::to_string(a) + "," + std::to_string(b) + "," +
                          std::to_string(z) + ") keeps " + std::to_string(out.surviving_digits()) + " digits");
  }
  return out;
}

}  // namespace

KummerEval kummer_m(Complex a, double b, Complex z) {
  if (is_nonpositive_integer(b)) {
    throw SolverError(ErrorKind::InvalidArgument, "kummer_m: b is a non-positive integer");
  }
  if (!(std::abs(z) <= kSeriesMaxAbsZ)) {
    throw SolverError(ErrorKind::InvalidArgument, "kummer_m: |z| exceeds the series cap");
  }

  WideComplexSum sum;
  sum.add(1.0L);
  WideComplex term = 1.0L;
  const WideComplex wa{a.real(), a.imag()};
  const WideComplex wz{z.real(), z.imag()};
  const Wide wb = b;
  double max_mag = 1.0;
  int small_run = 0;
  int k = 0;
  bool converged = false;
  for (; k < kSeriesTermCap; ++k) {
    term *= (wa + static_cast<Wide>(k)) * wz / ((wb + k) * static_cast<Wide>(k + 1));
    sum.add(term);
    const double partial = static_cast<double>(std::abs(sum.value()));
    const double mag = static_cast<double>(std::abs(term));
    max_mag = std::max({max_mag, mag, partial});
    if (term == WideComplex{}) {
      converged = true;
      break;
    }
    small_run = mag < 1e-19 * partial ? small_run + 1 : 0;
    if (small_run == 3) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw SolverError(ErrorKind::NoConvergence, "kummer_m: term cap reached");
  }

  KummerEval out;
  const WideComplex total = sum.value();
  out.value = {static_cast<double>(total.real()), static_cast<double>(total.imag())};
  out.terms_used = k + 1;
  out.cancellation_digits = digits_lost(max_mag, std::abs(out.value));
  if (out.surviving_digits() < kMinSurvivingDigits) {
    throw SolverError(ErrorKind::CancellationExceeded,
                      "kummer_m: " + std::to_string(out.cancellation_digits) + " digits lost at |z|=" +
                          std::to_string(std::abs(z)));
  }
  return out;
}

KummerEval kummer_m_prime(Complex a, double b, Complex z) {
  KummerEval shifted = kummer_m(a + 1.0, b + 1.0, z);
  shifted.value *= a / b;
  return shifted;
}

TricomiEval tricomi_u(double a, double b, double z, TricomiPath path) {
  if (!(b > 0.0)) throw SolverError(ErrorKind::InvalidArgument, "tricomi_u: b must be positive");
  if (!(z > 0.0)) throw SolverError(ErrorKind::InvalidArgument, "tricomi_u: z must be positive");

  if (path == TricomiPath::Quadrature || (path == TricomiPath::Auto && a > 0.0)) {
    if (!(a > 0.0)) throw SolverError(ErrorKind::InvalidArgument, "tricomi_u: quadrature path needs a > 0");
    TricomiEval out;
    out.value = tricomi_quadrature(a, b, z);
    return out;
  }
  if (a == 0.0 && path == TricomiPath::Auto) {
    return TricomiEval{1.0, 0.0, 0};
  }
  const int shift = std::max(1, static_cast<int>(std::ceil(1.0 - a)));
  return tricomi_recurrence(a, b, z, shift);
}

TricomiEval tricomi_u_prime(double a, double b, double z, TricomiPath path) {
  if (a == 0.0) return TricomiEval{0.0, 0.0, 0};
  TricomiEval shifted = tricomi_u(a + 1.0, b + 1.0, z, path);
  shifted.value *= -a;
  return shifted;
}

bool tricomi_u_asymptotic(double a, double b, double z, double& value, double& derivative) {
  if (!(z > 0.0)) return false;
  CompensatedSum sum, dsum;
  double term = 1.0;
  sum.add(1.0);
  dsum.add(a);
  const double inv_z = 1.0 / z;
  for (int k = 0; k < kSeriesTermCap; ++k) {
    const double next = term * (a + k) * (a - b + 1.0 + k) / (k + 1.0) * (-inv_z);
    if (next == 0.0) break;
    if (std::abs(next) > std::abs(term)) return false;
    term = next;
    sum.add(term);
    dsum.add((a + k + 1.0) * term);
    if (std::abs(term) * (1.0 + std::abs(a + k + 1.0)) < 1e-17 * std::abs(sum.value())) break;
    if (k + 1 == kSeriesTermCap) return false;
  }
  const double lead = std::pow(z, -a);
  value = lead * sum.value();
  derivative = -lead * inv_z * dsum.value();
  return std::isfinite(value) && std::isfinite(derivative);
}

}  // namespace sombrero::hyp
