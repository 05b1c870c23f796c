#pragma once

/** \file hyp.hpp
 *
 *  \brief Confluent hypergeometric functions M(a,b;z) (Kummer) and U(a,b;z) (Tricomi)
 *         restricted to the parameter regimes produced by the sombrero radial equations.
 *
 *  M is summed as a power series with compensated summation and a cancellation monitor.
 *  U is evaluated from its Laplace-type integral representation for a > 0, and by
 *  downward recurrence in the first parameter for a <= 0.
 */

#include <complex>

namespace sombrero::hyp {

using Complex = std::complex<double>;

/// Largest |z| accepted by the Kummer series.
inline constexpr double kSeriesMaxAbsZ = 50.0;
/// Hard cap on series terms.
inline constexpr int kSeriesTermCap = 600;
/// Below this many surviving decimal digits a result is refused.
inline constexpr double kMinSurvivingDigits = 6.0;
/// Digits carried by an IEEE double.
inline constexpr double kDoubleDigits = 15.95;

/// Value plus accuracy telemetry.
template <typename T>
struct HypEval {
  T value{};
  /// log10(max partial magnitude / |value|); 0 for pure quadrature results.
  double cancellation_digits = 0.0;
  int terms_used = 0;

  double surviving_digits() const { return kDoubleDigits - cancellation_digits; }
};

using KummerEval = HypEval<Complex>;
using TricomiEval = HypEval<double>;

/// M(a, b; z).  Throws CancellationExceeded / NoConvergence / InvalidArgument.
KummerEval kummer_m(Complex a, double b, Complex z);

/// dM/dz = (a/b) M(a+1, b+1; z).
KummerEval kummer_m_prime(Complex a, double b, Complex z);

enum class TricomiPath {
  Auto,        ///< quadrature for a > 0, recurrence otherwise
  Quadrature,  ///< requires a > 0
  Recurrence,  ///< always shift a upward and recur down (a >= 1 shifted by one step)
};

/// U(a, b; z) for b > 0 (the radial problem uses integer b = |m|+1) and z > 0.
/// Throws QuadratureFailure / RecurrenceUnstable / InvalidArgument.
TricomiEval tricomi_u(double a, double b, double z, TricomiPath path = TricomiPath::Auto);

/// dU/dz = -a U(a+1, b+1; z).
TricomiEval tricomi_u_prime(double a, double b, double z, TricomiPath path = TricomiPath::Auto);

/// Asymptotic expansion U ~ z^-a sum_k (a)_k (a-b+1)_k / k! (-z)^-k together with dU/dz.
/// Only valid when the terms decrease monotonically to double precision;
/// returns false otherwise.
bool tricomi_u_asymptotic(double a, double b, double z, double& value, double& derivative);

}  // namespace sombrero::hyp
