#pragma once

/** \file radial_ode.hpp
 *
 *  \brief Direct numerical integration of the inner and outer radial equations.
 *
 *  Used where the hypergeometric evaluators run out of precision and as the
 *  sweep engine for sampling a wavefunction on a grid.  Both integrators work on
 *  the reduced amplitudes (y = D_in / r^|m| inside, w = U(a, |m|+1; r^2/2) outside)
 *  so that neither the r^|m| factor nor the Gaussian decay enters the step control,
 *  and both return D and dD/dr in the normalization of the hypergeometric forms.
 */

#include <span>
#include <vector>

namespace sombrero {

/// D(r) and dD/dr.
struct RadialValue {
  double value = 0.0;
  double derivative = 0.0;
};

inline constexpr double kOdeRelTol = 1e-13;

/// Regular solution of R'' + R'/r + (r^2/4 - m^2/r^2 - xi_in) R = 0, normalized as r^|m| (1 + O(r^2)).
class InnerOde {
 public:
  InnerOde(double xi_in, int abs_m) : xi_(xi_in), m_(abs_m) {}

  RadialValue at(double r) const;
  /// Values at ascending, non-negative radii in a single integration pass.
  std::vector<RadialValue> sweep(std::span<const double> radii) const;

 private:
  void series(double r, double& y, double& dy) const;
  RadialValue assemble(double r, double y, double dy) const;

  double xi_;
  int m_;
};

/// Recessive solution r^|m| e^{-r^2/4} U(a, |m|+1; r^2/2) of
/// R'' + R'/r - (r^2/4 + m^2/r^2 + xi_out) R = 0, integrated inward from a far point
/// seeded by the asymptotic expansion of U.
class OuterOde {
 public:
  OuterOde(double a, int abs_m) : a_(a), m_(abs_m) {}

  RadialValue at(double r) const;
  /// Values at positive radii given in any order.
  std::vector<RadialValue> sweep(std::span<const double> radii) const;

 private:
  RadialValue assemble(double r, double w, double dw) const;

  double a_;
  int m_;
};

/// Any solution of the outer equation, integrated forward from given data at r_start.
/// Carries the regular inner solution across r0 when r0 is small.
class OuterForward {
 public:
  OuterForward(double a, int abs_m, double r_start, RadialValue start);

  RadialValue at(double r) const;
  /// Values at radii >= r_start given in ascending order.
  std::vector<RadialValue> sweep(std::span<const double> radii) const;

 private:
  double a_;
  int m_;
  double r_start_;
  RadialValue start_;
};

}  // namespace sombrero
