#pragma once

/** \file wavefn.hpp
 *
 *  \brief Normalized radial wavefunctions, densities, node counts and the
 *         Hellmann-Feynman consistency check.
 *
 *  The eigenfunction is R = C_in D_in for r < r0 and C_out D_out for r > r0 with
 *
 *      C_in = D_out(r0) / Q,   C_out = D_in(r0) / Q,
 *      Q^2  = D_out(r0)^2 int_0^r0 D_in^2 r dr + D_in(r0)^2 int_r0^inf D_out^2 r dr,
 *
 *  and the global sign fixed by C_in > 0.  For r0 < 1 the inner solution is continued past
 *  r0 by the outer equation up to the matching radius (see matching.hpp); C_in D_in then
 *  covers [0, r_m], C_out D_out covers [r_m, inf), and D_out(r0) above stands for the value
 *  of that continuation divided by C_out / C_in.
 *
 *  In the dimensionless variables the Hellmann-Feynman relation reads
 *
 *      d eps / d r0 = <d V / d r0> = (r0 / 2) (P_in - P_out) = (r0 / 2) (2 P_in - 1),
 *
 *  since d|r^2 - r0^2|/4 / d r0 = +r0/2 inside the circle and -r0/2 outside.
 */

#include <span>
#include <vector>

#include "sombrero/matching.hpp"
#include "sombrero/radial_ode.hpp"

namespace sombrero {

class RadialSolution {
 public:
  RadialSolution() = default;
  RadialSolution(SpectralPoint point, double c_in, double c_out, double q, double inner_integral,
                 double outer_integral, double r_far);

  const SpectralPoint& point() const { return point_; }
  double c_in() const { return c_in_; }
  double c_out() const { return c_out_; }
  double q() const { return q_; }
  /// int_0^r0 D_in^2 r dr and int_r0^r_far D_out^2 r dr (D_out in the sense above).
  double inner_integral() const { return inner_integral_; }
  double outer_integral() const { return outer_integral_; }
  double r_far() const { return r_far_; }
  /// Seam between the C_in and C_out pieces (0 when r0 = 0).
  double r_match() const;

  /// R(r) and R'(r) from the hypergeometric evaluators (ODE fallback); inner branch at r = r0.
  RadialValue operator()(double r) const;
  /// R and R' at many radii (any order) via one integration sweep per region.
  std::vector<RadialValue> sample(std::span<const double> radii) const;

 private:
  SpectralPoint point_;
  double c_in_ = 0.0;
  double c_out_ = 0.0;
  double q_ = 0.0;
  double inner_integral_ = 0.0;
  double outer_integral_ = 0.0;
  double r_far_ = 0.0;
};

inline constexpr double kDerivativeJumpTolerance = 1e-7;

/// Throws NotAnEigenvalue (derivative jump at r0) and QuadratureFailure.
RadialSolution normalize(const SpectralPoint& point);

/// r R(r)^2 at each sample.
std::vector<double> density(const RadialSolution& sol, std::span<const double> radii);

/// Probability of r < r0.
double p_inside(const RadialSolution& sol);

int count_nodes(const RadialSolution& sol);

/// int r R^2 dr by composite Simpson on a uniform grid per region (independent of the normalization rule).
double grid_norm(const RadialSolution& sol, int intervals_per_region = 4000);

/// <r> = int r^2 R^2 dr.
double mean_radius(const RadialSolution& sol);

/// |R'(r_m+) - R'(r_m-)| / max |R'| at the matching radius.
double derivative_jump(const RadialSolution& sol);

/// |R(r_m-) - R(r_m+)| / max |R|.
double value_jump(const RadialSolution& sol);

struct HellmannFeynman {
  double slope_fd = 0.0;   ///< (eps(r0+h) - eps(r0-h)) / 2h
  double slope_hf = 0.0;   ///< (r0/2)(2 P_in - 1)
  double p_in = 0.0;
  double residual = 0.0;   ///< |slope_fd - slope_hf|
};

inline constexpr double kDefaultHfStep = 1e-3;

HellmannFeynman hf_check(int m, int n_r, double r0, double h = kDefaultHfStep);
double hf_residual(int m, int n_r, double r0, double h = kDefaultHfStep);

}  // namespace sombrero
