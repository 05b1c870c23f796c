#pragma once

/** \file matching.hpp
 *
 *  \brief Eigenvalues of the parabolic sombrero from matching the regular inner
 *         solution to the recessive outer solution at r = r0.
 *
 *  Eigenvalues are zeros of the scaled Wronskian
 *
 *      W(eps) = [D_in D_out' - D_in' D_out] / [(|D_in| + |D_in'|) (|D_out| + |D_out'|)]
 *
 *  evaluated at r_m = max(r0, 1).  For r0 < 1 the regular inner solution is first continued
 *  from r0 to r_m with the outer equation; the Wronskian of two solutions of one equation
 *  only changes by the factor r0 / r_m, so the zero set is unchanged, while D_out is never
 *  needed at small radii where its irregular r^-|m| part swamps it off-eigenvalue.
 *  W is smooth in eps (no poles at zeros of D_in or D_out) and vanishes exactly where the
 *  logarithmic derivatives agree.  Levels of fixed m are labelled by the
 *  node count of their wavefunction; labels are authoritative during continuation.
 */

#include <span>
#include <vector>

namespace sombrero {

enum class EvalPath {
  Series,  ///< Kummer series (inner) or Tricomi quadrature + recurrence (outer)
  Ode,     ///< direct integration of the radial equation
};

/// D and dD/dr at one radius, with the evaluation path and the relative imaginary
/// contamination of the complex inner form (0 on the ODE path and for the outer function).
struct BoundaryValues {
  double value = 0.0;
  double derivative = 0.0;
  double imag_residue = 0.0;
  EvalPath path = EvalPath::Series;
};

/// Surviving digits below which eval_inner abandons the Kummer series.
inline constexpr double kInnerSeriesMinDigits = 10.0;

/// D_in(r) = r^|m| e^{-i r^2/4} M(alpha, gamma; i r^2/2) (real), with ODE fallback.
BoundaryValues eval_inner(double eps, int m, double r0, double r);
/// D_out(r) = r^|m| e^{-r^2/4} U(a, gamma; r^2/2), with ODE fallback.  Requires r >= r0 > 0.
BoundaryValues eval_outer(double eps, int m, double r0, double r);

/// Radius at which inner and outer data are compared: max(r0, kMatchFloor).
inline constexpr double kMatchFloor = 1.0;
double matching_radius(double r0);

/// Regular inner solution continued past r0 with the outer equation (r >= r0 > 0).
BoundaryValues eval_bridge(double eps, int m, double r0, double r);

/// Single-path variants, used for cross-checks.
BoundaryValues eval_inner_series(double eps, int m, double r0, double r);
BoundaryValues eval_inner_ode(double eps, int m, double r0, double r);
BoundaryValues eval_outer_tricomi(double eps, int m, double r0, double r);
BoundaryValues eval_outer_ode(double eps, int m, double r0, double r);

struct MismatchDetail {
  double value = 0.0;
  /// |Im W| / scale when the inner side came from the complex series.
  double imag_residue = 0.0;
  BoundaryValues inner;
  BoundaryValues outer;
};

/// Scaled Wronskian at matching_radius(r0) (see file comment).
double mismatch(double eps, int m, double r0);
MismatchDetail mismatch_detail(double eps, int m, double r0);

struct SpectralPoint {
  double r0 = 0.0;
  int m = 0;
  int n_r = 0;
  double eps = 0.0;
  double residual = 0.0;
};

struct CurveSample {
  double r0 = 0.0;
  double eps = 0.0;
};

struct LevelCurve {
  int m = 0;
  int n_r = 0;
  std::vector<CurveSample> samples;
};

enum class ClusterKind { N, AbsM, NR };

struct Cluster {
  ClusterKind kind = ClusterKind::N;
  int label = 0;
  std::vector<LevelCurve> curves;
};

inline constexpr int kMaxLevelCount = 64;
inline constexpr double kScanStep = 0.05;
inline constexpr double kRootTolerance = 1e-10;
inline constexpr double kResidualBound = 1e-9;
inline constexpr double kContinuationWindow = 0.5;

/// Outer cutoff used for sampling and integrating the tail: r0 + max(8, 4 sqrt(max(eps, 1))).
double tail_cutoff(double eps, double r0);

/// Number of sign changes of the (unnormalized) matched solution on (0, tail_cutoff).
int count_state_nodes(double eps, int m, double r0);

/// The `count` lowest levels at fixed m, ascending, labelled by node count.
std::vector<SpectralPoint> find_levels(int m, double r0, int count);

/// Exact oscillator levels 2 n_r + |m| + 1 (matching is ill-posed at r0 = 0).
std::vector<SpectralPoint> special_case_r0_zero(int m, int count);

/// Level with node count n_r, searched in a window around eps_hint.
SpectralPoint track_level(int m, int n_r, double r0, double eps_hint);

/// Curves n_r = 0..nr_max at fixed m over an ascending r0 grid (refined where needed).
std::vector<LevelCurve> scan_levels(int m, int nr_max, std::span<const double> r0_grid);

/// scan_levels for several m, run on up to `threads` threads; output ordered by (m, n_r).
std::vector<LevelCurve> scan_levels_many(std::span<const int> ms, int nr_max, std::span<const double> r0_grid,
                                         int threads);

/// 141-point grid on [0.01, 7]: 41 geometric points up to 1, then uniform steps of 0.06.
std::vector<double> default_r0_grid();

Cluster clusters(std::span<const LevelCurve> curves, ClusterKind kind, int label);

/// r0 of the eps-minimum of a curve, refined by a parabola through the sampled minimum.
double capture_radius(const LevelCurve& curve);

struct FitWindow {
  double small_max = 0.5;
  double large_min = 5.0;
  double large_max = 1e300;
};

struct AsymptoticFit {
  /// d(eps)/d(r0^2) at r0 -> 0 (oscillator law predicts -1/4).
  double c_small = 0.0;
  /// A in eps ~ r0^2/4 - A r0 over the large window.
  double a_fit = 0.0;
  /// Slope of log eps against log r0 over the large window.
  double exponent_fit = 0.0;
};

AsymptoticFit fit_asymptotics(const LevelCurve& curve, const FitWindow& window = {});

/// Worker count from SOMBRERO_THREADS (default: hardware concurrency, at least 1).
int thread_budget();

}  // namespace sombrero
