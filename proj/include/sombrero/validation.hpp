#pragma once

/** \file validation.hpp
 *
 *  \brief Invariant checks shared by the `validate` command and the acceptance suite.
 */

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sombrero/matching.hpp"

namespace sombrero::validation {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline constexpr std::uint64_t kSweepSeed = 20240517;
inline constexpr int kSweepPoints = 200;

/// Worst-case values of each identity over the seeded sweep.
struct HypSweep {
  double kummer_transform = 0.0;   ///< |M(a,b;z) - e^z M(b-a,b;-z)| / |M|
  double recurrence = 0.0;         ///< contiguous relation residual / max term
  double realness = 0.0;           ///< |Im e^{-iz0/2} M| / |e^{-iz0/2} M|
  double kummer_derivative = 0.0;  ///< central difference vs kummer_m_prime, relative to |M| + |M'|
  double tricomi_derivative = 0.0; ///< same for U
  double tricomi_power = 0.0;      ///< |U(a,a+1;z) z^a - 1|
  double path_overlap = 0.0;       ///< quadrature vs recurrence for a in (0, 1]
  int points = 0;
};

HypSweep hyp_sweep(std::uint64_t seed = kSweepSeed, int points = kSweepPoints);

/// One Check per identity at the pinned tolerances.
std::vector<Check> hyp_identity_checks(std::uint64_t seed = kSweepSeed, int points = kSweepPoints);

/// Lowest five levels of m = 0..3 at r0 = 1e-3 against 2 n_r + |m| + 1, plus the degeneracy count.
std::vector<Check> circular_limit_checks();

/// m = 0..3, n_r = 0..3, r0 in {1, 2, 4, 6} against the extrapolated finite-difference levels.
/// `perturb` is added to the first matching eigenvalue before comparison (sensitivity shim).
Check oracle_equivalence_check(double perturb = 0.0);

/// Hellmann-Feynman residuals at twelve (m, n_r, r0) points.
Check hellmann_feynman_check();

/// Norm on an independent grid and continuity at r0 for a spread of states.
Check normalization_check();

struct WindowFit {
  double lo = 0.0;
  double hi = 0.0;
  double a_fit = 0.0;
  double exponent_fit = 0.0;
};

struct CurveAsymptotics {
  int m = 0;
  int n_r = 0;
  double c_small = 0.0;
  std::vector<WindowFit> windows;
};

struct SpreadRow {
  int n_r = 0;
  double lo = 0.0;
  double hi = 0.0;
  /// (max - min) / mean of A_fit over m.
  double relative_spread = 0.0;
};

struct AsymptoticReport {
  std::vector<CurveAsymptotics> curves;
  std::vector<SpreadRow> spreads;
};

/// Grid used for large-r0 fits: the default grid continued in steps of 0.06 up to 8.02.
std::vector<double> extended_r0_grid();

AsymptoticReport asymptotic_report(std::span<const LevelCurve> curves,
                                   const std::vector<std::pair<double, double>>& windows);

/// A spread over m decreases from the first window to the last, for every n_r.
Check spread_trend_check(const AsymptoticReport& report);

}  // namespace sombrero::validation
