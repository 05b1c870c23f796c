#pragma once

/** \file oracle.hpp
 *
 *  \brief Independent finite-difference eigensolver for the radial problem.
 *
 *  Discretizes -(1/r)(r R')' + m^2/r^2 R + |r^2 - r0^2|/4 R = eps R on the staggered grid
 *  r_j = (j + 1/2) h in conservative form (zero flux through the r = 0 face), symmetrized by
 *  u_j = sqrt(r_j) R_j.  Eigenvalues come from Sturm-sequence bisection on the resulting
 *  symmetric tridiagonal matrix; r0 is placed on a cell face so the kink of the potential
 *  does not pollute the O(h^2) error.
 */

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sombrero {

struct OracleSpectrum {
  int m = 0;
  double r0 = 0.0;
  /// Step actually used (adjusted so that r0 / h is an integer).
  double h = 0.0;
  double r_max = 0.0;
  std::vector<double> eigenvalues;
  /// Cell centres and, when requested, eigenvectors of R sampled there (one row per level).
  std::vector<double> grid;
  std::vector<std::vector<double>> eigenvectors;
};

OracleSpectrum fd_spectrum(int m, double r0, int count, double h, double r_max, bool with_vectors = false);

/// Second-order Richardson extrapolation from steps h and h/2.
inline double richardson(double eps_h, double eps_h2) { return (4.0 * eps_h2 - eps_h) / 3.0; }

/// Number of eigenvalues of the discretization strictly below x.
int sturm_count(int m, double r0, double h, double r_max, double x);

/// Extrapolated oracle levels 0..count-1 from steps h and h/2 on r_max = r0 + pad.
std::vector<double> oracle_levels(int m, double r0, int count, double h = 0.01, double pad = 12.0);

/// Sign changes in a sampled vector, ignoring entries below 1e-10 of its maximum.
int count_sign_changes(std::span<const double> v);

struct GoldenRow {
  int m = 0;
  double r0 = 0.0;
  int k = 0;
  double eps_extrapolated = 0.0;
  double h = 0.0;
  double r_max = 0.0;
};

std::vector<GoldenRow> oracle_golden(std::span<const int> ms, std::span<const double> r0s, int count,
                                     double h = 0.01, double pad = 12.0);
void write_golden_csv(std::ostream& os, std::span<const GoldenRow> rows);
std::vector<GoldenRow> read_golden_csv(std::istream& is);

}  // namespace sombrero
