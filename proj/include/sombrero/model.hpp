#pragma once

#include <complex>

namespace sombrero {

/// Physical parameters of H = -hbar^2/(2 mu) Laplacian + mu omega^2 |rho^2 - rho0^2| / 2.
struct PhysicalParams {
  double mu = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double rho0 = 0.0;
};

/// State label: angular momentum m and radial node count n_r.
struct QuantumNumbers {
  int m = 0;
  int n_r = 0;

  int abs_m() const { return m < 0 ? -m : m; }
  /// Principal oscillator number n = 2 n_r + |m|.
  int n() const { return 2 * n_r + abs_m(); }
};

/// Parameters of the inner Kummer and outer Tricomi solutions at energy eps.
struct SpectralParams {
  double r0 = 0.0;
  double eps = 0.0;
  double xi_in = 0.0;
  double xi_out = 0.0;
  std::complex<double> alpha;
  double a = 0.0;
  int gamma = 1;
};

/// Length scale factor sqrt(2 mu omega / hbar).  Throws InvalidPhysicalParams.
double length_scale(const PhysicalParams& p);

/// r0 = sqrt(2 mu omega / hbar) rho0.
double nondimensionalize(const PhysicalParams& p);

/// eps = E / (hbar omega).
double energy_to_eps(const PhysicalParams& p, double energy);
double eps_to_energy(const PhysicalParams& p, double eps);

SpectralParams spectral_params(double eps, int m, double r0);

/// Exact circular-oscillator level 2 n_r + |m| + 1.
inline double oscillator_level(int m, int n_r) { return 2.0 * n_r + (m < 0 ? -m : m) + 1.0; }

/// Barrier height at the centre, r0^2 / 4.
inline double barrier_top(double r0) { return 0.25 * r0 * r0; }

}  // namespace sombrero
