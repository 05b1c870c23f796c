#include "sombrero/model.hpp"

#include <cmath>
#include <cstdlib>

#include "sombrero/error.hpp"

namespace sombrero {

namespace {

void check(const PhysicalParams& p) {
  if (!(p.mu > 0.0) || !(p.omega > 0.0) || !(p.hbar > 0.0)) {
    throw SolverError(ErrorKind::InvalidPhysicalParams, "mu, omega and hbar must be positive");
  }
  if (!(p.rho0 >= 0.0)) {
    throw SolverError(ErrorKind::InvalidPhysicalParams, "rho0 must be non-negative");
  }
}

}  // namespace

double length_scale(const PhysicalParams& p) {
  check(p);
  return std::sqrt(2.0 * p.mu * p.omega / p.hbar);
}

double nondimensionalize(const PhysicalParams& p) { return length_scale(p) * p.rho0; }

double energy_to_eps(const PhysicalParams& p, double energy) {
  check(p);
  return energy / (p.hbar * p.omega);
}

double eps_to_energy(const PhysicalParams& p, double eps) {
  check(p);
  return eps * p.hbar * p.omega;
}

SpectralParams spectral_params(double eps, int m, double r0) {
  const int abs_m = std::abs(m);
  SpectralParams s;
  s.r0 = r0;
  s.eps = eps;
  s.xi_in = 0.25 * r0 * r0 - eps;
  s.xi_out = -0.25 * r0 * r0 - eps;
  s.gamma = abs_m + 1;
  s.alpha = std::complex<double>(0.5 * (abs_m + 1), -0.5 * s.xi_in);
  s.a = 0.5 * (abs_m + 1 + s.xi_out);
  return s;
}

}  // namespace sombrero
