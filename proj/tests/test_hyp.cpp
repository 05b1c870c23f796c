#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "sombrero/error.hpp"
#include "sombrero/hyp.hpp"
#include "sombrero/model.hpp"
#include "sombrero/radial_ode.hpp"
#include "sombrero/validation.hpp"

using namespace sombrero;
using hyp::Complex;

namespace {

double rel(Complex x, Complex ref) { return std::abs(x - ref) / std::abs(ref); }
double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const SolverError& e) {
    return e.kind();
  }
  FAIL("expected a SolverError");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("kummer_m at z = 0 is one") {
  for (Complex a : {Complex{0.3, -1.2}, Complex{2.0, 0.0}, Complex{-1.5, 4.0}}) {
    const auto f = hyp::kummer_m(a, 2.0, 0.0);
    CHECK(f.value == Complex{1.0, 0.0});
    CHECK(f.cancellation_digits == 0.0);
  }
}

TEST_CASE("kummer_m(1, 1, z) is exp(z)") {
  CHECK(rel(hyp::kummer_m(1.0, 1.0, 1.5).value, std::exp(Complex{1.5})) <= 1e-14);
  CHECK(rel(hyp::kummer_m(1.0, 1.0, Complex{0.0, 7.0}).value, std::exp(Complex{0.0, 7.0})) <= 1e-14);
}

TEST_CASE("inner combination is real at sombrero parameters") {
  const double r0 = 2.0, eps = 1.3;
  const auto sp = spectral_params(eps, 0, r0);
  const double z0 = 0.5 * r0 * r0;
  const auto f = hyp::kummer_m(sp.alpha, sp.gamma, Complex{0.0, z0});
  const Complex v = std::exp(Complex{0.0, -0.5 * z0}) * f.value;
  CHECK(std::abs(v.imag()) <= 1e-10 * std::abs(v.real()));
}

TEST_CASE("kummer_m telemetry and errors") {
  const auto f = hyp::kummer_m(Complex{0.5, 3.0}, 1.0, Complex{0.0, 12.0});
  CHECK(f.terms_used > 10);
  CHECK(f.cancellation_digits > 0.0);
  CHECK(f.surviving_digits() >= hyp::kMinSurvivingDigits);

  CHECK(kind_of([] { hyp::kummer_m(1.0, -2.0, 1.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { hyp::kummer_m(1.0, 1.0, 51.0); }) == ErrorKind::InvalidArgument);
  // Deep imaginary argument at a large level: the monitor refuses the sum.
  const auto sp = spectral_params(40.0, 0, 9.0);
  CHECK(kind_of([&] { hyp::kummer_m(sp.alpha, sp.gamma, Complex{0.0, 45.0}); }) ==
        ErrorKind::CancellationExceeded);
}

TEST_CASE("kummer_m_prime examples") {
  const Complex a{0.5, -0.2};
  CHECK(rel(hyp::kummer_m_prime(a, 3.0, 0.0).value, a / 3.0) <= 1e-15);
  CHECK(rel(hyp::kummer_m_prime(1.0, 1.0, Complex{0.4, 0.9}).value, std::exp(Complex{0.4, 0.9})) <= 1e-14);

  const Complex z{0.0, 1.0};
  const double h = 1e-5;
  const Complex fd = (hyp::kummer_m(a, 1.0, z + h).value - hyp::kummer_m(a, 1.0, z - h).value) / (2.0 * h);
  CHECK(std::abs(fd - hyp::kummer_m_prime(a, 1.0, z).value) <= 1e-9);
}

TEST_CASE("tricomi_u closed forms") {
  CHECK(rel(hyp::tricomi_u(1.0, 2.0, 3.0).value, 1.0 / 3.0) <= 1e-14);
  CHECK(hyp::tricomi_u(0.0, 1.0, 2.0).value == 1.0);
  for (double a : {0.5, 1.0, 2.0}) {
    for (double z : {0.5, 2.0, 10.0}) {
      CAPTURE(a);
      CAPTURE(z);
      CHECK(rel(hyp::tricomi_u(a, a + 1.0, z).value, std::pow(z, -a)) <= 1e-13);
    }
  }
}

TEST_CASE("tricomi_u at negative a against inward integration") {
  // D_out = r^|m| e^{-r^2/4} U(a, |m|+1; r^2/2); at m = 0, r = 2 this is e^{-1} U(a, 1; 2).
  const double a = -1.3;
  const double ode = OuterOde(a, 0).at(2.0).value / std::exp(-1.0);
  const auto u = hyp::tricomi_u(a, 1.0, 2.0);
  CHECK(rel(u.value, ode) <= 1e-8);
  CHECK(u.terms_used == 3);
}

TEST_CASE("tricomi_u_prime examples") {
  CHECK(hyp::tricomi_u_prime(0.0, 1.0, 1.7).value == 0.0);
  CHECK(rel(hyp::tricomi_u_prime(1.0, 2.0, 2.0).value, -0.25) <= 1e-13);
  const double h = 1e-5;
  const double fd = (hyp::tricomi_u(0.7, 1.0, 2.0 + h).value - hyp::tricomi_u(0.7, 1.0, 2.0 - h).value) / (2.0 * h);
  CHECK(std::abs(fd - hyp::tricomi_u_prime(0.7, 1.0, 2.0).value) <= 1e-8);
}

TEST_CASE("tricomi paths agree on the overlap") {
  for (double a : {0.05, 0.3, 0.77, 1.0}) {
    for (double b : {1.0, 2.0, 4.0}) {
      const double q = hyp::tricomi_u(a, b, 1.9, hyp::TricomiPath::Quadrature).value;
      const double r = hyp::tricomi_u(a, b, 1.9, hyp::TricomiPath::Recurrence).value;
      CHECK(rel(r, q) <= 1e-10);
    }
  }
}

TEST_CASE("tricomi asymptotic series matches quadrature at large z") {
  double v = 0.0, d = 0.0;
  REQUIRE(hyp::tricomi_u_asymptotic(0.8, 2.0, 60.0, v, d));
  CHECK(rel(v, hyp::tricomi_u(0.8, 2.0, 60.0).value) <= 1e-12);
  CHECK(rel(d, hyp::tricomi_u_prime(0.8, 2.0, 60.0).value) <= 1e-12);
  CHECK_FALSE(hyp::tricomi_u_asymptotic(0.8, 2.0, 0.5, v, d));
}

TEST_CASE("tricomi_u argument errors") {
  CHECK(kind_of([] { hyp::tricomi_u(1.0, 1.0, 0.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { hyp::tricomi_u(1.0, 0.0, 1.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { hyp::tricomi_u(-0.5, 1.0, 1.0, hyp::TricomiPath::Quadrature); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("downward recurrence refuses a collapsing minimal solution") {
  // Far below zero with a small argument, U(a) is many orders smaller than the terms
  // combined to reach it; the growth monitor must trip rather than return noise.
  CHECK(kind_of([] { hyp::tricomi_u(-60.3, 1.0, 0.05); }) == ErrorKind::RecurrenceUnstable);
}

TEST_CASE("seeded identity sweep") {
  const auto s = validation::hyp_sweep();
  CHECK(s.points == 200);
  CHECK(s.kummer_transform <= 1e-12);
  CHECK(s.recurrence <= 1e-12);
  CHECK(s.realness <= 1e-10);
  CHECK(s.kummer_derivative <= 1e-9);
  CHECK(s.tricomi_derivative <= 1e-8);
  CHECK(s.tricomi_power <= 1e-13);
  CHECK(s.path_overlap <= 1e-10);

  const auto again = validation::hyp_sweep();
  CHECK(again.kummer_transform == s.kummer_transform);
  CHECK(again.path_overlap == s.path_overlap);
}
