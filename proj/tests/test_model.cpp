#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sombrero/error.hpp"
#include "sombrero/model.hpp"

using namespace sombrero;

TEST_CASE("nondimensionalize") {
  CHECK(nondimensionalize({1.0, 1.0, 1.0, 0.0}) == 0.0);
  CHECK(nondimensionalize({1.0, 1.0, 1.0, 2.0}) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(nondimensionalize({2.0, 0.5, 1.0, 3.0}) == doctest::Approx(std::sqrt(2.0) * 3.0).epsilon(1e-15));
  CHECK(length_scale({1.0, 2.0, 4.0, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("invalid physical parameters") {
  for (PhysicalParams p : {PhysicalParams{0.0, 1.0, 1.0, 1.0}, PhysicalParams{1.0, -1.0, 1.0, 1.0},
                           PhysicalParams{1.0, 1.0, 0.0, 1.0}, PhysicalParams{1.0, 1.0, 1.0, -1.0}}) {
    try {
      nondimensionalize(p);
      FAIL("expected InvalidPhysicalParams");
    } catch (const SolverError& e) {
      CHECK(e.kind() == ErrorKind::InvalidPhysicalParams);
    }
  }
}

TEST_CASE("energy map round trip") {
  const PhysicalParams p{1.7, 0.3, 1.1, 2.0};
  for (double e : {0.01, 1.0, 123.456}) {
    CHECK(eps_to_energy(p, energy_to_eps(p, e)) == doctest::Approx(e).epsilon(1e-15));
  }
  CHECK(energy_to_eps({1.0, 2.0, 0.5, 0.0}, 3.0) == doctest::Approx(3.0));
}

TEST_CASE("spectral_params examples") {
  const auto a = spectral_params(1.0, 0, 0.0);
  CHECK(a.xi_in == -1.0);
  CHECK(a.xi_out == -1.0);
  CHECK(a.alpha == std::complex<double>(0.5, 0.5));
  CHECK(a.a == 0.0);
  CHECK(a.gamma == 1);

  const auto b = spectral_params(1.3, 2, 2.0);
  CHECK(b.xi_in == doctest::Approx(-0.3));
  CHECK(b.xi_out == doctest::Approx(-2.3));
  CHECK(b.alpha.real() == doctest::Approx(1.5));
  CHECK(b.alpha.imag() == doctest::Approx(0.15));
  CHECK(b.a == doctest::Approx(0.35));
  CHECK(b.gamma == 3);
}

TEST_CASE("spectral_params depends on |m| only and gamma - conj(alpha) = alpha") {
  for (int m = 0; m <= 5; ++m) {
    for (double eps : {0.2, 3.7, 11.0}) {
      const auto p = spectral_params(eps, m, 1.9);
      const auto q = spectral_params(eps, -m, 1.9);
      CHECK(p.alpha == q.alpha);
      CHECK(p.a == q.a);
      CHECK(p.gamma == q.gamma);
      CHECK(p.xi_in == q.xi_in);
      const auto diff = static_cast<double>(p.gamma) - std::conj(p.alpha) - p.alpha;
      CHECK(std::abs(diff) == 0.0);
    }
  }
}

TEST_CASE("quantum number helpers") {
  CHECK(QuantumNumbers{-3, 1}.abs_m() == 3);
  CHECK(QuantumNumbers{-3, 1}.n() == 5);
  CHECK(oscillator_level(-2, 1) == 5.0);
  CHECK(barrier_top(4.0) == 4.0);
}
