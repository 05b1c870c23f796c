#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sombrero/error.hpp"
#include "sombrero/matching.hpp"
#include "sombrero/wavefn.hpp"

using namespace sombrero;

namespace {

SpectralPoint level(int m, int n_r, double r0) { return find_levels(m, r0, n_r + 1).at(n_r); }

std::vector<double> uniform(double lo, double hi, int n) {
  std::vector<double> r;
  for (int i = 0; i <= n; ++i) r.push_back(lo + (hi - lo) * i / n);
  return r;
}

int interior_maxima(const std::vector<double>& v) {
  int count = 0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1]) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("normalization on an independent grid") {
  for (int n_r = 0; n_r <= 2; ++n_r) {
    for (double r0 : {0.3, 2.0, 5.0}) {
      const auto sol = normalize(level(0, n_r, r0));
      CAPTURE(n_r);
      CAPTURE(r0);
      CHECK(std::abs(grid_norm(sol) - 1.0) <= 1e-8);
      CHECK(sol.q() > 0.0);
      CHECK(sol.c_in() > 0.0);
      CHECK(value_jump(sol) <= 1e-10);
      CHECK(derivative_jump(sol) <= kDerivativeJumpTolerance);
    }
  }
}

TEST_CASE("sewing constants follow the closed form") {
  const auto sol = normalize(level(1, 1, 3.0));
  const auto din = eval_inner(sol.point().eps, 1, 3.0, 3.0);
  const auto dout = eval_outer(sol.point().eps, 1, 3.0, 3.0);
  CHECK(std::abs(sol.c_in() * din.value - sol.c_out() * dout.value) <= 1e-12 * std::abs(sol.c_in() * din.value));
  CHECK(sol.c_in() == doctest::Approx(std::abs(dout.value) / sol.q()).epsilon(1e-10));
  CHECK(std::abs(sol.c_out()) == doctest::Approx(std::abs(din.value) / sol.q()).epsilon(1e-10));
}

TEST_CASE("ground state near the oscillator limit") {
  const auto sol = normalize(level(0, 0, 1e-3));
  for (double r : {0.0, 0.5, 1.0, 2.0, 3.5}) {
    CHECK(std::abs(sol(r).value - std::exp(-0.25 * r * r)) <= 1e-4);
  }
  const auto r = uniform(0.0, 4.0, 40);
  const auto v = sol.sample(r);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(std::abs(v[i].value - sol(r[i]).value) <= 1e-10);
}

TEST_CASE("normalize rejects non-eigenvalues") {
  auto p = level(0, 0, 2.0);
  p.residual = 1.0;
  CHECK_THROWS_AS(normalize(p), SolverError);
  p = level(0, 0, 2.0);
  p.eps += 1e-3;
  try {
    normalize(p);
    FAIL("expected NotAnEigenvalue");
  } catch (const SolverError& e) {
    CHECK(e.kind() == ErrorKind::NotAnEigenvalue);
  }
}

TEST_CASE("density shape") {
  const auto small = normalize(level(0, 3, 0.01));
  const auto r = uniform(0.0, small.r_far(), 2000);
  const auto d = density(small, r);
  CHECK(d.front() == 0.0);
  for (double x : d) CHECK(x >= 0.0);
  CHECK(interior_maxima(d) == 4);

  const auto large = normalize(level(0, 0, 7.0));
  const auto rl = uniform(0.0, large.r_far(), 2000);
  const auto dl = density(large, rl);
  std::size_t peak = 0;
  for (std::size_t i = 0; i < dl.size(); ++i) {
    if (dl[i] > dl[peak]) peak = i;
  }
  CHECK(std::abs(rl[peak] - 7.0) < 2.0);
  CHECK(std::abs(mean_radius(large) - 7.0) < std::abs(mean_radius(small) - 0.01));
  CHECK_THROWS_AS(density(large, std::vector<double>{-1.0}), SolverError);
}

TEST_CASE("probability inside the circle") {
  CHECK(p_inside(normalize(level(0, 0, 0.01))) < 1e-3);
  // Below the capture radius (about 1.37 for the ground state) the slope is negative, above it positive.
  for (double r0 : {0.5, 1.0, 2.0, 3.0, 4.0, 5.0}) {
    const double p = p_inside(normalize(level(0, 0, r0)));
    CAPTURE(r0);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    CHECK((p > 0.5) == (r0 > 1.37));
  }
}

TEST_CASE("P_in is one half at the capture radius") {
  std::vector<double> grid;
  for (int k = 0; k <= 40; ++k) grid.push_back(0.8 + 0.02 * k);
  const auto curve = scan_levels(0, 0, grid).front();
  const double r_c = capture_radius(curve);
  const auto p = find_levels(0, r_c, 1).front();
  CHECK(std::abs(p_inside(normalize(p)) - 0.5) <= 1e-3);
}

TEST_CASE("node counts") {
  for (int m = 0; m <= 3; ++m) CHECK(count_nodes(normalize(level(m, 0, 2.0))) == 0);
  CHECK(count_nodes(normalize(level(0, 2, 1e-3))) == 2);
  for (int k = 0; k <= 3; ++k) CHECK(count_nodes(normalize(level(1, k, 4.0))) == k);
}

TEST_CASE("Hellmann-Feynman relation") {
  const auto hf = hf_check(0, 0, 2.0);
  CHECK(hf.residual <= 1e-3 * std::max(1.0, std::abs(hf.slope_fd)));
  CHECK(hf_residual(0, 0, 2.0) == hf.residual);

  const auto small = hf_check(1, 0, 0.1);
  CHECK(small.slope_hf == doctest::Approx(-0.05).epsilon(0.02));
  CHECK(small.residual <= 1e-3);

  CHECK_THROWS_AS(hf_check(0, 0, 2.0, 0.1), SolverError);
  CHECK_THROWS_AS(hf_check(0, 0, 5e-4, 1e-3), SolverError);
}

TEST_CASE("r0 = 0 uses the pure oscillator") {
  const auto sol = normalize(special_case_r0_zero(0, 1).front());
  CHECK(std::abs(grid_norm(sol) - 1.0) <= 1e-8);
  CHECK(std::abs(sol(1.0).value - std::exp(-0.25)) <= 1e-8);
  CHECK(p_inside(sol) == 0.0);
}
