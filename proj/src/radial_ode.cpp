#include "sombrero/radial_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <boost/numeric/odeint.hpp>

#include "sombrero/error.hpp"
#include "sombrero/hyp.hpp"

namespace sombrero {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;

constexpr double kSeriesRadius = 0.05;

template <typename System>
void integrate_to(System system, State& x, std::vector<double> const& times,
                  std::vector<State>& out) {
  out.clear();
  out.reserve(times.size());
  if (times.size() < 2) {
    if (!times.empty()) out.push_back(x);
    return;
  }
  const double direction = times.back() > times.front() ? 1.0 : -1.0;
  auto stepper = odeint::make_controlled(0.0, kOdeRelTol, odeint::runge_kutta_fehlberg78<State>());
  try {
    odeint::integrate_times(stepper, system, x, times.begin(), times.end(), direction * 1e-2,
                            [&](const State& s, double) { out.push_back(s); });
  } catch (const std::exception& e) {
    throw SolverError(ErrorKind::EvaluatorFailure, std::string("radial ODE integration failed: ") + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------- inner

void InnerOde::series(double r, double& y, double& dy) const {
  // y = sum c_k r^k (k even), c_{k+2} (k+2)(k+2m+2) = xi c_k - c_{k-2} / 4
  double c_prev = 0.0, c = 1.0;
  const double r2 = r * r;
  double power = 1.0;  // r^k
  y = 1.0;
  dy = 0.0;
  for (int k = 0; k < 400; k += 2) {
    const double c_next = (xi_ * c - 0.25 * c_prev) / ((k + 2.0) * (k + 2.0 * m_ + 2.0));
    c_prev = c;
    c = c_next;
    const double dpower = (k + 2.0) * power * r;  // d/dr r^{k+2}
    power *= r2;
    const double term = c * power;
    y += term;
    dy += c * dpower;
    if (std::abs(term) < 1e-18 * std::abs(y) && std::abs(c_prev * power) < 1e-18 * (std::abs(y) + 1.0)) break;
  }
}

RadialValue InnerOde::assemble(double r, double y, double dy) const {
  if (r == 0.0) {
    return {m_ == 0 ? 1.0 : 0.0, m_ == 1 ? 1.0 : 0.0};
  }
  const double rm = std::pow(r, m_);
  return {rm * y, rm * (m_ / r * y + dy)};
}

RadialValue InnerOde::at(double r) const {
  const double one[] = {r};
  return sweep(one).front();
}

std::vector<RadialValue> InnerOde::sweep(std::span<const double> radii) const {
  std::vector<RadialValue> out(radii.size());
  std::vector<double> times{kSeriesRadius};
  std::vector<std::size_t> index, slot;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (r <= kSeriesRadius) {
      double y, dy;
      series(r, y, dy);
      out[i] = assemble(r, y, dy);
      continue;
    }
    if (r < times.back()) {
      throw SolverError(ErrorKind::InvalidArgument, "InnerOde::sweep needs ascending radii");
    }
    if (r > times.back()) times.push_back(r);
    index.push_back(i);
    slot.push_back(times.size() - 1);
  }
  if (index.empty()) return out;

  State x;
  series(kSeriesRadius, x[0], x[1]);
  const double two_m_plus_1 = 2.0 * m_ + 1.0;
  const double xi = xi_;
  auto system = [two_m_plus_1, xi](const State& s, State& ds, double r) {
    ds[0] = s[1];
    ds[1] = -two_m_plus_1 / r * s[1] - (0.25 * r * r - xi) * s[0];
  };
  std::vector<State> states;
  integrate_to(system, x, times, states);
  for (std::size_t j = 0; j < index.size(); ++j) {
    out[index[j]] = assemble(times[slot[j]], states[slot[j]][0], states[slot[j]][1]);
  }
  return out;
}

// ---------------------------------------------------------------- outer

RadialValue OuterOde::assemble(double r, double w, double dw) const {
  const double g = std::pow(r, m_) * std::exp(-0.25 * r * r);
  return {g * w, g * ((m_ / r - 0.5 * r) * w + dw)};
}

RadialValue OuterOde::at(double r) const {
  const double one[] = {r};
  return sweep(one).front();
}

std::vector<RadialValue> OuterOde::sweep(std::span<const double> radii) const {
  std::vector<RadialValue> out(radii.size());
  if (radii.empty()) return out;
  const double r_max = *std::max_element(radii.begin(), radii.end());
  if (!(*std::min_element(radii.begin(), radii.end()) > 0.0)) {
    throw SolverError(ErrorKind::InvalidArgument, "OuterOde::sweep needs positive radii");
  }

  const int b = m_ + 1;
  const double spread = std::abs(a_) + std::abs(a_ - b + 1.0);
  double z_far = std::max({0.5 * (r_max + 4.0) * (r_max + 4.0), 2.0 * std::abs(a_) * std::abs(a_ - b + 1.0) + 2.0 * spread + 40.0});
  double u = 0.0, du = 0.0;
  bool seeded = false;
  for (int attempt = 0; attempt < 8 && !seeded; ++attempt, z_far *= 2.0) {
    seeded = hyp::tricomi_u_asymptotic(a_, b, z_far, u, du);
    if (seeded) break;
  }
  if (!seeded) {
    throw SolverError(ErrorKind::EvaluatorFailure, "OuterOde: asymptotic seed for U did not converge");
  }
  const double r_far = std::sqrt(2.0 * z_far);

  std::vector<std::size_t> order(radii.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return radii[i] > radii[j]; });

  std::vector<double> times{r_far};
  std::vector<std::size_t> slot(radii.size());
  for (std::size_t i : order) {
    if (radii[i] < times.back()) times.push_back(radii[i]);
    slot[i] = times.size() - 1;
  }

  State x{u, r_far * du};  // dw/dr = r dU/dz
  const double two_b_minus_1 = 2.0 * b - 1.0;
  const double two_a = 2.0 * a_;
  auto system = [two_b_minus_1, two_a](const State& s, State& ds, double r) {
    ds[0] = s[1];
    ds[1] = -(two_b_minus_1 / r - r) * s[1] + two_a * s[0];
  };
  std::vector<State> states;
  integrate_to(system, x, times, states);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const State& s = states[slot[i]];
    out[i] = assemble(times[slot[i]], s[0], s[1]);
  }
  return out;
}

// ---------------------------------------------------------------- forward continuation

OuterForward::OuterForward(double a, int abs_m, double r_start, RadialValue start)
    : a_(a), m_(abs_m), r_start_(r_start), start_(start) {
  if (!(r_start > 0.0)) throw SolverError(ErrorKind::InvalidArgument, "OuterForward needs r_start > 0");
}

RadialValue OuterForward::at(double r) const {
  const double one[] = {r};
  return sweep(one).front();
}

std::vector<RadialValue> OuterForward::sweep(std::span<const double> radii) const {
  std::vector<RadialValue> out(radii.size());
  std::vector<double> times{r_start_};
  std::vector<std::size_t> slot(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < times.back()) {
      throw SolverError(ErrorKind::InvalidArgument, "OuterForward::sweep needs ascending radii >= r_start");
    }
    if (radii[i] > times.back()) times.push_back(radii[i]);
    slot[i] = times.size() - 1;
  }

  // Same reduced amplitude as OuterOde: D = r^m e^{-r^2/4} w.
  const double r = r_start_;
  const double g = std::pow(r, m_) * std::exp(-0.25 * r * r);
  State x{start_.value / g, (start_.derivative - (m_ / r - 0.5 * r) * start_.value) / g};
  const double two_b_minus_1 = 2.0 * m_ + 1.0;
  const double two_a = 2.0 * a_;
  auto system = [two_b_minus_1, two_a](const State& s, State& ds, double t) {
    ds[0] = s[1];
    ds[1] = -(two_b_minus_1 / t - t) * s[1] + two_a * s[0];
  };
  std::vector<State> states;
  integrate_to(system, x, times, states);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double t = times[slot[i]];
    const State& s = states[slot[i]];
    const double gt = std::pow(t, m_) * std::exp(-0.25 * t * t);
    out[i] = {gt * s[0], gt * ((m_ / t - 0.5 * t) * s[0] + s[1])};
  }
  return out;
}

}  // namespace sombrero
