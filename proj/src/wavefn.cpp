#include "sombrero/wavefn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>

#include "sombrero/error.hpp"
#include "sombrero/model.hpp"

namespace sombrero {

namespace {

constexpr double kIntegralRelTol = 1e-10;
constexpr double kTailFraction = 1e-18;
/// Stand-in for r = 0 when the whole axis is "outside" (r0 = 0).
constexpr double kOriginProbe = 1e-8;

/// Composite 20-point Gauss-Legendre, panel count doubled until two successive
/// estimates agree well inside the tolerance.
template <typename Batch>
double panel_integral(const Batch& integrand, double a, double b) {
  if (!(b > a)) return 0.0;
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  auto estimate = [&](int panels) {
    std::vector<double> nodes, weights;
    nodes.reserve(panels * 20);
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * width, half = 0.5 * width;
      for (std::size_t i = x.size(); i-- > 0;) {
        nodes.push_back(mid - half * x[i]);
        weights.push_back(half * w[i]);
      }
      for (std::size_t i = 0; i < x.size(); ++i) {
        nodes.push_back(mid + half * x[i]);
        weights.push_back(half * w[i]);
      }
    }
    const auto values = integrand(nodes);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * values[i];
    return sum;
  };
  int panels = std::max(2, static_cast<int>(std::ceil((b - a) / 0.5)));
  double prev = estimate(panels);
  for (int level = 0; level < 6; ++level) {
    panels *= 2;
    const double cur = estimate(panels);
    if (std::abs(cur - prev) <= 0.01 * kIntegralRelTol * std::abs(cur)) return cur;
    prev = cur;
  }
  throw SolverError(ErrorKind::QuadratureFailure,
                    "panel quadrature on [" + std::to_string(a) + ", " + std::to_string(b) + "] did not settle");
}

std::vector<double> squared_weighted(const std::vector<RadialValue>& v, const std::vector<double>& r, int power) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].value * v[i].value * std::pow(r[i], power);
  return out;
}

}  // namespace

RadialSolution::RadialSolution(SpectralPoint point, double c_in, double c_out, double q, double inner_integral,
                               double outer_integral, double r_far)
    : point_(point),
      c_in_(c_in),
      c_out_(c_out),
      q_(q),
      inner_integral_(inner_integral),
      outer_integral_(outer_integral),
      r_far_(r_far) {}

double RadialSolution::r_match() const { return point_.r0 > 0.0 ? matching_radius(point_.r0) : 0.0; }

RadialValue RadialSolution::operator()(double r) const {
  const auto& p = point_;
  if (p.r0 > 0.0 && r <= p.r0) {
    const auto b = eval_inner(p.eps, p.m, p.r0, r);
    return {c_in_ * b.value, c_in_ * b.derivative};
  }
  if (p.r0 > 0.0 && r <= r_match()) {
    const auto b = eval_bridge(p.eps, p.m, p.r0, r);
    return {c_in_ * b.value, c_in_ * b.derivative};
  }
  const auto b = eval_outer(p.eps, p.m, p.r0, std::max(r, kOriginProbe));
  return {c_out_ * b.value, c_out_ * b.derivative};
}

std::vector<RadialValue> RadialSolution::sample(std::span<const double> radii) const {
  const auto& p = point_;
  const auto sp = spectral_params(p.eps, p.m, p.r0);
  const int abs_m = std::abs(p.m);
  const double rm = r_match();

  std::vector<std::size_t> order(radii.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return radii[i] < radii[j]; });

  std::vector<double> inner_r, bridge_r, outer_r;
  std::vector<std::size_t> inner_i, bridge_i, outer_i;
  for (std::size_t i : order) {
    if (p.r0 > 0.0 && radii[i] <= p.r0) {
      inner_r.push_back(radii[i]);
      inner_i.push_back(i);
    } else if (p.r0 > 0.0 && radii[i] <= rm) {
      bridge_r.push_back(radii[i]);
      bridge_i.push_back(i);
    } else {
      outer_r.push_back(std::max(radii[i], kOriginProbe));
      outer_i.push_back(i);
    }
  }
  std::vector<RadialValue> out(radii.size());
  const InnerOde inner(sp.xi_in, abs_m);
  if (!inner_r.empty()) {
    const auto v = inner.sweep(inner_r);
    for (std::size_t k = 0; k < v.size(); ++k) out[inner_i[k]] = {c_in_ * v[k].value, c_in_ * v[k].derivative};
  }
  if (!bridge_r.empty()) {
    const auto v = OuterForward(sp.a, abs_m, p.r0, inner.at(p.r0)).sweep(bridge_r);
    for (std::size_t k = 0; k < v.size(); ++k) out[bridge_i[k]] = {c_in_ * v[k].value, c_in_ * v[k].derivative};
  }
  if (!outer_r.empty()) {
    const auto v = OuterOde(sp.a, abs_m).sweep(outer_r);
    for (std::size_t k = 0; k < v.size(); ++k) out[outer_i[k]] = {c_out_ * v[k].value, c_out_ * v[k].derivative};
  }
  return out;
}

RadialSolution normalize(const SpectralPoint& point) {
  if (!(point.residual <= kResidualBound)) {
    throw SolverError(ErrorKind::NotAnEigenvalue,
                      "normalize: residual " + std::to_string(point.residual) + " exceeds the root bound");
  }
  const double r0 = point.r0;
  const double rm = r0 > 0.0 ? matching_radius(r0) : 0.0;
  const auto sp = spectral_params(point.eps, point.m, r0);
  const int abs_m = std::abs(point.m);
  const InnerOde inner(sp.xi_in, abs_m);
  const OuterOde outer(sp.a, abs_m);

  auto inner_integrand = [&](const std::vector<double>& r) { return squared_weighted(inner.sweep(r), r, 1); };
  auto outer_integrand = [&](const std::vector<double>& r) { return squared_weighted(outer.sweep(r), r, 1); };

  // Extend the tail until the integrand has dropped below kTailFraction of its peak.
  const double r_start = r0 > 0.0 ? rm : kOriginProbe;
  double r_far = std::max(tail_cutoff(point.eps, r0), r_start + 8.0);
  for (int attempt = 0;; ++attempt) {
    std::vector<double> probe;
    for (int k = 0; k <= 400; ++k) probe.push_back(r_start + (r_far - r_start) * k / 400.0);
    const auto f = outer_integrand(probe);
    const double peak = *std::max_element(f.begin(), f.end());
    if (f.back() <= kTailFraction * peak) break;
    if (attempt == 20) throw SolverError(ErrorKind::QuadratureFailure, "normalize: tail does not decay");
    r_far += 2.0;
  }

  const double i_in = r0 > 0.0 ? panel_integral(inner_integrand, 0.0, r0) : 0.0;
  const double i_far = panel_integral(outer_integrand, r_start, r_far);
  double i_bridge = 0.0;
  if (r0 > 0.0 && rm > r0) {
    const OuterForward bridge(sp.a, abs_m, r0, inner.at(r0));
    auto bridge_integrand = [&](const std::vector<double>& r) { return squared_weighted(bridge.sweep(r), r, 1); };
    i_bridge = panel_integral(bridge_integrand, r0, rm);
  }

  double c_in = 0.0, c_out = 0.0, q = 0.0, i_out = i_far;
  if (r0 > 0.0) {
    const auto din = rm > r0 ? eval_bridge(point.eps, point.m, r0, rm) : eval_inner(point.eps, point.m, r0, r0);
    const auto dout = eval_outer(point.eps, point.m, r0, rm);
    // C_out / C_in from value continuity, or slope continuity when D_out is (nearly) a node there.
    const bool use_value = std::abs(dout.value) >= 1e-6 * std::abs(dout.derivative);
    const double ratio = use_value ? din.value / dout.value : din.derivative / dout.derivative;
    c_in = 1.0 / std::sqrt(i_in + i_bridge + ratio * ratio * i_far);
    c_out = ratio * c_in;
    // In the D_out normalization the region beyond r0 integrates to i_bridge / ratio^2 + i_far.
    i_out = i_bridge / (ratio * ratio) + i_far;
    const double din_r0 = eval_inner(point.eps, point.m, r0, r0).value;
    const double dout_r0 = din_r0 / ratio;
    q = std::sqrt(dout_r0 * dout_r0 * i_in + din_r0 * din_r0 * i_out);
  } else {
    c_out = 1.0 / std::sqrt(i_far);
    const double origin = outer.at(kOriginProbe).value;
    if (origin < 0.0) c_out = -c_out;
    c_in = std::abs(c_out);
    q = 1.0;
  }

  RadialSolution sol(point, c_in, c_out, q, i_in, i_out, r_far);
  if (r0 > 0.0) {
    const double jump = derivative_jump(sol);
    if (!(jump <= kDerivativeJumpTolerance)) {
      throw SolverError(ErrorKind::NotAnEigenvalue,
                        "normalize: derivative jump " + std::to_string(jump) + " at r=" + std::to_string(rm));
    }
  }
  return sol;
}

std::vector<double> density(const RadialSolution& sol, std::span<const double> radii) {
  for (double r : radii) {
    if (!(r >= 0.0)) throw SolverError(ErrorKind::InvalidArgument, "density: radii must be non-negative");
  }
  const auto v = sol.sample(radii);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = radii[i] * v[i].value * v[i].value;
  return out;
}

double p_inside(const RadialSolution& sol) { return sol.c_in() * sol.c_in() * sol.inner_integral(); }

int count_nodes(const RadialSolution& sol) {
  const auto& p = sol.point();
  if (p.r0 > 0.0) return count_state_nodes(p.eps, p.m, p.r0);
  std::vector<double> grid;
  for (double r = 0.02; r < sol.r_far(); r += 0.02) grid.push_back(r);
  const auto v = sol.sample(grid);
  int changes = 0, last = 0;
  for (const auto& x : v) {
    const int s = x.value > 0.0 ? 1 : (x.value < 0.0 ? -1 : 0);
    if (s != 0 && last != 0 && s != last) ++changes;
    if (s != 0) last = s;
  }
  return changes;
}

double grid_norm(const RadialSolution& sol, int intervals_per_region) {
  const int n = intervals_per_region + (intervals_per_region % 2);
  auto simpson = [&](double a, double b) {
    if (!(b > a)) return 0.0;
    std::vector<double> r(n + 1);
    for (int k = 0; k <= n; ++k) r[k] = a + (b - a) * k / n;
    const auto v = sol.sample(r);
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      sum += w * r[k] * v[k].value * v[k].value;
    }
    return sum * (b - a) / (3.0 * n);
  };
  const double r0 = sol.point().r0;
  const double rm = std::max(r0, sol.r_match());
  return simpson(0.0, r0) + simpson(r0, rm) + simpson(rm, sol.r_far());
}

double mean_radius(const RadialSolution& sol) {
  auto integrand = [&](const std::vector<double>& r) { return squared_weighted(sol.sample(r), r, 2); };
  const double r0 = sol.point().r0;
  const double rm = std::max(r0, sol.r_match());
  return panel_integral(integrand, 0.0, r0) + panel_integral(integrand, r0, rm) +
         panel_integral(integrand, rm, sol.r_far());
}

namespace {

std::vector<RadialValue> coarse_profile(const RadialSolution& sol) {
  std::vector<double> grid;
  const double step = std::min(0.05, std::max(sol.point().r0, 1e-3) / 20.0);
  for (double r = 0.0; r <= sol.r_far(); r += step) grid.push_back(r);
  return sol.sample(grid);
}

}  // namespace

namespace {

/// Inner-side and outer-side data at the matching radius, already scaled by C_in and C_out.
std::pair<RadialValue, RadialValue> seam(const RadialSolution& sol) {
  const auto& p = sol.point();
  const double rm = sol.r_match();
  const auto din = rm > p.r0 ? eval_bridge(p.eps, p.m, p.r0, rm) : eval_inner(p.eps, p.m, p.r0, p.r0);
  const auto dout = eval_outer(p.eps, p.m, p.r0, rm);
  return {{sol.c_in() * din.value, sol.c_in() * din.derivative},
          {sol.c_out() * dout.value, sol.c_out() * dout.derivative}};
}

}  // namespace

double derivative_jump(const RadialSolution& sol) {
  if (sol.point().r0 == 0.0) return 0.0;
  const auto [in, out] = seam(sol);
  double peak = std::max(std::abs(in.derivative), std::abs(out.derivative));
  for (const auto& v : coarse_profile(sol)) peak = std::max(peak, std::abs(v.derivative));
  return std::abs(in.derivative - out.derivative) / peak;
}

double value_jump(const RadialSolution& sol) {
  if (sol.point().r0 == 0.0) return 0.0;
  const auto [in, out] = seam(sol);
  double peak = std::max(std::abs(in.value), std::abs(out.value));
  for (const auto& v : coarse_profile(sol)) peak = std::max(peak, std::abs(v.value));
  return std::abs(in.value - out.value) / peak;
}

HellmannFeynman hf_check(int m, int n_r, double r0, double h) {
  if (!(h >= 1e-4 && h <= 1e-2)) throw SolverError(ErrorKind::InvalidArgument, "hf_check: h must lie in [1e-4, 1e-2]");
  if (!(r0 - h > 0.0)) throw SolverError(ErrorKind::InvalidArgument, "hf_check: need r0 - h > 0");
  const auto centre = find_levels(m, r0, n_r + 1).back();
  const auto plus = track_level(m, n_r, r0 + h, centre.eps);
  const auto minus = track_level(m, n_r, r0 - h, centre.eps);
  HellmannFeynman out;
  out.slope_fd = (plus.eps - minus.eps) / (2.0 * h);
  out.p_in = p_inside(normalize(centre));
  out.slope_hf = 0.5 * r0 * (2.0 * out.p_in - 1.0);
  out.residual = std::abs(out.slope_fd - out.slope_hf);
  return out;
}

double hf_residual(int m, int n_r, double r0, double h) { return hf_check(m, n_r, r0, h).residual; }

}  // namespace sombrero
