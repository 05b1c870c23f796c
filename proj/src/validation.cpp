#include "sombrero/validation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <sstream>

#include "sombrero/error.hpp"
#include "sombrero/hyp.hpp"
#include "sombrero/model.hpp"
#include "sombrero/oracle.hpp"
#include "sombrero/report.hpp"
#include "sombrero/wavefn.hpp"

namespace sombrero::validation {

namespace {

using hyp::Complex;

std::string fmt(double x) { return format_real(x); }

Check make_check(std::string name, bool passed, std::string detail) {
  return Check{std::move(name), passed, std::move(detail)};
}

}  // namespace

HypSweep hyp_sweep(std::uint64_t seed, int points) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_m(0, 4);
  std::uniform_real_distribution<double> pick_r0(0.2, 3.5);
  std::uniform_real_distribution<double> pick_eps(0.3, 10.0);
  std::uniform_real_distribution<double> pick_a(0.05, 3.0);
  std::uniform_real_distribution<double> pick_a_low(0.05, 1.0);
  std::uniform_real_distribution<double> pick_z(0.5, 12.0);

  HypSweep out;
  const Complex i1{0.0, 1.0};
  for (int p = 0; p < points; ++p) {
    // Kummer side at sombrero parameters.
    const int m = pick_m(rng);
    const double r0 = pick_r0(rng);
    const double eps = pick_eps(rng);
    const SpectralParams sp = spectral_params(eps, m, r0);
    const double g = sp.gamma;
    const Complex alpha = sp.alpha;
    const double z0 = 0.5 * r0 * r0;
    const Complex z = i1 * z0;

    const Complex f = hyp::kummer_m(alpha, g, z).value;
    const Complex f_t = std::exp(z) * hyp::kummer_m(g - alpha, g, -z).value;
    out.kummer_transform = std::max(out.kummer_transform, std::abs(f - f_t) / std::abs(f));

    const Complex t1 = (alpha - g) * hyp::kummer_m(alpha, g + 1.0, z).value;
    const Complex t2 = g * f;
    const Complex t3 = alpha * hyp::kummer_m(alpha + 1.0, g + 1.0, z).value;
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
    out.recurrence = std::max(out.recurrence, std::abs(t1 + t2 - t3) / scale);

    const Complex real_form = std::exp(-0.5 * z) * f;
    out.realness = std::max(out.realness, std::abs(real_form.imag()) / std::abs(real_form));

    constexpr double h = 1e-5;
    const Complex fd = (hyp::kummer_m(alpha, g, z + h).value - hyp::kummer_m(alpha, g, z - h).value) / (2.0 * h);
    const Complex fp = hyp::kummer_m_prime(alpha, g, z).value;
    out.kummer_derivative = std::max(out.kummer_derivative, std::abs(fd - fp) / (std::abs(f) + std::abs(fp)));

    // Tricomi side.
    const double a = pick_a(rng);
    const double zu = pick_z(rng);
    const double u = hyp::tricomi_u(a, g, zu).value;
    const double ud = (hyp::tricomi_u(a, g, zu + h).value - hyp::tricomi_u(a, g, zu - h).value) / (2.0 * h);
    const double up = hyp::tricomi_u_prime(a, g, zu).value;
    out.tricomi_derivative = std::max(out.tricomi_derivative, std::abs(ud - up) / (std::abs(u) + std::abs(up)));

    const double ap = pick_a(rng);
    const double zp = pick_z(rng);
    const double power = hyp::tricomi_u(ap, ap + 1.0, zp).value * std::pow(zp, ap);
    out.tricomi_power = std::max(out.tricomi_power, std::abs(power - 1.0));

    const double al = pick_a_low(rng);
    const double zl = pick_z(rng);
    const double q = hyp::tricomi_u(al, g, zl, hyp::TricomiPath::Quadrature).value;
    const double r = hyp::tricomi_u(al, g, zl, hyp::TricomiPath::Recurrence).value;
    out.path_overlap = std::max(out.path_overlap, std::abs(q - r) / std::abs(q));
  }
  for (double a : {0.5, 1.0, 2.0}) {
    for (double z : {0.5, 2.0, 10.0}) {
      const double power = hyp::tricomi_u(a, a + 1.0, z).value * std::pow(z, a);
      out.tricomi_power = std::max(out.tricomi_power, std::abs(power - 1.0));
    }
  }
  out.points = points;
  return out;
}

std::vector<Check> hyp_identity_checks(std::uint64_t seed, int points) {
  const HypSweep s = hyp_sweep(seed, points);
  const std::string suffix = " over " + std::to_string(s.points) + " points";
  return {
      make_check("hyp.kummer_transform", s.kummer_transform <= 1e-12, "max rel " + fmt(s.kummer_transform) + suffix),
      make_check("hyp.recurrence", s.recurrence <= 1e-12, "max rel " + fmt(s.recurrence) + suffix),
      make_check("hyp.realness", s.realness <= 1e-10, "max |imag|/|value| " + fmt(s.realness) + suffix),
      make_check("hyp.kummer_derivative", s.kummer_derivative <= 1e-9,
                 "max rel " + fmt(s.kummer_derivative) + suffix),
      make_check("hyp.tricomi_derivative", s.tricomi_derivative <= 1e-8,
                 "max rel " + fmt(s.tricomi_derivative) + suffix),
      make_check("hyp.tricomi_power", s.tricomi_power <= 1e-13, "max rel " + fmt(s.tricomi_power) + suffix),
      make_check("hyp.path_overlap", s.path_overlap <= 1e-10, "max rel " + fmt(s.path_overlap) + suffix),
  };
}

std::vector<Check> circular_limit_checks() {
  constexpr double r0 = 1e-3;
  double worst = 0.0;
  for (int m = 0; m <= 3; ++m) {
    for (const SpectralPoint& p : find_levels(m, r0, 5)) {
      worst = std::max(worst, std::abs(p.eps - oscillator_level(m, p.n_r)));
    }
  }

  // Degeneracy of eps = n + 1 over all (n_r, m), n <= 5.
  std::map<int, int> degeneracy;
  for (int m = -5; m <= 5; ++m) {
    for (const SpectralPoint& p : find_levels(m, r0, 3)) {
      const double n = p.eps - 1.0;
      const long nearest = std::lround(n);
      if (nearest <= 5 && std::abs(n - nearest) <= 1e-5) ++degeneracy[static_cast<int>(nearest)];
    }
  }
  bool degeneracy_ok = true;
  std::ostringstream deg;
  for (int n = 0; n <= 5; ++n) {
    degeneracy_ok = degeneracy_ok && degeneracy[n] == n + 1;
    deg << (n ? " " : "") << "g" << n << "=" << degeneracy[n];
  }
  return {
      make_check("limit.circular_oscillator", worst <= 1e-5, "max |eps - (2n_r+|m|+1)| " + fmt(worst)),
      make_check("limit.degeneracy", degeneracy_ok, deg.str()),
  };
}

Check oracle_equivalence_check(double perturb) {
  double worst = 0.0;
  int comparisons = 0;
  bool first = true;
  std::string where;
  for (int m = 0; m <= 3; ++m) {
    for (double r0 : {1.0, 2.0, 4.0, 6.0}) {
      const auto levels = find_levels(m, r0, 4);
      const auto oracle = oracle_levels(m, r0, 4);
      for (int k = 0; k < 4; ++k) {
        double eps = levels[k].eps;
        if (first) {
          eps += perturb;
          first = false;
        }
        const double diff = std::abs(eps - oracle[k]);
        if (diff > worst) {
          worst = diff;
          where = "m=" + std::to_string(m) + " r0=" + fmt(r0) + " n_r=" + std::to_string(k);
        }
        ++comparisons;
      }
    }
  }
  return make_check("oracle.equivalence", worst <= 5e-4,
                    std::to_string(comparisons) + " comparisons, max diff " + fmt(worst) + " at " + where);
}

Check hellmann_feynman_check() {
  struct Probe {
    int m, n_r;
    double r0;
  };
  static constexpr Probe probes[] = {{0, 0, 0.5}, {0, 0, 2.0}, {0, 0, 4.0}, {1, 0, 1.0}, {1, 0, 3.0}, {1, 1, 2.0},
                                     {1, 1, 5.0}, {2, 0, 1.5}, {2, 1, 3.0}, {3, 0, 2.0}, {0, 2, 3.0}, {0, 3, 5.0}};
  double worst = 0.0;
  bool ok = true;
  for (const Probe& p : probes) {
    const HellmannFeynman hf = hf_check(p.m, p.n_r, p.r0);
    const double tol = 1e-3 * std::max(1.0, std::abs(hf.slope_fd));
    ok = ok && hf.residual <= tol;
    worst = std::max(worst, hf.residual / tol);
  }
  return make_check("wavefn.hellmann_feynman", ok, "12 points, max residual/tolerance " + fmt(worst));
}

Check normalization_check() {
  std::vector<SpectralPoint> points;
  for (int m = 0; m <= 3; ++m) {
    for (const SpectralPoint& p : find_levels(m, 4.0, 4)) points.push_back(p);
  }
  for (double r0 : {0.05, 5.0, 6.0}) points.push_back(find_levels(0, r0, 4).back());

  double worst_norm = 0.0, worst_jump = 0.0;
  for (const SpectralPoint& p : points) {
    const RadialSolution sol = normalize(p);
    worst_norm = std::max(worst_norm, std::abs(grid_norm(sol) - 1.0));
    worst_jump = std::max(worst_jump, value_jump(sol));
  }
  return make_check("wavefn.normalization", worst_norm <= 1e-8 && worst_jump <= 1e-10,
                    std::to_string(points.size()) + " states, max |norm - 1| " + fmt(worst_norm) +
                        ", max continuity " + fmt(worst_jump));
}

std::vector<double> extended_r0_grid() {
  std::vector<double> grid = default_r0_grid();
  for (int k = 101; k <= 117; ++k) grid.push_back(1.0 + 0.06 * k);
  return grid;
}

AsymptoticReport asymptotic_report(std::span<const LevelCurve> curves,
                                   const std::vector<std::pair<double, double>>& windows) {
  AsymptoticReport report;
  std::map<std::pair<int, std::size_t>, std::vector<double>> by_nr;
  for (const LevelCurve& c : curves) {
    CurveAsymptotics row;
    row.m = c.m;
    row.n_r = c.n_r;
    for (std::size_t w = 0; w < windows.size(); ++w) {
      FitWindow fw;
      fw.large_min = windows[w].first;
      fw.large_max = windows[w].second;
      const AsymptoticFit fit = fit_asymptotics(c, fw);
      row.c_small = fit.c_small;
      row.windows.push_back({fw.large_min, fw.large_max, fit.a_fit, fit.exponent_fit});
      by_nr[{c.n_r, w}].push_back(fit.a_fit);
    }
    report.curves.push_back(std::move(row));
  }
  for (const auto& [key, values] : by_nr) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    report.spreads.push_back({key.first, windows[key.second].first, windows[key.second].second,
                              (*hi - *lo) / std::abs(mean)});
  }
  return report;
}

Check spread_trend_check(const AsymptoticReport& report) {
  std::map<int, std::vector<double>> per_nr;
  for (const SpreadRow& s : report.spreads) per_nr[s.n_r].push_back(s.relative_spread);
  bool ok = !per_nr.empty();
  std::ostringstream detail;
  for (const auto& [n_r, spreads] : per_nr) {
    const bool shrinks = spreads.size() >= 2 && spreads.back() < spreads.front();
    ok = ok && shrinks;
    detail << "n_r=" << n_r << ": " << fmt(spreads.front()) << " -> " << fmt(spreads.back()) << "; ";
  }
  std::string text = detail.str();
  if (text.size() >= 2) text.resize(text.size() - 2);
  return make_check("asym.a_spread_trend", ok, text);
}

}  // namespace sombrero::validation
