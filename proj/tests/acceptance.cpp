// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sombrero/error.hpp"
#include "sombrero/matching.hpp"
#include "sombrero/model.hpp"
#include "sombrero/validation.hpp"
#include "sombrero/wavefn.hpp"

using namespace sombrero;
using validation::Check;

namespace {

int failures = 0;

void report(const char* id, const char* title, bool ok, const std::string& detail) {
  std::printf("[%s] %s %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool all_passed(const std::vector<Check>& checks, std::string& detail) {
  bool ok = true;
  for (const auto& c : checks) {
    ok = ok && c.passed;
    if (!detail.empty()) detail += "; ";
    detail += c.name + " " + (c.passed ? "ok" : "FAILED") + " (" + c.detail + ")";
  }
  return ok;
}

const LevelCurve& curve_of(const std::vector<LevelCurve>& curves, int m, int n_r) {
  for (const auto& c : curves) {
    if (c.m == m && c.n_r == n_r) return c;
  }
  throw SolverError(ErrorKind::MissingCurves, "no curve for requested (m, n_r)");
}

// States whose normalization is audited under criterion 9.
std::vector<SpectralPoint> audited;

void audit(const SpectralPoint& p) { audited.push_back(p); }

// Fresh eps at r0 for one (m, n_r).
SpectralPoint level(int m, int n_r, double r0) { return find_levels(m, r0, n_r + 1).at(n_r); }

void c1() {
  std::string detail;
  const bool ok = all_passed(validation::circular_limit_checks(), detail);
  report("C1", "circular-oscillator limit", ok, detail);
}

void c2(const std::vector<LevelCurve>& curves) {
  bool ok = true;
  std::string detail;
  for (int m : {0, 1}) {
    for (int n_r : {0, 1}) {
      const auto& curve = curve_of(curves, m, n_r);
      // Graded on c_small (r0^2 coefficient of a least-squares fit that also carries the r0^4 term);
      // the straight-line slope through the origin is printed alongside.
      double sxy = 0.0, sxx = 0.0;
      for (const auto& s : curve.samples) {
        if (s.r0 > 0.5) continue;
        const double x = s.r0 * s.r0;
        sxy += x * (s.eps - oscillator_level(m, n_r));
        sxx += x * x;
      }
      const double slope = sxy / sxx;
      const double c_small = fit_asymptotics(curve).c_small;
      ok = ok && std::abs(c_small + 0.25) <= 0.05 * 0.25;
      detail += "(" + std::to_string(m) + "," + std::to_string(n_r) + ") c_small " + fmt(c_small) +
                " straight-line " + fmt(slope) + "; ";
    }
  }
  report("C2", "small-r0 law", ok, detail + "target -0.25 +/- 5%");
}

void c3() {
  const auto c = validation::oracle_equivalence_check();
  for (int m = 0; m <= 3; ++m) {
    for (double r0 : {1.0, 2.0, 4.0, 6.0}) {
      for (const auto& p : find_levels(m, r0, 4)) audit(p);
    }
  }
  report("C3", "oracle equivalence", c.passed, c.detail);
}

void c4(const std::vector<LevelCurve>& curves) {
  const auto hf = validation::hellmann_feynman_check();
  bool ok = hf.passed;
  std::string detail = hf.detail;
  for (const auto& [m, n_r, r0] : std::vector<std::tuple<int, int, double>>{
           {0, 0, 0.5}, {0, 0, 2.0}, {0, 0, 4.0}, {1, 0, 1.0}, {1, 0, 3.0}, {1, 1, 2.0},
           {1, 1, 5.0}, {2, 0, 1.5}, {2, 1, 3.0}, {3, 0, 2.0}, {0, 2, 3.0}, {0, 3, 5.0}}) {
    audit(level(m, n_r, r0));
  }

  int checked = 0;
  std::string bad;
  for (const auto& c : curves) {
    if (c.m > 3) continue;
    ++checked;
    // Sign changes of the sampled slope.
    int flips = 0;
    double flip_at = 0.0;
    for (std::size_t i = 1; i + 1 < c.samples.size(); ++i) {
      const double d0 = c.samples[i].eps - c.samples[i - 1].eps;
      const double d1 = c.samples[i + 1].eps - c.samples[i].eps;
      if ((d0 < 0.0) != (d1 < 0.0)) {
        ++flips;
        flip_at = c.samples[i].r0;
      }
    }
    const double r_c = capture_radius(c);
    const auto below = level(c.m, c.n_r, r_c - 0.05);
    const auto above = level(c.m, c.n_r, r_c + 0.05);
    audit(below);
    audit(above);
    // Sign of the Hellmann-Feynman slope is the sign of P_in - 1/2.
    const bool falling = p_inside(normalize(below)) < 0.5;
    const bool rising = p_inside(normalize(above)) > 0.5;
    const bool here = flips == 1 && std::abs(flip_at - r_c) <= 0.1 && falling && rising;
    if (!here) {
      bad += " (" + std::to_string(c.m) + "," + std::to_string(c.n_r) + ") flips " + std::to_string(flips) +
             " r_c " + fmt(r_c);
    }
  }
  ok = ok && bad.empty();
  detail += "; single slope flip at capture radius for " + std::to_string(checked) + " curves" +
            (bad.empty() ? "" : ", failing:" + bad);
  report("C4", "Hellmann-Feynman and slope sign", ok, detail);
}

void c5(const std::vector<LevelCurve>& curves) {
  const auto n5 = clusters(curves, ClusterKind::N, 5).curves.size();
  const auto n6 = clusters(curves, ClusterKind::N, 6).curves.size();
  bool ok = n5 == 3 && n6 == 4;
  std::string detail = "n=5 size " + std::to_string(n5) + ", n=6 size " + std::to_string(n6);

  int crossings = 0;
  for (int m = 0; m <= 6; ++m) {
    for (int n_r = 0; n_r < 3; ++n_r) {
      const auto& lo = curve_of(curves, m, n_r);
      const auto& hi = curve_of(curves, m, n_r + 1);
      std::map<double, double> lower;
      for (const auto& s : lo.samples) lower[s.r0] = s.eps;
      for (const auto& s : hi.samples) {
        if (s.r0 < 0.01 || s.r0 > 7.0) continue;
        const auto it = lower.find(s.r0);
        if (it != lower.end() && !(s.eps > it->second)) ++crossings;
      }
    }
  }
  ok = ok && crossings == 0;
  detail += ", crossings within m " + std::to_string(crossings);

  auto spread = [](double r0) {
    double lo = 1e300, hi = -1e300;
    for (int m = 0; m <= 4; ++m) {
      const double e = level(m, 0, r0).eps;
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    return hi - lo;
  };
  const double s4 = spread(4.0), s7 = spread(7.0);
  ok = ok && s7 < s4;
  detail += ", n_r=0 spread over m=0..4: " + fmt(s4) + " at r0=4, " + fmt(s7) + " at r0=7";
  report("C5", "cluster structure", ok, detail);
}

void c6(const std::vector<LevelCurve>& curves) {
  std::vector<LevelCurve> subset;
  for (const auto& c : curves) {
    if (c.m <= 3 && c.n_r <= 1) subset.push_back(c);
  }
  const auto rep = validation::asymptotic_report(subset, {{4.0, 6.0}, {6.0, 8.02}});
  for (const auto& c : rep.curves) {
    std::printf("  (m=%d, n_r=%d)", c.m, c.n_r);
    for (const auto& w : c.windows) {
      std::printf("  [%g,%g] A_fit %.4f exponent_fit %.4f", w.lo, w.hi, w.a_fit, w.exponent_fit);
    }
    std::printf("\n");
  }
  const auto trend = validation::spread_trend_check(rep);
  report("C6", "large-r0 degeneracy trend", trend.passed, trend.detail);
}

void c7() {
  const auto small = normalize(level(0, 3, 0.01));
  audit(small.point());
  std::vector<double> r;
  for (int i = 0; i <= 4000; ++i) r.push_back(small.r_far() * i / 4000.0);
  const auto d = density(small, r);
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < d.size(); ++i) {
    if (d[i] > d[i - 1] && d[i] >= d[i + 1]) ++maxima;
  }
  bool ok = maxima == 4;
  std::string detail = "maxima at r0=0.01: " + std::to_string(maxima);

  double prev = 1e300;
  for (double r0 : {4.0, 5.0, 6.0}) {
    const auto sol = normalize(level(0, 3, r0));
    audit(sol.point());
    const double gap = std::abs(mean_radius(sol) - r0);
    ok = ok && gap <= prev + 1e-2 * r0;
    prev = gap;
    detail += ", |<r> - r0| at " + fmt(r0) + ": " + fmt(gap);
  }
  // Where the gap starts shrinking, for the record.
  std::string trail;
  for (double r0 : {5.5, 6.5, 7.5}) {
    const auto sol = normalize(level(0, 3, r0));
    audit(sol.point());
    trail += " " + fmt(r0) + ": " + fmt(std::abs(mean_radius(sol) - r0)) + ",";
  }
  trail.pop_back();
  report("C7", "density reproduction", ok, detail + " (beyond:" + trail + ")");
}

void c8() {
  std::string detail;
  const bool ok = all_passed(validation::hyp_identity_checks(), detail);
  report("C8", "function-kernel identities", ok, detail);
}

void c9() {
  double worst_norm = 0.0, worst_jump = 0.0;
  std::string failing;
  for (const auto& p : audited) {
    try {
      const auto sol = normalize(p);
      worst_norm = std::max(worst_norm, std::abs(grid_norm(sol) - 1.0));
      worst_jump = std::max(worst_jump, value_jump(sol));
    } catch (const std::exception& e) {
      failing += " (" + std::to_string(p.m) + "," + std::to_string(p.n_r) + "," + fmt(p.r0) + "): " + e.what();
    }
  }
  const bool ok = failing.empty() && worst_norm <= 1e-8 && worst_jump <= 1e-10;
  report("C9", "normalization", ok,
         std::to_string(audited.size()) + " states, max |norm - 1| " + fmt(worst_norm) + ", max continuity " +
             fmt(worst_jump) + failing);
}

template <typename F>
void guarded(const char* id, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    f();
  } catch (const std::exception& e) {
    report(id, "aborted", false, e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("  %s took %.1f s\n", id, s);
}

}  // namespace

int main() {
  std::vector<LevelCurve> curves;
  guarded("scan", [&] {
    std::vector<int> ms{0, 1, 2, 3, 4, 5, 6};
    const auto grid = validation::extended_r0_grid();
    curves = scan_levels_many(ms, 3, grid, thread_budget());
  });

  guarded("C1", c1);
  guarded("C2", [&] { c2(curves); });
  guarded("C3", c3);
  guarded("C4", [&] { c4(curves); });
  guarded("C5", [&] { c5(curves); });
  guarded("C6", [&] { c6(curves); });
  guarded("C7", c7);
  guarded("C8", c8);
  guarded("C9", c9);

  std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria failed");
  return failures == 0 ? 0 : 1;
}
