#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "sombrero/error.hpp"
#include "sombrero/matching.hpp"
#include "sombrero/model.hpp"

namespace sombrero {

// ---------------------------------------------------------------- clusters

Cluster clusters(std::span<const LevelCurve> curves, ClusterKind kind, int label) {
  auto find = [&](int abs_m, int n_r) -> const LevelCurve* {
    for (const auto& c : curves) {
      if (std::abs(c.m) == abs_m && c.n_r == n_r && c.m >= 0) return &c;
    }
    for (const auto& c : curves) {
      if (std::abs(c.m) == abs_m && c.n_r == n_r) return &c;
    }
    return nullptr;
  };

  Cluster out{kind, label, {}};
  switch (kind) {
    case ClusterKind::N: {
      if (label < 0) throw SolverError(ErrorKind::InvalidArgument, "n-cluster label must be non-negative");
      for (int n_r = 0; 2 * n_r <= label; ++n_r) {
        const auto* c = find(label - 2 * n_r, n_r);
        if (c == nullptr) {
          throw SolverError(ErrorKind::MissingCurves, "n-cluster " + std::to_string(label) + " lacks (n_r=" +
                                                          std::to_string(n_r) + ", |m|=" +
                                                          std::to_string(label - 2 * n_r) + ")");
        }
        out.curves.push_back(*c);
      }
      break;
    }
    case ClusterKind::AbsM:
    case ClusterKind::NR: {
      // Contiguous prefix of the infinite family, starting at 0.
      for (int k = 0;; ++k) {
        const auto* c = kind == ClusterKind::AbsM ? find(label, k) : find(k, label);
        if (c == nullptr) break;
        out.curves.push_back(*c);
      }
      if (out.curves.empty()) {
        throw SolverError(ErrorKind::MissingCurves, std::string(kind == ClusterKind::AbsM ? "|m|" : "n_r") +
                                                        "-cluster " + std::to_string(label) + " has no curves");
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------- curve analysis

double capture_radius(const LevelCurve& curve) {
  const auto& s = curve.samples;
  if (s.size() < 3) throw SolverError(ErrorKind::NoCapture, "capture_radius: fewer than three samples");
  const auto it = std::min_element(s.begin(), s.end(), [](auto& a, auto& b) { return a.eps < b.eps; });
  const std::size_t i = static_cast<std::size_t>(it - s.begin());
  if (i == 0 || i + 1 == s.size()) {
    throw SolverError(ErrorKind::NoCapture, "capture_radius: eps is monotone over the sampled range");
  }
  const double x0 = s[i - 1].r0, x1 = s[i].r0, x2 = s[i + 1].r0;
  const double y0 = s[i - 1].eps, y1 = s[i].eps, y2 = s[i + 1].eps;
  const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
  const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
  if (den == 0.0) return x1;
  return x1 - 0.5 * num / den;
}

AsymptoticFit fit_asymptotics(const LevelCurve& curve, const FitWindow& window) {
  const double base = oscillator_level(curve.m, curve.n_r);
  // Small r0: eps - base = c x + d x^2 with x = r0^2.
  double sxx = 0, sxxx = 0, sxxxx = 0, sxy = 0, sxxy = 0;
  int n_small = 0;
  // Large r0.
  double s_rr = 0, s_ry = 0;
  double sl = 0, sly = 0, sll = 0, sy = 0;
  int n_large = 0;
  for (const auto& p : curve.samples) {
    if (p.r0 > 0.0 && p.r0 <= window.small_max) {
      const double x = p.r0 * p.r0, y = p.eps - base;
      sxx += x * x;
      sxxx += x * x * x;
      sxxxx += x * x * x * x;
      sxy += x * y;
      sxxy += x * x * y;
      ++n_small;
    }
    if (p.r0 >= window.large_min && p.r0 <= window.large_max) {
      s_rr += p.r0 * p.r0;
      s_ry += p.r0 * (0.25 * p.r0 * p.r0 - p.eps);
      const double l = std::log(p.r0), ly = std::log(p.eps);
      sl += l;
      sll += l * l;
      sly += l * ly;
      sy += ly;
      ++n_large;
    }
  }
  if (n_small < 3 || n_large < 3) {
    throw SolverError(ErrorKind::InsufficientRange, "fit_asymptotics: need >= 3 samples in both windows (have " +
                                                        std::to_string(n_small) + ", " + std::to_string(n_large) +
                                                        ")");
  }
  AsymptoticFit fit;
  const double det = sxx * sxxxx - sxxx * sxxx;
  fit.c_small = (sxy * sxxxx - sxxy * sxxx) / det;
  fit.a_fit = s_ry / s_rr;
  fit.exponent_fit = (n_large * sly - sl * sy) / (n_large * sll - sl * sl);
  return fit;
}

}  // namespace sombrero
