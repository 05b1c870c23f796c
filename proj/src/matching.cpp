#include "sombrero/matching.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <complex>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "sombrero/error.hpp"
#include "sombrero/hyp.hpp"
#include "sombrero/model.hpp"
#include "sombrero/radial_ode.hpp"

namespace sombrero {

namespace {

using Complex = std::complex<double>;

/// Series attempts are skipped outright beyond this z = r^2/2; the monitor would refuse them anyway.
constexpr double kInnerSeriesMaxZ = 30.0;

struct ComplexBoundary {
  Complex value;
  Complex derivative;
  double surviving_digits;
};

ComplexBoundary inner_series_complex(const SpectralParams& sp, double r) {
  const int m = sp.gamma - 1;
  const double z = 0.5 * r * r;
  const Complex iz{0.0, z};
  const auto f = hyp::kummer_m(sp.alpha, sp.gamma, iz);
  const auto fp = hyp::kummer_m_prime(sp.alpha, sp.gamma, iz);
  const Complex phase = std::exp(Complex{0.0, -0.5 * z});
  const double rm = std::pow(r, m);
  ComplexBoundary out;
  out.value = rm * phase * f.value;
  // d/dr [r^m e^{-i r^2/4} M(i r^2/2)] = r^m e^{-i r^2/4} [(m/r - i r/2) M + i r M']
  if (r == 0.0) {
    out.derivative = m == 1 ? 1.0 : 0.0;
  } else {
    out.derivative = rm * phase * ((m / r - Complex{0.0, 0.5 * r}) * f.value + Complex{0.0, r} * fp.value);
  }
  out.surviving_digits = std::min(f.surviving_digits(), fp.surviving_digits());
  return out;
}

BoundaryValues from_ode(RadialValue v) { return {v.value, v.derivative, 0.0, EvalPath::Ode}; }

double imag_ratio(Complex v) {
  const double re = std::abs(v.real());
  return re == 0.0 ? std::abs(v.imag()) : std::abs(v.imag()) / re;
}

void require_finite(const BoundaryValues& b, const char* what) {
  if (!std::isfinite(b.value) || !std::isfinite(b.derivative)) {
    throw SolverError(ErrorKind::EvaluatorFailure, std::string(what) + " produced a non-finite value");
  }
}

}  // namespace

// ---------------------------------------------------------------- evaluators

BoundaryValues eval_inner_series(double eps, int m, double r0, double r) {
  const auto sp = spectral_params(eps, m, r0);
  const auto c = inner_series_complex(sp, r);
  BoundaryValues out{c.value.real(), c.derivative.real(), imag_ratio(c.value), EvalPath::Series};
  require_finite(out, "inner series");
  return out;
}

BoundaryValues eval_inner_ode(double eps, int m, double r0, double r) {
  const auto sp = spectral_params(eps, m, r0);
  auto out = from_ode(InnerOde(sp.xi_in, std::abs(m)).at(r));
  require_finite(out, "inner ODE");
  return out;
}

BoundaryValues eval_inner(double eps, int m, double r0, double r) {
  if (!(r >= 0.0)) throw SolverError(ErrorKind::InvalidArgument, "eval_inner: r must be non-negative");
  if (0.5 * r * r <= kInnerSeriesMaxZ) {
    try {
      const auto sp = spectral_params(eps, m, r0);
      const auto c = inner_series_complex(sp, r);
      if (c.surviving_digits >= kInnerSeriesMinDigits) {
        BoundaryValues out{c.value.real(), c.derivative.real(), imag_ratio(c.value), EvalPath::Series};
        if (std::isfinite(out.value) && std::isfinite(out.derivative)) return out;
      }
    } catch (const SolverError&) {
      // fall through to the ODE path
    }
  }
  try {
    return eval_inner_ode(eps, m, r0, r);
  } catch (const SolverError& e) {
    throw SolverError(ErrorKind::EvaluatorFailure, std::string("eval_inner: both paths failed: ") + e.what());
  }
}

BoundaryValues eval_outer_tricomi(double eps, int m, double r0, double r) {
  if (!(r >= r0) || !(r > 0.0)) throw SolverError(ErrorKind::InvalidArgument, "eval_outer: need r >= r0 > 0");
  const auto sp = spectral_params(eps, m, r0);
  const int abs_m = sp.gamma - 1;
  const double z = 0.5 * r * r;
  const auto u = hyp::tricomi_u(sp.a, sp.gamma, z);
  const auto up = hyp::tricomi_u_prime(sp.a, sp.gamma, z);
  const double g = std::pow(r, abs_m) * std::exp(-0.5 * z);
  BoundaryValues out{g * u.value, g * ((abs_m / r - 0.5 * r) * u.value + r * up.value), 0.0, EvalPath::Series};
  require_finite(out, "outer Tricomi");
  return out;
}

BoundaryValues eval_outer_ode(double eps, int m, double r0, double r) {
  if (!(r >= r0) || !(r > 0.0)) throw SolverError(ErrorKind::InvalidArgument, "eval_outer: need r >= r0 > 0");
  const auto sp = spectral_params(eps, m, r0);
  auto out = from_ode(OuterOde(sp.a, std::abs(m)).at(r));
  require_finite(out, "outer ODE");
  return out;
}

BoundaryValues eval_outer(double eps, int m, double r0, double r) {
  try {
    return eval_outer_tricomi(eps, m, r0, r);
  } catch (const SolverError& e) {
    if (e.kind() == ErrorKind::InvalidArgument) throw;
  }
  try {
    return eval_outer_ode(eps, m, r0, r);
  } catch (const SolverError& e) {
    throw SolverError(ErrorKind::EvaluatorFailure, std::string("eval_outer: both paths failed: ") + e.what());
  }
}

double matching_radius(double r0) { return std::max(r0, kMatchFloor); }

BoundaryValues eval_bridge(double eps, int m, double r0, double r) {
  if (!(r >= r0) || !(r0 > 0.0)) throw SolverError(ErrorKind::InvalidArgument, "eval_bridge: need r >= r0 > 0");
  const BoundaryValues start = eval_inner(eps, m, r0, r0);
  if (r == r0) return start;
  const auto sp = spectral_params(eps, m, r0);
  try {
    const RadialValue v = OuterForward(sp.a, std::abs(m), r0, {start.value, start.derivative}).at(r);
    BoundaryValues out{v.value, v.derivative, start.imag_residue, start.path};
    require_finite(out, "inner continuation");
    return out;
  } catch (const SolverError& e) {
    throw SolverError(ErrorKind::EvaluatorFailure, std::string("eval_bridge: ") + e.what());
  }
}

// ---------------------------------------------------------------- mismatch

MismatchDetail mismatch_detail(double eps, int m, double r0) {
  if (!(r0 > 0.0)) throw SolverError(ErrorKind::InvalidArgument, "mismatch: r0 must be positive");
  const double rm = matching_radius(r0);
  MismatchDetail d;
  d.inner = rm == r0 ? eval_inner(eps, m, r0, r0) : eval_bridge(eps, m, r0, rm);
  d.outer = eval_outer(eps, m, r0, rm);
  const double scale = (std::abs(d.inner.value) + std::abs(d.inner.derivative)) *
                       (std::abs(d.outer.value) + std::abs(d.outer.derivative));
  if (!(scale > 0.0)) {
    throw SolverError(ErrorKind::EvaluatorFailure, "mismatch: vanishing boundary data at the matching radius");
  }
  d.value = (d.inner.value * d.outer.derivative - d.inner.derivative * d.outer.value) / scale;
  if (rm != r0) {
    // The continuation is linear, so the relative contamination at r0 carries over.
    d.imag_residue = d.inner.imag_residue;
  } else if (d.inner.path == EvalPath::Series) {
    // Imaginary parts carried by the complex inner form, propagated through W.
    const double im_v = d.inner.imag_residue * std::abs(d.inner.value);
    const auto sp = spectral_params(eps, m, r0);
    const auto c = inner_series_complex(sp, r0);
    const double im_d = std::abs(c.derivative.imag());
    d.imag_residue = (std::abs(im_v * d.outer.derivative) + std::abs(im_d * d.outer.value)) / scale;
  }
  return d;
}

double mismatch(double eps, int m, double r0) { return mismatch_detail(eps, m, r0).value; }

// ---------------------------------------------------------------- nodes

double tail_cutoff(double eps, double r0) { return r0 + std::max(8.0, 4.0 * std::sqrt(std::max(eps, 1.0))); }

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

/// Sign changes of f over a grid; each change is confirmed on an 8-way subdivision.
template <typename Sampler>
int count_sign_changes(const std::vector<double>& grid, const Sampler& sample) {
  const auto values = sample(grid);
  int count = 0;
  int last_sign = 0;
  double last_r = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const int s = sign_of(values[i]);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      std::vector<double> sub(9);
      for (int k = 0; k <= 8; ++k) sub[k] = last_r + (grid[i] - last_r) * k / 8.0;
      const auto sv = sample(sub);
      int changes = 0, prev = sign_of(sv[0]);
      for (int k = 1; k <= 8; ++k) {
        const int sk = sign_of(sv[k]);
        if (sk != 0 && prev != 0 && sk != prev) ++changes;
        if (sk != 0) prev = sk;
      }
      if (changes != 1) {
        throw SolverError(ErrorKind::GridTooCoarse,
                          "node scan found " + std::to_string(changes) + " sign changes within one step near r=" +
                              std::to_string(grid[i]));
      }
      ++count;
    }
    last_sign = s;
    last_r = grid[i];
  }
  return count;
}

}  // namespace

int count_state_nodes(double eps, int m, double r0) {
  const auto sp = spectral_params(eps, m, r0);
  const int abs_m = std::abs(m);
  const double rm = matching_radius(r0);
  const double inner_step = std::min(0.02, r0 / 50.0);
  std::vector<double> inner_grid;
  for (double r = inner_step; r < r0; r += inner_step) inner_grid.push_back(r);
  inner_grid.push_back(r0);
  if (rm > r0) {
    const int n_bridge = static_cast<int>(std::ceil((rm - r0) / 0.02));
    for (int k = 1; k <= n_bridge; ++k) inner_grid.push_back(r0 + (rm - r0) * k / n_bridge);
  }
  const InnerOde inner(sp.xi_in, abs_m);
  const OuterForward bridge(sp.a, abs_m, r0, inner.at(r0));
  // Inner solution on [0, r0], its continuation on (r0, rm].
  auto inner_sample = [&](const std::vector<double>& rs) {
    std::vector<double> below, above;
    for (double r : rs) (r <= r0 ? below : above).push_back(r);
    const auto v = inner.sweep(below);
    const auto w = bridge.sweep(above);
    std::vector<double> out;
    out.reserve(rs.size());
    for (const auto& x : v) out.push_back(x.value);
    for (const auto& x : w) out.push_back(x.value);
    return out;
  };

  const double r_far = tail_cutoff(eps, r0);
  std::vector<double> outer_grid;
  const int n_out = static_cast<int>(std::ceil((r_far - rm) / 0.02));
  for (int k = 0; k <= n_out; ++k) outer_grid.push_back(rm + (r_far - rm) * k / n_out);
  const OuterOde outer(sp.a, abs_m);
  auto outer_sample = [&](const std::vector<double>& rs) {
    const auto v = outer.sweep(rs);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].value;
    return out;
  };

  return count_sign_changes(inner_grid, inner_sample) + count_sign_changes(outer_grid, outer_sample);
}

// ---------------------------------------------------------------- roots

namespace {

struct Bracket {
  double lo, hi, f_lo, f_hi;
};

/// Bisection to kRootTolerance, then up to three secant steps kept inside the bracket.
double refine_root(int m, double r0, Bracket b) {
  while (b.hi - b.lo > kRootTolerance) {
    const double mid = 0.5 * (b.lo + b.hi);
    const double f_mid = mismatch(mid, m, r0);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (b.f_lo < 0.0)) {
      b.lo = mid;
      b.f_lo = f_mid;
    } else {
      b.hi = mid;
      b.f_hi = f_mid;
    }
  }
  double x = 0.5 * (b.lo + b.hi);
  for (int i = 0; i < 3; ++i) {
    if (b.f_hi == b.f_lo) break;
    const double s = b.hi - b.f_hi * (b.hi - b.lo) / (b.f_hi - b.f_lo);
    if (!(s > b.lo && s < b.hi)) break;
    x = s;
    const double f = mismatch(s, m, r0);
    if (f == 0.0) break;
    if ((f < 0.0) == (b.f_lo < 0.0)) {
      b.lo = s;
      b.f_lo = f;
    } else {
      b.hi = s;
      b.f_hi = f;
    }
  }
  return x;
}

/// All roots of W in [lo, hi] found on a uniform eps scan, stopping after max_roots.
std::vector<double> roots_in_window(int m, double r0, double lo, double hi, double step, int max_roots) {
  std::vector<double> roots;
  double x_prev = lo;
  double f_prev = mismatch(lo, m, r0);
  if (f_prev == 0.0) roots.push_back(lo);
  const int n = static_cast<int>(std::ceil((hi - lo) / step));
  for (int k = 1; k <= n && static_cast<int>(roots.size()) < max_roots; ++k) {
    const double x = std::min(hi, lo + k * step);
    const double f = mismatch(x, m, r0);
    if (f == 0.0) {
      roots.push_back(x);
    } else if (f_prev != 0.0 && (f < 0.0) != (f_prev < 0.0)) {
      roots.push_back(refine_root(m, r0, {x_prev, x, f_prev, f}));
    }
    x_prev = x;
    f_prev = f;
  }
  return roots;
}

SpectralPoint make_point(int m, double r0, int n_r, double eps) {
  const auto d = mismatch_detail(eps, m, r0);
  if (!(std::abs(d.inner.value) + std::abs(d.outer.value) > 0.0)) {
    throw SolverError(ErrorKind::EvaluatorFailure, "accepted root has vanishing boundary values");
  }
  return {r0, m, n_r, eps, std::abs(d.value)};
}

}  // namespace

std::vector<SpectralPoint> special_case_r0_zero(int m, int count) {
  std::vector<SpectralPoint> out;
  for (int k = 0; k < count; ++k) out.push_back({0.0, m, k, oscillator_level(m, k), 0.0});
  return out;
}

std::vector<SpectralPoint> find_levels(int m, double r0, int count) {
  if (count < 1 || count > kMaxLevelCount) {
    throw SolverError(ErrorKind::InvalidArgument, "find_levels: count must be in 1..64");
  }
  if (!(r0 >= 0.0)) throw SolverError(ErrorKind::InvalidArgument, "find_levels: r0 must be non-negative");
  if (r0 == 0.0) return special_case_r0_zero(m, count);

  const double eps_max = 0.25 * r0 * r0 + 4.0 * count + 20.0;
  double step = kScanStep;
  for (int attempt = 0; attempt < 5; ++attempt, step *= 0.5) {
    const auto roots = roots_in_window(m, r0, 0.0, eps_max, step, count);
    if (static_cast<int>(roots.size()) < count) {
      throw SolverError(ErrorKind::ScanExhausted, "find_levels: only " + std::to_string(roots.size()) +
                                                       " roots below eps_max=" + std::to_string(eps_max));
    }
    bool labels_ok = true;
    for (int k = 0; k < count && labels_ok; ++k) labels_ok = count_state_nodes(roots[k], m, r0) == k;
    if (!labels_ok) continue;  // a bracket hid two roots; rescan finer
    std::vector<SpectralPoint> out;
    for (int k = 0; k < count; ++k) out.push_back(make_point(m, r0, k, roots[k]));
    return out;
  }
  throw SolverError(ErrorKind::ScanExhausted, "find_levels: node labels disagree with level order after refinement");
}

SpectralPoint track_level(int m, int n_r, double r0, double eps_hint) {
  if (r0 == 0.0) return special_case_r0_zero(m, n_r + 1).back();
  double half = kContinuationWindow;
  for (int attempt = 0; attempt < 3; ++attempt, half *= 2.0) {
    const double lo = std::max(0.0, eps_hint - half);
    const auto roots = roots_in_window(m, r0, lo, eps_hint + half, kScanStep, kMaxLevelCount);
    // Try roots nearest the hint first.
    std::vector<double> ordered = roots;
    std::sort(ordered.begin(), ordered.end(),
              [&](double x, double y) { return std::abs(x - eps_hint) < std::abs(y - eps_hint); });
    for (double eps : ordered) {
      if (count_state_nodes(eps, m, r0) == n_r) return make_point(m, r0, n_r, eps);
    }
  }
  return find_levels(m, r0, n_r + 1).back();
}

// ---------------------------------------------------------------- continuation

namespace {

/// Levels n_r = 0..nr_max at r0, warm-started from the previous sample when available.
std::vector<double> levels_at(int m, int nr_max, double r0, const std::vector<double>* previous) {
  const int count = nr_max + 1;
  if (r0 == 0.0) {
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(oscillator_level(m, k));
    return out;
  }
  if (previous != nullptr) {
    const double lo = std::max(0.0, previous->front() - kContinuationWindow);
    const double hi = previous->back() + kContinuationWindow;
    const auto roots = roots_in_window(m, r0, lo, hi, kScanStep, kMaxLevelCount);
    std::vector<double> out(count, -1.0);
    int found = 0;
    for (double eps : roots) {
      const int label = count_state_nodes(eps, m, r0);
      if (label >= 0 && label < count && out[label] < 0.0) {
        out[label] = eps;
        ++found;
      }
    }
    if (found == count) return out;
  }
  const auto pts = find_levels(m, r0, count);
  std::vector<double> out;
  for (const auto& p : pts) out.push_back(p.eps);
  return out;
}

bool continuous(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > kContinuationWindow) return false;
  }
  return true;
}

}  // namespace

std::vector<LevelCurve> scan_levels(int m, int nr_max, std::span<const double> r0_grid) {
  if (nr_max < 0 || nr_max >= kMaxLevelCount) throw SolverError(ErrorKind::InvalidArgument, "scan_levels: bad nr_max");
  if (r0_grid.empty()) throw SolverError(ErrorKind::InvalidArgument, "scan_levels: empty grid");
  for (std::size_t i = 0; i < r0_grid.size(); ++i) {
    if (!(r0_grid[i] >= 0.0) || (i > 0 && !(r0_grid[i] > r0_grid[i - 1]))) {
      throw SolverError(ErrorKind::InvalidArgument, "scan_levels: grid must be ascending and non-negative");
    }
  }

  std::vector<LevelCurve> curves(nr_max + 1);
  for (int k = 0; k <= nr_max; ++k) curves[k] = {m, k, {}};

  std::vector<double> prev_levels;
  double prev_r0 = 0.0;
  auto accept = [&](double r0, std::vector<double> levels) {
    for (int k = 0; k <= nr_max; ++k) curves[k].samples.push_back({r0, levels[k]});
    prev_levels = std::move(levels);
    prev_r0 = r0;
  };

  constexpr int kMaxBisections = 8;
  for (double target : r0_grid) {
    if (prev_levels.empty()) {
      accept(target, levels_at(m, nr_max, target, nullptr));
      continue;
    }
    // Subdivide toward the target until each step moves every level by at most the window.
    std::vector<double> pending{target};
    while (!pending.empty()) {
      const double r0 = pending.back();
      auto levels = levels_at(m, nr_max, r0, &prev_levels);
      if (continuous(prev_levels, levels)) {
        accept(r0, std::move(levels));
        pending.pop_back();
        continue;
      }
      if (static_cast<int>(pending.size()) > kMaxBisections) {
        throw SolverError(ErrorKind::ContinuationBroken,
                          "scan_levels: level jump persists near r0=" + std::to_string(r0) + " (m=" +
                              std::to_string(m) + ")");
      }
      pending.push_back(0.5 * (prev_r0 + r0));
    }
  }
  return curves;
}

std::vector<double> default_r0_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 40; ++k) grid.push_back(0.01 * std::pow(100.0, k / 40.0));
  grid.back() = 1.0;
  for (int k = 1; k <= 100; ++k) grid.push_back(1.0 + 0.06 * k);
  return grid;
}

std::vector<LevelCurve> scan_levels_many(std::span<const int> ms, int nr_max, std::span<const double> r0_grid,
                                         int threads) {
  std::vector<std::vector<LevelCurve>> per_m(ms.size());
  std::vector<std::exception_ptr> errors(ms.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ms.size(); i = next++) {
      try {
        per_m[i] = scan_levels(ms[i], nr_max, r0_grid);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(ms.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<LevelCurve> out;
  for (auto& curves : per_m) {
    for (auto& c : curves) out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const LevelCurve& a, const LevelCurve& b) {
    return a.m != b.m ? a.m < b.m : a.n_r < b.n_r;
  });
  return out;
}

int thread_budget() {
  if (const char* env = std::getenv("SOMBRERO_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace sombrero
