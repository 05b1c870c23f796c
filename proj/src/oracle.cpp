#include "sombrero/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "sombrero/error.hpp"
#include "sombrero/report.hpp"

namespace sombrero {

namespace {

struct Tridiagonal {
  std::vector<double> r;     // cell centres
  std::vector<double> diag;  // size N
  std::vector<double> off;   // size N-1
  double h = 0.0;
};

Tridiagonal assemble(int m, double r0, double h, double r_max) {
  if (!(h > 0.0) || h > 0.02) throw SolverError(ErrorKind::GridInvalid, "fd_spectrum: need 0 < h <= 0.02");
  if (!(r0 >= 0.0)) throw SolverError(ErrorKind::GridInvalid, "fd_spectrum: r0 must be non-negative");
  if (!(r_max >= r0 + 10.0)) throw SolverError(ErrorKind::GridInvalid, "fd_spectrum: need r_max >= r0 + 10");
  if (r0 > 0.0) {
    // Put r0 on a cell face.
    const double cells = std::ceil(r0 / h - 1e-9);
    h = r0 / cells;
  }
  const auto n = static_cast<std::size_t>(std::ceil(r_max / h - 1e-9));
  Tridiagonal t;
  t.h = h;
  t.r.resize(n);
  t.diag.resize(n);
  t.off.resize(n - 1);
  const double inv_h2 = 1.0 / (h * h);
  const double m2 = static_cast<double>(m) * m;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = (j + 0.5) * h;
    const double face_lo = j * h;  // 0 at the first cell: no flux through r = 0
    const double face_hi = (j + 1.0) * h;
    t.r[j] = r;
    t.diag[j] = (face_lo + face_hi) * inv_h2 / r + m2 / (r * r) + 0.25 * std::abs(r * r - r0 * r0);
    if (j + 1 < n) t.off[j] = -face_hi * inv_h2 / std::sqrt(r * (r + h));
  }
  return t;
}

int sturm(const Tridiagonal& t, double x) {
  int negatives = 0;
  double q = t.diag[0] - x;
  for (std::size_t j = 0;; ++j) {
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++negatives;
    if (j + 1 == t.diag.size()) break;
    q = t.diag[j + 1] - x - t.off[j] * t.off[j] / q;
  }
  return negatives;
}

/// k-th eigenvalue (0-based) by bisection on the Sturm count.
double kth_eigenvalue(const Tridiagonal& t, int k, double lo, double hi) {
  while (hi - lo > 1e-13 * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm(t, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Solves T x = b for a general tridiagonal T with partial pivoting (LAPACK dgtsv scheme).
void solve_tridiagonal(std::vector<double> dl, std::vector<double> d, std::vector<double> du,
                       std::vector<double>& b) {
  const std::size_t n = d.size();
  std::vector<double> du2(n, 0.0);
  auto nonzero = [](double& v) {
    if (v == 0.0) v = 1e-300;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      nonzero(d[i]);
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double temp = d[i + 1];
      d[i + 1] = du[i] - fact * temp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      du[i] = temp;
      const double tb = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tb - fact * b[i + 1];
    }
  }
  nonzero(d[n - 1]);
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t i = n - 2; i-- > 0;) b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
}

/// Inverse iteration at a slightly shifted eigenvalue.
std::vector<double> eigenvector(const Tridiagonal& t, double lambda) {
  const std::size_t n = t.diag.size();
  const double shift = lambda + 1e-10 * std::max(1.0, std::abs(lambda));
  std::vector<double> diag(n);
  for (std::size_t j = 0; j < n; ++j) diag[j] = t.diag[j] - shift;
  std::vector<double> x(n, 1.0);
  for (int iter = 0; iter < 3; ++iter) {
    solve_tridiagonal(t.off, diag, t.off, x);
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
  }
  return x;
}

}  // namespace

OracleSpectrum fd_spectrum(int m, double r0, int count, double h, double r_max, bool with_vectors) {
  if (count < 1) throw SolverError(ErrorKind::GridInvalid, "fd_spectrum: count must be positive");
  const auto t = assemble(m, r0, h, r_max);
  double lo = t.diag[0], hi = t.diag[0];
  for (std::size_t j = 0; j < t.diag.size(); ++j) {
    const double radius = (j > 0 ? std::abs(t.off[j - 1]) : 0.0) + (j < t.off.size() ? std::abs(t.off[j]) : 0.0);
    lo = std::min(lo, t.diag[j] - radius);
    hi = std::max(hi, t.diag[j] + radius);
  }
  if (static_cast<std::size_t>(count) > t.diag.size()) throw SolverError(ErrorKind::GridInvalid, "grid too small");

  OracleSpectrum out;
  out.m = m;
  out.r0 = r0;
  out.h = t.h;
  out.r_max = t.h * t.diag.size();
  for (int k = 0; k < count; ++k) {
    const double lower = k == 0 ? lo : out.eigenvalues.back();
    out.eigenvalues.push_back(kth_eigenvalue(t, k, lower, hi));
  }
  if (with_vectors) {
    out.grid = t.r;
    for (double lambda : out.eigenvalues) {
      auto u = eigenvector(t, lambda);
      // Back to R = u / sqrt(r), positive near the origin.
      double first = 0.0;
      for (std::size_t j = 0; j < u.size(); ++j) {
        u[j] /= std::sqrt(t.r[j]);
        if (first == 0.0 && std::abs(u[j]) > 1e-8) first = u[j];
      }
      if (first < 0.0) {
        for (double& v : u) v = -v;
      }
      out.eigenvectors.push_back(std::move(u));
    }
  }
  return out;
}

int sturm_count(int m, double r0, double h, double r_max, double x) { return sturm(assemble(m, r0, h, r_max), x); }

std::vector<double> oracle_levels(int m, double r0, int count, double h, double pad) {
  const double r_max = r0 + pad;
  const auto coarse = fd_spectrum(m, r0, count, h, r_max);
  const auto fine = fd_spectrum(m, r0, count, 0.5 * h, r_max);
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(richardson(coarse.eigenvalues[k], fine.eigenvalues[k]));
  return out;
}

int count_sign_changes(std::span<const double> v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  int changes = 0, last = 0;
  for (double x : v) {
    if (std::abs(x) <= 1e-10 * peak) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<GoldenRow> oracle_golden(std::span<const int> ms, std::span<const double> r0s, int count, double h,
                                     double pad) {
  std::vector<GoldenRow> rows;
  for (int m : ms) {
    for (double r0 : r0s) {
      const auto levels = oracle_levels(m, r0, count, h, pad);
      for (int k = 0; k < count; ++k) rows.push_back({m, r0, k, levels[k], h, r0 + pad});
    }
  }
  return rows;
}

void write_golden_csv(std::ostream& os, std::span<const GoldenRow> rows) {
  os << "m,r0,k,eps_extrapolated,h,r_max\n";
  for (const auto& row : rows) {
    os << row.m << ',' << format_real(row.r0) << ',' << row.k << ',' << format_real(row.eps_extrapolated) << ','
       << format_real(row.h) << ',' << format_real(row.r_max) << '\n';
  }
}

std::vector<GoldenRow> read_golden_csv(std::istream& is) {
  std::vector<GoldenRow> rows;
  std::string line;
  if (!std::getline(is, line)) return rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    GoldenRow row;
    char comma;
    ss >> row.m >> comma >> row.r0 >> comma >> row.k >> comma >> row.eps_extrapolated >> comma >> row.h >> comma >>
        row.r_max;
    if (!ss) throw SolverError(ErrorKind::InvalidArgument, "malformed golden row: " + line);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sombrero
