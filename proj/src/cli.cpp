#include "sombrero/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sombrero/error.hpp"
#include "sombrero/matching.hpp"
#include "sombrero/model.hpp"
#include "sombrero/oracle.hpp"
#include "sombrero/report.hpp"
#include "sombrero/validation.hpp"
#include "sombrero/wavefn.hpp"

namespace sombrero::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Options {
  std::string m_spec = "0";
  std::string grid_spec = "default";
  std::string format = "csv";
  std::string output;
  std::string out_dir = ".";
  std::string preset;
  std::string r0_list = "1,2,4,6";
  std::string windows = "4:6,6:8";
  std::string kind = "n";
  std::optional<double> r0;
  std::optional<double> rho0;
  double mu = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double dr = 0.01;
  double h = 0.01;
  double pad = 12.0;
  double perturb = 0.0;
  int count = 5;
  int nr_max = 3;
  int n_r = 3;
  int label = 5;
};

int parse_int(const std::string& s) {
  int v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) parts.push_back(item);
  return parts;
}

/// Writes to the given file, or to `fallback` when the path is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + path.string() + "'");
  f << text;
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw std::invalid_argument("cannot create output directory '" + dir + "'");
  return p;
}

std::string curve_csv(const LevelCurve& c) {
  std::string s = "r0,eps\n";
  for (const CurveSample& p : c.samples) s += format_real(p.r0) + "," + format_real(p.eps) + "\n";
  return s;
}

std::string curve_name(int m, int n_r) { return "curve_m" + std::to_string(m) + "_nr" + std::to_string(n_r); }

Json curve_json(const LevelCurve& c) {
  Json r0 = Json::array(), eps = Json::array();
  for (const CurveSample& p : c.samples) {
    r0.push_back(p.r0);
    eps.push_back(p.eps);
  }
  return Json{{"m", c.m}, {"n_r", c.n_r}, {"r0", r0}, {"eps", eps}};
}

std::vector<LevelCurve> scan_curves(const std::vector<int>& ms, int nr_max, const std::vector<double>& grid) {
  return scan_levels_many(ms, nr_max, grid, thread_budget());
}

// ---------------------------------------------------------------------------------------------

int cmd_levels(const Options& o, std::ostream& out) {
  std::optional<PhysicalParams> phys;
  double r0 = 0.0;
  if (o.rho0) {
    phys = PhysicalParams{o.mu, o.omega, o.hbar, *o.rho0};
    r0 = nondimensionalize(*phys);
  } else {
    r0 = *o.r0;
  }
  if (r0 < 0.0) throw std::invalid_argument("r0 must be non-negative");

  std::vector<SpectralPoint> rows;
  for (int m : parse_m_range(o.m_spec)) {
    const auto levels = r0 == 0.0 ? special_case_r0_zero(m, o.count) : find_levels(m, r0, o.count);
    rows.insert(rows.end(), levels.begin(), levels.end());
  }
  const bool degraded = std::any_of(rows.begin(), rows.end(), [](auto& p) { return p.residual > kResidualBound; });

  Sink sink(o.output, out);
  std::ostream& os = sink.stream();
  if (o.format == "json") {
    Json arr = Json::array();
    for (const SpectralPoint& p : rows) {
      Json j{{"r0", p.r0}, {"m", p.m}, {"n_r", p.n_r}, {"eps", p.eps}, {"residual", p.residual}};
      if (phys) j["E"] = eps_to_energy(*phys, p.eps);
      if (degraded) j["degraded"] = p.residual > kResidualBound;
      arr.push_back(std::move(j));
    }
    os << arr.dump(2) << "\n";
    return kOk;
  }
  os << "r0,m,n_r,eps,residual" << (phys ? ",E" : "") << (degraded ? ",degraded" : "") << "\n";
  for (const SpectralPoint& p : rows) {
    os << format_real(p.r0) << "," << p.m << "," << p.n_r << "," << format_real(p.eps) << ","
       << format_real(p.residual);
    if (phys) os << "," << format_real(eps_to_energy(*phys, p.eps));
    if (degraded) os << "," << (p.residual > kResidualBound ? "true" : "false");
    os << "\n";
  }
  return kOk;
}

int cmd_scan(Options o, std::ostream& out) {
  std::optional<std::vector<int>> keep_n;
  if (o.preset == "fig1") {
    o.m_spec = "0..3";
    o.nr_max = 3;
  } else if (o.preset == "fig2") {
    o.m_spec = "0..6";
    o.nr_max = 3;
    keep_n = std::vector<int>{5, 6};
  } else if (o.preset == "fig3") {
    o.m_spec = "0..3";
    o.nr_max = 4;
  } else if (o.preset == "fig5") {
    o.m_spec = "0..4";
    o.nr_max = 1;
  } else if (!o.preset.empty()) {
    throw std::invalid_argument("scan has no preset '" + o.preset + "'");
  }
  if (o.nr_max < 0) throw std::invalid_argument("--nr-max must be non-negative");

  const std::vector<int> ms = parse_m_range(o.m_spec);
  const std::vector<double> grid = parse_r0_grid(o.grid_spec);
  std::vector<LevelCurve> curves = scan_curves(ms, o.nr_max, grid);
  if (keep_n) {
    std::erase_if(curves, [&](const LevelCurve& c) {
      const int n = QuantumNumbers{c.m, c.n_r}.n();
      return std::find(keep_n->begin(), keep_n->end(), n) == keep_n->end();
    });
  }

  const fs::path dir = prepare_dir(o.out_dir);
  if (o.format == "json") {
    Json j;
    j["curves"] = Json::array();
    for (const LevelCurve& c : curves) j["curves"].push_back(curve_json(c));
    Json pr0 = Json::array(), top = Json::array();
    for (double r0 : grid) {
      pr0.push_back(r0);
      top.push_back(barrier_top(r0));
    }
    j["parabola"] = Json{{"r0", pr0}, {"r0^2/4", top}};
    write_file(dir / "scan.json", j.dump(2) + "\n");
    out << (dir / "scan.json").string() << "\n";
    return kOk;
  }
  for (const LevelCurve& c : curves) {
    const fs::path path = dir / (curve_name(c.m, c.n_r) + ".csv");
    write_file(path, curve_csv(c));
    out << path.string() << "\n";
  }
  std::string parabola = "r0,r0^2/4\n";
  for (double r0 : grid) parabola += format_real(r0) + "," + format_real(barrier_top(r0)) + "\n";
  write_file(dir / "parabola.csv", parabola);
  out << (dir / "parabola.csv").string() << "\n";
  return kOk;
}

struct DensityTable {
  double r0 = 0.0;
  std::vector<double> r;
  std::vector<double> rho;
};

DensityTable density_table(int m, int n_r, double r0, double dr) {
  if (!(dr > 0.0)) throw std::invalid_argument("--dr must be positive");
  const auto levels = r0 == 0.0 ? special_case_r0_zero(m, n_r + 1) : find_levels(m, r0, n_r + 1);
  const RadialSolution sol = normalize(levels.at(n_r));
  DensityTable t;
  t.r0 = r0;
  const int n = static_cast<int>(std::floor(sol.r_far() / dr));
  for (int i = 0; i <= n; ++i) t.r.push_back(i * dr);
  t.rho = density(sol, t.r);
  return t;
}

std::string density_csv(const DensityTable& t) {
  std::string s = "r,rR2,region\n";
  for (std::size_t i = 0; i < t.r.size(); ++i) {
    s += format_real(t.r[i]) + "," + format_real(t.rho[i]) + "," + (t.r[i] <= t.r0 ? "in" : "out") + "\n";
  }
  return s;
}

Json density_json(const DensityTable& t) {
  Json r = Json::array(), rho = Json::array(), region = Json::array();
  for (std::size_t i = 0; i < t.r.size(); ++i) {
    r.push_back(t.r[i]);
    rho.push_back(t.rho[i]);
    region.push_back(t.r[i] <= t.r0 ? "in" : "out");
  }
  return Json{{"r0", t.r0}, {"r", r}, {"rR2", rho}, {"region", region}};
}

/// Panel radii: near the oscillator limit, at capture, just past capture, and far out.
std::vector<std::pair<std::string, double>> fig6_panels(int m, int n_r) {
  const auto grid = default_r0_grid();
  const auto curves = scan_levels(m, n_r, grid);
  const double r_c = capture_radius(curves.at(n_r));
  return {{"a", 0.01}, {"b", r_c}, {"c", r_c + 1.5}, {"d", 7.0}};
}

int cmd_density(Options o, std::ostream& out) {
  if (o.preset == "fig6") {
    o.m_spec = "0";
    o.n_r = 3;
    const auto panels = fig6_panels(0, 3);
    const fs::path dir = prepare_dir(o.out_dir);
    if (o.format == "json") {
      Json j = Json::array();
      for (const auto& [tag, r0] : panels) {
        Json panel = density_json(density_table(0, 3, r0, o.dr));
        panel["panel"] = tag;
        j.push_back(std::move(panel));
      }
      write_file(dir / "density_fig6.json", j.dump(2) + "\n");
      out << (dir / "density_fig6.json").string() << "\n";
      return kOk;
    }
    out << "panel,r0,file\n";
    for (const auto& [tag, r0] : panels) {
      const fs::path path = dir / ("density_fig6" + tag + ".csv");
      write_file(path, density_csv(density_table(0, 3, r0, o.dr)));
      out << tag << "," << format_real(r0) << "," << path.string() << "\n";
    }
    return kOk;
  }
  if (!o.preset.empty()) throw std::invalid_argument("density has no preset '" + o.preset + "'");
  if (!o.r0) throw std::invalid_argument("density needs --r0 or --preset fig6");
  if (*o.r0 < 0.0) throw std::invalid_argument("r0 must be non-negative");
  if (o.n_r < 0) throw std::invalid_argument("--nr must be non-negative");
  const std::vector<int> ms = parse_m_range(o.m_spec);
  if (ms.size() != 1) throw std::invalid_argument("density takes a single m");

  const DensityTable t = density_table(ms.front(), o.n_r, *o.r0, o.dr);
  Sink sink(o.output, out);
  if (o.format == "json") {
    sink.stream() << density_json(t).dump(2) << "\n";
  } else {
    sink.stream() << density_csv(t);
  }
  return kOk;
}

int cmd_clusters(const Options& o, std::ostream& out) {
  const std::vector<double> grid = parse_r0_grid(o.grid_spec);
  ClusterKind kind;
  std::vector<int> ms;
  int nr_max = 0;
  if (o.kind == "n") {
    kind = ClusterKind::N;
    if (o.label < 0) throw std::invalid_argument("--label must be non-negative");
    for (int m = 0; m <= o.label; ++m) ms.push_back(m);
    nr_max = o.label / 2;
  } else if (o.kind == "absm") {
    kind = ClusterKind::AbsM;
    ms = {std::abs(o.label)};
    nr_max = o.nr_max;
  } else {
    kind = ClusterKind::NR;
    ms = parse_m_range(o.m_spec);
    nr_max = o.label;
  }
  if (nr_max < 0) throw std::invalid_argument("n_r bound must be non-negative");
  const std::vector<LevelCurve> curves = scan_curves(ms, nr_max, grid);
  Cluster cl = clusters(curves, kind, kind == ClusterKind::AbsM ? std::abs(o.label) : o.label);
  if (kind == ClusterKind::NR) {
    std::erase_if(cl.curves, [&](const LevelCurve& c) { return std::find(ms.begin(), ms.end(), c.m) == ms.end(); });
  }

  Sink sink(o.output, out);
  std::ostream& os = sink.stream();
  if (o.format == "json") {
    Json j{{"kind", o.kind}, {"label", o.label}, {"curves", Json::array()}};
    for (const LevelCurve& c : cl.curves) j["curves"].push_back(curve_json(c));
    os << j.dump(2) << "\n";
    return kOk;
  }
  os << "kind,label,m,n_r,r0,eps\n";
  for (const LevelCurve& c : cl.curves) {
    for (const CurveSample& p : c.samples) {
      os << o.kind << "," << o.label << "," << c.m << "," << c.n_r << "," << format_real(p.r0) << ","
         << format_real(p.eps) << "\n";
    }
  }
  return kOk;
}

std::vector<std::pair<double, double>> parse_windows(const std::string& spec) {
  std::vector<std::pair<double, double>> w;
  for (const std::string& item : split(spec, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw std::invalid_argument("window must be lo:hi, got '" + item + "'");
    const double lo = parse_double(parts[0]), hi = parse_double(parts[1]);
    if (!(lo < hi)) throw std::invalid_argument("window must have lo < hi, got '" + item + "'");
    w.emplace_back(lo, hi);
  }
  if (w.empty()) throw std::invalid_argument("no fit windows given");
  return w;
}

constexpr const char* kCaptureDefinition = "r0 of the eps-minimum of the sampled curve (d eps/d r0 = 0, P_in = 1/2)";

Json asym_json(const std::vector<LevelCurve>& curves, const std::vector<std::pair<double, double>>& windows) {
  std::vector<std::pair<double, double>> all = {{5.0, 1e300}};
  all.insert(all.end(), windows.begin(), windows.end());
  const validation::AsymptoticReport rep = validation::asymptotic_report(curves, all);

  Json j;
  j["capture_definition"] = kCaptureDefinition;
  j["models"] = Json{{"A_fit", "eps ~ r0^2/4 - A r0"}, {"exponent_fit", "eps ~ C r0^p, p = d log eps / d log r0"}};
  j["curves"] = Json::array();
  for (std::size_t i = 0; i < rep.curves.size(); ++i) {
    const auto& c = rep.curves[i];
    Json row{{"m", c.m},
             {"n_r", c.n_r},
             {"c_small", c.c_small},
             {"A_fit", c.windows[0].a_fit},
             {"exponent_fit", c.windows[0].exponent_fit}};
    try {
      row["capture_radius"] = capture_radius(curves[i]);
    } catch (const SolverError&) {
      row["capture_radius"] = nullptr;
    }
    row["windows"] = Json::array();
    for (std::size_t w = 1; w < c.windows.size(); ++w) {
      row["windows"].push_back(Json{{"lo", c.windows[w].lo},
                                    {"hi", c.windows[w].hi},
                                    {"A_fit", c.windows[w].a_fit},
                                    {"exponent_fit", c.windows[w].exponent_fit}});
    }
    j["curves"].push_back(std::move(row));
  }
  j["a_spread"] = Json::array();
  for (const auto& s : rep.spreads) {
    Json row{{"n_r", s.n_r}, {"lo", s.lo}, {"hi", s.hi}, {"relative_spread", s.relative_spread}};
    if (s.hi >= 1e300) row["hi"] = nullptr;
    j["a_spread"].push_back(std::move(row));
  }
  return j;
}

int cmd_asym(const Options& o, std::ostream& out) {
  const std::vector<int> ms = parse_m_range(o.m_spec);
  const std::vector<double> grid = parse_r0_grid(o.grid_spec);
  const auto windows = parse_windows(o.windows);
  if (o.nr_max < 0) throw std::invalid_argument("--nr-max must be non-negative");
  const std::vector<LevelCurve> curves = scan_curves(ms, o.nr_max, grid);
  Sink sink(o.output, out);
  sink.stream() << asym_json(curves, windows).dump(2) << "\n";
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  std::vector<validation::Check> checks = validation::hyp_identity_checks();
  for (auto& c : validation::circular_limit_checks()) checks.push_back(std::move(c));
  checks.push_back(validation::oracle_equivalence_check(o.perturb));
  checks.push_back(validation::hellmann_feynman_check());
  checks.push_back(validation::normalization_check());

  const std::vector<int> ms = {0, 1, 2, 3};
  const std::vector<double> grid = validation::extended_r0_grid();
  const std::vector<LevelCurve> curves = scan_curves(ms, 1, grid);
  const auto report = validation::asymptotic_report(curves, {{4.0, 6.0}, {6.0, 8.02}});
  checks.push_back(validation::spread_trend_check(report));

  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  out << "# large-r0 adjudication (A_fit: eps ~ r0^2/4 - A r0; exponent_fit: eps ~ r0^p)\n";
  for (const auto& c : report.curves) {
    for (const auto& w : c.windows) {
      out << "# m=" << c.m << " n_r=" << c.n_r << " window=[" << format_real(w.lo) << "," << format_real(w.hi)
          << "] A_fit=" << format_real(w.a_fit) << " exponent_fit=" << format_real(w.exponent_fit) << "\n";
    }
  }
  for (const auto& s : report.spreads) {
    out << "# n_r=" << s.n_r << " window=[" << format_real(s.lo) << "," << format_real(s.hi)
        << "] A relative m-spread=" << format_real(s.relative_spread) << "\n";
  }
  out << (all ? "all checks passed" : "some checks failed") << "\n";
  return all ? kOk : kSolverFailure;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  if (o.count < 1) throw std::invalid_argument("--count must be positive");
  const std::vector<int> ms = parse_m_range(o.m_spec);
  std::vector<double> r0s;
  for (const std::string& s : split(o.r0_list, ',')) r0s.push_back(parse_double(s));
  const auto rows = oracle_golden(ms, r0s, o.count, o.h, o.pad);
  Sink sink(o.output, out);
  write_golden_csv(sink.stream(), rows);
  return kOk;
}

}  // namespace

std::vector<int> parse_m_range(const std::string& spec) {
  std::vector<int> ms;
  const auto dots = spec.find("..");
  if (dots == std::string::npos) {
    ms.push_back(parse_int(spec));
  } else {
    const int lo = parse_int(spec.substr(0, dots));
    const int hi = parse_int(spec.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("empty m range '" + spec + "'");
    for (int m = lo; m <= hi; ++m) ms.push_back(m);
  }
  return ms;
}

std::vector<double> parse_r0_grid(const std::string& spec) {
  std::vector<double> grid;
  if (spec == "default") {
    grid = default_r0_grid();
  } else if (spec == "extended") {
    grid = validation::extended_r0_grid();
  } else if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw std::invalid_argument("grid must be lo:hi:n, got '" + spec + "'");
    const double lo = parse_double(parts[0]), hi = parse_double(parts[1]);
    const int n = parse_int(parts[2]);
    if (n < 2 || !(lo < hi)) throw std::invalid_argument("grid needs lo < hi and n >= 2");
    for (int i = 0; i < n; ++i) grid.push_back(lo + (hi - lo) * i / (n - 1));
  } else {
    for (const std::string& s : split(spec, ',')) grid.push_back(parse_double(s));
  }
  if (grid.empty()) throw std::invalid_argument("empty r0 grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw std::invalid_argument("grid radii must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw std::invalid_argument("r0 grid must be strictly ascending");
  }
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy levels and wavefunctions of the parabolic sombrero", "sombrero"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_count = [&](CLI::App* sub) {
    sub->add_option("--count", o.count, "Levels per m")->check(CLI::Range(1, kMaxLevelCount));
  };

  auto* levels = app.add_subcommand("levels", "Lowest levels at one r0");
  auto* r0_opt = levels->add_option("--r0", o.r0, "Dimensionless radius");
  auto* rho0_opt = levels->add_option("--rho0", o.rho0, "Physical radius (with --mu --omega --hbar)");
  r0_opt->excludes(rho0_opt);
  levels->add_option("--mu", o.mu, "Mass");
  levels->add_option("--omega", o.omega, "Angular frequency");
  levels->add_option("--hbar", o.hbar, "Reduced Planck constant");
  levels->add_option("--m", o.m_spec, "m or m_lo..m_hi");
  add_count(levels);
  add_format(levels);
  levels->add_option("--output,-o", o.output, "Output file (default stdout)");

  auto* scan = app.add_subcommand("scan", "Level curves over an r0 grid, one CSV per (m, n_r)");
  scan->add_option("--m", o.m_spec, "m or m_lo..m_hi");
  scan->add_option("--nr-max", o.nr_max, "Highest n_r");
  scan->add_option("--grid", o.grid_spec, "default | extended | lo:hi:n | comma list");
  scan->add_option("--out-dir", o.out_dir, "Directory for curve files");
  scan->add_option("--preset", o.preset, "fig1 | fig2 | fig3 | fig5");
  add_format(scan);

  auto* dens = app.add_subcommand("density", "Radial probability density r R^2");
  dens->add_option("--m", o.m_spec, "Angular momentum");
  dens->add_option("--nr", o.n_r, "Radial node count");
  dens->add_option("--r0", o.r0, "Dimensionless radius");
  dens->add_option("--dr", o.dr, "Sampling step");
  dens->add_option("--preset", o.preset, "fig6");
  dens->add_option("--out-dir", o.out_dir, "Directory for preset files");
  dens->add_option("--output,-o", o.output, "Output file (default stdout)");
  add_format(dens);

  auto* clus = app.add_subcommand("clusters", "Members of an n-, |m|- or n_r-cluster");
  clus->add_option("--kind", o.kind, "n | absm | nr")->check(CLI::IsMember({"n", "absm", "nr"}));
  clus->add_option("--label", o.label, "Cluster label");
  clus->add_option("--m", o.m_spec, "m range for n_r-clusters");
  clus->add_option("--nr-max", o.nr_max, "Highest n_r for |m|-clusters");
  clus->add_option("--grid", o.grid_spec, "default | extended | lo:hi:n | comma list");
  clus->add_option("--output,-o", o.output, "Output file (default stdout)");
  add_format(clus);

  auto* asym = app.add_subcommand("asym", "Small- and large-r0 fits (JSON)");
  asym->add_option("--m", o.m_spec, "m or m_lo..m_hi");
  asym->add_option("--nr-max", o.nr_max, "Highest n_r");
  asym->add_option("--grid", o.grid_spec, "default | extended | lo:hi:n | comma list");
  asym->add_option("--windows", o.windows, "Extra large-r0 windows lo:hi,...");
  asym->add_option("--output,-o", o.output, "Output file (default stdout)");

  auto* val = app.add_subcommand("validate", "Run the invariant suite");
  val->add_option("--perturb", o.perturb, "Shift one eigenvalue before the oracle comparison")->group("");

  auto* orc = app.add_subcommand("oracle", "Finite-difference golden levels");
  orc->add_option("--m", o.m_spec, "m or m_lo..m_hi");
  orc->add_option("--r0", o.r0_list, "Comma-separated radii");
  orc->add_option("--count", o.count, "Levels per (m, r0)")->check(CLI::Range(1, kMaxLevelCount));
  orc->add_option("--step", o.h, "Coarse grid step");
  orc->add_option("--pad", o.pad, "r_max - r0");
  orc->add_option("--output,-o", o.output, "Output file (default stdout)");

  std::vector<const char*> argv{"sombrero"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArgs;
  }

  try {
    if (levels->parsed()) {
      if (!o.r0 && !o.rho0) throw std::invalid_argument("levels needs --r0 or --rho0");
      return cmd_levels(o, out);
    }
    if (scan->parsed()) return cmd_scan(o, out);
    if (dens->parsed()) return cmd_density(o, out);
    if (clus->parsed()) return cmd_clusters(o, out);
    if (asym->parsed()) {
      Options a = o;
      if (asym->count("--m") == 0) a.m_spec = "0..3";
      if (asym->count("--nr-max") == 0) a.nr_max = 1;
      if (asym->count("--grid") == 0) a.grid_spec = "extended";
      return cmd_asym(a, out);
    }
    if (val->parsed()) return cmd_validate(o, out);
    if (orc->parsed()) {
      Options a = o;
      if (orc->count("--m") == 0) a.m_spec = "0..3";
      if (orc->count("--count") == 0) a.count = 4;
      return cmd_oracle(a, out);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const SolverError& e) {
    const bool bad_input = e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::InvalidPhysicalParams;
    err << (bad_input ? "error: " : "solver error: ") << e.what() << "\n";
    return bad_input ? kBadArgs : kSolverFailure;
  }
  return kBadArgs;
}

}  // namespace sombrero::cli
