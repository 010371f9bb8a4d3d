#include "cli/run.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/output.hpp"
#include "qps/approximation.hpp"
#include "qps/kernels.hpp"
#include "qps/spectra.hpp"
#include "qps/validation.hpp"

namespace qps::cli {

namespace {

using json = nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json tagged(double value, double tol) {
  json j;
  j["value"] = value;
  if (std::isfinite(tol))
    j["tolerance"] = tol;
  else
    j["tolerance"] = nullptr;
  return j;
}

json exact(double value) { return tagged(value, 0.0); }

const ExpPolySymbol& need_symbol(const JobConfig& cfg, const char* sub) {
  if (!cfg.symbol) throw ConfigError(std::string("symbol: '") + sub + "' needs an analytic symbol (c0/terms)");
  return *cfg.symbol;
}

struct Ranges {
  RangeCloud primary;  // what the spectrum uses
  RangeCloud sampled;
  bool has_orbit = false;
  RangeCloud orbit;
};

Ranges compute_ranges(const JobConfig& cfg) {
  Ranges r;
  if (cfg.symbol) {
    const ExpPolySymbol psi = *cfg.symbol;
    im_lower_bound(psi);
    const auto f = [psi](double x) { return psi(cplx(x, 0.0)); };
    r.sampled = essential_range_sampled(sample_boundary(f, cfg.range_X, cfg.range_per_block), cfg.range_epsilon,
                                        cfg.n_schedule);
    r.orbit = essential_range_exppoly(psi, cfg.range_epsilon);
    r.has_orbit = true;
    r.primary = r.orbit;
  } else {
    SampledBoundarySymbol s = load_samples(cfg.samples_path);
    r.sampled = essential_range_sampled(s, cfg.range_epsilon, cfg.n_schedule);
    r.primary = r.sampled;
  }
  return r;
}

json base_report(const std::string& sub, const JobConfig& cfg) {
  json rep;
  rep["subcommand"] = sub;
  rep["provenance"] = {{"config_hash", config_hash(cfg.source_text)}, {"version", kVersion}};
  rep["alpha"] = exact(cfg.alpha);
  rep["parametrization"] =
      "spectral points are lambda(z, t) = exp(2 pi i z t), t >= 0; the same set as exp(i z s) with s = 2 pi t";
  return rep;
}

struct Sink {
  std::string dir;
  const std::set<std::string>& formats;
  std::ostream& log;
  void put(const std::string& fmt, const std::string& name, const std::string& content) const {
    if (!formats.count(fmt)) return;
    const std::string path = (std::filesystem::path(dir) / name).string();
    write_atomic(path, content);
    log << "wrote " << path << "\n";
  }
  void report(const json& rep, const std::string& name) const { put("json", name, rep.dump(2) + "\n"); }
};

// ---------------------------------------------------------------- subcommands

int do_range(const JobConfig& cfg, const Sink& out) {
  const Ranges r = compute_ranges(cfg);
  std::vector<TaggedPoint> pts;
  for (cplx z : r.sampled.points) pts.push_back({z, "sampled"});
  if (r.has_orbit)
    for (cplx z : r.orbit.points) pts.push_back({z, "orbit"});
  json rep = base_report("range", cfg);
  rep["range"] = {{"epsilon", exact(cfg.range_epsilon)},
                  {"n_schedule", cfg.n_schedule},
                  {"X", exact(cfg.range_X)},
                  {"sampled_points", exact(static_cast<double>(r.sampled.points.size()))}};
  if (r.has_orbit) {
    rep["range"]["orbit_points"] = exact(static_cast<double>(r.orbit.points.size()));
    // both estimators report cell representatives, so they may differ by a cell diagonal
    rep["range"]["hausdorff_sampled_vs_orbit"] =
        tagged(hausdorff_distance(r.sampled.points, r.orbit.points), 2.0 * std::sqrt(2.0) * cfg.range_epsilon);
  }
  out.put("csv", "range.csv", points_csv(pts));
  out.put("svg", "range.svg", render_svg({"local essential range at infinity", pts, {}, {}, false, false}));
  out.report(rep, "report.json");
  return kOk;
}

int do_series(const JobConfig& cfg, const RunOptions& opt, const Sink& out) {
  const ExpPolySymbol& psi = need_symbol(cfg, "series");
  const SeriesPlan plan = plan_series(psi, cfg.p, cfg.alpha, cfg.eps_target);
  const double t_max = cfg.grid_t_max ? *cfg.grid_t_max : auto_t_max(plan.beta);
  const GridPtr grid = grid_for_plan(plan, psi, cfg.grid_t_count, t_max, opt.seed_dt);
  if (grid->size() > 2048) throw ConfigError("grid: seed spacing gives more than 2048 nodes");
  const FourierOperator op = assemble_series(plan, psi, grid);

  // Discretization: the half-line is cut at T (the n = 0 multiplier is
  // exp(-2 pi beta T) there) and, for p != 1, V_p interpolates in t.
  double disc = std::exp(-2.0 * kPi * plan.beta * grid->t_max);
  if (cfg.p != 1.0) {
    const double a1 = cfg.alpha + 1.0, p = cfg.p;
    const auto g = [a1](double t) { return t > 0.0 ? std::pow(t, a1) * std::exp(-2.0 * kPi * t) : 0.0; };
    const GridFunction probe = GridFunction::sample(grid, [&](double t) -> cplx { return g(t); });
    const GridFunction got = dilation_op(p, grid)(probe);
    const GridFunction want = GridFunction::sample(grid, [&](double t) -> cplx { return g(t / p) / p; });
    disc += relative_error(got, want);
  }
  const double residual = series_residual(plan, psi, grid, plan.M);

  json rep = base_report("series", cfg);
  rep["plan"] = {{"beta", exact(plan.beta)},
                 {"delta", exact(plan.delta)},
                 {"M", exact(static_cast<double>(plan.M))},
                 {"tail", tagged(plan.tail, cfg.eps_target)},
                 {"p", exact(plan.p)},
                 {"eps_target", exact(cfg.eps_target)}};
  rep["error_budget"] = json::array({
      {{"name", "analytic_tail"}, {"value", plan.tail}, {"tolerance", cfg.eps_target}},
      {{"name", "discretization_estimate"}, {"value", disc}, {"tolerance", cfg.eps_target}},
  });
  rep["grid"] = {{"nodes", exact(static_cast<double>(grid->size()))},
                 {"dt", exact(grid->dt)},
                 {"t_max", exact(grid->t_max)},
                 {"interpolated", op.approximate}};
  rep["operator"] = {{"weighted_norm", tagged(weighted_norm(op), disc)},
                     {"residual_next_15_terms", tagged(residual, plan.tail)}};
  const NormalityProfile np = essential_normality_diag(op);
  rep["diagnostics"] = {{"commutator_head_max", tagged(np.head_max, kNaN)},
                        {"commutator_tail_max", tagged(np.tail_max, kNaN)},
                        {"commutator_ratio", tagged(np.ratio, 10.0)}};
  if (!std::isfinite(np.ratio)) rep["diagnostics"]["commutator_ratio"]["value"] = "unbounded (tail columns vanish)";

  std::vector<std::vector<double>> rows;
  for (std::size_t n = 0; n <= plan.M; ++n)
    rows.push_back({static_cast<double>(n), plan.coefficients[n],
                    plan.coefficients[n] * std::pow(plan.delta, static_cast<double>(n))});
  out.put("csv", "coefficients.csv", columns_csv({"n", "c_n", "c_n_delta_n"}, rows));
  if (cfg.formats.count("svg")) {
    std::vector<TaggedPoint> pts;
    for (cplx l : finite_section_eigs(op)) pts.push_back({l, "finite-section"});
    out.put("svg", "eigenvalues.svg",
            render_svg({"finite-section eigenvalues (heuristic)", pts, {}, {cplx(0.0)}, true, false}));
  }
  out.report(rep, "report.json");
  return kOk;
}

int do_spectrum(const JobConfig& cfg, const Sink& out) {
  const Ranges r = compute_ranges(cfg);
  double im_min = std::numeric_limits<double>::infinity();
  for (cplx z : r.primary.points) im_min = std::min(im_min, z.imag());
  if (!(im_min > 0.0)) throw InfeasibleSymbol("spectrum: range reaches Im z <= 0");
  const double t_max = cfg.spectrum_t_max ? *cfg.spectrum_t_max : 30.0 / (2.0 * kPi * im_min);
  const SpectrumSet set = essential_spectrum_formula(r.primary, t_max, cfg.spectrum_t_count);
  std::vector<TaggedPoint> pts;
  for (const auto& c : set.parametric)
    for (cplx l : c.values) pts.push_back({l, "curve"});
  pts.push_back({0.0, "zero"});
  json rep = base_report("spectrum", cfg);
  rep["spectrum"] = {{"range_points", exact(static_cast<double>(r.primary.points.size()))},
                     {"range_source", r.has_orbit ? "orbit" : "sampled"},
                     {"t_max", exact(t_max)},
                     {"t_count", exact(static_cast<double>(cfg.spectrum_t_count))},
                     {"image_resolution", tagged(image_resolution(set), kNaN)},
                     {"points", exact(static_cast<double>(set.points.size()))}};
  out.put("csv", "spectrum.csv", points_csv(pts));
  if (cfg.formats.count("svg")) {
    SvgFigure fig{"essential spectrum: exp(2 pi i z t), z in range, t >= 0", {}, {}, {cplx(0.0)}, true, false};
    // thin out the curves for the picture; the CSV keeps them all
    const std::size_t stride = std::max<std::size_t>(1, set.parametric.size() / 48);
    for (std::size_t k = 0; k < set.parametric.size(); k += stride)
      fig.curves.push_back({set.parametric[k].values, k % 2 ? "#1f77b4" : "#2ca02c"});
    out.put("svg", "spectrum.svg", render_svg(fig));
  }
  out.report(rep, "report.json");
  return kOk;
}

int do_vmo(const JobConfig& cfg, const Sink& out) {
  const ExpPolySymbol& psi = need_symbol(cfg, "vmo");
  im_lower_bound(psi);
  // the symbol carried to the disk
  const auto eta = [psi](cplx w) { return psi(inverse_cayley(w)); };
  const MOProfile prof = vmo_profile(eta, cfg.vmo_r_levels, cfg.vmo_theta_count);
  // w = 1 is where the half-plane's infinity lands
  const MOProfile near1 = vmo_profile_focused(eta, cfg.vmo_r_levels, cfg.vmo_theta_count, 0.0);
  std::vector<std::vector<double>> rows;
  std::vector<TaggedPoint> pts;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t k = 0; k < prof.r_levels.size(); ++k) {
    const double h = 1.0 - prof.r_levels[k];
    rows.push_back({prof.r_levels[k], h, prof.values[k], near1.values[k]});
    if (prof.values[k] > 0.0) {
      const double x = std::log10(h), y = std::log10(prof.values[k]);
      pts.push_back({cplx(x, y), "profile"});
      sx += x, sy += y, sxx += x * x, sxy += x * y, ++m;
    }
    if (near1.values[k] > 0.0) pts.push_back({cplx(std::log10(h), std::log10(near1.values[k])), "near w = 1"});
  }
  json rep = base_report("vmo", cfg);
  json levels = json::array();
  for (std::size_t k = 0; k < prof.r_levels.size(); ++k)
    levels.push_back({{"r", prof.r_levels[k]},
                      {"value", tagged(prof.values[k], kNaN)},
                      {"value_near_w1", tagged(near1.values[k], kNaN)}});
  rep["vmo"] = {{"levels", levels}, {"theta_count", exact(static_cast<double>(cfg.vmo_theta_count))}};
  if (m >= 2) {
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    // slope near 1 means oscillation ~ (1 - r); near 0 means no decay
    rep["vmo"]["log_log_slope"] = tagged(slope, kNaN);
  }
  out.put("csv", "vmo.csv", columns_csv({"r", "one_minus_r", "mean_oscillation", "mean_oscillation_near_w1"}, rows));
  out.put("svg", "vmo.svg", render_svg({"mean oscillation vs 1 - r (log10 axes)", pts, {}, {}, false, true}));
  out.report(rep, "report.json");
  return kOk;
}

int do_validate(const JobConfig& cfg, const RunOptions& opt, const Sink& out) {
  const auto results = run_acceptance(opt.criteria);
  json rep = base_report("validate", cfg);
  json list = json::array();
  bool all = true;
  for (const auto& r : results) {
    out.log << summary_line(r) << "\n";
    if (!r.note.empty()) out.log << "    " << r.note << "\n";
    json j = {{"id", r.id}, {"title", r.title}, {"passed", r.passed}};
    json ms = json::array();
    for (const auto& mm : r.measurements) {
      if (mm.timing) continue;
      ms.push_back({{"name", mm.name}, {"value", tagged(mm.value, mm.tolerance)}});
    }
    j["measurements"] = ms;
    if (!r.note.empty()) j["note"] = r.note;
    list.push_back(j);
    all = all && r.passed;
  }
  rep["criteria"] = list;
  rep["all_passed"] = all;
  out.report(rep, "report.json");
  return all ? kOk : kValidateFailed;
}

}  // namespace

int run(const std::string& sub, const JobConfig& cfg, const RunOptions& opt, std::ostream& log, std::ostream& err) {
  try {
    const Sink out{opt.out_dir.empty() ? cfg.out_dir : opt.out_dir, cfg.formats, log};
    if (sub == "range") return do_range(cfg, out);
    if (sub == "series") return do_series(cfg, opt, out);
    if (sub == "spectrum") return do_spectrum(cfg, out);
    if (sub == "vmo") return do_vmo(cfg, out);
    if (sub == "validate") return do_validate(cfg, opt, out);
    err << "error: unknown subcommand '" << sub << "'\n";
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InfeasibleSymbol& e) {
    err << "infeasible symbol: " << e.what() << "\n";
    return kInfeasible;
  } catch (const IncommensurableGrid& e) {
    err << "grid error: " << e.what() << "\n";
    if (!e.suggestion.empty()) err << "  hint: " << e.suggestion << "\n";
    return kIncommensurable;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"composition operators with exponential-polynomial symbols: ranges, series, spectra"};
  std::string sub, config_path;
  RunOptions opt;
  std::string criteria;
  app.add_option("subcommand", sub, "spectrum | series | range | vmo | validate")
      ->required()
      ->check(CLI::IsMember({"spectrum", "series", "range", "vmo", "validate"}));
  app.add_option("--config", config_path, "job configuration (JSON)");
  app.add_option("--out", opt.out_dir, "output directory (overrides outputs.dir)");
  app.add_option("--seed-grid", opt.seed_dt, "grid spacing; the node count follows from t_max")
      ->check(CLI::PositiveNumber);
  app.add_option("--criteria", criteria, "validate: comma-separated criterion ids");
  app.set_version_flag("--version", kVersion);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  if (const char* env = std::getenv("QPSPECTRA_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) {
      std::cerr << "config error: QPSPECTRA_THREADS must be a positive integer\n";
      return kConfigError;
    }
    kernels::set_threads(static_cast<int>(n));
  }

  if (!criteria.empty()) {
    std::stringstream ss(criteria);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        const int id = std::stoi(item);
        if (id < 1 || id > kCriterionCount) throw std::out_of_range("id");
        opt.criteria.push_back(id);
      } catch (const std::exception&) {
        std::cerr << "config error: --criteria: bad id '" << item << "'\n";
        return kConfigError;
      }
    }
  }

  JobConfig cfg;
  if (config_path.empty()) {
    if (sub != "validate") {
      std::cerr << "config error: --config is required for '" << sub << "'\n";
      return kConfigError;
    }
    cfg.source_text = "{}";
  } else {
    try {
      cfg = load_config(config_path);
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kConfigError;
    }
  }
  return run(sub, cfg, opt, std::cout, std::cerr);
}

}  // namespace qps::cli
