#include "qbell/cli/runner.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qbell/analysis.hpp"
#include "qbell/levy.hpp"
#include "qbell/optimizer.hpp"
#include "qbell/parallel.hpp"
#include "qbell/random.hpp"
#include "qbell/states.hpp"

namespace qbell::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kEntangledPerSpin = 5;
constexpr std::size_t kProductPerSpin = 2;

Cell str(std::string_view s) { return std::string(s); }
Cell integer(std::size_t n) { return static_cast<std::int64_t>(n); }
double nan() { return std::numeric_limits<double>::quiet_NaN(); }

RunOptions run_options(ExperimentSpec const& spec) {
  RunOptions o;
  o.threads = spec.threads;
  o.ensemble = spec.ensemble;
  return o;
}

OptimizeOptions optimize_options(ExperimentSpec const& spec) {
  OptimizeOptions o;
  o.threads = spec.threads == 0 ? default_threads() : spec.threads;
  return o;
}

/// Independent seed for a (subcommand-specific) sub-experiment.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return mix64(seed ^ mix64(a * 0x100000001b3ULL + b + 1));
}

std::vector<std::vector<std::string>> const& schema_for(Subcommand s) {
  static std::vector<std::vector<std::string>> const fig1{{"l", "I", "I_d"}};
  static std::vector<std::vector<std::string>> const fig2{
      {"kind", "epsilon", "l", "p_violation", "std_error", "n_samples"},
      {"kind", "epsilon", "l_bar", "delta", "residual", "converged", "p_star", "l_star"}};
  static std::vector<std::vector<std::string>> const fig3{
      {"bin_lo", "bin_hi", "count"},
      {"kind", "perturbation", "l", "epsilon", "n_samples", "mu", "sigma", "skewness", "max_value",
       "p_violation", "std_error"}};
  static std::vector<std::vector<std::string>> const fig4{
      {"kind", "perturbation", "l", "epsilon", "max_value", "p_violation", "std_error"}};
  static std::vector<std::vector<std::string>> const fig5{
      {"kind", "perturbation", "l", "epsilon_star", "status", "evaluations"},
      {"kind", "perturbation", "n_points", "a", "b", "slope", "residual"}};
  static std::vector<std::vector<std::string>> const fig6{
      {"l", "bin_lo", "bin_hi", "count"},
      {"l", "n_samples", "mu", "sigma", "skewness", "max_value", "p_violation"},
      {"quantity", "n_points", "a", "b", "slope", "residual"}};
  static std::vector<std::vector<std::string>> const fig7{
      {"kind", "l", "reference_value", "optimized_value", "classical_bound", "violation", "n_evals",
       "converged", "failed_restarts"}};
  static std::vector<std::vector<std::string>> const fig8{
      {"kind", "l", "state", "index", "reference_value", "optimized_value", "classical_bound",
       "violation"},
      {"kind", "l", "bell_state_value", "best_entangled", "best_product", "classical_bound"}};
  static std::vector<std::vector<std::string>> const appendix{
      {"d", "epsilon", "lipschitz_bound", "bound_main", "bound_median", "empirical_fraction",
       "std_error", "n_samples", "mean", "mean_std_error", "median", "median_std_error"}};
  switch (s) {
    case Subcommand::Fig1: return fig1;
    case Subcommand::Fig2: return fig2;
    case Subcommand::Fig3: return fig3;
    case Subcommand::Fig4: return fig4;
    case Subcommand::Fig5: return fig5;
    case Subcommand::Fig6: return fig6;
    case Subcommand::Fig7: return fig7;
    case Subcommand::Fig8: return fig8;
    case Subcommand::Appendix: return appendix;
  }
  return fig1;
}

std::vector<std::string> const kCompanionNames[] = {
    {}, {"fits"}, {"stats"}, {}, {"fits"}, {"stats", "fits"}, {}, {"summary"}, {}};

std::vector<Table> empty_tables(Subcommand s) {
  auto const& schemas = schema_for(s);
  auto const& names = kCompanionNames[static_cast<int>(s)];
  std::vector<Table> out(schemas.size());
  for (std::size_t i = 0; i < schemas.size(); ++i) {
    out[i].name = i == 0 ? "" : names[i - 1];
    out[i].columns = schemas[i];
  }
  return out;
}

void add_histogram_rows(Table& t, std::vector<Cell> const& prefix, Histogram const& h) {
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    std::vector<Cell> row = prefix;
    row.insert(row.end(), {h.bin_edges[b], h.bin_edges[b + 1], integer(h.counts[b])});
    t.add_row(std::move(row));
  }
}

GaussianFit summary_or_nan(std::span<double const> values) {
  try {
    return gaussian_summary(values);
  } catch (InvalidInput const&) {
    return {nan(), nan(), nan()};
  }
}

void fig1(ExperimentSpec const& spec, std::vector<Table>& t) {
  for (double l : spec.spins()) {
    std::size_t const d = dimension_for_spin(l);
    PureState const psi = bell_state(d);
    MeasurementSettings const s = optimal_settings(d);
    t[0].add_row({l, evaluate_I(psi, s).value, evaluate_Id(psi, s).value});
  }
}

void fig2(ExperimentSpec const& spec, std::vector<Table>& t) {
  auto const spins = spec.spins();
  for (BellKind kind : spec.kinds()) {
    for (double eps : spec.epsilons()) {
      auto const profile =
          violation_profile(kind, eps, spins, spec.n_samples, spec.seed, spec.perturbations()[0], run_options(spec));
      std::vector<DataPoint> pts;
      for (auto const& p : profile) {
        t[0].add_row({str(to_string(kind)), eps, p.l, p.p_violation, p.std_error, integer(spec.n_samples)});
        pts.push_back({p.l, p.p_violation});
      }
      if (pts.size() < 3) continue;
      ErfFit fit;
      std::int64_t converged = 1;
      try {
        fit = fit_erf_profile(pts);
      } catch (FitNotConverged const& e) {
        fit = e.best();
        converged = 0;
      }
      t[1].add_row({str(to_string(kind)), eps, fit.l_bar, fit.delta, fit.residual, converged, spec.p_star,
                    l_star(fit, spec.p_star)});
    }
  }
}

void fig3(ExperimentSpec const& spec, std::vector<Table>& t) {
  BellKind const kind = spec.kinds()[0];
  PerturbationKind const pk = spec.perturbations()[0];
  double const l = spec.spins()[0];
  double const eps = spec.epsilons()[0];
  SampleRun const run =
      sample_distribution(kind, dimension_for_spin(l), eps, pk, spec.n_samples, spec.seed, run_options(spec));
  add_histogram_rows(t[0], {}, build_histogram(run.values, spec.bins));
  GaussianFit const g = summary_or_nan(run.values);
  ViolationStats const v = violation_stats(run);
  t[1].add_row({str(to_string(kind)), str(to_string(pk)), l, eps, integer(spec.n_samples), g.mu, g.sigma,
                g.skewness, v.max_value, v.p_violation, v.std_error});
}

void fig4(ExperimentSpec const& spec, std::vector<Table>& t) {
  for (BellKind kind : spec.kinds()) {
    for (PerturbationKind pk : spec.perturbations()) {
      for (double l : spec.spins()) {
        for (double eps : spec.epsilons()) {
          SampleRun const run = sample_distribution(kind, dimension_for_spin(l), eps, pk, spec.n_samples,
                                                    spec.seed, run_options(spec));
          ViolationStats const v = violation_stats(run);
          t[0].add_row({str(to_string(kind)), str(to_string(pk)), l, eps, v.max_value, v.p_violation, v.std_error});
        }
      }
    }
  }
}

void fig5(ExperimentSpec const& spec, std::vector<Table>& t) {
  EpsilonGrid const grid = spec.epsilon_grid.value_or(EpsilonGrid{});
  for (BellKind kind : spec.kinds()) {
    for (PerturbationKind pk : spec.perturbations()) {
      std::vector<DataPoint> pts;
      for (double l : spec.spins()) {
        CriticalEpsilon const c = critical_epsilon(kind, dimension_for_spin(l), spec.n_samples, spec.seed, pk,
                                                   run_options(spec), grid);
        t[0].add_row({str(to_string(kind)), str(to_string(pk)), l, c.value, str(to_string(c.status)),
                      integer(c.evaluations)});
        if (c.status != CriticalEpsilon::Status::BelowRange) pts.push_back({l, c.value});
      }
      if (pts.size() < 2) continue;
      PowerLawFit const f = fit_power_law(pts);
      t[1].add_row({str(to_string(kind)), str(to_string(pk)), integer(pts.size()), f.a, f.b, f.slope(), f.residual});
    }
  }
}

void fig6(ExperimentSpec const& spec, std::vector<Table>& t) {
  std::vector<DataPoint> means, sigmas;
  for (double l : spec.spins()) {
    SampleRun const run =
        random_measurement_run(dimension_for_spin(l), spec.n_samples, spec.seed, run_options(spec), spec.measure);
    add_histogram_rows(t[0], {l}, build_histogram(run.values, spec.bins));
    GaussianFit const g = summary_or_nan(run.values);
    ViolationStats const v = violation_stats(run);
    t[1].add_row({l, integer(spec.n_samples), g.mu, g.sigma, g.skewness, v.max_value, v.p_violation});
    means.push_back({l, g.mu});
    sigmas.push_back({l, g.sigma});
  }
  if (means.size() < 2) return;
  for (auto const& [name, pts] : {std::pair{"mean", &means}, std::pair{"sigma", &sigmas}}) {
    PowerLawFit const f = fit_power_law(*pts);
    t[2].add_row({str(name), integer(pts->size()), f.a, f.b, f.slope(), f.residual});
  }
}

SimplexConfig simplex_config(ExperimentSpec const& spec) {
  SimplexConfig c;
  c.max_seconds = spec.max_seconds;
  return c;
}

void fig7(ExperimentSpec const& spec, std::vector<Table>& t) {
  for (BellKind kind : spec.kinds()) {
    for (double l : spec.spins()) {
      std::size_t const d = dimension_for_spin(l);
      PureState const psi = bell_state(d);
      OptimizationResult const r = optimize_settings(psi, kind, spec.restarts, sub_seed(spec.seed, d, 0),
                                                     simplex_config(spec), optimize_options(spec));
      double const bound = classical_bound(kind);
      t[0].add_row({str(to_string(kind)), l, evaluate(kind, psi, optimal_settings(d)).value, r.best_value, bound,
                    std::int64_t{r.best_value > bound}, integer(r.n_evals), std::int64_t{r.converged},
                    integer(r.failures.size())});
    }
  }
}

void fig8(ExperimentSpec const& spec, std::vector<Table>& t) {
  for (BellKind kind : spec.kinds()) {
    double const bound = classical_bound(kind);
    for (double l : spec.spins()) {
      std::size_t const d = dimension_for_spin(l);
      MeasurementSettings const opt = optimal_settings(d);
      double best[2] = {-4.0, -4.0};
      for (std::size_t idx = 0; idx < kEntangledPerSpin + kProductPerSpin; ++idx) {
        bool const entangled = idx < kEntangledPerSpin;
        std::size_t const local = entangled ? idx : idx - kEntangledPerSpin;
        RandomStream rng = derive_stream(sub_seed(spec.seed, d, 1), idx);
        PureState const psi = entangled ? random_entangled_state(d, rng) : random_product_state(d, rng);
        OptimizationResult const r = optimize_settings(psi, kind, spec.restarts, sub_seed(spec.seed, d, 2 + idx),
                                                       simplex_config(spec), optimize_options(spec));
        best[entangled ? 0 : 1] = std::max(best[entangled ? 0 : 1], r.best_value);
        t[0].add_row({str(to_string(kind)), l, str(entangled ? "entangled" : "product"), integer(local),
                      evaluate(kind, psi, opt).value, r.best_value, bound, std::int64_t{r.best_value > bound}});
      }
      t[1].add_row({str(to_string(kind)), l, evaluate(kind, bell_state(d), opt).value, best[0], best[1], bound});
    }
  }
}

void appendix(ExperimentSpec const& spec, std::vector<Table>& t) {
  for (double l : spec.spins()) {
    std::size_t const d = dimension_for_spin(l);
    auto const values = sample_uniform_id(d, spec.n_samples, spec.seed, run_options(spec));
    for (double eps : spec.epsilons()) {
      ConcentrationReport const r = concentration_report(d, eps, values);
      t[0].add_row({integer(d), eps, lipschitz_bound(d), r.bound_main, r.bound_median, r.empirical_fraction,
                    r.std_error, integer(r.n_samples), r.mean, r.mean_std_error, r.median, r.median_std_error});
    }
  }
}

json cell_json(Cell const& c) {
  if (auto const* d = std::get_if<double>(&c)) return std::isfinite(*d) ? json(*d) : json(nullptr);
  if (auto const* i = std::get_if<std::int64_t>(&c)) return json(*i);
  return json(std::get<std::string>(c));
}

std::string utc_timestamp() {
  std::time_t const now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(std::filesystem::path const& path, std::string const& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SpecError("output", "cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw SpecError("output", "failed writing '" + path.string() + "'");
}

}  // namespace

std::string_view version() { return QBELL_VERSION; }

std::vector<std::vector<std::string>> table_schemas(Subcommand subcommand) { return schema_for(subcommand); }

std::vector<Table> compute_tables(ExperimentSpec const& spec) {
  spec.validate();
  std::vector<Table> tables = empty_tables(spec.subcommand);
  switch (spec.subcommand) {
    case Subcommand::Fig1: fig1(spec, tables); break;
    case Subcommand::Fig2: fig2(spec, tables); break;
    case Subcommand::Fig3: fig3(spec, tables); break;
    case Subcommand::Fig4: fig4(spec, tables); break;
    case Subcommand::Fig5: fig5(spec, tables); break;
    case Subcommand::Fig6: fig6(spec, tables); break;
    case Subcommand::Fig7: fig7(spec, tables); break;
    case Subcommand::Fig8: fig8(spec, tables); break;
    case Subcommand::Appendix: appendix(spec, tables); break;
  }
  return tables;
}

std::filesystem::path companion_path(std::filesystem::path const& output, std::string const& name) {
  std::filesystem::path p = output;
  std::string const ext = p.extension().string();
  p.replace_extension();
  p += "." + name + ext;
  return p;
}

RunReport run_experiment(ExperimentSpec const& spec) {
  spec.validate();
  std::filesystem::path const out = spec.output_path();
  std::vector<Table> const tables = compute_tables(spec);

  RunReport report;
  if (spec.format == OutputFormat::Csv) {
    for (auto const& t : tables) {
      std::ostringstream os;
      write_csv(os, t);
      std::filesystem::path const path = t.name.empty() ? out : companion_path(out, t.name);
      write_file(path, os.str());
      report.data_files.push_back(path);
    }
  } else {
    json doc;
    doc["subcommand"] = std::string(to_string(spec.subcommand));
    doc["tables"] = json::array();
    for (auto const& t : tables) {
      json rows = json::array();
      for (auto const& r : t.rows) {
        json row = json::array();
        for (auto const& c : r) row.push_back(cell_json(c));
        rows.push_back(std::move(row));
      }
      doc["tables"].push_back({{"name", t.name.empty() ? "main" : t.name}, {"columns", t.columns}, {"rows", rows}});
    }
    write_file(out, doc.dump(1) + "\n");
    report.data_files.push_back(out);
  }

  json meta;
  meta["subcommand"] = std::string(to_string(spec.subcommand));
  meta["parameters"] = json::parse(spec_to_json(spec));
  meta["seed"] = spec.seed;
  meta["timestamp"] = utc_timestamp();
  meta["version"] = std::string(version());
  meta["files"] = json::array();
  for (auto const& f : report.data_files) meta["files"].push_back(f.filename().string());
  report.meta_file = out;
  report.meta_file += ".meta.json";
  write_file(report.meta_file, meta.dump(2) + "\n");
  return report;
}

}  // namespace qbell::cli
