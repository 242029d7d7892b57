#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qbell/cli/runner.hpp"

namespace qbell::cli {

namespace {

struct Flags {
  std::string config;
  double l = 0.0;
  double l_max = 0.0;
  double epsilon = 0.0;
  std::string epsilon_grid;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::string perturbation;
  std::string kind;
  std::size_t restarts = 0;
  unsigned threads = 0;
  std::string output;
  std::string format;
  double p_star = 0.0;
  std::size_t bins = 0;
  std::string ensemble;
  std::string measure;
  double max_seconds = 0.0;
};

struct Bound {
  std::string key;
  CLI::Option* option;
};

std::vector<Bound> add_flags(CLI::App& app, Flags& f) {
  std::vector<Bound> b;
  b.push_back({"config", app.add_option("--config", f.config, "JSON file with spec fields; flags override it")});
  b.push_back({"l", app.add_option("--l", f.l, "single spin quantum number (d = 2l + 1)")});
  b.push_back({"l_max", app.add_option("--l-max", f.l_max, "sweep l in steps of 1/2 up to this value")});
  b.push_back({"epsilon", app.add_option("--epsilon", f.epsilon, "perturbation strength")});
  b.push_back({"epsilon_grid", app.add_option("--epsilon-grid", f.epsilon_grid, "geometric grid lo:hi:factor")});
  b.push_back({"samples", app.add_option("--samples", f.samples, "Monte Carlo samples (default 100000)")});
  b.push_back({"seed", app.add_option("--seed", f.seed, "master seed (default 1)")});
  b.push_back({"perturbation", app.add_option("--perturbation", f.perturbation, "bilocal or global")});
  b.push_back({"kind", app.add_option("--kind", f.kind, "Bell expression: I or Id")});
  b.push_back({"restarts", app.add_option("--restarts", f.restarts, "optimizer restarts (default 50)")});
  b.push_back({"threads", app.add_option("--threads", f.threads, "worker threads, 0 = all cores")});
  b.push_back({"output", app.add_option("--output,-o", f.output, "data file path")});
  b.push_back({"format", app.add_option("--format", f.format, "csv or json")});
  b.push_back({"p_star", app.add_option("--p-star", f.p_star, "threshold probability for l* (default 0.1)")});
  b.push_back({"bins", app.add_option("--bins", f.bins, "histogram bins (default 200)")});
  b.push_back({"ensemble", app.add_option("--ensemble", f.ensemble,
                                          "random Hermitian entries: magnitude-phase, uniform-parts, real-symmetric")});
  b.push_back({"measure", app.add_option("--measure", f.measure, "random bases: haar or exp-hermitian")});
  b.push_back({"max_seconds", app.add_option("--max-seconds", f.max_seconds, "optimizer wall-clock budget per restart")});
  return b;
}

template <class F>
auto field(std::string const& key, F&& parse) {
  try {
    return parse();
  } catch (SpecError const&) {
    throw;
  } catch (InvalidInput const& e) {
    throw SpecError(key, e.what());
  }
}

ExperimentSpec build_spec(Subcommand sub, Flags const& f, std::vector<Bound> const& bound) {
  ExperimentSpec spec;
  auto const given = [&](std::string const& key) {
    for (auto const& b : bound) {
      if (b.key == key) return b.option->count() > 0;
    }
    return false;
  };
  if (given("config")) {
    std::ifstream in(f.config);
    if (!in) throw SpecError("config", "cannot read '" + f.config + "'");
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_json(spec, text.str());
  }
  spec.subcommand = sub;
  if (given("l")) spec.l = f.l;
  if (given("l_max")) spec.l_max = f.l_max;
  if (given("epsilon")) {
    spec.epsilon = f.epsilon;
    if (!given("epsilon_grid")) spec.epsilon_grid.reset();
  }
  if (given("epsilon_grid")) {
    spec.epsilon_grid = parse_epsilon_grid(f.epsilon_grid);
    if (!given("epsilon")) spec.epsilon.reset();
  }
  if (given("samples")) spec.n_samples = f.samples;
  if (given("seed")) spec.seed = f.seed;
  if (given("perturbation")) spec.perturbation = field("perturbation", [&] { return parse_perturbation_kind(f.perturbation); });
  if (given("kind")) spec.kind = field("kind", [&] { return parse_bell_kind(f.kind); });
  if (given("restarts")) spec.restarts = f.restarts;
  if (given("threads")) spec.threads = f.threads;
  if (given("output")) spec.output = f.output;
  if (given("format")) spec.format = parse_output_format(f.format);
  if (given("p_star")) spec.p_star = f.p_star;
  if (given("bins")) spec.bins = f.bins;
  if (given("ensemble")) spec.ensemble = field("ensemble", [&] { return parse_hermitian_ensemble(f.ensemble); });
  if (given("measure")) spec.measure = field("measure", [&] { return parse_random_basis_measure(f.measure); });
  if (given("max_seconds")) spec.max_seconds = f.max_seconds;
  spec.validate();
  return spec;
}

std::string_view description(Subcommand s) {
  switch (s) {
    case Subcommand::Fig1: return "Bell values of the maximally entangled state at optimal settings";
    case Subcommand::Fig2: return "violation probability profiles with erf fits and l*";
    case Subcommand::Fig3: return "histogram of perturbed Bell values";
    case Subcommand::Fig4: return "maximum Bell value against perturbation strength";
    case Subcommand::Fig5: return "critical perturbation strength with power-law fits";
    case Subcommand::Fig6: return "histograms for random measurement bases";
    case Subcommand::Fig7: return "optimized settings for the maximally entangled state";
    case Subcommand::Fig8: return "optimized settings for random entangled and product states";
    case Subcommand::Appendix: return "concentration bounds against sampled uniform states";
  }
  return "";
}

}  // namespace

int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robustness of high-dimensional Bell inequality violations", "qbell"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  Flags flags;
  std::vector<std::pair<Subcommand, std::vector<Bound>>> subs;
  for (Subcommand s : all_subcommands()) {
    CLI::App* sub = app.add_subcommand(std::string(to_string(s)), std::string(description(s)));
    subs.emplace_back(s, add_flags(*sub, flags));
  }
  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e, out, err);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e, out, err);
  } catch (CLI::CallForVersion const& e) {
    return app.exit(e, out, err);
  } catch (CLI::ParseError const& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  try {
    for (auto const& [s, bound] : subs) {
      if (!app.got_subcommand(std::string(to_string(s)))) continue;
      ExperimentSpec const spec = build_spec(s, flags, bound);
      RunReport const report = run_experiment(spec);
      for (auto const& f : report.data_files) out << f.string() << '\n';
      out << report.meta_file.string() << '\n';
    }
  } catch (SpecError const& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (std::exception const& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace qbell::cli
