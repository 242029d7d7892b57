#include "qbell/cli/spec.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qbell/cli/table.hpp"

namespace qbell::cli {

namespace {

using nlohmann::json;

constexpr Subcommand kSubcommands[] = {Subcommand::Fig1, Subcommand::Fig2, Subcommand::Fig3,
                                       Subcommand::Fig4, Subcommand::Fig5, Subcommand::Fig6,
                                       Subcommand::Fig7, Subcommand::Fig8, Subcommand::Appendix};

double default_l_min(Subcommand s) {
  switch (s) {
    case Subcommand::Fig6:
    case Subcommand::Appendix: return 1.0;
    default: return 0.5;
  }
}

double default_l_max(Subcommand s) {
  switch (s) {
    case Subcommand::Fig1:
    case Subcommand::Fig2: return 10.0;
    case Subcommand::Fig4:
    case Subcommand::Fig5: return 4.0;
    case Subcommand::Fig6: return 5.0;
    case Subcommand::Fig7:
    case Subcommand::Fig8: return 2.5;
    default: return 1.0;
  }
}

bool uses_spin_range(Subcommand s) {
  return s != Subcommand::Fig3;
}

bool uses_epsilon(Subcommand s) {
  switch (s) {
    case Subcommand::Fig2:
    case Subcommand::Fig3:
    case Subcommand::Fig4:
    case Subcommand::Fig5:
    case Subcommand::Appendix: return true;
    default: return false;
  }
}

double parse_number(std::string_view text, std::string const& field) {
  double x = 0.0;
  auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw SpecError(field, "not a number: '" + std::string(text) + "'");
  }
  return x;
}

template <class T>
T get_field(json const& value, std::string const& key) {
  try {
    return value.get<T>();
  } catch (json::exception const&) {
    throw SpecError(key, "has the wrong type");
  }
}

template <class F>
auto parse_field(std::string const& key, F&& parse) {
  try {
    return parse();
  } catch (SpecError const&) {
    throw;
  } catch (InvalidInput const& e) {
    throw SpecError(key, e.what());
  }
}

}  // namespace

std::string_view to_string(Subcommand s) {
  switch (s) {
    case Subcommand::Fig1: return "fig1";
    case Subcommand::Fig2: return "fig2";
    case Subcommand::Fig3: return "fig3";
    case Subcommand::Fig4: return "fig4";
    case Subcommand::Fig5: return "fig5";
    case Subcommand::Fig6: return "fig6";
    case Subcommand::Fig7: return "fig7";
    case Subcommand::Fig8: return "fig8";
    case Subcommand::Appendix: return "appendix";
  }
  return "?";
}

Subcommand parse_subcommand(std::string_view text) {
  for (Subcommand s : kSubcommands) {
    if (to_string(s) == text) return s;
  }
  throw SpecError("subcommand", "unknown value '" + std::string(text) + "'");
}

std::vector<Subcommand> all_subcommands() {
  return {std::begin(kSubcommands), std::end(kSubcommands)};
}

std::string_view to_string(OutputFormat f) {
  return f == OutputFormat::Csv ? "csv" : "json";
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw SpecError("format", "expected csv or json, got '" + std::string(text) + "'");
}

SpecError::SpecError(std::string field, std::string const& message)
    : InvalidInput(field + ": " + message), field_(std::move(field)) {}

EpsilonGrid parse_epsilon_grid(std::string_view text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t const colon = text.find(':', start);
    parts.push_back(parse_number(text.substr(start, colon - start), "epsilon_grid"));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw SpecError("epsilon_grid", "expected lo:hi:factor");
  EpsilonGrid const grid{parts[0], parts[1], parts[2]};
  parse_field("epsilon_grid", [&] {
    grid.validate();
    return 0;
  });
  return grid;
}

std::string format_epsilon_grid(EpsilonGrid const& grid) {
  return format_double(grid.lo) + ":" + format_double(grid.hi) + ":" + format_double(grid.factor);
}

void ExperimentSpec::validate() const {
  if (l) parse_field("l", [&] { return dimension_for_spin(*l); });
  if (l_max) {
    parse_field("l_max", [&] { return dimension_for_spin(*l_max); });
    if (*l_max < default_l_min(subcommand)) {
      throw SpecError("l_max", "must be at least " + format_double(default_l_min(subcommand)));
    }
  }
  if (l && l_max) throw SpecError("l_max", "cannot be combined with l");
  if (epsilon && epsilon_grid) throw SpecError("epsilon_grid", "cannot be combined with epsilon");
  if (epsilon && !(std::isfinite(*epsilon) && *epsilon >= 0.0)) {
    throw SpecError("epsilon", "must be finite and non-negative");
  }
  if (epsilon_grid) {
    parse_field("epsilon_grid", [&] {
      epsilon_grid->validate();
      return 0;
    });
  }
  if (subcommand == Subcommand::Fig5 && epsilon) {
    throw SpecError("epsilon", "fig5 scans a grid; use epsilon_grid");
  }
  if (!uses_epsilon(subcommand) && (epsilon || epsilon_grid)) {
    throw SpecError(epsilon ? "epsilon" : "epsilon_grid",
                    "not used by " + std::string(to_string(subcommand)));
  }
  if (n_samples < 1) throw SpecError("samples", "must be at least 1");
  if (restarts < 1) throw SpecError("restarts", "must be at least 1");
  if (bins < 1) throw SpecError("bins", "must be at least 1");
  if (!(std::isfinite(max_seconds) && max_seconds >= 0.0)) {
    throw SpecError("max_seconds", "must be finite and non-negative");
  }
  if (!(p_star > 0.0 && p_star < 1.0)) throw SpecError("p_star", "must lie in (0, 1)");
  if (subcommand == Subcommand::Appendix && kind && *kind != BellKind::Id) {
    throw SpecError("kind", "appendix only covers Id");
  }
}

std::vector<double> ExperimentSpec::spins() const {
  if (l) return {*l};
  if (!uses_spin_range(subcommand)) return {1.0};
  if (subcommand == Subcommand::Appendix && !l_max) return {1.0, 2.0, 4.0};
  double const lo = default_l_min(subcommand);
  double const hi = l_max.value_or(default_l_max(subcommand));
  std::vector<double> out;
  for (int twice = static_cast<int>(std::lround(2.0 * lo)); twice <= std::lround(2.0 * hi); ++twice) {
    out.push_back(0.5 * twice);
  }
  return out;
}

std::vector<double> ExperimentSpec::epsilons() const {
  if (epsilon) return {*epsilon};
  if (epsilon_grid) return epsilon_grid->points();
  switch (subcommand) {
    case Subcommand::Fig2: return {0.12, 0.18, 0.23, 0.29, 0.41};
    case Subcommand::Fig3: return {0.233};
    case Subcommand::Fig4:
    case Subcommand::Fig5: return EpsilonGrid{}.points();
    case Subcommand::Appendix: return {0.25, 0.5, 1.0};
    default: return {};
  }
}

std::vector<PerturbationKind> ExperimentSpec::perturbations() const {
  if (perturbation) return {*perturbation};
  if (subcommand == Subcommand::Fig5) return {PerturbationKind::Bilocal, PerturbationKind::Global};
  return {PerturbationKind::Bilocal};
}

std::vector<BellKind> ExperimentSpec::kinds() const {
  if (kind) return {*kind};
  switch (subcommand) {
    case Subcommand::Fig2:
    case Subcommand::Fig5:
    case Subcommand::Fig7:
    case Subcommand::Fig8: return {BellKind::I, BellKind::Id};
    case Subcommand::Appendix: return {BellKind::Id};
    default: return {BellKind::I};
  }
}

std::filesystem::path ExperimentSpec::output_path() const {
  if (!output.empty()) return output;
  return std::string(to_string(subcommand)) + (format == OutputFormat::Csv ? ".csv" : ".json");
}

void apply_config_json(ExperimentSpec& spec, std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (json::parse_error const& e) {
    throw SpecError("config", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SpecError("config", "expected a JSON object");
  for (auto const& [key, value] : doc.items()) {
    if (value.is_null()) {
      if (key == "l") spec.l.reset();
      else if (key == "l_max") spec.l_max.reset();
      else if (key == "epsilon") spec.epsilon.reset();
      else if (key == "epsilon_grid") spec.epsilon_grid.reset();
      else if (key == "perturbation") spec.perturbation.reset();
      else if (key == "kind") spec.kind.reset();
      else throw SpecError(key, "cannot be null");
      continue;
    }
    auto const str = [&] { return get_field<std::string>(value, key); };
    auto const num = [&] { return get_field<double>(value, key); };
    auto const count = [&] {
      if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw SpecError(key, "must be a non-negative integer");
      }
      return value.get<std::uint64_t>();
    };
    if (key == "subcommand") {
      spec.subcommand = parse_subcommand(str());
    } else if (key == "l") {
      spec.l = num();
    } else if (key == "l_max") {
      spec.l_max = num();
    } else if (key == "epsilon") {
      spec.epsilon = num();
    } else if (key == "epsilon_grid") {
      spec.epsilon_grid = parse_epsilon_grid(str());
    } else if (key == "samples") {
      spec.n_samples = count();
    } else if (key == "seed") {
      spec.seed = count();
    } else if (key == "perturbation") {
      spec.perturbation = parse_field(key, [&] { return parse_perturbation_kind(str()); });
    } else if (key == "kind") {
      spec.kind = parse_field(key, [&] { return parse_bell_kind(str()); });
    } else if (key == "restarts") {
      spec.restarts = count();
    } else if (key == "threads") {
      spec.threads = static_cast<unsigned>(count());
    } else if (key == "output") {
      spec.output = str();
    } else if (key == "format") {
      spec.format = parse_output_format(str());
    } else if (key == "p_star") {
      spec.p_star = num();
    } else if (key == "bins") {
      spec.bins = count();
    } else if (key == "ensemble") {
      spec.ensemble = parse_field(key, [&] { return parse_hermitian_ensemble(str()); });
    } else if (key == "max_seconds") {
      spec.max_seconds = num();
    } else if (key == "measure") {
      spec.measure = parse_field(key, [&] { return parse_random_basis_measure(str()); });
    } else {
      throw SpecError(key, "unknown configuration key");
    }
  }
}

std::string spec_to_json(ExperimentSpec const& spec) {
  json doc;
  doc["subcommand"] = std::string(to_string(spec.subcommand));
  doc["l"] = spec.l ? json(*spec.l) : json(nullptr);
  doc["l_max"] = spec.l_max ? json(*spec.l_max) : json(nullptr);
  doc["epsilon"] = spec.epsilon ? json(*spec.epsilon) : json(nullptr);
  doc["epsilon_grid"] = spec.epsilon_grid ? json(format_epsilon_grid(*spec.epsilon_grid)) : json(nullptr);
  doc["samples"] = spec.n_samples;
  doc["seed"] = spec.seed;
  doc["perturbation"] = spec.perturbation ? json(std::string(to_string(*spec.perturbation))) : json(nullptr);
  doc["kind"] = spec.kind ? json(std::string(to_string(*spec.kind))) : json(nullptr);
  doc["restarts"] = spec.restarts;
  doc["threads"] = spec.threads;
  doc["output"] = spec.output_path().string();
  doc["format"] = std::string(to_string(spec.format));
  doc["p_star"] = spec.p_star;
  doc["bins"] = spec.bins;
  doc["ensemble"] = std::string(to_string(spec.ensemble));
  doc["measure"] = std::string(to_string(spec.measure));
  doc["max_seconds"] = spec.max_seconds;
  return doc.dump(2);
}

}  // namespace qbell::cli
