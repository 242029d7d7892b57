#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbell/bell.hpp"
#include "qbell/error.hpp"
#include "qbell/experiments.hpp"
#include "qbell/perturbations.hpp"

namespace qbell::cli {

enum class Subcommand { Fig1, Fig2, Fig3, Fig4, Fig5, Fig6, Fig7, Fig8, Appendix };

std::string_view to_string(Subcommand s);
Subcommand parse_subcommand(std::string_view text);
std::vector<Subcommand> all_subcommands();

enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat f);
OutputFormat parse_output_format(std::string_view text);

/// Invalid experiment specification; field() names the offending entry.
class SpecError : public InvalidInput {
 public:
  SpecError(std::string field, std::string const& message);
  std::string const& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct ExperimentSpec {
  Subcommand subcommand = Subcommand::Fig1;
  /// A single spin; when unset, the subcommand sweeps l_min..l_max in steps of 1/2.
  std::optional<double> l;
  std::optional<double> l_max;
  std::optional<double> epsilon;
  std::optional<EpsilonGrid> epsilon_grid;
  std::size_t n_samples = 100000;
  /// Unset means both kinds where a subcommand supports it.
  std::optional<PerturbationKind> perturbation;
  std::optional<BellKind> kind;
  std::uint64_t seed = 1;
  std::size_t restarts = 50;
  /// 0 selects the available parallelism.
  unsigned threads = 0;
  std::filesystem::path output;
  OutputFormat format = OutputFormat::Csv;
  double p_star = 0.1;
  std::size_t bins = 200;
  HermitianEnsemble ensemble = HermitianEnsemble::MagnitudePhase;
  RandomBasisMeasure measure = RandomBasisMeasure::Haar;
  /// Wall-clock budget per optimizer restart; 0 disables it.
  double max_seconds = 0.0;

  /// Throws SpecError.
  void validate() const;

  /// Spin values visited by the subcommand, after defaults.
  std::vector<double> spins() const;
  /// Epsilon values visited by the subcommand, after defaults.
  std::vector<double> epsilons() const;
  std::vector<PerturbationKind> perturbations() const;
  std::vector<BellKind> kinds() const;
  std::filesystem::path output_path() const;
};

/// Parses "lo:hi:factor".
EpsilonGrid parse_epsilon_grid(std::string_view text);
std::string format_epsilon_grid(EpsilonGrid const& grid);

/// Merges the keys of a JSON object into spec. Unknown keys are rejected.
void apply_config_json(ExperimentSpec& spec, std::string_view json_text);
/// All spec fields as a JSON object.
std::string spec_to_json(ExperimentSpec const& spec);

}  // namespace qbell::cli
