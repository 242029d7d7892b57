#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include "qbell/cli/spec.hpp"
#include "qbell/cli/table.hpp"

namespace qbell::cli {

/// Primary table first, then companions. Pure function of spec (threads aside).
std::vector<Table> compute_tables(ExperimentSpec const& spec);

/// Column names of every table produced by a subcommand, in order.
std::vector<std::vector<std::string>> table_schemas(Subcommand subcommand);

struct RunReport {
  std::vector<std::filesystem::path> data_files;
  std::filesystem::path meta_file;
};

/// Validates, computes and writes the data files plus the metadata sidecar.
RunReport run_experiment(ExperimentSpec const& spec);

/// Companion path: out.csv + "fits" -> out.fits.csv.
std::filesystem::path companion_path(std::filesystem::path const& output, std::string const& name);

/// Full command line entry point. Returns the process exit status.
int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

std::string_view version();

}  // namespace qbell::cli
