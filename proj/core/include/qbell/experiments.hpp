#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qbell/bell.hpp"
#include "qbell/perturbations.hpp"

namespace qbell {

/// One Monte Carlo sweep. values[i] depends only on (arguments, seed, i).
struct SampleRun {
  BellKind kind = BellKind::I;
  std::size_t local_dim = 0;
  double epsilon = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;
};

struct RunOptions {
  /// Worker count; 0 selects the hardware concurrency. Results do not
  /// depend on this value.
  unsigned threads = 0;
  HermitianEnsemble ensemble = HermitianEnsemble::MagnitudePhase;
};

/// d = 2 l + 1. Throws InvalidInput naming `l` unless d is an integer >= 2.
std::size_t dimension_for_spin(double l);
double spin_for_dimension(std::size_t d);

/// Perturbs bell_state(d) with the stream derive_stream(seed, i) and
/// evaluates `kind` with optimal_settings(d), for i = 0..n-1.
SampleRun sample_distribution(BellKind kind, std::size_t d, double epsilon,
                              PerturbationKind perturbation, std::size_t n, std::uint64_t seed,
                              RunOptions const& options = {});

struct ViolationStats {
  double p_violation = 0.0;
  double std_error = 0.0;
  double max_value = 0.0;
  std::size_t n_violations = 0;
  std::size_t n_samples = 0;
};

/// Fraction of values strictly above classical_bound(run.kind).
ViolationStats violation_stats(SampleRun const& run);

struct ProfilePoint {
  double l = 0.0;
  double p_violation = 0.0;
  double std_error = 0.0;
};

/// violation_stats of sample_distribution at each l, same epsilon, n, seed.
std::vector<ProfilePoint> violation_profile(BellKind kind, double epsilon,
                                            std::span<double const> l_values, std::size_t n,
                                            std::uint64_t seed,
                                            PerturbationKind perturbation = PerturbationKind::Bilocal,
                                            RunOptions const& options = {});

/// Geometric grid lo, lo*factor, ... capped by a final point at hi.
struct EpsilonGrid {
  double lo = 1e-3;
  double hi = 2.0;
  double factor = 1.2;

  void validate() const;
  std::vector<double> points() const;
};

struct CriticalEpsilon {
  enum class Status {
    Found,
    /// No sample violates even at the smallest grid point.
    BelowRange,
    /// Samples still violate at the largest grid point; value = grid.hi.
    AboveRange,
  };
  double value = 0.0;
  Status status = Status::Found;
  /// Number of epsilon values at which the predicate was evaluated.
  std::size_t evaluations = 0;
};

std::string_view to_string(CriticalEpsilon::Status status);

/// True if any of the n samples of sample_distribution exceeds the bound.
/// Stops at the first violating sample; the answer is order independent.
bool any_violation(BellKind kind, std::size_t d, double epsilon, PerturbationKind perturbation,
                   std::size_t n, std::uint64_t seed, RunOptions const& options = {});

/// Scans the grid upward until the "any violation among n samples"
/// predicate first fails, then bisects (in log epsilon) between the last
/// violating and first non-violating grid points down to relative width
/// rel_width. Returns the violating end of the final bracket.
CriticalEpsilon critical_epsilon(BellKind kind, std::size_t d, std::size_t n, std::uint64_t seed,
                                 PerturbationKind perturbation = PerturbationKind::Bilocal,
                                 RunOptions const& options = {}, EpsilonGrid const& grid = {},
                                 double rel_width = 1e-2);

/// How the random measurement bases are drawn.
enum class RandomBasisMeasure {
  Haar,
  /// Columns of exp(i G), G = random_hermitian(d).
  ExpHermitian,
};

std::string_view to_string(RandomBasisMeasure measure);
RandomBasisMeasure parse_random_basis_measure(std::string_view text);

/// I on bell_state(d) with four independently drawn random bases per sample.
SampleRun random_measurement_run(std::size_t d, std::size_t n, std::uint64_t seed,
                                 RunOptions const& options = {},
                                 RandomBasisMeasure measure = RandomBasisMeasure::Haar);

}  // namespace qbell
