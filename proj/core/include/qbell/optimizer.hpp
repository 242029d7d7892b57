#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qbell/bell.hpp"
#include "qbell/error.hpp"
#include "qbell/measurements.hpp"
#include "qbell/numerics.hpp"
#include "qbell/states.hpp"

namespace qbell {

struct SimplexConfig {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  std::size_t max_evals = 100000;
  /// Stop once max f - min f over the simplex vertices drops below this.
  double spread_tol = 1e-8;
  /// If positive, additionally require every vertex to lie within x_tol
  /// (max norm) of the best one.
  double x_tol = 0.0;
  /// Edge length of the initial simplex. Zero selects 5% of |x0_i|
  /// (0.00025 for zero coordinates).
  double initial_step = 0.0;
  /// Wall-clock limit in seconds; zero means unlimited.
  double max_seconds = 0.0;

  void validate() const;
};

struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t n_evals = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<double const>)>;

/// Thrown when the objective returns NaN or infinity.
class NonFiniteObjective : public NumericalError {
 public:
  NonFiniteObjective(std::vector<double> point, double value);

  std::vector<double> const& point() const { return point_; }
  double value() const { return value_; }

 private:
  std::vector<double> point_;
  double value_;
};

/// Minimizes `objective` with the Nelder-Mead downhill simplex method. The
/// evaluation budget is checked once per iteration, so a final shrink step
/// may overshoot max_evals by at most dim evaluations.
SimplexResult nelder_mead(Objective const& objective, std::span<double const> x0,
                          SimplexConfig const& config = {});

/// Hermitian generators of the four observables. The observables have
/// spectrum 0..d-1 and eigenbasis given by the columns of exp(i G).
struct ObservableParams {
  std::array<HermitianMatrix, 4> generators;  // A1, A2, B1, B2

  std::size_t local_dim() const { return generators[0].dim(); }

  /// 4 d^2 reals: per generator the diagonal, then (re, im) of each
  /// upper-triangle entry in row order.
  std::vector<double> to_vector() const;
  static ObservableParams from_vector(std::size_t d, std::span<double const> x);

  static ObservableParams zero(std::size_t d);
  static ObservableParams random(std::size_t d, RandomStream& rng);
};

MeasurementSettings params_to_settings(ObservableParams const& params);

/// Inverse of params_to_settings via the principal matrix logarithm of each
/// basis matrix (eigenphases taken in (-pi, pi]).
ObservableParams settings_to_params(MeasurementSettings const& settings);

/// Hermitian G with exp(i G) = U, eigenphases in (-pi, pi].
HermitianMatrix hermitian_log(UnitaryMatrix const& u);

struct OptimizationResult {
  double best_value = 0.0;
  ObservableParams best_params;
  std::size_t n_evals = 0;
  bool converged = false;
  /// Best value of each restart (NaN for a failed restart).
  std::vector<double> restart_values;
  std::vector<std::string> failures;
};

struct OptimizeOptions {
  unsigned threads = 1;
  /// Successive simplex runs started from the previous best point, stopping
  /// early once a run improves the value by less than refine_tol.
  std::size_t refinements = 4;
  double refine_tol = 1e-9;
};

/// Maximizes the Bell expression over the observables for a fixed state.
/// Restart r starts from ObservableParams::random(d, derive_stream(seed, r)).
OptimizationResult optimize_settings(PureState const& state, BellKind kind, std::size_t restarts,
                                     std::uint64_t seed, SimplexConfig const& config = {},
                                     OptimizeOptions const& options = {});

}  // namespace qbell
