#include "qbell/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <string>

#include "qbell/error.hpp"
#include "qbell/measurements.hpp"
#include "qbell/parallel.hpp"
#include "qbell/states.hpp"

namespace qbell {

std::size_t dimension_for_spin(double l) {
  double const d = 2.0 * l + 1.0;
  if (!std::isfinite(l) || d < 2.0 || std::abs(d - std::round(d)) > 1e-9) {
    std::ostringstream os;
    os << "invalid spin l = " << l << " (need 2l+1 to be an integer >= 2)";
    throw InvalidInput(os.str());
  }
  return static_cast<std::size_t>(std::llround(d));
}

double spin_for_dimension(std::size_t d) { return 0.5 * (static_cast<double>(d) - 1.0); }

namespace {

void require_samples(std::size_t n, char const* what) {
  if (n == 0) throw InvalidInput(std::string(what) + ": need at least one sample");
}

double perturbed_value(BellKind kind, PureState const& reference, MeasurementSettings const& settings,
                       double epsilon, PerturbationKind perturbation, std::uint64_t seed,
                       std::size_t index, HermitianEnsemble ensemble) {
  RandomStream rng = derive_stream(seed, index);
  PerturbationDraw const draw(perturbation, reference.local_dim(), rng, ensemble);
  return evaluate(kind, draw.apply(reference, epsilon), settings).value;
}

}  // namespace

SampleRun sample_distribution(BellKind kind, std::size_t d, double epsilon,
                              PerturbationKind perturbation, std::size_t n, std::uint64_t seed,
                              RunOptions const& options) {
  require_samples(n, "sample_distribution");
  PerturbationConfig{epsilon, perturbation, seed, options.ensemble}.validate();
  PureState const reference = bell_state(d);
  MeasurementSettings const settings = optimal_settings(d);

  SampleRun run{kind, d, epsilon, n, seed, std::vector<double>(n)};
  parallel_for(n, options.threads, [&](std::size_t i) {
    run.values[i] =
        perturbed_value(kind, reference, settings, epsilon, perturbation, seed, i, options.ensemble);
  });
  return run;
}

ViolationStats violation_stats(SampleRun const& run) {
  if (run.values.empty()) throw InvalidInput("violation_stats: empty run");
  double const bound = classical_bound(run.kind);
  ViolationStats s;
  s.n_samples = run.values.size();
  s.max_value = *std::max_element(run.values.begin(), run.values.end());
  s.n_violations = static_cast<std::size_t>(
      std::count_if(run.values.begin(), run.values.end(), [&](double v) { return v > bound; }));
  auto const n = static_cast<double>(s.n_samples);
  s.p_violation = static_cast<double>(s.n_violations) / n;
  s.std_error = std::sqrt(s.p_violation * (1.0 - s.p_violation) / n);
  return s;
}

std::vector<ProfilePoint> violation_profile(BellKind kind, double epsilon,
                                            std::span<double const> l_values, std::size_t n,
                                            std::uint64_t seed, PerturbationKind perturbation,
                                            RunOptions const& options) {
  std::vector<std::size_t> dims;
  dims.reserve(l_values.size());
  for (double l : l_values) dims.push_back(dimension_for_spin(l));

  std::vector<ProfilePoint> profile;
  profile.reserve(l_values.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    auto const stats =
        violation_stats(sample_distribution(kind, dims[i], epsilon, perturbation, n, seed, options));
    profile.push_back(ProfilePoint{l_values[i], stats.p_violation, stats.std_error});
  }
  return profile;
}

void EpsilonGrid::validate() const {
  if (!(lo > 0.0) || !(hi > lo) || !(factor > 1.0)) {
    throw InvalidInput("epsilon grid: need 0 < lo < hi and factor > 1");
  }
}

std::vector<double> EpsilonGrid::points() const {
  validate();
  std::vector<double> pts;
  for (int k = 0;; ++k) {
    double const eps = lo * std::pow(factor, k);
    if (eps >= hi * (1.0 - 1e-12)) break;
    pts.push_back(eps);
  }
  pts.push_back(hi);
  return pts;
}

std::string_view to_string(CriticalEpsilon::Status status) {
  switch (status) {
    case CriticalEpsilon::Status::Found: return "found";
    case CriticalEpsilon::Status::BelowRange: return "below-range";
    case CriticalEpsilon::Status::AboveRange: return "above-range";
  }
  return "?";
}

bool any_violation(BellKind kind, std::size_t d, double epsilon, PerturbationKind perturbation,
                   std::size_t n, std::uint64_t seed, RunOptions const& options) {
  require_samples(n, "any_violation");
  PerturbationConfig{epsilon, perturbation, seed, options.ensemble}.validate();
  PureState const reference = bell_state(d);
  MeasurementSettings const settings = optimal_settings(d);
  double const bound = classical_bound(kind);

  std::atomic<bool> found{false};
  parallel_for(n, options.threads, [&](std::size_t i) {
    if (found.load(std::memory_order_relaxed)) return;
    double const v =
        perturbed_value(kind, reference, settings, epsilon, perturbation, seed, i, options.ensemble);
    if (v > bound) found.store(true, std::memory_order_relaxed);
  });
  return found.load();
}

CriticalEpsilon critical_epsilon(BellKind kind, std::size_t d, std::size_t n, std::uint64_t seed,
                                 PerturbationKind perturbation, RunOptions const& options,
                                 EpsilonGrid const& grid, double rel_width) {
  require_samples(n, "critical_epsilon");
  if (!(rel_width > 0.0)) throw InvalidInput("critical_epsilon: rel_width must be > 0");
  std::vector<double> const pts = grid.points();

  CriticalEpsilon result;
  auto violates = [&](double eps) {
    ++result.evaluations;
    return any_violation(kind, d, eps, perturbation, n, seed, options);
  };

  std::size_t first_fail = pts.size();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!violates(pts[k])) {
      first_fail = k;
      break;
    }
  }
  if (first_fail == 0) {
    result.status = CriticalEpsilon::Status::BelowRange;
    result.value = 0.0;
    return result;
  }
  if (first_fail == pts.size()) {
    result.status = CriticalEpsilon::Status::AboveRange;
    result.value = pts.back();
    return result;
  }

  double good = pts[first_fail - 1];
  double bad = pts[first_fail];
  while (bad / good - 1.0 > rel_width) {
    double const mid = std::sqrt(good * bad);
    if (violates(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  result.value = good;
  result.status = CriticalEpsilon::Status::Found;
  return result;
}

std::string_view to_string(RandomBasisMeasure measure) {
  return measure == RandomBasisMeasure::Haar ? "haar" : "exp-hermitian";
}

RandomBasisMeasure parse_random_basis_measure(std::string_view text) {
  if (text == "haar") return RandomBasisMeasure::Haar;
  if (text == "exp-hermitian") return RandomBasisMeasure::ExpHermitian;
  throw InvalidInput("unknown random basis measure '" + std::string(text) + "'");
}

SampleRun random_measurement_run(std::size_t d, std::size_t n, std::uint64_t seed,
                                 RunOptions const& options, RandomBasisMeasure measure) {
  require_samples(n, "random_measurement_run");
  PureState const reference = bell_state(d);
  SampleRun run{BellKind::I, d, 0.0, n, seed, std::vector<double>(n)};
  parallel_for(n, options.threads, [&](std::size_t i) {
    RandomStream rng = derive_stream(seed, i);
    auto draw = [&] {
      if (measure == RandomBasisMeasure::Haar) return MeasurementBasis(haar_unitary(d, rng));
      return MeasurementBasis(expm_i_hermitian(random_hermitian(d, rng, options.ensemble), 1.0));
    };
    MeasurementBasis a1 = draw();
    MeasurementBasis a2 = draw();
    MeasurementBasis b1 = draw();
    MeasurementBasis b2 = draw();
    MeasurementSettings const settings(std::move(a1), std::move(a2), std::move(b1), std::move(b2));
    run.values[i] = evaluate_I(reference, settings).value;
  });
  return run;
}

}  // namespace qbell
