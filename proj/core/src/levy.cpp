#include "qbell/levy.hpp"

#include <cmath>
#include <numbers>

#include "qbell/analysis.hpp"
#include "qbell/error.hpp"
#include "qbell/parallel.hpp"

namespace qbell {

namespace {

void check_args(std::size_t d, double epsilon, char const* what) {
  if (d < 2) throw InvalidInput(std::string(what) + ": d must be >= 2");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInput(std::string(what) + ": epsilon must be positive and finite");
  }
}

}  // namespace

double bound_main(std::size_t d, double epsilon) {
  check_args(d, epsilon, "bound_main");
  double const dd = static_cast<double>(d);
  double const pi3 = std::pow(std::numbers::pi, 3);
  return 2.0 * std::exp(-(dd * dd * epsilon * epsilon) / (192.0 * (6.0 + dd) * pi3));
}

double lipschitz_bound(std::size_t d) {
  if (d < 2) throw InvalidInput("lipschitz_bound: d must be >= 2");
  double const s = static_cast<double>(d / 2);
  return 8.0 * std::numbers::sqrt2 * std::sqrt(1.0 + s / 3.0);
}

double bound_median(std::size_t d, double epsilon) {
  check_args(d, epsilon, "bound_median");
  double const dd = static_cast<double>(d);
  return std::exp(-3.0 * dd * dd * epsilon * epsilon / (128.0 * (6.0 + dd)));
}

std::vector<double> sample_uniform_id(std::size_t d, std::size_t n, std::uint64_t seed,
                                      RunOptions const& options) {
  if (n == 0) throw InvalidInput("empirical_concentration: need at least one sample");
  MeasurementSettings const settings = optimal_settings(d);
  std::vector<double> values(n);
  parallel_for(n, options.threads, [&](std::size_t i) {
    RandomStream rng = derive_stream(seed, i);
    PureState const state(d, uniform_sphere_state(d * d, rng));
    values[i] = evaluate_Id(state, settings).value;
  });
  return values;
}

ConcentrationReport concentration_report(std::size_t d, double epsilon,
                                         std::span<double const> id_values) {
  if (id_values.empty()) throw InvalidInput("concentration_report: no samples");
  ConcentrationReport r;
  r.d = d;
  r.epsilon = epsilon;
  r.bound_main = bound_main(d, epsilon);
  r.bound_median = bound_median(d, epsilon);
  r.n_samples = id_values.size();
  auto const n = static_cast<double>(r.n_samples);

  std::size_t above = 0;
  double sum = 0.0;
  for (double v : id_values) {
    if (std::abs(v) >= epsilon) ++above;
    sum += v;
  }
  r.empirical_fraction = static_cast<double>(above) / n;
  r.std_error = std::sqrt(r.empirical_fraction * (1.0 - r.empirical_fraction) / n);
  r.mean = sum / n;
  double ss = 0.0;
  for (double v : id_values) ss += (v - r.mean) * (v - r.mean);
  double const sigma = r.n_samples > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  r.mean_std_error = sigma / std::sqrt(n);
  r.median = median(id_values);
  r.median_std_error = 1.2533 * sigma / std::sqrt(n);
  return r;
}

ConcentrationReport empirical_concentration(std::size_t d, double epsilon, std::size_t n,
                                            std::uint64_t seed, RunOptions const& options) {
  check_args(d, epsilon, "empirical_concentration");
  auto const values = sample_uniform_id(d, n, seed, options);
  return concentration_report(d, epsilon, values);
}

}  // namespace qbell
