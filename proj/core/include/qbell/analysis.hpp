#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qbell/optimizer.hpp"

namespace qbell {

inline constexpr std::size_t kDefaultBins = 200;

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;
  std::size_t n_total = 0;

  std::size_t bins() const { return counts.size(); }
};

/// Equal-width bins over [min, max]; bins are right-open except the last.
/// A zero-width range is widened by 1e-9 on each side.
Histogram build_histogram(std::span<double const> values, std::size_t n_bins = kDefaultBins);

struct DataPoint {
  double x;
  double y;
};

/// Parameters of p(l) = (1/2) [1 - erf((l - l_bar) / delta)].
struct ErfFit {
  double l_bar = 0.0;
  double delta = 1.0;
  double residual = 0.0;
};

double erf_profile(double l, double l_bar, double delta);

/// Thrown when the erf-profile fit does not converge; carries the best
/// parameters found.
class FitNotConverged : public NumericalError {
 public:
  explicit FitNotConverged(ErfFit best);
  ErfFit const& best() const { return best_; }

 private:
  ErfFit best_;
};

/// Least-squares fit of the erf profile to (l, p) points via Nelder-Mead.
ErfFit fit_erf_profile(std::span<DataPoint const> points);

/// l_bar + delta * erfinv(1 - 2 p_star), the l at which the fitted profile
/// equals p_star.
double l_star(ErfFit const& fit, double p_star);

/// y ~ a / x^b from a straight-line fit of log y against log x.
struct PowerLawFit {
  double a = 1.0;
  double b = 0.0;
  /// Sum of squared residuals in log space.
  double residual = 0.0;

  /// Log-log slope d log y / d log x, i.e. -b.
  double slope() const { return -b; }
};

PowerLawFit fit_power_law(std::span<DataPoint const> points);

struct GaussianFit {
  double mu = 0.0;
  double sigma = 1.0;
  double skewness = 0.0;
};

/// Sample mean, sample standard deviation (n - 1) and sample skewness
/// (third central moment over the cube of the population deviation).
GaussianFit gaussian_summary(std::span<double const> values);

double median(std::span<double const> values);

}  // namespace qbell
