#pragma once

#include <cstddef>
#include <cstdint>

#include "qbell/experiments.hpp"

namespace qbell {

/// 2 exp(-d^2 eps^2 / (192 (6 + d) pi^3)): upper bound on P(|Id| >= eps)
/// for states uniform on the unit sphere.
double bound_main(std::size_t d, double epsilon);

/// 8 sqrt(2) (1 + s/3)^{1/2} with s = floor(d/2); bounds the Lipschitz
/// constant of Id as a function of the state.
double lipschitz_bound(std::size_t d);

/// exp(-3 d^2 eps^2 / (128 (6 + d))): the median-form bound, valid if the
/// median of Id is zero.
double bound_median(std::size_t d, double epsilon);

struct ConcentrationReport {
  std::size_t d = 0;
  double epsilon = 0.0;
  double bound_main = 0.0;
  double bound_median = 0.0;
  /// Fraction of sampled states with |Id| >= epsilon.
  double empirical_fraction = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  double mean = 0.0;
  double mean_std_error = 0.0;
  /// Empirical median; bound_median assumes this is zero.
  double median = 0.0;
  /// 1.2533 sigma / sqrt(n).
  double median_std_error = 0.0;
};

/// Id (optimal settings) of the states uniform_sphere_state(d^2) drawn
/// from derive_stream(seed, i), i = 0..n-1.
std::vector<double> sample_uniform_id(std::size_t d, std::size_t n, std::uint64_t seed,
                                      RunOptions const& options = {});

/// Summarizes sampled Id values against both bounds.
ConcentrationReport concentration_report(std::size_t d, double epsilon,
                                         std::span<double const> id_values);

ConcentrationReport empirical_concentration(std::size_t d, double epsilon, std::size_t n,
                                            std::uint64_t seed, RunOptions const& options = {});

}  // namespace qbell
