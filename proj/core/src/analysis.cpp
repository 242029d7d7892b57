#include "qbell/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/erf.hpp>

namespace qbell {

Histogram build_histogram(std::span<double const> values, std::size_t n_bins) {
  if (values.empty()) throw InvalidInput("build_histogram: no values");
  if (n_bins == 0) throw InvalidInput("build_histogram: need at least one bin");
  auto const [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  double lo = *min_it;
  double hi = *max_it;
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw InvalidInput("build_histogram: non-finite value");
  if (hi <= lo) {
    lo -= 1e-9;
    hi += 1e-9;
  }

  Histogram h;
  h.bin_edges.resize(n_bins + 1);
  double const width = (hi - lo) / static_cast<double>(n_bins);
  for (std::size_t i = 0; i <= n_bins; ++i) h.bin_edges[i] = lo + width * static_cast<double>(i);
  h.bin_edges.back() = hi;
  h.counts.assign(n_bins, 0);
  for (double v : values) {
    auto bin = static_cast<std::size_t>((v - lo) / width);
    // Rounding can push v into the next bin near an edge; fix against the edges.
    bin = std::min(bin, n_bins - 1);
    while (bin > 0 && v < h.bin_edges[bin]) --bin;
    while (bin + 1 < n_bins && v >= h.bin_edges[bin + 1]) ++bin;
    ++h.counts[bin];
  }
  h.n_total = values.size();
  return h;
}

double erf_profile(double l, double l_bar, double delta) {
  return 0.5 * (1.0 - std::erf((l - l_bar) / delta));
}

FitNotConverged::FitNotConverged(ErfFit best)
    : NumericalError("erf-profile fit did not converge (l_bar=" + std::to_string(best.l_bar) +
                     ", delta=" + std::to_string(best.delta) + ")"),
      best_(best) {}

ErfFit fit_erf_profile(std::span<DataPoint const> points) {
  if (points.size() < 3) throw InvalidInput("fit_erf_profile: need at least 3 points");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (auto const& p : points) {
    if (!std::isfinite(p.x) || !(p.y >= 0.0 && p.y <= 1.0)) {
      throw InvalidInput("fit_erf_profile: probabilities must lie in [0, 1]");
    }
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }

  // delta is optimized in log space to keep it positive.
  auto sse = [&](double l_bar, double delta) {
    double s = 0.0;
    for (auto const& p : points) {
      double const r = erf_profile(p.x, l_bar, delta) - p.y;
      s += r * r;
    }
    return s;
  };
  Objective const objective = [&](std::span<double const> x) {
    return sse(x[0], std::exp(x[1]));
  };

  // Start from the first crossing of 1/2 when there is one.
  double l0 = 0.5 * (lo + hi);
  for (std::size_t i = 1; i < points.size(); ++i) {
    auto const& a = points[i - 1];
    auto const& b = points[i];
    if ((a.y - 0.5) * (b.y - 0.5) <= 0.0 && a.y != b.y) {
      l0 = a.x + (0.5 - a.y) * (b.x - a.x) / (b.y - a.y);
      break;
    }
  }
  double const span = hi > lo ? hi - lo : 1.0;

  SimplexConfig config;
  config.spread_tol = 1e-12;
  config.max_evals = 20000;
  config.initial_step = 0.25;
  std::vector<double> x{l0, std::log(0.25 * span)};
  SimplexResult res = nelder_mead(objective, x, config);
  // Polish from the best vertex with a tolerance relative to the residual.
  config.initial_step = 0.01;
  for (int round = 0; round < 3 && res.converged; ++round) {
    config.spread_tol = std::max(1e-26, 1e-14 * res.f);
    SimplexResult const next = nelder_mead(objective, res.x, config);
    bool const stalled = next.f >= res.f;
    if (next.f <= res.f) res = next;
    if (!next.converged) res.converged = false;
    if (stalled) break;
  }

  ErfFit fit{res.x[0], std::exp(res.x[1]), res.f};
  if (!res.converged) throw FitNotConverged(fit);
  return fit;
}

double l_star(ErfFit const& fit, double p_star) {
  if (!(p_star > 0.0 && p_star < 1.0)) throw InvalidInput("l_star: p_star must lie in (0, 1)");
  return fit.l_bar + fit.delta * boost::math::erf_inv(1.0 - 2.0 * p_star);
}

PowerLawFit fit_power_law(std::span<DataPoint const> points) {
  if (points.size() < 2) throw InvalidInput("fit_power_law: need at least 2 points");
  double sx = 0.0, sy = 0.0;
  for (auto const& p : points) {
    if (!(p.x > 0.0) || !(p.y > 0.0) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidInput("fit_power_law: data must be positive and finite");
    }
    sx += std::log(p.x);
    sy += std::log(p.y);
  }
  auto const n = static_cast<double>(points.size());
  double const mx = sx / n;
  double const my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (auto const& p : points) {
    double const dx = std::log(p.x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.y) - my);
  }
  if (!(sxx > 0.0)) throw InvalidInput("fit_power_law: x values must not all coincide");
  double const slope = sxy / sxx;
  double const intercept = my - slope * mx;

  PowerLawFit fit{std::exp(intercept), -slope, 0.0};
  for (auto const& p : points) {
    double const r = std::log(p.y) - (intercept + slope * std::log(p.x));
    fit.residual += r * r;
  }
  return fit;
}

GaussianFit gaussian_summary(std::span<double const> values) {
  if (values.size() < 3) throw InvalidInput("gaussian_summary: need at least 3 values");
  auto const n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0;
  for (double v : values) {
    double const dv = v - mean;
    m2 += dv * dv;
    m3 += dv * dv * dv;
  }
  if (!(m2 > 0.0)) throw InvalidInput("gaussian_summary: values have zero variance");
  double const pop_var = m2 / n;
  GaussianFit fit;
  fit.mu = mean;
  fit.sigma = std::sqrt(m2 / (n - 1.0));
  fit.skewness = (m3 / n) / std::pow(pop_var, 1.5);
  return fit;
}

double median(std::span<double const> values) {
  if (values.empty()) throw InvalidInput("median: no values");
  std::vector<double> v(values.begin(), values.end());
  auto const mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  return m;
}

}  // namespace qbell
