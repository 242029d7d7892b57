#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qbell/analysis.hpp"

namespace qbell {
namespace {

std::vector<double> standard_normals(std::size_t n, std::uint64_t seed) {
  RandomStream rng = derive_stream(seed, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = normal(rng);
  return v;
}

std::vector<DataPoint> erf_data(double l_bar, double delta, double noise, std::uint64_t seed) {
  RandomStream rng = derive_stream(seed, 0);
  std::uniform_real_distribution<double> u(-noise, noise);
  std::vector<DataPoint> pts;
  for (int i = 1; i <= 12; ++i) {
    double const l = 0.5 * i;
    double p = erf_profile(l, l_bar, delta);
    if (noise > 0.0) p = std::clamp(p + u(rng), 0.0, 1.0);
    pts.push_back({l, p});
  }
  return pts;
}

TEST(Histogram, ConstantValuesFillOneBin) {
  std::vector<double> const v(50, 3.25);
  Histogram const h = build_histogram(v, 10);
  std::size_t occupied = 0;
  for (auto c : h.counts) occupied += c > 0;
  EXPECT_EQ(occupied, 1u);
  EXPECT_EQ(h.n_total, 50u);
  EXPECT_LT(h.bin_edges.front(), 3.25);
  EXPECT_GT(h.bin_edges.back(), 3.25);
}

TEST(Histogram, ConservesCountsAndClosesLastBin) {
  std::vector<double> const v = standard_normals(1000, 90);
  Histogram const h = build_histogram(v, 37);
  std::size_t total = 0;
  for (auto c : h.counts) total += c;
  EXPECT_EQ(total, v.size());
  EXPECT_EQ(h.bin_edges.size(), 38u);
  EXPECT_GE(h.counts.back(), 1u);  // the maximum lands in the closed last bin
  EXPECT_GE(h.counts.front(), 1u);
  for (std::size_t i = 1; i < h.bin_edges.size(); ++i) EXPECT_GT(h.bin_edges[i], h.bin_edges[i - 1]);
}

TEST(Histogram, BinCentersOfNormalSampleAverageToZero) {
  std::vector<double> const v = standard_normals(100000, 91);
  Histogram const h = build_histogram(v, 200);
  double m = 0.0;
  for (std::size_t i = 0; i < h.bins(); ++i) {
    m += 0.5 * (h.bin_edges[i] + h.bin_edges[i + 1]) * static_cast<double>(h.counts[i]);
  }
  m /= static_cast<double>(h.n_total);
  EXPECT_NEAR(m, 0.0, 0.02);
}

TEST(Histogram, RejectsEmptyInput) {
  std::vector<double> const v;
  EXPECT_THROW(build_histogram(v, 10), InvalidInput);
  std::vector<double> const w{1.0};
  EXPECT_THROW(build_histogram(w, 0), InvalidInput);
}

TEST(FitErfProfile, NoiselessRecovery) {
  auto const pts = erf_data(2.0, 1.5, 0.0, 0);
  ErfFit const f = fit_erf_profile(pts);
  EXPECT_NEAR(f.l_bar, 2.0, 1e-6);
  EXPECT_NEAR(f.delta, 1.5, 1e-6);
  EXPECT_LT(f.residual, 1e-12);
}

TEST(FitErfProfile, NoisyRecovery) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ErfFit const f = fit_erf_profile(erf_data(2.0, 1.5, 0.01, seed));
    EXPECT_NEAR(f.l_bar, 2.0, 0.1);
    EXPECT_NEAR(f.delta, 1.5, 0.1);
  }
}

TEST(FitErfProfile, AllOnesProfileIsPushedOutOfRange) {
  std::vector<DataPoint> pts;
  for (int i = 1; i <= 8; ++i) pts.push_back({0.5 * i, 1.0});
  ErfFit const f = fit_erf_profile(pts);
  EXPECT_GT(f.l_bar, 4.0);
  EXPECT_GT(f.delta, 0.0);
  EXPECT_LT(f.residual, 1e-6);
}

TEST(FitErfProfile, ShiftCovariant) {
  auto pts = erf_data(2.0, 1.5, 0.01, 7);
  ErfFit const a = fit_erf_profile(pts);
  double const c = 1.7;
  for (auto& p : pts) p.x += c;
  ErfFit const b = fit_erf_profile(pts);
  EXPECT_NEAR(b.l_bar, a.l_bar + c, 1e-8);
  EXPECT_NEAR(b.delta, a.delta, 1e-8);
}

TEST(FitErfProfile, RejectsBadInput) {
  std::vector<DataPoint> two{{1.0, 0.5}, {2.0, 0.4}};
  EXPECT_THROW(fit_erf_profile(two), InvalidInput);
  std::vector<DataPoint> bad{{1.0, 0.5}, {2.0, 1.4}, {3.0, 0.1}};
  EXPECT_THROW(fit_erf_profile(bad), InvalidInput);
}

TEST(LStar, HalfProbabilityGivesMean) {
  ErfFit const f{2.5, 0.7, 0.0};
  EXPECT_EQ(l_star(f, 0.5), 2.5);
}

TEST(LStar, PublishedCoefficientsForI) {
  double const eps = 0.1;
  ErfFit const f{0.17 * std::pow(eps, -0.61), 0.137 * std::pow(eps, -1.38), 0.0};
  double const expected = f.l_bar + f.delta * oracle::erfinv_bisect(1.0 - 2.0 * 0.1);
  EXPECT_NEAR(l_star(f, 0.1), expected, 1e-10);
  EXPECT_NEAR(l_star(f, 0.1), 3.67, 5e-3);
}

TEST(LStar, StrictlyDecreasingAndValidated) {
  ErfFit const f{1.0, 2.0, 0.0};
  double prev = std::numeric_limits<double>::infinity();
  for (double p = 0.01; p < 1.0; p += 0.01) {
    double const l = l_star(f, p);
    EXPECT_LT(l, prev);
    prev = l;
  }
  EXPECT_THROW(l_star(f, 0.0), InvalidInput);
  EXPECT_THROW(l_star(f, 1.0), InvalidInput);
}

TEST(FitPowerLaw, ExactData) {
  std::vector<DataPoint> pts;
  for (double x : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0}) pts.push_back({x, 2.0 / std::pow(x, 1.5)});
  PowerLawFit const f = fit_power_law(pts);
  EXPECT_NEAR(f.a, 2.0, 1e-10);
  EXPECT_NEAR(f.b, 1.5, 1e-10);
  EXPECT_NEAR(f.slope(), -1.5, 1e-10);
}

TEST(FitPowerLaw, LognormalNoise) {
  RandomStream rng = derive_stream(92, 0);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<DataPoint> pts;
  for (double x = 0.5; x <= 4.01; x += 0.5) pts.push_back({x, 2.0 / std::pow(x, 1.5) * std::exp(noise(rng))});
  EXPECT_NEAR(fit_power_law(pts).b, 1.5, 0.15);
}

TEST(FitPowerLaw, ScaleCovariant) {
  std::vector<DataPoint> pts{{1.0, 3.0}, {2.0, 1.1}, {3.0, 0.9}, {5.0, 0.2}};
  PowerLawFit const a = fit_power_law(pts);
  for (auto& p : pts) p.y *= 4.5;
  PowerLawFit const b = fit_power_law(pts);
  EXPECT_NEAR(b.a, 4.5 * a.a, 1e-10 * b.a);
  EXPECT_NEAR(b.b, a.b, 1e-10);
}

TEST(FitPowerLaw, RejectsBadInput) {
  std::vector<DataPoint> one{{1.0, 1.0}};
  EXPECT_THROW(fit_power_law(one), InvalidInput);
  std::vector<DataPoint> neg{{1.0, 1.0}, {2.0, -1.0}};
  EXPECT_THROW(fit_power_law(neg), InvalidInput);
  std::vector<DataPoint> zero{{0.0, 1.0}, {2.0, 1.0}};
  EXPECT_THROW(fit_power_law(zero), InvalidInput);
}

TEST(GaussianSummary, SymmetricTriple) {
  std::vector<double> const v{-1.0, 0.0, 1.0};
  GaussianFit const g = gaussian_summary(v);
  EXPECT_EQ(g.mu, 0.0);
  EXPECT_EQ(g.sigma, 1.0);
  EXPECT_EQ(g.skewness, 0.0);
}

TEST(GaussianSummary, StandardNormalSample) {
  GaussianFit const g = gaussian_summary(standard_normals(100000, 93));
  EXPECT_NEAR(g.mu, 0.0, 0.02);
  EXPECT_NEAR(g.sigma, 1.0, 0.02);
}

TEST(GaussianSummary, LeftTailIsNegative) {
  std::vector<double> const v{0.0, 0.0, 0.0, -10.0};
  EXPECT_LT(gaussian_summary(v).skewness, 0.0);
}

TEST(GaussianSummary, RejectsDegenerateInput) {
  std::vector<double> const flat{2.0, 2.0, 2.0, 2.0};
  EXPECT_THROW(gaussian_summary(flat), InvalidInput);
  std::vector<double> const two{1.0, 2.0};
  EXPECT_THROW(gaussian_summary(two), InvalidInput);
}

TEST(Median, OddAndEven) {
  std::vector<double> const odd{3.0, 1.0, 2.0};
  std::vector<double> const even{4.0, 1.0, 3.0, 2.0};
  EXPECT_EQ(median(odd), 2.0);
  EXPECT_EQ(median(even), 2.5);
}

}  // namespace
}  // namespace qbell
