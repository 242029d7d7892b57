#pragma once

// Test-only reference computations. Everything here is written against the
// raw amplitude vector and explicit Kronecker products so that it stays
// independent of the library's fast paths.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "qbell/qbell.hpp"

namespace qbell::oracle {

/// Singular values of the coefficient matrix, built by explicit indexing.
inline Eigen::VectorXd schmidt_coefficients(PureState const& s) {
  auto const d = static_cast<Eigen::Index>(s.local_dim());
  ComplexMatrix m(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) m(a, b) = s.amplitudes()(a * d + b);
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

/// Tr(rho_A^2) with rho_A = Tr_B |psi><psi| from explicit index sums.
inline double reduced_purity(PureState const& s) {
  auto const d = static_cast<Eigen::Index>(s.local_dim());
  auto const& v = s.amplitudes();
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index a2 = 0; a2 < d; ++a2)
      for (Eigen::Index b = 0; b < d; ++b) rho(a, a2) += v(a * d + b) * std::conj(v(a2 * d + b));
  return (rho * rho).trace().real();
}

inline double entanglement_entropy(PureState const& s) {
  double h = 0.0;
  for (double c : schmidt_coefficients(s)) {
    double const p = c * c;
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

/// |<a_k (x) b_l | psi>|^2 by forming each product vector explicitly.
inline Eigen::MatrixXd brute_force_table(PureState const& s, MeasurementBasis const& a,
                                         MeasurementBasis const& b) {
  auto const d = static_cast<Eigen::Index>(s.local_dim());
  Eigen::MatrixXd t(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) {
      ComplexVector v(d * d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = a.vectors()(i, k) * b.vectors()(j, l);
      Complex amp = 0.0;
      for (Eigen::Index x = 0; x < d * d; ++x) amp += std::conj(v(x)) * s.amplitudes()(x);
      t(k, l) = std::norm(amp);
    }
  }
  return t;
}

/// P(A - B == shift mod d) by scanning every table cell.
inline double brute_force_shift(Eigen::MatrixXd const& t, long shift) {
  long const d = t.rows();
  double p = 0.0;
  for (long k = 0; k < d; ++k)
    for (long l = 0; l < d; ++l)
      if ((((k - l - shift) % d) + d) % d == 0) p += t(k, l);
  return p;
}

/// Direct evaluation of I from brute-force tables.
inline double brute_force_I(PureState const& s, MeasurementSettings const& st) {
  auto const t11 = brute_force_table(s, st.a1, st.b1);
  auto const t12 = brute_force_table(s, st.a1, st.b2);
  auto const t21 = brute_force_table(s, st.a2, st.b1);
  auto const t22 = brute_force_table(s, st.a2, st.b2);
  // P(A1=B1) + P(B1=A2+1) + P(A2=B2) + P(B2=A1)
  return brute_force_shift(t11, 0) + brute_force_shift(t21, -1) + brute_force_shift(t22, 0) +
         brute_force_shift(t12, 0);
}

/// Inverse error function by bisection on std::erf.
inline double erfinv_bisect(double y) {
  double lo = -6.0, hi = 6.0;
  for (int it = 0; it < 200; ++it) {
    double const mid = 0.5 * (lo + hi);
    (std::erf(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
struct KsResult {
  double statistic;
  double p_value;
};

inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double dmax = 0.0;
  auto const na = static_cast<double>(a.size());
  auto const nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    double const x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    dmax = std::max(dmax, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  double const ne = na * nb / (na + nb);
  double const lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * dmax;
  if (lambda < 0.2) return KsResult{dmax, 1.0};
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double const term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
    p += term;
  }
  return KsResult{dmax, std::clamp(p, 0.0, 1.0)};
}

inline double mean(std::vector<double> const& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double std_error_of_mean(std::vector<double> const& v) {
  double const m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  auto const n = static_cast<double>(v.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

/// Applies U to every basis vector: new basis columns U v_k.
inline MeasurementBasis rotate(MeasurementBasis const& b, ComplexMatrix const& u) {
  return MeasurementBasis(ComplexMatrix(u * b.vectors()));
}

}  // namespace qbell::oracle
