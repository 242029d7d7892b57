#include "qbell/measurements.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qbell/error.hpp"

namespace qbell {

MeasurementBasis::MeasurementBasis(ComplexMatrix vectors) : v_(std::move(vectors)) {
  if (v_.rows() != v_.cols() || v_.rows() == 0) {
    throw InvalidInput("MeasurementBasis: need d vectors of length d");
  }
  if (!all_finite(v_)) throw InvalidInput("MeasurementBasis: non-finite entry");
  ComplexMatrix const gram = v_.adjoint() * v_;
  double const defect = (gram - ComplexMatrix::Identity(v_.cols(), v_.cols())).cwiseAbs().maxCoeff();
  if (defect > kOrthonormalityTol) {
    throw InvalidInput("MeasurementBasis: vectors are not orthonormal (max defect " +
                       std::to_string(defect) + ")");
  }
}

MeasurementBasis MeasurementBasis::computational(std::size_t d) {
  auto const n = static_cast<Eigen::Index>(d);
  return MeasurementBasis(ComplexMatrix::Identity(n, n));
}

MeasurementSettings::MeasurementSettings(MeasurementBasis a1_, MeasurementBasis a2_,
                                         MeasurementBasis b1_, MeasurementBasis b2_)
    : a1(std::move(a1_)), a2(std::move(a2_)), b1(std::move(b1_)), b2(std::move(b2_)) {
  std::size_t const d = a1.local_dim();
  if (a2.local_dim() != d || b1.local_dim() != d || b2.local_dim() != d) {
    throw InvalidInput("MeasurementSettings: all four bases must share the local dimension");
  }
}

namespace {

// sign = +1 for Alice (k + alpha), -1 for Bob (-l + beta).
MeasurementBasis fourier_basis(std::size_t d, int sign, double offset) {
  auto const n = static_cast<Eigen::Index>(d);
  double const dd = static_cast<double>(d);
  double const w = 1.0 / std::sqrt(dd);
  ComplexMatrix v(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double const label = sign * static_cast<double>(k) + offset;
    for (Eigen::Index j = 0; j < n; ++j) {
      double const phase = 2.0 * std::numbers::pi / dd * static_cast<double>(j) * label;
      v(j, k) = std::polar(w, phase);
    }
  }
  return MeasurementBasis(std::move(v));
}

}  // namespace

MeasurementSettings optimal_settings(std::size_t d) {
  if (d < 2) throw InvalidInput("optimal_settings: local dimension must be >= 2");
  return MeasurementSettings(fourier_basis(d, +1, 0.0), fourier_basis(d, +1, 0.5),
                             fourier_basis(d, -1, 0.25), fourier_basis(d, -1, -0.25));
}

MeasurementSettings haar_settings(std::size_t d, RandomStream& rng) {
  MeasurementBasis a1(haar_unitary(d, rng));
  MeasurementBasis a2(haar_unitary(d, rng));
  MeasurementBasis b1(haar_unitary(d, rng));
  MeasurementBasis b2(haar_unitary(d, rng));
  return MeasurementSettings(std::move(a1), std::move(a2), std::move(b1), std::move(b2));
}

OutcomeTable outcome_table(PureState const& state, MeasurementBasis const& alice,
                           MeasurementBasis const& bob) {
  std::size_t const d = state.local_dim();
  if (alice.local_dim() != d || bob.local_dim() != d) {
    throw InvalidInput("outcome_table: basis dimension " + std::to_string(alice.local_dim()) + "/" +
                       std::to_string(bob.local_dim()) + " does not match state dimension " +
                       std::to_string(d));
  }
  // <k|<l| psi = sum_ij conj(a_k[i]) conj(b_l[j]) Psi(i, j) = (A^dag Psi conj(B))(k, l)
  ComplexMatrix const amp = alice.vectors().adjoint() * state.coefficients() * bob.vectors().conjugate();
  return OutcomeTable{amp.cwiseAbs2()};
}

double correlated_probability(OutcomeTable const& table, long shift) {
  auto const d = static_cast<long>(table.local_dim());
  long const s = ((shift % d) + d) % d;
  double sum = 0.0;
  for (long l = 0; l < d; ++l) sum += table.probs((l + s) % d, l);
  return sum;
}

}  // namespace qbell
