#pragma once

#include <cstddef>

#include "qbell/numerics.hpp"
#include "qbell/states.hpp"

namespace qbell {

inline constexpr double kOrthonormalityTol = 1e-10;

/// d orthonormal vectors; column k of vectors() is the eigenvector for
/// outcome label k.
class MeasurementBasis {
 public:
  /// Throws InvalidInput if the columns are not orthonormal within tolerance.
  explicit MeasurementBasis(ComplexMatrix vectors);
  explicit MeasurementBasis(UnitaryMatrix const& u) : MeasurementBasis(u.matrix()) {}

  static MeasurementBasis computational(std::size_t d);

  std::size_t local_dim() const { return static_cast<std::size_t>(v_.cols()); }
  ComplexMatrix const& vectors() const { return v_; }
  ComplexVector vector(std::size_t outcome) const { return v_.col(static_cast<Eigen::Index>(outcome)); }

 private:
  ComplexMatrix v_;
};

/// Two bases per party: Alice (a1, a2), Bob (b1, b2).
struct MeasurementSettings {
  MeasurementBasis a1;
  MeasurementBasis a2;
  MeasurementBasis b1;
  MeasurementBasis b2;

  MeasurementSettings(MeasurementBasis a1, MeasurementBasis a2, MeasurementBasis b1,
                      MeasurementBasis b2);

  std::size_t local_dim() const { return a1.local_dim(); }
  MeasurementBasis const& alice(int i) const { return i == 1 ? a1 : a2; }
  MeasurementBasis const& bob(int j) const { return j == 1 ? b1 : b2; }
};

/// Joint outcome distribution; probs(k, l) = P(Alice = k, Bob = l).
struct OutcomeTable {
  Eigen::MatrixXd probs;

  std::size_t local_dim() const { return static_cast<std::size_t>(probs.rows()); }
};

/// Fourier-type bases with alpha = (0, 1/2), beta = (1/4, -1/4).
MeasurementSettings optimal_settings(std::size_t d);

/// Four independent Haar-random bases.
MeasurementSettings haar_settings(std::size_t d, RandomStream& rng);

/// Born rule: probs(k, l) = |(<k|_A (x) <l|_B) psi|^2.
OutcomeTable outcome_table(PureState const& state, MeasurementBasis const& alice,
                           MeasurementBasis const& bob);

/// P(A - B == shift mod d) = sum_l probs((l + shift) mod d, l).
double correlated_probability(OutcomeTable const& table, long shift);

}  // namespace qbell
