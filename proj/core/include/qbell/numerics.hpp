#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "qbell/random.hpp"

namespace qbell {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kUnitarityTol = 1e-10;

/// Hermitian matrix. Built from the upper triangle of the input; the lower
/// triangle is the conjugate mirror and the diagonal is made real, so the
/// stored matrix equals its adjoint exactly.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(ComplexMatrix const& upper);

  static HermitianMatrix zero(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  ComplexMatrix const& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

/// Square matrix with U^dagger U = I within kUnitarityTol (Frobenius).
class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;
  /// Throws InvalidInput if `m` is not unitary within `tol`.
  explicit UnitaryMatrix(ComplexMatrix m, double tol = kUnitarityTol);

  static UnitaryMatrix identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  ComplexMatrix const& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

/// Frobenius norm of U^dagger U - I.
double unitarity_defect(ComplexMatrix const& m);

bool all_finite(ComplexMatrix const& m);

/// Eigendecomposition H = V diag(lambda) V^dagger, kept so that
/// exp(i theta H) can be formed repeatedly for different theta.
class HermitianSpectrum {
 public:
  explicit HermitianSpectrum(HermitianMatrix const& h);

  RealVector const& eigenvalues() const { return values_; }
  ComplexMatrix const& eigenvectors() const { return vectors_; }

  /// V diag(exp(i theta lambda_k)) V^dagger.
  UnitaryMatrix exp_i(double theta) const;
  /// exp(i theta H) v without forming the matrix.
  ComplexVector apply_exp_i(double theta, ComplexVector const& v) const;

 private:
  RealVector values_;
  ComplexMatrix vectors_;
};

/// exp(i theta H) via Hermitian eigendecomposition.
UnitaryMatrix expm_i_hermitian(HermitianMatrix const& h, double theta);

/// Kronecker product; row index of the result is iA * rows(N) + iB.
ComplexMatrix tensor_product(ComplexMatrix const& m, ComplexMatrix const& n);
ComplexVector tensor_product(ComplexVector const& u, ComplexVector const& v);

/// Haar-distributed d x d unitary (Ginibre matrix, QR, phase-corrected).
UnitaryMatrix haar_unitary(std::size_t d, RandomStream& rng);

/// Uniform point on the unit sphere of C^n (normalized complex Gaussian).
ComplexVector uniform_sphere_state(std::size_t n, RandomStream& rng);

}  // namespace qbell
