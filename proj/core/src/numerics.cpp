#include "qbell/numerics.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qbell/error.hpp"

namespace qbell {

bool all_finite(ComplexMatrix const& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

double unitarity_defect(ComplexMatrix const& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  ComplexMatrix const gram = m.adjoint() * m;
  return (gram - ComplexMatrix::Identity(m.rows(), m.cols())).norm();
}

HermitianMatrix::HermitianMatrix(ComplexMatrix const& upper) {
  if (upper.rows() != upper.cols()) {
    throw InvalidInput("HermitianMatrix: matrix must be square");
  }
  if (!all_finite(upper)) {
    throw InvalidInput("HermitianMatrix: non-finite entry");
  }
  auto const n = upper.rows();
  m_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m_(i, i) = Complex(upper(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      m_(i, j) = upper(i, j);
      m_(j, i) = std::conj(upper(i, j));
    }
  }
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
  auto const n = static_cast<Eigen::Index>(dim);
  return HermitianMatrix(ComplexMatrix::Zero(n, n));
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (!all_finite(m_)) throw InvalidInput("UnitaryMatrix: non-finite entry");
  double const defect = unitarity_defect(m_);
  if (!(defect < tol)) {
    throw InvalidInput("UnitaryMatrix: not unitary (defect " + std::to_string(defect) + ")");
  }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  auto const n = static_cast<Eigen::Index>(dim);
  return UnitaryMatrix(ComplexMatrix::Identity(n, n));
}

HermitianSpectrum::HermitianSpectrum(HermitianMatrix const& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigendecomposition did not converge");
  }
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

UnitaryMatrix HermitianSpectrum::exp_i(double theta) const {
  if (!std::isfinite(theta)) throw InvalidInput("expm_i_hermitian: theta must be finite");
  ComplexVector phases(values_.size());
  for (Eigen::Index k = 0; k < values_.size(); ++k) {
    phases(k) = std::polar(1.0, theta * values_(k));
  }
  ComplexMatrix u = vectors_ * phases.asDiagonal() * vectors_.adjoint();
  return UnitaryMatrix(std::move(u));
}

ComplexVector HermitianSpectrum::apply_exp_i(double theta, ComplexVector const& v) const {
  ComplexVector coeffs = vectors_.adjoint() * v;
  for (Eigen::Index k = 0; k < values_.size(); ++k) {
    coeffs(k) *= std::polar(1.0, theta * values_(k));
  }
  return vectors_ * coeffs;
}

UnitaryMatrix expm_i_hermitian(HermitianMatrix const& h, double theta) {
  if (!std::isfinite(theta)) throw InvalidInput("expm_i_hermitian: theta must be finite");
  return HermitianSpectrum(h).exp_i(theta);
}

ComplexMatrix tensor_product(ComplexMatrix const& m, ComplexMatrix const& n) {
  ComplexMatrix out(m.rows() * n.rows(), m.cols() * n.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.block(i * n.rows(), j * n.cols(), n.rows(), n.cols()) = m(i, j) * n;
    }
  }
  return out;
}

ComplexVector tensor_product(ComplexVector const& u, ComplexVector const& v) {
  ComplexVector out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    out.segment(i * v.size(), v.size()) = u(i) * v;
  }
  return out;
}

namespace {

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, RandomStream& rng) {
  // Real and imaginary parts N(0, 1/2) so that E|z|^2 = 1.
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix z(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      double const re = normal(rng);
      double const im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  return z;
}

}  // namespace

UnitaryMatrix haar_unitary(std::size_t d, RandomStream& rng) {
  if (d == 0) throw InvalidInput("haar_unitary: dimension must be >= 1");
  auto const n = static_cast<Eigen::Index>(d);
  ComplexMatrix const z = ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  ComplexMatrix const& r = qr.matrixQR();
  // Fix the phase freedom of QR: make diag(R) real positive.
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex const rkk = r(k, k);
    double const mag = std::abs(rkk);
    Complex const phase = mag > 0.0 ? rkk / mag : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return UnitaryMatrix(std::move(q));
}

ComplexVector uniform_sphere_state(std::size_t n, RandomStream& rng) {
  if (n == 0) throw InvalidInput("uniform_sphere_state: dimension must be >= 1");
  ComplexVector v;
  double norm = 0.0;
  do {
    v = ginibre(static_cast<Eigen::Index>(n), 1, rng).col(0);
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

}  // namespace qbell
