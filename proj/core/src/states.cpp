#include "qbell/states.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qbell/error.hpp"

namespace qbell {

namespace {

constexpr double kBoxHalfWidth = 10.0;

void require_dim(std::size_t d, char const* what) {
  if (d < 2) throw InvalidInput(std::string(what) + ": local dimension must be >= 2");
}

}  // namespace

PureState::PureState(std::size_t local_dim, ComplexVector amplitudes)
    : d_(local_dim), amps_(std::move(amplitudes)) {
  if (d_ == 0) throw InvalidInput("PureState: local dimension must be >= 1");
  if (static_cast<std::size_t>(amps_.size()) != d_ * d_) {
    throw InvalidInput("PureState: expected " + std::to_string(d_ * d_) + " amplitudes, got " +
                       std::to_string(amps_.size()));
  }
  if (!all_finite(amps_)) throw InvalidInput("PureState: non-finite amplitude");
  if (std::abs(amps_.norm() - 1.0) > kNormTol) {
    throw InvalidInput("PureState: amplitudes are not normalized");
  }
}

PureState PureState::normalized(std::size_t local_dim, ComplexVector amplitudes) {
  double const norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidInput("PureState: cannot normalize a zero or non-finite vector");
  }
  amplitudes /= norm;
  return PureState(local_dim, std::move(amplitudes));
}

ComplexMatrix PureState::coefficients() const {
  auto const n = static_cast<Eigen::Index>(d_);
  // Row-major reshape: Psi(iA, iB) = amps_(iA * d + iB).
  return Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> const>(
      amps_.data(), n, n);
}

PureState state_from_coefficients(ComplexMatrix const& psi) {
  if (psi.rows() != psi.cols()) throw InvalidInput("state_from_coefficients: matrix must be square");
  auto const d = psi.rows();
  ComplexVector amps(d * d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) amps(a * d + b) = psi(a, b);
  }
  return PureState::normalized(static_cast<std::size_t>(d), std::move(amps));
}

PureState bell_state(std::size_t d) {
  require_dim(d, "bell_state");
  auto const n = static_cast<Eigen::Index>(d);
  ComplexVector amps = ComplexVector::Zero(n * n);
  double const w = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index j = 0; j < n; ++j) amps(j * n + j) = w;
  return PureState(d, std::move(amps));
}

ComplexVector random_box_vector(std::size_t n, RandomStream& rng) {
  std::uniform_real_distribution<double> box(-kBoxHalfWidth, kBoxHalfWidth);
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double const re = box(rng);
    double const im = box(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

PureState random_entangled_state(std::size_t d, RandomStream& rng) {
  require_dim(d, "random_entangled_state");
  for (;;) {
    ComplexVector v = random_box_vector(d * d, rng);
    if (v.norm() > 0.0) return PureState::normalized(d, std::move(v));
  }
}

PureState random_product_state(std::size_t d, RandomStream& rng) {
  require_dim(d, "random_product_state");
  auto draw_local = [&] {
    for (;;) {
      ComplexVector v = random_box_vector(d, rng);
      double const norm = v.norm();
      if (norm > 0.0) return ComplexVector(v / norm);
    }
  };
  ComplexVector const a = draw_local();
  ComplexVector const b = draw_local();
  return PureState::normalized(d, tensor_product(a, b));
}

}  // namespace qbell
