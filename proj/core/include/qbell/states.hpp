#pragma once

#include <cstddef>

#include "qbell/numerics.hpp"

namespace qbell {

inline constexpr double kNormTol = 1e-12;

/// Normalized pure state of two d-level systems. Amplitude index is
/// iA * d + iB.
class PureState {
 public:
  /// Throws InvalidInput unless amplitudes has length d^2 and unit norm.
  PureState(std::size_t local_dim, ComplexVector amplitudes);

  /// Rescales `amplitudes` to unit norm. Throws on a zero vector.
  static PureState normalized(std::size_t local_dim, ComplexVector amplitudes);

  std::size_t local_dim() const { return d_; }
  ComplexVector const& amplitudes() const { return amps_; }

  /// Coefficient matrix Psi with Psi(iA, iB) = amplitude(iA * d + iB).
  ComplexMatrix coefficients() const;

 private:
  std::size_t d_;
  ComplexVector amps_;
};

/// Builds a state from a d x d coefficient matrix (inverse of coefficients()).
PureState state_from_coefficients(ComplexMatrix const& psi);

/// (1/sqrt d) sum_j |j>|j>.
PureState bell_state(std::size_t d);

/// Complex amplitudes with real and imaginary parts uniform in [-10, 10],
/// normalized afterwards.
PureState random_entangled_state(std::size_t d, RandomStream& rng);

/// Tensor product of two independent local vectors drawn like
/// random_entangled_state.
PureState random_product_state(std::size_t d, RandomStream& rng);

/// One local vector of the random-state ensemble before normalization.
ComplexVector random_box_vector(std::size_t n, RandomStream& rng);

}  // namespace qbell
