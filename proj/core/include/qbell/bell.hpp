#pragma once

#include <cstddef>
#include <string_view>

#include "qbell/measurements.hpp"
#include "qbell/states.hpp"

namespace qbell {

/// I: four equal-outcome terms. Id: the dimension-weighted CGLMP-type sum.
enum class BellKind { I, Id };

std::string_view to_string(BellKind kind);
/// Accepts "I" and "Id" (case-sensitive). Throws InvalidInput otherwise.
BellKind parse_bell_kind(std::string_view text);

struct BellResult {
  BellKind kind;
  std::size_t local_dim;
  double value;
};

/// Local-hidden-variable maximum: 3 for I, 2 for Id.
double classical_bound(BellKind kind);

/// Largest value any theory can reach (4 for both expressions).
inline constexpr double kAlgebraicMaximum = 4.0;

/// Weight 1 - 2k/(d-1) of the k-th term of Id.
double id_coefficient(std::size_t d, std::size_t k);

/// P(A1=B1) + P(B1=A2+1) + P(A2=B2) + P(B2=A1).
BellResult evaluate_I(PureState const& state, MeasurementSettings const& settings);

/// sum_{k<floor(d/2)} c(k) {[P(A1=B1+k) + P(B1=A2+k+1) + P(A2=B2+k) + P(B2=A1+k)]
///                        - [P(A1=B1-k-1) + P(B1=A2-k) + P(A2=B2-k-1) + P(B2=A1-k-1)]}
BellResult evaluate_Id(PureState const& state, MeasurementSettings const& settings);

BellResult evaluate(BellKind kind, PureState const& state, MeasurementSettings const& settings);

/// Shift n(i, j, k) of the projector P^{(i,j)}_k onto A_i - B_j == n (mod d).
long projector_shift(int i, int j, long k);

/// ||P psi||^2 for the projector onto span{ a_{(l+shift) mod d} (x) b_l }.
/// Built from explicit product vectors, independent of outcome_table.
double projector_weight(PureState const& state, MeasurementBasis const& alice,
                        MeasurementBasis const& bob, long shift);

/// Id as R_d - S_d, with R_d and S_d weighted sums of projector norms.
BellResult evaluate_Id_projector(PureState const& state, MeasurementSettings const& settings);

}  // namespace qbell
