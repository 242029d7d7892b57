#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "qbell/numerics.hpp"
#include "qbell/states.hpp"

namespace qbell {

/// Bilocal: exp(i eps H_A) (x) exp(i eps H_B). Global: exp(i eps H) on C^{d^2}.
enum class PerturbationKind { Bilocal, Global };

std::string_view to_string(PerturbationKind kind);
/// Accepts "bilocal" and "global".
PerturbationKind parse_perturbation_kind(std::string_view text);

/// Entry distribution of random Hermitian generators. Every ensemble draws
/// the diagonal uniformly from [-1, 1].
enum class HermitianEnsemble {
  /// Off-diagonal magnitude uniform in [0, 1], phase uniform in [0, 2 pi).
  MagnitudePhase,
  /// Off-diagonal real and imaginary parts independently uniform in [-1, 1].
  UniformParts,
  /// Real symmetric: off-diagonals uniform in [-1, 1].
  RealSymmetric,
};

std::string_view to_string(HermitianEnsemble ensemble);
HermitianEnsemble parse_hermitian_ensemble(std::string_view text);

struct PerturbationConfig {
  double epsilon = 0.0;
  PerturbationKind kind = PerturbationKind::Bilocal;
  std::uint64_t seed = 0;
  HermitianEnsemble ensemble = HermitianEnsemble::MagnitudePhase;

  /// Throws InvalidInput if epsilon is negative or non-finite.
  void validate() const;
};

HermitianMatrix random_hermitian(std::size_t n, RandomStream& rng,
                                 HermitianEnsemble ensemble = HermitianEnsemble::MagnitudePhase);

/// (exp(i eps H_A) (x) exp(i eps H_B)) psi; H_A is drawn before H_B.
PureState apply_bilocal(PureState const& state, double epsilon, RandomStream& rng,
                        HermitianEnsemble ensemble = HermitianEnsemble::MagnitudePhase);

/// exp(i eps H) psi with one d^2-dimensional random Hermitian H.
PureState apply_global(PureState const& state, double epsilon, RandomStream& rng,
                       HermitianEnsemble ensemble = HermitianEnsemble::MagnitudePhase);

PureState apply_perturbation(PerturbationKind kind, PureState const& state, double epsilon,
                             RandomStream& rng,
                             HermitianEnsemble ensemble = HermitianEnsemble::MagnitudePhase);

/// A drawn perturbation whose strength can be varied afterwards. Holds the
/// spectra of the generators so that one draw can be replayed at many
/// epsilon values (common random numbers across an epsilon scan).
class PerturbationDraw {
 public:
  PerturbationDraw(PerturbationKind kind, std::size_t local_dim, RandomStream& rng,
                   HermitianEnsemble ensemble = HermitianEnsemble::MagnitudePhase);

  PureState apply(PureState const& state, double epsilon) const;

 private:
  PerturbationKind kind_;
  std::size_t d_;
  HermitianSpectrum first_;
  HermitianSpectrum second_;
};

}  // namespace qbell
