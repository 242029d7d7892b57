#include "qbell/perturbations.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qbell/error.hpp"

namespace qbell {

std::string_view to_string(PerturbationKind kind) {
  return kind == PerturbationKind::Bilocal ? "bilocal" : "global";
}

PerturbationKind parse_perturbation_kind(std::string_view text) {
  if (text == "bilocal") return PerturbationKind::Bilocal;
  if (text == "global") return PerturbationKind::Global;
  throw InvalidInput("unknown perturbation '" + std::string(text) + "' (expected bilocal or global)");
}

std::string_view to_string(HermitianEnsemble ensemble) {
  switch (ensemble) {
    case HermitianEnsemble::MagnitudePhase: return "magnitude-phase";
    case HermitianEnsemble::UniformParts: return "uniform-parts";
    case HermitianEnsemble::RealSymmetric: return "real-symmetric";
  }
  return "?";
}

HermitianEnsemble parse_hermitian_ensemble(std::string_view text) {
  if (text == "magnitude-phase") return HermitianEnsemble::MagnitudePhase;
  if (text == "uniform-parts") return HermitianEnsemble::UniformParts;
  if (text == "real-symmetric") return HermitianEnsemble::RealSymmetric;
  throw InvalidInput("unknown Hermitian ensemble '" + std::string(text) + "'");
}

void PerturbationConfig::validate() const {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw InvalidInput("perturbation epsilon must be finite and >= 0");
  }
}

HermitianMatrix random_hermitian(std::size_t n, RandomStream& rng, HermitianEnsemble ensemble) {
  if (n == 0) throw InvalidInput("random_hermitian: dimension must be >= 1");
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  auto const dim = static_cast<Eigen::Index>(n);
  ComplexMatrix upper = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    upper(i, i) = Complex(sym(rng), 0.0);
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      switch (ensemble) {
        case HermitianEnsemble::MagnitudePhase: {
          double const mag = unit(rng);
          double const phase = angle(rng);
          upper(i, j) = std::polar(mag, phase);
          break;
        }
        case HermitianEnsemble::UniformParts: {
          double const re = sym(rng);
          double const im = sym(rng);
          upper(i, j) = Complex(re, im);
          break;
        }
        case HermitianEnsemble::RealSymmetric:
          upper(i, j) = Complex(sym(rng), 0.0);
          break;
      }
    }
  }
  return HermitianMatrix(upper);
}

namespace {

void check_epsilon(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw InvalidInput("perturbation epsilon must be finite and >= 0");
  }
}

}  // namespace

PerturbationDraw::PerturbationDraw(PerturbationKind kind, std::size_t local_dim, RandomStream& rng,
                                   HermitianEnsemble ensemble)
    : kind_(kind),
      d_(local_dim),
      first_(random_hermitian(kind == PerturbationKind::Bilocal ? local_dim : local_dim * local_dim,
                              rng, ensemble)),
      second_(kind == PerturbationKind::Bilocal ? random_hermitian(local_dim, rng, ensemble)
                                                : HermitianMatrix::zero(1)) {}

PureState PerturbationDraw::apply(PureState const& state, double epsilon) const {
  check_epsilon(epsilon);
  if (state.local_dim() != d_) throw InvalidInput("perturbation: state dimension mismatch");
  if (kind_ == PerturbationKind::Global) {
    return PureState::normalized(d_, first_.apply_exp_i(epsilon, state.amplitudes()));
  }
  // (U_A (x) U_B) psi  <=>  U_A Psi U_B^T on the coefficient matrix.
  ComplexMatrix const ua = first_.exp_i(epsilon).matrix();
  ComplexMatrix const ub = second_.exp_i(epsilon).matrix();
  return state_from_coefficients(ua * state.coefficients() * ub.transpose());
}

PureState apply_bilocal(PureState const& state, double epsilon, RandomStream& rng,
                        HermitianEnsemble ensemble) {
  check_epsilon(epsilon);
  return PerturbationDraw(PerturbationKind::Bilocal, state.local_dim(), rng, ensemble)
      .apply(state, epsilon);
}

PureState apply_global(PureState const& state, double epsilon, RandomStream& rng,
                       HermitianEnsemble ensemble) {
  check_epsilon(epsilon);
  return PerturbationDraw(PerturbationKind::Global, state.local_dim(), rng, ensemble)
      .apply(state, epsilon);
}

PureState apply_perturbation(PerturbationKind kind, PureState const& state, double epsilon,
                             RandomStream& rng, HermitianEnsemble ensemble) {
  return kind == PerturbationKind::Bilocal ? apply_bilocal(state, epsilon, rng, ensemble)
                                           : apply_global(state, epsilon, rng, ensemble);
}

}  // namespace qbell
