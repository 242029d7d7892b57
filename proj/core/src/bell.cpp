#include "qbell/bell.hpp"

#include <string>

#include "qbell/error.hpp"

namespace qbell {

std::string_view to_string(BellKind kind) { return kind == BellKind::I ? "I" : "Id"; }

BellKind parse_bell_kind(std::string_view text) {
  if (text == "I") return BellKind::I;
  if (text == "Id") return BellKind::Id;
  throw InvalidInput("unknown Bell expression '" + std::string(text) + "' (expected I or Id)");
}

double classical_bound(BellKind kind) { return kind == BellKind::I ? 3.0 : 2.0; }

double id_coefficient(std::size_t d, std::size_t k) {
  return 1.0 - 2.0 * static_cast<double>(k) / static_cast<double>(d - 1);
}

namespace {

void check_dims(PureState const& state, MeasurementSettings const& settings, char const* what) {
  if (settings.local_dim() != state.local_dim()) {
    throw InvalidInput(std::string(what) + ": settings dimension " +
                       std::to_string(settings.local_dim()) + " does not match state dimension " +
                       std::to_string(state.local_dim()));
  }
}

struct Tables {
  OutcomeTable a1b1, a1b2, a2b1, a2b2;
};

Tables all_tables(PureState const& state, MeasurementSettings const& s) {
  return Tables{outcome_table(state, s.a1, s.b1), outcome_table(state, s.a1, s.b2),
                outcome_table(state, s.a2, s.b1), outcome_table(state, s.a2, s.b2)};
}

}  // namespace

BellResult evaluate_I(PureState const& state, MeasurementSettings const& settings) {
  check_dims(state, settings, "evaluate_I");
  Tables const t = all_tables(state, settings);
  // P(X = Y + k) is P(X - Y == k); Alice's outcome is the row index.
  double const value = correlated_probability(t.a1b1, 0)     // A1 = B1
                       + correlated_probability(t.a2b1, -1)  // B1 = A2 + 1
                       + correlated_probability(t.a2b2, 0)   // A2 = B2
                       + correlated_probability(t.a1b2, 0);  // B2 = A1
  return BellResult{BellKind::I, state.local_dim(), value};
}

BellResult evaluate_Id(PureState const& state, MeasurementSettings const& settings) {
  check_dims(state, settings, "evaluate_Id");
  std::size_t const d = state.local_dim();
  if (d < 2) throw InvalidInput("evaluate_Id: local dimension must be >= 2");
  Tables const t = all_tables(state, settings);
  double value = 0.0;
  for (std::size_t uk = 0; uk < d / 2; ++uk) {
    auto const k = static_cast<long>(uk);
    double const plus = correlated_probability(t.a1b1, k)          // A1 = B1 + k
                        + correlated_probability(t.a2b1, -k - 1)   // B1 = A2 + k + 1
                        + correlated_probability(t.a2b2, k)        // A2 = B2 + k
                        + correlated_probability(t.a1b2, -k);      // B2 = A1 + k
    double const minus = correlated_probability(t.a1b1, -k - 1)    // A1 = B1 - k - 1
                         + correlated_probability(t.a2b1, k)       // B1 = A2 - k
                         + correlated_probability(t.a2b2, -k - 1)  // A2 = B2 - k - 1
                         + correlated_probability(t.a1b2, k + 1);  // B2 = A1 - k - 1
    value += id_coefficient(d, uk) * (plus - minus);
  }
  return BellResult{BellKind::Id, d, value};
}

BellResult evaluate(BellKind kind, PureState const& state, MeasurementSettings const& settings) {
  return kind == BellKind::I ? evaluate_I(state, settings) : evaluate_Id(state, settings);
}

long projector_shift(int i, int j, long k) {
  if (i == 1 && j == 1) return k;
  if (i == 1 && j == 2) return -k;
  if (i == 2 && j == 1) return -k - 1;
  if (i == 2 && j == 2) return k;
  throw InvalidInput("projector_shift: setting indices must be 1 or 2");
}

double projector_weight(PureState const& state, MeasurementBasis const& alice,
                        MeasurementBasis const& bob, long shift) {
  auto const d = static_cast<long>(state.local_dim());
  if (static_cast<long>(alice.local_dim()) != d || static_cast<long>(bob.local_dim()) != d) {
    throw InvalidInput("projector_weight: dimension mismatch");
  }
  long const s = ((shift % d) + d) % d;
  double weight = 0.0;
  for (long l = 0; l < d; ++l) {
    ComplexVector const v = tensor_product(alice.vector(static_cast<std::size_t>((l + s) % d)),
                                           bob.vector(static_cast<std::size_t>(l)));
    weight += std::norm(v.dot(state.amplitudes()));
  }
  return weight;
}

BellResult evaluate_Id_projector(PureState const& state, MeasurementSettings const& settings) {
  check_dims(state, settings, "evaluate_Id_projector");
  std::size_t const d = state.local_dim();
  if (d < 2) throw InvalidInput("evaluate_Id_projector: local dimension must be >= 2");
  double r = 0.0;
  double s = 0.0;
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      MeasurementBasis const& a = settings.alice(i);
      MeasurementBasis const& b = settings.bob(j);
      for (std::size_t uk = 0; uk < d / 2; ++uk) {
        auto const k = static_cast<long>(uk);
        double const c = id_coefficient(d, uk);
        r += c * projector_weight(state, a, b, projector_shift(i, j, k));
        s += c * projector_weight(state, a, b, projector_shift(i, j, -k - 1));
      }
    }
  }
  return BellResult{BellKind::Id, d, r - s};
}

}  // namespace qbell
