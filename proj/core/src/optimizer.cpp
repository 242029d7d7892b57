#include "qbell/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qbell/parallel.hpp"
#include "qbell/perturbations.hpp"

namespace qbell {

void SimplexConfig::validate() const {
  if (!(reflection > 0.0)) throw InvalidInput("SimplexConfig: reflection must be > 0");
  if (!(expansion > 1.0)) throw InvalidInput("SimplexConfig: expansion must be > 1");
  if (!(contraction > 0.0 && contraction < 1.0)) {
    throw InvalidInput("SimplexConfig: contraction must lie in (0, 1)");
  }
  if (!(shrink > 0.0 && shrink < 1.0)) throw InvalidInput("SimplexConfig: shrink must lie in (0, 1)");
  if (!(spread_tol >= 0.0)) throw InvalidInput("SimplexConfig: spread_tol must be >= 0");
  if (!(x_tol >= 0.0)) throw InvalidInput("SimplexConfig: x_tol must be >= 0");
  if (!(initial_step >= 0.0)) throw InvalidInput("SimplexConfig: initial_step must be >= 0");
  if (!(max_seconds >= 0.0)) throw InvalidInput("SimplexConfig: max_seconds must be >= 0");
}

namespace {

std::string describe(std::vector<double> const& point, double value) {
  std::ostringstream os;
  os << "objective returned " << value << " at (";
  for (std::size_t i = 0; i < point.size() && i < 8; ++i) os << (i ? ", " : "") << point[i];
  if (point.size() > 8) os << ", ...";
  os << ")";
  return os.str();
}

}  // namespace

NonFiniteObjective::NonFiniteObjective(std::vector<double> point, double value)
    : NumericalError(describe(point, value)), point_(std::move(point)), value_(value) {}

SimplexResult nelder_mead(Objective const& objective, std::span<double const> x0,
                          SimplexConfig const& config) {
  config.validate();
  std::size_t const n = x0.size();
  if (n == 0) throw InvalidInput("nelder_mead: empty starting point");

  using Clock = std::chrono::steady_clock;
  auto const start = Clock::now();
  auto out_of_time = [&] {
    if (config.max_seconds <= 0.0) return false;
    return std::chrono::duration<double>(Clock::now() - start).count() > config.max_seconds;
  };

  std::size_t evals = 0;
  auto const simplex_size = [](auto const& vertices, std::size_t best) {
    double size = 0.0;
    for (auto const& v : vertices) {
      for (std::size_t i = 0; i < v.size(); ++i) size = std::max(size, std::abs(v[i] - vertices[best][i]));
    }
    return size;
  };
  auto eval = [&](std::vector<double> const& x) {
    double const f = objective(std::span<double const>(x));
    ++evals;
    if (!std::isfinite(f)) throw NonFiniteObjective(x, f);
    return f;
  };

  std::vector<std::vector<double>> xs(n + 1, std::vector<double>(x0.begin(), x0.end()));
  for (std::size_t i = 0; i < n; ++i) {
    double step = config.initial_step;
    if (step == 0.0) step = x0[i] != 0.0 ? 0.05 * std::abs(x0[i]) : 0.00025;
    xs[i + 1][i] += step;
  }
  std::vector<double> fs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fs[i] = eval(xs[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  bool converged = false;

  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    std::size_t const best = order.front();
    std::size_t const worst = order.back();
    std::size_t const second_worst = order[n - 1];

    if (fs[worst] - fs[best] <= config.spread_tol && (config.x_tol <= 0.0 || simplex_size(xs, best) <= config.x_tol)) {
      converged = true;
      break;
    }
    if (evals >= config.max_evals || out_of_time()) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      auto const& x = xs[order[v]];
      for (std::size_t i = 0; i < n; ++i) centroid[i] += x[i];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    auto const& xw = xs[worst];
    for (std::size_t i = 0; i < n; ++i) {
      xr[i] = centroid[i] + config.reflection * (centroid[i] - xw[i]);
    }
    double const fr = eval(xr);

    if (fr < fs[best]) {
      for (std::size_t i = 0; i < n; ++i) {
        xe[i] = centroid[i] + config.expansion * (xr[i] - centroid[i]);
      }
      double const fe = eval(xe);
      if (fe < fr) {
        xs[worst] = xe;
        fs[worst] = fe;
      } else {
        xs[worst] = xr;
        fs[worst] = fr;
      }
      continue;
    }
    if (fr < fs[second_worst]) {
      xs[worst] = xr;
      fs[worst] = fr;
      continue;
    }

    bool accepted = false;
    if (fr < fs[worst]) {
      // Outside contraction.
      for (std::size_t i = 0; i < n; ++i) {
        xc[i] = centroid[i] + config.contraction * (xr[i] - centroid[i]);
      }
      double const fc = eval(xc);
      if (fc <= fr) {
        xs[worst] = xc;
        fs[worst] = fc;
        accepted = true;
      }
    } else {
      // Inside contraction.
      for (std::size_t i = 0; i < n; ++i) {
        xc[i] = centroid[i] + config.contraction * (xw[i] - centroid[i]);
      }
      double const fc = eval(xc);
      if (fc < fs[worst]) {
        xs[worst] = xc;
        fs[worst] = fc;
        accepted = true;
      }
    }
    if (accepted) continue;

    auto const xb = xs[best];
    for (std::size_t v = 0; v <= n; ++v) {
      if (v == best) continue;
      for (std::size_t i = 0; i < n; ++i) xs[v][i] = xb[i] + config.shrink * (xs[v][i] - xb[i]);
      fs[v] = eval(xs[v]);
    }
  }

  std::size_t const best =
      static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  return SimplexResult{xs[best], fs[best], evals, converged};
}

// ---------------------------------------------------------------------------
// Observable parameterization

std::vector<double> ObservableParams::to_vector() const {
  std::size_t const d = local_dim();
  std::vector<double> x;
  x.reserve(4 * d * d);
  for (auto const& g : generators) {
    ComplexMatrix const& m = g.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) x.push_back(m(i, i).real());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
        x.push_back(m(i, j).real());
        x.push_back(m(i, j).imag());
      }
    }
  }
  return x;
}

ObservableParams ObservableParams::from_vector(std::size_t d, std::span<double const> x) {
  if (x.size() != 4 * d * d) {
    throw InvalidInput("ObservableParams: expected " + std::to_string(4 * d * d) + " reals, got " +
                       std::to_string(x.size()));
  }
  auto const n = static_cast<Eigen::Index>(d);
  ObservableParams p;
  std::size_t pos = 0;
  for (auto& g : p.generators) {
    ComplexMatrix upper = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) upper(i, i) = Complex(x[pos++], 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        double const re = x[pos++];
        double const im = x[pos++];
        upper(i, j) = Complex(re, im);
      }
    }
    g = HermitianMatrix(upper);
  }
  return p;
}

ObservableParams ObservableParams::zero(std::size_t d) {
  ObservableParams p;
  for (auto& g : p.generators) g = HermitianMatrix::zero(d);
  return p;
}

ObservableParams ObservableParams::random(std::size_t d, RandomStream& rng) {
  ObservableParams p;
  for (auto& g : p.generators) g = random_hermitian(d, rng);
  return p;
}

MeasurementSettings params_to_settings(ObservableParams const& params) {
  auto basis = [](HermitianMatrix const& g) { return MeasurementBasis(expm_i_hermitian(g, 1.0)); };
  return MeasurementSettings(basis(params.generators[0]), basis(params.generators[1]),
                             basis(params.generators[2]), basis(params.generators[3]));
}

HermitianMatrix hermitian_log(UnitaryMatrix const& u) {
  // A unitary is normal, so its complex Schur form is diagonal.
  Eigen::ComplexSchur<ComplexMatrix> schur(u.matrix());
  if (schur.info() != Eigen::Success) throw NumericalError("hermitian_log: Schur decomposition failed");
  ComplexMatrix const& q = schur.matrixU();
  ComplexMatrix const& t = schur.matrixT();
  RealVector phases(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) phases(k) = std::arg(t(k, k));
  ComplexMatrix const g = q * phases.cast<Complex>().asDiagonal() * q.adjoint();
  return HermitianMatrix(g);
}

ObservableParams settings_to_params(MeasurementSettings const& settings) {
  ObservableParams p;
  MeasurementBasis const* bases[4] = {&settings.a1, &settings.a2, &settings.b1, &settings.b2};
  for (std::size_t i = 0; i < 4; ++i) {
    p.generators[i] = hermitian_log(UnitaryMatrix(bases[i]->vectors()));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Settings search

namespace {

struct RestartOutcome {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> x;
  std::size_t n_evals = 0;
  bool converged = false;
  std::string failure;
};

}  // namespace

OptimizationResult optimize_settings(PureState const& state, BellKind kind, std::size_t restarts,
                                     std::uint64_t seed, SimplexConfig const& config,
                                     OptimizeOptions const& options) {
  if (restarts == 0) throw InvalidInput("optimize_settings: restarts must be >= 1");
  config.validate();
  std::size_t const d = state.local_dim();

  Objective const objective = [&](std::span<double const> x) {
    return -evaluate(kind, state, params_to_settings(ObservableParams::from_vector(d, x))).value;
  };

  std::vector<RestartOutcome> outcomes(restarts);
  parallel_for(restarts, options.threads, [&](std::size_t r) {
    RestartOutcome& out = outcomes[r];
    try {
      RandomStream rng = derive_stream(seed, r);
      std::vector<double> x = ObservableParams::random(d, rng).to_vector();
      double f = std::numeric_limits<double>::infinity();
      std::size_t const rounds = std::max<std::size_t>(1, options.refinements);
      for (std::size_t round = 0; round < rounds; ++round) {
        SimplexConfig cfg = config;
        if (out.n_evals >= config.max_evals) break;
        cfg.max_evals = config.max_evals - out.n_evals;
        SimplexResult const res = nelder_mead(objective, x, cfg);
        out.n_evals += res.n_evals;
        out.converged = res.converged;
        double const gain = f - res.f;
        if (res.f < f) {
          f = res.f;
          x = res.x;
        }
        if (!res.converged || !(gain > options.refine_tol)) break;
      }
      out.value = -f;
      out.x = std::move(x);
    } catch (std::exception const& e) {
      out.failure = "restart " + std::to_string(r) + ": " + e.what();
    }
  });

  OptimizationResult result;
  std::size_t best = restarts;
  for (std::size_t r = 0; r < restarts; ++r) {
    auto const& o = outcomes[r];
    result.n_evals += o.n_evals;
    if (!o.failure.empty()) {
      result.failures.push_back(o.failure);
      result.restart_values.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    result.restart_values.push_back(o.value);
    if (best == restarts || o.value > outcomes[best].value) best = r;
  }
  if (best == restarts) {
    throw NumericalError("optimize_settings: all restarts failed; first: " + result.failures.front());
  }
  result.best_params = ObservableParams::from_vector(d, outcomes[best].x);
  result.best_value = evaluate(kind, state, params_to_settings(result.best_params)).value;
  result.converged = outcomes[best].converged;
  return result;
}

}  // namespace qbell
