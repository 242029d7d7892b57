#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qbell/parallel.hpp"
#include "qbell/qbell.hpp"

#ifdef QBELL_HAVE_CLI
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "qbell/cli/runner.hpp"
#endif

namespace {

using namespace qbell;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, std::string const& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

PureState uniform_state(std::size_t d, RandomStream& rng) {
  return PureState(d, uniform_sphere_state(d * d, rng));
}

void exact_qubit_optimum(Outcome& o) {
  double const i = evaluate_I(bell_state(2), optimal_settings(2)).value;
  double const id = evaluate_Id(bell_state(2), optimal_settings(2)).value;
  o.check(std::abs(i - (2.0 + std::numbers::sqrt2)) <= 1e-9, "I = 2 + sqrt2");
  o.check(std::abs(id - 2.0 * std::numbers::sqrt2) <= 1e-9, "Id = 2 sqrt2");
  o.detail << "I=" << fmt(i, 12) << " Id=" << fmt(id, 12);
}

void unperturbed_curves(Outcome& o) {
  double prev = 5.0;
  double last_i = 0.0, last_id = 0.0;
  for (std::size_t d = 2; d <= 21; ++d) {
    PureState const psi = bell_state(d);
    MeasurementSettings const s = optimal_settings(d);
    double const i = evaluate_I(psi, s).value;
    double const id = evaluate_Id(psi, s).value;
    o.check(i > 3.0, "I > 3 at d=" + std::to_string(d));
    o.check(id > 2.0, "Id > 2 at d=" + std::to_string(d));
    o.check(i < prev, "I decreasing at d=" + std::to_string(d));
    o.check(std::abs(i - oracle::brute_force_I(psi, s)) <= 1e-10, "brute-force I at d=" + std::to_string(d));
    prev = i;
    last_i = i;
    last_id = id;
  }
  o.detail << "I(21)=" << fmt(last_i) << " Id(21)=" << fmt(last_id);
}

void projector_equivalence(Outcome& o) {
  double worst = 0.0;
  for (std::size_t d = 2; d <= 7; ++d) {
    for (std::uint64_t k = 0; k < 100; ++k) {
      RandomStream rng = derive_stream(1000 + d, k);
      PureState const psi = uniform_state(d, rng);
      MeasurementSettings const s = haar_settings(d, rng);
      worst = std::max(worst, std::abs(evaluate_Id(psi, s).value - evaluate_Id_projector(psi, s).value));
    }
  }
  o.check(worst <= 1e-10, "max deviation <= 1e-10");
  o.detail << "max |Id - projector form|=" << fmt(worst, 3);
}

void qubit_identity(Outcome& o) {
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    RandomStream rng = derive_stream(2024, k);
    PureState const psi = uniform_state(2, rng);
    MeasurementSettings const s = haar_settings(2, rng);
    worst = std::max(worst, std::abs(evaluate_Id(psi, s).value - (2.0 * evaluate_I(psi, s).value - 4.0)));
  }
  o.check(worst <= 1e-10, "max deviation <= 1e-10");
  o.detail << "max |Id - (2I - 4)|=" << fmt(worst, 3);
}

void separable_ceiling(Outcome& o) {
  double max_i = 0.0, max_id = -4.0;
  std::size_t exceptions = 0;
  for (std::size_t d : {2, 3, 5}) {
    for (std::uint64_t k = 0; k < 1000; ++k) {
      RandomStream rng = derive_stream(5000 + d, k);
      PureState const psi = random_product_state(d, rng);
      MeasurementSettings const s = haar_settings(d, rng);
      double const i = evaluate_I(psi, s).value;
      double const id = evaluate_Id(psi, s).value;
      exceptions += (i > 3.0 + 1e-9) + (id > 2.0 + 1e-9);
      max_i = std::max(max_i, i);
      max_id = std::max(max_id, id);
    }
  }
  o.check(exceptions == 0, "no product state above the classical bounds");
  o.detail << "max I=" << fmt(max_i) << " max Id=" << fmt(max_id) << " exceptions=" << exceptions;
}

void qutrit_skew(Outcome& o) {
  SampleRun const run = sample_distribution(BellKind::I, 3, 0.233, PerturbationKind::Bilocal, 100000, 7);
  GaussianFit const g = gaussian_summary(run.values);
  o.check(g.skewness < 0.0, "skewness < 0");
  o.detail << "mu=" << fmt(g.mu) << " sigma=" << fmt(g.sigma) << " skew=" << fmt(g.skewness);
}

void ordering_claims(Outcome& o) {
  std::vector<double> const ls{1.0, 1.5, 2.0};
  std::vector<double> const eps{0.12, 0.23};
  std::size_t const n = 10000;
  std::vector<std::vector<ProfilePoint>> pi, pd;
  for (double e : eps) {
    pi.push_back(violation_profile(BellKind::I, e, ls, n, 11));
    pd.push_back(violation_profile(BellKind::Id, e, ls, n, 11));
  }
  for (std::size_t a = 0; a < eps.size(); ++a) {
    for (std::size_t k = 0; k < ls.size(); ++k) {
      double const joint = std::hypot(pi[a][k].std_error, pd[a][k].std_error);
      o.check(pd[a][k].p_violation >= pi[a][k].p_violation - 3.0 * joint,
              "P_Id >= P_I at l=" + fmt(ls[k]) + " eps=" + fmt(eps[a]));
      o.detail << " l=" << fmt(ls[k]) << ",eps=" << fmt(eps[a]) << ": P_I=" << fmt(pi[a][k].p_violation, 4)
               << " P_Id=" << fmt(pd[a][k].p_violation, 4);
    }
  }
  for (auto const* prof : {&pi, &pd}) {
    for (std::size_t k = 0; k < ls.size(); ++k) {
      auto const& lo = (*prof)[0][k];
      auto const& hi = (*prof)[1][k];
      o.check(hi.p_violation <= lo.p_violation + 3.0 * std::hypot(lo.std_error, hi.std_error),
              "non-increasing in eps at l=" + fmt(ls[k]));
    }
  }
}

void critical_power_law(Outcome& o) {
  std::vector<double> ls;
  for (int t = 1; t <= 8; ++t) ls.push_back(0.5 * t);
  double slope[2][2] = {};
  for (auto pk : {PerturbationKind::Bilocal, PerturbationKind::Global}) {
    for (auto kind : {BellKind::I, BellKind::Id}) {
      std::vector<DataPoint> pts;
      for (double l : ls) {
        CriticalEpsilon const c = critical_epsilon(kind, dimension_for_spin(l), 10000, 2024, pk);
        o.check(c.status != CriticalEpsilon::Status::BelowRange, "critical epsilon in range");
        pts.push_back({l, c.value});
      }
      double const s = fit_power_law(pts).slope();
      slope[pk == PerturbationKind::Global][kind == BellKind::Id] = s;
      o.detail << " " << to_string(pk) << "/" << to_string(kind) << " slope=" << fmt(s, 4);
    }
  }
  o.check(std::abs(slope[0][0] - (-1.13)) <= 0.35, "bilocal I exponent in -1.13 +- 0.35");
  o.check(std::abs(slope[0][1] - (-0.96)) <= 0.35, "bilocal Id exponent in -0.96 +- 0.35");
  o.check(slope[1][0] < slope[0][0], "global I decays faster than bilocal I");
  o.check(slope[1][1] < slope[0][1], "global Id decays faster than bilocal Id");
}

void random_measurements(Outcome& o, bool extended) {
  std::vector<DataPoint> means, sigmas;
  for (int l = 1; l <= 5; ++l) {
    SampleRun const run = random_measurement_run(dimension_for_spin(l), 100000, 31);
    GaussianFit const g = gaussian_summary(run.values);
    means.push_back({static_cast<double>(l), g.mu});
    sigmas.push_back({static_cast<double>(l), g.sigma});
  }
  double const ms = fit_power_law(means).slope();
  double const ss = fit_power_law(sigmas).slope();
  o.check(std::abs(ms - (-0.79)) <= 0.20, "mean exponent in -0.79 +- 0.20");
  o.check(std::abs(ss - (-1.13)) <= 0.25, "sigma exponent in -1.13 +- 0.25");
  o.detail << "mean slope=" << fmt(ms, 4) << " sigma slope=" << fmt(ss, 4);
  if (extended) {
    SampleRun const big = random_measurement_run(3, 10000000, 32);
    ViolationStats const v = violation_stats(big);
    o.detail << " l=1 N=1e7 P=" << fmt(v.p_violation, 3);
    o.check(v.p_violation < 1e-5, "l=1 violation frequency of order 1e-7..1e-6");
  }
}

void optimizer_recovery(Outcome& o) {
  OptimizeOptions opts;
  opts.threads = default_threads();
  double const qubit = optimize_settings(bell_state(2), BellKind::I, 50, 101, {}, opts).best_value;
  double const qutrit = optimize_settings(bell_state(3), BellKind::Id, 50, 102, {}, opts).best_value;
  o.check(qubit >= 3.414 - 1e-3, "I(d=2) >= 3.413");
  o.check(qutrit >= 2.872 - 1e-2, "Id(d=3) >= 2.862");
  o.detail << "I_opt(2)=" << fmt(qubit, 8) << " Id_opt(3)=" << fmt(qutrit, 8);
  for (double l : {0.5, 1.0, 1.5, 2.0, 2.5}) {
    std::size_t const d = dimension_for_spin(l);
    for (auto kind : {BellKind::I, BellKind::Id}) {
      double const v = optimize_settings(bell_state(d), kind, 5, 200 + d, {}, opts).best_value;
      o.check(v > classical_bound(kind), "violation at l=" + fmt(l) + " " + std::string(to_string(kind)));
      o.detail << " l=" << fmt(l) << " " << to_string(kind) << "=" << fmt(v, 5);
    }
  }
}

void appendix_bounds(Outcome& o) {
  double const formula = 2.0 * std::exp(-9.0 * 4.0 / (192.0 * 9.0 * std::pow(std::numbers::pi, 3)));
  o.check(std::abs(bound_main(3, 2.0) - formula) <= 1e-5, "bound_main(3,2) matches formula");
  o.check(std::abs(bound_main(3, 2.0) - 1.99866) <= 1e-5, "bound_main(3,2) = 1.99866");
  o.detail << "bound_main(3,2)=" << fmt(bound_main(3, 2.0), 8);
  for (std::size_t d : {3, 5, 9}) {
    auto const values = sample_uniform_id(d, 100000, 77 + d);
    for (double eps : {0.25, 0.5, 1.0}) {
      ConcentrationReport const r = concentration_report(d, eps, values);
      o.check(r.empirical_fraction <= r.bound_main + 3.0 * r.std_error,
              "fraction <= bound at d=" + std::to_string(d) + " eps=" + fmt(eps));
      if (eps == 0.5) {
        o.check(std::abs(r.mean) <= 3.0 * r.mean_std_error, "mean of Id ~ 0 at d=" + std::to_string(d));
        o.detail << " d=" << d << ": mean=" << fmt(r.mean, 3) << " frac(0.5)=" << fmt(r.empirical_fraction, 4)
                 << " bound=" << fmt(r.bound_main, 4);
      }
    }
  }
}

#ifdef QBELL_HAVE_CLI
std::string slurp(std::filesystem::path const& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism(Outcome& o) {
  namespace fs = std::filesystem;
  fs::path const dir = fs::temp_directory_path() / ("qbell_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<std::vector<std::string>> const runs{
      {"fig1", "--l-max", "5"},
      {"fig2", "--l-max", "2", "--samples", "2000"},
      {"fig3", "--samples", "5000"},
      {"fig4", "--l-max", "1.5", "--samples", "500", "--epsilon-grid", "0.05:1:2"},
      {"fig5", "--l-max", "1.5", "--samples", "500"},
      {"fig6", "--l-max", "2", "--samples", "2000"},
      {"fig7", "--l-max", "1", "--restarts", "3"},
      {"fig8", "--l-max", "0.5", "--restarts", "2"},
      {"appendix", "--samples", "3000"},
  };
  std::size_t files = 0;
  for (auto const& base : runs) {
    std::vector<std::string> outputs[2];
    for (int w = 0; w < 2; ++w) {
      std::vector<std::string> args{"qbell"};
      args.insert(args.end(), base.begin(), base.end());
      std::string const out = (dir / (base[0] + "_" + std::to_string(w) + ".csv")).string();
      args.insert(args.end(), {"--seed", "12345", "--threads", w == 0 ? "1" : "8", "--output", out});
      std::vector<char const*> argv;
      for (auto const& a : args) argv.push_back(a.c_str());
      std::ostringstream sout, serr;
      int const rc = cli::run_cli(static_cast<int>(argv.size()), argv.data(), sout, serr);
      o.check(rc == 0, base[0] + " exit status: " + serr.str());
      std::istringstream listed(sout.str());
      for (std::string line; std::getline(listed, line);) {
        if (line.size() < 10 || line.substr(line.size() - 10) != ".meta.json") outputs[w].push_back(slurp(line));
      }
    }
    o.check(!outputs[0].empty() && outputs[0] == outputs[1], base[0] + " byte-identical at 1 and 8 workers");
    files += outputs[0].size();
  }
  fs::remove_all(dir);
  o.detail << "compared " << files << " data files across 9 subcommands";
}
#else
void determinism(Outcome& o) {
  RunOptions one, eight;
  one.threads = 1;
  eight.threads = 8;
  auto const a = sample_distribution(BellKind::Id, 5, 0.2, PerturbationKind::Global, 2000, 12345, one);
  auto const b = sample_distribution(BellKind::Id, 5, 0.2, PerturbationKind::Global, 2000, 12345, eight);
  o.check(a.values == b.values, "identical samples at 1 and 8 workers");
  o.detail << "library-level comparison (command-line runner not built)";
}
#endif

struct Criterion {
  int id;
  char const* name;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  bool extended = false;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--extended") == 0) {
      extended = true;
    } else {
      only.insert(std::atoi(argv[i]));
    }
  }
  std::vector<Criterion> const criteria{
      {1, "exact optimum at d=2", exact_qubit_optimum},
      {2, "unperturbed curves for d=2..21", unperturbed_curves},
      {3, "projector-form oracle equivalence", projector_equivalence},
      {4, "qubit identity Id = 2I - 4", qubit_identity},
      {5, "separable ceiling", separable_ceiling},
      {6, "negative skew at l=1, eps=0.233", qutrit_skew},
      {7, "ordering claims at N=1e4", ordering_claims},
      {8, "critical epsilon power law", critical_power_law},
      {9, "random measurement scaling", [&](Outcome& o) { random_measurements(o, extended); }},
      {10, "optimizer recovery", optimizer_recovery},
      {11, "appendix concentration bounds", appendix_bounds},
      {12, "determinism across worker counts", determinism},
  };
  int failures = 0;
  for (auto const& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    auto const t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (std::exception const& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("criterion %2d %s  %s (%.1fs): %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
