// Acceptance run: one [PASS]/[FAIL] line per criterion.
//
// Criteria 3 and 7 are known not to hold for the model as specified (see README);
// they are evaluated faithfully and print FAIL. The exit status is nonzero only when
// some other criterion fails, or when a known failure unexpectedly passes.

#include "zeno/presets.hpp"
#include "zeno/rates.hpp"
#include "zeno/sweep.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>

using namespace zeno;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

const std::set<int> kKnownFailures{3, 7};

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  v.back() = b;
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
  v.back() = b;
  return v;
}

EulerDrive sinusoidal(double V0, double Omega) {
  if (V0 == 0.0) return EulerDrive::undriven(1.0);
  return EulerDrive(AngleProfile::linear(1.0) + AngleProfile::sinusoid(V0, Omega), {}, {});
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome c1_sinc() {
  const auto d = EulerDrive::undriven(1.0);
  double worst = 0.0;
  for (double tau : {0.1, 1.0, 2.0})
    for (double w : linspace(0.0, 10.0, 200)) {
      const double s = sinc((1.0 - w) * tau / 2.0);
      worst = std::max(worst, std::abs(q_rwa(d, w, tau) - tau * s * s));
    }
  return {worst < 1e-8, fmt("max |Q - tau sinc^2| = %.2e (limit 1e-8)", worst)};
}

Outcome c2_series() {
  double worst = 0.0;
  int singular = 0;
  for (auto [V0, Omega] : {std::pair{1.0, 5.0}, {5.0, 1.0}, {5.0, 5.0}}) {
    const auto d = sinusoidal(V0, Omega);
    auto grid = linspace(0.0, 10.0, 200);
    for (int m = -10; m <= 10; ++m) {
      const double w = 1.0 + m * Omega;
      if (w >= 0.0 && w <= 10.0) {
        grid.push_back(w);
        ++singular;
      }
    }
    for (double tau : {0.1, 1.0})
      for (double w : grid) {
        const double q = q_rwa(d, w, tau);
        const double s = q_rwa_sinusoidal_series(1.0, V0, Omega, w, tau).value;
        worst = std::max(worst, std::abs(s - q) / std::abs(q));
      }
  }
  return {worst < 1e-6, fmt("max relative difference %.2e over %g singular points and the grid (limit 1e-6)",
                            worst, static_cast<double>(singular))};
}

Outcome c3_peak() {
  const auto d = sinusoidal(5.0, 1.0);
  const auto grid = linspace(0.0, 10.0, 201);
  std::size_t best = 0;
  std::vector<double> q(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    q[i] = q_rwa(d, grid[i], 1.0);
    if (q[i] > q[best]) best = i;
  }
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  const auto r = boost::math::tools::brent_find_minima(
      [&](double w) { return -q_rwa(d, w, 1.0); }, lo, hi, 40);
  const double peak = r.first;
  return {std::abs(peak - 5.6) <= 0.3,
          fmt("maximum at omega = %.4f (grid argmax %.2f); target 5.6 +- 0.3", peak, grid[best])};
}

Outcome c4_reduction() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-3.0, 3.0), f(0.3, 6.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const EulerDrive d(AngleProfile::linear(u(rng)) + AngleProfile::sinusoid(u(rng), f(rng)), {},
                       AngleProfile::linear(u(rng)) + AngleProfile::sinusoid(u(rng), f(rng)));
    for (double tau : {0.1, 1.0, 5.0})
      for (double w : {0.1, 1.0, 2.5, 5.0, 10.0, 20.0})
        worst = std::max(worst, std::abs(q_full(d, w, tau) - q_rwa(d, w, tau)));
  }
  return {worst < 1e-8, fmt("max |Q_full - Q_rwa| = %.2e over 20 drives (limit 1e-8)", worst)};
}

Outcome c5_dephasing() {
  double worst = 0.0;
  for (double tau : {0.5, 1.0, 2.0})
    for (double w : linspace(0.1, 20.0, 200)) {
      const double closed = 2.0 / tau * (1.0 - std::cos(w * tau)) / (w * w);
      worst = std::max(worst, std::abs(q_dephasing({}, AngleProfile::linear(1.0), {}, w, tau) - closed));
    }
  return {worst < 1e-8, fmt("max |Q - (2/tau)(1 - cos w tau)/w^2| = %.2e (limit 1e-8)", worst)};
}

Outcome c6_regimes() {
  const OhmicSpectralDensity sd(0.01, 10.0);
  const auto grid = logspace(0.05, 3.0, 120);
  auto count = [&](double V0, double Omega) {
    const RateModel m = WeakCouplingModel{PopulationDecayRWA{sinusoidal(V0, Omega)}};
    return classify_regimes(rate_curve(m, sd, ZeroTemperature{}, grid, {}, 0)).crossovers.size();
  };
  const auto undriven = count(0.0, 1.0);
  const auto driven = count(5.0, 5.0);
  return {undriven == 1 && driven >= 2,
          fmt("undriven %g crossover(s) (want 1), V0 = Omega = 5: %g (want >= 2)",
              static_cast<double>(undriven), static_cast<double>(driven))};
}

Outcome c7_zeno_limit() {
  const auto grid = linspace(0.0, 10.0, 201);
  std::vector<std::vector<double>> curves;
  for (auto [V0, Omega] : {std::pair{0.0, 1.0}, {1.0, 5.0}, {5.0, 1.0}, {5.0, 5.0}}) {
    const auto d = sinusoidal(V0, Omega);
    std::vector<double> q;
    for (double w : grid) q.push_back(q_rwa(d, w, 0.1));
    curves.push_back(q);
  }
  double peak = 0.0, spread = 0.0, vs_undriven = 0.0;
  for (const auto& c : curves) peak = std::max(peak, *std::max_element(c.begin(), c.end()));
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t a = 0; a < curves.size(); ++a) {
      vs_undriven = std::max(vs_undriven, std::abs(curves[a][i] - curves[0][i]));
      for (std::size_t b = a + 1; b < curves.size(); ++b)
        spread = std::max(spread, std::abs(curves[a][i] - curves[b][i]));
    }
  const double rel = spread / peak;
  const OhmicSpectralDensity sd(0.01, 10.0);
  const double tau = 0.01;
  const double gamma = decay_rate_weak(PopulationDecayRWA{EulerDrive::undriven(1.0)}, sd, tau);
  const double asymptote = tau * 0.01 * 100.0;
  const double dev = std::abs(gamma / asymptote - 1.0);
  return {rel < 0.05 && dev < 0.10,
          fmt("tau = 0.1: pairwise spread %.2f%% of peak, vs undriven %.2f%% (limit 5%%); ", 100 * rel,
                  100 * vs_undriven / peak) +
              fmt("tau = 0.01: Gamma/asymptote - 1 = %.2f%% (limit 10%%)", 100 * dev)};
}

Outcome c8_large_spin() {
  const OhmicSpectralDensity sd(0.01, 10.0);
  const EulerDrive d(AngleProfile::linear(1.0), AngleProfile::linear(5.0), AngleProfile::linear(1.0));
  double worst = 0.0;
  for (double tau : {0.1, 1.0, 3.0}) {
    const double one = decay_rate_weak(PopulationDecayFull{d}, sd, tau);
    for (int n : {2, 5, 10}) {
      const double big = decay_rate_weak(LargeSpin{d, n}, sd, tau);
      worst = std::max(worst, std::abs(big - n * one) / std::abs(n * one));
    }
  }
  return {worst < 1e-12, fmt("max relative deviation from N_S x single-spin rate %.2e (limit 1e-12)", worst)};
}

Outcome c9_polaron() {
  const OhmicSpectralDensity g1(1.0, 10.0), g2(2.0, 10.0), g0(0.0, 10.0);
  const double di = std::abs(phi_i(g1, 1.0) - std::atan(10.0));
  const double dr = std::abs(phi_r(g1, 1.0, ZeroTemperature{}) - 0.5 * std::log(101.0));
  const auto eps = AngleProfile::constant(1.0);
  double free_dev = 0.0;
  for (double tau : {0.1, 1.0, 5.0}) {
    const double exact = 0.05 * 0.05 * (1.0 - std::cos(tau)) / (2.0 * tau);
    free_dev = std::max(free_dev, std::abs(decay_rate_polaron(0.05, eps, g0, ZeroTemperature{}, tau) - exact) / exact);
  }
  int violations = 0;
  const auto grid = logspace(0.05, 5.0, 120);
  std::vector<AngleProfile> drives{eps, eps + AngleProfile::cosine(1.0, 5.0),
                                   eps + AngleProfile::cosine(5.0, 1.0), eps + AngleProfile::cosine(5.0, 5.0)};
  for (const auto& e : drives) {
    const auto a = rate_curve(PolaronModel{0.05, e}, g1, ZeroTemperature{}, grid, {}, 0);
    const auto b = rate_curve(PolaronModel{0.05, e}, g2, ZeroTemperature{}, grid, {}, 0);
    for (std::size_t i = 0; i < grid.size(); ++i) violations += b.gamma[i] < a.gamma[i] ? 0 : 1;
  }
  double quad = 0.0;
  for (double tau : {0.1, 1.0, 4.0}) {
    const double a = decay_rate_polaron(0.05, drives[3], g1, ZeroTemperature{}, tau);
    const double b = decay_rate_polaron(0.1, drives[3], g1, ZeroTemperature{}, tau);
    quad = std::max(quad, std::abs(b - 4.0 * a) / std::abs(4.0 * a));
  }
  const bool ok = di < 1e-12 && dr < 1e-12 && free_dev < 1e-8 && violations == 0 && quad < 1e-12;
  return {ok, fmt("|dPhi_I| %.1e, |dPhi_R| %.1e, ", di, dr) +
                  fmt("G=0 rel dev %.1e, G=2 >= G=1 at %g points, ", free_dev, static_cast<double>(violations)) +
                  fmt("Gamma(2 delta)/4 Gamma(delta) - 1 = %.1e", quad)};
}

Outcome c10_linearity() {
  const EulerDrive d(AngleProfile::linear(1.0) + AngleProfile::sinusoid(5.0, 5.0),
                     AngleProfile::linear(5.0), AngleProfile::linear(1.0));
  double worst = 0.0;
  for (FilterModel m : {FilterModel{PopulationDecayRWA{d}}, FilterModel{PopulationDecayFull{d}},
                        FilterModel{Dephasing{AngleProfile::sinusoid(5.0, 5.0), AngleProfile::linear(1.0), {}}}})
    for (double tau : {0.05, 0.5, 3.0}) {
      const double a = decay_rate_weak(m, OhmicSpectralDensity(0.01, 10.0), tau);
      const double b = decay_rate_weak(m, OhmicSpectralDensity(0.05, 10.0), tau);
      worst = std::max(worst, std::abs(b - 5.0 * a) / std::abs(5.0 * a));
    }
  return {worst < 1e-10, fmt("max |Gamma(0.05) / 5 Gamma(0.01) - 1| = %.2e (limit 1e-10)", worst)};
}

Outcome c11_determinism() {
  int presets_checked = 0, mismatches = 0;
  for (const auto& p : presets()) {
    std::vector<PresetVariant> runs = p.variants;
    auto sweep = [&](unsigned threads) {
      SweepOptions o;
      o.threads = threads;
      return runs.front().config.sweep == SweepKind::Filter ? run_filter_sweep(runs, o).csv
                                                            : run_rate_sweep(runs, o).csv;
    };
    const auto a = sweep(1), b = sweep(1), c = sweep(4), d = sweep(0);
    mismatches += (a == b && a == c && a == d) ? 0 : 1;
    ++presets_checked;
  }
  return {mismatches == 0, fmt("%g presets x {1, 1, 4, hardware} threads, %g differing",
                               static_cast<double>(presets_checked), static_cast<double>(mismatches))};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "sinc-squared closed form", 10, c1_sinc},
      {2, "Bessel series vs quadrature", 60, c2_series},
      {3, "driven RWA filter peak location", 30, c3_peak},
      {4, "full filter reduces to RWA for beta = 0", 0, c4_reduction},
      {5, "dephasing closed form", 0, c5_dephasing},
      {6, "Zeno/anti-Zeno crossover counts", 300, c6_regimes},
      {7, "Zeno-limit universality", 0, c7_zeno_limit},
      {8, "large-spin factor", 0, c8_large_spin},
      {9, "polaron checks", 0, c9_polaron},
      {10, "linearity in G", 0, c10_linearity},
      {11, "determinism across runs and threads", 0, c11_determinism},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += fmt("; runtime %.1f s over budget %.0f s", secs, c.budget_s);
    }
    const bool known = kKnownFailures.count(c.id) > 0;
    if (o.pass == known) ++unexpected;
    std::printf("[%s] %2d %s: %s (%.2f s)%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                secs, known && !o.pass ? " [known]" : "");
    std::fflush(stdout);
  }
  std::printf("%d unexpected result(s)\n", unexpected);
  return unexpected == 0 ? 0 : 1;
}
