#include "zeno/filters.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace zeno {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// s(u) = u sinc^2(u tau / 2) and its derivative.
double s_fn(double u, double tau) {
  const double c = sinc(0.5 * u * tau);
  return u * c * c;
}

double s_prime(double u, double tau) {
  const double c = sinc(0.5 * u * tau);
  return 2.0 * sinc(u * tau) - c * c;
}

}  // namespace

int default_series_order(double V0, double Omega) {
  if (!(Omega > 0.0)) throw std::invalid_argument("drive frequency Omega must be > 0");
  return static_cast<int>(std::ceil(std::abs(V0) / Omega)) + 25;
}

std::optional<SinusoidalDrive> as_sinusoidal(const EulerDrive& drive) {
  if (!drive.beta().is_zero() || !drive.gamma().is_zero()) return std::nullopt;
  SinusoidalDrive out{0.0, 0.0, 1.0};
  bool have_sinusoid = false;
  for (const auto& term : drive.alpha().terms()) {
    if (const auto* l = std::get_if<LinearTerm>(&term)) {
      out.eps0 += l->rate;
    } else if (const auto* s = std::get_if<SinusoidTerm>(&term)) {
      if (have_sinusoid) return std::nullopt;
      have_sinusoid = true;
      out.V0 = s->amplitude;
      out.Omega = s->frequency;
    } else if (!std::holds_alternative<ConstantTerm>(term)) {
      // Constants drop out of every phase increment; anything else does not fit.
      return std::nullopt;
    }
  }
  return out;
}

SeriesFilterValue q_rwa_sinusoidal_series(double eps0, double V0, double Omega, double omega,
                                          double tau, std::optional<int> order) {
  if (!(tau > 0.0)) throw std::domain_error("filter functions require tau > 0");
  if (!(omega >= 0.0)) throw std::domain_error("filter functions require omega >= 0");
  if (!(Omega > 0.0)) throw std::invalid_argument("drive frequency Omega must be > 0");

  SeriesFilterValue out;
  const int M = order.value_or(default_series_order(V0, Omega));
  if (M < 0) throw std::invalid_argument("series order must be >= 0");
  if (M > kBesselMaxOrder) throw std::range_error("series order exceeds the Bessel order limit");
  out.order = M;

  const double a = V0 / Omega;
  // |J_n(a)| <= (|a|/2)^n / n!
  out.tail_bound = std::exp((M + 1) * std::log(0.5 * std::abs(a)) - std::lgamma(M + 2.0));
  if (a == 0.0) out.tail_bound = 0.0;
  const int needed = static_cast<int>(std::ceil(std::abs(V0) / Omega)) + 20;
  out.truncation_warning = M < needed || out.tail_bound >= 1e-14;

  const auto table = bessel_j_table(M, a);
  std::vector<double> J(2 * M + 1);
  for (int n = -M; n <= M; ++n) {
    const double v = table[std::abs(n)];
    J[n + M] = (n < 0 && (n % 2 != 0)) ? -v : v;
  }

  const double detuning = eps0 - omega;
  std::vector<double> s_x(2 * M + 1);
  for (int n = -M; n <= M; ++n) s_x[n + M] = s_fn(detuning + n * Omega, tau);
  std::vector<double> s_y(4 * M + 1);
  for (int k = -2 * M; k <= 2 * M; ++k) s_y[k + 2 * M] = s_fn(k * Omega, tau);

  const double singular = 1e-6 * Omega;
  double total = 0.0;
  for (int m = -M; m <= M; ++m) {
    const double jm = J[m + M];
    if (jm == 0.0) continue;
    const double z = detuning + m * Omega;
    double row = 0.0;
    if (std::abs(z) < singular) {
      // [s(y) + s(x)] / z -> s'((n - m) Omega), taken at the midpoint of the
      // bracketing difference to keep the result second-order accurate in z.
      for (int n = -M; n <= M; ++n) {
        const double x0 = (n - m) * Omega;
        row += J[n + M] * s_prime(x0 + 0.5 * z, tau);
      }
      total += tau * jm * row;
    } else {
      for (int n = -M; n <= M; ++n) row += J[n + M] * (s_y[m - n + 2 * M] + s_x[n + M]);
      total += tau / z * jm * row;
    }
  }
  out.value = total;
  return out;
}

}  // namespace zeno
