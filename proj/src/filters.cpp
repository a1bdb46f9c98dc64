#include "zeno/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace zeno {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_point(double omega, double tau) {
  if (!(tau > 0.0)) throw std::domain_error("filter functions require tau > 0");
  if (!(omega >= 0.0)) throw std::domain_error("filter functions require omega >= 0");
}

double frequency_hint(double omega, double drive_rate) { return std::max(omega, drive_rate); }

// P and S such that the four D terms sum to P cos(theta) + S sin(theta),
// theta = d_gamma - omega lag. Angles are given as (alpha, beta) at t and t - lag.
struct CounterRotating {
  double p;
  double s;
};

CounterRotating full_coefficients(double a_now, double b_now, double a_then, double b_then) {
  const double ca = std::cos(a_now), sa = std::sin(a_now), cb = std::cos(b_now);
  const double ca2 = std::cos(a_then), sa2 = std::sin(a_then), cb2 = std::cos(b_then);
  return {ca * cb * ca2 * cb2 + sa * sa2, -ca2 * cb2 * sa + ca * cb * sa2};
}

CounterRotating dephasing_coefficients(double at_now, double b_now, double at_then,
                                       double b_then) {
  const double ca = std::cos(at_now), sa = std::sin(at_now), cb = std::cos(b_now);
  const double ca2 = std::cos(at_then), sa2 = std::sin(at_then), cb2 = std::cos(b_then);
  return {sa * cb * sa2 * cb2 + ca * ca2, sa2 * cb2 * ca - sa * cb * ca2};
}

double cos_half_squared(double angle) {
  const double c = std::cos(0.5 * angle);
  return c * c;
}

}  // namespace

void validate(const FilterModel& model) {
  if (const auto* spin = std::get_if<LargeSpin>(&model)) {
    if (spin->n_spins < 1) throw std::invalid_argument("large-spin model requires N_S >= 1");
  }
}

std::string describe(const FilterModel& model) {
  return std::visit(
      overloaded{
          [](const PopulationDecayRWA& m) { return "population_decay_rwa[" + m.drive.describe() + "]"; },
          [](const PopulationDecayFull& m) { return "population_decay_full[" + m.drive.describe() + "]"; },
          [](const Dephasing& m) {
            return "dephasing[alpha_tilde=" + m.alpha_tilde.describe() + "; beta=" +
                   m.beta.describe() + "; gamma_tilde=" + m.gamma_tilde.describe() + "]";
          },
          [](const LargeSpin& m) {
            return "large_spin[N_S=" + std::to_string(m.n_spins) + "; " + m.drive.describe() + "]";
          },
      },
      model);
}

EulerDrive dephasing_frame_drive(const AngleProfile& alpha_tilde, const AngleProfile& beta,
                                 const AngleProfile& gamma_tilde) {
  const double half_pi = 0.5 * std::numbers::pi;
  return EulerDrive(AngleProfile::constant(half_pi) + alpha_tilde, beta,
                    AngleProfile::constant(-half_pi) + gamma_tilde);
}

FilterKernel::FilterKernel(FilterModel model) : model_(std::move(model)) { validate(model_); }

std::complex<double> FilterKernel::operator()(double t, double lag) const {
  const double then = t - lag;
  return std::visit(
      overloaded{
          [&](const PopulationDecayRWA& m) {
            const auto& d = m.drive;
            const double phase = d.alpha().increment(t, lag) + d.gamma().increment(t, lag);
            double weight = 1.0;
            if (!d.beta_vanishes())
              weight = cos_half_squared(d.beta().value(t)) * cos_half_squared(d.beta().value(then));
            return std::polar(weight, phase);
          },
          [&](const PopulationDecayFull& m) {
            const auto& d = m.drive;
            const auto c = full_coefficients(d.alpha().value(t), d.beta().value(t),
                                             d.alpha().value(then), d.beta().value(then));
            return std::complex<double>(c.p, -c.s) * std::polar(1.0, d.gamma().increment(t, lag));
          },
          [&](const Dephasing& m) {
            const auto c = dephasing_coefficients(m.alpha_tilde.value(t), m.beta.value(t),
                                                  m.alpha_tilde.value(then), m.beta.value(then));
            return std::complex<double>(c.p, -c.s) *
                   std::polar(1.0, m.gamma_tilde.increment(t, lag));
          },
          [&](const LargeSpin& m) {
            const auto& d = m.drive;
            const auto c = full_coefficients(d.alpha().value(t), d.beta().value(t),
                                             d.alpha().value(then), d.beta().value(then));
            return std::complex<double>(c.p, -c.s) * std::polar(1.0, d.gamma().increment(t, lag));
          },
      },
      model_);
}

double FilterKernel::multiplicity() const {
  if (const auto* spin = std::get_if<LargeSpin>(&model_)) return spin->n_spins;
  return 1.0;
}

double FilterKernel::bound() const {
  return std::holds_alternative<PopulationDecayRWA>(model_) ? 1.0 : 2.0;
}

double FilterKernel::characteristic_rate() const {
  return std::visit(overloaded{
                        [](const PopulationDecayRWA& m) { return m.drive.characteristic_rate(); },
                        [](const PopulationDecayFull& m) { return m.drive.characteristic_rate(); },
                        [](const Dephasing& m) {
                          return std::max({m.alpha_tilde.characteristic_rate(),
                                           m.beta.characteristic_rate(),
                                           m.gamma_tilde.characteristic_rate()});
                        },
                        [](const LargeSpin& m) { return m.drive.characteristic_rate(); },
                    },
                    model_);
}

double q_rwa(const EulerDrive& drive, double omega, double tau, const QuadratureConfig& cfg) {
  check_point(omega, tau);
  const bool flat_beta = drive.beta_vanishes();
  auto integrand = [&](double t, double lag) {
    const double phase =
        drive.alpha().increment(t, lag) + drive.gamma().increment(t, lag) - omega * lag;
    if (flat_beta) return std::cos(phase);
    return std::cos(phase) * cos_half_squared(drive.beta().value(t)) *
           cos_half_squared(drive.beta().value(t - lag));
  };
  const double hint = frequency_hint(omega, drive.characteristic_rate());
  return scaled_result(2.0 / tau, [&] { return integrate_triangle(integrand, tau, cfg, hint); });
}

double q_full(const EulerDrive& drive, double omega, double tau, const QuadratureConfig& cfg) {
  check_point(omega, tau);
  auto integrand = [&](double t, double lag) {
    const double then = t - lag;
    const double theta = drive.gamma().increment(t, lag) - omega * lag;
    const double a = drive.alpha().value(t), a2 = drive.alpha().value(then);
    const double b = drive.beta().value(t), b2 = drive.beta().value(then);
    const double d1 = std::cos(theta) * std::cos(a) * std::cos(b) * std::cos(a2) * std::cos(b2);
    const double d2 = -std::sin(theta) * std::cos(a2) * std::cos(b2) * std::sin(a);
    const double d3 = std::sin(theta) * std::cos(a) * std::cos(b) * std::sin(a2);
    const double d4 = std::cos(theta) * std::sin(a) * std::sin(a2);
    return d1 + d2 + d3 + d4;
  };
  const double hint = frequency_hint(omega, drive.characteristic_rate());
  return scaled_result(2.0 / tau, [&] { return integrate_triangle(integrand, tau, cfg, hint); });
}

double q_dephasing(const AngleProfile& alpha_tilde, const AngleProfile& beta,
                   const AngleProfile& gamma_tilde, double omega, double tau,
                   const QuadratureConfig& cfg) {
  check_point(omega, tau);
  if (std::abs(beta.value(0.0)) > 1e-12)
    throw std::invalid_argument("dephasing beta profile must vanish at t = 0");
  auto integrand = [&](double t, double lag) {
    const double then = t - lag;
    const double theta = gamma_tilde.increment(t, lag) - omega * lag;
    const double a = alpha_tilde.value(t), a2 = alpha_tilde.value(then);
    const double b = beta.value(t), b2 = beta.value(then);
    const double d1 = std::cos(theta) * std::sin(a) * std::cos(b) * std::sin(a2) * std::cos(b2);
    const double d2 = std::sin(theta) * std::sin(a2) * std::cos(b2) * std::cos(a);
    const double d3 = -std::sin(theta) * std::sin(a) * std::cos(b) * std::cos(a2);
    const double d4 = std::cos(theta) * std::cos(a) * std::cos(a2);
    return d1 + d2 + d3 + d4;
  };
  const double rate = std::max({alpha_tilde.characteristic_rate(), beta.characteristic_rate(),
                                gamma_tilde.characteristic_rate()});
  return scaled_result(2.0 / tau, [&] {
    return integrate_triangle(integrand, tau, cfg, frequency_hint(omega, rate));
  });
}

double q_dephasing_closed(double omega, double tau) {
  if (!(tau > 0.0)) throw std::domain_error("filter functions require tau > 0");
  const double w = std::abs(omega);
  if (w < 1e-4) {
    const double x2 = (w * tau) * (w * tau);
    return tau * (1.0 - x2 / 12.0 + x2 * x2 / 360.0);
  }
  const double s = std::sin(0.5 * w * tau);
  // 1 - cos(w tau) = 2 sin^2(w tau / 2)
  return 2.0 / tau * 2.0 * s * s / (w * w);
}

double q_large_spin(const EulerDrive& drive, double omega, double tau, int n_spins,
                    const QuadratureConfig& cfg) {
  if (n_spins < 1) throw std::invalid_argument("large-spin model requires N_S >= 1");
  return scaled_result(static_cast<double>(n_spins), [&] { return q_full(drive, omega, tau, cfg); });
}

double filter_value(const FilterModel& model, double omega, double tau,
                    const QuadratureConfig& cfg) {
  validate(model);
  return std::visit(overloaded{
                        [&](const PopulationDecayRWA& m) { return q_rwa(m.drive, omega, tau, cfg); },
                        [&](const PopulationDecayFull& m) { return q_full(m.drive, omega, tau, cfg); },
                        [&](const Dephasing& m) {
                          return q_dephasing(m.alpha_tilde, m.beta, m.gamma_tilde, omega, tau, cfg);
                        },
                        [&](const LargeSpin& m) {
                          return q_large_spin(m.drive, omega, tau, m.n_spins, cfg);
                        },
                    },
                    model);
}

}  // namespace zeno
