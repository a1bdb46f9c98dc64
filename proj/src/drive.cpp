#include "zeno/drive.hpp"

#include <cmath>
#include <complex>
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

void validate_term(const ProfileTerm& term) {
  std::visit(overloaded{
                 [](const ConstantTerm& c) {
                   if (!std::isfinite(c.value))
                     throw std::invalid_argument("constant term must be finite");
                 },
                 [](const LinearTerm& l) {
                   if (!std::isfinite(l.rate))
                     throw std::invalid_argument("linear term must be finite");
                 },
                 [](const SinusoidTerm& s) {
                   if (!std::isfinite(s.amplitude) || !(s.frequency > 0.0) ||
                       !std::isfinite(s.frequency))
                     throw std::invalid_argument("sinusoid term needs finite amplitude and frequency > 0");
                 },
                 [](const CosineTerm& s) {
                   if (!std::isfinite(s.amplitude) || !(s.frequency > 0.0) ||
                       !std::isfinite(s.frequency))
                     throw std::invalid_argument("cosine term needs finite amplitude and frequency > 0");
                 },
                 [](const SaturatingExpTerm& e) {
                   if (!std::isfinite(e.amplitude) || !(e.rate > 0.0) || !std::isfinite(e.rate))
                     throw std::invalid_argument("saturating_exp term needs finite amplitude and rate > 0");
                 },
             },
             term);
}

}  // namespace

AngleProfile::AngleProfile(std::vector<ProfileTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) validate_term(t);
}

AngleProfile AngleProfile::constant(double value) { return AngleProfile({ConstantTerm{value}}); }
AngleProfile AngleProfile::linear(double rate) { return AngleProfile({LinearTerm{rate}}); }
AngleProfile AngleProfile::sinusoid(double amplitude, double frequency) {
  return AngleProfile({SinusoidTerm{amplitude, frequency}});
}
AngleProfile AngleProfile::cosine(double amplitude, double frequency) {
  return AngleProfile({CosineTerm{amplitude, frequency}});
}
AngleProfile AngleProfile::saturating_exp(double amplitude, double rate) {
  return AngleProfile({SaturatingExpTerm{amplitude, rate}});
}

AngleProfile AngleProfile::operator+(const AngleProfile& other) const {
  std::vector<ProfileTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return AngleProfile(std::move(all));
}

bool AngleProfile::is_zero() const {
  for (const auto& term : terms_) {
    const bool zero = std::visit(overloaded{
                                     [](const ConstantTerm& c) { return c.value == 0.0; },
                                     [](const LinearTerm& l) { return l.rate == 0.0; },
                                     [](const SinusoidTerm& s) { return s.amplitude == 0.0; },
                                     [](const CosineTerm& s) { return s.amplitude == 0.0; },
                                     [](const SaturatingExpTerm& e) { return e.amplitude == 0.0; },
                                 },
                                 term);
    if (!zero) return false;
  }
  return true;
}

double AngleProfile::value(double t) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    sum += std::visit(overloaded{
                          [](const ConstantTerm& c) { return c.value; },
                          [t](const LinearTerm& l) { return l.rate * t; },
                          [t](const SinusoidTerm& s) {
                            return s.amplitude / s.frequency * std::sin(s.frequency * t);
                          },
                          [t](const CosineTerm& s) {
                            return s.amplitude * std::cos(s.frequency * t);
                          },
                          [t](const SaturatingExpTerm& e) {
                            return -e.amplitude * std::expm1(-e.rate * t) / e.rate;
                          },
                      },
                      term);
  }
  return sum;
}

double AngleProfile::derivative(double t) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    sum += std::visit(overloaded{
                          [](const ConstantTerm&) { return 0.0; },
                          [](const LinearTerm& l) { return l.rate; },
                          [t](const SinusoidTerm& s) {
                            return s.amplitude * std::cos(s.frequency * t);
                          },
                          [t](const CosineTerm& s) {
                            return -s.amplitude * s.frequency * std::sin(s.frequency * t);
                          },
                          [t](const SaturatingExpTerm& e) {
                            return e.amplitude * std::exp(-e.rate * t);
                          },
                      },
                      term);
  }
  return sum;
}

double AngleProfile::increment(double t, double dt) const {
  if (!(dt >= 0.0 && dt <= t)) {
    std::ostringstream msg;
    msg << "profile increment requires 0 <= dt <= t (t=" << t << ", dt=" << dt << ")";
    throw std::domain_error(msg.str());
  }
  const double mid = t - 0.5 * dt;
  double sum = 0.0;
  for (const auto& term : terms_) {
    sum += std::visit(
        overloaded{
            [](const ConstantTerm&) { return 0.0; },
            [dt](const LinearTerm& l) { return l.rate * dt; },
            [mid, dt](const SinusoidTerm& s) {
              return 2.0 * s.amplitude / s.frequency * std::cos(s.frequency * mid) *
                     std::sin(0.5 * s.frequency * dt);
            },
            [mid, dt](const CosineTerm& s) {
              return -2.0 * s.amplitude * std::sin(s.frequency * mid) *
                     std::sin(0.5 * s.frequency * dt);
            },
            [t, dt](const SaturatingExpTerm& e) {
              return -e.amplitude / e.rate * std::exp(-e.rate * (t - dt)) *
                     std::expm1(-e.rate * dt);
            },
        },
        term);
  }
  return sum;
}

double AngleProfile::integral(double t) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    sum += std::visit(overloaded{
                          [t](const ConstantTerm& c) { return c.value * t; },
                          [t](const LinearTerm& l) { return 0.5 * l.rate * t * t; },
                          [t](const SinusoidTerm& s) {
                            const double h = std::sin(0.5 * s.frequency * t);
                            return 2.0 * s.amplitude / (s.frequency * s.frequency) * h * h;
                          },
                          [t](const CosineTerm& s) {
                            return s.amplitude / s.frequency * std::sin(s.frequency * t);
                          },
                          [t](const SaturatingExpTerm& e) {
                            return e.amplitude / e.rate * (t + std::expm1(-e.rate * t) / e.rate);
                          },
                      },
                      term);
  }
  return sum;
}

double AngleProfile::integral_increment(double t, double dt) const {
  if (!(dt >= 0.0 && dt <= t)) {
    std::ostringstream msg;
    msg << "profile integral increment requires 0 <= dt <= t (t=" << t << ", dt=" << dt << ")";
    throw std::domain_error(msg.str());
  }
  const double mid = t - 0.5 * dt;
  double sum = 0.0;
  for (const auto& term : terms_) {
    sum += std::visit(
        overloaded{
            [dt](const ConstantTerm& c) { return c.value * dt; },
            [mid, dt](const LinearTerm& l) { return l.rate * dt * mid; },
            [mid, dt](const SinusoidTerm& s) {
              return 2.0 * s.amplitude / (s.frequency * s.frequency) *
                     std::sin(s.frequency * mid) * std::sin(0.5 * s.frequency * dt);
            },
            [mid, dt](const CosineTerm& s) {
              return 2.0 * s.amplitude / s.frequency * std::cos(s.frequency * mid) *
                     std::sin(0.5 * s.frequency * dt);
            },
            [t, dt](const SaturatingExpTerm& e) {
              const double jump = -std::exp(-e.rate * (t - dt)) * std::expm1(-e.rate * dt);
              return e.amplitude / e.rate * (dt - jump / e.rate);
            },
        },
        term);
  }
  return sum;
}

double AngleProfile::characteristic_rate() const {
  double rate = 0.0;
  for (const auto& term : terms_) {
    rate = std::max(rate, std::visit(overloaded{
                                         [](const ConstantTerm&) { return 0.0; },
                                         [](const LinearTerm& l) { return std::abs(l.rate); },
                                         [](const SinusoidTerm& s) {
                                           return std::max(std::abs(s.amplitude), s.frequency);
                                         },
                                         [](const CosineTerm& s) {
                                           return std::max(std::abs(s.amplitude), s.frequency);
                                         },
                                         [](const SaturatingExpTerm& e) {
                                           return std::abs(e.amplitude);
                                         },
                                     },
                                     term));
  }
  return rate;
}

std::string AngleProfile::describe() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const auto& term : terms_) {
    if (!first) out << " + ";
    first = false;
    std::visit(overloaded{
                   [&](const ConstantTerm& c) { out << "constant(" << c.value << ")"; },
                   [&](const LinearTerm& l) { out << "linear(" << l.rate << ")"; },
                   [&](const SinusoidTerm& s) {
                     out << "sinusoid(" << s.amplitude << ", " << s.frequency << ")";
                   },
                   [&](const CosineTerm& s) {
                     out << "cosine(" << s.amplitude << ", " << s.frequency << ")";
                   },
                   [&](const SaturatingExpTerm& e) {
                     out << "saturating_exp(" << e.amplitude << ", " << e.rate << ")";
                   },
               },
               term);
  }
  return out.str();
}

EulerDrive::EulerDrive(AngleProfile alpha, AngleProfile beta, AngleProfile gamma)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)) {
  constexpr double kTol = 1e-12;
  const double beta0 = beta_.value(0.0);
  if (std::abs(beta0) > kTol) {
    std::ostringstream msg;
    msg << "Euler drive must satisfy beta(0) = 0, got " << beta0;
    throw std::invalid_argument(msg.str());
  }
  const double sum0 = alpha_.value(0.0) + gamma_.value(0.0);
  const double period = 4.0 * std::numbers::pi;
  const double wrapped = sum0 - period * std::round(sum0 / period);
  if (std::abs(wrapped) > kTol * std::max(1.0, std::abs(sum0))) {
    std::ostringstream msg;
    msg << "Euler drive must satisfy alpha(0) + gamma(0) = 0 mod 4 pi, got " << sum0;
    throw std::invalid_argument(msg.str());
  }
}

EulerDrive EulerDrive::undriven(double eps0) {
  return EulerDrive(AngleProfile::linear(eps0), AngleProfile{}, AngleProfile{});
}

double EulerDrive::characteristic_rate() const {
  return std::max({alpha_.characteristic_rate(), beta_.characteristic_rate(),
                   gamma_.characteristic_rate()});
}

std::string EulerDrive::describe() const {
  return "alpha=" + alpha_.describe() + "; beta=" + beta_.describe() +
         "; gamma=" + gamma_.describe();
}

Eigen::Matrix2cd drive_unitary(const EulerDrive& drive, double t) {
  using cd = std::complex<double>;
  const double a = drive.alpha().value(t);
  const double b = drive.beta().value(t);
  const double g = drive.gamma().value(t);
  const double c = std::cos(0.5 * b);
  const double s = std::sin(0.5 * b);
  // Basis order (|e>, |g>) with sigma_z = diag(1, -1).
  const cd phase_sum = std::polar(1.0, -0.5 * (a + g));
  const cd phase_diff = std::polar(1.0, -0.5 * (a - g));
  Eigen::Matrix2cd u;
  u(0, 0) = phase_sum * c;
  u(0, 1) = -phase_diff * s;
  u(1, 0) = std::conj(phase_diff) * s;
  u(1, 1) = std::conj(phase_sum) * c;
  return u;
}

HamiltonianCoefficients hamiltonian_coefficients(const EulerDrive& drive, double t) {
  const double a = drive.alpha().value(t);
  const double b = drive.beta().value(t);
  const double da = drive.alpha().derivative(t);
  const double db = drive.beta().derivative(t);
  const double dg = drive.gamma().derivative(t);
  HamiltonianCoefficients h;
  h.x = 0.5 * (-db * std::sin(a) + dg * std::sin(b) * std::cos(a));
  h.y = 0.5 * (db * std::cos(a) + dg * std::sin(b) * std::sin(a));
  h.z = 0.5 * (da + dg * std::cos(b));
  return h;
}

}  // namespace zeno
