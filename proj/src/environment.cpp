#include "zeno/environment.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace zeno {

OhmicSpectralDensity::OhmicSpectralDensity(double coupling, double cutoff)
    : coupling_(coupling), cutoff_(cutoff) {
  if (!(coupling >= 0.0) || !std::isfinite(coupling))
    throw std::invalid_argument("spectral density coupling G must be finite and >= 0");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff))
    throw std::invalid_argument("spectral density cutoff omega_c must be finite and > 0");
}

double OhmicSpectralDensity::operator()(double omega) const {
  if (!(omega >= 0.0)) {
    std::ostringstream msg;
    msg << "spectral density is defined for omega >= 0, got " << omega;
    throw std::domain_error(msg.str());
  }
  return coupling_ * omega * std::exp(-omega / cutoff_);
}

double OhmicSpectralDensity::total_weight() const { return coupling_ * cutoff_ * cutoff_; }

double OhmicSpectralDensity::tail_weight(double omega_max) const {
  return coupling_ * cutoff_ * (omega_max + cutoff_) * std::exp(-omega_max / cutoff_);
}

std::complex<double> OhmicSpectralDensity::unit_correlation(double t) const {
  const std::complex<double> denom(1.0, cutoff_ * t);
  return cutoff_ * cutoff_ / (denom * denom);
}

std::string OhmicSpectralDensity::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << "ohmic(G=" << coupling_ << ", omega_c=" << cutoff_ << ")";
  return out.str();
}

void validate(const Temperature& temperature) {
  if (const auto* finite = std::get_if<FiniteTemperature>(&temperature)) {
    if (!(finite->inverse_temperature > 0.0) || !std::isfinite(finite->inverse_temperature))
      throw std::invalid_argument("inverse temperature must be finite and > 0");
  }
}

std::string describe(const Temperature& temperature) {
  if (const auto* finite = std::get_if<FiniteTemperature>(&temperature)) {
    std::ostringstream out;
    out.precision(17);
    out << "finite(beta=" << finite->inverse_temperature << ")";
    return out.str();
  }
  return "zero";
}

std::complex<double> correlation_phase(double omega, double t) {
  return std::polar(1.0, -omega * t);
}

double phi_i(const OhmicSpectralDensity& sd, double t) {
  return sd.coupling() * std::atan(sd.cutoff() * t);
}

double truncation_frequency(const OhmicSpectralDensity& sd, double amplitude, double abs_tol,
                            double base_multiple) {
  double multiple = base_multiple;
  while (amplitude * sd.tail_weight(multiple * sd.cutoff()) > abs_tol) {
    multiple *= 1.25;
    if (multiple > 1e4) throw std::runtime_error("spectral tail bound cannot be met");
  }
  return multiple * sd.cutoff();
}

double phi_r(const OhmicSpectralDensity& sd, double t, const Temperature& temperature,
             const QuadratureConfig& cfg) {
  if (!(t >= 0.0)) throw std::domain_error("phi_r requires t >= 0");
  const double g = sd.coupling();
  const double wc = sd.cutoff();
  const auto* finite = std::get_if<FiniteTemperature>(&temperature);
  if (finite == nullptr) return 0.5 * g * std::log1p(wc * wc * t * t);
  validate(temperature);
  if (t == 0.0 || g == 0.0) return 0.0;

  const double beta = finite->inverse_temperature;
  const double small = 1e-3 / beta;
  auto integrand = [&](double omega) {
    if (omega < small) return g * t * t / beta * std::exp(-omega / wc);
    const double s = std::sin(0.5 * omega * t);
    // J(w) (1 - cos wt) / w^2 coth(beta w / 2)
    return g * std::exp(-omega / wc) * 2.0 * s * s / omega / std::tanh(0.5 * beta * omega);
  };
  // Past 40 omega_c the integrand is bounded by J(w) * 2 coth(beta 40 wc / 2) / (40 wc)^2.
  const double base = 40.0 * wc;
  const double amplitude = 2.0 / (std::tanh(0.5 * beta * base) * base * base);
  const double omega_max = truncation_frequency(sd, amplitude, cfg.abs_tol, 40.0);
  return integrate_1d(integrand, 0.0, omega_max, cfg, t);
}

std::complex<double> polaron_correlation(const OhmicSpectralDensity& sd, double t,
                                         const Temperature& temperature,
                                         const QuadratureConfig& cfg) {
  return std::polar(std::exp(-phi_r(sd, t, temperature, cfg)), -phi_i(sd, t));
}

}  // namespace zeno
