#pragma once

#include "zeno/specfun.hpp"

#include <complex>
#include <string>
#include <variant>

namespace zeno {

enum class SpectralFamily { Ohmic };

/// J(omega) = G omega exp(-omega / omega_c).
class OhmicSpectralDensity {
 public:
  OhmicSpectralDensity(double coupling, double cutoff);

  SpectralFamily family() const { return SpectralFamily::Ohmic; }
  double coupling() const { return coupling_; }
  double cutoff() const { return cutoff_; }

  /// Throws std::domain_error for omega < 0.
  double operator()(double omega) const;

  /// Integral of J over [0, inf): G omega_c^2.
  double total_weight() const;
  /// Integral of J over [omega_max, inf): G omega_c (omega_max + omega_c) exp(-omega_max/omega_c).
  double tail_weight(double omega_max) const;

  /// Zero-temperature bath correlation for unit coupling,
  /// int_0^inf omega exp(-omega/omega_c) exp(-i omega t) d omega = omega_c^2 / (1 + i omega_c t)^2.
  std::complex<double> unit_correlation(double t) const;

  std::string describe() const;
  bool operator==(const OhmicSpectralDensity&) const = default;

 private:
  double coupling_;
  double cutoff_;
};

struct ZeroTemperature {
  bool operator==(const ZeroTemperature&) const = default;
};

/// Thermal bath at inverse temperature beta_th (units of time).
struct FiniteTemperature {
  double inverse_temperature = 1.0;
  bool operator==(const FiniteTemperature&) const = default;
};

using Temperature = std::variant<ZeroTemperature, FiniteTemperature>;

void validate(const Temperature& temperature);
std::string describe(const Temperature& temperature);

inline double spectral_weight(const OhmicSpectralDensity& sd, double omega) { return sd(omega); }

/// f_12(omega, t) = exp(-i omega t), the zero-temperature correlation phase.
std::complex<double> correlation_phase(double omega, double t);

/// Phi_I(t) = G arctan(omega_c t).
double phi_i(const OhmicSpectralDensity& sd, double t);

/// Phi_R(t): closed form (G/2) ln(1 + omega_c^2 t^2) at zero temperature,
/// quadrature of the coth-weighted integrand otherwise.
double phi_r(const OhmicSpectralDensity& sd, double t, const Temperature& temperature,
             const QuadratureConfig& cfg = {});

/// Polaron-frame bath correlation C_12(t) = exp(-i Phi_I(t)) exp(-Phi_R(t)).
std::complex<double> polaron_correlation(const OhmicSpectralDensity& sd, double t,
                                         const Temperature& temperature,
                                         const QuadratureConfig& cfg = {});

/// Smallest multiple m >= base_multiple for which the tail of an integrand bounded by
/// amplitude * J(omega) beyond m * omega_c stays below abs_tol.
double truncation_frequency(const OhmicSpectralDensity& sd, double amplitude, double abs_tol,
                            double base_multiple = 40.0);

}  // namespace zeno
