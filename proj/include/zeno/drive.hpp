#pragma once

#include <Eigen/Dense>

#include <string>
#include <variant>
#include <vector>

namespace zeno {

// Primitive terms of a closed-form time profile. Angles are in radians,
// times in units of 1/epsilon_0.

/// c
struct ConstantTerm {
  double value = 0.0;
  bool operator==(const ConstantTerm&) const = default;
};

/// a * t
struct LinearTerm {
  double rate = 0.0;
  bool operator==(const LinearTerm&) const = default;
};

/// (V / Omega) * sin(Omega t), the phase accumulated from a V cos(Omega t) field
struct SinusoidTerm {
  double amplitude = 0.0;
  double frequency = 1.0;
  bool operator==(const SinusoidTerm&) const = default;
};

/// V * cos(Omega t). Used for rate profiles such as a modulated level splitting,
/// whose time integral is a SinusoidTerm.
struct CosineTerm {
  double amplitude = 0.0;
  double frequency = 1.0;
  bool operator==(const CosineTerm&) const = default;
};

/// s * (1 - exp(-chi t)) / chi
struct SaturatingExpTerm {
  double amplitude = 1.0;
  double rate = 1.0;
  bool operator==(const SaturatingExpTerm&) const = default;
};

using ProfileTerm =
    std::variant<ConstantTerm, LinearTerm, SinusoidTerm, CosineTerm, SaturatingExpTerm>;

/// A finite sum of primitive terms, evaluated in closed form.
///
/// Values are kept unreduced (no wrapping to [0, 2 pi)). Increments and
/// integrals are evaluated per term from trigonometric/exponential identities,
/// so p(t) - p(t - dt) stays accurate when t is large and dt tiny.
class AngleProfile {
 public:
  AngleProfile() = default;
  explicit AngleProfile(std::vector<ProfileTerm> terms);

  static AngleProfile constant(double value);
  static AngleProfile linear(double rate);
  static AngleProfile sinusoid(double amplitude, double frequency);
  static AngleProfile cosine(double amplitude, double frequency);
  static AngleProfile saturating_exp(double amplitude, double rate);

  AngleProfile operator+(const AngleProfile& other) const;
  bool operator==(const AngleProfile&) const = default;

  const std::vector<ProfileTerm>& terms() const { return terms_; }
  bool is_zero() const;

  double value(double t) const;
  double derivative(double t) const;
  /// p(t) - p(t - dt); throws std::domain_error unless 0 <= dt <= t.
  double increment(double t, double dt) const;
  /// Integral of p from 0 to t.
  double integral(double t) const;
  /// Integral of p from t - dt to t.
  double integral_increment(double t, double dt) const;

  /// Fastest rate at which the profile (as a phase) can turn, used to seed
  /// quadrature panels.
  double characteristic_rate() const;

  std::string describe() const;

 private:
  std::vector<ProfileTerm> terms_;
};

/// Coefficients of H_S(t) = h_x sigma_x + h_y sigma_y + h_z sigma_z.
struct HamiltonianCoefficients {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Driven two-level propagator U_S(t) = exp(-i alpha sz/2) exp(-i beta sy/2) exp(-i gamma sz/2).
///
/// Construction rejects angle sets with U_S(0) != 1, i.e. beta(0) != 0 or
/// alpha(0) + gamma(0) not a multiple of 4 pi.
class EulerDrive {
 public:
  EulerDrive(AngleProfile alpha, AngleProfile beta, AngleProfile gamma);

  /// alpha = eps0 t, beta = gamma = 0.
  static EulerDrive undriven(double eps0);

  const AngleProfile& alpha() const { return alpha_; }
  const AngleProfile& beta() const { return beta_; }
  const AngleProfile& gamma() const { return gamma_; }

  bool beta_vanishes() const { return beta_.is_zero(); }
  double characteristic_rate() const;
  std::string describe() const;

  bool operator==(const EulerDrive&) const = default;

 private:
  AngleProfile alpha_;
  AngleProfile beta_;
  AngleProfile gamma_;
};

Eigen::Matrix2cd drive_unitary(const EulerDrive& drive, double t);

/// H_S(t) reconstructed from the Euler angles and their analytic derivatives.
HamiltonianCoefficients hamiltonian_coefficients(const EulerDrive& drive, double t);

}  // namespace zeno
