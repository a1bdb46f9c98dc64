#pragma once

#include "zeno/drive.hpp"
#include "zeno/specfun.hpp"

#include <complex>
#include <optional>
#include <string>
#include <variant>

namespace zeno {

/// sigma_+/sigma_- coupling under the rotating-wave approximation.
struct PopulationDecayRWA {
  EulerDrive drive;
  bool operator==(const PopulationDecayRWA&) const = default;
};

/// sigma_x coupling, counter-rotating terms kept.
struct PopulationDecayFull {
  EulerDrive drive;
  bool operator==(const PopulationDecayFull&) const = default;
};

/// Pure dephasing, worked in the frame where the coupling is -sigma_x:
/// alpha = pi/2 + alpha_tilde, gamma = -pi/2 + gamma_tilde.
struct Dephasing {
  AngleProfile alpha_tilde;
  AngleProfile beta = AngleProfile::linear(1.0);
  AngleProfile gamma_tilde;
  bool operator==(const Dephasing&) const = default;
};

/// N_S spins coupled collectively through 2 J_x; reduces to PopulationDecayFull at N_S = 1.
struct LargeSpin {
  EulerDrive drive;
  int n_spins = 1;
  bool operator==(const LargeSpin&) const = default;
};

using FilterModel = std::variant<PopulationDecayRWA, PopulationDecayFull, Dephasing, LargeSpin>;

void validate(const FilterModel& model);
std::string describe(const FilterModel& model);

/// The Euler drive equivalent to a dephasing-model angle set.
EulerDrive dephasing_frame_drive(const AngleProfile& alpha_tilde, const AngleProfile& beta,
                                 const AngleProfile& gamma_tilde);

/// Filter integrands all have the form Re[K(t, lag) exp(-i omega lag)].
/// FilterKernel evaluates K for a model, which lets the decay rate be assembled
/// against any bath correlation function instead of one omega at a time.
/// For LargeSpin the kernel is the single-spin one; multiplicity() carries N_S.
class FilterKernel {
 public:
  explicit FilterKernel(FilterModel model);

  std::complex<double> operator()(double t, double lag) const;
  double multiplicity() const;
  /// Upper bound on |K|.
  double bound() const;
  double characteristic_rate() const;
  const FilterModel& model() const { return model_; }

 private:
  FilterModel model_;
};

/// RWA population-decay filter:
/// (2/tau) int cos[d_alpha + d_gamma - omega lag] cos^2(beta(t)/2) cos^2(beta(t-lag)/2).
double q_rwa(const EulerDrive& drive, double omega, double tau, const QuadratureConfig& cfg = {});

/// Population-decay filter with counter-rotating terms (sum of the four D terms).
double q_full(const EulerDrive& drive, double omega, double tau, const QuadratureConfig& cfg = {});

/// Driven pure-dephasing filter.
double q_dephasing(const AngleProfile& alpha_tilde, const AngleProfile& beta,
                   const AngleProfile& gamma_tilde, double omega, double tau,
                   const QuadratureConfig& cfg = {});

/// Undriven dephasing filter (2/tau)(1 - cos omega tau)/omega^2.
double q_dephasing_closed(double omega, double tau);

/// N_S * q_full.
double q_large_spin(const EulerDrive& drive, double omega, double tau, int n_spins,
                    const QuadratureConfig& cfg = {});

double filter_value(const FilterModel& model, double omega, double tau,
                    const QuadratureConfig& cfg = {});

struct SeriesFilterValue {
  double value = 0.0;
  int order = 0;
  /// Bound on |J_{order+1}(V0/Omega)|.
  double tail_bound = 0.0;
  bool truncation_warning = false;
};

int default_series_order(double V0, double Omega);

struct SinusoidalDrive {
  double eps0 = 1.0;
  double V0 = 0.0;
  double Omega = 1.0;
};

/// Recognises alpha = eps0 t + (V0/Omega) sin(Omega t) (+ constants), beta = gamma = 0.
std::optional<SinusoidalDrive> as_sinusoidal(const EulerDrive& drive);

/// RWA filter for alpha = eps0 t + (V0/Omega) sin(Omega t), beta = gamma = 0, as a
/// double Bessel sum truncated at |m|, |n| <= order.
SeriesFilterValue q_rwa_sinusoidal_series(double eps0, double V0, double Omega, double omega,
                                          double tau, std::optional<int> order = std::nullopt);

}  // namespace zeno
