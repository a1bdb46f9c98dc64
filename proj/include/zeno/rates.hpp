#pragma once

#include "zeno/drive.hpp"
#include "zeno/environment.hpp"
#include "zeno/filters.hpp"
#include "zeno/specfun.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace zeno {

/// How the weak-coupling overlap integral int Q(omega, tau) J(omega) d omega is evaluated.
enum class WeakRateMethod {
  /// Frequency integral taken analytically against the bath: the filter's time kernel
  /// is integrated against the bath correlation C(lag) = int J(w) exp(-i w lag) dw.
  TimeDomain,
  /// Literal frequency integral of Q * J, truncated where the tail bound allows.
  Overlap,
};

std::string to_string(WeakRateMethod method);
WeakRateMethod weak_rate_method_from_string(const std::string& name);

/// Decay rate in the weak-coupling limit for a filter model at zero temperature.
double decay_rate_weak(const FilterModel& model, const OhmicSpectralDensity& sd, double tau,
                       const QuadratureConfig& cfg = {},
                       WeakRateMethod method = WeakRateMethod::TimeDomain);

struct OverlapOptions {
  /// Frequency truncation starts at this multiple of omega_c and grows until the tail
  /// bound drops under cfg.abs_tol.
  double cutoff_multiple = 40.0;
};

/// int_0^omega_max Q(omega, tau) J(omega) d omega.
double decay_rate_weak_overlap(const FilterModel& model, const OhmicSpectralDensity& sd,
                               double tau, const QuadratureConfig& cfg = {},
                               OverlapOptions options = {});

struct Survival {
  /// s(tau) = exp(-gamma tau)
  double single = 1.0;
  /// S(M tau) = exp(-gamma M tau)
  double total = 1.0;
  /// Set when gamma < 0; values are returned unclamped.
  bool negative_rate = false;
};

Survival survival(double gamma, double tau, int measurements);

/// Strong-coupling (polaron-frame) decay rate for a tunnelling element delta and a
/// level splitting profile epsilon(t):
/// (delta^2 / 2 tau) int_0^tau dt int_0^t dlag exp(-Phi_R(lag)) cos[zeta(t) - zeta(t - lag) - Phi_I(lag)],
/// zeta(t) = int_0^t epsilon.
double decay_rate_polaron(double delta, const AngleProfile& epsilon,
                          const OhmicSpectralDensity& sd, const Temperature& temperature,
                          double tau, const QuadratureConfig& cfg = {});

struct WeakCouplingModel {
  FilterModel filter;
  WeakRateMethod method = WeakRateMethod::TimeDomain;
  /// Used by the overlap method only.
  double cutoff_multiple = 40.0;
};

struct PolaronModel {
  double delta = 0.05;
  AngleProfile epsilon = AngleProfile::constant(1.0);
};

using RateModel = std::variant<WeakCouplingModel, PolaronModel>;

std::string describe(const RateModel& model);

struct RateCurve {
  std::vector<double> tau;
  std::vector<double> gamma;
  /// One entry per grid point; empty when the point converged.
  std::vector<std::string> errors;
  bool partial = false;
  bool has_negative = false;
  std::string model;
  std::string numerics;

  std::size_t size() const { return tau.size(); }
};

/// Evaluates the rate at every grid point. Points are independent and may run on
/// several threads; results are stored by index so the curve does not depend on
/// scheduling. threads = 0 uses the hardware concurrency.
RateCurve rate_curve(const RateModel& model, const OhmicSpectralDensity& sd,
                     const Temperature& temperature, const std::vector<double>& tau_grid,
                     const QuadratureConfig& cfg = {}, unsigned threads = 1);

enum class Regime { Zeno, AntiZeno };

std::string to_string(Regime regime);

struct RegimeSegment {
  double tau_begin = 0.0;
  double tau_end = 0.0;
  Regime regime = Regime::Zeno;
};

struct RegimeSegmentation {
  std::vector<RegimeSegment> segments;
  std::vector<double> crossovers;
  /// Label of each grid interval [tau_i, tau_{i+1}].
  std::vector<Regime> interval_labels;
};

/// Zeno where gamma grows with tau, anti-Zeno where it falls. Slopes smaller than
/// dead_band * max|gamma| per unit step are absorbed by the neighbouring interval.
RegimeSegmentation classify_regimes(const RateCurve& curve, double dead_band = 1e-6);
RegimeSegmentation classify_regimes(const std::vector<double>& tau,
                                    const std::vector<double>& gamma, double dead_band = 1e-6);

/// Label for grid point i: the label of the interval to its right (left for the last point).
Regime point_regime(const RegimeSegmentation& seg, std::size_t i);

}  // namespace zeno
