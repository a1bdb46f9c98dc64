#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zeno {

/// Tolerances for the adaptive quadrature routines.
///
/// A result is accepted once the summed panel error estimate drops below
/// max(abs_tol, rel_tol * |result|). max_subdivisions bounds the number of
/// bisections performed on top of the initial panel seeding.
struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 4096;

  void validate() const;
  bool operator==(const QuadratureConfig&) const = default;
};

/// Thrown when adaptive quadrature exhausts its subdivision budget.
/// Carries the best estimate reached and its error bound.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// factor * f(), with the estimate and bound of an escaping ConvergenceError rescaled to match.
template <class F>
double scaled_result(double factor, F&& f) {
  try {
    return factor * f();
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(e.what(), factor * e.estimate(), std::abs(factor) * e.error_bound());
  }
}

using Integrand1D = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;

/// Adaptive 7/15-point Gauss-Kronrod quadrature of f over [a, b].
///
/// The interval is first cut into panels no wider than pi / max(1, frequency_hint)
/// so that oscillations at up to frequency_hint are resolved before the error
/// estimator ever sees them. The panel with the largest error is bisected until
/// the tolerance is met. Final panel estimates are summed in left-to-right order
/// with compensated summation, so the result does not depend on refinement history.
double integrate_1d(const Integrand1D& f, double a, double b,
                    const QuadratureConfig& cfg = {}, double frequency_hint = 0.0);

/// Order of the nested integrals used by integrate_triangle.
enum class TriangleOrder {
  /// outer over t in [0, tau], inner over lag in [0, t]
  TimeOuter,
  /// outer over lag in [0, tau], inner over t in [lag, tau]
  LagOuter,
};

/// Integral of g(t, lag) over the triangle 0 <= lag <= t <= tau.
double integrate_triangle(const Integrand2D& g, double tau, const QuadratureConfig& cfg = {},
                          double frequency_hint = 0.0,
                          TriangleOrder order = TriangleOrder::TimeOuter);

/// Same triangle, with the integrand factored as outer(lag) * inner(t, lag). The
/// outer factor is evaluated once per outer node, which matters when it is itself
/// expensive (e.g. a finite-temperature decoherence function).
double integrate_triangle_lag_outer(const Integrand1D& lag_weight, const Integrand2D& g,
                                    double tau, const QuadratureConfig& cfg = {},
                                    double frequency_hint = 0.0);

inline constexpr int kBesselMaxOrder = 500;
inline constexpr double kBesselMaxArgument = 1e4;

/// Bessel function of the first kind J_n(x) for integer n.
/// Throws std::range_error outside |n| <= 500, |x| <= 1e4.
double bessel_j(int n, double x);

/// J_0(x) ... J_nmax(x) from one downward recurrence.
std::vector<double> bessel_j_table(int nmax, double x);

}  // namespace zeno
