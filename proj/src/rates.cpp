#include "zeno/rates.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace zeno {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::domain_error("decay rates require tau > 0");
}

std::string numerics_text(const QuadratureConfig& cfg, const std::string& extra) {
  std::ostringstream out;
  out.precision(17);
  out << "abs_tol=" << cfg.abs_tol << "; rel_tol=" << cfg.rel_tol
      << "; max_subdivisions=" << cfg.max_subdivisions;
  if (!extra.empty()) out << "; " << extra;
  return out.str();
}

}  // namespace

std::string to_string(WeakRateMethod method) {
  return method == WeakRateMethod::TimeDomain ? "time_domain" : "overlap";
}

WeakRateMethod weak_rate_method_from_string(const std::string& name) {
  if (name == "time_domain") return WeakRateMethod::TimeDomain;
  if (name == "overlap") return WeakRateMethod::Overlap;
  throw std::invalid_argument("unknown weak-coupling rate method '" + name + "'");
}

double decay_rate_weak(const FilterModel& model, const OhmicSpectralDensity& sd, double tau,
                       const QuadratureConfig& cfg, WeakRateMethod method) {
  check_tau(tau);
  cfg.validate();
  if (method == WeakRateMethod::Overlap) return decay_rate_weak_overlap(model, sd, tau, cfg);
  const FilterKernel kernel(model);
  if (sd.coupling() == 0.0) return 0.0;

  // Re is linear and J real, so int Q J dw = (2/tau) int Re[K(t, lag) C(lag)] over the triangle.
  // The coupling G is pulled out so the result scales exactly with it.
  auto integrand = [&](double t, double lag) {
    return (kernel(t, lag) * sd.unit_correlation(lag)).real();
  };
  const double hint = std::max(kernel.characteristic_rate(), sd.cutoff());
  auto rate = [&](double integral) {
    return kernel.multiplicity() * (sd.coupling() * (2.0 / tau * integral));
  };
  try {
    return rate(integrate_triangle(integrand, tau, cfg, hint, TriangleOrder::LagOuter));
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(e.what(), rate(e.estimate()), std::abs(rate(e.error_bound())));
  }
}

double decay_rate_weak_overlap(const FilterModel& model, const OhmicSpectralDensity& sd,
                               double tau, const QuadratureConfig& cfg, OverlapOptions options) {
  check_tau(tau);
  cfg.validate();
  const FilterKernel kernel(model);
  if (sd.coupling() == 0.0) return 0.0;

  // |Q| <= (2/tau) * sup|K| * tau^2 / 2
  const double q_bound = kernel.multiplicity() * kernel.bound() * tau;
  const double omega_max = truncation_frequency(sd, q_bound, cfg.abs_tol, options.cutoff_multiple);

  QuadratureConfig inner = cfg;
  inner.abs_tol = cfg.abs_tol / (16.0 * std::max(1.0, sd.total_weight()));
  inner.rel_tol = cfg.rel_tol / 16.0;
  // A filter value that fails to converge still contributes its estimate, so the
  // error raised at the end carries an estimate of the whole rate.
  std::string failure;
  double failure_bound = 0.0;
  auto integrand = [&](double omega) {
    if (omega == 0.0) return 0.0;
    double q = 0.0;
    try {
      q = filter_value(model, omega, tau, inner);
    } catch (const ConvergenceError& e) {
      if (failure.empty()) failure = e.what();
      failure_bound = std::max(failure_bound, e.error_bound());
      q = e.estimate();
    }
    return q * sd(omega);
  };
  // Q varies on the scale 1/tau in omega.
  double rate = 0.0;
  try {
    rate = integrate_1d(integrand, 0.0, omega_max, cfg, tau);
  } catch (const ConvergenceError& e) {
    if (failure.empty()) throw;
    throw ConvergenceError(std::string(e.what()) + "; filter: " + failure, e.estimate(),
                           e.error_bound() + failure_bound * sd.total_weight());
  }
  if (!failure.empty())
    throw ConvergenceError("filter " + failure, rate, failure_bound * sd.total_weight());
  return rate;
}

Survival survival(double gamma, double tau, int measurements) {
  check_tau(tau);
  if (measurements < 1) throw std::invalid_argument("survival requires M >= 1");
  if (!std::isfinite(gamma)) throw std::domain_error("survival requires a finite decay rate");
  Survival out;
  out.single = std::exp(-gamma * tau);
  out.total = std::exp(-gamma * static_cast<double>(measurements) * tau);
  out.negative_rate = gamma < 0.0;
  return out;
}

double decay_rate_polaron(double delta, const AngleProfile& epsilon,
                          const OhmicSpectralDensity& sd, const Temperature& temperature,
                          double tau, const QuadratureConfig& cfg) {
  check_tau(tau);
  cfg.validate();
  validate(temperature);
  if (!std::isfinite(delta)) throw std::invalid_argument("tunnelling element must be finite");
  if (delta == 0.0) return 0.0;

  auto weight = [&](double lag) { return std::exp(-phi_r(sd, lag, temperature, cfg)); };
  auto phase = [&](double t, double lag) {
    return std::cos(epsilon.integral_increment(t, lag) - phi_i(sd, lag));
  };
  double hint = std::max(epsilon.characteristic_rate(), std::abs(epsilon.value(0.0)));
  if (sd.coupling() > 0.0) hint = std::max(hint, sd.cutoff());
  auto rate = [&](double integral) { return delta * delta * integral / (2.0 * tau); };
  try {
    return rate(integrate_triangle_lag_outer(weight, phase, tau, cfg, hint));
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(e.what(), rate(e.estimate()), std::abs(rate(e.error_bound())));
  }
}

std::string describe(const RateModel& model) {
  return std::visit(overloaded{
                        [](const WeakCouplingModel& m) {
                          return "weak[" + describe(m.filter) + "]";
                        },
                        [](const PolaronModel& m) {
                          std::ostringstream out;
                          out.precision(17);
                          out << "polaron[delta=" << m.delta
                              << "; epsilon=" << m.epsilon.describe() << "]";
                          return out.str();
                        },
                    },
                    model);
}

RateCurve rate_curve(const RateModel& model, const OhmicSpectralDensity& sd,
                     const Temperature& temperature, const std::vector<double>& tau_grid,
                     const QuadratureConfig& cfg, unsigned threads) {
  cfg.validate();
  validate(temperature);
  if (tau_grid.empty()) throw std::invalid_argument("rate curve requires a nonempty tau grid");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > 0.0)) throw std::invalid_argument("tau grid values must be > 0");
    if (i > 0 && !(tau_grid[i] > tau_grid[i - 1]))
      throw std::invalid_argument("tau grid must be strictly ascending");
  }
  if (const auto* weak = std::get_if<WeakCouplingModel>(&model)) {
    validate(weak->filter);
    if (!std::holds_alternative<ZeroTemperature>(temperature))
      throw std::invalid_argument("weak-coupling rates are defined at zero temperature only");
  }

  const std::size_t n = tau_grid.size();
  RateCurve curve;
  curve.tau = tau_grid;
  curve.gamma.assign(n, std::numeric_limits<double>::quiet_NaN());
  curve.errors.assign(n, std::string());
  curve.model = describe(model) + "; " + sd.describe() + "; temperature=" + describe(temperature);
  std::string extra;
  if (const auto* weak = std::get_if<WeakCouplingModel>(&model)) extra = "method=" + to_string(weak->method);
  curve.numerics = numerics_text(cfg, extra);

  auto evaluate = [&](std::size_t i) {
    const double tau = tau_grid[i];
    try {
      curve.gamma[i] = std::visit(
          overloaded{
              [&](const WeakCouplingModel& m) {
                if (m.method == WeakRateMethod::Overlap)
                  return decay_rate_weak_overlap(m.filter, sd, tau, cfg, {m.cutoff_multiple});
                return decay_rate_weak(m.filter, sd, tau, cfg);
              },
              [&](const PolaronModel& m) {
                return decay_rate_polaron(m.delta, m.epsilon, sd, temperature, tau, cfg);
              },
          },
          model);
    } catch (const ConvergenceError& e) {
      // Keep the best estimate; the error column marks it as unconverged.
      curve.errors[i] = e.what();
      curve.gamma[i] = e.estimate();
    } catch (const std::exception& e) {
      curve.errors[i] = e.what();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) evaluate(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!curve.errors[i].empty()) curve.partial = true;
    if (curve.gamma[i] < 0.0) curve.has_negative = true;
  }
  return curve;
}

}  // namespace zeno
