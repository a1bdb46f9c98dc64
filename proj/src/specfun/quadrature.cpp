#include "zeno/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <functional>
#include <sstream>
#include <string>

namespace zeno {

namespace {

// Kronrod abscissae on [-1, 1] (non-negative half); odd indices are the
// Gauss 7-point nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double estimate;
  double error;
};

Panel gauss_kronrod_15(const Integrand1D& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);

  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }

  const double estimate = kronrod * half;
  double error = std::abs((kronrod - gauss) * half);
  // Nothing below the rounding floor of the panel sum is resolvable.
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::abs(half);
  error = std::max(error, floor);
  if (!std::isfinite(estimate)) {
    std::ostringstream msg;
    msg << "integrand is not finite on [" << a << ", " << b << "]";
    throw std::domain_error(msg.str());
  }
  return {a, b, estimate, error};
}

double target_error(const QuadratureConfig& cfg, double estimate) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(estimate));
}

// Neumaier summation of panel estimates in left-to-right order.
double ordered_sum(std::vector<Panel>& panels) {
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& p : panels) {
    const double t = sum + p.estimate;
    if (std::abs(sum) >= std::abs(p.estimate))
      comp += (sum - t) + p.estimate;
    else
      comp += (p.estimate - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1)
    throw std::invalid_argument("quadrature config requires abs_tol > 0, rel_tol > 0, "
                                "max_subdivisions >= 1");
}

double integrate_1d(const Integrand1D& f, double a, double b, const QuadratureConfig& cfg,
                    double frequency_hint) {
  cfg.validate();
  if (!(a <= b)) throw std::domain_error("integrate_1d requires a <= b");
  if (a == b) return 0.0;

  const double width = b - a;
  const double max_panel = std::numbers::pi / std::max(1.0, std::abs(frequency_hint));
  const auto initial = static_cast<std::size_t>(std::max(1.0, std::ceil(width / max_panel)));

  std::vector<Panel> panels;
  panels.reserve(initial + 64);
  long double total = 0.0L;
  long double total_error = 0.0L;
  for (std::size_t k = 0; k < initial; ++k) {
    const double lo = a + width * static_cast<double>(k) / static_cast<double>(initial);
    const double hi = (k + 1 == initial)
                          ? b
                          : a + width * static_cast<double>(k + 1) / static_cast<double>(initial);
    panels.push_back(gauss_kronrod_15(f, lo, hi));
    total += panels.back().estimate;
    total_error += panels.back().error;
  }

  // Largest error first; ties broken by panel index so refinement is reproducible.
  auto worse = [&panels](std::size_t x, std::size_t y) {
    if (panels[x].error != panels[y].error) return panels[x].error < panels[y].error;
    return x > y;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);
  for (std::size_t k = 0; k < panels.size(); ++k) queue.push(k);

  int subdivisions = 0;
  while (static_cast<double>(total_error) > target_error(cfg, static_cast<double>(total))) {
    if (subdivisions >= cfg.max_subdivisions) {
      std::ostringstream msg;
      msg << "adaptive quadrature did not converge on [" << a << ", " << b << "] after "
          << subdivisions << " subdivisions (estimate " << static_cast<double>(total)
          << ", error " << static_cast<double>(total_error) << ")";
      throw ConvergenceError(msg.str(), static_cast<double>(total),
                             static_cast<double>(total_error));
    }
    const std::size_t worst = queue.top();
    queue.pop();
    const Panel parent = panels[worst];
    const double mid = 0.5 * (parent.a + parent.b);
    if (!(mid > parent.a && mid < parent.b)) {
      throw ConvergenceError("adaptive quadrature reached machine resolution",
                             static_cast<double>(total), static_cast<double>(total_error));
    }
    const Panel left = gauss_kronrod_15(f, parent.a, mid);
    const Panel right = gauss_kronrod_15(f, mid, parent.b);
    total += static_cast<long double>(left.estimate) + right.estimate - parent.estimate;
    total_error += static_cast<long double>(left.error) + right.error - parent.error;
    panels[worst] = left;
    panels.push_back(right);
    queue.push(worst);
    queue.push(panels.size() - 1);
    ++subdivisions;
  }
  return ordered_sum(panels);
}

namespace {

QuadratureConfig inner_config(const QuadratureConfig& cfg, double tau) {
  // The inner error is integrated over a range of length tau; keep it well
  // under the outer budget so inner noise does not drive outer refinement.
  QuadratureConfig inner = cfg;
  inner.abs_tol = cfg.abs_tol / (16.0 * std::max(1.0, tau));
  inner.rel_tol = cfg.rel_tol / 16.0;
  return inner;
}

}  // namespace

namespace {

// Runs the outer integral over inner integrals that may fail to converge. A failed
// inner integral contributes its best estimate so the outer sum stays meaningful;
// the failure is re-raised afterwards with the estimate of the whole integral.
class NestedFailure {
 public:
  double guard(const std::function<double()>& inner) {
    try {
      return inner();
    } catch (const ConvergenceError& e) {
      if (message_.empty()) message_ = e.what();
      worst_error_ = std::max(worst_error_, e.error_bound());
      return e.estimate();
    }
  }

  double finish(const std::function<double()>& outer, double tau) {
    double value = 0.0;
    try {
      value = outer();
    } catch (const ConvergenceError& e) {
      if (message_.empty()) throw;
      throw ConvergenceError(std::string(e.what()) + "; inner: " + message_, e.estimate(),
                             e.error_bound() + worst_error_ * tau);
    }
    if (!message_.empty())
      throw ConvergenceError("inner " + message_, value, worst_error_ * tau);
    return value;
  }

 private:
  std::string message_;
  double worst_error_ = 0.0;
};

}  // namespace

double integrate_triangle(const Integrand2D& g, double tau, const QuadratureConfig& cfg,
                          double frequency_hint, TriangleOrder order) {
  if (!(tau > 0.0)) throw std::domain_error("integrate_triangle requires tau > 0");
  const QuadratureConfig inner = inner_config(cfg, tau);
  NestedFailure nested;

  if (order == TriangleOrder::TimeOuter) {
    auto outer = [&](double t) {
      return nested.guard([&] {
        return integrate_1d([&](double lag) { return g(t, lag); }, 0.0, t, inner, frequency_hint);
      });
    };
    return nested.finish([&] { return integrate_1d(outer, 0.0, tau, cfg, frequency_hint); }, tau);
  }
  auto outer = [&](double lag) {
    return nested.guard([&] {
      return integrate_1d([&](double t) { return g(t, lag); }, lag, tau, inner, frequency_hint);
    });
  };
  return nested.finish([&] { return integrate_1d(outer, 0.0, tau, cfg, frequency_hint); }, tau);
}

double integrate_triangle_lag_outer(const Integrand1D& lag_weight, const Integrand2D& g,
                                    double tau, const QuadratureConfig& cfg,
                                    double frequency_hint) {
  if (!(tau > 0.0)) throw std::domain_error("integrate_triangle requires tau > 0");
  const QuadratureConfig inner = inner_config(cfg, tau);
  NestedFailure nested;
  auto outer = [&](double lag) {
    const double w = nested.guard([&] { return lag_weight(lag); });
    if (w == 0.0) return 0.0;
    return w * nested.guard([&] {
      return integrate_1d([&](double t) { return g(t, lag); }, lag, tau, inner, frequency_hint);
    });
  };
  return nested.finish([&] { return integrate_1d(outer, 0.0, tau, cfg, frequency_hint); }, tau);
}

}  // namespace zeno
