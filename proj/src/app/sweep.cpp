#include "zeno/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#ifndef ZENO_VERSION
#define ZENO_VERSION "0.0.0"
#endif

namespace zeno {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '\n') {
      out += ' ';
      continue;
    }
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

ScenarioConfig effective(const ScenarioConfig& c, const SweepOptions& options) {
  ScenarioConfig out = c;
  if (options.rel_tol) out.numerics.quadrature.rel_tol = *options.rel_tol;
  validate(out);
  return out;
}

void provenance(std::ostringstream& out, const std::string& command,
                const std::vector<PresetVariant>& runs, const SweepOptions& options) {
  out << "# zeno " << ZENO_VERSION << " " << command << "\n";
  if (options.rel_tol) out << "# rel_tol override: " << format_number(*options.rel_tol) << "\n";
  for (const auto& run : runs) {
    out << "# variant " << run.name << "\n";
    std::istringstream lines(to_text(effective(run.config, options)));
    for (std::string line; std::getline(lines, line);) out << "#   " << line << "\n";
  }
}

struct RunCurve {
  std::string variant;
  RateCurve curve;
  std::optional<RegimeSegmentation> regimes;
  std::string regime_error;
};

std::vector<RunCurve> compute_curves(const std::vector<PresetVariant>& runs,
                                     const SweepOptions& options, bool& failure) {
  std::vector<RunCurve> out;
  for (const auto& run : runs) {
    const auto cfg = effective(run.config, options);
    if (cfg.sweep == SweepKind::Filter)
      throw ConfigError("scenario '" + cfg.name + "' is a filter sweep", 0, "scenario.sweep");
    RunCurve rc{run.name, rate_curve(build_rate_model(cfg), build_spectral_density(cfg),
                                     cfg.temperature, cfg.tau_grid->values(),
                                     cfg.numerics.quadrature, options.threads),
                std::nullopt, {}};
    failure = failure || rc.curve.partial;
    try {
      rc.regimes = classify_regimes(rc.curve);
    } catch (const std::exception& e) {
      rc.regime_error = e.what();
    }
    out.push_back(std::move(rc));
  }
  return out;
}

void crossover_block(std::ostringstream& out, const std::vector<RunCurve>& curves) {
  out << "# crossovers\n";
  for (const auto& rc : curves) {
    out << "# " << rc.variant << ":";
    if (!rc.regimes) {
      out << " unavailable (" << rc.regime_error << ")\n";
      continue;
    }
    out << " count=" << rc.regimes->crossovers.size();
    for (double t : rc.regimes->crossovers) out << " " << format_number(t);
    out << "\n";
  }
}

}  // namespace

SweepOutput run_filter_sweep(const std::vector<PresetVariant>& runs, const SweepOptions& options) {
  SweepOutput result;
  std::ostringstream out;
  provenance(out, "filter", runs, options);
  out << "variant,omega,Q,error\n";
  for (const auto& run : runs) {
    const auto cfg = effective(run.config, options);
    if (cfg.sweep != SweepKind::Filter)
      throw ConfigError("scenario '" + cfg.name + "' is not a filter sweep", 0, "scenario.sweep");
    const auto model = build_filter_model(cfg);
    const auto omegas = cfg.omega_grid->values();
    std::vector<double> q(omegas.size(), std::nan(""));
    std::vector<std::string> errors(omegas.size());
    std::vector<char> failed(omegas.size(), 0);
    std::optional<SinusoidalDrive> series;
    if (cfg.numerics.filter_method == FilterMethod::Series)
      series = as_sinusoidal(std::get<PopulationDecayRWA>(model).drive);

    parallel_for(omegas.size(), options.threads, [&](std::size_t i) {
      try {
        if (series) {
          const auto v = q_rwa_sinusoidal_series(series->eps0, series->V0, series->Omega,
                                                 omegas[i], cfg.tau, cfg.numerics.bessel_order);
          q[i] = v.value;
          if (v.truncation_warning) errors[i] = "series truncation may be insufficient";
        } else {
          q[i] = filter_value(model, omegas[i], cfg.tau, cfg.numerics.quadrature);
        }
      } catch (const ConvergenceError& e) {
        q[i] = e.estimate();
        errors[i] = e.what();
        failed[i] = 1;
      } catch (const std::exception& e) {
        errors[i] = e.what();
        failed[i] = 1;
      }
    });
    for (std::size_t i = 0; i < omegas.size(); ++i) {
      if (failed[i]) result.numeric_failure = true;
      out << csv_field(run.name) << "," << format_number(omegas[i]) << "," << format_number(q[i])
          << "," << csv_field(errors[i]) << "\n";
    }
  }
  result.csv = out.str();
  return result;
}

SweepOutput run_rate_sweep(const std::vector<PresetVariant>& runs, const SweepOptions& options) {
  SweepOutput result;
  std::ostringstream out;
  provenance(out, "rate", runs, options);
  const auto curves = compute_curves(runs, options, result.numeric_failure);
  out << "variant,tau,gamma,regime,error\n";
  for (const auto& rc : curves) {
    for (std::size_t i = 0; i < rc.curve.size(); ++i) {
      const std::string regime = rc.regimes ? to_string(point_regime(*rc.regimes, i)) : "";
      out << csv_field(rc.variant) << "," << format_number(rc.curve.tau[i]) << ","
          << format_number(rc.curve.gamma[i]) << "," << regime << ","
          << csv_field(rc.curve.errors[i]) << "\n";
    }
    if (rc.curve.has_negative) out << "# " << rc.variant << ": negative decay rates present\n";
  }
  crossover_block(out, curves);
  result.csv = out.str();
  return result;
}

SweepOutput run_regimes(const std::vector<PresetVariant>& runs, const SweepOptions& options) {
  SweepOutput result;
  std::ostringstream out;
  provenance(out, "regimes", runs, options);
  const auto curves = compute_curves(runs, options, result.numeric_failure);
  out << "variant,tau_begin,tau_end,regime\n";
  for (const auto& rc : curves) {
    if (!rc.regimes) continue;
    for (const auto& s : rc.regimes->segments)
      out << csv_field(rc.variant) << "," << format_number(s.tau_begin) << ","
          << format_number(s.tau_end) << "," << to_string(s.regime) << "\n";
  }
  crossover_block(out, curves);
  result.csv = out.str();
  return result;
}

}  // namespace zeno
