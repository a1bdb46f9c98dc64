#pragma once

#include "zeno/presets.hpp"
#include "zeno/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zeno {

struct SweepOptions {
  /// 0 means hardware concurrency.
  unsigned threads = 1;
  /// Overrides numerics.rel_tol of every scenario when set.
  std::optional<double> rel_tol;
};

struct SweepOutput {
  std::string csv;
  /// At least one grid point did not converge; its best estimate is in the table.
  bool numeric_failure = false;
};

/// Columns variant,omega,Q,error.
SweepOutput run_filter_sweep(const std::vector<PresetVariant>& runs, const SweepOptions& options);

/// Columns variant,tau,gamma,regime,error, followed by a crossover comment block.
/// Accepts weak-coupling rate and polaron scenarios.
SweepOutput run_rate_sweep(const std::vector<PresetVariant>& runs, const SweepOptions& options);

/// Columns variant,tau_begin,tau_end,regime, followed by a crossover comment block.
SweepOutput run_regimes(const std::vector<PresetVariant>& runs, const SweepOptions& options);

/// printf("%.17g") with a '.' separator regardless of locale.
std::string format_number(double value);

}  // namespace zeno
