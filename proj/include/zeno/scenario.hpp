#pragma once

#include "zeno/drive.hpp"
#include "zeno/environment.hpp"
#include "zeno/filters.hpp"
#include "zeno/rates.hpp"
#include "zeno/specfun.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zeno {

/// Parse or validation failure in a scenario file. line is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line, std::string field);

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

enum class SweepKind { Filter, Rate, Polaron };
enum class ModelKind { PopulationDecayRWA, PopulationDecayFull, Dephasing, LargeSpin, Polaron };
enum class Spacing { Linear, Log };
enum class FilterMethod { Quadrature, Series };

std::string to_string(SweepKind kind);
std::string to_string(ModelKind kind);
std::string to_string(Spacing spacing);
std::string to_string(FilterMethod method);

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  Spacing spacing = Spacing::Linear;

  /// Endpoints are exact.
  std::vector<double> values() const;
  bool operator==(const GridSpec&) const = default;
};

struct NumericsSpec {
  QuadratureConfig quadrature;
  /// Bessel truncation for the series filter; default ceil(V0/Omega) + 25.
  std::optional<int> bessel_order;
  double omega_cutoff_multiple = 40.0;
  WeakRateMethod rate_method = WeakRateMethod::TimeDomain;
  FilterMethod filter_method = FilterMethod::Quadrature;
  bool operator==(const NumericsSpec&) const = default;
};

/// One computation: a model, its drive profiles, environment and grid.
///
/// Drive profiles are keyed by angle name: alpha, beta, gamma for population decay
/// and large spin; alpha_tilde, beta, gamma_tilde for dephasing; epsilon for the
/// polaron model. Missing angles are zero, except the dephasing beta (eps0 t).
struct ScenarioConfig {
  std::string name = "scenario";
  SweepKind sweep = SweepKind::Filter;
  ModelKind model = ModelKind::PopulationDecayRWA;
  int n_spins = 1;
  double delta = 0.05;
  std::map<std::string, AngleProfile> drive;
  double coupling = 0.01;
  double cutoff = 10.0;
  Temperature temperature = ZeroTemperature{};
  double tau = 1.0;
  std::optional<GridSpec> omega_grid;
  std::optional<GridSpec> tau_grid;
  NumericsSpec numerics;
  std::string output_path;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError with the offending line and field.
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);
std::string to_text(const ScenarioConfig& config);

/// Structural checks shared by the parser and programmatic callers.
void validate(const ScenarioConfig& config);

FilterModel build_filter_model(const ScenarioConfig& config);
RateModel build_rate_model(const ScenarioConfig& config);
OhmicSpectralDensity build_spectral_density(const ScenarioConfig& config);

/// Shortest decimal text that reads back to the same double.
std::string format_shortest(double value);

}  // namespace zeno
