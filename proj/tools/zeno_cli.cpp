// zeno: filter functions, decay rates and Zeno/anti-Zeno regimes from scenario files or presets.

#include "zeno/presets.hpp"
#include "zeno/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericFailure = 3;

struct Inputs {
  std::string config;
  std::string preset;
  std::string out;
  unsigned threads = 0;
  double tol = 0.0;
};

std::vector<zeno::PresetVariant> resolve(const Inputs& in) {
  if (in.config.empty() == in.preset.empty())
    throw zeno::ConfigError("give exactly one of --config or --preset", 0, "");
  if (!in.preset.empty()) return zeno::select_preset(in.preset);
  auto cfg = zeno::load_scenario(in.config);
  return {{cfg.name, cfg}};
}

void require_sweep(const std::vector<zeno::PresetVariant>& runs,
                   std::initializer_list<zeno::SweepKind> allowed, const std::string& command) {
  for (const auto& run : runs) {
    bool ok = false;
    for (auto kind : allowed) ok = ok || run.config.sweep == kind;
    if (!ok)
      throw zeno::ConfigError("scenario '" + run.config.name + "' is a " +
                                  zeno::to_string(run.config.sweep) + " sweep, not usable with '" +
                                  command + "'",
                              0, "scenario.sweep");
  }
}

std::string output_path(const Inputs& in, const std::vector<zeno::PresetVariant>& runs) {
  if (!in.out.empty()) return in.out;
  if (runs.size() == 1) return runs.front().config.output_path;
  return {};
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  file << text;
}

void add_inputs(CLI::App* sub, Inputs& in) {
  sub->add_option("--config", in.config, "Scenario file (YAML)");
  sub->add_option("--preset", in.preset, "Built-in preset, name or name:variant");
  sub->add_option("--out", in.out, "Output CSV path (default stdout)");
  sub->add_option("--threads", in.threads, "Worker threads, 0 = hardware concurrency");
  sub->add_option("--tol", in.tol, "Relative quadrature tolerance override")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized filter functions and Zeno/anti-Zeno decay rates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("zeno ") + ZENO_VERSION);

  Inputs in;
  auto* filter = app.add_subcommand("filter", "Filter function Q(omega) on an omega grid");
  auto* rate = app.add_subcommand("rate", "Weak-coupling decay rate Gamma(tau) with regimes");
  auto* polaron = app.add_subcommand("polaron", "Strong-coupling (polaron) decay rate Gamma(tau)");
  auto* regimes = app.add_subcommand("regimes", "Zeno/anti-Zeno segments of a rate sweep");
  auto* list = app.add_subcommand("presets", "List built-in presets as scenario files");
  for (auto* sub : {filter, rate, polaron, regimes}) add_inputs(sub, in);
  list->add_option("--out", in.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (list->parsed()) {
      emit(in.out, zeno::list_presets());
      return 0;
    }
    const auto runs = resolve(in);
    zeno::SweepOptions options;
    options.threads = in.threads;
    if (in.tol > 0.0) options.rel_tol = in.tol;

    zeno::SweepOutput result;
    if (filter->parsed()) {
      require_sweep(runs, {zeno::SweepKind::Filter}, "filter");
      result = zeno::run_filter_sweep(runs, options);
    } else if (rate->parsed()) {
      require_sweep(runs, {zeno::SweepKind::Rate}, "rate");
      result = zeno::run_rate_sweep(runs, options);
    } else if (polaron->parsed()) {
      require_sweep(runs, {zeno::SweepKind::Polaron}, "polaron");
      result = zeno::run_rate_sweep(runs, options);
    } else {
      require_sweep(runs, {zeno::SweepKind::Rate, zeno::SweepKind::Polaron}, "regimes");
      result = zeno::run_regimes(runs, options);
    }
    emit(output_path(in, runs), result.csv);
    if (result.numeric_failure) {
      std::cerr << "zeno: some grid points did not converge; see the error column\n";
      return kNumericFailure;
    }
    return 0;
  } catch (const zeno::ConfigError& e) {
    std::cerr << "zeno: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "zeno: " << e.what() << "\n";
    return 1;
  }
}
