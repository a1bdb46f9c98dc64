#include "zeno/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace zeno {

ConfigError::ConfigError(const std::string& message, int line, std::string field)
    : std::runtime_error([&] {
        std::string text;
        if (line > 0) text += "line " + std::to_string(line) + ": ";
        if (!field.empty()) text += field + ": ";
        return text + message;
      }()),
      line_(line),
      field_(std::move(field)) {}

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::Filter: return "filter";
    case SweepKind::Rate: return "rate";
    case SweepKind::Polaron: return "polaron";
  }
  return "?";
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::PopulationDecayRWA: return "population_decay_rwa";
    case ModelKind::PopulationDecayFull: return "population_decay_full";
    case ModelKind::Dephasing: return "dephasing";
    case ModelKind::LargeSpin: return "large_spin";
    case ModelKind::Polaron: return "polaron";
  }
  return "?";
}

std::string to_string(Spacing spacing) { return spacing == Spacing::Linear ? "linear" : "log"; }

std::string to_string(FilterMethod method) {
  return method == FilterMethod::Quadrature ? "quadrature" : "series";
}

std::string format_shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::vector<double> GridSpec::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  const int last = count - 1;
  for (int i = 0; i < count; ++i) {
    if (spacing == Spacing::Linear)
      out[i] = min + (max - min) * i / last;
    else
      out[i] = std::exp(std::log(min) + (std::log(max) - std::log(min)) * i / last);
  }
  out.front() = min;
  out.back() = max;
  return out;
}

namespace {

const std::set<std::string>& angle_names(ModelKind model) {
  static const std::set<std::string> euler{"alpha", "beta", "gamma"};
  static const std::set<std::string> dephasing{"alpha_tilde", "beta", "gamma_tilde"};
  static const std::set<std::string> polaron{"epsilon"};
  switch (model) {
    case ModelKind::Dephasing: return dephasing;
    case ModelKind::Polaron: return polaron;
    default: return euler;
  }
}

void check_grid(const GridSpec& grid, const std::string& field, bool positive) {
  if (grid.count < 2) throw ConfigError("grid count must be >= 2", 0, field + ".count");
  if (!std::isfinite(grid.min) || !std::isfinite(grid.max) || !(grid.min < grid.max))
    throw ConfigError("grid needs finite min < max", 0, field + ".max");
  if (grid.spacing == Spacing::Log && !(grid.min > 0.0))
    throw ConfigError("log spacing needs min > 0", 0, field + ".min");
  if (positive && !(grid.min > 0.0)) throw ConfigError("grid values must be > 0", 0, field + ".min");
  if (!positive && grid.min < 0.0) throw ConfigError("grid values must be >= 0", 0, field + ".min");
}

AngleProfile angle_or(const ScenarioConfig& c, const std::string& name, AngleProfile fallback) {
  auto it = c.drive.find(name);
  return it == c.drive.end() ? fallback : it->second;
}

// ---- parsing helpers ----

int line_of(const YAML::Node& node) {
  const auto mark = node.Mark();
  return mark.is_null() ? 0 : mark.line + 1;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, int>& lines) : lines_(lines) {}

  void expect_map(const YAML::Node& node, const std::string& field) {
    if (!node.IsMap()) throw ConfigError("expected a mapping", line_of(node), field);
    lines_[field] = line_of(node);
  }

  void check_keys(const YAML::Node& node, const std::string& section,
                  const std::set<std::string>& allowed) {
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key))
        throw ConfigError("unknown key", line_of(kv.first), join(section, key));
      lines_[join(section, key)] = line_of(kv.first);
    }
  }

  double number(const YAML::Node& node, const std::string& field) {
    if (!node.IsScalar()) throw ConfigError("expected a number", line_of(node), field);
    const auto text = node.Scalar();
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(value))
      throw ConfigError("expected a finite number, got '" + text + "'", line_of(node), field);
    return value;
  }

  int integer(const YAML::Node& node, const std::string& field) {
    if (!node.IsScalar()) throw ConfigError("expected an integer", line_of(node), field);
    const auto text = node.Scalar();
    int value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
      throw ConfigError("expected an integer, got '" + text + "'", line_of(node), field);
    return value;
  }

  std::string text(const YAML::Node& node, const std::string& field) {
    if (!node.IsScalar()) throw ConfigError("expected a string", line_of(node), field);
    return node.Scalar();
  }

  static std::string join(const std::string& a, const std::string& b) {
    return a.empty() ? b : a + "." + b;
  }

 private:
  std::map<std::string, int>& lines_;
};

template <class Enum>
Enum choose(const std::string& value, const std::vector<std::pair<std::string, Enum>>& options,
            int line, const std::string& field) {
  std::string names;
  for (const auto& [name, e] : options) {
    if (name == value) return e;
    names += (names.empty() ? "" : ", ") + name;
  }
  throw ConfigError("unknown value '" + value + "' (expected one of: " + names + ")", line, field);
}

GridSpec read_grid(Reader& r, const YAML::Node& node, const std::string& field) {
  r.expect_map(node, field);
  r.check_keys(node, field, {"min", "max", "count", "spacing"});
  for (const char* key : {"min", "max", "count"})
    if (!node[key]) throw ConfigError("missing key", line_of(node), field + "." + key);
  GridSpec g;
  g.min = r.number(node["min"], field + ".min");
  g.max = r.number(node["max"], field + ".max");
  g.count = r.integer(node["count"], field + ".count");
  if (node["spacing"])
    g.spacing = choose<Spacing>(r.text(node["spacing"], field + ".spacing"),
                                {{"linear", Spacing::Linear}, {"log", Spacing::Log}},
                                line_of(node["spacing"]), field + ".spacing");
  return g;
}

AngleProfile read_profile(Reader& r, const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence())
    throw ConfigError("expected a list of terms", line_of(node), field);
  std::vector<ProfileTerm> terms;
  std::size_t index = 0;
  for (const auto& item : node) {
    const std::string tf = field + "[" + std::to_string(index++) + "]";
    r.expect_map(item, tf);
    if (!item["kind"]) throw ConfigError("missing key", line_of(item), tf + ".kind");
    const auto kind = r.text(item["kind"], tf + ".kind");
    auto need = [&](const char* key) {
      if (!item[key]) throw ConfigError("missing key", line_of(item), tf + "." + key);
      return r.number(item[key], tf + "." + key);
    };
    if (kind == "constant") {
      r.check_keys(item, tf, {"kind", "value"});
      terms.emplace_back(ConstantTerm{need("value")});
    } else if (kind == "linear") {
      r.check_keys(item, tf, {"kind", "rate"});
      terms.emplace_back(LinearTerm{need("rate")});
    } else if (kind == "sinusoid") {
      r.check_keys(item, tf, {"kind", "amplitude", "frequency"});
      terms.emplace_back(SinusoidTerm{need("amplitude"), need("frequency")});
    } else if (kind == "cosine") {
      r.check_keys(item, tf, {"kind", "amplitude", "frequency"});
      terms.emplace_back(CosineTerm{need("amplitude"), need("frequency")});
    } else if (kind == "saturating_exp") {
      r.check_keys(item, tf, {"kind", "amplitude", "rate"});
      terms.emplace_back(SaturatingExpTerm{need("amplitude"), need("rate")});
    } else {
      throw ConfigError("unknown term kind '" + kind +
                            "' (expected constant, linear, sinusoid, cosine, saturating_exp)",
                        line_of(item["kind"]), tf + ".kind");
    }
  }
  try {
    return AngleProfile(std::move(terms));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), line_of(node), field);
  }
}

ScenarioConfig read_scenario(Reader& r, const YAML::Node& root) {
  ScenarioConfig c;
  r.expect_map(root, "");
  r.check_keys(root, "", {"scenario", "model", "drive", "spectral_density", "temperature", "grid",
                          "numerics", "output"});
  for (const char* section : {"scenario", "model", "grid"})
    if (!root[section]) throw ConfigError("missing section", 0, section);

  const auto scen = root["scenario"];
  r.expect_map(scen, "scenario");
  r.check_keys(scen, "scenario", {"name", "sweep"});
  if (scen["name"]) c.name = r.text(scen["name"], "scenario.name");
  if (!scen["sweep"]) throw ConfigError("missing key", line_of(scen), "scenario.sweep");
  c.sweep = choose<SweepKind>(
      r.text(scen["sweep"], "scenario.sweep"),
      {{"filter", SweepKind::Filter}, {"rate", SweepKind::Rate}, {"polaron", SweepKind::Polaron}},
      line_of(scen["sweep"]), "scenario.sweep");

  const auto model = root["model"];
  r.expect_map(model, "model");
  r.check_keys(model, "model", {"type", "n_spins", "delta"});
  if (!model["type"]) throw ConfigError("missing key", line_of(model), "model.type");
  c.model = choose<ModelKind>(r.text(model["type"], "model.type"),
                              {{"population_decay_rwa", ModelKind::PopulationDecayRWA},
                               {"population_decay_full", ModelKind::PopulationDecayFull},
                               {"dephasing", ModelKind::Dephasing},
                               {"large_spin", ModelKind::LargeSpin},
                               {"polaron", ModelKind::Polaron}},
                              line_of(model["type"]), "model.type");
  if (model["n_spins"]) c.n_spins = r.integer(model["n_spins"], "model.n_spins");
  if (model["delta"]) c.delta = r.number(model["delta"], "model.delta");

  if (const auto drive = root["drive"]) {
    r.expect_map(drive, "drive");
    const auto& allowed = angle_names(c.model);
    r.check_keys(drive, "drive", allowed);
    for (const auto& kv : drive) {
      const auto name = kv.first.as<std::string>();
      c.drive[name] = read_profile(r, kv.second, "drive." + name);
    }
  }

  if (const auto sd = root["spectral_density"]) {
    r.expect_map(sd, "spectral_density");
    r.check_keys(sd, "spectral_density", {"family", "G", "omega_c"});
    if (sd["family"])
      choose<int>(r.text(sd["family"], "spectral_density.family"), {{"ohmic", 0}},
                  line_of(sd["family"]), "spectral_density.family");
    if (sd["G"]) c.coupling = r.number(sd["G"], "spectral_density.G");
    if (sd["omega_c"]) c.cutoff = r.number(sd["omega_c"], "spectral_density.omega_c");
  }

  if (const auto temp = root["temperature"]) {
    r.expect_map(temp, "temperature");
    r.check_keys(temp, "temperature", {"kind", "beta"});
    const std::string kind = temp["kind"] ? r.text(temp["kind"], "temperature.kind") : "zero";
    if (kind == "zero") {
      if (temp["beta"]) throw ConfigError("beta given for zero temperature", line_of(temp["beta"]),
                                          "temperature.beta");
      c.temperature = ZeroTemperature{};
    } else if (kind == "finite") {
      if (!temp["beta"]) throw ConfigError("missing key", line_of(temp), "temperature.beta");
      c.temperature = FiniteTemperature{r.number(temp["beta"], "temperature.beta")};
    } else {
      throw ConfigError("unknown value '" + kind + "' (expected one of: zero, finite)",
                        line_of(temp["kind"]), "temperature.kind");
    }
  }

  const auto grid = root["grid"];
  r.expect_map(grid, "grid");
  r.check_keys(grid, "grid", {"tau", "omega"});
  if (const auto tau = grid["tau"]) {
    if (tau.IsMap())
      c.tau_grid = read_grid(r, tau, "grid.tau");
    else
      c.tau = r.number(tau, "grid.tau");
  }
  if (grid["omega"]) c.omega_grid = read_grid(r, grid["omega"], "grid.omega");

  if (const auto num = root["numerics"]) {
    r.expect_map(num, "numerics");
    r.check_keys(num, "numerics",
                 {"abs_tol", "rel_tol", "max_subdivisions", "bessel_order", "omega_cutoff_multiple",
                  "rate_method", "filter_method"});
    auto& n = c.numerics;
    if (num["abs_tol"]) n.quadrature.abs_tol = r.number(num["abs_tol"], "numerics.abs_tol");
    if (num["rel_tol"]) n.quadrature.rel_tol = r.number(num["rel_tol"], "numerics.rel_tol");
    if (num["max_subdivisions"])
      n.quadrature.max_subdivisions = r.integer(num["max_subdivisions"], "numerics.max_subdivisions");
    if (num["bessel_order"]) n.bessel_order = r.integer(num["bessel_order"], "numerics.bessel_order");
    if (num["omega_cutoff_multiple"])
      n.omega_cutoff_multiple = r.number(num["omega_cutoff_multiple"], "numerics.omega_cutoff_multiple");
    if (num["rate_method"])
      n.rate_method = choose<WeakRateMethod>(
          r.text(num["rate_method"], "numerics.rate_method"),
          {{"time_domain", WeakRateMethod::TimeDomain}, {"overlap", WeakRateMethod::Overlap}},
          line_of(num["rate_method"]), "numerics.rate_method");
    if (num["filter_method"])
      n.filter_method = choose<FilterMethod>(
          r.text(num["filter_method"], "numerics.filter_method"),
          {{"quadrature", FilterMethod::Quadrature}, {"series", FilterMethod::Series}},
          line_of(num["filter_method"]), "numerics.filter_method");
  }

  if (const auto out = root["output"]) {
    r.expect_map(out, "output");
    r.check_keys(out, "output", {"path"});
    if (out["path"]) c.output_path = r.text(out["path"], "output.path");
  }
  return c;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

void write_grid(std::ostringstream& out, const char* key, const GridSpec& g) {
  out << "  " << key << ": {min: " << format_shortest(g.min) << ", max: " << format_shortest(g.max)
      << ", count: " << g.count << ", spacing: " << to_string(g.spacing) << "}\n";
}

void write_term(std::ostringstream& out, const ProfileTerm& term) {
  out << "    - {kind: ";
  if (const auto* c = std::get_if<ConstantTerm>(&term))
    out << "constant, value: " << format_shortest(c->value);
  else if (const auto* l = std::get_if<LinearTerm>(&term))
    out << "linear, rate: " << format_shortest(l->rate);
  else if (const auto* s = std::get_if<SinusoidTerm>(&term))
    out << "sinusoid, amplitude: " << format_shortest(s->amplitude)
        << ", frequency: " << format_shortest(s->frequency);
  else if (const auto* k = std::get_if<CosineTerm>(&term))
    out << "cosine, amplitude: " << format_shortest(k->amplitude)
        << ", frequency: " << format_shortest(k->frequency);
  else if (const auto* e = std::get_if<SaturatingExpTerm>(&term))
    out << "saturating_exp, amplitude: " << format_shortest(e->amplitude)
        << ", rate: " << format_shortest(e->rate);
  out << "}\n";
}

}  // namespace

void validate(const ScenarioConfig& c) {
  const bool polaron_model = c.model == ModelKind::Polaron;
  if ((c.sweep == SweepKind::Polaron) != polaron_model)
    throw ConfigError("polaron sweeps need model type polaron and vice versa", 0, "model.type");
  if (c.model == ModelKind::LargeSpin && c.n_spins < 1)
    throw ConfigError("N_S must be >= 1", 0, "model.n_spins");
  if (!std::isfinite(c.delta)) throw ConfigError("delta must be finite", 0, "model.delta");

  const auto& allowed = angle_names(c.model);
  for (const auto& [name, profile] : c.drive)
    if (!allowed.count(name)) throw ConfigError("angle not used by this model", 0, "drive." + name);
  if (polaron_model && !c.drive.count("epsilon"))
    throw ConfigError("polaron model needs an epsilon profile", 0, "drive.epsilon");

  if (!(c.coupling >= 0.0)) throw ConfigError("G must be >= 0", 0, "spectral_density.G");
  if (!(c.cutoff > 0.0)) throw ConfigError("omega_c must be > 0", 0, "spectral_density.omega_c");
  if (const auto* f = std::get_if<FiniteTemperature>(&c.temperature)) {
    if (!(f->inverse_temperature > 0.0))
      throw ConfigError("beta must be > 0", 0, "temperature.beta");
    if (!polaron_model)
      throw ConfigError("finite temperature is only available for the polaron model", 0,
                        "temperature.kind");
  }

  if (c.sweep == SweepKind::Filter) {
    if (!c.omega_grid) throw ConfigError("filter sweeps need an omega grid", 0, "grid.omega");
    if (c.tau_grid) throw ConfigError("filter sweeps take a single tau", 0, "grid.tau");
    if (!(c.tau > 0.0)) throw ConfigError("tau must be > 0", 0, "grid.tau");
    check_grid(*c.omega_grid, "grid.omega", false);
  } else {
    if (!c.tau_grid) throw ConfigError("rate sweeps need a tau grid", 0, "grid.tau");
    if (c.omega_grid) throw ConfigError("rate sweeps take no omega grid", 0, "grid.omega");
    check_grid(*c.tau_grid, "grid.tau", true);
  }

  try {
    c.numerics.quadrature.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), 0, "numerics");
  }
  if (c.numerics.bessel_order && (*c.numerics.bessel_order < 0 ||
                                  *c.numerics.bessel_order > kBesselMaxOrder))
    throw ConfigError("bessel_order must be in [0, 500]", 0, "numerics.bessel_order");
  if (!(c.numerics.omega_cutoff_multiple > 0.0))
    throw ConfigError("omega_cutoff_multiple must be > 0", 0, "numerics.omega_cutoff_multiple");

  if (!polaron_model) {
    try {
      (void)build_filter_model(c);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what(), 0, "drive");
    }
  }
  if (c.numerics.filter_method == FilterMethod::Series) {
    const auto filter = build_filter_model(c);
    const auto* rwa = std::get_if<PopulationDecayRWA>(&filter);
    if (c.sweep != SweepKind::Filter || rwa == nullptr || !as_sinusoidal(rwa->drive))
      throw ConfigError(
          "series filters need an RWA filter sweep with alpha = eps0 t + (V0/Omega) sin(Omega t)",
          0, "numerics.filter_method");
  }
}

ScenarioConfig parse_scenario(const std::string& text) {
  std::map<std::string, int> lines;
  Reader reader(lines);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.msg, e.mark.is_null() ? 0 : e.mark.line + 1, "");
  }
  try {
    auto config = read_scenario(reader, root);
    validate(config);
    return config;
  } catch (const ConfigError& e) {
    if (e.line() > 0) throw;
    // Validation errors know the field only; recover the line from the parse.
    std::string key = e.field();
    while (!key.empty()) {
      if (auto it = lines.find(key); it != lines.end() && it->second > 0) {
        std::string message = e.what();
        const std::string prefix = e.field() + ": ";
        if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
        throw ConfigError(message, it->second, e.field());
      }
      const auto dot = key.rfind('.');
      key = dot == std::string::npos ? std::string() : key.substr(0, dot);
    }
    throw;
  } catch (const YAML::Exception& e) {
    throw ConfigError(e.msg, e.mark.is_null() ? 0 : e.mark.line + 1, "");
  }
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0, "");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string to_text(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "scenario:\n  name: " << quoted(c.name) << "\n  sweep: " << to_string(c.sweep) << "\n";
  out << "model:\n  type: " << to_string(c.model) << "\n";
  if (c.model == ModelKind::LargeSpin) out << "  n_spins: " << c.n_spins << "\n";
  if (c.model == ModelKind::Polaron) out << "  delta: " << format_shortest(c.delta) << "\n";
  if (!c.drive.empty()) {
    out << "drive:\n";
    for (const auto& [name, profile] : c.drive) {
      if (profile.terms().empty()) {
        out << "  " << name << ": []\n";
        continue;
      }
      out << "  " << name << ":\n";
      for (const auto& term : profile.terms()) write_term(out, term);
    }
  }
  out << "spectral_density:\n  family: ohmic\n  G: " << format_shortest(c.coupling)
      << "\n  omega_c: " << format_shortest(c.cutoff) << "\n";
  if (const auto* f = std::get_if<FiniteTemperature>(&c.temperature))
    out << "temperature:\n  kind: finite\n  beta: " << format_shortest(f->inverse_temperature) << "\n";
  else
    out << "temperature:\n  kind: zero\n";
  out << "grid:\n";
  if (c.tau_grid)
    write_grid(out, "tau", *c.tau_grid);
  else
    out << "  tau: " << format_shortest(c.tau) << "\n";
  if (c.omega_grid) write_grid(out, "omega", *c.omega_grid);
  const auto& n = c.numerics;
  out << "numerics:\n  abs_tol: " << format_shortest(n.quadrature.abs_tol)
      << "\n  rel_tol: " << format_shortest(n.quadrature.rel_tol)
      << "\n  max_subdivisions: " << n.quadrature.max_subdivisions << "\n";
  if (n.bessel_order) out << "  bessel_order: " << *n.bessel_order << "\n";
  out << "  omega_cutoff_multiple: " << format_shortest(n.omega_cutoff_multiple)
      << "\n  rate_method: " << to_string(n.rate_method)
      << "\n  filter_method: " << to_string(n.filter_method) << "\n";
  if (!c.output_path.empty()) out << "output:\n  path: " << quoted(c.output_path) << "\n";
  return out.str();
}

FilterModel build_filter_model(const ScenarioConfig& c) {
  switch (c.model) {
    case ModelKind::Dephasing:
      return Dephasing{angle_or(c, "alpha_tilde", {}), angle_or(c, "beta", AngleProfile::linear(1.0)),
                       angle_or(c, "gamma_tilde", {})};
    case ModelKind::Polaron:
      throw std::invalid_argument("the polaron model has no filter function");
    default: break;
  }
  EulerDrive drive(angle_or(c, "alpha", {}), angle_or(c, "beta", {}), angle_or(c, "gamma", {}));
  switch (c.model) {
    case ModelKind::PopulationDecayRWA: return PopulationDecayRWA{drive};
    case ModelKind::PopulationDecayFull: return PopulationDecayFull{drive};
    default: return LargeSpin{drive, c.n_spins};
  }
}

RateModel build_rate_model(const ScenarioConfig& c) {
  if (c.model == ModelKind::Polaron) return PolaronModel{c.delta, angle_or(c, "epsilon", {})};
  return WeakCouplingModel{build_filter_model(c), c.numerics.rate_method,
                           c.numerics.omega_cutoff_multiple};
}

OhmicSpectralDensity build_spectral_density(const ScenarioConfig& c) {
  return OhmicSpectralDensity(c.coupling, c.cutoff);
}

}  // namespace zeno
