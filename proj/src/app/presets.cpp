#include "zeno/presets.hpp"

#include <sstream>

namespace zeno {

namespace {

AngleProfile eps0_t() { return AngleProfile::linear(1.0); }

struct DriveVariant {
  std::string name;
  std::map<std::string, AngleProfile> drive;
};

// alpha = eps0 t + (V0/Omega) sin(Omega t)
std::vector<DriveVariant> sinusoidal_alpha() {
  std::vector<DriveVariant> out{{"undriven", {{"alpha", eps0_t()}}}};
  for (auto [v, w] : {std::pair{1, 5}, {5, 1}, {5, 5}}) {
    out.push_back({"V" + std::to_string(v) + "-W" + std::to_string(w),
                   {{"alpha", eps0_t() + AngleProfile::sinusoid(v, w)}}});
  }
  return out;
}

std::vector<DriveVariant> beta_drives() {
  return {
      {"undriven", {{"alpha", eps0_t()}}},
      {"chi0.2", {{"alpha", eps0_t()}, {"beta", AngleProfile::saturating_exp(1.0, 0.2)}}},
      {"upsilon5", {{"alpha", eps0_t()}, {"beta", AngleProfile::linear(5.0)}}},
  };
}

std::vector<DriveVariant> beta_gamma_drives() {
  std::vector<DriveVariant> out{{"undriven", {{"alpha", eps0_t()}}}};
  for (auto [u, x] : {std::pair{5, 1}, {1, 5}, {5, 5}}) {
    out.push_back({"upsilon" + std::to_string(u) + "-xi" + std::to_string(x),
                   {{"alpha", eps0_t()},
                    {"beta", AngleProfile::linear(u)},
                    {"gamma", AngleProfile::linear(x)}}});
  }
  return out;
}

std::vector<DriveVariant> dephasing_drives() {
  std::vector<DriveVariant> out{{"undriven", {{"beta", eps0_t()}}}};
  for (auto [v, w] : {std::pair{1, 5}, {5, 1}, {5, 5}}) {
    out.push_back({"V" + std::to_string(v) + "-W" + std::to_string(w),
                   {{"alpha_tilde", AngleProfile::sinusoid(v, w)}, {"beta", eps0_t()}}});
  }
  return out;
}

// epsilon(t) = eps0 + V0 cos(Omega t), whose integral is the sinusoidal alpha above.
std::vector<DriveVariant> polaron_drives() {
  std::vector<DriveVariant> out{{"undriven", {{"epsilon", AngleProfile::constant(1.0)}}}};
  for (auto [v, w] : {std::pair{1, 5}, {5, 1}, {5, 5}}) {
    out.push_back({"V" + std::to_string(v) + "-W" + std::to_string(w),
                   {{"epsilon", AngleProfile::constant(1.0) + AngleProfile::cosine(v, w)}}});
  }
  return out;
}

ScenarioConfig filter_base(ModelKind model, double tau) {
  ScenarioConfig c;
  c.sweep = SweepKind::Filter;
  c.model = model;
  c.tau = tau;
  c.omega_grid = GridSpec{0.0, 10.0, 201, Spacing::Linear};
  return c;
}

ScenarioConfig rate_base(ModelKind model, double coupling) {
  ScenarioConfig c;
  c.sweep = SweepKind::Rate;
  c.model = model;
  c.coupling = coupling;
  c.cutoff = 10.0;
  c.tau_grid = GridSpec{0.05, 3.0, 120, Spacing::Log};
  return c;
}

ScenarioConfig polaron_base(double coupling) {
  ScenarioConfig c;
  c.sweep = SweepKind::Polaron;
  c.model = ModelKind::Polaron;
  c.delta = 0.05;
  c.coupling = coupling;
  c.cutoff = 10.0;
  c.tau_grid = GridSpec{0.05, 5.0, 120, Spacing::Log};
  return c;
}

Preset make(const std::string& name, const std::string& description, const ScenarioConfig& base,
            const std::vector<DriveVariant>& drives) {
  Preset p{name, description, {}};
  for (const auto& d : drives) {
    ScenarioConfig c = base;
    c.name = name + ":" + d.name;
    c.drive = d.drive;
    p.variants.push_back({d.name, c});
  }
  return p;
}

std::vector<Preset> build() {
  using M = ModelKind;
  return {
      make("fig1a", "RWA population decay filter, sinusoidal alpha, tau = 0.1",
           filter_base(M::PopulationDecayRWA, 0.1), sinusoidal_alpha()),
      make("fig1b", "RWA population decay filter, sinusoidal alpha, tau = 1",
           filter_base(M::PopulationDecayRWA, 1.0), sinusoidal_alpha()),
      make("fig2a", "RWA population decay filter, beta drives, tau = 1",
           filter_base(M::PopulationDecayRWA, 1.0), beta_drives()),
      make("fig2b", "RWA population decay filter, linear beta and gamma, tau = 1",
           filter_base(M::PopulationDecayRWA, 1.0), beta_gamma_drives()),
      make("fig3a", "RWA population decay rate, sinusoidal alpha, G = 0.01, omega_c = 10",
           rate_base(M::PopulationDecayRWA, 0.01), sinusoidal_alpha()),
      make("fig3b", "RWA population decay rate, beta drives, G = 0.05, omega_c = 10",
           rate_base(M::PopulationDecayRWA, 0.05), beta_drives()),
      make("fig4a", "population decay filter without RWA, beta drives, tau = 1",
           filter_base(M::PopulationDecayFull, 1.0), beta_drives()),
      make("fig4b", "population decay rate without RWA, beta drives, G = 0.01, omega_c = 10",
           rate_base(M::PopulationDecayFull, 0.01), beta_drives()),
      make("fig5a", "driven dephasing filter, sinusoidal alpha_tilde, tau = 1",
           filter_base(M::Dephasing, 1.0), dephasing_drives()),
      make("fig5b", "driven dephasing rate, sinusoidal alpha_tilde, G = 0.01, omega_c = 10",
           rate_base(M::Dephasing, 0.01), dephasing_drives()),
      make("polaron-fig-a", "strong-coupling rate, delta = 0.05, G = 1, omega_c = 10",
           polaron_base(1.0), polaron_drives()),
      make("polaron-fig-b", "strong-coupling rate, delta = 0.05, G = 2, omega_c = 10",
           polaron_base(2.0), polaron_drives()),
  };
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

std::vector<PresetVariant> select_preset(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  for (const auto& p : presets()) {
    if (p.name != name) continue;
    if (colon == std::string::npos) return p.variants;
    const std::string variant = spec.substr(colon + 1);
    for (const auto& v : p.variants)
      if (v.name == variant) return {v};
    std::string names;
    for (const auto& v : p.variants) names += (names.empty() ? "" : ", ") + v.name;
    throw ConfigError("unknown variant '" + variant + "' (available: " + names + ")", 0, "preset");
  }
  throw ConfigError("unknown preset '" + name + "'", 0, "preset");
}

std::string list_presets() {
  std::ostringstream out;
  out << "# presets v1\n";
  for (const auto& p : presets()) {
    out << "# " << p.name << ": " << p.description << "\n";
    for (const auto& v : p.variants) out << "---\n# " << v.config.name << "\n" << to_text(v.config);
  }
  return out.str();
}

}  // namespace zeno
