#pragma once

#include "zeno/scenario.hpp"

#include <string>
#include <vector>

namespace zeno {

struct PresetVariant {
  std::string name;
  ScenarioConfig config;
};

/// A named figure data set: one scenario per curve.
struct Preset {
  std::string name;
  std::string description;
  std::vector<PresetVariant> variants;
};

/// All built-in presets, in listing order. Units: hbar = 1, eps0 = 1.
const std::vector<Preset>& presets();

/// Resolves "name" (all variants) or "name:variant". Throws ConfigError when unknown.
std::vector<PresetVariant> select_preset(const std::string& spec);

/// Versioned text listing; each variant is printed as a parseable scenario file.
std::string list_presets();

}  // namespace zeno
