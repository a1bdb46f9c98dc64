#include "zeno/rates.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace zeno {

std::string to_string(Regime regime) { return regime == Regime::Zeno ? "zeno" : "anti_zeno"; }

RegimeSegmentation classify_regimes(const RateCurve& curve, double dead_band) {
  return classify_regimes(curve.tau, curve.gamma, dead_band);
}

RegimeSegmentation classify_regimes(const std::vector<double>& tau,
                                    const std::vector<double>& gamma, double dead_band) {
  if (tau.size() != gamma.size())
    throw std::invalid_argument("tau and gamma must have the same length");
  if (tau.size() < 3) throw std::domain_error("regime classification needs at least 3 points");
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (!std::isfinite(gamma[i])) throw std::domain_error("regime classification needs finite rates");
    if (i > 0 && !(tau[i] > tau[i - 1]))
      throw std::invalid_argument("tau grid must be strictly ascending");
  }

  double scale = 0.0;
  for (double g : gamma) scale = std::max(scale, std::abs(g));
  const double threshold = dead_band * scale;

  // Interval slopes; flat intervals inherit from the nearest decided neighbour,
  // preferring the left one.
  const std::size_t m = tau.size() - 1;
  std::vector<std::optional<Regime>> raw(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double step = gamma[i + 1] - gamma[i];
    if (std::abs(step) > threshold) raw[i] = step > 0.0 ? Regime::Zeno : Regime::AntiZeno;
  }

  RegimeSegmentation out;
  out.interval_labels.assign(m, Regime::Zeno);
  std::optional<Regime> last;
  for (std::size_t i = 0; i < m; ++i) {
    if (raw[i]) last = raw[i];
    if (last) out.interval_labels[i] = *last;
  }
  // Leading flat run takes the first decided label to its right.
  std::size_t first = 0;
  while (first < m && !raw[first]) ++first;
  if (first < m)
    for (std::size_t i = 0; i < first; ++i) out.interval_labels[i] = *raw[first];

  RegimeSegment current{tau.front(), tau.front(), out.interval_labels.front()};
  for (std::size_t i = 0; i < m; ++i) {
    if (out.interval_labels[i] != current.regime) {
      current.tau_end = tau[i];
      out.segments.push_back(current);
      out.crossovers.push_back(tau[i]);
      current = RegimeSegment{tau[i], tau[i], out.interval_labels[i]};
    }
  }
  current.tau_end = tau.back();
  out.segments.push_back(current);
  return out;
}

Regime point_regime(const RegimeSegmentation& seg, std::size_t i) {
  if (seg.interval_labels.empty()) throw std::invalid_argument("empty segmentation");
  return seg.interval_labels[std::min(i, seg.interval_labels.size() - 1)];
}

}  // namespace zeno
