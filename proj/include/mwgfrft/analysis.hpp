#pragma once

// Spectrograms, energy concentration and threshold anomaly detection.

#include <algorithm>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mwgfrft/transforms.hpp"

namespace mwgfrft {

enum class SpectrogramMode { aggregated, per_window_max };

constexpr std::string_view to_string(SpectrogramMode mode) noexcept {
  return mode == SpectrogramMode::aggregated ? "aggregated" : "per-window-max";
}

inline SpectrogramMode parse_spectrogram_mode(std::string_view name) {
  if (name == "aggregated") return SpectrogramMode::aggregated;
  if (name == "per-window-max") return SpectrogramMode::per_window_max;
  detail::fail(errc::invalid_parameter, "unknown spectrogram mode '" + std::string(name) + "'");
}

struct Spectrogram {
  Eigen::MatrixXd magnitudes;     // vertex x frequency
  Eigen::VectorXd per_vertex_max; // S_i, row maxima
};

struct FlaggedVertex {
  Index flat = 0;  // 1-based
  Index i1 = 0;    // 1-based
  Index i2 = 0;    // 1-based
};

struct DetectionResult {
  double delta = 0.0;
  double ratio = 0.5;
  std::vector<FlaggedVertex> flagged;
};

inline Spectrogram spectrogram(const Eigen::MatrixXd& magnitudes) {
  return {magnitudes, magnitudes.rowwise().maxCoeff()};
}

inline Spectrogram spectrogram(const CoefficientTensor& c, SpectrogramMode mode = SpectrogramMode::aggregated) {
  if (mode == SpectrogramMode::aggregated) return spectrogram(Eigen::MatrixXd(c.aggregated.cwiseAbs()));
  if (c.per_window.empty()) detail::fail(errc::shape_error, "tensor carries no per-window coefficients");
  Eigen::MatrixXd m = c.per_window.front().cwiseAbs();
  for (std::size_t l = 1; l < c.per_window.size(); ++l) m = m.cwiseMax(c.per_window[l].cwiseAbs());
  return spectrogram(m);
}

/// Flags vertices whose score strictly exceeds ratio * max S. The grid shape
/// is needed only to report (i1, i2) pairs.
inline DetectionResult detect_anomalies(const Spectrogram& s, Index n1, Index n2, double ratio = 0.5) {
  if (!(ratio > 0.0 && ratio < 1.0)) detail::fail(errc::invalid_parameter, "ratio must lie in (0, 1)");
  if (s.per_vertex_max.size() != n1 * n2) detail::fail(errc::shape_error, "spectrogram does not match the grid");
  DetectionResult out;
  out.ratio = ratio;
  const double peak = s.per_vertex_max.size() ? s.per_vertex_max.maxCoeff() : 0.0;
  if (!(peak > 0.0)) return out;
  out.delta = ratio * peak;
  for (Index i = 0; i < s.per_vertex_max.size(); ++i)
    if (s.per_vertex_max(i) > out.delta) {
      const auto [a, b] = unflatten_index(i + 1, n1, n2);
      out.flagged.push_back({i + 1, a, b});
    }
  return out;
}

/// Share of squared magnitude carried by the top_k largest entries.
inline double energy_concentration(const Spectrogram& s, Index top_k) {
  const Index total = s.magnitudes.size();
  if (top_k < 1 || top_k > total)
    detail::fail(errc::invalid_parameter, "top_k must lie in 1.." + std::to_string(total));
  std::vector<double> energy(static_cast<std::size_t>(total));
  for (Index j = 0; j < total; ++j) energy[static_cast<std::size_t>(j)] = s.magnitudes.data()[j] * s.magnitudes.data()[j];
  double all = 0.0;
  for (double e : energy) all += e;
  if (!(all > 0.0)) return 0.0;
  if (top_k == total) return 1.0;
  std::partial_sort(energy.begin(), energy.begin() + top_k, energy.end(), std::greater<>());
  double top = 0.0;
  for (Index j = 0; j < top_k; ++j) top += energy[static_cast<std::size_t>(j)];
  return top / all;
}

}  // namespace mwgfrft
