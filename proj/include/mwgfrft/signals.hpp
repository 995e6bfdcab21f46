#pragma once

// Test and experiment signals on an n1 x n2 grid.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "mwgfrft/graph.hpp"

namespace mwgfrft {

/// Unit impulses at 1-based flat product indices.
inline Signal2D impulses(Index n1, Index n2, const std::vector<Index>& flat) {
  Signal2D f = Signal2D::Zero(n1, n2);
  for (Index v : flat) {
    const auto [a, b] = unflatten_index(v, n1, n2);
    f(a - 1, b - 1) = 1.0;
  }
  return f;
}

/// Unit impulses at 1-based (i1, i2) pairs.
inline Signal2D impulses(Index n1, Index n2, const std::vector<std::pair<Index, Index>>& pairs) {
  std::vector<Index> flat;
  for (auto [a, b] : pairs) flat.push_back(flat_index(a, b, n1, n2));
  return impulses(n1, n2, flat);
}

/// Entries uniform in [-1, 1); with `complex_values` the imaginary parts are
/// drawn the same way, interleaved with the real parts in row-major order.
inline Signal2D random_signal(Index n1, Index n2, std::uint64_t seed, bool complex_values = false) {
  std::mt19937_64 rng(seed);
  Signal2D f(n1, n2);
  for (Index a = 0; a < n1; ++a)
    for (Index b = 0; b < n2; ++b) {
      const double re = 2.0 * detail::uniform01(rng) - 1.0;
      const double im = complex_values ? 2.0 * detail::uniform01(rng) - 1.0 : 0.0;
      f(a, b) = cplx(re, im);
    }
  return f;
}

/// amplitude * cos(pi (i1 + 1/2) / n1) * cos(pi (i2 + 1/2) / n2), 0-based i.
inline Signal2D smooth_background(Index n1, Index n2, double amplitude = 0.1) {
  Signal2D f(n1, n2);
  for (Index a = 0; a < n1; ++a)
    for (Index b = 0; b < n2; ++b)
      f(a, b) = amplitude * std::cos(std::numbers::pi * (static_cast<double>(a) + 0.5) / static_cast<double>(n1)) *
                std::cos(std::numbers::pi * (static_cast<double>(b) + 0.5) / static_cast<double>(n2));
  return f;
}

/// The six injected anomalies of the detection scenario (1-based pairs).
inline std::vector<std::pair<Index, Index>> anomaly_vertices() {
  return {{2, 3}, {3, 11}, {6, 7}, {8, 9}, {10, 2}, {11, 10}};
}

/// Smooth background plus unit impulses at anomaly_vertices(), on 12 x 12.
inline Signal2D anomaly_scenario() {
  return smooth_background(12, 12) + impulses(12, 12, anomaly_vertices());
}

}  // namespace mwgfrft
