// Flags the impulses hidden in a smooth background on a 12 x 12 product of
// paths and prints them as 1-based (i1, i2) pairs.

#include <cstdio>

#include "mwgfrft/mwgfrft.hpp"

int main() {
  using namespace mwgfrft;
  const Graph path = build_graph(GraphKind::path, {.n = 12});
  const FractionalBasis b = fractional_basis(path, 0.7);
  const JointBasis jb = joint_basis(b, b);
  const WindowBank bank = make_window_bank(WindowKind::gauss, 5, jb);

  const Spectrogram s = spectrogram(f2d_mwgfrft(anomaly_scenario(), bank, jb));
  const DetectionResult d = detect_anomalies(s, 12, 12, 0.5);
  std::printf("threshold %.6g, %zu flagged\n", d.delta, d.flagged.size());
  for (const auto& v : d.flagged) std::printf("  (%lld, %lld)\n", static_cast<long long>(v.i1), static_cast<long long>(v.i2));
}
