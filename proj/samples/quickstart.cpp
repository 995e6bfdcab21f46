// Forward and inverse 2D multi-window transform on a 12 x 10 grid of paths.

#include <cstdio>

#include "mwgfrft/mwgfrft.hpp"

int main() {
  using namespace mwgfrft;
  const double alpha = 0.6;
  const Graph g1 = build_graph(GraphKind::path, {.n = 12});
  const Graph g2 = build_graph(GraphKind::path, {.n = 10});
  const JointBasis jb = joint_basis(fractional_basis(g1, alpha), fractional_basis(g2, alpha));
  const WindowBank bank = make_window_bank(WindowKind::gauss, 2, jb);

  const Signal2D f = impulses(12, 10, std::vector<Index>{50});
  const CoefficientTensor c = f2d_mwgfrft(f, bank, jb);
  const FrameBounds fb = frame_bounds(bank, jb);
  const Signal2D back = inverse_mwgfrft_2d(c, bank, jb);

  std::printf("frame bounds A=%.6g B=%.6g\n", fb.A, fb.B);
  std::printf("top-10 energy share %.4f\n", energy_concentration(spectrogram(c), 10));
  std::printf("reconstruction error %.3e\n", relative_error(back, f));
}
