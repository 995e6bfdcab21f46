#pragma once

// Spectral window banks, fractional translation / modulation, atoms and
// graph fractional convolution.
//
// Vertex and frequency indices are 0-based here.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mwgfrft/spectral.hpp"

namespace mwgfrft {

enum class WindowKind { heat, gauss, custom };

constexpr std::string_view to_string(WindowKind kind) noexcept {
  switch (kind) {
    case WindowKind::heat: return "heat";
    case WindowKind::gauss: return "gauss";
    case WindowKind::custom: return "custom";
  }
  return "custom";
}

inline WindowKind parse_window_kind(std::string_view name) {
  for (auto k : {WindowKind::heat, WindowKind::gauss, WindowKind::custom})
    if (to_string(k) == name) return k;
  detail::fail(errc::invalid_parameter, "unknown window kind '" + std::string(name) + "'");
}

/// L spectral windows sampled on an n1 x n2 joint eigenvalue grid. Each
/// spectrum is stored flattened (k2 fastest); a 1D bank has n2 = 1.
struct WindowBank {
  WindowKind kind = WindowKind::custom;
  std::vector<double> taus;
  bool normalized = false;
  Index n1 = 0;
  Index n2 = 0;
  std::vector<Eigen::VectorXcd> spectra;

  Index count() const { return static_cast<Index>(spectra.size()); }
  Index size() const { return n1 * n2; }

  /// sum_l |g_l(0,0)|^2; the frame condition needs it strictly positive.
  double dc_energy() const {
    double e = 0.0;
    for (const auto& s : spectra) e += std::norm(s(0));
    return e;
  }
  bool dc_condition() const { return dc_energy() > 0.0; }

  Signal2D spectrum(Index l) const { return unflatten(spectra.at(static_cast<std::size_t>(l)), n1, n2); }
};

/// tau_l = 0.5 * 2^-l for l = 0..L-1.
inline std::vector<double> default_taus(Index count) {
  std::vector<double> taus;
  for (Index l = 0; l < count; ++l) taus.push_back(std::ldexp(0.5, -static_cast<int>(l)));
  return taus;
}

inline double window_kernel(WindowKind kind, double tau, double lambda) {
  switch (kind) {
    case WindowKind::heat: return std::exp(-tau * lambda);
    case WindowKind::gauss: return std::exp(-tau * lambda * lambda) / std::sqrt(2.0 * std::numbers::pi);
    case WindowKind::custom: break;
  }
  detail::fail(errc::invalid_parameter, "custom windows have no closed-form kernel");
}

/// Scales every window to unit l2 norm over the grid. A bank already marked
/// normalized is returned unchanged.
inline WindowBank normalize(WindowBank bank) {
  if (bank.normalized) return bank;
  for (auto& s : bank.spectra) {
    const double norm = s.norm();
    if (norm > 0.0) s /= norm;
  }
  bank.normalized = true;
  return bank;
}

namespace detail {

inline WindowBank sampled_bank(WindowKind kind, Index count, const Eigen::VectorXd& grid, Index n1, Index n2,
                               std::optional<std::vector<double>> taus, bool normalized) {
  if (kind == WindowKind::custom) fail(errc::invalid_parameter, "use custom_window_bank for explicit spectra");
  if (count < 1) fail(errc::invalid_parameter, "window count L must be at least 1");
  std::vector<double> t = taus ? *taus : default_taus(count);
  if (static_cast<Index>(t.size()) != count)
    fail(errc::invalid_parameter, "expected " + std::to_string(count) + " scale values, got " + std::to_string(t.size()));
  for (double v : t)
    if (!(v > 0.0) || !std::isfinite(v)) fail(errc::invalid_parameter, "scale parameters must be positive");
  WindowBank bank;
  bank.kind = kind;
  bank.taus = t;
  bank.n1 = n1;
  bank.n2 = n2;
  for (double tau : t) {
    Eigen::VectorXcd s(grid.size());
    for (Index k = 0; k < grid.size(); ++k) s(k) = window_kernel(kind, tau, grid(k));
    bank.spectra.push_back(std::move(s));
  }
  return normalized ? normalize(std::move(bank)) : bank;
}

}  // namespace detail

/// Heat (e^{-tau lambda}) or Gaussian (e^{-tau lambda^2} / sqrt(2 pi)) windows
/// evaluated at the joint eigenvalues. Default taus: default_taus(L).
inline WindowBank make_window_bank(WindowKind kind, Index count, const JointBasis& jb,
                                   std::optional<std::vector<double>> taus = std::nullopt, bool normalized = true) {
  return detail::sampled_bank(kind, count, jb.joint_r, jb.n1(), jb.n2(), std::move(taus), normalized);
}

/// 1D bank on a single graph, shaped n x 1.
inline WindowBank make_window_bank(WindowKind kind, Index count, const FractionalBasis& b,
                                   std::optional<std::vector<double>> taus = std::nullopt, bool normalized = true) {
  return detail::sampled_bank(kind, count, b.r, b.size(), 1, std::move(taus), normalized);
}

/// Bank from explicit flattened spectra of length n1 * n2.
inline WindowBank custom_window_bank(std::vector<Eigen::VectorXcd> spectra, Index n1, Index n2,
                                     bool normalized = false) {
  if (spectra.empty()) detail::fail(errc::invalid_parameter, "window count L must be at least 1");
  for (const auto& s : spectra)
    if (s.size() != n1 * n2) detail::fail(errc::shape_error, "window spectrum does not match the grid");
  WindowBank bank;
  bank.kind = WindowKind::custom;
  bank.n1 = n1;
  bank.n2 = n2;
  bank.spectra = std::move(spectra);
  return normalized ? normalize(std::move(bank)) : bank;
}

namespace detail {

inline void require_index(Index value, Index bound, const char* what) {
  if (value < 0 || value >= bound)
    fail(errc::index_error, std::string(what) + " " + std::to_string(value) + " outside 0.." + std::to_string(bound - 1));
}

// N^{a/2} phi diag(ghat) phi[i,:]^H
inline Eigen::VectorXcd translate_spectrum(const Eigen::VectorXcd& ghat, Index i, const Eigen::MatrixXcd& phi,
                                           double alpha) {
  const double scale = std::pow(static_cast<double>(phi.rows()), alpha / 2.0);
  const Eigen::VectorXcd weights = ghat.cwiseProduct(phi.row(i).adjoint());
  return scale * (phi * weights);
}

inline void require_bank(const WindowBank& bank, Index n1, Index n2) {
  if (bank.n1 != n1 || bank.n2 != n2) fail(errc::shape_error, "window bank was built on a different grid");
}

}  // namespace detail

/// (T_i g)(n) = N^{a/2} sum_p ghat(p) conj(gamma_p(i)) gamma_p(n).
inline Eigen::VectorXcd translate_1d(const Eigen::VectorXcd& g, Index i, const FractionalBasis& b) {
  detail::require_index(i, b.size(), "vertex");
  return detail::translate_spectrum(sgfrft(g, b), i, b.gamma, b.alpha);
}

inline Signal2D translate_2d(const Signal2D& g, Index i1, Index i2, const JointBasis& jb) {
  detail::require_grid(g, jb);
  detail::require_index(i1, jb.n1(), "vertex i1");
  detail::require_index(i2, jb.n2(), "vertex i2");
  const Eigen::VectorXcd t =
      detail::translate_spectrum(flatten(sgfrft2d(g, jb)), i1 * jb.n2() + i2, jb.phi, jb.alpha());
  return unflatten(t, jb.n1(), jb.n2());
}

/// (M_k g)(n) = N^{a/2} g(n) gamma_k(n).
inline Eigen::VectorXcd modulate_1d(const Eigen::VectorXcd& g, Index k, const FractionalBasis& b) {
  if (g.size() != b.size()) detail::fail(errc::shape_error, "signal length does not match the basis");
  detail::require_index(k, b.size(), "frequency");
  const double scale = std::pow(static_cast<double>(b.size()), b.alpha / 2.0);
  return scale * g.cwiseProduct(b.gamma.col(k));
}

inline Signal2D modulate_2d(const Signal2D& g, Index k1, Index k2, const JointBasis& jb) {
  detail::require_grid(g, jb);
  detail::require_index(k1, jb.n1(), "frequency k1");
  detail::require_index(k2, jb.n2(), "frequency k2");
  const double scale = std::pow(static_cast<double>(jb.size()), jb.alpha() / 2.0);
  return scale * g.cwiseProduct(jb.b1.gamma.col(k1) * jb.b2.gamma.col(k2).transpose());
}

struct Atom {
  Index l = 0;
  Index i1 = 0, i2 = 0;
  Index k1 = 0, k2 = 0;
  Signal2D values;
};

/// M_{k1,k2} T_{i1,i2} g_l, with g_l the vertex-domain window of the bank.
inline Atom atom_2d(const WindowBank& bank, Index l, Index i1, Index i2, Index k1, Index k2, const JointBasis& jb) {
  detail::require_bank(bank, jb.n1(), jb.n2());
  detail::require_index(l, bank.count(), "window");
  const Signal2D g = isgfrft2d(bank.spectrum(l), jb);
  return {l, i1, i2, k1, k2, modulate_2d(translate_2d(g, i1, i2, jb), k1, k2, jb)};
}

/// isgfrft2d(sgfrft2d(f) .* sgfrft2d(g)).
inline Signal2D graph_convolution_2d(const Signal2D& f, const Signal2D& g, const JointBasis& jb) {
  return isgfrft2d(sgfrft2d(f, jb).cwiseProduct(sgfrft2d(g, jb)), jb);
}

}  // namespace mwgfrft
