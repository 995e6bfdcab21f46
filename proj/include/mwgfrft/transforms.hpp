#pragma once

// Direct (literal) multi-window transforms, frame bounds and inversion.
//
// Coefficient matrices are vertex-major: row i is the flattened translation
// vertex, column k the flattened modulation frequency.

#include <cmath>
#include <string>
#include <vector>

#include "mwgfrft/windows.hpp"

namespace mwgfrft {

struct CoefficientMeta {
  Index n1 = 0;
  Index n2 = 0;
  double alpha = 1.0;
  WindowKind kind = WindowKind::custom;
  std::vector<double> taus;
  bool normalized = false;
  std::string method;  // "direct", "fast", "separable"
};

struct CoefficientTensor {
  CoefficientMeta meta;
  std::vector<Eigen::MatrixXcd> per_window;
  Eigen::MatrixXcd aggregated;

  Index count() const { return static_cast<Index>(per_window.size()); }
  Index size() const { return meta.n1 * meta.n2; }
};

struct DirectOptions : ExecOptions {
  Index max_size = 1024;  // the direct path is O(L N^4)
};

struct FrameBounds {
  double A = 0.0;
  double B = 0.0;
  Eigen::VectorXd per_vertex;  // D(n)
};

namespace detail {

inline CoefficientMeta meta_for(const WindowBank& bank, double alpha, const char* method) {
  return {bank.n1, bank.n2, alpha, bank.kind, bank.taus, bank.normalized, method};
}

// Sum in ascending window order.
inline Eigen::MatrixXcd aggregate(const std::vector<Eigen::MatrixXcd>& per_window) {
  Eigen::MatrixXcd out = per_window.front();
  for (std::size_t l = 1; l < per_window.size(); ++l) out += per_window[l];
  return out;
}

// W_l(i,k) = N^a sum_n f(n) conj(phi[n,k]) sum_p conj(g_l(p)) phi[i,p] conj(phi[n,p]),
// every entry evaluated on its own in that summation order.
inline CoefficientTensor direct_coefficients(const Eigen::VectorXcd& f, const WindowBank& bank,
                                             const Eigen::MatrixXcd& phi, double alpha, const DirectOptions& opt) {
  const Index n = phi.rows();
  if (n > opt.max_size)
    fail(errc::invalid_parameter, "direct transform capped at N = " + std::to_string(opt.max_size) + " (got " +
                                      std::to_string(n) + ")");
  const double scale = std::pow(static_cast<double>(n), alpha);
  const Eigen::MatrixXcd conj_phi = phi.conjugate();
  const Eigen::MatrixXcd f_conj_phi = f.asDiagonal() * conj_phi;

  CoefficientTensor out;
  out.meta = meta_for(bank, alpha, "direct");
  for (const auto& g : bank.spectra) {
    const Eigen::VectorXcd g_conj = g.conjugate();
    Eigen::MatrixXcd w(n, n);
    parallel_for(n, opt.threads, [&](Index i) {
      const Eigen::VectorXcd weights = g_conj.cwiseProduct(phi.row(i).transpose());
      Eigen::VectorXcd inner(n);
      for (Index k = 0; k < n; ++k) {
        inner.noalias() = conj_phi * weights;
        w(i, k) = scale * f_conj_phi.col(k).cwiseProduct(inner).sum();
      }
    });
    out.per_window.push_back(std::move(w));
  }
  out.aggregated = aggregate(out.per_window);
  return out;
}

// D(n) = N^{2a} sum_l sum_p |g_l(p)|^2 |phi[n,p]|^2
inline Eigen::VectorXd frame_diagonal(const WindowBank& bank, const Eigen::MatrixXcd& phi, double alpha) {
  if (!bank.dc_condition())
    fail(errc::frame_condition, "sum_l |g_l(0)|^2 is zero; the atoms do not form a frame");
  Eigen::VectorXd power = Eigen::VectorXd::Zero(phi.cols());
  for (const auto& g : bank.spectra) power += g.cwiseAbs2();
  const double scale = std::pow(static_cast<double>(phi.rows()), 2.0 * alpha);
  return scale * (phi.cwiseAbs2() * power);
}

}  // namespace detail

/// 1D multi-window transform; the bank must be an n x 1 bank on `b`.
inline CoefficientTensor mwgfrft_1d(const Eigen::VectorXcd& f, const WindowBank& bank, const FractionalBasis& b,
                                    const DirectOptions& opt = {}) {
  if (f.size() != b.size()) detail::fail(errc::shape_error, "signal length does not match the basis");
  detail::require_bank(bank, b.size(), 1);
  return detail::direct_coefficients(f, bank, b.gamma, b.alpha, opt);
}

/// 2D multi-window transform evaluated entry by entry, O(L N^4).
inline CoefficientTensor mwgfrft_2d_direct(const Signal2D& f, const WindowBank& bank, const JointBasis& jb,
                                           const DirectOptions& opt = {}) {
  detail::require_grid(f, jb);
  detail::require_bank(bank, jb.n1(), jb.n2());
  return detail::direct_coefficients(flatten(f), bank, jb.phi, jb.alpha(), opt);
}

/// Single-window 2D transform through separable translation and modulation:
/// W(i,k) = N^{a/2} [sgfrft2d(f .* conj(T_i g))](k). Independent of the
/// Kronecker-basis code paths.
inline Eigen::MatrixXcd wgfrft_2d(const Signal2D& f, const Signal2D& window_spectrum, const JointBasis& jb) {
  detail::require_grid(f, jb);
  detail::require_grid(window_spectrum, jb);
  const Index n1 = jb.n1(), n2 = jb.n2();
  const double half = std::pow(static_cast<double>(n1 * n2), jb.alpha() / 2.0);
  Eigen::MatrixXcd out(n1 * n2, n1 * n2);
  for (Index i1 = 0; i1 < n1; ++i1)
    for (Index i2 = 0; i2 < n2; ++i2) {
      const Signal2D shift = jb.b1.gamma.row(i1).adjoint() * jb.b2.gamma.row(i2).conjugate();
      const Signal2D translated = half * isgfrft2d(window_spectrum.cwiseProduct(shift), jb);
      out.row(i1 * n2 + i2) = half * flatten(sgfrft2d(f.cwiseProduct(translated.conjugate()), jb)).transpose();
    }
  return out;
}

inline FrameBounds frame_bounds(const WindowBank& bank, const JointBasis& jb) {
  detail::require_bank(bank, jb.n1(), jb.n2());
  FrameBounds fb;
  fb.per_vertex = detail::frame_diagonal(bank, jb.phi, jb.alpha());
  fb.A = fb.per_vertex.minCoeff();
  fb.B = fb.per_vertex.maxCoeff();
  if (!(fb.A > 0.0)) detail::fail(errc::frame_condition, "lower frame bound is not positive");
  return fb;
}

/// sum_l ||W_l||_F^2
inline double frame_energy(const CoefficientTensor& c) {
  double e = 0.0;
  for (const auto& w : c.per_window) e += w.squaredNorm();
  return e;
}

/// f(m) = (1/D(m)) sum_l sum_{i,k} W_l(i,k) atom_{l,i,k}(m), evaluated as
/// N^a [K_l W_l phi^T](m,m) with K_l = phi diag(g_l) phi^H.
inline Signal2D inverse_mwgfrft_2d(const CoefficientTensor& c, const WindowBank& bank, const JointBasis& jb) {
  detail::require_bank(bank, jb.n1(), jb.n2());
  if (c.meta.n1 != jb.n1() || c.meta.n2 != jb.n2() || c.count() != bank.count())
    detail::fail(errc::shape_error, "coefficient tensor does not match the bank and basis");
  const Index n = jb.size();
  for (const auto& w : c.per_window)
    if (w.rows() != n || w.cols() != n) detail::fail(errc::shape_error, "coefficient matrix has the wrong size");
  const Eigen::VectorXd d = detail::frame_diagonal(bank, jb.phi, jb.alpha());
  if (!(d.minCoeff() > 0.0)) detail::fail(errc::frame_condition, "frame diagonal has a nonpositive entry");

  const double scale = std::pow(static_cast<double>(n), jb.alpha());
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(n);
  for (Index l = 0; l < bank.count(); ++l) {
    const Eigen::MatrixXcd kernel =
        jb.phi * bank.spectra[static_cast<std::size_t>(l)].asDiagonal() * jb.phi.adjoint();
    const Eigen::MatrixXcd synth = c.per_window[static_cast<std::size_t>(l)] * jb.phi.transpose();
    for (Index m = 0; m < n; ++m) acc(m) += kernel.row(m).transpose().cwiseProduct(synth.col(m)).sum();
  }
  const Eigen::VectorXcd f = scale * acc.cwiseQuotient(d.cast<cplx>());
  return unflatten(f, jb.n1(), jb.n2());
}

}  // namespace mwgfrft
