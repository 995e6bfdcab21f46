#pragma once

// Brute-force reference evaluations written straight from the scalar
// definitions, using the factor bases gamma1 / gamma2 and explicit loops
// rather than the library's Kronecker and matrix-product paths.

#include <algorithm>
#include <cmath>
#include <vector>

#include "mwgfrft/mwgfrft.hpp"

namespace oracle {

using mwgfrft::cplx;
using mwgfrft::Index;
using mwgfrft::JointBasis;
using mwgfrft::Signal2D;

// phi_{k1,k2}(n1,n2)
inline cplx phi(const JointBasis& jb, Index n1, Index n2, Index k1, Index k2) {
  return jb.b1.gamma(n1, k1) * jb.b2.gamma(n2, k2);
}

inline double big_n(const JointBasis& jb) { return static_cast<double>(jb.n1() * jb.n2()); }

inline Signal2D sgfrft2d(const Signal2D& f, const JointBasis& jb) {
  Signal2D out = Signal2D::Zero(jb.n1(), jb.n2());
  for (Index k1 = 0; k1 < jb.n1(); ++k1)
    for (Index k2 = 0; k2 < jb.n2(); ++k2)
      for (Index n1 = 0; n1 < jb.n1(); ++n1)
        for (Index n2 = 0; n2 < jb.n2(); ++n2) out(k1, k2) += f(n1, n2) * std::conj(phi(jb, n1, n2, k1, k2));
  return out;
}

// (T_{i1,i2} g)(n) from the window spectrum ghat.
inline Signal2D translate(const Signal2D& ghat, Index i1, Index i2, const JointBasis& jb) {
  const double scale = std::pow(big_n(jb), jb.alpha() / 2.0);
  Signal2D out = Signal2D::Zero(jb.n1(), jb.n2());
  for (Index n1 = 0; n1 < jb.n1(); ++n1)
    for (Index n2 = 0; n2 < jb.n2(); ++n2)
      for (Index p1 = 0; p1 < jb.n1(); ++p1)
        for (Index p2 = 0; p2 < jb.n2(); ++p2)
          out(n1, n2) += scale * ghat(p1, p2) * std::conj(phi(jb, i1, i2, p1, p2)) * phi(jb, n1, n2, p1, p2);
  return out;
}

inline Signal2D modulate(const Signal2D& g, Index k1, Index k2, const JointBasis& jb) {
  const double scale = std::pow(big_n(jb), jb.alpha() / 2.0);
  Signal2D out(jb.n1(), jb.n2());
  for (Index n1 = 0; n1 < jb.n1(); ++n1)
    for (Index n2 = 0; n2 < jb.n2(); ++n2) out(n1, n2) = scale * g(n1, n2) * phi(jb, n1, n2, k1, k2);
  return out;
}

inline Signal2D atom(const Signal2D& ghat, Index i1, Index i2, Index k1, Index k2, const JointBasis& jb) {
  return modulate(translate(ghat, i1, i2, jb), k1, k2, jb);
}

// <f, g> = sum f conj(g)
inline cplx inner(const Signal2D& f, const Signal2D& g) { return (f.array() * g.array().conjugate()).sum(); }

// W(i;k) by the scalar sum over n and p.
inline cplx coefficient(const Signal2D& f, const Signal2D& ghat, Index i1, Index i2, Index k1, Index k2,
                        const JointBasis& jb) {
  const double scale = std::pow(big_n(jb), jb.alpha());
  cplx total = 0;
  for (Index n1 = 0; n1 < jb.n1(); ++n1)
    for (Index n2 = 0; n2 < jb.n2(); ++n2) {
      cplx inner_sum = 0;
      for (Index p1 = 0; p1 < jb.n1(); ++p1)
        for (Index p2 = 0; p2 < jb.n2(); ++p2)
          inner_sum += std::conj(ghat(p1, p2)) * phi(jb, i1, i2, p1, p2) * std::conj(phi(jb, n1, n2, p1, p2));
      total += f(n1, n2) * std::conj(phi(jb, n1, n2, k1, k2)) * inner_sum;
    }
  return scale * total;
}

// Ftilde[k,k'] by the scalar definition (flattened indices).
inline cplx ftilde(const Signal2D& f, Index k, Index kp, const JointBasis& jb) {
  const Index n2 = jb.n2();
  cplx total = 0;
  for (Index a = 0; a < jb.n1(); ++a)
    for (Index b = 0; b < n2; ++b)
      total += f(a, b) * std::conj(phi(jb, a, b, k / n2, k % n2)) * std::conj(phi(jb, a, b, kp / n2, kp % n2));
  return total;
}

// D(n) = N^a sum_l ||T_n g_l||^2 from brute translations.
inline std::vector<double> frame_diagonal(const mwgfrft::WindowBank& bank, const JointBasis& jb) {
  const double scale = std::pow(big_n(jb), jb.alpha());
  std::vector<double> d;
  for (Index i1 = 0; i1 < jb.n1(); ++i1)
    for (Index i2 = 0; i2 < jb.n2(); ++i2) {
      double s = 0;
      for (Index l = 0; l < bank.count(); ++l) s += translate(bank.spectrum(l), i1, i2, jb).squaredNorm();
      d.push_back(scale * s);
    }
  return d;
}

// f(m) = (1/D(m)) sum_l sum_i sum_k W_l(i,k) atom_{l,i,k}(m), literally.
inline Signal2D inverse(const mwgfrft::CoefficientTensor& c, const mwgfrft::WindowBank& bank, const JointBasis& jb) {
  const Index n1 = jb.n1(), n2 = jb.n2();
  const auto d = frame_diagonal(bank, jb);
  Signal2D acc = Signal2D::Zero(n1, n2);
  for (Index l = 0; l < bank.count(); ++l) {
    const Signal2D ghat = bank.spectrum(l);
    for (Index i = 0; i < n1 * n2; ++i)
      for (Index k = 0; k < n1 * n2; ++k)
        acc += c.per_window[static_cast<std::size_t>(l)](i, k) * atom(ghat, i / n2, i % n2, k / n2, k % n2, jb);
  }
  for (Index a = 0; a < n1; ++a)
    for (Index b = 0; b < n2; ++b) acc(a, b) /= d[static_cast<std::size_t>(a * n2 + b)];
  return acc;
}

// Independent real-symmetric Jacobi eigenvalue sweep for small matrices.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a) {
  const Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) ev[static_cast<std::size_t>(k)] = a(k, k);
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline mwgfrft::Graph path(Index n) { return mwgfrft::build_graph(mwgfrft::GraphKind::path, {.n = n}); }

inline JointBasis path_grid(Index n1, Index n2, double alpha) {
  return mwgfrft::joint_basis(mwgfrft::fractional_basis(path(n1), alpha), mwgfrft::fractional_basis(path(n2), alpha));
}

}  // namespace oracle
