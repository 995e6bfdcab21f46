#pragma once

// Laplacian eigensystems, fractional bases gamma = chi^alpha and the 1D / 2D
// spectral graph fractional Fourier transforms.

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mwgfrft/graph.hpp"

namespace mwgfrft {

struct EigenSystem {
  Eigen::MatrixXd chi;     // orthonormal eigenvectors, one per column
  Eigen::VectorXd lambda;  // ascending
};

struct FractionalBasis {
  double alpha = 1.0;
  Eigen::MatrixXcd gamma;  // chi^alpha, unitary
  Eigen::VectorXd r;       // lambda^alpha, with 0^alpha = 0
  EigenSystem source;

  Index size() const { return gamma.rows(); }
};

/// Joint basis of a Cartesian product: column k1 * N2 + k2 of phi is
/// gamma1[:, k1] (x) gamma2[:, k2], with eigenvalue r1[k1] + r2[k2].
struct JointBasis {
  FractionalBasis b1;
  FractionalBasis b2;
  Eigen::MatrixXcd phi;
  Eigen::VectorXd joint_r;

  Index n1() const { return b1.size(); }
  Index n2() const { return b2.size(); }
  Index size() const { return phi.rows(); }
  double alpha() const { return b1.alpha; }
};

namespace detail {

// Flip each column so its largest-magnitude entry is nonnegative. Entries
// within a relative 1e-9 of the maximum count as tied; the lowest index wins,
// which keeps the choice stable under round-off (path eigenvectors have
// exactly mirrored extremes).
inline void fix_signs(Eigen::MatrixXd& chi) {
  for (Index j = 0; j < chi.cols(); ++j) {
    const double peak = chi.col(j).cwiseAbs().maxCoeff();
    for (Index i = 0; i < chi.rows(); ++i) {
      if (std::abs(chi(i, j)) >= peak * (1.0 - 1e-9)) {
        if (chi(i, j) < 0.0) chi.col(j) = -chi.col(j);
        break;
      }
    }
  }
}

inline double clamped_power(double lambda, double alpha) {
  if (lambda < 0.0 && lambda >= -1e-10) lambda = 0.0;
  return lambda == 0.0 ? 0.0 : std::pow(lambda, alpha);
}

}  // namespace detail

/// Symmetric eigendecomposition with ascending eigenvalues and the sign
/// convention of detail::fix_signs.
inline EigenSystem eigendecompose(const Eigen::MatrixXd& L) {
  detail::require(L.rows() == L.cols() && L.rows() > 0, errc::invalid_matrix, "matrix must be square and nonempty");
  const double scale = std::max(1.0, L.cwiseAbs().maxCoeff());
  if ((L - L.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    detail::fail(errc::invalid_matrix, "matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
  if (solver.info() != Eigen::Success) detail::fail(errc::invalid_matrix, "eigensolver did not converge");
  EigenSystem es{solver.eigenvectors(), solver.eigenvalues()};
  if (es.lambda(0) < -1e-8 * scale) detail::fail(errc::invalid_matrix, "matrix is not positive semidefinite");
  detail::fix_signs(es.chi);
  return es;
}

inline EigenSystem eigendecompose(const LaplacianSystem& sys) { return eigendecompose(sys.L); }

/// Principal-branch power of a real orthogonal matrix by complex Schur:
/// Q = U T U^H with T diagonal up to round-off, Q^alpha = U e^{i alpha theta} U^H.
inline Eigen::MatrixXcd orthogonal_power(const Eigen::MatrixXd& q, double alpha) {
  if (alpha == 1.0) return q.cast<cplx>();
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(q.cast<cplx>());
  if (schur.info() != Eigen::Success) detail::fail(errc::invalid_matrix, "Schur decomposition did not converge");
  const Eigen::MatrixXcd& u = schur.matrixU();
  Eigen::VectorXcd phase(q.rows());
  for (Index j = 0; j < q.rows(); ++j) {
    double theta = std::arg(schur.matrixT()(j, j));
    if (theta <= -std::numbers::pi + 1e-9) theta = std::numbers::pi;
    phase(j) = std::polar(1.0, alpha * theta);
  }
  return u * phase.asDiagonal() * u.adjoint();
}

inline FractionalBasis fractional_basis(const EigenSystem& es, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) detail::fail(errc::invalid_parameter, "alpha must lie in (0, 1]");
  FractionalBasis b;
  b.alpha = alpha;
  b.source = es;
  b.gamma = orthogonal_power(es.chi, alpha);
  b.r.resize(es.lambda.size());
  for (Index k = 0; k < es.lambda.size(); ++k) b.r(k) = detail::clamped_power(es.lambda(k), alpha);
  return b;
}

inline FractionalBasis fractional_basis(const Graph& g, double alpha) {
  return fractional_basis(eigendecompose(laplacian(g)), alpha);
}

inline JointBasis joint_basis(const FractionalBasis& b1, const FractionalBasis& b2) {
  detail::require(b1.alpha == b2.alpha, errc::invalid_parameter, "factor bases must share alpha");
  JointBasis jb;
  jb.b1 = b1;
  jb.b2 = b2;
  jb.phi = kron(b1.gamma, b2.gamma);
  jb.joint_r.resize(b1.size() * b2.size());
  for (Index a = 0; a < b1.size(); ++a)
    for (Index b = 0; b < b2.size(); ++b) jb.joint_r(a * b2.size() + b) = b1.r(a) + b2.r(b);
  return jb;
}

inline JointBasis joint_basis(const ProductGraph& pg, double alpha) {
  return joint_basis(fractional_basis(pg.factor1, alpha), fractional_basis(pg.factor2, alpha));
}

/// gamma R gamma^H, the fractional operator diagonalized by the basis.
inline Eigen::MatrixXcd fractional_operator(const FractionalBasis& b) {
  return b.gamma * b.r.cast<cplx>().asDiagonal() * b.gamma.adjoint();
}

inline Eigen::VectorXcd sgfrft(const Eigen::VectorXcd& f, const FractionalBasis& b) {
  if (f.size() != b.size()) detail::fail(errc::shape_error, "signal length does not match the basis");
  return b.gamma.adjoint() * f;
}

inline Eigen::VectorXcd isgfrft(const Eigen::VectorXcd& fhat, const FractionalBasis& b) {
  if (fhat.size() != b.size()) detail::fail(errc::shape_error, "spectrum length does not match the basis");
  return b.gamma * fhat;
}

namespace detail {
inline void require_grid(const Signal2D& f, const JointBasis& jb) {
  if (f.rows() != jb.n1() || f.cols() != jb.n2())
    fail(errc::shape_error, "signal is " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                                " but the basis is " + std::to_string(jb.n1()) + "x" + std::to_string(jb.n2()));
}
}  // namespace detail

/// fhat = gamma1^H f conj(gamma2).
inline Signal2D sgfrft2d(const Signal2D& f, const JointBasis& jb) {
  detail::require_grid(f, jb);
  return jb.b1.gamma.adjoint() * f * jb.b2.gamma.conjugate();
}

/// f = gamma1 fhat gamma2^T.
inline Signal2D isgfrft2d(const Signal2D& fhat, const JointBasis& jb) {
  detail::require_grid(fhat, jb);
  return jb.b1.gamma * fhat * jb.b2.gamma.transpose();
}

/// isgfrft2d(kernel(joint_r) .* sgfrft2d(f)); kernel maps a joint eigenvalue
/// to a real or complex gain.
template <typename Kernel>
Signal2D spectral_filter_2d(const Signal2D& f, Kernel&& kernel, const JointBasis& jb) {
  Signal2D fhat = sgfrft2d(f, jb);
  for (Index a = 0; a < jb.n1(); ++a)
    for (Index b = 0; b < jb.n2(); ++b) fhat(a, b) *= kernel(jb.joint_r(a * jb.n2() + b));
  return isgfrft2d(fhat, jb);
}

/// 1D SGFRFT of the flattened signal against the product graph's own basis.
struct ProductSpectrum {
  Eigen::VectorXd lambda;  // eigenvalues of the flattened product Laplacian
  Eigen::VectorXd r;       // their fractional powers
  Eigen::VectorXcd coefficients;
};

inline ProductSpectrum spectrum_1d_of_product(const Signal2D& f, const FractionalBasis& product_basis) {
  if (f.size() != product_basis.size()) detail::fail(errc::shape_error, "signal size does not match the product basis");
  return {product_basis.source.lambda, product_basis.r, sgfrft(flatten(f), product_basis)};
}

}  // namespace mwgfrft
