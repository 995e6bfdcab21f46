#pragma once

// Fast 2D multi-window transform, O(L N^3):
//   Ftilde = phi^H diag(f) conj(phi)
//   Theta_l = N^a diag(conj(g_l)) Ftilde
//   W_l = phi Theta_l

#include <cmath>
#include <vector>

#include "mwgfrft/transforms.hpp"

namespace mwgfrft {

struct AuxiliaryKernel {
  Index n1 = 0;
  Index n2 = 0;
  Eigen::MatrixXcd ftilde;  // Ftilde[k,k'] = sum_n f(n) conj(phi[n,k]) conj(phi[n,k'])
};

struct ThetaField {
  std::vector<Eigen::MatrixXcd> per_window;
  Eigen::MatrixXcd aggregated;
};

inline AuxiliaryKernel auxiliary_kernel(const Signal2D& f, const JointBasis& jb) {
  detail::require_grid(f, jb);
  const Eigen::MatrixXcd scaled = flatten(f).asDiagonal() * jb.phi.conjugate();
  Eigen::MatrixXcd m = jb.phi.adjoint() * scaled;
  // The product is symmetric in exact arithmetic; averaging with the
  // transpose makes it symmetric bit for bit.
  m = (0.5 * (m + m.transpose())).eval();
  return {jb.n1(), jb.n2(), std::move(m)};
}

namespace detail {
inline Eigen::MatrixXcd theta(const AuxiliaryKernel& aux, const Eigen::VectorXcd& g, double scale) {
  return (scale * g.conjugate()).asDiagonal() * aux.ftilde;
}
inline void require_aux(const AuxiliaryKernel& aux, const WindowBank& bank) {
  require_bank(bank, aux.n1, aux.n2);
}
}  // namespace detail

inline ThetaField theta_field(const AuxiliaryKernel& aux, const WindowBank& bank, double alpha) {
  detail::require_aux(aux, bank);
  const double scale = std::pow(static_cast<double>(aux.ftilde.rows()), alpha);
  ThetaField out;
  for (const auto& g : bank.spectra) out.per_window.push_back(detail::theta(aux, g, scale));
  out.aggregated = detail::aggregate(out.per_window);
  return out;
}

/// Full tensor. Windows may run on separate threads; each window's matrix is
/// produced by the same sequence of operations regardless, and the aggregate
/// is summed afterwards in ascending window order.
inline CoefficientTensor f2d_mwgfrft(const Signal2D& f, const WindowBank& bank, const JointBasis& jb,
                                     const ExecOptions& opt = {}) {
  detail::require_bank(bank, jb.n1(), jb.n2());
  const AuxiliaryKernel aux = auxiliary_kernel(f, jb);
  const double scale = std::pow(static_cast<double>(jb.size()), jb.alpha());
  CoefficientTensor out;
  out.meta = detail::meta_for(bank, jb.alpha(), "fast");
  out.per_window.resize(bank.spectra.size());
  detail::parallel_for(bank.count(), opt.threads, [&](Index l) {
    const auto idx = static_cast<std::size_t>(l);
    out.per_window[idx] = jb.phi * detail::theta(aux, bank.spectra[idx], scale);
  });
  out.aggregated = detail::aggregate(out.per_window);
  return out;
}

/// Aggregated coefficients only: phi * sum_l Theta_l, one N^3 product.
inline Eigen::MatrixXcd f2d_mwgfrft_aggregated(const Signal2D& f, const WindowBank& bank, const JointBasis& jb) {
  detail::require_bank(bank, jb.n1(), jb.n2());
  return jb.phi * theta_field(auxiliary_kernel(f, jb), bank, jb.alpha()).aggregated;
}

}  // namespace mwgfrft
