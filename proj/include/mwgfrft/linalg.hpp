#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "mwgfrft/error.hpp"

namespace mwgfrft {

using Index = Eigen::Index;
using cplx = std::complex<double>;

/// A two-dimensional graph signal f(n1, n2): N1 rows, N2 columns.
using Signal2D = Eigen::MatrixXcd;

/// Row-major flattening of an N1 x N2 grid (the second coordinate varies
/// fastest), matching the column ordering of gamma1 (x) gamma2.
inline Eigen::VectorXcd flatten(const Signal2D& f) {
  Eigen::VectorXcd out(f.size());
  const Index n2 = f.cols();
  for (Index a = 0; a < f.rows(); ++a)
    for (Index b = 0; b < n2; ++b) out(a * n2 + b) = f(a, b);
  return out;
}

template <typename Vec>
Eigen::Matrix<typename Vec::Scalar, Eigen::Dynamic, Eigen::Dynamic> unflatten(const Vec& v, Index n1,
                                                                               Index n2) {
  detail::require(v.size() == n1 * n2, errc::shape_error, "vector length does not match the grid");
  Eigen::Matrix<typename Vec::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n1, n2);
  for (Index a = 0; a < n1; ++a)
    for (Index b = 0; b < n2; ++b) out(a, b) = v(a * n2 + b);
  return out;
}

/// Kronecker product A (x) B.
template <typename A, typename B>
auto kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename A::Scalar, typename B::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// ||a - b||_F / ||b||_F, or the absolute difference when b is zero.
template <typename A, typename B>
double relative_error(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  const double denom = b.norm();
  const double diff = (a - b).norm();
  return denom > 0.0 ? diff / denom : diff;
}

/// Execution knobs shared by the transforms. Work is split in contiguous
/// blocks; every output element is computed by the same code path whatever
/// the thread count, so results are bitwise independent of it.
struct ExecOptions {
  unsigned threads = 1;
};

namespace detail {

template <typename Fn>
void parallel_for(Index count, unsigned threads, Fn&& fn) {
  const auto workers = static_cast<Index>(std::max(1u, threads));
  if (workers == 1 || count < 2) {
    for (Index i = 0; i < count; ++i) fn(i);
    return;
  }
  const Index used = std::min(workers, count);
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(used));
  for (Index w = 0; w < used; ++w) {
    const Index begin = count * w / used;
    const Index end = count * (w + 1) / used;
    pool.emplace_back([begin, end, &fn] {
      for (Index i = begin; i < end; ++i) fn(i);
    });
  }
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw; keeps
/// seeded generators identical across standard library implementations.
template <typename Engine>
double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace detail
}  // namespace mwgfrft
