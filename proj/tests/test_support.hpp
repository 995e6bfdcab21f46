#pragma once

#include <gtest/gtest.h>

#include "oracles.hpp"

template <typename Fn>
void expect_error(mwgfrft::errc code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << mwgfrft::to_string(code);
  } catch (const mwgfrft::error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

inline double spectral_norm(const Eigen::MatrixXcd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}
