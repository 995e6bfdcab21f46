#include <cmath>
#include <numbers>

#include "test_support.hpp"

using namespace mwgfrft;

TEST(WindowBank, DefaultScalesHalve) {
  const auto t = default_taus(4);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0], 0.5);
  EXPECT_EQ(t[1], 0.25);
  EXPECT_EQ(t[2], 0.125);
  EXPECT_EQ(t[3], 0.0625);
}

TEST(WindowBank, HeatKernelIsProportionalToExponential) {
  const JointBasis jb = oracle::path_grid(4, 5, 0.7);
  const WindowBank bank = make_window_bank(WindowKind::heat, 1, jb, std::vector<double>{2.0});
  const Eigen::VectorXcd& s = bank.spectra[0];
  const cplx ratio = s(0) / std::exp(-2.0 * jb.joint_r(0));
  for (Index k = 0; k < jb.size(); ++k) EXPECT_NEAR(std::abs(s(k) - ratio * std::exp(-2.0 * jb.joint_r(k))), 0.0, 1e-14);
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(WindowBank, UnnormalizedGaussMatchesFormula) {
  const JointBasis jb = oracle::path_grid(3, 4, 0.5);
  const WindowBank bank = make_window_bank(WindowKind::gauss, 2, jb, std::vector<double>{0.3, 1.7}, false);
  EXPECT_FALSE(bank.normalized);
  for (Index k = 0; k < jb.size(); ++k) {
    const double lam = jb.joint_r(k);
    EXPECT_DOUBLE_EQ(bank.spectra[1](k).real(), std::exp(-1.7 * lam * lam) / std::sqrt(2 * std::numbers::pi));
  }
}

TEST(WindowBank, GaussWindowsHaveUnitNorm) {
  const JointBasis jb = oracle::path_grid(6, 7, 0.6);
  for (Index L : {1, 3, 6}) {
    const WindowBank bank = make_window_bank(WindowKind::gauss, L, jb);
    EXPECT_EQ(bank.count(), L);
    for (const auto& s : bank.spectra) EXPECT_NEAR(s.norm(), 1.0, 1e-10);
    EXPECT_TRUE(bank.dc_condition());
  }
}

TEST(WindowBank, ConstantKernelNormalizesToUniform) {
  std::vector<Eigen::VectorXcd> spectra{Eigen::VectorXcd::Constant(12, 3.5)};
  const WindowBank bank = custom_window_bank(spectra, 3, 4, true);
  for (Index k = 0; k < 12; ++k) EXPECT_NEAR(bank.spectra[0](k).real(), 1.0 / std::sqrt(12.0), 1e-15);
}

TEST(WindowBank, NormalizationIsIdempotent) {
  const JointBasis jb = oracle::path_grid(5, 5, 0.9);
  const WindowBank raw = make_window_bank(WindowKind::heat, 3, jb, std::nullopt, false);
  const WindowBank once = normalize(raw);
  const WindowBank twice = normalize(once);
  for (std::size_t l = 0; l < 3; ++l) EXPECT_TRUE(once.spectra[l] == twice.spectra[l]);
}

TEST(WindowBank, InvalidParameters) {
  const JointBasis jb = oracle::path_grid(3, 3, 0.5);
  expect_error(errc::invalid_parameter, [&] { make_window_bank(WindowKind::heat, 0, jb); });
  expect_error(errc::invalid_parameter, [&] { make_window_bank(WindowKind::heat, 2, jb, std::vector<double>{1.0, -1.0}); });
  expect_error(errc::invalid_parameter, [&] { make_window_bank(WindowKind::heat, 2, jb, std::vector<double>{1.0}); });
  expect_error(errc::shape_error, [] { custom_window_bank({Eigen::VectorXcd::Zero(5)}, 2, 3); });
}

TEST(WindowBank, DcConditionFlag) {
  Eigen::VectorXcd s = Eigen::VectorXcd::Ones(6);
  s(0) = 0.0;
  EXPECT_FALSE(custom_window_bank({s}, 2, 3).dc_condition());
  s(0) = 0.1;
  EXPECT_NEAR(custom_window_bank({s, s}, 2, 3).dc_energy(), 0.02, 1e-15);
}

TEST(Translate, SingleSpectralTerm) {
  const JointBasis jb = oracle::path_grid(3, 4, 0.7);
  Signal2D ghat = Signal2D::Zero(3, 4);
  ghat(0, 0) = 2.0;
  const Signal2D g = isgfrft2d(ghat, jb);
  const Signal2D t = translate_2d(g, 1, 2, jb);
  const double scale = std::pow(12.0, 0.35);
  for (Index n1 = 0; n1 < 3; ++n1)
    for (Index n2 = 0; n2 < 4; ++n2)
      EXPECT_LT(std::abs(t(n1, n2) - scale * 2.0 * std::conj(jb.phi(1 * 4 + 2, 0)) * jb.phi(n1 * 4 + n2, 0)), 1e-12);
}

TEST(Translate, MatchesBruteForceAndConvolutionForm) {
  const JointBasis jb = oracle::path_grid(4, 5, 0.7);
  const Signal2D g = random_signal(4, 5, 13, true);
  const Signal2D ghat = sgfrft2d(g, jb);
  const double scale = std::pow(20.0, 0.35);
  for (Index i1 = 0; i1 < 4; ++i1)
    for (Index i2 = 0; i2 < 5; ++i2) {
      const Signal2D t = translate_2d(g, i1, i2, jb);
      EXPECT_LT((t - oracle::translate(ghat, i1, i2, jb)).cwiseAbs().maxCoeff(), 1e-10);
      Signal2D delta = Signal2D::Zero(4, 5);
      delta(i1, i2) = 1.0;
      EXPECT_LT((t - scale * graph_convolution_2d(g, delta, jb)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Translate, SquaredNormClosedForm) {
  for (Index n : {3, 6}) {
    const JointBasis jb = oracle::path_grid(n, n, 0.6);
    const Signal2D g = random_signal(n, n, 21, true);
    const Eigen::VectorXcd ghat = flatten(sgfrft2d(g, jb));
    for (Index i = 0; i < jb.size(); ++i) {
      double closed = 0;
      for (Index p = 0; p < jb.size(); ++p) closed += std::norm(ghat(p)) * std::norm(jb.phi(i, p));
      closed *= std::pow(static_cast<double>(jb.size()), 0.6);
      const double brute = oracle::translate(unflatten(ghat, n, n), i / n, i % n, jb).squaredNorm();
      EXPECT_NEAR(translate_2d(g, i / n, i % n, jb).squaredNorm(), closed, 1e-9 * closed);
      EXPECT_NEAR(brute, closed, 1e-9 * closed);
    }
  }
}

TEST(Translate, OneDimensionalMatchesDefinition) {
  const FractionalBasis b = fractional_basis(build_graph(GraphKind::random_ring, {.n = 7, .seed = 1}), 0.4);
  const Eigen::VectorXcd g = flatten(random_signal(7, 1, 4, true));
  const Eigen::VectorXcd ghat = b.gamma.adjoint() * g;
  const Eigen::VectorXcd t = translate_1d(g, 3, b);
  for (Index n = 0; n < 7; ++n) {
    cplx v = 0;
    for (Index p = 0; p < 7; ++p) v += ghat(p) * std::conj(b.gamma(3, p)) * b.gamma(n, p);
    EXPECT_LT(std::abs(t(n) - std::pow(7.0, 0.2) * v), 1e-12);
  }
  expect_error(errc::index_error, [&] { translate_1d(g, 7, b); });
}

TEST(Modulate, ZeroStaysZero) {
  const JointBasis jb = oracle::path_grid(3, 3, 0.5);
  EXPECT_EQ(modulate_2d(Signal2D::Zero(3, 3), 1, 2, jb).norm(), 0.0);
}

TEST(Modulate, DcAtAlphaOneIsIdentity) {
  // The DC column of a connected graph is constant 1/sqrt(N).
  const JointBasis jb = oracle::path_grid(4, 6, 1.0);
  const Signal2D g = random_signal(4, 6, 5, true);
  EXPECT_LT((modulate_2d(g, 0, 0, jb) - g).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Modulate, ElementwiseMagnitude) {
  const JointBasis jb = oracle::path_grid(4, 5, 0.3);
  const Signal2D g = random_signal(4, 5, 8, true);
  const Signal2D m = modulate_2d(g, 2, 3, jb);
  for (Index a = 0; a < 4; ++a)
    for (Index b = 0; b < 5; ++b)
      EXPECT_NEAR(std::abs(m(a, b)), std::pow(20.0, 0.15) * std::abs(g(a, b)) * std::abs(jb.b1.gamma(a, 2) * jb.b2.gamma(b, 3)),
                  1e-12);
}

TEST(Modulate, IndexErrors) {
  const JointBasis jb = oracle::path_grid(3, 4, 0.5);
  const Signal2D g = Signal2D::Ones(3, 4);
  expect_error(errc::index_error, [&] { modulate_2d(g, 3, 0, jb); });
  expect_error(errc::index_error, [&] { modulate_2d(g, 0, -1, jb); });
  expect_error(errc::index_error, [&] { translate_2d(g, 0, 4, jb); });
  const FractionalBasis b = fractional_basis(oracle::path(3), 0.5);
  expect_error(errc::index_error, [&] { modulate_1d(Eigen::VectorXcd::Ones(3), 3, b); });
}

TEST(Atom, CompositionAndBruteForce) {
  const JointBasis jb = oracle::path_grid(3, 4, 0.7);
  const WindowBank bank = make_window_bank(WindowKind::gauss, 2, jb);
  const Atom a = atom_2d(bank, 1, 2, 1, 0, 3, jb);
  const Signal2D g = isgfrft2d(bank.spectrum(1), jb);
  EXPECT_LT((a.values - modulate_2d(translate_2d(g, 2, 1, jb), 0, 3, jb)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((a.values - oracle::atom(bank.spectrum(1), 2, 1, 0, 3, jb)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Atom, FamilySpansTheSignalSpace) {
  const JointBasis jb = oracle::path_grid(3, 4, 0.7);
  const WindowBank bank = make_window_bank(WindowKind::heat, 2, jb);
  Eigen::MatrixXcd family(12, 2 * 144);
  Index col = 0;
  for (Index l = 0; l < 2; ++l)
    for (Index i = 0; i < 12; ++i)
      for (Index k = 0; k < 12; ++k) family.col(col++) = flatten(atom_2d(bank, l, i / 4, i % 4, k / 4, k % 4, jb).values);
  EXPECT_EQ(col, 288);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(family);
  qr.setThreshold(1e-10);
  EXPECT_EQ(qr.rank(), 12);
}

TEST(Convolution, IdentitySpectrum) {
  const JointBasis jb = oracle::path_grid(4, 4, 0.8);
  const Signal2D f = random_signal(4, 4, 1, true);
  const Signal2D unit = isgfrft2d(Signal2D::Ones(4, 4), jb);
  EXPECT_LT(relative_error(graph_convolution_2d(f, unit, jb), f), 1e-10);
}

TEST(Convolution, CommutativeAndAssociative) {
  const JointBasis jb = oracle::path_grid(5, 4, 0.6);
  const Signal2D f = random_signal(5, 4, 1, true), g = random_signal(5, 4, 2, true), h = random_signal(5, 4, 3, true);
  EXPECT_LT(relative_error(graph_convolution_2d(f, g, jb), graph_convolution_2d(g, f, jb)), 1e-10);
  EXPECT_LT(relative_error(graph_convolution_2d(graph_convolution_2d(f, g, jb), h, jb),
                           graph_convolution_2d(f, graph_convolution_2d(g, h, jb), jb)),
            1e-9);
}

TEST(Convolution, ShapeMismatch) {
  const JointBasis jb = oracle::path_grid(3, 4, 0.5);
  expect_error(errc::shape_error, [&] { graph_convolution_2d(Signal2D::Ones(3, 4), Signal2D::Ones(4, 3), jb); });
}
