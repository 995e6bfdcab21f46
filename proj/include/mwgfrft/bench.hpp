#pragma once

// Scaling benchmark: direct vs fast 2D transform on random-ring products.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mwgfrft/fast_transform.hpp"
#include "mwgfrft/signals.hpp"

namespace mwgfrft {

struct BenchConfig {
  std::vector<Index> sizes;
  int reps = 3;
  double alpha = 0.7;
  Index windows = 4;
  WindowKind kernel = WindowKind::heat;
  std::uint64_t seed = 1;
  Index direct_cap = 512;
  Index eigen_cap = 4096;
};

struct BenchRow {
  Index n = 0;
  Index n1 = 0;
  Index n2 = 0;
  double eigen_seconds = 0.0;
  double fast_seconds = 0.0;
  std::optional<double> direct_seconds;
  int repetitions = 0;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of log-space residuals
  std::size_t points = 0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;
  std::optional<SlopeFit> fast_slope;
  std::optional<SlopeFit> direct_slope;
  std::optional<double> check_error;  // ||fast - direct|| / ||direct|| at the smallest size
  unsigned workers = 1;
  std::string build;
};

/// Least-squares line through (log x, log y); needs at least 4 points.
inline std::optional<SlopeFit> fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 4) return std::nullopt;
  const auto m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double lx = std::log(x[j]), ly = std::log(y[j]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  SlopeFit fit;
  fit.points = x.size();
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  double ss = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double r = std::log(y[j]) - (fit.intercept + fit.slope * std::log(x[j]));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

/// N = n1 * n2 with n2 the largest divisor not above sqrt(N).
inline std::pair<Index, Index> near_square_split(Index n) {
  detail::require(n >= 1, errc::invalid_parameter, "size must be positive");
  Index n2 = static_cast<Index>(std::sqrt(static_cast<double>(n)));
  while (n2 > 1 && n % n2 != 0) --n2;
  return {n / n2, n2};
}

inline std::string build_descriptor() {
  std::ostringstream os;
#if defined(__clang__)
  os << "clang " << __clang_major__ << '.' << __clang_minor__;
#elif defined(__GNUC__)
  os << "gcc " << __GNUC__ << '.' << __GNUC_MINOR__;
#else
  os << "unknown-compiler";
#endif
#ifdef NDEBUG
  os << ", optimized";
#else
  os << ", debug";
#endif
  os << ", Eigen " << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION;
  os << ", SIMD " << Eigen::SimdInstructionSetsInUse();
  return os.str();
}

namespace detail {

template <typename Fn>
double median_seconds(int reps, Fn&& fn) {
  using clock = std::chrono::steady_clock;
  fn();  // warm-up, discarded
  std::vector<double> t;
  for (int r = 0; r < reps; ++r) {
    const auto start = clock::now();
    fn();
    t.push_back(std::chrono::duration<double>(clock::now() - start).count());
  }
  std::sort(t.begin(), t.end());
  const std::size_t m = t.size() / 2;
  return t.size() % 2 ? t[m] : 0.5 * (t[m - 1] + t[m]);
}

}  // namespace detail

/// Times both transforms at every size on one worker. Eigendecomposition is
/// timed separately and excluded from the transform timings.
inline BenchReport run_scaling_benchmark(const BenchConfig& cfg,
                                         const std::function<void(const BenchRow&)>& on_row = {}) {
  detail::require(!cfg.sizes.empty(), errc::invalid_parameter, "no benchmark sizes given");
  detail::require(std::is_sorted(cfg.sizes.begin(), cfg.sizes.end()), errc::invalid_parameter,
                  "benchmark sizes must be ascending");
  detail::require(cfg.reps >= 3, errc::invalid_parameter, "at least 3 repetitions are required");
  BenchReport report;
  report.config = cfg;
  report.build = build_descriptor();
  const ExecOptions one{1};
  DirectOptions direct_opt;
  direct_opt.threads = 1;
  direct_opt.max_size = cfg.direct_cap;

  for (Index n : cfg.sizes) {
    if (n > cfg.eigen_cap)
      detail::fail(errc::invalid_parameter, "size " + std::to_string(n) + " exceeds the dense eigensolver cap " +
                                                std::to_string(cfg.eigen_cap));
    const auto [n1, n2] = near_square_split(n);
    if (n2 < 3)
      detail::fail(errc::invalid_parameter, "size " + std::to_string(n) + " has no factorization with both factors >= 3");
    GraphParams p1{.n = n1, .seed = cfg.seed};
    GraphParams p2{.n = n2, .seed = cfg.seed + 1};
    const Graph g1 = build_graph(GraphKind::random_ring, p1);
    const Graph g2 = build_graph(GraphKind::random_ring, p2);

    BenchRow row;
    row.n = n;
    row.n1 = n1;
    row.n2 = n2;
    row.repetitions = cfg.reps;
    const auto t0 = std::chrono::steady_clock::now();
    const JointBasis jb = joint_basis(fractional_basis(g1, cfg.alpha), fractional_basis(g2, cfg.alpha));
    row.eigen_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const WindowBank bank = make_window_bank(cfg.kernel, cfg.windows, jb);
    const Signal2D f = random_signal(n1, n2, cfg.seed + 2);

    row.fast_seconds = detail::median_seconds(cfg.reps, [&] { (void)f2d_mwgfrft(f, bank, jb, one); });
    if (n <= cfg.direct_cap) {
      row.direct_seconds = detail::median_seconds(cfg.reps, [&] { (void)mwgfrft_2d_direct(f, bank, jb, direct_opt); });
      if (!report.check_error) {
        const auto fast = f2d_mwgfrft(f, bank, jb, one);
        const auto direct = mwgfrft_2d_direct(f, bank, jb, direct_opt);
        double diff = 0, ref = 0;
        for (std::size_t l = 0; l < fast.per_window.size(); ++l) {
          diff += (fast.per_window[l] - direct.per_window[l]).squaredNorm();
          ref += direct.per_window[l].squaredNorm();
        }
        report.check_error = std::sqrt(diff / ref);
      }
    }
    report.rows.push_back(row);
    if (on_row) on_row(row);
  }

  std::vector<double> xf, yf, xd, yd;
  for (const auto& r : report.rows) {
    xf.push_back(static_cast<double>(r.n));
    yf.push_back(r.fast_seconds);
    if (r.direct_seconds) {
      xd.push_back(static_cast<double>(r.n));
      yd.push_back(*r.direct_seconds);
    }
  }
  report.fast_slope = fit_loglog_slope(xf, yf);
  report.direct_slope = fit_loglog_slope(xd, yd);
  return report;
}

inline std::string render_table(const BenchReport& report) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%8s %10s %12s %14s %14s %10s\n", "N", "N1xN2", "eigen [s]", "direct [s]",
                "fast [s]", "speedup");
  os << line;
  for (const auto& r : report.rows) {
    const std::string grid = std::to_string(r.n1) + "x" + std::to_string(r.n2);
    char direct[32] = "-", speedup[32] = "-";
    if (r.direct_seconds) {
      std::snprintf(direct, sizeof direct, "%.6f", *r.direct_seconds);
      std::snprintf(speedup, sizeof speedup, "%.1f", *r.direct_seconds / r.fast_seconds);
    }
    std::snprintf(line, sizeof line, "%8lld %10s %12.6f %14s %14.6f %10s\n", static_cast<long long>(r.n),
                  grid.c_str(), r.eigen_seconds, direct, r.fast_seconds, speedup);
    os << line;
  }
  auto slope = [&](const char* name, const std::optional<SlopeFit>& s) {
    if (s)
      std::snprintf(line, sizeof line, "%s slope %.3f (rms residual %.3f, %zu points)\n", name, s->slope, s->residual,
                    s->points);
    else
      std::snprintf(line, sizeof line, "%s slope n/a (fewer than 4 sizes)\n", name);
    os << line;
  };
  slope("fast", report.fast_slope);
  slope("direct", report.direct_slope);
  if (report.check_error) {
    std::snprintf(line, sizeof line, "fast vs direct relative error %.3e\n", *report.check_error);
    os << line;
  }
  os << "workers " << report.workers << ", " << report.build << '\n';
  return os.str();
}

}  // namespace mwgfrft
