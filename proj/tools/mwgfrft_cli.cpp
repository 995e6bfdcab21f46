// mwgfrft: command-line front end for the 2D multi-window graph fractional
// Fourier transform library.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mwgfrft/mwgfrft.hpp"

namespace fs = std::filesystem;
using namespace mwgfrft;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 10;
constexpr int kExitInternal = 11;

int exit_code(errc code) {
  switch (code) {
    case errc::io_error: return 2;
    case errc::format_error: return 3;
    case errc::invalid_parameter: return 4;
    case errc::invalid_graph: return 5;
    case errc::invalid_matrix: return 6;
    case errc::shape_error: return 7;
    case errc::index_error: return 8;
    case errc::frame_condition: return 9;
  }
  return kExitInternal;
}

const char* kExitCodes =
    "Exit codes:\n"
    "  0   success\n"
    "  1   usage error (bad flags or arguments)\n"
    "  2   io-error (file cannot be read or written)\n"
    "  3   format-error (malformed input file)\n"
    "  4   invalid-parameter\n"
    "  5   invalid-graph\n"
    "  6   invalid-matrix\n"
    "  7   shape-error\n"
    "  8   index-error\n"
    "  9   frame-condition-error\n"
    "  10  check failed (compare tolerance exceeded)\n"
    "  11  internal error\n";

// Inputs shared by the commands that need a product graph and window bank.
struct GridInputs {
  std::string graph1, graph2, paths;
  double alpha = 0.7;
  Index windows = 1;
  std::string kernel = "gauss";
  std::vector<double> taus;
  bool no_normalize = false;

  void add_graph_options(CLI::App* cmd) {
    cmd->add_option("--graph1", graph1, "First factor graph (JSON)");
    cmd->add_option("--graph2", graph2, "Second factor graph (JSON)");
    cmd->add_option("--paths", paths, "Use path factors instead of graph files, e.g. 12x10");
  }
  void add_bank_options(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "Fractional order in (0, 1]")->capture_default_str();
    cmd->add_option("--L", windows, "Number of windows")->capture_default_str();
    cmd->add_option("--kernel", kernel, "Window kernel: heat | gauss")->capture_default_str();
    cmd->add_option("--taus", taus, "Scale per window (default 0.5 * 2^-(l-1))")->delimiter(',');
    cmd->add_flag("--no-normalize", no_normalize, "Keep windows unnormalized");
  }

  std::pair<Graph, Graph> factors() const {
    if (!paths.empty()) {
      const auto x = paths.find('x');
      if (x == std::string::npos) detail::fail(errc::invalid_parameter, "--paths expects N1xN2");
      Index n1 = 0, n2 = 0;
      try {
        n1 = std::stoll(paths.substr(0, x));
        n2 = std::stoll(paths.substr(x + 1));
      } catch (const std::exception&) {
        detail::fail(errc::invalid_parameter, "--paths expects N1xN2");
      }
      return {build_graph(GraphKind::path, {.n = n1}), build_graph(GraphKind::path, {.n = n2})};
    }
    if (graph1.empty() || graph2.empty())
      detail::fail(errc::invalid_parameter, "give --graph1 and --graph2, or --paths N1xN2");
    return {io::load_graph(graph1), io::load_graph(graph2)};
  }
  JointBasis basis() const {
    auto [g1, g2] = factors();
    return joint_basis(fractional_basis(g1, alpha), fractional_basis(g2, alpha));
  }
  WindowBank bank(const JointBasis& jb) const {
    std::optional<std::vector<double>> t;
    if (!taus.empty()) t = taus;
    return make_window_bank(parse_window_kind(kernel), windows, jb, t, !no_normalize);
  }
};

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      detail::fail(errc::invalid_parameter, "cannot parse index '" + item + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::pair<Index, Index>> parse_pairs(const std::string& text) {
  std::vector<std::pair<Index, Index>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) detail::fail(errc::invalid_parameter, "pairs are written i1:i2, got '" + item + "'");
    const auto a = parse_index_list(item.substr(0, colon));
    const auto b = parse_index_list(item.substr(colon + 1));
    out.emplace_back(a.front(), b.front());
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// Applies config-file values to options not given on the command line.
void merge_config(const json& config, CLI::App& app, CLI::App* active) {
  if (!config.is_object()) detail::fail(errc::format_error, "config file must hold a JSON object");
  auto apply = [&](CLI::App* scope) {
    for (CLI::Option* opt : scope->get_options()) {
      const std::string name = opt->get_single_name();
      if (name.empty() || opt->count() > 0 || !config.contains(name)) continue;
      const json& v = config.at(name);
      if (v.is_boolean()) {
        if (!v.get<bool>()) continue;
        opt->add_result(std::string("true"));
      } else if (v.is_array()) {
        std::vector<std::string> items;
        for (const auto& e : v) items.push_back(e.is_string() ? e.get<std::string>() : e.dump());
        opt->add_result(items);
      } else {
        opt->add_result(v.is_string() ? v.get<std::string>() : v.dump());
      }
      opt->run_callback();
    }
  };
  apply(&app);
  if (active) apply(active);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-dimensional multi-window graph fractional Fourier transform tools"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string config_path;
  app.add_option("--threads", threads, "Worker threads for the transforms (bench always uses 1)")
      ->capture_default_str();
  app.add_option("--config", config_path, "JSON file of option values; command-line flags take precedence");

  // gen-graph
  auto* gen_graph = app.add_subcommand("gen-graph", "Generate a factor graph");
  std::string kind = "path", graph_out;
  GraphParams gp;
  std::optional<std::uint64_t> seed;
  gen_graph->add_option("--kind", kind, "path | cycle | random-ring | community | sensor")->capture_default_str();
  gen_graph->add_option("--n", gp.n, "Vertex count")->required();
  gen_graph->add_option("--seed", seed, "Seed (required for random kinds)");
  gen_graph->add_option("--chords", gp.chords, "random-ring: chord count (default n/4)");
  gen_graph->add_option("--blocks", gp.blocks, "community: block count");
  gen_graph->add_option("--p-in", gp.p_in, "community: intra-block probability")->capture_default_str();
  gen_graph->add_option("--p-out", gp.p_out, "community: inter-block probability")->capture_default_str();
  gen_graph->add_option("--radius", gp.radius, "sensor: connection radius");
  gen_graph->add_option("--sigma", gp.sigma, "sensor: Gaussian weight width");
  gen_graph->add_option("--out", graph_out, "Output graph JSON")->required();

  // gen-signal
  auto* gen_signal = app.add_subcommand("gen-signal", "Generate a 2D signal CSV");
  Index sig_n1 = 0, sig_n2 = 0;
  std::string sig_impulses, sig_pairs, sig_scenario, sig_out;
  bool sig_random = false, sig_complex = false;
  double sig_background = 0.0;
  gen_signal->add_option("--n1", sig_n1, "Rows (first factor size)");
  gen_signal->add_option("--n2", sig_n2, "Columns (second factor size)");
  gen_signal->add_option("--impulses", sig_impulses, "Unit impulses at 1-based flat indices, e.g. 27,28,29");
  gen_signal->add_option("--pairs", sig_pairs, "Unit impulses at 1-based pairs, e.g. 5:4,7:11");
  gen_signal->add_flag("--random", sig_random, "Uniform random entries in [-1, 1) (needs --seed)");
  gen_signal->add_flag("--complex", sig_complex, "Random entries get random imaginary parts too");
  gen_signal->add_option("--seed", seed, "Seed for --random");
  gen_signal->add_option("--background", sig_background, "Add a smooth cosine background of this amplitude");
  gen_signal->add_option("--scenario", sig_scenario, "Preset signal: anomaly (12x12, background + six impulses)");
  gen_signal->add_option("--out", sig_out, "Output CSV")->required();

  // transform
  auto* transform = app.add_subcommand("transform", "Compute the coefficient tensor");
  GridInputs grid;
  std::string signal_path, method = "fast", coef_out, format = "json", spec_out, mode = "aggregated";
  Index direct_cap = 1024;
  grid.add_graph_options(transform);
  grid.add_bank_options(transform);
  transform->add_option("--signal", signal_path, "Input signal CSV")->required();
  transform->add_option("--method", method, "fast | direct")->capture_default_str();
  transform->add_option("--out", coef_out, "Coefficient file");
  transform->add_option("--format", format, "json | binary")->capture_default_str();
  transform->add_option("--spectrogram", spec_out, "Also write the spectrogram CSV here");
  transform->add_option("--mode", mode, "Spectrogram mode: aggregated | per-window-max")->capture_default_str();
  transform->add_option("--direct-cap", direct_cap, "Largest N accepted by the direct method")->capture_default_str();

  // inverse
  auto* inverse = app.add_subcommand("inverse", "Reconstruct a signal from coefficients");
  std::string coef_in, inv_out, reference;
  inverse->add_option("--graph1", grid.graph1, "First factor graph (JSON)");
  inverse->add_option("--graph2", grid.graph2, "Second factor graph (JSON)");
  inverse->add_option("--paths", grid.paths, "Use path factors, e.g. 12x10");
  inverse->add_option("--coefficients", coef_in, "Coefficient file (JSON or binary)")->required();
  inverse->add_option("--out", inv_out, "Output signal CSV");
  inverse->add_option("--reference", reference, "Signal CSV to report the relative error against");

  // frame-bounds
  auto* frame = app.add_subcommand("frame-bounds", "Frame bounds A, B and the per-vertex diagonal");
  std::string frame_out;
  grid.add_graph_options(frame);
  grid.add_bank_options(frame);
  frame->add_option("--out", frame_out, "Write the JSON report here instead of stdout");

  // detect
  auto* detect = app.add_subcommand("detect", "Threshold anomaly detection on a spectrogram");
  std::string det_coef, det_spec, det_out;
  double ratio = 0.5;
  Index det_n1 = 0, det_n2 = 0;
  detect->add_option("--coefficients", det_coef, "Coefficient file");
  detect->add_option("--spectrogram", det_spec, "Spectrogram CSV (needs --n1 and --n2)");
  detect->add_option("--n1", det_n1, "Grid rows for --spectrogram");
  detect->add_option("--n2", det_n2, "Grid columns for --spectrogram");
  detect->add_option("--mode", mode, "Spectrogram mode for --coefficients")->capture_default_str();
  detect->add_option("--ratio", ratio, "Threshold as a fraction of the largest score")->capture_default_str();
  detect->add_option("--out", det_out, "Detection report JSON (stdout if omitted)");

  // bench
  auto* bench = app.add_subcommand("bench", "Scaling benchmark of the direct and fast transforms");
  BenchConfig bc;
  std::string bench_kernel = "heat", bench_out;
  bc.sizes = {32, 64, 128, 256, 512, 1024};
  bench->add_option("--sizes", bc.sizes, "Total vertex counts, ascending")->delimiter(',')->capture_default_str();
  bench->add_option("--reps", bc.reps, "Timed repetitions per size (median reported)")->capture_default_str();
  bench->add_option("--alpha", bc.alpha, "Fractional order")->capture_default_str();
  bench->add_option("--L", bc.windows, "Number of windows")->capture_default_str();
  bench->add_option("--kernel", bench_kernel, "heat | gauss")->capture_default_str();
  bench->add_option("--seed", seed, "Seed for graphs and signals (required)");
  bench->add_option("--direct-cap", bc.direct_cap, "Largest N timed on the direct path")->capture_default_str();
  bench->add_option("--out", bench_out, "Report JSON");

  // export-plot-data
  auto* plot = app.add_subcommand("export-plot-data", "Write the file bundle consumed by the plotting script");
  std::string plot_dir, plot_signal, plot_scenario;
  grid.add_graph_options(plot);
  grid.add_bank_options(plot);
  plot->add_option("--signal", plot_signal, "Input signal CSV");
  plot->add_option("--scenario", plot_scenario, "Preset: anomaly (12x12 paths, alpha 0.7, gauss L=5)");
  plot->add_option("--mode", mode, "Spectrogram mode")->capture_default_str();
  plot->add_option("--ratio", ratio, "Detection threshold ratio")->capture_default_str();
  plot->add_option("--dir", plot_dir, "Output directory")->required();

  // compare
  auto* compare = app.add_subcommand("compare", "Relative difference of two coefficient files");
  std::string cmp_a, cmp_b;
  double tol = 1e-8;
  compare->add_option("a", cmp_a, "First coefficient file")->required();
  compare->add_option("b", cmp_b, "Second coefficient file")->required();
  compare->add_option("--tol", tol, "Fail (exit 10) above this relative Frobenius error")->capture_default_str();

  // export-basis
  auto* basis = app.add_subcommand("export-basis", "Write gamma and R of one graph as JSON");
  std::string basis_graph, basis_out;
  double basis_alpha = 0.7;
  basis->add_option("--graph", basis_graph, "Graph JSON")->required();
  basis->add_option("--alpha", basis_alpha, "Fractional order")->capture_default_str();
  basis->add_option("--out", basis_out, "Output JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      CLI::App* active = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
      merge_config(io::read_json(config_path), app, active);
    }
    const ExecOptions exec{threads};

    if (gen_graph->parsed()) {
      gp.seed = seed;
      const GraphKind k = parse_graph_kind(kind);
      io::save_graph(graph_out, build_graph(k, gp));
    } else if (gen_signal->parsed()) {
      Signal2D f;
      if (sig_scenario == "anomaly") {
        f = anomaly_scenario();
      } else {
        if (!sig_scenario.empty()) detail::fail(errc::invalid_parameter, "unknown scenario '" + sig_scenario + "'");
        if (sig_n1 < 1 || sig_n2 < 1) detail::fail(errc::invalid_parameter, "--n1 and --n2 must be positive");
        f = Signal2D::Zero(sig_n1, sig_n2);
        if (sig_random) {
          if (!seed) detail::fail(errc::invalid_parameter, "--random requires --seed");
          f += random_signal(sig_n1, sig_n2, *seed, sig_complex);
        }
        if (!sig_impulses.empty()) f += impulses(sig_n1, sig_n2, parse_index_list(sig_impulses));
        if (!sig_pairs.empty()) f += impulses(sig_n1, sig_n2, parse_pairs(sig_pairs));
        if (sig_background != 0.0) f += smooth_background(sig_n1, sig_n2, sig_background);
      }
      io::save_signal(sig_out, f);
    } else if (transform->parsed()) {
      const JointBasis jb = grid.basis();
      const WindowBank bank = grid.bank(jb);
      const Signal2D f = io::load_signal(signal_path);
      CoefficientTensor c;
      if (method == "fast") {
        c = f2d_mwgfrft(f, bank, jb, exec);
      } else if (method == "direct") {
        DirectOptions opt;
        opt.threads = threads;
        opt.max_size = direct_cap;
        c = mwgfrft_2d_direct(f, bank, jb, opt);
      } else {
        detail::fail(errc::invalid_parameter, "unknown method '" + method + "'");
      }
      if (!coef_out.empty()) {
        if (format != "json" && format != "binary") detail::fail(errc::invalid_parameter, "unknown format '" + format + "'");
        io::save_coefficients(coef_out, c, format == "json" ? io::CoefficientFormat::json : io::CoefficientFormat::binary);
      }
      if (!spec_out.empty()) io::save_spectrogram(spec_out, spectrogram(c, parse_spectrogram_mode(mode)));
    } else if (inverse->parsed()) {
      const CoefficientTensor c = io::load_coefficients(coef_in);
      grid.alpha = c.meta.alpha;
      const JointBasis jb = grid.basis();
      if (c.meta.kind == WindowKind::custom)
        detail::fail(errc::invalid_parameter, "coefficients from a custom bank cannot be inverted from file");
      const WindowBank bank = make_window_bank(c.meta.kind, c.count(), jb, c.meta.taus, c.meta.normalized);
      const Signal2D f = inverse_mwgfrft_2d(c, bank, jb);
      if (!inv_out.empty()) io::save_signal(inv_out, f);
      if (!reference.empty()) {
        const Signal2D ref = io::load_signal(reference);
        if (ref.rows() != f.rows() || ref.cols() != f.cols())
          detail::fail(errc::shape_error, "reference signal has a different shape");
        std::printf("relative_error %.6e\n", relative_error(f, ref));
      }
    } else if (frame->parsed()) {
      const JointBasis jb = grid.basis();
      const FrameBounds fb = frame_bounds(grid.bank(jb), jb);
      const json report{{"A", fb.A},
                        {"B", fb.B},
                        {"per_vertex", std::vector<double>(fb.per_vertex.data(), fb.per_vertex.data() + fb.per_vertex.size())}};
      if (frame_out.empty()) print_json(report);
      else io::write_json(frame_out, report);
    } else if (detect->parsed()) {
      Spectrogram s;
      Index n1 = det_n1, n2 = det_n2;
      if (!det_coef.empty()) {
        const CoefficientTensor c = io::load_coefficients(det_coef);
        s = spectrogram(c, parse_spectrogram_mode(mode));
        n1 = c.meta.n1;
        n2 = c.meta.n2;
      } else if (!det_spec.empty()) {
        s = io::load_spectrogram(det_spec);
      } else {
        detail::fail(errc::invalid_parameter, "give --coefficients or --spectrogram");
      }
      const json report = io::detection_to_json(detect_anomalies(s, n1, n2, ratio));
      if (det_out.empty()) print_json(report);
      else io::write_json(det_out, report);
    } else if (bench->parsed()) {
      if (!seed) detail::fail(errc::invalid_parameter, "bench requires --seed");
      bc.seed = *seed;
      bc.kernel = parse_window_kind(bench_kernel);
      const BenchReport report = run_scaling_benchmark(bc, [](const BenchRow& row) {
        std::fprintf(stderr, "N=%lld done\n", static_cast<long long>(row.n));
      });
      std::cout << render_table(report);
      if (!bench_out.empty()) io::write_json(bench_out, io::bench_to_json(report));
    } else if (plot->parsed()) {
      Signal2D f;
      if (plot_scenario == "anomaly") {
        grid.paths = "12x12";
        grid.alpha = 0.7;
        grid.windows = 5;
        grid.kernel = "gauss";
        f = anomaly_scenario();
      } else {
        if (!plot_scenario.empty()) detail::fail(errc::invalid_parameter, "unknown scenario '" + plot_scenario + "'");
        if (plot_signal.empty()) detail::fail(errc::invalid_parameter, "give --signal or --scenario");
        f = io::load_signal(plot_signal);
      }
      const auto [g1, g2] = grid.factors();
      const JointBasis jb = joint_basis(fractional_basis(g1, grid.alpha), fractional_basis(g2, grid.alpha));
      const CoefficientTensor c = f2d_mwgfrft(f, grid.bank(jb), jb, exec);
      const Spectrogram s = spectrogram(c, parse_spectrogram_mode(mode));
      const DetectionResult d = detect_anomalies(s, jb.n1(), jb.n2(), ratio);

      const fs::path dir(plot_dir);
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) detail::fail(errc::io_error, "cannot create '" + dir.string() + "': " + ec.message());
      io::save_graph(dir / "graph.json", product_as_graph(cartesian_product(g1, g2)));
      io::save_signal(dir / "signal.csv", f);
      io::save_spectrogram(dir / "spectrogram.csv", s);
      io::write_json(dir / "detection.json", io::detection_to_json(d));
      io::write_json(dir / "bundle.json", json{{"spectrogram", "spectrogram.csv"},
                                               {"graph", "graph.json"},
                                               {"signal", "signal.csv"},
                                               {"detection", "detection.json"},
                                               {"n1", jb.n1()},
                                               {"n2", jb.n2()},
                                               {"alpha", grid.alpha},
                                               {"mode", std::string(to_string(parse_spectrogram_mode(mode)))}});
    } else if (compare->parsed()) {
      const CoefficientTensor a = io::load_coefficients(cmp_a);
      const CoefficientTensor b = io::load_coefficients(cmp_b);
      if (a.meta.n1 != b.meta.n1 || a.meta.n2 != b.meta.n2 || a.count() != b.count())
        detail::fail(errc::shape_error, "coefficient files have different shapes");
      double diff = 0, ref = 0;
      for (std::size_t l = 0; l < a.per_window.size(); ++l) {
        diff += (a.per_window[l] - b.per_window[l]).squaredNorm();
        ref += b.per_window[l].squaredNorm();
      }
      const double rel = ref > 0 ? std::sqrt(diff / ref) : std::sqrt(diff);
      std::printf("relative_error %.6e\n", rel);
      if (!(rel <= tol)) {
        std::fprintf(stderr, "check failed: relative error %.3e exceeds %.3e\n", rel, tol);
        return kExitCheckFailed;
      }
    } else if (basis->parsed()) {
      io::write_json(basis_out, io::basis_to_json(fractional_basis(io::load_graph(basis_graph), basis_alpha)));
    }
  } catch (const mwgfrft::error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return exit_code(e.code());
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "usage: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitOk;
}
