#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "mwgfrft/mwgfrft.hpp"

namespace fs = std::filesystem;
using namespace mwgfrft;
using json = io::json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mwgfrft_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Runs the CLI; stdout is captured into out_.
  int run(const std::string& args) {
    const std::string cmd = std::string("\"") + MWGFRFT_CLI_PATH + "\" " + args + " > \"" + path("stdout.txt") +
                            "\" 2> \"" + path("stderr.txt") + "\"";
    const int status = std::system(cmd.c_str());
    out_ = io::read_text(path("stdout.txt"));
    err_ = io::read_text(path("stderr.txt"));
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
  std::string out_, err_;
};

double reported_error(const std::string& out) {
  std::istringstream is(out);
  std::string key;
  double v = -1;
  is >> key >> v;
  EXPECT_EQ(key, "relative_error");
  return v;
}

}  // namespace

TEST_F(Cli, GeneratedGraphsAreByteIdentical) {
  ASSERT_EQ(run("gen-graph --kind random-ring --n 20 --seed 7 --out " + path("a.json")), 0) << err_;
  ASSERT_EQ(run("gen-graph --kind random-ring --n 20 --seed 7 --out " + path("b.json")), 0) << err_;
  EXPECT_EQ(io::read_text(path("a.json")), io::read_text(path("b.json")));
  EXPECT_EQ(io::load_graph(path("a.json")).adjacency,
            build_graph(GraphKind::random_ring, {.n = 20, .seed = 7}).adjacency);
}

TEST_F(Cli, MissingSeedIsInvalidParameter) {
  EXPECT_EQ(run("gen-graph --kind community --n 30 --out " + path("g.json")), 4);
  EXPECT_NE(err_.find("seed"), std::string::npos);
  EXPECT_EQ(run("bench --sizes 16,25,36,49"), 4);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("gen-graph --kind path"), 1);
  EXPECT_EQ(run("no-such-command"), 1);
  EXPECT_EQ(run("--help"), 0);
  EXPECT_NE(out_.find("Exit codes"), std::string::npos);
}

TEST_F(Cli, ImpulseSignal) {
  ASSERT_EQ(run("gen-signal --n1 8 --n2 8 --impulses 27,28,29 --out " + path("f.csv")), 0) << err_;
  const Signal2D f = io::load_signal(path("f.csv"));
  EXPECT_EQ(f, impulses(8, 8, std::vector<Index>{27, 28, 29}));
  EXPECT_EQ(f(3, 2), cplx(1));
  EXPECT_EQ(run("gen-signal --n1 8 --n2 8 --impulses 65 --out " + path("g.csv")), 8);
}

TEST_F(Cli, FastAndDirectFilesAgreeAndInvert) {
  ASSERT_EQ(run("gen-signal --n1 8 --n2 8 --random --seed 3 --out " + path("f.csv")), 0) << err_;
  const std::string grid = "--paths 8x8 --alpha 0.7 --L 3 --kernel heat --signal " + path("f.csv");
  ASSERT_EQ(run("transform " + grid + " --method fast --out " + path("fast.json")), 0) << err_;
  ASSERT_EQ(run("transform " + grid + " --method direct --format binary --out " + path("direct.bin")), 0) << err_;
  ASSERT_EQ(run("compare " + path("fast.json") + " " + path("direct.bin")), 0) << err_;
  EXPECT_LE(reported_error(out_), 1e-8);

  ASSERT_EQ(run("inverse --paths 8x8 --coefficients " + path("direct.bin") + " --out " + path("back.csv") +
                " --reference " + path("f.csv")),
            0)
      << err_;
  EXPECT_LE(reported_error(out_), 1e-10);
  EXPECT_LE(relative_error(io::load_signal(path("back.csv")), io::load_signal(path("f.csv"))), 1e-10);
}

TEST_F(Cli, CompareFailsAboveTolerance) {
  ASSERT_EQ(run("gen-signal --n1 4 --n2 4 --random --seed 1 --out " + path("f.csv")), 0);
  ASSERT_EQ(run("gen-signal --n1 4 --n2 4 --random --seed 2 --out " + path("g.csv")), 0);
  ASSERT_EQ(run("transform --paths 4x4 --signal " + path("f.csv") + " --out " + path("a.json")), 0);
  ASSERT_EQ(run("transform --paths 4x4 --signal " + path("g.csv") + " --out " + path("b.json")), 0);
  EXPECT_EQ(run("compare " + path("a.json") + " " + path("b.json")), 10);
  EXPECT_EQ(run("compare " + path("a.json") + " " + path("b.json") + " --tol 10"), 0);
}

TEST_F(Cli, ErrorCodesForBadInputs) {
  io::write_text(path("bad.csv"), "1,2\n3\n");
  EXPECT_EQ(run("transform --paths 2x2 --signal " + path("bad.csv")), 3);
  EXPECT_EQ(run("transform --paths 4x4 --signal " + path("missing.csv")), 2);
  io::write_text(path("f.csv"), "1,2\n3,4\n");
  EXPECT_EQ(run("transform --paths 3x3 --signal " + path("f.csv")), 7);
  EXPECT_EQ(run("transform --paths 2x2 --alpha 1.5 --signal " + path("f.csv")), 4);
  EXPECT_EQ(run("transform --paths 2x2 --method direct --direct-cap 3 --signal " + path("f.csv")), 4);
  io::write_text(path("g.json"), R"({"n":3,"edges":[[1,1,1]]})");
  EXPECT_EQ(run("export-basis --graph " + path("g.json") + " --out " + path("b.json")), 5);
}

TEST_F(Cli, DetectsTheSixAnomalies) {
  ASSERT_EQ(run("gen-signal --scenario anomaly --out " + path("f.csv")), 0) << err_;
  ASSERT_EQ(run("transform --paths 12x12 --alpha 0.7 --L 5 --kernel gauss --signal " + path("f.csv") + " --out " +
                path("c.bin") + " --format binary --spectrogram " + path("s.csv")),
            0)
      << err_;
  ASSERT_EQ(run("detect --coefficients " + path("c.bin")), 0) << err_;
  const DetectionResult from_coef = io::detection_from_json(json::parse(out_));
  ASSERT_EQ(run("detect --spectrogram " + path("s.csv") + " --n1 12 --n2 12 --out " + path("d.json")), 0) << err_;
  const DetectionResult from_spec = io::detection_from_json(io::read_json(path("d.json")));
  ASSERT_EQ(from_coef.flagged.size(), 6u);
  ASSERT_EQ(from_spec.flagged.size(), 6u);
  const auto truth = anomaly_vertices();
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_EQ(from_coef.flagged[j].flat, from_spec.flagged[j].flat);
    EXPECT_EQ((std::pair{from_coef.flagged[j].i1, from_coef.flagged[j].i2}), truth[j]);
  }
  EXPECT_EQ(run("detect --spectrogram " + path("s.csv") + " --n1 12 --n2 12 --ratio 1.0"), 4);
}

TEST_F(Cli, ConfigFileFillsUnsetOptions) {
  ASSERT_EQ(run("gen-signal --n1 6 --n2 5 --random --seed 4 --out " + path("f.csv")), 0);
  io::write_json(path("cfg.json"), json{{"paths", "6x5"}, {"alpha", 0.4}, {"L", 2}, {"kernel", "heat"}});
  ASSERT_EQ(run("--config " + path("cfg.json") + " transform --signal " + path("f.csv") + " --out " + path("a.json")), 0)
      << err_;
  const CoefficientTensor a = io::load_coefficients(path("a.json"));
  EXPECT_EQ(a.meta.alpha, 0.4);
  EXPECT_EQ(a.count(), 2);
  EXPECT_EQ(a.meta.kind, WindowKind::heat);
  ASSERT_EQ(run("--config " + path("cfg.json") + " transform --alpha 0.9 --signal " + path("f.csv") + " --out " +
                path("b.json")),
            0)
      << err_;
  EXPECT_EQ(io::load_coefficients(path("b.json")).meta.alpha, 0.9);
  io::write_text(path("broken.json"), "[1,2]");
  EXPECT_EQ(run("--config " + path("broken.json") + " transform --paths 6x5 --signal " + path("f.csv")), 3);
}

TEST_F(Cli, FrameBoundsReport) {
  ASSERT_EQ(run("frame-bounds --paths 4x3 --alpha 0.5 --L 2"), 0) << err_;
  const json j = json::parse(out_);
  const JointBasis jb = joint_basis(fractional_basis(build_graph(GraphKind::path, {.n = 4}), 0.5),
                                    fractional_basis(build_graph(GraphKind::path, {.n = 3}), 0.5));
  const FrameBounds fb = frame_bounds(make_window_bank(WindowKind::gauss, 2, jb), jb);
  EXPECT_NEAR(j.at("A").get<double>(), fb.A, 1e-12 * fb.A);
  EXPECT_NEAR(j.at("B").get<double>(), fb.B, 1e-12 * fb.B);
  EXPECT_EQ(j.at("per_vertex").size(), 12u);
}

TEST_F(Cli, ExportPlotDataMatchesFixture) {
  ASSERT_EQ(run("export-plot-data --scenario anomaly --dir " + path("bundle")), 0) << err_;
  const fs::path fixture = fs::path(MWGFRFT_FIXTURES_DIR) / "anomaly_bundle";
  const json bundle = io::read_json(path("bundle/bundle.json"));
  EXPECT_EQ(bundle, io::read_json(fixture / "bundle.json"));
  for (const char* key : {"spectrogram", "graph", "signal", "detection"})
    EXPECT_TRUE(fs::exists(dir_ / "bundle" / bundle.at(key).get<std::string>())) << key;
  EXPECT_EQ(bundle.at("n1"), 12);

  const Graph g = io::load_graph(path("bundle/graph.json"));
  EXPECT_EQ(g.n, 144);
  EXPECT_EQ(g.adjacency, io::load_graph(fixture / "graph.json").adjacency);
  EXPECT_EQ(io::load_signal(path("bundle/signal.csv")), io::load_signal(fixture / "signal.csv"));
  const auto s = io::load_spectrogram(path("bundle/spectrogram.csv")).magnitudes;
  const auto s_ref = io::load_spectrogram(fixture / "spectrogram.csv").magnitudes;
  ASSERT_EQ(s.rows(), 144);
  EXPECT_LE((s - s_ref).norm(), 1e-10 * s_ref.norm());
  const DetectionResult d = io::detection_from_json(io::read_json(path("bundle/detection.json")));
  const DetectionResult d_ref = io::detection_from_json(io::read_json(fixture / "detection.json"));
  ASSERT_EQ(d.flagged.size(), d_ref.flagged.size());
  for (std::size_t j = 0; j < d.flagged.size(); ++j) EXPECT_EQ(d.flagged[j].flat, d_ref.flagged[j].flat);
  EXPECT_NEAR(d.delta, d_ref.delta, 1e-10 * d_ref.delta);
}
