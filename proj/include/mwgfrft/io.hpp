#pragma once

// File formats: graph JSON, signal / spectrogram CSV, basis and bank JSON,
// coefficient tensors (JSON or binary), detection and benchmark reports.
// All indices in files are 1-based.

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mwgfrft/analysis.hpp"
#include "mwgfrft/bench.hpp"

namespace mwgfrft::io {

using json = nlohmann::json;

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) detail::fail(errc::io_error, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) detail::fail(errc::io_error, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) detail::fail(errc::io_error, "write to '" + path.string() + "' failed");
}

inline json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    detail::fail(errc::format_error, what + ": " + e.what());
  }
}

inline json read_json(const std::filesystem::path& path) { return parse_json(read_text(path), path.string()); }

inline void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

// Wraps json type / key errors as format errors.
template <typename Fn>
auto decode(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    detail::fail(errc::format_error, what + ": " + e.what());
  }
}

// ---- numbers -------------------------------------------------------------

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// "re", or "re+imi" / "re-imi" when the imaginary part is nonzero.
inline std::string format_complex(cplx z) {
  if (z.imag() == 0.0 && !std::signbit(z.imag())) return format_double(z.real());
  std::string im = format_double(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_double(z.real()) + im + "i";
}

namespace detail_io {

inline bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace detail_io

/// Parses "1.5", "1.5-2i", "-3e-2+4i", "2i", "-i".
inline bool parse_complex(std::string_view s, cplx& out) {
  s = detail_io::trim(s);
  if (s.empty()) return false;
  if (s.back() != 'i') {
    double re;
    if (!detail_io::parse_double(s, re)) return false;
    out = {re, 0.0};
    return true;
  }
  s.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t p = s.size(); p-- > 1;)
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      split = p;
      break;
    }
  double re = 0.0, im;
  std::string_view im_part = s;
  if (split != std::string_view::npos) {
    if (!detail_io::parse_double(s.substr(0, split), re)) return false;
    im_part = s.substr(split);
  }
  if (im_part.empty() || im_part == "+") im = 1.0;
  else if (im_part == "-") im = -1.0;
  else if (!detail_io::parse_double(im_part, im)) return false;
  out = {re, im};
  return true;
}

// ---- CSV -----------------------------------------------------------------

namespace detail_io {

template <typename Cell>
std::vector<std::vector<Cell>> parse_csv(std::string_view text, const std::string& what, bool (*parse)(std::string_view, Cell&)) {
  std::vector<std::vector<Cell>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<Cell> row;
    std::size_t col = 0;
    while (true) {
      const std::size_t comma = line.find(',');
      ++col;
      Cell v;
      if (!parse(line.substr(0, comma), v))
        mwgfrft::detail::fail(errc::format_error, what + ": row " + std::to_string(line_no) + ", column " +
                                                      std::to_string(col) + ": cannot parse '" +
                                                      std::string(trim(line.substr(0, comma))) + "'");
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      mwgfrft::detail::fail(errc::format_error, what + ": row " + std::to_string(line_no) + " has " +
                                                    std::to_string(row.size()) + " columns, expected " +
                                                    std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) mwgfrft::detail::fail(errc::format_error, what + ": no data rows");
  return rows;
}

inline bool parse_real_cell(std::string_view s, double& out) { return parse_double(trim(s), out); }

}  // namespace detail_io

inline std::string signal_to_csv(const Signal2D& f) {
  const bool real = (f.imag().array() == 0.0).all();
  std::string out;
  for (Index a = 0; a < f.rows(); ++a) {
    for (Index b = 0; b < f.cols(); ++b) {
      if (b) out += ',';
      out += real ? format_double(f(a, b).real()) : format_complex(f(a, b));
    }
    out += '\n';
  }
  return out;
}

inline Signal2D signal_from_csv(std::string_view text, const std::string& what = "signal") {
  const auto rows = detail_io::parse_csv<cplx>(text, what, &parse_complex);
  Signal2D f(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index a = 0; a < f.rows(); ++a)
    for (Index b = 0; b < f.cols(); ++b) f(a, b) = rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  return f;
}

inline void save_signal(const std::filesystem::path& path, const Signal2D& f) { write_text(path, signal_to_csv(f)); }

inline Signal2D load_signal(const std::filesystem::path& path) { return signal_from_csv(read_text(path), path.string()); }

inline std::string matrix_to_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Index a = 0; a < m.rows(); ++a) {
    for (Index b = 0; b < m.cols(); ++b) {
      if (b) out += ',';
      out += format_double(m(a, b));
    }
    out += '\n';
  }
  return out;
}

inline Eigen::MatrixXd matrix_from_csv(std::string_view text, const std::string& what = "matrix") {
  const auto rows = detail_io::parse_csv<double>(text, what, &detail_io::parse_real_cell);
  Eigen::MatrixXd m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index a = 0; a < m.rows(); ++a)
    for (Index b = 0; b < m.cols(); ++b) m(a, b) = rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  return m;
}

inline void save_spectrogram(const std::filesystem::path& path, const Spectrogram& s) {
  write_text(path, matrix_to_csv(s.magnitudes));
}

inline Spectrogram load_spectrogram(const std::filesystem::path& path) {
  return spectrogram(matrix_from_csv(read_text(path), path.string()));
}

// ---- graphs --------------------------------------------------------------

inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({e.i + 1, e.j + 1, e.w});
  return {{"n", g.n},
          {"kind", std::string(to_string(g.kind))},
          {"seed", g.seed ? json(*g.seed) : json(nullptr)},
          {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const json& j, const std::string& what = "graph") {
  return decode(what, [&] {
    const Index n = j.at("n").get<Index>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) detail::fail(errc::format_error, what + ": each edge must be [i, j, w]");
      edges.push_back({e[0].get<Index>() - 1, e[1].get<Index>() - 1, e[2].get<double>()});
    }
    const GraphKind kind = j.contains("kind") ? parse_graph_kind(j.at("kind").get<std::string>()) : GraphKind::custom;
    std::optional<std::uint64_t> seed;
    if (j.contains("seed") && !j.at("seed").is_null()) seed = j.at("seed").get<std::uint64_t>();
    return graph_from_edges(n, std::move(edges), kind, seed);
  });
}

inline void save_graph(const std::filesystem::path& path, const Graph& g) { write_json(path, graph_to_json(g)); }

inline Graph load_graph(const std::filesystem::path& path) { return graph_from_json(read_json(path), path.string()); }

// ---- bases and banks -----------------------------------------------------

inline json basis_to_json(const FractionalBasis& b) {
  json gamma = json::array();
  for (Index a = 0; a < b.gamma.rows(); ++a)
    for (Index c = 0; c < b.gamma.cols(); ++c) gamma.push_back({b.gamma(a, c).real(), b.gamma(a, c).imag()});
  return {{"alpha", b.alpha}, {"R", std::vector<double>(b.r.data(), b.r.data() + b.r.size())}, {"gamma", gamma}};
}

inline json bank_to_json(const WindowBank& bank) {
  return {{"kind", std::string(to_string(bank.kind))},
          {"L", bank.count()},
          {"taus", bank.taus},
          {"normalized", bank.normalized}};
}

/// Rebuilds a heat / gauss bank on `jb`; spectra are never stored.
inline WindowBank bank_from_json(const json& j, const JointBasis& jb) {
  return decode("window bank", [&] {
    const WindowKind kind = parse_window_kind(j.at("kind").get<std::string>());
    if (kind == WindowKind::custom)
      detail::fail(errc::format_error, "window bank: custom spectra cannot be rebuilt from a descriptor");
    auto taus = j.at("taus").get<std::vector<double>>();
    return make_window_bank(kind, j.at("L").get<Index>(), jb, std::move(taus), j.value("normalized", true));
  });
}

// ---- coefficient tensors -------------------------------------------------

inline json coefficient_header(const CoefficientTensor& c) {
  return {{"N1", c.meta.n1},
          {"N2", c.meta.n2},
          {"L", c.count()},
          {"alpha", c.meta.alpha},
          {"layout", "vertex-major"},
          {"method", c.meta.method},
          {"kind", std::string(to_string(c.meta.kind))},
          {"taus", c.meta.taus},
          {"normalized", c.meta.normalized}};
}

namespace detail_io {

inline CoefficientMeta meta_from_header(const json& h, Index& count) {
  return decode("coefficient header", [&] {
    if (h.value("layout", std::string("vertex-major")) != "vertex-major")
      mwgfrft::detail::fail(errc::format_error, "coefficient header: unsupported layout");
    CoefficientMeta m;
    m.n1 = h.at("N1").get<Index>();
    m.n2 = h.at("N2").get<Index>();
    m.alpha = h.at("alpha").get<double>();
    m.method = h.value("method", std::string());
    m.kind = parse_window_kind(h.value("kind", std::string("custom")));
    m.taus = h.value("taus", std::vector<double>{});
    m.normalized = h.value("normalized", false);
    count = h.at("L").get<Index>();
    if (m.n1 < 1 || m.n2 < 1 || count < 1)
      mwgfrft::detail::fail(errc::format_error, "coefficient header: sizes must be positive");
    return m;
  });
}

constexpr std::array<char, 4> kMagic{'M', 'W', 'G', 'F'};
constexpr std::uint32_t kBinaryVersion = 1;

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return v;
}

template <typename T>
void put(std::string& out, T v) {
  v = to_little(v);
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T get(std::string_view& in) {
  if (in.size() < sizeof(T)) mwgfrft::detail::fail(errc::format_error, "coefficient file is truncated");
  T v;
  std::memcpy(&v, in.data(), sizeof(T));
  in.remove_prefix(sizeof(T));
  return to_little(v);
}

}  // namespace detail_io

inline std::string coefficients_to_json(const CoefficientTensor& c) {
  json j = coefficient_header(c);
  json windows = json::array();
  for (const auto& w : c.per_window) {
    json flat = json::array();
    for (Index a = 0; a < w.rows(); ++a)
      for (Index b = 0; b < w.cols(); ++b) {
        flat.push_back(w(a, b).real());
        flat.push_back(w(a, b).imag());
      }
    windows.push_back(std::move(flat));
  }
  j["per_window"] = std::move(windows);
  return j.dump() + "\n";
}

/// "MWGF", uint32 version, uint32 header length, JSON header, then float64
/// re/im pairs row-major per window; all little-endian.
inline std::string coefficients_to_binary(const CoefficientTensor& c) {
  const std::string header = coefficient_header(c).dump();
  std::string out(detail_io::kMagic.begin(), detail_io::kMagic.end());
  detail_io::put(out, detail_io::kBinaryVersion);
  detail_io::put(out, static_cast<std::uint32_t>(header.size()));
  out += header;
  for (const auto& w : c.per_window)
    for (Index a = 0; a < w.rows(); ++a)
      for (Index b = 0; b < w.cols(); ++b) {
        detail_io::put(out, w(a, b).real());
        detail_io::put(out, w(a, b).imag());
      }
  return out;
}

inline CoefficientTensor coefficients_from_bytes(std::string_view data, const std::string& what = "coefficients") {
  CoefficientTensor c;
  Index count = 0;
  if (data.size() >= 4 && std::equal(detail_io::kMagic.begin(), detail_io::kMagic.end(), data.begin())) {
    data.remove_prefix(4);
    if (detail_io::get<std::uint32_t>(data) != detail_io::kBinaryVersion)
      detail::fail(errc::format_error, what + ": unsupported binary version");
    const auto len = detail_io::get<std::uint32_t>(data);
    if (data.size() < len) detail::fail(errc::format_error, what + ": truncated header");
    c.meta = detail_io::meta_from_header(parse_json(data.substr(0, len), what), count);
    data.remove_prefix(len);
    const Index n = c.meta.n1 * c.meta.n2;
    if (data.size() != static_cast<std::size_t>(count * n * n) * 16)
      detail::fail(errc::format_error, what + ": payload size does not match the header");
    for (Index l = 0; l < count; ++l) {
      Eigen::MatrixXcd w(n, n);
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) {
          const double re = detail_io::get<double>(data);
          w(a, b) = cplx(re, detail_io::get<double>(data));
        }
      c.per_window.push_back(std::move(w));
    }
  } else {
    const json j = parse_json(data, what);
    c.meta = detail_io::meta_from_header(j, count);
    const Index n = c.meta.n1 * c.meta.n2;
    decode(what, [&] {
      const auto& windows = j.at("per_window");
      if (static_cast<Index>(windows.size()) != count)
        detail::fail(errc::format_error, what + ": window count does not match L");
      for (const auto& flat : windows) {
        if (static_cast<Index>(flat.size()) != 2 * n * n)
          detail::fail(errc::format_error, what + ": window matrix has the wrong length");
        Eigen::MatrixXcd w(n, n);
        for (Index a = 0; a < n; ++a)
          for (Index b = 0; b < n; ++b) {
            const auto base = static_cast<std::size_t>(2 * (a * n + b));
            w(a, b) = cplx(flat[base].get<double>(), flat[base + 1].get<double>());
          }
        c.per_window.push_back(std::move(w));
      }
      return 0;
    });
  }
  c.aggregated = mwgfrft::detail::aggregate(c.per_window);
  return c;
}

enum class CoefficientFormat { json, binary };

inline void save_coefficients(const std::filesystem::path& path, const CoefficientTensor& c,
                              CoefficientFormat format = CoefficientFormat::json) {
  write_text(path, format == CoefficientFormat::json ? coefficients_to_json(c) : coefficients_to_binary(c));
}

inline CoefficientTensor load_coefficients(const std::filesystem::path& path) {
  return coefficients_from_bytes(read_text(path), path.string());
}

// ---- reports -------------------------------------------------------------

inline json detection_to_json(const DetectionResult& d) {
  json flagged = json::array();
  for (const auto& v : d.flagged) flagged.push_back({{"flat", v.flat}, {"i1", v.i1}, {"i2", v.i2}});
  return {{"delta", d.delta}, {"ratio", d.ratio}, {"flagged", flagged}};
}

inline DetectionResult detection_from_json(const json& j) {
  return decode("detection report", [&] {
    DetectionResult d;
    d.delta = j.at("delta").get<double>();
    d.ratio = j.at("ratio").get<double>();
    for (const auto& v : j.at("flagged"))
      d.flagged.push_back({v.at("flat").get<Index>(), v.at("i1").get<Index>(), v.at("i2").get<Index>()});
    return d;
  });
}

inline json bench_to_json(const BenchReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"N", row.n},
                    {"N1", row.n1},
                    {"N2", row.n2},
                    {"eigen_seconds", row.eigen_seconds},
                    {"fast_seconds", row.fast_seconds},
                    {"direct_seconds", row.direct_seconds ? json(*row.direct_seconds) : json(nullptr)},
                    {"repetitions", row.repetitions}});
  auto slope = [](const std::optional<SlopeFit>& s) -> json {
    if (!s) return nullptr;
    return {{"slope", s->slope}, {"intercept", s->intercept}, {"residual", s->residual}, {"points", s->points}};
  };
  return {{"config",
           {{"sizes", r.config.sizes},
            {"reps", r.config.reps},
            {"alpha", r.config.alpha},
            {"L", r.config.windows},
            {"kernel", std::string(to_string(r.config.kernel))},
            {"seed", r.config.seed},
            {"direct_cap", r.config.direct_cap}}},
          {"rows", rows},
          {"slopes", {{"fast", slope(r.fast_slope)}, {"direct", slope(r.direct_slope)}}},
          {"check_error", r.check_error ? json(*r.check_error) : json(nullptr)},
          {"environment", {{"workers", r.workers}, {"build", r.build}}}};
}

}  // namespace mwgfrft::io
