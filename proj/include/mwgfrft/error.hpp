#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mwgfrft {

/// Error categories raised by the library. Each maps to a distinct CLI exit
/// code (see tools/mwgfrft_cli.cpp).
enum class errc {
  invalid_parameter,
  invalid_graph,
  invalid_matrix,
  shape_error,
  index_error,
  frame_condition,
  format_error,
  io_error,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::invalid_parameter: return "invalid-parameter";
    case errc::invalid_graph: return "invalid-graph";
    case errc::invalid_matrix: return "invalid-matrix";
    case errc::shape_error: return "shape-error";
    case errc::index_error: return "index-error";
    case errc::frame_condition: return "frame-condition-error";
    case errc::format_error: return "format-error";
    case errc::io_error: return "io-error";
  }
  return "unknown-error";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

namespace detail {

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool condition, errc code, const char* what) {
  if (!condition) fail(code, what);
}

}  // namespace detail
}  // namespace mwgfrft
