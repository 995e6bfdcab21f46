#pragma once

// Factor graphs, Laplacians and Cartesian products.
//
// Vertices are 0-based in memory. The 1-based convention (used by files,
// reports and the CLI) is confined to flat_index / unflatten_index.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mwgfrft/linalg.hpp"

namespace mwgfrft {

enum class GraphKind { path, cycle, random_ring, community, sensor, custom };

constexpr std::string_view to_string(GraphKind kind) noexcept {
  switch (kind) {
    case GraphKind::path: return "path";
    case GraphKind::cycle: return "cycle";
    case GraphKind::random_ring: return "random-ring";
    case GraphKind::community: return "community";
    case GraphKind::sensor: return "sensor";
    case GraphKind::custom: return "custom";
  }
  return "custom";
}

inline GraphKind parse_graph_kind(std::string_view name) {
  for (auto k : {GraphKind::path, GraphKind::cycle, GraphKind::random_ring, GraphKind::community,
                 GraphKind::sensor, GraphKind::custom})
    if (to_string(k) == name) return k;
  detail::fail(errc::invalid_parameter, "unknown graph kind '" + std::string(name) + "'");
}

constexpr bool is_random(GraphKind kind) noexcept {
  return kind == GraphKind::random_ring || kind == GraphKind::community || kind == GraphKind::sensor;
}

struct Edge {
  Index i = 0;
  Index j = 0;
  double w = 1.0;
};

/// Undirected weighted graph. `edges` lists each edge once with i < j;
/// `adjacency` is the dense symmetric weight matrix with a zero diagonal.
struct Graph {
  Index n = 0;
  GraphKind kind = GraphKind::custom;
  std::optional<std::uint64_t> seed;
  std::vector<Edge> edges;
  Eigen::MatrixXd adjacency;
};

/// Generator parameters. Zero / negative values select the documented
/// defaults for the kind.
struct GraphParams {
  Index n = 0;
  std::optional<std::uint64_t> seed;
  Index chords = -1;      // random-ring: extra chords, default max(1, n/4)
  Index blocks = 0;       // community: block count, default max(2, round(sqrt(n)/2))
  double p_in = 0.5;      // community: intra-block edge probability
  double p_out = 0.02;    // community: inter-block edge probability
  double radius = 0.0;    // sensor: connection radius, default sqrt(2 ln n / n)
  double sigma = 0.0;     // sensor: Gaussian width, default radius / 2
  int max_retries = 100;  // redraws allowed for disconnected random draws
};

struct LaplacianSystem {
  Eigen::MatrixXd L;
  Eigen::VectorXd degree;
};

/// G1 □ G2 with the flattening (i1, i2) -> i1 * N2 + i2 (0-based).
struct ProductGraph {
  Graph factor1;
  Graph factor2;
  Index n1 = 0;
  Index n2 = 0;
  Eigen::MatrixXd adjacency;
  Eigen::MatrixXd laplacian;

  Index size() const { return n1 * n2; }
};

/// 1-based product index of the 1-based vertex pair (i1, i2).
inline Index flat_index(Index i1, Index i2, Index n1, Index n2) {
  if (i1 < 1 || i1 > n1 || i2 < 1 || i2 > n2)
    detail::fail(errc::index_error, "vertex pair (" + std::to_string(i1) + "," + std::to_string(i2) +
                                        ") outside a " + std::to_string(n1) + "x" + std::to_string(n2) +
                                        " grid");
  return (i1 - 1) * n2 + i2;
}

/// Inverse of flat_index: 1-based product index -> 1-based pair.
inline std::pair<Index, Index> unflatten_index(Index flat, Index n1, Index n2) {
  if (flat < 1 || flat > n1 * n2)
    detail::fail(errc::index_error, "product index " + std::to_string(flat) + " outside 1.." +
                                        std::to_string(n1 * n2));
  return {(flat - 1) / n2 + 1, (flat - 1) % n2 + 1};
}

inline bool is_connected(const Eigen::MatrixXd& adjacency) {
  const Index n = adjacency.rows();
  if (n == 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  Index reached = 1;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (Index u = 0; u < n; ++u) {
      if (adjacency(v, u) != 0.0 && !seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n;
}

inline bool is_connected(const Graph& g) { return is_connected(g.adjacency); }

/// Validates an edge list and assembles the graph. Rejects self loops,
/// duplicate edges (in either orientation), nonpositive or non-finite weights.
inline Graph graph_from_edges(Index n, std::vector<Edge> edges, GraphKind kind = GraphKind::custom,
                              std::optional<std::uint64_t> seed = std::nullopt) {
  detail::require(n >= 1, errc::invalid_graph, "graph needs at least one vertex");
  Graph g;
  g.n = n;
  g.kind = kind;
  g.seed = seed;
  g.adjacency = Eigen::MatrixXd::Zero(n, n);
  for (auto& e : edges) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
      detail::fail(errc::invalid_graph, "edge endpoint out of range");
    if (e.i == e.j) detail::fail(errc::invalid_graph, "self edge at vertex " + std::to_string(e.i + 1));
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      detail::fail(errc::invalid_graph, "edge weights must be positive and finite");
    if (e.i > e.j) std::swap(e.i, e.j);
    if (g.adjacency(e.i, e.j) != 0.0)
      detail::fail(errc::invalid_graph, "duplicate edge (" + std::to_string(e.i + 1) + "," +
                                            std::to_string(e.j + 1) + ")");
    g.adjacency(e.i, e.j) = e.w;
    g.adjacency(e.j, e.i) = e.w;
  }
  g.edges = std::move(edges);
  return g;
}

namespace detail {

inline Graph ring_with_chords(const GraphParams& p, std::mt19937_64& rng) {
  const Index n = p.n;
  std::vector<Edge> edges;
  Eigen::MatrixXd taken = Eigen::MatrixXd::Zero(n, n);
  for (Index v = 0; v < n; ++v) {
    const Index u = (v + 1) % n;
    edges.push_back({std::min(u, v), std::max(u, v), 1.0});
    taken(u, v) = taken(v, u) = 1.0;
  }
  const Index free_pairs = n * (n - 1) / 2 - n;
  const Index wanted = std::min(p.chords < 0 ? std::max<Index>(1, n / 4) : p.chords, free_pairs);
  for (Index added = 0; added < wanted;) {
    const auto a = static_cast<Index>(uniform01(rng) * static_cast<double>(n));
    const auto b = static_cast<Index>(uniform01(rng) * static_cast<double>(n));
    if (a == b || taken(a, b) != 0.0) continue;
    taken(a, b) = taken(b, a) = 1.0;
    edges.push_back({std::min(a, b), std::max(a, b), 1.0});
    ++added;
  }
  return graph_from_edges(n, std::move(edges), GraphKind::random_ring, p.seed);
}

inline Graph stochastic_blocks(const GraphParams& p, std::mt19937_64& rng) {
  const Index n = p.n;
  const Index blocks =
      p.blocks > 0 ? p.blocks
                   : std::max<Index>(2, static_cast<Index>(std::lround(std::sqrt(static_cast<double>(n)) / 2.0)));
  detail::require(blocks <= n, errc::invalid_parameter, "more communities than vertices");
  auto block_of = [&](Index v) { return v * blocks / n; };
  std::vector<Edge> edges;
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      const double prob = block_of(a) == block_of(b) ? p.p_in : p.p_out;
      if (uniform01(rng) < prob) edges.push_back({a, b, 1.0});
    }
  return graph_from_edges(n, std::move(edges), GraphKind::community, p.seed);
}

inline Graph random_geometric(const GraphParams& p, std::mt19937_64& rng) {
  const Index n = p.n;
  const double radius =
      p.radius > 0.0 ? p.radius : std::sqrt(2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n));
  const double sigma = p.sigma > 0.0 ? p.sigma : radius / 2.0;
  std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
  for (Index v = 0; v < n; ++v) {
    x[static_cast<std::size_t>(v)] = uniform01(rng);
    y[static_cast<std::size_t>(v)] = uniform01(rng);
  }
  std::vector<Edge> edges;
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      const double dx = x[static_cast<std::size_t>(a)] - x[static_cast<std::size_t>(b)];
      const double dy = y[static_cast<std::size_t>(a)] - y[static_cast<std::size_t>(b)];
      const double d2 = dx * dx + dy * dy;
      if (d2 <= radius * radius) edges.push_back({a, b, std::exp(-d2 / (2.0 * sigma * sigma))});
    }
  return graph_from_edges(n, std::move(edges), GraphKind::sensor, p.seed);
}

}  // namespace detail

/// Builds one of the supported graph families. Random kinds are driven only
/// by the explicit seed; a disconnected draw is redrawn from the same stream
/// up to `max_retries` times.
inline Graph build_graph(GraphKind kind, const GraphParams& params) {
  const Index n = params.n;
  detail::require(n >= 2, errc::invalid_parameter, "graph size must be at least 2");
  if (is_random(kind) && !params.seed)
    detail::fail(errc::invalid_parameter, std::string("graph kind '") + std::string(to_string(kind)) +
                                              "' requires an explicit seed");
  switch (kind) {
    case GraphKind::path: {
      std::vector<Edge> edges;
      for (Index v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
      return graph_from_edges(n, std::move(edges), GraphKind::path);
    }
    case GraphKind::cycle: {
      detail::require(n >= 3, errc::invalid_parameter, "a cycle needs at least 3 vertices");
      std::vector<Edge> edges;
      for (Index v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
      edges.push_back({0, n - 1, 1.0});
      return graph_from_edges(n, std::move(edges), GraphKind::cycle);
    }
    case GraphKind::custom:
      detail::fail(errc::invalid_parameter, "custom graphs are built from an edge list");
    default: break;
  }

  if (kind == GraphKind::random_ring)
    detail::require(n >= 3, errc::invalid_parameter, "a random ring needs at least 3 vertices");
  if (kind == GraphKind::community)
    detail::require(params.p_in > 0.0 && params.p_in <= 1.0 && params.p_out > 0.0 && params.p_out <= 1.0,
                    errc::invalid_parameter, "community probabilities must lie in (0, 1]");
  if (kind == GraphKind::sensor)
    detail::require(params.radius >= 0.0 && params.sigma >= 0.0, errc::invalid_parameter,
                    "sensor radius and sigma must be nonnegative");

  std::mt19937_64 rng(*params.seed);
  for (int attempt = 0; attempt <= params.max_retries; ++attempt) {
    Graph g = kind == GraphKind::random_ring ? detail::ring_with_chords(params, rng)
              : kind == GraphKind::community ? detail::stochastic_blocks(params, rng)
                                             : detail::random_geometric(params, rng);
    if (is_connected(g)) return g;
  }
  detail::fail(errc::invalid_parameter, "no connected draw within the retry budget; adjust the parameters");
}

inline LaplacianSystem laplacian(const Eigen::MatrixXd& adjacency) {
  detail::require(adjacency.rows() == adjacency.cols(), errc::invalid_graph, "adjacency must be square");
  for (Index a = 0; a < adjacency.rows(); ++a) {
    if (adjacency(a, a) != 0.0) detail::fail(errc::invalid_graph, "adjacency has a nonzero diagonal");
    for (Index b = a + 1; b < adjacency.cols(); ++b) {
      if (adjacency(a, b) != adjacency(b, a)) detail::fail(errc::invalid_graph, "adjacency is not symmetric");
      if (adjacency(a, b) < 0.0) detail::fail(errc::invalid_graph, "adjacency has negative weights");
    }
  }
  LaplacianSystem sys;
  sys.degree = adjacency.rowwise().sum();
  sys.L = -adjacency;
  sys.L.diagonal() += sys.degree;
  return sys;
}

inline LaplacianSystem laplacian(const Graph& g) { return laplacian(g.adjacency); }

inline ProductGraph cartesian_product(const Graph& g1, const Graph& g2) {
  ProductGraph pg;
  pg.factor1 = g1;
  pg.factor2 = g2;
  pg.n1 = g1.n;
  pg.n2 = g2.n;
  const Eigen::MatrixXd i1 = Eigen::MatrixXd::Identity(g1.n, g1.n);
  const Eigen::MatrixXd i2 = Eigen::MatrixXd::Identity(g2.n, g2.n);
  pg.adjacency = kron(g1.adjacency, i2) + kron(i1, g2.adjacency);
  pg.laplacian = kron(laplacian(g1).L, i2) + kron(i1, laplacian(g2).L);
  return pg;
}

/// The product as a standalone graph (kind custom), e.g. for export.
inline Graph product_as_graph(const ProductGraph& pg) {
  std::vector<Edge> edges;
  for (Index a = 0; a < pg.size(); ++a)
    for (Index b = a + 1; b < pg.size(); ++b)
      if (pg.adjacency(a, b) != 0.0) edges.push_back({a, b, pg.adjacency(a, b)});
  return graph_from_edges(pg.size(), std::move(edges));
}

}  // namespace mwgfrft
