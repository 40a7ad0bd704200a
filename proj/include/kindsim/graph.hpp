#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kindsim/errors.hpp"

namespace kindsim {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;

  bool operator==(const Edge&) const = default;
};

// Finite connected simple graph with dense vertex indices 0..N-1.
// Immutable after construction; safe to share across threads.
class Graph {
 public:
  // Validates: no self-loops, no duplicate edges, indices < n_vertices,
  // connected, at least one edge (which forces n_vertices >= 2).
  static Graph from_edges(std::size_t n_vertices, std::vector<Edge> edges);

  std::size_t n_vertices() const { return adjacency_.size(); }
  std::size_t n_edges() const { return edges_.size(); }
  std::size_t n_oriented_edges() const { return 2 * edges_.size(); }

  // Edges are stored canonically: u < v, sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }

  // Neighbor lists, ascending. Ascending order fixes BFS tie-breaking.
  const std::vector<Vertex>& neighbors(Vertex x) const {
    return adjacency_[x];
  }
  std::size_t degree(Vertex x) const { return adjacency_[x].size(); }

  // Oriented edge k in [0, 2|E|): undirected edge k/2, direction k%2
  // (0 means u->v, 1 means v->u).
  std::pair<Vertex, Vertex> oriented_edge(std::size_t k) const {
    const Edge& e = edges_[k >> 1];
    return (k & 1) ? std::pair<Vertex, Vertex>{e.v, e.u}
                   : std::pair<Vertex, Vertex>{e.u, e.v};
  }

  // Minimal-edge-count path from x to y, inclusive; x == y gives {x}.
  // BFS visits neighbors in ascending index order, so the result is
  // reproducible. NoPath signals internal corruption on a validated graph.
  std::vector<Vertex> shortest_path(Vertex x, Vertex y) const;

  // One "u v" line per edge, canonical order. parse_edge_list inverts this.
  std::string to_edge_list() const;

 private:
  Graph() = default;

  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

// Connectivity of a raw edge set (works on graphs that would fail Graph
// validation; a single vertex with no edges counts as connected).
bool is_connected(std::size_t n_vertices, const std::vector<Edge>& edges);

// Edge-list text format: one edge per line as two whitespace-separated
// non-negative integers; lines whose first non-blank character is '#' are
// comments; blank lines ignored; undirected ("u v" implies "v u", listing
// both is a duplicate). Vertex count is 1 + max index, so index gaps leave
// isolated vertices and fail the connectivity check.
Graph parse_edge_list(std::string_view text);
Graph load_edge_list(const std::filesystem::path& path);

struct GraphSpec {
  enum class Kind { complete, cycle, grid, erdos_renyi, from_file };

  Kind kind = Kind::complete;
  std::size_t n = 0;       // complete, cycle, erdos_renyi
  std::size_t width = 0;   // grid
  std::size_t height = 0;  // grid
  double p = 0.0;          // erdos_renyi edge probability, (0, 1]
  std::string path;        // from_file

  static GraphSpec complete(std::size_t n);
  static GraphSpec cycle(std::size_t n);
  static GraphSpec grid(std::size_t width, std::size_t height);
  static GraphSpec erdos_renyi(std::size_t n, double p);
  static GraphSpec from_file(std::string path);

  // Throws InvalidSpec on bad parameters. cycle needs n >= 3 (a 2-cycle
  // would duplicate its single undirected edge).
  void validate() const;

  std::string describe() const;

  bool operator==(const GraphSpec&) const = default;
};

// Deterministic in (spec, seed). Erdos-Renyi retries with sub-seeds
// derived from `seed` until a connected sample is drawn, so the returned
// law is G(n,p) conditioned on connectivity; the retry budget is 1000.
Graph generate(const GraphSpec& spec, std::uint64_t seed);

}  // namespace kindsim
