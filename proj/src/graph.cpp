#include "kindsim/graph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "kindsim/rng.hpp"

namespace kindsim {

namespace {

constexpr std::size_t kMaxVertexIndex = (1u << 26);  // adjacency-in-memory cap
constexpr int kConnectivityRetryBudget = 1000;

}  // namespace

Graph Graph::from_edges(std::size_t n_vertices, std::vector<Edge> edges) {
  if (edges.empty()) {
    throw Error(Errc::empty_graph, "graph has no edges");
  }
  if (n_vertices < 2) {
    throw Error(Errc::empty_graph, "graph needs at least two vertices");
  }
  for (Edge& e : edges) {
    if (e.u == e.v) {
      throw Error(Errc::self_loop,
                  "self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u >= n_vertices || e.v >= n_vertices) {
      throw Error(Errc::invalid_spec,
                  "edge endpoint out of range: " + std::to_string(e.u) + " " +
                      std::to_string(e.v));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] == edges[i - 1]) {
      throw Error(Errc::duplicate_edge,
                  "duplicate edge " + std::to_string(edges[i].u) + " " +
                      std::to_string(edges[i].v));
    }
  }
  if (!is_connected(n_vertices, edges)) {
    throw Error(Errc::disconnected, "graph is not connected");
  }

  Graph g;
  g.edges_ = std::move(edges);
  g.adjacency_.assign(n_vertices, {});
  for (const Edge& e : g.edges_) {
    g.adjacency_[e.u].push_back(e.v);
    g.adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : g.adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
  }
  return g;
}

bool is_connected(std::size_t n_vertices, const std::vector<Edge>& edges) {
  if (n_vertices == 0) return false;
  std::vector<std::vector<Vertex>> adj(n_vertices);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n_vertices, 0);
  std::queue<Vertex> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    Vertex x = frontier.front();
    frontier.pop();
    for (Vertex y : adj[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        frontier.push(y);
      }
    }
  }
  return reached == n_vertices;
}

std::vector<Vertex> Graph::shortest_path(Vertex x, Vertex y) const {
  const std::size_t n = n_vertices();
  if (x >= n || y >= n) {
    throw Error(Errc::out_of_range, "shortest_path: vertex out of range");
  }
  if (x == y) return {x};

  constexpr Vertex kUnset = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> parent(n, kUnset);
  std::queue<Vertex> frontier;
  frontier.push(x);
  parent[x] = x;
  while (!frontier.empty()) {
    Vertex a = frontier.front();
    frontier.pop();
    for (Vertex b : adjacency_[a]) {  // ascending: deterministic parents
      if (parent[b] == kUnset) {
        parent[b] = a;
        if (b == y) {
          std::vector<Vertex> path{y};
          for (Vertex c = y; c != x; c = parent[c]) path.push_back(parent[c]);
          std::reverse(path.begin(), path.end());
          return path;
        }
        frontier.push(b);
      }
    }
  }
  throw Error(Errc::no_path, "no path between vertices (corrupted graph)");
}

std::string Graph::to_edge_list() const {
  std::string out;
  for (const Edge& e : edges_) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

Graph parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> seen;
  std::size_t max_index = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string_view::npos) continue;  // blank
    if (line[start] == '#') continue;               // comment

    std::istringstream iss{std::string(line)};
    long long a = -1, b = -1;
    std::string extra;
    if (!(iss >> a >> b) || (iss >> extra) || a < 0 || b < 0) {
      throw Error(Errc::parse_error,
                  "malformed edge at line " + std::to_string(line_no));
    }
    if (a > static_cast<long long>(kMaxVertexIndex) ||
        b > static_cast<long long>(kMaxVertexIndex)) {
      throw Error(Errc::parse_error,
                  "vertex index too large at line " + std::to_string(line_no));
    }
    if (a == b) {
      throw Error(Errc::self_loop,
                  "self-loop at line " + std::to_string(line_no));
    }
    Edge e{static_cast<Vertex>(std::min(a, b)),
           static_cast<Vertex>(std::max(a, b))};
    if (!seen.insert({e.u, e.v}).second) {
      throw Error(Errc::duplicate_edge,
                  "duplicate edge at line " + std::to_string(line_no));
    }
    edges.push_back(e);
    max_index = std::max<std::size_t>(max_index, e.v);
  }
  if (edges.empty()) {
    throw Error(Errc::empty_graph, "edge list is empty");
  }
  return Graph::from_edges(max_index + 1, std::move(edges));
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io_error, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str());
}

GraphSpec GraphSpec::complete(std::size_t n) {
  GraphSpec s;
  s.kind = Kind::complete;
  s.n = n;
  return s;
}

GraphSpec GraphSpec::cycle(std::size_t n) {
  GraphSpec s;
  s.kind = Kind::cycle;
  s.n = n;
  return s;
}

GraphSpec GraphSpec::grid(std::size_t width, std::size_t height) {
  GraphSpec s;
  s.kind = Kind::grid;
  s.width = width;
  s.height = height;
  return s;
}

GraphSpec GraphSpec::erdos_renyi(std::size_t n, double p) {
  GraphSpec s;
  s.kind = Kind::erdos_renyi;
  s.n = n;
  s.p = p;
  return s;
}

GraphSpec GraphSpec::from_file(std::string path) {
  GraphSpec s;
  s.kind = Kind::from_file;
  s.path = std::move(path);
  return s;
}

void GraphSpec::validate() const {
  switch (kind) {
    case Kind::complete:
      if (n < 1 || n > kMaxVertexIndex) {
        throw Error(Errc::invalid_spec, "complete: need 1 <= n");
      }
      break;
    case Kind::cycle:
      if (n < 3 || n > kMaxVertexIndex) {
        throw Error(Errc::invalid_spec, "cycle: need n >= 3");
      }
      break;
    case Kind::grid:
      if (width < 1 || height < 1 || width * height < 2 ||
          width * height > kMaxVertexIndex) {
        throw Error(Errc::invalid_spec, "grid: need width*height >= 2");
      }
      break;
    case Kind::erdos_renyi:
      if (n < 2 || n > kMaxVertexIndex) {
        throw Error(Errc::invalid_spec, "erdos_renyi: need n >= 2");
      }
      if (!(p > 0.0) || p > 1.0) {
        throw Error(Errc::invalid_spec, "erdos_renyi: need p in (0, 1]");
      }
      break;
    case Kind::from_file:
      if (path.empty()) {
        throw Error(Errc::invalid_spec, "from_file: empty path");
      }
      break;
  }
}

std::string GraphSpec::describe() const {
  switch (kind) {
    case Kind::complete:
      return "complete(" + std::to_string(n) + ")";
    case Kind::cycle:
      return "cycle(" + std::to_string(n) + ")";
    case Kind::grid:
      return "grid(" + std::to_string(width) + "x" + std::to_string(height) +
             ")";
    case Kind::erdos_renyi: {
      std::ostringstream oss;
      oss << "erdos_renyi(" << n << "," << p << ")";
      return oss.str();
    }
    case Kind::from_file:
      return "from_file(" + path + ")";
  }
  return "?";
}

Graph generate(const GraphSpec& spec, std::uint64_t seed) {
  spec.validate();
  switch (spec.kind) {
    case GraphSpec::Kind::complete: {
      std::vector<Edge> edges;
      edges.reserve(spec.n * (spec.n - 1) / 2);
      for (Vertex i = 0; i < spec.n; ++i) {
        for (Vertex j = i + 1; j < spec.n; ++j) {
          edges.push_back({i, j});
        }
      }
      return Graph::from_edges(spec.n, std::move(edges));
    }
    case GraphSpec::Kind::cycle: {
      std::vector<Edge> edges;
      edges.reserve(spec.n);
      for (Vertex i = 0; i < spec.n; ++i) {
        edges.push_back({i, static_cast<Vertex>((i + 1) % spec.n)});
      }
      return Graph::from_edges(spec.n, std::move(edges));
    }
    case GraphSpec::Kind::grid: {
      const std::size_t w = spec.width, h = spec.height;
      std::vector<Edge> edges;
      for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
          const Vertex at = static_cast<Vertex>(r * w + c);
          if (c + 1 < w) edges.push_back({at, static_cast<Vertex>(at + 1)});
          if (r + 1 < h) edges.push_back({at, static_cast<Vertex>(at + w)});
        }
      }
      return Graph::from_edges(w * h, std::move(edges));
    }
    case GraphSpec::Kind::erdos_renyi: {
      for (int attempt = 0; attempt < kConnectivityRetryBudget; ++attempt) {
        Rng rng(derive_seed(derive_seed(seed, StreamTag::er_attempt),
                            static_cast<std::uint64_t>(attempt)));
        std::vector<Edge> edges;
        for (Vertex i = 0; i < spec.n; ++i) {
          for (Vertex j = i + 1; j < spec.n; ++j) {
            if (rng.bernoulli(spec.p)) edges.push_back({i, j});
          }
        }
        if (!edges.empty() && is_connected(spec.n, edges)) {
          return Graph::from_edges(spec.n, std::move(edges));
        }
      }
      throw Error(Errc::connectivity_retry_exhausted,
                  "no connected G(n,p) sample after " +
                      std::to_string(kConnectivityRetryBudget) + " attempts");
    }
    case GraphSpec::Kind::from_file:
      return load_edge_list(spec.path);
  }
  throw Error(Errc::invalid_spec, "unknown graph kind");
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::connectivity_retry_exhausted: return "ConnectivityRetryExhausted";
    case Errc::self_loop: return "SelfLoop";
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::disconnected: return "Disconnected";
    case Errc::parse_error: return "ParseError";
    case Errc::empty_graph: return "EmptyGraph";
    case Errc::no_path: return "NoPath";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::non_positive_c: return "NonPositiveC";
    case Errc::degenerate_drift: return "DegenerateDrift";
    case Errc::no_certifiable_c: return "NoCertifiableC";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::mismatched_n: return "MismatchedN";
    case Errc::too_large: return "TooLarge";
    case Errc::all_censored: return "AllCensored";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::io_error: return "IoError";
    case Errc::missing_field: return "MissingField";
  }
  return "Unknown";
}

}  // namespace kindsim
