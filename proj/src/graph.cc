#include "edgelearn/graph.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "edgelearn/errors.h"

namespace edgelearn {

void normalize(EdgeList& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

void normalize(VertexSet& vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
}

Graph::Graph(std::size_t n, EdgeList edges) : n_(n), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u >= n_ || e.v >= n_) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") out of range for n=" + std::to_string(n_));
    }
    e = Edge::make(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(dup->u) + "," +
                                std::to_string(dup->v) + ")");
  }

  offsets_.assign(n_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n_; ++v) {
    max_degree_ = std::max(max_degree_, offsets_[v + 1]);
    offsets_[v + 1] += offsets_[v];
  }
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = e.v;
    adjacency_[fill[e.v]++] = e.u;
  }
  // Sorted edge order leaves every adjacency list sorted: smaller neighbors arrive first.
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (a >= n_ || b >= n_) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

bool Graph::check_invariants() const {
  std::size_t recomputed = 0;
  std::vector<std::size_t> deg(n_, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.u >= e.v || e.v >= n_) return false;
    if (i > 0 && !(edges_[i - 1] < e)) return false;
    ++deg[e.u];
    ++deg[e.v];
  }
  for (std::size_t v = 0; v < n_; ++v) {
    recomputed = std::max(recomputed, deg[v]);
    if (deg[v] != degree(static_cast<Vertex>(v))) return false;
  }
  return recomputed == max_degree_;
}

EdgeList induced_edges(const Graph& g, std::span<const Vertex> subset) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : subset) in[v] = 1;
  EdgeList out;
  for (Vertex v : subset) {
    for (Vertex w : g.neighbors(v)) {
      if (v < w && in[w]) out.push_back({v, w});
    }
  }
  normalize(out);
  return out;
}

EdgeList crossing_edges(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b) {
  std::vector<char> in_b(g.vertex_count(), 0);
  for (Vertex v : b) in_b[v] = 1;
  EdgeList out;
  for (Vertex v : a) {
    for (Vertex w : g.neighbors(v)) {
      if (in_b[w]) out.push_back(Edge::make(v, w));
    }
  }
  normalize(out);
  return out;
}

void write_graph(std::ostream& out, const Graph& g, std::size_t degree_bound) {
  out << g.vertex_count() << ' ' << g.edge_count() << ' ' << degree_bound << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

GraphFile read_graph(std::istream& in) {
  std::string line;
  auto next_line = [&](std::size_t& line_no) -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] != '#') return true;
    }
    return false;
  };
  auto fail = [](std::size_t line_no, const std::string& what) {
    throw InvalidConfig("graph file line " + std::to_string(line_no) + ": " + what);
  };

  std::size_t line_no = 0;
  if (!next_line(line_no)) fail(line_no, "missing header");
  long long n = -1, m = -1, d = -1;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> m >> d) || (hs >> extra) || n < 0 || m < 0 || d < 0) {
      fail(line_no, "header must be three non-negative integers 'n m d'");
    }
  }

  EdgeList edges;
  edges.reserve(static_cast<std::size_t>(m));
  while (next_line(line_no)) {
    std::istringstream ls(line);
    long long u = -1, v = -1;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) fail(line_no, "expected 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n) fail(line_no, "vertex id out of range");
    if (u == v) fail(line_no, "self-loop");
    Edge e = Edge::make(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (!edges.empty() && !(edges.back() < e)) {
      fail(line_no, edges.back() == e ? "duplicate edge" : "edges not sorted");
    }
    edges.push_back(e);
  }
  if (static_cast<long long>(edges.size()) != m) {
    fail(line_no, "header promises " + std::to_string(m) + " edges, found " +
                      std::to_string(edges.size()));
  }
  GraphFile file{Graph(static_cast<std::size_t>(n), std::move(edges)),
                 static_cast<std::size_t>(d)};
  if (file.graph.max_degree() > file.degree_bound) {
    throw InvalidConfig("graph file: maximum degree " + std::to_string(file.graph.max_degree()) +
                        " exceeds promised d=" + std::to_string(d));
  }
  return file;
}

void write_graph_file(const std::string& path, const Graph& g, std::size_t degree_bound) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_graph(out, g, degree_bound);
  if (!out) throw IoError("write failed: " + path);
}

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_graph(in);
}

}  // namespace edgelearn
