#pragma once

// Loopless undirected multigraphs with a fixed dart numbering.
//
// Edge e = (u, v), as written in the input, yields darts 2e (u -> v) and
// 2e + 1 (v -> u). Edge order is user-controlled and everything downstream
// (dart ids, matrix rows, weight vectors) is indexed by it.

#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cycdec/errors.hpp"

namespace cycdec {

struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class Graph {
 public:
  Graph() = default;

  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw InputError("vertex count must be nonnegative");
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto [u, v] = edges_[e];
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw InputError("edge " + std::to_string(e) + " references a vertex outside 0.." +
                         std::to_string(n - 1));
      if (u == v) throw InputError("loop at edge " + std::to_string(e));
    }
    incidence_.assign(static_cast<std::size_t>(n), {});
    slot_.assign(2 * edges_.size(), -1);
    for (int d = 0; d < dart_count(); ++d) {
      auto& list = incidence_[static_cast<std::size_t>(head(d))];
      slot_[static_cast<std::size_t>(d)] = static_cast<int>(list.size());
      list.push_back(d);
    }
  }

  [[nodiscard]] int vertex_count() const { return n_; }
  [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] int dart_count() const { return 2 * edge_count(); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] Edge edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

  [[nodiscard]] static constexpr int edge_of(int dart) { return dart >> 1; }
  [[nodiscard]] static constexpr int opposite(int dart) { return dart ^ 1; }
  [[nodiscard]] static constexpr int dart_of(int edge, int direction) { return 2 * edge + direction; }

  [[nodiscard]] int tail(int dart) const {
    const Edge& e = edges_[static_cast<std::size_t>(edge_of(dart))];
    return (dart & 1) == 0 ? e.u : e.v;
  }
  [[nodiscard]] int head(int dart) const { return tail(opposite(dart)); }

  /// Darts whose head is j, ascending; a dart's position here is its local
  /// index (slot) at j.
  [[nodiscard]] std::span<const int> incidence(int j) const {
    return incidence_[static_cast<std::size_t>(j)];
  }
  [[nodiscard]] int slot(int dart) const { return slot_[static_cast<std::size_t>(dart)]; }
  [[nodiscard]] int degree(int j) const { return static_cast<int>(incidence(j).size()); }

  [[nodiscard]] std::vector<int> degrees() const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) d[static_cast<std::size_t>(j)] = degree(j);
    return d;
  }

  [[nodiscard]] std::vector<int> odd_vertices() const {
    std::vector<int> odd;
    for (int j = 0; j < n_; ++j)
      if (degree(j) % 2 != 0) odd.push_back(j);
    return odd;
  }

  /// Common degree if every vertex has it.
  [[nodiscard]] std::optional<int> regular_degree() const {
    if (n_ == 0) return 0;
    const int d = degree(0);
    for (int j = 1; j < n_; ++j)
      if (degree(j) != d) return std::nullopt;
    return d;
  }

  [[nodiscard]] bool is_bipartite() const {
    std::vector<int> side(static_cast<std::size_t>(n_), -1);
    std::vector<int> stack;
    for (int s = 0; s < n_; ++s) {
      if (side[static_cast<std::size_t>(s)] >= 0) continue;
      side[static_cast<std::size_t>(s)] = 0;
      stack.push_back(s);
      while (!stack.empty()) {
        const int j = stack.back();
        stack.pop_back();
        for (int d : incidence(j)) {
          const int i = tail(d);
          auto& si = side[static_cast<std::size_t>(i)];
          if (si < 0) {
            si = 1 - side[static_cast<std::size_t>(j)];
            stack.push_back(i);
          } else if (si == side[static_cast<std::size_t>(j)]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incidence_;
  std::vector<int> slot_;
};

struct EvenDegreeCheck {
  bool ok = true;
  std::vector<int> odd_vertices;
};

inline EvenDegreeCheck even_degree_check(const Graph& g) {
  EvenDegreeCheck c;
  c.odd_vertices = g.odd_vertices();
  c.ok = c.odd_vertices.empty();
  return c;
}

inline std::string vertex_list(std::span<const int> vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
  return s;
}

/// Throws unless every vertex has even degree.
inline void require_even_degrees(const Graph& g) {
  const auto c = even_degree_check(g);
  if (!c.ok) throw InputError("odd-degree vertices: " + vertex_list(c.odd_vertices));
}

/// Parses {"n": <int >= 0>, "edges": [[u, v], ...]}.
inline Graph parse_graph(std::string_view document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw InputError("graph document must be an object with \"n\" and \"edges\"");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 0)
    throw InputError("\"n\" must be a nonnegative integer");
  if (!j["edges"].is_array()) throw InputError("\"edges\" must be an array");
  const long long n = j["n"].get<long long>();
  if (n > 1'000'000) throw InputError("\"n\" is unreasonably large");
  std::vector<Edge> edges;
  std::size_t idx = 0;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw InputError("edge " + std::to_string(idx) + " is not a pair of integers");
    const long long u = e[0].get<long long>();
    const long long v = e[1].get<long long>();
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InputError("edge " + std::to_string(idx) + " references a vertex outside 0.." +
                       std::to_string(n - 1));
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    ++idx;
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

/// Canonical compact form, e.g. {"n":3,"edges":[[0,1],[1,2],[2,0]]}.
inline std::string serialize_graph(const Graph& g) {
  std::string s = "{\"n\":" + std::to_string(g.vertex_count()) + ",\"edges\":[";
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge ed = g.edge(e);
    s += (e ? ",[" : "[") + std::to_string(ed.u) + "," + std::to_string(ed.v) + "]";
  }
  return s + "]}";
}

inline Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

enum class Doubling { full, odd_only };

/// Two copies of a base graph joined by intercopy edges (i', i'').
/// Vertex i' = i, i'' = n + i. Edge order: copy-1 edges, copy-2 edges, then
/// intercopy edges in ascending base-vertex order.
struct DoubledGraph {
  Graph base;
  Graph doubled;
  Doubling kind = Doubling::full;
  std::vector<int> intercopy_vertex;  // base vertex of each intercopy edge

  [[nodiscard]] int first_copy(int v) const { return v; }
  [[nodiscard]] int second_copy(int v) const { return base.vertex_count() + v; }
  [[nodiscard]] int base_vertex(int dv) const {
    return dv < base.vertex_count() ? dv : dv - base.vertex_count();
  }
  [[nodiscard]] int copy_edge(int e, int copy) const { return copy == 0 ? e : base.edge_count() + e; }
  [[nodiscard]] bool is_intercopy(int de) const { return de >= 2 * base.edge_count(); }

  /// Doubled-graph edge index of the intercopy edge at base vertex v, if any.
  [[nodiscard]] std::optional<int> intercopy_edge(int v) const {
    for (std::size_t i = 0; i < intercopy_vertex.size(); ++i)
      if (intercopy_vertex[i] == v) return 2 * base.edge_count() + static_cast<int>(i);
    return std::nullopt;
  }

  /// Base dart corresponding to a doubled-graph dart; nullopt for intercopy darts.
  [[nodiscard]] std::optional<int> base_dart(int dd) const {
    const int de = Graph::edge_of(dd);
    if (is_intercopy(de)) return std::nullopt;
    const int e = de % base.edge_count();
    return Graph::dart_of(e, dd & 1);
  }
};

inline DoubledGraph make_double(const Graph& g, Doubling kind) {
  const int n = g.vertex_count();
  std::vector<Edge> edges = g.edges();
  for (const Edge& e : g.edges()) edges.push_back({n + e.u, n + e.v});
  std::vector<int> inter;
  for (int v = 0; v < n; ++v) {
    if (kind == Doubling::full || g.degree(v) % 2 != 0) {
      edges.push_back({v, n + v});
      inter.push_back(v);
    }
  }
  return DoubledGraph{g, Graph(2 * n, std::move(edges)), kind, std::move(inter)};
}

}  // namespace cycdec
