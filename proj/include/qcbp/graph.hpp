#pragma once

// Undirected simple graphs over at most 64 vertices, DIMACS I/O, random
// unit-disk instance generation and independent-set predicates.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcbp {

inline constexpr int kMaxVertices = 64;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bitset over vertex indices of one graph; bit i set means vertex i is a member.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

  static VertexSet of(std::initializer_list<int> vs) {
    VertexSet s;
    for (int v : vs) s.insert(v);
    return s;
  }
  static constexpr VertexSet full(int n) {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static constexpr VertexSet single(int v) { return VertexSet(std::uint64_t{1} << v); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int v) const { return (bits_ >> v) & 1U; }
  constexpr void insert(int v) { bits_ |= std::uint64_t{1} << v; }
  constexpr void erase(int v) { bits_ &= ~(std::uint64_t{1} << v); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr int first() const { return std::countr_zero(bits_); }
  // Highest member index, -1 when empty.
  constexpr int last() const { return 63 - std::countl_zero(bits_); }

  constexpr bool is_subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }

  constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
  constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
  constexpr VertexSet operator-(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }
  constexpr VertexSet& operator&=(VertexSet o) { bits_ &= o.bits_; return *this; }
  constexpr VertexSet& operator|=(VertexSet o) { bits_ |= o.bits_; return *this; }
  constexpr VertexSet& operator-=(VertexSet o) { bits_ &= ~o.bits_; return *this; }
  constexpr bool operator==(const VertexSet&) const = default;

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b; b &= b - 1) f(std::countr_zero(b));
  }

 private:
  std::uint64_t bits_ = 0;
};

/// Lexicographic order on the sorted member lists ({0,2} < {1}, {0} < {0,2}).
inline bool lex_less(VertexSet a, VertexSet b) {
  std::uint64_t x = a.bits(), y = b.bits();
  while (x && y) {
    int i = std::countr_zero(x), j = std::countr_zero(y);
    if (i != j) return i < j;
    x &= x - 1;
    y &= y - 1;
  }
  return !x && y;
}

inline std::string to_string(VertexSet s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int v) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  });
  return out + "}";
}

struct VertexSetHash {
  std::size_t operator()(VertexSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};

using Edge = std::pair<int, int>;

/// Undirected simple graph; immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n)) {
    if (n < 0 || n > kMaxVertices) throw GraphError("vertex count must be in [0, 64]");
  }
  Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  int n() const { return n_; }
  int edge_count() const { return edge_count_; }
  VertexSet neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  VertexSet vertices() const { return VertexSet::full(n_); }
  bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u)].contains(v); }
  int degree(int v) const { return neighbors(v).size(); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < n_; ++u)
      (neighbors(u) - VertexSet::full(u + 1)).for_each([&](int v) { out.emplace_back(u, v); });
    return out;
  }

  // Edges of the subgraph induced by `s`.
  int edge_count_within(VertexSet s) const {
    int twice = 0;
    s.for_each([&](int v) { twice += (neighbors(v) & s).size(); });
    return twice / 2;
  }

  // Idempotent; rejects self-loops and out-of-range endpoints.
  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw GraphError("edge endpoint out of range");
    if (u == v) throw GraphError("self-loop on vertex " + std::to_string(u));
    if (adjacent(u, v)) return;
    adj_[static_cast<std::size_t>(u)].insert(v);
    adj_[static_cast<std::size_t>(v)].insert(u);
    ++edge_count_;
  }

  void toggle_edge(int u, int v) {
    if (u == v) throw GraphError("self-loop on vertex " + std::to_string(u));
    if (adjacent(u, v)) {
      adj_[static_cast<std::size_t>(u)].erase(v);
      adj_[static_cast<std::size_t>(v)].erase(u);
      --edge_count_;
    } else {
      add_edge(u, v);
    }
  }

  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  int n_ = 0;
  int edge_count_ = 0;
  std::vector<VertexSet> adj_;
};

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

inline Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph petersen_graph() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

inline bool is_independent(const Graph& g, VertexSet s) {
  bool ok = true;
  s.for_each([&](int v) { ok = ok && !g.neighbors(v).intersects(s); });
  return ok;
}

/// True iff `s` is independent and every vertex of `within` outside `s` has a
/// neighbour in `s`.
inline bool is_maximal_independent(const Graph& g, VertexSet s, VertexSet within) {
  bool ok = is_independent(g, s);
  (within - s).for_each([&](int v) { ok = ok && g.neighbors(v).intersects(s); });
  return ok;
}

inline bool is_maximal_independent(const Graph& g, VertexSet s) {
  return is_maximal_independent(g, s, g.vertices());
}

struct InducedSubgraph {
  Graph graph;
  std::vector<int> old_to_new;  // -1 for dropped vertices
  std::vector<int> new_to_old;

  VertexSet to_old(VertexSet local) const {
    VertexSet out;
    local.for_each([&](int v) { out.insert(new_to_old[static_cast<std::size_t>(v)]); });
    return out;
  }
  // Members of `old` that were dropped are ignored.
  VertexSet to_new(VertexSet old) const {
    VertexSet out;
    old.for_each([&](int v) {
      if (v < static_cast<int>(old_to_new.size()) && old_to_new[static_cast<std::size_t>(v)] >= 0)
        out.insert(old_to_new[static_cast<std::size_t>(v)]);
    });
    return out;
  }
};

inline InducedSubgraph induced_subgraph(const Graph& g, VertexSet keep) {
  keep &= g.vertices();
  if (keep.empty()) throw GraphError("induced_subgraph: empty vertex set");
  InducedSubgraph out;
  out.old_to_new.assign(static_cast<std::size_t>(g.n()), -1);
  out.new_to_old = keep.members();
  for (std::size_t i = 0; i < out.new_to_old.size(); ++i)
    out.old_to_new[static_cast<std::size_t>(out.new_to_old[i])] = static_cast<int>(i);
  out.graph = Graph(keep.size());
  for (std::size_t i = 0; i < out.new_to_old.size(); ++i) {
    int u = out.new_to_old[i];
    (g.neighbors(u) & keep).for_each([&](int v) {
      int j = out.old_to_new[static_cast<std::size_t>(v)];
      if (j > static_cast<int>(i)) out.graph.add_edge(static_cast<int>(i), j);
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// DIMACS edge format

inline Graph parse_dimacs(std::istream& in) {
  std::string line;
  int n = -1;
  long long declared_edges = -1;
  Graph g;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string fmt;
      if (n >= 0) throw GraphError("duplicate problem line at line " + std::to_string(line_no));
      if (!(ls >> fmt >> n >> declared_edges) || (fmt != "edge" && fmt != "col"))
        throw GraphError("malformed header at line " + std::to_string(line_no));
      if (n < 1 || n > kMaxVertices || declared_edges < 0)
        throw GraphError("header declares unsupported size at line " + std::to_string(line_no));
      g = Graph(n);
    } else if (tag == "e") {
      if (n < 0) throw GraphError("edge line before header at line " + std::to_string(line_no));
      int u = 0, v = 0;
      if (!(ls >> u >> v)) throw GraphError("malformed edge at line " + std::to_string(line_no));
      if (u < 1 || v < 1 || u > n || v > n)
        throw GraphError("vertex index out of range at line " + std::to_string(line_no));
      if (u == v) throw GraphError("self-loop at line " + std::to_string(line_no));
      g.add_edge(u - 1, v - 1);
    } else {
      throw GraphError("unknown line tag '" + tag + "' at line " + std::to_string(line_no));
    }
  }
  if (n < 0) throw GraphError("missing 'p edge' header");
  return g;
}

inline Graph parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

inline void write_dimacs(std::ostream& out, const Graph& g) {
  out << "p edge " << g.n() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

// ---------------------------------------------------------------------------
// Geometry

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Unit-disk graph: edge iff distance <= radius.
inline Graph unit_disk_graph(const std::vector<Point>& pts, double radius) {
  Graph g(static_cast<int>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (distance(pts[i], pts[j]) <= radius) g.add_edge(static_cast<int>(i), static_cast<int>(j));
  return g;
}

// CSV rows `vertex,x_um,y_um` with a header line.
inline void write_positions_csv(std::ostream& out, const std::vector<Point>& pts) {
  out << "vertex,x_um,y_um\n";
  std::ostringstream row;
  row.precision(17);
  for (std::size_t i = 0; i < pts.size(); ++i) row << i << ',' << pts[i].x << ',' << pts[i].y << '\n';
  out << row.str();
}

inline std::vector<Point> read_positions_csv(std::istream& in) {
  std::string line;
  std::vector<std::pair<int, Point>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("vertex", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    int v = 0;
    Point p;
    if (!(ls >> v >> p.x >> p.y)) throw GraphError("malformed positions row: " + line);
    rows.emplace_back(v, p);
  }
  std::vector<Point> pts(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (auto& [v, p] : rows) {
    if (v < 0 || v >= static_cast<int>(rows.size()) || seen[static_cast<std::size_t>(v)])
      throw GraphError("positions CSV vertex ids must be a permutation of 0..n-1");
    seen[static_cast<std::size_t>(v)] = true;
    pts[static_cast<std::size_t>(v)] = p;
  }
  return pts;
}

struct UdInstance {
  Graph graph;
  std::vector<Point> positions;
};

inline constexpr double kMinAtomSpacing = 4.0;  // µm

/// Rejection-samples n points in [0, box]^2 with pairwise spacing >= 4 µm and
/// connects every pair within `radius`.
inline UdInstance random_ud_graph(int n, std::uint64_t seed, double radius, double box,
                                  int max_attempts_per_point = 10000) {
  if (n < 1 || n > kMaxVertices) throw GraphError("random_ud_graph: n must be in [1, 64]");
  if (!(radius > 0.0)) throw GraphError("random_ud_graph: radius must be positive");
  if (!(box > 0.0)) throw GraphError("random_ud_graph: box must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, box);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  while (static_cast<int>(pts.size()) < n) {
    bool placed = false;
    for (int attempt = 0; attempt < max_attempts_per_point && !placed; ++attempt) {
      Point p{coord(rng), coord(rng)};
      placed = std::all_of(pts.begin(), pts.end(),
                           [&](Point q) { return distance(p, q) >= kMinAtomSpacing; });
      if (placed) pts.push_back(p);
    }
    if (!placed) throw GraphError("random_ud_graph: minimum spacing infeasible for this box");
  }
  return {unit_disk_graph(pts, radius), std::move(pts)};
}

/// Flips the adjacency of k distinct vertex pairs, k uniform in {1, 2, 3}.
inline Graph perturb_graph(const Graph& g, std::uint64_t seed) {
  if (g.n() < 2) return g;
  std::mt19937_64 rng(seed);
  const int pairs = g.n() * (g.n() - 1) / 2;
  int k = std::min(pairs, std::uniform_int_distribution<int>(1, 3)(rng));
  std::uniform_int_distribution<int> pick(0, g.n() - 1);
  Graph out = g;
  std::vector<Edge> flipped;
  while (static_cast<int>(flipped.size()) < k) {
    int u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (std::find(flipped.begin(), flipped.end(), Edge{u, v}) != flipped.end()) continue;
    flipped.emplace_back(u, v);
    out.toggle_edge(u, v);
  }
  return out;
}

}  // namespace qcbp
