#pragma once

// Atom-register layout for a target graph: momentum gradient descent on a
// sum of squared hinge penalties, followed by a hard-constraint projection,
// plus an audit of the unit-disk graph the layout actually encodes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "qcbp/graph.hpp"

namespace qcbp {

class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Register {
  std::vector<Point> positions;  // µm

  int size() const { return static_cast<int>(positions.size()); }
  double distance(int i, int j) const {
    return qcbp::distance(positions[static_cast<std::size_t>(i)], positions[static_cast<std::size_t>(j)]);
  }
  double min_spacing() const {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j) best = std::min(best, distance(i, j));
    return best;
  }
  Point centroid() const {
    Point c;
    for (auto p : positions) {
      c.x += p.x;
      c.y += p.y;
    }
    c.x /= static_cast<double>(positions.size());
    c.y /= static_cast<double>(positions.size());
    return c;
  }
  double max_radius() const {
    Point c = centroid();
    double r = 0.0;
    for (auto p : positions) r = std::max(r, qcbp::distance(p, c));
    return r;
  }
};

struct EmbeddingParams {
  double ud_radius = 10.0;     // µm
  double min_spacing = 4.0;    // µm, hardware
  double max_radius = 50.0;    // µm, half the 100 µm register diameter
  double margin = 0.5;         // µm, edges pulled below ud_radius - margin, non-edges pushed above ud_radius + margin
  double w_edge = 1.0;
  double w_non_edge = 1.0;
  double w_spacing = 4.0;
  double w_radius = 1.0;
  int iterations = 3000;
  int restarts = 5;
  double learning_rate = 0.5;
  double decay = 0.999;
  double momentum = 0.9;
  double max_step = 2.0;       // µm per iteration per atom
  double init_box = 0.0;       // side of the random init square; 0 picks 7*sqrt(n)
};

struct EmbeddingReport {
  bool is_exact_ud = true;
  std::vector<Edge> missing_edges;  // in target, absent in effective graph
  std::vector<Edge> extra_edges;    // in effective graph, absent in target
  std::optional<double> r_max;      // max distance over target edges
  std::optional<double> R_min;      // min distance over target non-edges
  Graph effective_graph;
};

inline EmbeddingReport audit(const Graph& g, const Register& reg, double ud_radius = 10.0) {
  if (reg.size() != g.n()) throw EmbeddingError("audit: register size does not match graph");
  EmbeddingReport rep;
  rep.effective_graph = unit_disk_graph(reg.positions, ud_radius);
  for (int i = 0; i < g.n(); ++i) {
    for (int j = i + 1; j < g.n(); ++j) {
      const double d = reg.distance(i, j);
      const bool target = g.adjacent(i, j);
      const bool effective = rep.effective_graph.adjacent(i, j);
      if (target) {
        rep.r_max = std::max(rep.r_max.value_or(0.0), d);
        if (!effective) rep.missing_edges.emplace_back(i, j);
      } else {
        rep.R_min = std::min(rep.R_min.value_or(std::numeric_limits<double>::infinity()), d);
        if (effective) rep.extra_edges.emplace_back(i, j);
      }
    }
  }
  rep.is_exact_ud = rep.missing_edges.empty() && rep.extra_edges.empty();
  return rep;
}

namespace detail {

inline double squared_hinge(double violation) { return violation > 0.0 ? violation * violation : 0.0; }

// Loss value and gradient (into `grad`, same layout as `pts`).
inline double embedding_loss(const Graph& g, const std::vector<Point>& pts, const EmbeddingParams& p,
                             std::vector<Point>& grad) {
  const int n = g.n();
  std::fill(grad.begin(), grad.end(), Point{});
  double loss = 0.0;
  const double edge_target = p.ud_radius - p.margin;
  const double non_edge_target = p.ud_radius + p.margin;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = pts[static_cast<std::size_t>(i)];
      const auto& b = pts[static_cast<std::size_t>(j)];
      const double dx = a.x - b.x, dy = a.y - b.y;
      const double d = std::max(std::hypot(dx, dy), 1e-9);
      // dL/dd for each active hinge
      double dl = 0.0;
      if (g.adjacent(i, j)) {
        const double v = d - edge_target;
        if (v > 0) { loss += p.w_edge * v * v; dl += 2.0 * p.w_edge * v; }
      } else {
        const double v = non_edge_target - d;
        if (v > 0) { loss += p.w_non_edge * v * v; dl -= 2.0 * p.w_non_edge * v; }
      }
      const double s = p.min_spacing - d;
      if (s > 0) { loss += p.w_spacing * s * s; dl -= 2.0 * p.w_spacing * s; }
      if (dl != 0.0) {
        const double ux = dx / d, uy = dy / d;
        grad[static_cast<std::size_t>(i)].x += dl * ux;
        grad[static_cast<std::size_t>(i)].y += dl * uy;
        grad[static_cast<std::size_t>(j)].x -= dl * ux;
        grad[static_cast<std::size_t>(j)].y -= dl * uy;
      }
    }
  }
  Point c;
  for (auto q : pts) { c.x += q.x; c.y += q.y; }
  c.x /= n;
  c.y /= n;
  for (int i = 0; i < n; ++i) {
    const auto& a = pts[static_cast<std::size_t>(i)];
    const double dx = a.x - c.x, dy = a.y - c.y;
    const double r = std::hypot(dx, dy);
    const double v = r - p.max_radius;
    if (v > 0 && r > 0) {
      loss += p.w_radius * v * v;
      // centroid treated as fixed within a step
      grad[static_cast<std::size_t>(i)].x += 2.0 * p.w_radius * v * dx / r;
      grad[static_cast<std::size_t>(i)].y += 2.0 * p.w_radius * v * dy / r;
    }
  }
  return loss;
}

struct Layout {
  std::vector<Point> pts;
  double loss = 0.0;
};

inline Layout descend(const Graph& g, const EmbeddingParams& p, std::uint64_t seed) {
  const int n = g.n();
  const double box = p.init_box > 0 ? p.init_box : 7.0 * std::sqrt(static_cast<double>(n));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, box);
  Layout out;
  out.pts.resize(static_cast<std::size_t>(n));
  for (auto& q : out.pts) q = {coord(rng), coord(rng)};
  std::vector<Point> grad(out.pts.size()), vel(out.pts.size());
  double lr = p.learning_rate;
  for (int it = 0; it < p.iterations; ++it) {
    out.loss = embedding_loss(g, out.pts, p, grad);
    if (out.loss == 0.0) break;
    for (std::size_t i = 0; i < out.pts.size(); ++i) {
      vel[i].x = p.momentum * vel[i].x - lr * grad[i].x;
      vel[i].y = p.momentum * vel[i].y - lr * grad[i].y;
      const double step = std::hypot(vel[i].x, vel[i].y);
      if (step > p.max_step) {
        vel[i].x *= p.max_step / step;
        vel[i].y *= p.max_step / step;
      }
      out.pts[i].x += vel[i].x;
      out.pts[i].y += vel[i].y;
    }
    lr *= p.decay;
  }
  out.loss = embedding_loss(g, out.pts, p, grad);
  return out;
}

// Re-centres on the origin and rescales so that the spacing constraint holds
// exactly; throws if the radius constraint then fails.
inline Register project(std::vector<Point> pts, const EmbeddingParams& p) {
  Register reg{std::move(pts)};
  const Point c = reg.centroid();
  for (auto& q : reg.positions) { q.x -= c.x; q.y -= c.y; }
  const double spacing = reg.min_spacing();
  if (spacing < p.min_spacing) {
    if (!(spacing > 0.0)) throw EmbeddingError("embed: coincident atoms after optimisation");
    const double scale = p.min_spacing / spacing * (1.0 + 1e-12);
    for (auto& q : reg.positions) { q.x *= scale; q.y *= scale; }
    // guard against rounding leaving a pair a hair below the limit
    while (reg.min_spacing() < p.min_spacing)
      for (auto& q : reg.positions) { q.x *= 1.0 + 1e-12; q.y *= 1.0 + 1e-12; }
  }
  if (reg.max_radius() > p.max_radius)
    throw EmbeddingError("embed: register does not fit the 100 um diameter after projection");
  return reg;
}

}  // namespace detail

/// Best of `params.restarts` independent descents, ranked by fewest
/// missing+extra edges, then fewest extra edges, then loss.
inline Register embed(const Graph& g, const EmbeddingParams& params = {}, std::uint64_t seed = 0) {
  if (g.n() < 1) throw EmbeddingError("embed: graph has no vertices");
  if (g.n() == 1) return Register{{Point{0.0, 0.0}}};
  std::optional<Register> best;
  std::size_t best_errors = 0, best_extra = 0;
  double best_loss = 0.0;
  std::string last_error;
  std::seed_seq seq{seed, static_cast<std::uint64_t>(g.n())};
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(std::max(1, params.restarts)));
  {
    std::vector<std::uint32_t> raw(seeds.size() * 2);
    seq.generate(raw.begin(), raw.end());
    for (std::size_t r = 0; r < seeds.size(); ++r)
      seeds[r] = (static_cast<std::uint64_t>(raw[2 * r]) << 32) | raw[2 * r + 1];
  }
  for (auto s : seeds) {
    auto layout = detail::descend(g, params, s);
    Register reg;
    try {
      reg = detail::project(std::move(layout.pts), params);
    } catch (const EmbeddingError& e) {
      last_error = e.what();
      continue;
    }
    auto rep = audit(g, reg, params.ud_radius);
    const std::size_t errors = rep.missing_edges.size() + rep.extra_edges.size();
    const std::size_t extra = rep.extra_edges.size();
    const bool better = !best || errors < best_errors ||
                        (errors == best_errors && (extra < best_extra ||
                                                   (extra == best_extra && layout.loss < best_loss)));
    if (better) {
      best = std::move(reg);
      best_errors = errors;
      best_extra = extra;
      best_loss = layout.loss;
    }
    if (best_errors == 0 && best_loss == 0.0) break;
  }
  if (!best) throw EmbeddingError(last_error.empty() ? "embed: no feasible layout" : last_error);
  return *std::move(best);
}

}  // namespace qcbp
