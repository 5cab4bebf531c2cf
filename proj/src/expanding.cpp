#include "esc/expanding.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "esc/peeling.hpp"
#include "frontier.hpp"

namespace esc {

namespace {

/// Union-find over the accumulator graph with per-component counts for the
/// cheap pre-core tests.
class Accumulator {
 public:
  Accumulator(const BipartiteGraph& g, const DegreeConstraint& c)
      : g_(g), c_(c), parent_(g.vertex_count()), degree_(g.vertex_count(), 0), counts_(g.vertex_count()) {
    std::iota(parent_.begin(), parent_.end(), VertexId{0});
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      (g.layer_of(v) == Layer::Upper ? counts_[v].upper : counts_[v].lower) = 1;
  }

  void add(EdgeId e) {
    const VertexId u = g_.upper_vertex(e), l = g_.lower_vertex(e);
    if (++degree_[u] == c_.alpha) ++counts_[find(u)].heavy_upper;
    if (++degree_[l] == c_.beta) ++counts_[find(l)].heavy_lower;
    VertexId a = find(u), b = find(l);
    if (a != b) {
      if (counts_[a].edges < counts_[b].edges) std::swap(a, b);
      parent_[b] = a;
      auto& x = counts_[a];
      const auto& y = counts_[b];
      x.edges += y.edges;
      x.upper += y.upper;
      x.lower += y.lower;
      x.heavy_upper += y.heavy_upper;
      x.heavy_lower += y.heavy_lower;
    }
    ++counts_[a].edges;
  }

  std::uint32_t degree(VertexId v) const { return degree_[v]; }
  const ComponentCounts& counts(VertexId v) { return counts_[find(v)]; }

 private:
  VertexId find(VertexId v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }

  const BipartiteGraph& g_;
  DegreeConstraint c_;
  std::vector<VertexId> parent_;
  std::vector<std::uint32_t> degree_;
  std::vector<ComponentCounts> counts_;
};

}  // namespace

std::optional<Attr> query_upper_bound(const BipartiteGraph& g, VertexRef q, const DegreeConstraint& c,
                                      std::size_t dim) {
  return query_upper_bound(g, q, c, dim, ThresholdBox(g.dims()));
}

std::optional<Attr> query_upper_bound(const BipartiteGraph& g, VertexRef q, const DegreeConstraint& c,
                                      std::size_t dim, const ThresholdBox& box) {
  if (dim >= g.dims()) throw DomainError("bound dimension out of range");
  const std::uint32_t k = c.bound(q.layer);
  std::vector<Attr> values;
  for (const Incidence& inc : g.incident(g.vertex_id(q)))
    if (box.admits(g.attrs(inc.edge))) values.push_back(g.attr(inc.edge, dim));
  if (values.size() < k) return std::nullopt;
  std::nth_element(values.begin(), values.begin() + (k - 1), values.end(), std::greater<>{});
  return values[k - 1];
}

std::optional<Community> expand_dim1(QueryContext& ctx, const ThresholdBox& box, std::size_t dim,
                                     const FixedEdgeSet& fixed) {
  const auto& g = ctx.graph;
  if (dim >= g.dims()) throw DomainError("expand dimension out of range");
  const auto bound = query_upper_bound(g, ctx.query, ctx.constraint, dim, box);
  if (!bound) return std::nullopt;

  Attr fixed_floor = *bound;
  for (EdgeId e : fixed) {
    if (!box.admits(g.attrs(e))) return std::nullopt;
    fixed_floor = std::min(fixed_floor, g.attr(e, dim));
  }

  const auto& ascending = ctx.ascending(dim);
  std::vector<EdgeId> order;
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it)
    if (box.admits(g.attrs(*it))) order.push_back(*it);

  // Prefix lengths closing each threshold batch. The first batch takes everything at or
  // above the bound, later ones one distinct value each.
  std::vector<std::size_t> ends;
  {
    std::size_t i = 0;
    while (i < order.size() && g.attr(order[i], dim) >= *bound) ++i;
    ends.push_back(i);
    while (i < order.size()) {
      const Attr x = g.attr(order[i], dim);
      while (i < order.size() && g.attr(order[i], dim) == x) ++i;
      ends.push_back(i);
    }
  }

  auto try_prefix = [&](std::size_t end) -> std::optional<WorkingGraph> {
    WorkingGraph w(g);
    for (std::size_t i = 0; i < end; ++i) w.add(order[i]);
    reduce_to_core(w, ctx.constraint, &ctx.stats);
    if (!component_holds(w, ctx.query_id, fixed)) return std::nullopt;
    return w;
  };

  // Core existence is monotone in the prefix, so full core extractions are spent only
  // when the accumulator has doubled since the last failure. The first hit contains the
  // best community, whose threshold is then read off by stripping the hit bottom up.
  Accumulator acc(g, ctx.constraint);
  const std::uint32_t k = ctx.query_bound();
  std::size_t added = 0, failed_at = 0;
  for (std::size_t b = 0; b < ends.size(); ++b) {
    for (; added < ends[b]; ++added) acc.add(order[added]);
    ++ctx.stats.iterations;
    if (added == 0 || g.attr(order[added - 1], dim) > fixed_floor) continue;
    if (acc.degree(ctx.query_id) < k) continue;
    if (ctx.pruning.lemma_checks) {
      const auto& counts = acc.counts(ctx.query_id);
      if (!lemma3_check(counts, ctx.constraint) || !lemma4_check(counts, ctx.constraint)) continue;
    }
    if (added < 2 * failed_at && b + 1 < ends.size()) continue;
    auto hit = try_prefix(added);
    if (!hit) {
      failed_at = added;
      continue;
    }
    if (b > 0) {
      restrict_to_component(*hit, ctx.query_id);
      const Attr best = peel_minimum(*hit, dim, ctx.constraint, ctx.query_id, fixed, &ctx.stats, ascending);
      const auto end = std::partition_point(order.begin(), order.begin() + added,
                                            [&](EdgeId e) { return g.attr(e, dim) >= best; });
      hit = try_prefix(static_cast<std::size_t>(end - order.begin()));
      if (!hit) throw std::logic_error("expand_dim1: stripped threshold lost its core");
    }
    return community_of(*hit, ctx.query_id);
  }
  return std::nullopt;
}

SkylineSet expand_dim2(QueryContext& ctx, const ThresholdBox& box, const FixedEdgeSet& fixed,
                       std::size_t dim_a, std::size_t dim_b) {
  const auto& g = ctx.graph;
  SkylineSet out;
  std::optional<UniverseScope> scope;
  if (!detail::narrow_universe(ctx, box, scope)) return out;
  ThresholdBox cur = box;
  while (auto found = expand_dim1(ctx, cur, dim_b, fixed)) {
    const Attr fb = found->significance[dim_b];
    WorkingGraph w(g);
    for (EdgeId e : found->edges) w.add(e);
    const Attr fa = peel_minimum(w, dim_a, ctx.constraint, ctx.query_id, fixed, &ctx.stats, ctx.ascending(dim_a));
    out.insert(SignificanceVector{fa, fb});
    cur.tighten(dim_a, fa, true);
  }
  return out;
}

SkylineSet expand_dim3(QueryContext& ctx, const ThresholdBox& box, const FixedEdgeSet& fixed) {
  static constexpr std::size_t dims[] = {0, 1, 2};
  return expand_dimN(ctx, box, fixed, dims);
}

SkylineSet expand_dimN(QueryContext& ctx, const ThresholdBox& box, const FixedEdgeSet& fixed,
                       std::span<const std::size_t> dims) {
  if (dims.empty()) throw DomainError("expand needs at least one dimension");
  if (dims.size() == 1) {
    SkylineSet out;
    if (auto c = expand_dim1(ctx, box, dims[0], fixed)) out.insert(SignificanceVector{c->significance[dims[0]]});
    return out;
  }
  if (dims.size() == 2) return expand_dim2(ctx, box, fixed, dims[0], dims[1]);

  const std::size_t last = dims.back();
  const auto rest = dims.first(dims.size() - 1);
  SkylineSet out;
  std::optional<UniverseScope> scope;
  if (!detail::narrow_universe(ctx, box, scope)) return out;
  detail::Frontier frontier(
      box, rest,
      [&](const ThresholdBox& region) -> std::optional<Attr> {
        auto c = expand_dim1(ctx, region, last, fixed);
        if (!c) return std::nullopt;
        return c->significance[last];
      },
      ctx.pruning.dominance_skip);

  while (!frontier.empty()) {
    const auto top = frontier.top();
    ++ctx.stats.iterations;
    // top.value is the best X_last anywhere above this corner, so every core found in
    // the slab has X_last significance exactly top.value.
    const ThresholdBox slab = frontier.region(top.corner).tightened(last, top.value, false);
    const SkylineSet sub = expand_dimN(ctx, slab, detail::pin_anchor(ctx, slab, last, top.value, fixed), rest);
    for (const auto& t : sub) out.insert(t.extended(top.value));
    frontier.settle(top, sub);
  }
  return out;
}

SkylineSet expand_skyline(QueryContext& ctx) {
  std::vector<std::size_t> dims(ctx.graph.dims());
  std::iota(dims.begin(), dims.end(), std::size_t{0});
  return expand_dimN(ctx, ctx.vacuous_box(), {}, dims);
}

}  // namespace esc
