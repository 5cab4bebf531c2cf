#include "esc/peeling.hpp"

#include <algorithm>
#include <numeric>

#include "frontier.hpp"

namespace esc {

namespace {

/// Connected query core inside `box` that holds every fixed edge, or nothing.
std::optional<WorkingGraph> query_core(QueryContext& ctx, const ThresholdBox& box,
                                       const FixedEdgeSet& fixed) {
  WorkingGraph w = ctx.view(box);
  reduce_to_core(w, ctx.constraint, &ctx.stats);
  if (w.degree(ctx.query_id) == 0) return std::nullopt;
  restrict_to_component(w, ctx.query_id);
  if (!component_holds(w, ctx.query_id, fixed)) return std::nullopt;
  return w;
}

/// Universe edges admitted by `box`, ordered by X_dim then id, for locating anchor edges.
std::vector<EdgeId> region_by_value(QueryContext& ctx, const ThresholdBox& box, std::size_t dim) {
  std::vector<EdgeId> out;
  for (EdgeId e : ctx.ascending(dim))
    if (box.admits(ctx.graph.attrs(e))) out.push_back(e);
  return out;
}

std::span<const EdgeId> edges_with_value(const BipartiteGraph& g, std::span<const EdgeId> sorted,
                                         std::size_t dim, Attr value) {
  auto lo = std::lower_bound(sorted.begin(), sorted.end(), value,
                             [&](EdgeId e, Attr v) { return g.attr(e, dim) < v; });
  auto hi = std::upper_bound(lo, sorted.end(), value,
                             [&](Attr v, EdgeId e) { return v < g.attr(e, dim); });
  return {lo, hi};
}

SignificanceVector project(const BipartiteGraph& g, EdgeId e, std::span<const std::size_t> dims) {
  SignificanceVector v(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) v[i] = g.attr(e, dims[i]);
  return v;
}

}  // namespace

std::optional<Attr> peel_dim1(QueryContext& ctx, const ThresholdBox& box, std::size_t dim,
                              const FixedEdgeSet& fixed) {
  if (dim >= ctx.graph.dims()) throw DomainError("peel dimension out of range");
  auto w = query_core(ctx, box, fixed);
  if (!w) return std::nullopt;
  return peel_minimum(*w, dim, ctx.constraint, ctx.query_id, fixed, &ctx.stats, ctx.ascending(dim));
}

SkylineSet peel_dim2(QueryContext& ctx, const ThresholdBox& box, const FixedEdgeSet& fixed,
                     std::size_t dim_a, std::size_t dim_b) {
  SkylineSet out;
  std::optional<UniverseScope> scope;
  if (!detail::narrow_universe(ctx, box, scope)) return out;
  auto fb = peel_dim1(ctx, box, dim_b, fixed);
  while (fb) {
    // Fix the found X_b significance, then push X_a as high as it goes.
    const auto fa = peel_dim1(ctx, box.tightened(dim_b, *fb, false), dim_a, fixed);
    if (!fa) break;
    out.insert(SignificanceVector{*fa, *fb});
    // Move strictly past the exhausted X_a significance.
    fb = peel_dim1(ctx, box.tightened(dim_a, *fa, true), dim_b, fixed);
  }
  return out;
}

std::vector<Attr> get_cand_vals(QueryContext& ctx, std::size_t dim) {
  return get_cand_vals(ctx, ctx.vacuous_box(), dim);
}

std::vector<Attr> get_cand_vals(QueryContext& ctx, const ThresholdBox& box, std::size_t dim) {
  if (dim >= ctx.graph.dims()) throw DomainError("candidate dimension out of range");
  const auto& g = ctx.graph;
  std::vector<Attr> values;
  auto w = query_core(ctx, box, {});
  if (!w) return values;

  std::vector<EdgeId> order;
  order.reserve(w->edge_count());
  for (EdgeId e : ctx.ascending(dim))
    if (w->alive(e)) order.push_back(e);

  // Membership in the query's component only shrinks; a stale marking over-approximates
  // it, which can only add candidates. Refresh after a quarter of the edges are gone.
  std::vector<std::uint8_t> in_component(g.edge_count(), 0);
  for (EdgeId e : order) in_component[e] = 1;
  std::size_t removed_since_refresh = 0;
  std::vector<EdgeId> rollback;

  for (EdgeId e : order) {
    if (!w->alive(e)) continue;
    const Attr x = g.attr(e, dim);
    if (in_component[e] && (values.empty() || values.back() != x)) values.push_back(x);
    ++ctx.stats.iterations;
    rollback.assign(1, e);
    w->remove(e);
    if (cascade_delete(*w, g.upper_vertex(e), ctx.query_id, ctx.constraint, rollback, {}) ==
            CascadeResult::Abort ||
        cascade_delete(*w, g.lower_vertex(e), ctx.query_id, ctx.constraint, rollback, {}) ==
            CascadeResult::Abort)
      break;
    removed_since_refresh += rollback.size();
    if (4 * removed_since_refresh > w->edge_count()) {
      std::fill(in_component.begin(), in_component.end(), 0);
      for (EdgeId c : component_edges(*w, ctx.query_id)) in_component[c] = 1;
      removed_since_refresh = 0;
    }
  }
  return values;
}

SkylineSet peel_dim3(QueryContext& ctx, const ThresholdBox& box, const FixedEdgeSet& fixed) {
  static constexpr std::size_t dims[] = {0, 1, 2};
  return peel_dimN(ctx, box, fixed, dims);
}

SkylineSet peel_dimN(QueryContext& ctx, const ThresholdBox& box, const FixedEdgeSet& fixed,
                     std::span<const std::size_t> dims) {
  const auto& g = ctx.graph;
  if (dims.empty()) throw DomainError("peel needs at least one dimension");
  if (dims.size() == 1) {
    SkylineSet out;
    if (auto v = peel_dim1(ctx, box, dims[0], fixed)) out.insert(SignificanceVector{*v});
    return out;
  }
  if (dims.size() == 2) return peel_dim2(ctx, box, fixed, dims[0], dims[1]);

  const std::size_t last = dims.back();
  const auto rest = dims.first(dims.size() - 1);
  SkylineSet out;
  std::optional<UniverseScope> scope;
  if (!detail::narrow_universe(ctx, box, scope)) return out;
  auto candidates = get_cand_vals(ctx, box, last);

  if (ctx.pruning.frontier_skip) {
    // Open corners of the not-yet-dominated region, each with the largest X_last a core
    // above it still reaches (found by peeling X_last). A candidate below every such
    // value cannot produce anything new, so only matching candidates are expanded.
    // Without fixed edges the candidate peel and the origin's peel are the same run, so
    // its last candidate is the origin's reach.
    if (candidates.empty()) return out;
    detail::Frontier frontier(
        box, rest, [&](const ThresholdBox& region) { return peel_dim1(ctx, region, last, fixed); },
        ctx.pruning.dominance_skip, fixed.empty() ? std::optional<Attr>(candidates.back()) : std::nullopt);
    auto descend = [&] {
      const auto top = frontier.top();
      const ThresholdBox slab = frontier.region(top.corner).tightened(last, top.value, false);
      const SkylineSet sub = peel_dimN(ctx, slab, detail::pin_anchor(ctx, slab, last, top.value, fixed), rest);
      for (const auto& t : sub) out.insert(t.extended(top.value));
      frontier.settle(top, sub);
    };
    for (auto it = candidates.rbegin(); it != candidates.rend() && !frontier.empty(); ++it) {
      ++ctx.stats.iterations;
      while (!frontier.empty() && frontier.top().value >= *it) descend();
    }
    while (!frontier.empty()) descend();  // not reached when the candidates are complete
    return out;
  }

  const auto region = region_by_value(ctx, box, last);

  SkylineSet found;  // projections onto `rest` of everything recorded so far
  for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
    const Attr f = *it;
    ++ctx.stats.iterations;
    const auto anchors = edges_with_value(g, region, last, f);
    // Some anchor edge sits in every core whose X_last significance is f, so its other
    // attributes cap that core's remaining significances.
    if (ctx.pruning.dominance_skip &&
        std::all_of(anchors.begin(), anchors.end(),
                    [&](EdgeId e) { return found.covers(project(g, e, rest)); }))
      continue;
    const FixedEdgeSet pinned = anchors.size() == 1 ? fixed.with(anchors.front()) : fixed;
    const SkylineSet sub = peel_dimN(ctx, box.tightened(last, f, false), pinned, rest);
    for (const auto& t : sub) {
      found.insert(t);
      out.insert(t.extended(f));
    }
  }
  return out;
}

SkylineSet peel_skyline(QueryContext& ctx) {
  std::vector<std::size_t> dims(ctx.graph.dims());
  std::iota(dims.begin(), dims.end(), std::size_t{0});
  return peel_dimN(ctx, ctx.vacuous_box(), {}, dims);
}

}  // namespace esc
