#include "esc/core.hpp"

#include <algorithm>

namespace esc {

namespace {

std::uint32_t bound_of(const BipartiteGraph& g, VertexId v, const DegreeConstraint& c) {
  return c.bound(g.layer_of(v));
}

/// Vertices reachable from `v` over live edges (marks in `seen`), in BFS order.
std::vector<VertexId> reach(const WorkingGraph& w, VertexId v, std::vector<std::uint8_t>& seen) {
  std::vector<VertexId> order;
  if (w.degree(v) == 0) return order;
  seen[v] = 1;
  order.push_back(v);
  for (std::size_t head = 0; head < order.size(); ++head) {
    w.for_each_live_incident(order[head], [&](const Incidence& inc) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        order.push_back(inc.neighbor);
      }
    });
  }
  return order;
}

}  // namespace

void reduce_to_core(WorkingGraph& w, const DegreeConstraint& c, SearchStats* stats) {
  if (stats) ++stats->cores_computed;
  const auto& g = w.graph();
  std::vector<VertexId> stack;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (w.degree(v) > 0 && w.degree(v) < bound_of(g, v, c)) stack.push_back(v);
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    if (w.degree(v) == 0) continue;
    for (const Incidence& inc : g.incident(v)) {
      if (!w.alive(inc.edge)) continue;
      w.remove(inc.edge);
      const auto dn = w.degree(inc.neighbor);
      // Push exactly once: when the neighbour first drops below its bound.
      if (dn + 1 == bound_of(g, inc.neighbor, c) && dn > 0) stack.push_back(inc.neighbor);
    }
  }
}

WorkingGraph maximal_core(WorkingGraph w, const DegreeConstraint& c) {
  reduce_to_core(w, c);
  return w;
}

std::vector<EdgeId> component_edges(const WorkingGraph& w, VertexId v) {
  std::vector<std::uint8_t> seen(w.graph().vertex_count(), 0);
  std::vector<EdgeId> out;
  for (VertexId x : reach(w, v, seen))
    if (w.graph().layer_of(x) == Layer::Upper)
      w.for_each_live_incident(x, [&](const Incidence& inc) { out.push_back(inc.edge); });
  std::sort(out.begin(), out.end());
  return out;
}

void restrict_to_component(WorkingGraph& w, VertexId v) {
  const auto& g = w.graph();
  std::vector<std::uint8_t> seen(g.vertex_count(), 0);
  std::size_t kept = 0;
  for (VertexId x : reach(w, v, seen))
    if (g.layer_of(x) == Layer::Upper) kept += w.degree(x);
  if (kept == w.edge_count()) return;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (w.alive(e) && !seen[g.upper_vertex(e)]) w.remove(e);
}

bool component_holds(const WorkingGraph& w, VertexId v, const FixedEdgeSet& fixed) {
  if (fixed.empty()) return w.degree(v) > 0;
  for (EdgeId e : fixed)
    if (!w.alive(e)) return false;
  std::vector<std::uint8_t> seen(w.graph().vertex_count(), 0);
  reach(w, v, seen);
  for (EdgeId e : fixed)
    if (!seen[w.graph().upper_vertex(e)]) return false;
  return true;
}

Community community_of(const WorkingGraph& w, VertexId q) {
  const auto& g = w.graph();
  Community out;
  out.edges = component_edges(w, q);
  std::vector<std::span<const Attr>> rows;
  rows.reserve(out.edges.size());
  for (EdgeId e : out.edges) {
    out.upper_vertices.push_back(g.endpoints(e).upper);
    out.lower_vertices.push_back(g.endpoints(e).lower);
    rows.push_back(g.attrs(e));
  }
  for (auto* vs : {&out.upper_vertices, &out.lower_vertices}) {
    std::sort(vs->begin(), vs->end());
    vs->erase(std::unique(vs->begin(), vs->end()), vs->end());
  }
  out.significance = significance(rows);
  return out;
}

std::optional<Community> maximal_core_containing(const WorkingGraph& w, const DegreeConstraint& c,
                                                 VertexRef q) {
  WorkingGraph core = maximal_core(w, c);
  const VertexId qv = w.graph().vertex_id(q);
  if (core.degree(qv) == 0) return std::nullopt;
  return community_of(core, qv);
}

CascadeResult cascade_delete(WorkingGraph& w, VertexId start, VertexId q, const DegreeConstraint& c,
                             std::vector<EdgeId>& rollback, const FixedEdgeSet& fixed) {
  const auto& g = w.graph();
  auto abort = [&] {
    for (auto it = rollback.rbegin(); it != rollback.rend(); ++it) w.add(*it);
    rollback.clear();
    return CascadeResult::Abort;
  };
  thread_local std::vector<VertexId> stack;  // scratch, reused across the many calls of a peel
  stack.assign(1, start);
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    const auto d = w.degree(v);
    const auto b = bound_of(g, v, c);
    if (v == q && d < b) return abort();
    if (d == 0 || d >= b) continue;
    for (const Incidence& inc : g.incident(v)) {
      if (!w.alive(inc.edge)) continue;
      if (fixed.contains(inc.edge)) return abort();
      w.remove(inc.edge);
      rollback.push_back(inc.edge);
      const auto dn = w.degree(inc.neighbor);
      if (dn < bound_of(g, inc.neighbor, c)) stack.push_back(inc.neighbor);
    }
  }
  return CascadeResult::Ok;
}

ComponentCounts component_counts(const WorkingGraph& w, VertexId v, const DegreeConstraint& c) {
  const auto& g = w.graph();
  ComponentCounts counts;
  std::vector<std::uint8_t> seen(g.vertex_count(), 0);
  for (VertexId x : reach(w, v, seen)) {
    const auto d = w.degree(x);
    if (g.layer_of(x) == Layer::Upper) {
      ++counts.upper;
      counts.edges += d;
      if (d >= c.alpha) ++counts.heavy_upper;
    } else {
      ++counts.lower;
      if (d >= c.beta) ++counts.heavy_lower;
    }
  }
  return counts;
}

bool lemma3_check(const ComponentCounts& counts, const DegreeConstraint& c) {
  const auto lhs = static_cast<std::int64_t>(c.alpha) * c.beta - c.alpha - c.beta;
  const auto rhs = static_cast<std::int64_t>(counts.edges) - static_cast<std::int64_t>(counts.upper) -
                   static_cast<std::int64_t>(counts.lower);
  return lhs <= rhs;
}

bool lemma4_check(const ComponentCounts& counts, const DegreeConstraint& c) {
  return counts.heavy_upper >= c.beta && counts.heavy_lower >= c.alpha;
}

bool lemma3_check(const WorkingGraph& w, VertexId v, const DegreeConstraint& c) {
  return lemma3_check(component_counts(w, v, c), c);
}

bool lemma4_check(const WorkingGraph& w, VertexId v, const DegreeConstraint& c) {
  return lemma4_check(component_counts(w, v, c), c);
}

std::optional<Community> materialize_community(const BipartiteGraph& g, const DegreeConstraint& c,
                                               VertexRef q, const SignificanceVector& v) {
  if (v.size() != g.dims()) throw DomainError("significance vector dimensionality differs from graph");
  ThresholdBox box(g.dims());
  for (std::size_t i = 0; i < v.size(); ++i) box.set(i, v[i], false);
  return maximal_core_containing(filtered_view(g, box), c, q);
}

Attr peel_minimum(WorkingGraph& w, std::size_t dim, const DegreeConstraint& c, VertexId q,
                  const FixedEdgeSet& fixed, SearchStats* stats, std::span<const EdgeId> ascending) {
  const auto& g = w.graph();
  if (w.empty()) throw DomainError("peel_minimum needs a non-empty community");
  std::vector<EdgeId> order;
  if (ascending.empty()) {
    order = w.edges();
    std::stable_sort(order.begin(), order.end(),
                     [&](EdgeId a, EdgeId b) { return g.attr(a, dim) < g.attr(b, dim); });
  } else {
    order.reserve(w.edge_count());
    for (EdgeId e : ascending)
      if (w.alive(e)) order.push_back(e);
  }

  // Successful deletion steps, needed only to locate a disconnection of a fixed edge.
  std::vector<EdgeId> log;
  std::vector<std::size_t> step_end;
  std::vector<Attr> step_value;
  std::vector<EdgeId> rollback;

  Attr stop = g.attr(order.back(), dim);
  for (EdgeId e : order) {
    if (!w.alive(e)) continue;
    const Attr x = g.attr(e, dim);
    if (fixed.contains(e)) {
      stop = x;
      break;
    }
    if (stats) ++stats->iterations;
    rollback.assign(1, e);
    w.remove(e);
    if (cascade_delete(w, g.upper_vertex(e), q, c, rollback, fixed) == CascadeResult::Abort ||
        cascade_delete(w, g.lower_vertex(e), q, c, rollback, fixed) == CascadeResult::Abort) {
      stop = x;
      break;
    }
    if (!fixed.empty()) {
      log.insert(log.end(), rollback.begin(), rollback.end());
      step_end.push_back(log.size());
      step_value.push_back(x);
    }
  }
  if (fixed.empty() || step_end.empty() || component_holds(w, q, fixed)) return stop;

  // Connectivity only shrinks along the deletion sequence, so binary-search the last
  // step after which q still reaches every fixed edge. State k = first k steps applied.
  std::size_t cur = step_end.size();
  auto move_to = [&](std::size_t k) {
    const std::size_t from = cur ? step_end[cur - 1] : 0;
    const std::size_t to = k ? step_end[k - 1] : 0;
    if (to < from)
      for (std::size_t i = from; i-- > to;) w.add(log[i]);
    else
      for (std::size_t i = from; i < to; ++i) w.remove(log[i]);
    cur = k;
  };
  std::size_t good = 0, bad = step_end.size();
  while (bad - good > 1) {
    const std::size_t mid = good + (bad - good) / 2;
    move_to(mid);
    (component_holds(w, q, fixed) ? good : bad) = mid;
  }
  move_to(good);
  return step_value[good];
}

}  // namespace esc
