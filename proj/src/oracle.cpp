#include "esc/oracle.hpp"

#include <algorithm>
#include <sstream>

#include "esc/core.hpp"

namespace esc {

bool within_oracle_limits(const BipartiteGraph& g, OracleLimits limits) {
  return g.edge_count() <= limits.max_edges && g.dims() <= limits.max_dims;
}

std::optional<std::vector<EdgeId>> oracle_community(const BipartiteGraph& g, const DegreeConstraint& c,
                                                    VertexRef q, const SignificanceVector& t) {
  if (t.size() != g.dims()) throw DomainError("threshold vector dimensionality differs from graph");
  const std::size_t m = g.edge_count(), n = g.vertex_count();
  std::vector<bool> keep(m);
  for (EdgeId e = 0; e < m; ++e) {
    bool ok = true;
    for (std::size_t i = 0; i < g.dims(); ++i) ok = ok && g.attr(e, i) >= t[i];
    keep[e] = ok;
  }
  // Recount every round until nothing changes.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::uint32_t> deg(n, 0);
    for (EdgeId e = 0; e < m; ++e)
      if (keep[e]) ++deg[g.upper_vertex(e)], ++deg[g.lower_vertex(e)];
    for (EdgeId e = 0; e < m; ++e) {
      if (!keep[e]) continue;
      if (deg[g.upper_vertex(e)] < c.alpha || deg[g.lower_vertex(e)] < c.beta) {
        keep[e] = false;
        changed = true;
      }
    }
  }
  const VertexId qv = g.vertex_id(q);
  std::vector<bool> seen(n, false);
  std::vector<VertexId> todo{qv};
  seen[qv] = true;
  while (!todo.empty()) {
    const VertexId v = todo.back();
    todo.pop_back();
    for (EdgeId e = 0; e < m; ++e) {
      if (!keep[e]) continue;
      const VertexId a = g.upper_vertex(e), b = g.lower_vertex(e);
      const VertexId other = a == v ? b : b == v ? a : v;
      if (other != v && !seen[other]) {
        seen[other] = true;
        todo.push_back(other);
      }
    }
  }
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < m; ++e)
    if (keep[e] && seen[g.upper_vertex(e)]) out.push_back(e);
  if (out.empty()) return std::nullopt;
  return out;
}

namespace {

SignificanceVector min_over(const BipartiteGraph& g, const std::vector<EdgeId>& edges) {
  SignificanceVector s(g.dims());
  for (std::size_t i = 0; i < g.dims(); ++i) {
    Attr lo = g.attr(edges.front(), i);
    for (EdgeId e : edges) lo = std::min(lo, g.attr(e, i));
    s[i] = lo;
  }
  return s;
}

void enumerate(const BipartiteGraph& g, const DegreeConstraint& c, VertexRef q,
               const std::vector<std::vector<Attr>>& grid, std::size_t i, SignificanceVector& t,
               SkylineSet& out) {
  for (Attr v : grid[i]) {
    t[i] = v;
    const auto comm = oracle_community(g, c, q, t);
    if (!comm) break;  // raising t_i further can only shrink the edge set
    out.insert(min_over(g, *comm));
    if (i + 1 < grid.size()) enumerate(g, c, q, grid, i + 1, t, out);
  }
  t[i] = 0;
}

}  // namespace

SkylineSet oracle_skyline(const BipartiteGraph& g, const DegreeConstraint& c, VertexRef q, bool force,
                          OracleLimits limits) {
  if (!force && !within_oracle_limits(g, limits)) {
    std::ostringstream msg;
    msg << "instance too large for the oracle (m=" << g.edge_count() << ", d=" << g.dims()
        << "; limits m<=" << limits.max_edges << ", d<=" << limits.max_dims << "); use --force";
    throw OracleRefusal(msg.str());
  }
  std::vector<std::vector<Attr>> grid(g.dims());
  for (std::size_t i = 0; i < g.dims(); ++i) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) grid[i].push_back(g.attr(e, i));
    std::sort(grid[i].begin(), grid[i].end());
    grid[i].erase(std::unique(grid[i].begin(), grid[i].end()), grid[i].end());
  }
  SkylineSet out;
  SignificanceVector t(g.dims());
  if (g.edge_count() > 0) enumerate(g, c, q, grid, 0, t, out);
  return out;
}

VerifyReport verify_result(const BipartiteGraph& g, const DegreeConstraint& c, VertexRef q,
                           std::span<const SignificanceVector> s, bool force) {
  VerifyReport report;
  auto fail = [&](const auto&... parts) {
    std::ostringstream msg;
    (msg << ... << parts);
    report.failures.push_back(msg.str());
  };
  for (const auto& v : s) {
    if (v.size() != g.dims()) {
      fail("vector ", v, " has ", v.size(), " dimensions, graph has ", g.dims());
      continue;
    }
    const auto comm = materialize_community(g, c, q, v);
    if (!comm)
      fail("vector ", v, " is not realizable: no community at these thresholds");
    else if (comm->significance != v)
      fail("vector ", v, " is not realizable: community at these thresholds has significance ",
           comm->significance);
  }
  const auto& ms = s;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = 0; j < ms.size(); ++j)
      if (i != j && (dominates(ms[i], ms[j]) || (i < j && ms[i] == ms[j])))
        fail("vector ", ms[i], " dominates or repeats ", ms[j]);
  if (force || within_oracle_limits(g)) {
    report.oracle_compared = true;
    const auto truth = oracle_skyline(g, c, q, true);
    std::vector<SignificanceVector> sorted(s.begin(), s.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted != truth.members()) {
      std::ostringstream got;
      got << '{';
      for (std::size_t i = 0; i < sorted.size(); ++i) got << (i ? "," : "") << sorted[i];
      got << '}';
      fail("result ", got.str(), " differs from exhaustive enumeration ", truth);
    }
  }
  return report;
}

VerifyReport verify_result(const BipartiteGraph& g, const DegreeConstraint& c, VertexRef q,
                           const SkylineSet& s, bool force) {
  return verify_result(g, c, q, std::span<const SignificanceVector>(s.members()), force);
}

}  // namespace esc
