#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "esc/graph.hpp"
#include "esc/skyline.hpp"
#include "esc/types.hpp"

namespace esc {

/// Work counters shared by both search families.
struct SearchStats {
  std::uint64_t iterations = 0;      ///< single-edge peel attempts + threshold steps + frontier pops
  std::uint64_t cores_computed = 0;  ///< maximal-core fixpoint computations

  SearchStats& operator+=(const SearchStats& o) {
    iterations += o.iterations;
    cores_computed += o.cores_computed;
    return *this;
  }
};

/// Connected (alpha, beta)-core containing the query, with its significance.
struct Community {
  std::vector<std::uint32_t> upper_vertices;  // sorted layer indices
  std::vector<std::uint32_t> lower_vertices;  // sorted layer indices
  std::vector<EdgeId> edges;                  // sorted
  SignificanceVector significance;

  friend bool operator==(const Community&, const Community&) = default;
};

/// In place: repeatedly deletes vertices below their layer's bound until fixpoint.
void reduce_to_core(WorkingGraph& w, const DegreeConstraint& c, SearchStats* stats = nullptr);

/// Largest subgraph of `w` meeting the degree constraint (possibly empty or disconnected).
WorkingGraph maximal_core(WorkingGraph w, const DegreeConstraint& c);

/// Live edges of the connected component containing `v`, ascending.
std::vector<EdgeId> component_edges(const WorkingGraph& w, VertexId v);

/// Deletes every live edge outside the component containing `v`.
void restrict_to_component(WorkingGraph& w, VertexId v);

/// True iff every edge of `fixed` is live and in the component of `v`.
bool component_holds(const WorkingGraph& w, VertexId v, const FixedEdgeSet& fixed);

/// Builds the Community for the component of `w` containing `q`. `w` must already be a core.
Community community_of(const WorkingGraph& w, VertexId q);

/// Component of maximal_core(w, c) that contains q; absent when the cascade removes q.
std::optional<Community> maximal_core_containing(const WorkingGraph& w, const DegreeConstraint& c,
                                                 VertexRef q);

enum class CascadeResult { Ok, Abort };

/// Resolves degree violations reachable from `start` after the caller removed an edge
/// incident to it. Every deleted edge is appended to `rollback`. On Abort (a fixed edge
/// would be deleted, or q would drop below its bound) every edge in `rollback` is
/// restored, including any the caller put there before the call, and `rollback` is cleared.
CascadeResult cascade_delete(WorkingGraph& w, VertexId start, VertexId q, const DegreeConstraint& c,
                             std::vector<EdgeId>& rollback, const FixedEdgeSet& fixed);

/// Edge/vertex/degree counts of one connected component.
struct ComponentCounts {
  std::uint64_t edges = 0;
  std::uint64_t upper = 0;
  std::uint64_t lower = 0;
  std::uint64_t heavy_upper = 0;  ///< upper vertices with degree >= alpha
  std::uint64_t heavy_lower = 0;  ///< lower vertices with degree >= beta
};

ComponentCounts component_counts(const WorkingGraph& w, VertexId v, const DegreeConstraint& c);

/// alpha*beta - alpha - beta <= |E| - |U| - |L|. False means no core fits inside.
bool lemma3_check(const ComponentCounts& counts, const DegreeConstraint& c);
/// At least beta upper vertices of degree >= alpha and alpha lower vertices of degree >= beta.
bool lemma4_check(const ComponentCounts& counts, const DegreeConstraint& c);

bool lemma3_check(const WorkingGraph& w, VertexId v, const DegreeConstraint& c);
bool lemma4_check(const WorkingGraph& w, VertexId v, const DegreeConstraint& c);

/// Maximal q-core of G filtered by X_i >= v_i. Its significance equals v exactly when v is
/// the significance of an ESC.
std::optional<Community> materialize_community(const BipartiteGraph& g, const DegreeConstraint& c,
                                               VertexRef q, const SignificanceVector& v);

/// Starting from a connected core `w` that contains q and every fixed edge, deletes
/// minimum-X_dim edges one at a time (ties by ascending id) with cascades, and stops at
/// the first deletion that would lose q, lose a fixed edge, or disconnect a fixed edge
/// from q. Returns the X_dim value at which peeling stopped: the largest v for which a
/// connected core with q and all fixed edges survives using only edges with X_dim >= v.
/// `w` is left in an intermediate peeled state. `ascending`, when given, must list every
/// live edge of `w` (and possibly others) ordered by (X_dim, id) and saves the sort.
Attr peel_minimum(WorkingGraph& w, std::size_t dim, const DegreeConstraint& c, VertexId q,
                  const FixedEdgeSet& fixed, SearchStats* stats = nullptr,
                  std::span<const EdgeId> ascending = {});

}  // namespace esc
