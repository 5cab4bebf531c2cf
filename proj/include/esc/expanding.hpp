#pragma once

#include <optional>
#include <span>

#include "esc/context.hpp"
#include "esc/core.hpp"
#include "esc/skyline.hpp"

namespace esc {

// Expanding family: candidate subgraphs grow from empty in decreasing attribute order.
// Returned vectors are ordered like the `dims` argument.

/// k-th largest X_dim over q's incident edges admitted by `box`, with k the degree bound
/// of q's layer. No q-core inside `box` can have a larger dim-significance. Absent when
/// q has fewer than k admitted edges.
std::optional<Attr> query_upper_bound(const BipartiteGraph& g, VertexRef q, const DegreeConstraint& c,
                                      std::size_t dim);
std::optional<Attr> query_upper_bound(const BipartiteGraph& g, VertexRef q, const DegreeConstraint& c,
                                      std::size_t dim, const ThresholdBox& box);

/// Community of largest dim-significance among connected q-cores inside `box` that
/// contain every fixed edge. Found by adding edges in threshold batches, highest first.
std::optional<Community> expand_dim1(QueryContext& ctx, const ThresholdBox& box, std::size_t dim,
                                     const FixedEdgeSet& fixed = {});

/// Skyline over (dim_a, dim_b): grow along dim_b until a core appears, strip it along
/// dim_a, then move strictly past the stripped value and grow again.
SkylineSet expand_dim2(QueryContext& ctx, const ThresholdBox& box, const FixedEdgeSet& fixed = {},
                       std::size_t dim_a = 0, std::size_t dim_b = 1);

/// Skyline over dimensions (0, 1, 2).
SkylineSet expand_dim3(QueryContext& ctx, const ThresholdBox& box, const FixedEdgeSet& fixed = {});

/// Skyline over a list of distinct dimensions. The last one drives a frontier of corners
/// in the remaining ones, processed in decreasing order of their best reachable value.
SkylineSet expand_dimN(QueryContext& ctx, const ThresholdBox& box, const FixedEdgeSet& fixed,
                       std::span<const std::size_t> dims);

/// Full query over every dimension of the graph.
SkylineSet expand_skyline(QueryContext& ctx);

}  // namespace esc
