#pragma once

#include <optional>
#include <span>
#include <vector>

#include "esc/context.hpp"
#include "esc/skyline.hpp"

namespace esc {

// Peeling family: every search starts from the full (filtered) graph and deletes
// minimum-attribute edges. Returned vectors are ordered like the `dims` argument.

/// Largest v such that the edges admitted by `box` with X_dim >= v still hold a connected
/// core containing the query and every fixed edge. Absent when no such core exists at all.
std::optional<Attr> peel_dim1(QueryContext& ctx, const ThresholdBox& box, std::size_t dim,
                              const FixedEdgeSet& fixed = {});

/// All skyline vectors over (dim_a, dim_b) inside `box`, by alternating 1-d peels.
SkylineSet peel_dim2(QueryContext& ctx, const ThresholdBox& box, const FixedEdgeSet& fixed = {},
                     std::size_t dim_a = 0, std::size_t dim_b = 1);

/// Ascending attribute values of `dim` at which a query core still exists while the
/// minimum-X_dim edges are peeled to exhaustion. A superset of the feasible significances.
std::vector<Attr> get_cand_vals(QueryContext& ctx, std::size_t dim);
std::vector<Attr> get_cand_vals(QueryContext& ctx, const ThresholdBox& box, std::size_t dim);

/// Skyline over dimensions (0, 1, 2).
SkylineSet peel_dim3(QueryContext& ctx, const ThresholdBox& box, const FixedEdgeSet& fixed = {});

/// Skyline over an arbitrary list of distinct dimensions; the last one is enumerated via
/// candidate values and the rest are solved recursively.
SkylineSet peel_dimN(QueryContext& ctx, const ThresholdBox& box, const FixedEdgeSet& fixed,
                     std::span<const std::size_t> dims);

/// Full query over every dimension of the graph.
SkylineSet peel_skyline(QueryContext& ctx);

}  // namespace esc
