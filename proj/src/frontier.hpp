#pragma once

// Solution-space frontier shared by the multi-dimensional searches of both families.
// Corners are strict lower bounds over the leading dimensions; each live corner carries
// the best value of the last dimension reachable by a query core inside its region.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "esc/context.hpp"
#include "esc/graph.hpp"
#include "esc/skyline.hpp"

namespace esc::detail {

inline ThresholdBox corner_box(const ThresholdBox& box, std::span<const std::size_t> dims,
                               const SignificanceVector& corner) {
  ThresholdBox out = box;
  for (std::size_t i = 0; i < dims.size(); ++i) out.tighten(dims[i], corner[i], true);
  return out;
}

/// Query's component of the maximal core among universe edges inside `box`, or null
/// when q is not in that core. Every community inside `box` lies in it.
inline EdgeList core_component(QueryContext& ctx, const ThresholdBox& box) {
  WorkingGraph w = ctx.view(box);
  reduce_to_core(w, ctx.constraint, &ctx.stats);
  if (w.degree(ctx.query_id) == 0) return nullptr;
  return std::make_shared<const std::vector<EdgeId>>(component_edges(w, ctx.query_id));
}

/// Narrows the universe to core_component(box). Returns whether that component exists.
inline bool narrow_universe(QueryContext& ctx, const ThresholdBox& box, std::optional<UniverseScope>& scope) {
  auto component = core_component(ctx, box);
  if (!component) return false;
  scope.emplace(ctx, std::move(component));
  return true;
}

/// `fixed` plus the single universe edge of `box` whose X_dim equals `value`; unchanged
/// when there is no such edge or more than one.
inline FixedEdgeSet pin_anchor(QueryContext& ctx, const ThresholdBox& box, std::size_t dim, Attr value,
                               const FixedEdgeSet& fixed) {
  const auto& g = ctx.graph;
  std::optional<EdgeId> anchor;
  for (EdgeId e : ctx.universe()) {
    if (g.attr(e, dim) != value || !box.admits(g.attrs(e))) continue;
    if (anchor) return fixed;
    anchor = e;
  }
  return anchor ? fixed.with(*anchor) : fixed;
}

class Frontier {
 public:
  /// Best last-dimension value reachable inside a region, or nothing.
  using Reach = std::function<std::optional<Attr>(const ThresholdBox&)>;

  struct Entry {
    SignificanceVector corner;
    Attr value = 0;
  };

  /// `known` is the origin corner's reach when the caller already has it.
  Frontier(const ThresholdBox& box, std::span<const std::size_t> lead, Reach reach, bool drop_nested,
           std::optional<Attr> known = std::nullopt)
      : box_(box), lead_(lead), reach_(std::move(reach)), drop_nested_(drop_nested) {
    const SignificanceVector origin(lead.size());
    if (auto v = known ? known : reach_(region(origin))) pending_.emplace(origin, *v);
  }

  bool empty() const { return pending_.empty(); }

  /// Corner with the largest reachable value (smallest corner among ties).
  Entry top() const {
    auto it = std::max_element(pending_.begin(), pending_.end(),
                               [](const auto& a, const auto& b) { return a.second < b.second; });
    return {it->first, it->second};
  }

  ThresholdBox region(const SignificanceVector& corner) const { return corner_box(box_, lead_, corner); }

  /// Removes everything weakly below the vectors found from `done`'s slab and
  /// recomputes values for the corners this creates.
  void settle(const Entry& done, const SkylineSet& found) {
    std::vector<SignificanceVector> corners;
    corners.reserve(pending_.size());
    for (const auto& [c, v] : pending_) corners.push_back(c);
    for (const auto& t : found) corners = divide_space(corners, t);
    if (found.empty()) std::erase(corners, done.corner);
    if (drop_nested_) corners = minimal_corners(std::move(corners));

    std::map<SignificanceVector, Attr> next;
    for (auto& c : corners) {
      if (auto it = pending_.find(c); it != pending_.end())
        next.emplace(c, it->second);
      else if (auto v = reach_(region(c)))
        next.emplace(std::move(c), *v);
    }
    pending_ = std::move(next);
  }

 private:
  ThresholdBox box_;
  std::span<const std::size_t> lead_;
  Reach reach_;
  bool drop_nested_;
  std::map<SignificanceVector, Attr> pending_;
};

}  // namespace esc::detail
