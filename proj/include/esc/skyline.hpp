#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "esc/types.hpp"

namespace esc {

/// Per-dimension minimum edge attribute of a subgraph. Also used for solution-space
/// corners, where a coordinate of 0 means "unbounded below".
class SignificanceVector {
 public:
  SignificanceVector() = default;
  explicit SignificanceVector(std::size_t dims, Attr fill = 0) : values_(dims, fill) {}
  SignificanceVector(std::initializer_list<Attr> values) : values_(values) {}
  explicit SignificanceVector(std::vector<Attr> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  Attr operator[](std::size_t i) const { return values_[i]; }
  Attr& operator[](std::size_t i) { return values_[i]; }
  std::span<const Attr> values() const { return values_; }

  /// Copy with `value` appended as a new last dimension.
  SignificanceVector extended(Attr value) const;
  /// Copy of the first `k` dimensions.
  SignificanceVector prefix(std::size_t k) const;

  friend bool operator==(const SignificanceVector&, const SignificanceVector&) = default;
  friend auto operator<=>(const SignificanceVector& a, const SignificanceVector& b) {
    return a.values_ <=> b.values_;
  }

 private:
  std::vector<Attr> values_;
};

std::ostream& operator<<(std::ostream& os, const SignificanceVector& v);

/// Component-wise minimum over a non-empty set of attribute rows.
/// Throws DomainError on an empty set.
SignificanceVector significance(std::span<const std::span<const Attr>> rows);

/// True iff `a` dominates `b`: a_i >= b_i everywhere and a_j > b_j somewhere.
bool dominates(const SignificanceVector& a, const SignificanceVector& b);

/// a_i >= b_i everywhere (dominates or equal).
bool weakly_dominates(const SignificanceVector& a, const SignificanceVector& b);

/// One per-dimension lower bound; strict means X > bound, otherwise X >= bound.
struct Bound {
  Attr value = 0;
  bool strict = false;

  bool admits(Attr x) const { return strict ? x > value : x >= value; }
  friend bool operator==(const Bound&, const Bound&) = default;
};

/// Conjunction of per-dimension lower bounds on edge attributes.
class ThresholdBox {
 public:
  ThresholdBox() = default;
  /// Vacuous box: every bound is `>= 0`.
  explicit ThresholdBox(std::size_t dims) : bounds_(dims) {}

  std::size_t dims() const { return bounds_.size(); }
  const Bound& operator[](std::size_t i) const { return bounds_[i]; }

  /// Replaces the bound on `dim` unconditionally.
  ThresholdBox& set(std::size_t dim, Attr value, bool strict);
  /// Keeps whichever of the existing bound and the new one admits fewer values.
  ThresholdBox& tighten(std::size_t dim, Attr value, bool strict);

  ThresholdBox with(std::size_t dim, Attr value, bool strict) const {
    ThresholdBox copy = *this;
    copy.set(dim, value, strict);
    return copy;
  }
  ThresholdBox tightened(std::size_t dim, Attr value, bool strict) const {
    ThresholdBox copy = *this;
    copy.tighten(dim, value, strict);
    return copy;
  }

  bool admits(std::span<const Attr> row) const {
    for (std::size_t i = 0; i < bounds_.size(); ++i)
      if (!bounds_[i].admits(row[i])) return false;
    return true;
  }

  friend bool operator==(const ThresholdBox&, const ThresholdBox&) = default;

 private:
  std::vector<Bound> bounds_;
};

/// Edges that no peeling cascade may delete.
class FixedEdgeSet {
 public:
  FixedEdgeSet() = default;
  FixedEdgeSet(std::initializer_list<EdgeId> ids) : ids_(ids) { normalize(); }

  bool contains(EdgeId e) const { return std::binary_search(ids_.begin(), ids_.end(), e); }
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  FixedEdgeSet with(EdgeId e) const {
    FixedEdgeSet copy = *this;
    copy.ids_.push_back(e);
    copy.normalize();
    return copy;
  }

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  std::vector<EdgeId> ids_;
};

/// Set of pairwise non-dominated significance vectors, kept in lexicographic order.
class SkylineSet {
 public:
  SkylineSet() = default;
  SkylineSet(std::initializer_list<SignificanceVector> vs) {
    for (const auto& v : vs) insert(v);
  }

  /// Adds `v` unless some member dominates or equals it; evicts members `v` dominates.
  /// Returns whether `v` was added.
  bool insert(const SignificanceVector& v);

  /// Some member dominates or equals `v`.
  bool covers(const SignificanceVector& v) const;

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  const std::vector<SignificanceVector>& members() const { return members_; }

  friend bool operator==(const SkylineSet&, const SkylineSet&) = default;

 private:
  std::vector<SignificanceVector> members_;
};

std::ostream& operator<<(std::ostream& os, const SkylineSet& s);

/// Functional form of SkylineSet::insert.
SkylineSet insert_skyline(SkylineSet s, const SignificanceVector& v);

/// Skyline of an arbitrary multiset of vectors.
SkylineSet skyline_of(std::span<const SignificanceVector> vs);

/// Splits every corner c with c <= p (component-wise) into the corners obtained by
/// raising one coordinate of c to p's value. Corners not covered by p pass through.
/// Corner regions use strict bounds, so the union of output regions is exactly the
/// union of input regions minus the box {x <= p}. Output is deduplicated and sorted.
std::vector<SignificanceVector> divide_space(std::span<const SignificanceVector> corners,
                                             const SignificanceVector& p);

/// Drops corners whose region is contained in another corner's region (c' <= c).
std::vector<SignificanceVector> minimal_corners(std::vector<SignificanceVector> corners);

/// For 2-d results: after sorting by the first component, first components strictly
/// increase and second components strictly decrease.
bool check_lemma1_order(std::span<const SignificanceVector> results);

}  // namespace esc
