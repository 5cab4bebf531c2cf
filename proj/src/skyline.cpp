#include "esc/skyline.hpp"

#include <set>

namespace esc {

SignificanceVector SignificanceVector::extended(Attr value) const {
  std::vector<Attr> v = values_;
  v.push_back(value);
  return SignificanceVector(std::move(v));
}

SignificanceVector SignificanceVector::prefix(std::size_t k) const {
  return SignificanceVector(std::vector<Attr>(values_.begin(), values_.begin() + k));
}

std::ostream& operator<<(std::ostream& os, const SignificanceVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os << ')';
}

SignificanceVector significance(std::span<const std::span<const Attr>> rows) {
  if (rows.empty()) throw DomainError("significance of an empty edge set is undefined");
  std::vector<Attr> out(rows.front().begin(), rows.front().end());
  for (const auto& row : rows.subspan(1)) {
    if (row.size() != out.size()) throw DomainError("attribute rows differ in dimensionality");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(out[i], row[i]);
  }
  return SignificanceVector(std::move(out));
}

bool weakly_dominates(const SignificanceVector& a, const SignificanceVector& b) {
  if (a.size() != b.size()) throw DomainError("dominance between vectors of different length");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

bool dominates(const SignificanceVector& a, const SignificanceVector& b) {
  return weakly_dominates(a, b) && a != b;
}

ThresholdBox& ThresholdBox::set(std::size_t dim, Attr value, bool strict) {
  if (dim >= bounds_.size()) throw DomainError("threshold dimension out of range");
  bounds_[dim] = Bound{value, strict};
  return *this;
}

ThresholdBox& ThresholdBox::tighten(std::size_t dim, Attr value, bool strict) {
  if (dim >= bounds_.size()) throw DomainError("threshold dimension out of range");
  Bound& b = bounds_[dim];
  if (value > b.value || (value == b.value && strict && !b.strict)) b = Bound{value, strict};
  return *this;
}

bool SkylineSet::covers(const SignificanceVector& v) const {
  return std::any_of(members_.begin(), members_.end(),
                     [&](const SignificanceVector& m) { return weakly_dominates(m, v); });
}

bool SkylineSet::insert(const SignificanceVector& v) {
  if (covers(v)) return false;
  std::erase_if(members_, [&](const SignificanceVector& m) { return dominates(v, m); });
  members_.insert(std::lower_bound(members_.begin(), members_.end(), v), v);
  return true;
}

std::ostream& operator<<(std::ostream& os, const SkylineSet& s) {
  os << '{';
  bool first = true;
  for (const auto& v : s) {
    if (!first) os << ',';
    first = false;
    os << v;
  }
  return os << '}';
}

SkylineSet insert_skyline(SkylineSet s, const SignificanceVector& v) {
  s.insert(v);
  return s;
}

SkylineSet skyline_of(std::span<const SignificanceVector> vs) {
  SkylineSet s;
  for (const auto& v : vs) s.insert(v);
  return s;
}

std::vector<SignificanceVector> divide_space(std::span<const SignificanceVector> corners,
                                             const SignificanceVector& p) {
  std::set<SignificanceVector> out;
  for (const auto& c : corners) {
    if (c.size() != p.size()) throw DomainError("corner and divider differ in dimensionality");
    if (!weakly_dominates(p, c)) {
      out.insert(c);
      continue;
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      SignificanceVector raised = c;
      raised[i] = p[i];
      out.insert(std::move(raised));
    }
  }
  return {out.begin(), out.end()};
}

std::vector<SignificanceVector> minimal_corners(std::vector<SignificanceVector> corners) {
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
  std::vector<SignificanceVector> out;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < corners.size() && !subsumed; ++j)
      subsumed = j != i && weakly_dominates(corners[i], corners[j]);
    if (!subsumed) out.push_back(corners[i]);
  }
  return out;
}

bool check_lemma1_order(std::span<const SignificanceVector> results) {
  std::vector<SignificanceVector> sorted(results.begin(), results.end());
  for (const auto& v : sorted)
    if (v.size() != 2) throw DomainError("lemma-1 order is defined for 2-d vectors only");
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (!(sorted[i - 1][0] < sorted[i][0])) return false;
    if (!(sorted[i - 1][1] > sorted[i][1])) return false;
  }
  return true;
}

}  // namespace esc
