#include <doctest.h>

#include <algorithm>
#include <random>

#include "esc/skyline.hpp"

using namespace esc;

TEST_SUITE("skyline") {

TEST_CASE("significance is the per-dimension minimum") {
  const std::vector<Attr> a{8, 5}, b{1, 9}, c{3, 7};
  const std::span<const Attr> rows[] = {a, b, c};
  CHECK(significance(rows) == SignificanceVector{1, 5});
  CHECK_THROWS_AS(significance({}), DomainError);
}

TEST_CASE("dominance") {
  CHECK(dominates({8, 5}, {8, 4}));
  CHECK_FALSE(dominates({8, 5}, {8, 5}));
  CHECK_FALSE(dominates({1, 9}, {8, 5}));
  CHECK_FALSE(dominates({8, 5}, {1, 9}));
  CHECK(weakly_dominates({8, 5}, {8, 5}));
  CHECK_THROWS_AS(dominates({1, 2}, {1, 2, 3}), DomainError);
}

TEST_CASE("dominance is a strict partial order on random vectors") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> val(1, 4);
  auto draw = [&] {
    SignificanceVector v(3);
    for (std::size_t i = 0; i < 3; ++i) v[i] = val(rng);
    return v;
  };
  for (int it = 0; it < 2000; ++it) {
    const auto a = draw(), b = draw(), c = draw();
    CHECK_FALSE(dominates(a, a));
    if (dominates(a, b)) CHECK_FALSE(dominates(b, a));
    if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
  }
}

TEST_CASE("bounds and boxes") {
  CHECK(Bound{3, false}.admits(3));
  CHECK_FALSE(Bound{3, true}.admits(3));
  ThresholdBox box(2);
  const std::vector<Attr> row{3, 1};
  CHECK(box.admits(row));
  box.tighten(0, 3, false);
  CHECK(box.admits(row));
  box.tighten(0, 3, true);
  CHECK_FALSE(box.admits(row));
  box.tighten(0, 2, false);  // looser, ignored
  CHECK(box[0] == Bound{3, true});
  CHECK(box.with(0, 1, false).admits(row));
  CHECK_THROWS_AS(box.set(2, 1, false), DomainError);
}

TEST_CASE("fixed edge set keeps ids sorted and unique") {
  FixedEdgeSet f{4, 1, 4};
  CHECK(f.size() == 2);
  CHECK(f.contains(1));
  CHECK_FALSE(f.contains(2));
  const auto g = f.with(2);
  CHECK(g.contains(2));
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK_FALSE(f.contains(2));
}

TEST_CASE("skyline insert keeps only non-dominated vectors") {
  SkylineSet s;
  CHECK(s.insert({2, 6}));
  CHECK(s.insert({3, 6}));  // evicts (2,6)
  CHECK(s.insert({4, 6}));
  CHECK(s.insert({1, 7}));
  CHECK_FALSE(s.insert({1, 7}));
  CHECK_FALSE(s.insert({1, 6}));
  CHECK(s.insert({8, 5}));
  CHECK(s == SkylineSet{{1, 7}, {4, 6}, {8, 5}});
  CHECK(s.members().front() == SignificanceVector{1, 7});
}

TEST_CASE("skyline result does not depend on insertion order") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> val(1, 6);
  for (int it = 0; it < 200; ++it) {
    std::vector<SignificanceVector> vs(12, SignificanceVector(3));
    for (auto& v : vs)
      for (std::size_t i = 0; i < 3; ++i) v[i] = val(rng);
    const auto ref = skyline_of(vs);
    std::shuffle(vs.begin(), vs.end(), rng);
    CHECK(skyline_of(vs) == ref);
    for (const auto& v : vs) CHECK(ref.covers(v));
    for (const auto& a : ref)
      for (const auto& b : ref) CHECK_FALSE(dominates(a, b));
  }
}

TEST_CASE("divide_space splits a covered corner into one child per dimension") {
  const std::vector<SignificanceVector> start{{0, 0}};
  const auto out = divide_space(start, {1, 2});
  CHECK(out == std::vector<SignificanceVector>{{0, 2}, {1, 0}});
  const std::vector<SignificanceVector> other{{5, 0}};
  CHECK(divide_space(other, {1, 2}) == other);  // not below the divider, passes through
  CHECK_THROWS_AS(divide_space(start, {1, 2, 3}), DomainError);
}

TEST_CASE("divide_space removes exactly the box below the divider") {
  // Region of corner c is {x : x > c componentwise}; check on an integer grid.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> val(0, 5);
  for (int it = 0; it < 100; ++it) {
    std::vector<SignificanceVector> corners(3, SignificanceVector(3));
    for (auto& c : corners)
      for (std::size_t i = 0; i < 3; ++i) c[i] = val(rng);
    SignificanceVector p(3);
    for (std::size_t i = 0; i < 3; ++i) p[i] = val(rng) + 1;
    const auto out = divide_space(corners, p);
    auto inside = [](const std::vector<SignificanceVector>& cs, const SignificanceVector& x) {
      return std::any_of(cs.begin(), cs.end(), [&](const SignificanceVector& c) {
        for (std::size_t i = 0; i < x.size(); ++i)
          if (!(x[i] > c[i])) return false;
        return true;
      });
    };
    for (int a = 1; a <= 7; ++a)
      for (int b = 1; b <= 7; ++b)
        for (int c = 1; c <= 7; ++c) {
          const SignificanceVector x{double(a), double(b), double(c)};
          const bool expect = inside(corners, x) && !weakly_dominates(p, x);
          CHECK(inside(out, x) == expect);
        }
  }
}

TEST_CASE("minimal_corners drops contained regions") {
  const auto out = minimal_corners({{0, 2}, {1, 2}, {1, 0}, {0, 2}});
  CHECK(out == std::vector<SignificanceVector>{{0, 2}, {1, 0}});
}

TEST_CASE("lemma-1 staircase order") {
  const std::vector<SignificanceVector> good{{8, 5}, {1, 9}};
  CHECK(check_lemma1_order(good));
  const std::vector<SignificanceVector> bad{{1, 9}, {1, 5}};
  CHECK_FALSE(check_lemma1_order(bad));
  const std::vector<SignificanceVector> wrong{{1, 2, 3}};
  CHECK_THROWS_AS(check_lemma1_order(wrong), DomainError);
}

}  // TEST_SUITE
