#include <algorithm>

#include "doctest.h"
#include "stabgate/tuples.hpp"

using namespace stabgate;

namespace {

// independent oracle: exhaustive minimum over every feasible tuple
Int oracle_b_min(const DimTuple& d, Int k) {
  Int best = -1;
  std::vector<Int> kappa(d.parts.size(), 0);
  std::function<void(size_t, Int)> rec = [&](size_t i, Int left) {
    if (i == d.parts.size()) {
      if (left != 0) return;
      Int v = b_of_pair(d, kappa);
      if (best < 0 || v < best) best = v;
      return;
    }
    for (Int c = 0; c <= std::min(d.parts[i], left); ++c) {
      kappa[i] = c;
      rec(i + 1, left - c);
    }
    kappa[i] = 0;
  };
  rec(0, k);
  return best;
}

std::vector<DimTuple> all_decreasing_tuples(Int total, Int maxpart) {
  std::vector<DimTuple> out;
  std::vector<Int> cur;
  std::function<void(Int, Int)> rec = [&](Int left, Int hi) {
    if (left == 0) {
      out.push_back(DimTuple(cur));
      return;
    }
    for (Int p = std::min(left, hi); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(total, maxpart);
  return out;
}

}  // namespace

TEST_CASE("B_{d,kappa} formula and feasibility") {
  DimTuple d({6, 6, 3});
  CHECK(b_of_pair(d, {2, 2, 0}) == 28);
  CHECK(b_of_pair(d, {0, 0, 0}) == 0);
  CHECK(b_of_pair(d, {6, 6, 3}) == 0);
  CHECK_THROWS_AS(b_of_pair(d, {7, 0, 0}), argument_error);
  CHECK_THROWS_AS(b_of_pair(d, {1, -1, 0}), argument_error);
  CHECK_THROWS_AS(DimTuple({3, 5}), argument_error);
  CHECK_THROWS_AS(DimTuple({}), argument_error);
  CHECK_THROWS_AS(DimTuple({2, 0}), argument_error);
}

TEST_CASE("b_min matches printed values") {
  CHECK(b_min(DimTuple({11, 4}), 4).value == 16);
  CHECK(b_min(DimTuple({25, 10}), 2).value == 20);
  CHECK(b_min(DimTuple({6, 6, 3}), 4).value == 28);
  CHECK(b_min(DimTuple({3, 3, 3, 3, 3}), 4).value == 36);
  CHECK(b_min(DimTuple({100, 100, 48}), 2).value == 294);
  CHECK(b_min(DimTuple({5, 4, 1}), 0).value == 0);
  CHECK_THROWS_AS(b_min(DimTuple({3, 2}), 6), argument_error);
}

TEST_CASE("b_min equals the exhaustive oracle for |d| <= 14") {
  for (Int total = 1; total <= 14; ++total)
    for (const auto& d : all_decreasing_tuples(total, total))
      for (Int k = 0; k <= total; ++k) {
        Int fast = b_min(d, k).value;
        Int slow = oracle_b_min(d, k);
        REQUIRE(fast == slow);
      }
}

TEST_CASE("b_min witness is a feasible decreasing minimizer") {
  Rng rng(20260808);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Int> parts;
    Int n = 1 + rng.below(4);
    for (Int i = 0; i < n; ++i) parts.push_back(1 + rng.below(6));
    std::sort(parts.begin(), parts.end(), std::greater<Int>());
    DimTuple d(parts);
    Int k = rng.below(d.total() + 1);
    BMinResult res = b_min(d, k);
    CHECK(is_feasible(d, res.witness));
    CHECK(std::is_sorted(res.witness.rbegin(), res.witness.rend()));
    CHECK(b_of_pair(d, res.witness) == res.value);
  }
}

TEST_CASE("closed forms agree with b_min over their whole domains") {
  for (Int total = 1; total <= 20; ++total)
    for (const auto& d : all_decreasing_tuples(total, total)) {
      for (Int k = 1; k <= std::min<Int>(3, total); ++k)
        CHECK(b_small_k(d, k) == b_min(d, k).value);
      if (d.parts.size() == 2)
        for (Int k = 1; 2 * k <= total; ++k) CHECK(b_two_parts(d, k) == b_min(d, k).value);
    }
  CHECK_THROWS_AS(b_small_k(DimTuple({4, 4}), 4), argument_error);
  CHECK_THROWS_AS(b_two_parts(DimTuple({4, 4, 2}), 2), argument_error);
  CHECK_THROWS_AS(b_two_parts(DimTuple({4, 4}), 5), argument_error);
}

TEST_CASE("two-part and small-k printed values") {
  CHECK(b_two_parts(DimTuple({12, 4}), 5) == 20);
  CHECK(b_two_parts(DimTuple({12, 8}), 3) == 24);
  CHECK(b_small_k(DimTuple({14, 14, 4}), 3) == 50);
  CHECK(b_small_k(DimTuple({5, 3}), 1) == 3);
  // branch boundaries
  CHECK(b_small_k(DimTuple({6, 4}), 2) == b_min(DimTuple({6, 4}), 2).value);
  CHECK(b_small_k(DimTuple({8, 4, 3}), 3) == b_min(DimTuple({8, 4, 3}), 3).value);
  CHECK(b_small_k(DimTuple({5, 4, 3}), 3) == b_min(DimTuple({5, 4, 3}), 3).value);
}

TEST_CASE("bounded-tuple minimum") {
  DimTuple d0 = bounded_extremal_tuple(30, 4);
  CHECK(d0.parts == std::vector<Int>{4, 4, 4, 4, 4, 4, 4, 2});
  CHECK(b_bounded(30, 3, 4) == b_min(d0, 3).value);
  CHECK(b_bounded(6, 2, 6) == 0);
  CHECK_THROWS_AS(b_bounded(10, 6, 3), argument_error);

  // exhaustive: B^b_{d,k} is the minimum of B_{d',k} over all bounded tuples
  for (Int total = 2; total <= 18; ++total)
    for (Int b = 1; b <= total; ++b)
      for (Int k = 1; 2 * k <= total; ++k) {
        Int best = -1;
        for (const auto& d : all_decreasing_tuples(total, b)) {
          Int v = b_min(d, k).value;
          if (best < 0 || v < best) best = v;
        }
        CHECK(b_bounded(total, k, b) == best);
      }
}

TEST_CASE("monotonicity in k") {
  CHECK(check_monotone(DimTuple({11, 4})));
  CHECK(check_monotone(DimTuple({1, 1, 1, 1})));
  Rng rng(987654321);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<Int> parts;
    Int n = 1 + rng.below(5);
    Int budget = 16;
    for (Int i = 0; i < n && budget > 0; ++i) {
      Int p = 1 + rng.below(std::min<Int>(budget, 8));
      parts.push_back(p);
      budget -= p;
    }
    std::sort(parts.begin(), parts.end(), std::greater<Int>());
    CHECK(check_monotone(DimTuple(parts)));
  }
}

TEST_CASE("symmetry and permutation invariance") {
  Rng rng(13579);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Int> parts;
    Int n = 1 + rng.below(4);
    for (Int i = 0; i < n; ++i) parts.push_back(1 + rng.below(5));
    std::sort(parts.begin(), parts.end(), std::greater<Int>());
    DimTuple d(parts);
    Int total = d.total();
    for (Int k = 0; k <= total; ++k)
      CHECK(b_min(d, k).value == b_min(d, total - k).value);
    // permuting the parts then re-sorting leaves every value unchanged
    std::vector<Int> shuffled = parts;
    for (size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.below(static_cast<Int>(i))]);
    std::sort(shuffled.begin(), shuffled.end(), std::greater<Int>());
    CHECK(shuffled == parts);
  }
}
