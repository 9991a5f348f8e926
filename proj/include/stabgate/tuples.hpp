#pragma once

#include <vector>

#include "stabgate/basics.hpp"

namespace stabgate {

// Decreasing tuple of positive integers.
struct DimTuple {
  std::vector<Int> parts;

  explicit DimTuple(std::vector<Int> p);
  Int total() const;
  size_t length() const { return parts.size(); }
};

// kappa with 0 <= kappa_i <= d_i componentwise.
bool is_feasible(const DimTuple& d, const std::vector<Int>& kappa);

// B_{d,kappa} = |kappa|(|d| - |kappa|) - sum kappa_i (d_i - kappa_i)
Int b_of_pair(const DimTuple& d, const std::vector<Int>& kappa);

struct BMinResult {
  Int value = 0;
  std::vector<Int> witness;  // decreasing minimizer, lexicographically largest
};

// B_{d,k}: minimum of B_{d,kappa} over d-feasible kappa with |kappa| = k.
// Searches decreasing kappa only (optimal by the decreasing-tuple result).
BMinResult b_min(const DimTuple& d, Int k);

// closed forms for k in {1,2,3}
Int b_small_k(const DimTuple& d, Int k);
// closed form for two-part tuples, 1 <= k <= |d|/2
Int b_two_parts(const DimTuple& d, Int k);

// the extremal tuple (b,...,b,rem) with t = ceil(d/b) parts
DimTuple bounded_extremal_tuple(Int d, Int b);
// B^b_{d,k} = B_{d0,k} over that tuple; requires k <= d/2
Int b_bounded(Int d, Int k, Int b);

// true iff B_{d,k-1} <= B_{d,k} for all 2 <= k <= |d|/2
bool check_monotone(const DimTuple& d);

}  // namespace stabgate
