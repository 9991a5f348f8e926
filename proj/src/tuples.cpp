#include "stabgate/tuples.hpp"

#include <algorithm>

namespace stabgate {

DimTuple::DimTuple(std::vector<Int> p) : parts(std::move(p)) {
  if (parts.empty()) throw argument_error("dimension tuple must be non-empty");
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 1) throw argument_error("dimension tuple parts must be positive");
    if (i && parts[i] > parts[i - 1]) throw argument_error("dimension tuple must be decreasing");
  }
}

Int DimTuple::total() const {
  Int s = 0;
  for (Int p : parts) s = checked_add(s, p);
  return s;
}

bool is_feasible(const DimTuple& d, const std::vector<Int>& kappa) {
  if (kappa.size() != d.parts.size()) return false;
  for (size_t i = 0; i < kappa.size(); ++i)
    if (kappa[i] < 0 || kappa[i] > d.parts[i]) return false;
  return true;
}

Int b_of_pair(const DimTuple& d, const std::vector<Int>& kappa) {
  if (!is_feasible(d, kappa)) throw argument_error("kappa is not d-feasible");
  Int k = 0;
  for (Int c : kappa) k += c;
  Int total = d.total();
  Int v = checked_mul(k, total - k);
  for (size_t i = 0; i < kappa.size(); ++i) v -= checked_mul(kappa[i], d.parts[i] - kappa[i]);
  return v;
}

namespace {

void enumerate_decreasing(const DimTuple& d, size_t i, Int remaining, Int prev,
                          std::vector<Int>& cur, BMinResult& best, bool& found) {
  if (i == d.parts.size()) {
    if (remaining != 0) return;
    Int v = b_of_pair(d, cur);
    // keep the lexicographically largest witness among minimizers; the
    // enumeration below runs in lexicographically decreasing order, so the
    // first minimizer with each value already is the largest
    if (!found || v < best.value) {
      best.value = v;
      best.witness = cur;
      found = true;
    }
    return;
  }
  Int hi = std::min({prev, d.parts[i], remaining});
  for (Int c = hi; c >= 0; --c) {
    // prune: the rest can hold at most c * (#slots) if all capped by c
    Int cap = 0;
    for (size_t j = i + 1; j < d.parts.size(); ++j) cap += std::min(d.parts[j], c);
    if (remaining - c > cap) continue;
    cur.push_back(c);
    enumerate_decreasing(d, i + 1, remaining - c, c, cur, best, found);
    cur.pop_back();
  }
}

}  // namespace

BMinResult b_min(const DimTuple& d, Int k) {
  if (k < 0 || k > d.total()) throw argument_error("b_min requires 0 <= k <= |d|");
  BMinResult best;
  bool found = false;
  std::vector<Int> cur;
  enumerate_decreasing(d, 0, k, k, cur, best, found);
  if (!found) throw consistency_error("no feasible kappa found");
  return best;
}

Int b_small_k(const DimTuple& d, Int k) {
  if (k < 1 || k > 3) throw argument_error("b_small_k handles k in {1,2,3}");
  if (k > d.total()) throw argument_error("k exceeds |d|");
  Int dd = d.total();
  Int d1 = d.parts[0];
  Int d2 = d.parts.size() > 1 ? d.parts[1] : 0;
  Int d3 = d.parts.size() > 2 ? d.parts[2] : 0;
  switch (k) {
    case 1:
      return dd - d1;
    case 2:
      if (d.parts.size() < 2 || d1 >= d2 + 2) return 2 * dd - 2 * d1;
      return 2 * dd - d1 - d2 - 2;
    default:
      if (d.parts.size() < 2 || d1 >= d2 + 4) return 3 * dd - 3 * d1;
      if (d.parts.size() < 3 || d1 >= d3 + 2) return 3 * dd - 2 * d1 - d2 - 4;
      return 3 * dd - d1 - d2 - d3 - 6;
  }
}

Int b_two_parts(const DimTuple& d, Int k) {
  if (d.parts.size() != 2) throw argument_error("b_two_parts requires a 2-part tuple");
  Int dd = d.total();
  if (k < 1 || 2 * k > dd) throw argument_error("b_two_parts requires 1 <= k <= |d|/2");
  Int d1 = d.parts[0], d2 = d.parts[1];
  if (2 * (d2 + k) <= dd) return checked_mul(d2, k);
  // ceil( d1 d2 / 2 - (d - 2k)^2 / 8 ) = ceil( (4 d1 d2 - (d-2k)^2) / 8 )
  Int num = checked_mul(4, checked_mul(d1, d2)) - checked_mul(dd - 2 * k, dd - 2 * k);
  Int q = num / 8;
  if (num % 8 != 0 && num > 0) ++q;
  return q;
}

DimTuple bounded_extremal_tuple(Int d, Int b) {
  if (d < 1 || b < 1) throw argument_error("bounded tuple needs positive d and b");
  Int t = (d + b - 1) / b;
  std::vector<Int> parts;
  for (Int i = 0; i + 1 < t; ++i) parts.push_back(b);
  parts.push_back(d - (t - 1) * b);
  return DimTuple(parts);
}

Int b_bounded(Int d, Int k, Int b) {
  if (2 * k > d) throw argument_error("b_bounded requires k <= d/2");
  return b_min(bounded_extremal_tuple(d, b), k).value;
}

bool check_monotone(const DimTuple& d) {
  Int half = d.total() / 2;
  Int prev = b_min(d, 1).value;
  for (Int k = 2; k <= half; ++k) {
    Int cur = b_min(d, k).value;
    if (prev > cur) return false;
    prev = cur;
  }
  return true;
}

}  // namespace stabgate
