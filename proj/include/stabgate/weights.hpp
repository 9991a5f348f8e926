#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabgate/basics.hpp"
#include "stabgate/rootsys.hpp"

namespace stabgate {

// Weights are integer vectors over the fundamental basis (omega_1..omega_l).
using Weight = std::vector<Int>;

bool is_dominant(const Weight& w);
Weight simple_reflect_weight(const RootSystem& rs, const Weight& w, int i);
// <w, beta^vee> for w in fundamental coordinates
Int pairing_weight_coroot(const RootSystem& rs, const Weight& w, int beta_idx);
// exact coordinates of w over the simple-root basis
std::vector<Rat> weight_in_root_basis(const RootSystem& rs, const Weight& w);
Weight root_vec_to_weight(const RootSystem& rs, const RootVec& v);

// Full W-orbit of a dominant weight, BFS order deduplicated and then sorted
// lexicographically on root-basis coordinates for reproducibility.
std::vector<Weight> weyl_orbit(const RootSystem& rs, const Weight& dominant);
Int weyl_orbit_size(const RootSystem& rs, const Weight& dominant);
// |Stab_W(mu)| for dominant mu: the parabolic generated by the simple
// reflections fixing mu.
Int weyl_stabilizer_order(const RootSystem& rs, const Weight& dominant);

// character-zero dimension of the Weyl module, by the Weyl dimension formula
Int weyl_dim_formula(const RootSystem& rs, const Weight& lambda);

// full weight multiset of the characteristic-zero Weyl module, multiplicities
// by Freudenthal's formula in exact rational arithmetic; memoized
const std::map<Weight, Int>& weyl_module_weights(GroupId g, const Weight& lambda);

struct WeightTableRow {
  int orbit_index = 0;   // orbit number as printed
  Weight dominant;       // dominant representative
  Int orbit_size = 0;    // |W.mu|
  ZExpr multiplicity;    // m_mu as a function of the characteristic
};

enum class TableSource { embedded, computed };

struct WeightTable {
  GroupId group;
  Weight lambda;
  std::vector<WeightTableRow> rows;
  TableSource source = TableSource::computed;

  Int dim(Char p) const;
  const WeightTableRow& row_by_index(int orbit_index) const;
  int orbit_of(const RootSystem& rs, const Weight& w) const;  // -1 if absent

  // every weight of the module together with its orbit's paper index
  struct Entry {
    Weight w;
    int orbit_index;
  };
  std::vector<Entry> all_weights(const RootSystem& rs) const;
};

enum class SourcePolicy { embedded_only, allow_computed };

// Registry of embedded weight tables (loaded from the dataset).  Lookup
// recomputes every orbit size via weyl_orbit and fails on mismatch.
class WeightTableStore {
 public:
  static WeightTableStore& instance();
  void add(WeightTable t);
  const WeightTable& get(GroupId g, const Weight& lambda,
                         SourcePolicy policy = SourcePolicy::embedded_only);
  bool has(GroupId g, const Weight& lambda) const;
  std::vector<std::pair<GroupId, Weight>> keys() const;

 private:
  std::map<std::pair<GroupId, Weight>, WeightTable> tables_;
};

// Generalized height function: non-negative value per simple root.
struct GenHeight {
  std::vector<Int> values;
};

struct HeightSplit {
  std::map<Int, std::vector<WeightTable::Entry>> classes;
  std::vector<int> roots_height_zero;  // ambient root indices
};

// Partition Lambda(V) by generalized height; throws argument_error naming the
// first weight with a non-integral height.
HeightSplit gen_height_split(const RootSystem& rs, const WeightTable& table, const GenHeight& h);

struct ZlcResult {
  bool has = false;
  std::vector<Int> certificate;  // positive integers; empty if !has
};

// ZLC: does a strictly positive integer combination of the weights vanish?
// Certificate minimal by total sum (ties lexicographically smallest) when the
// search space permits; always a valid certificate otherwise.
ZlcResult has_zlc(const std::vector<Weight>& weights);

// Sufficiency reduction of Section 1.6: Delta has ZLCE if Delta and every
// Delta + {nu} for nu in ambient \ Delta have ZLC.
bool has_zlce(const std::vector<Weight>& delta, const std::vector<Weight>& ambient);

std::string weight_str(const Weight& w);
std::string weight_key(GroupId g, const Weight& lambda);

}  // namespace stabgate
