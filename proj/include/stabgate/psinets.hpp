#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "stabgate/basics.hpp"
#include "stabgate/rootsys.hpp"
#include "stabgate/weights.hpp"

namespace stabgate {

// One equivalence class of weights under "difference lies in the root lattice
// of Psi", together with the orbit index of each member.
struct Net {
  std::vector<WeightTable::Entry> members;
  // restricted coordinates of each member over the Psi base, parallel to
  // members: a_j = <mu, alpha_j^vee> in the base order
  std::vector<std::vector<Int>> restricted;

  Int mass(const WeightTable& table, Char p) const;
};

// Nets with identical shape (same multiset of (orbit, restricted weight))
// grouped together; the paper prints one row per group.
struct NetGroup {
  Net shape;                 // representative net
  Int count = 0;             // m
  std::map<int, Int> n;      // weights per orbit index (n_i columns)
  std::string nu_label;      // display label ("w1+w3", "2w1/2w4", "0")
};

struct NetDecomposition {
  Subsystem psi;
  std::vector<NetGroup> groups;
};

NetDecomposition compute_nets(const RootSystem& rs, const WeightTable& table,
                              const Subsystem& psi);

// Display label of a net (its maximal dominant restricted weights), optionally
// restricted to the members lying in the given orbits.
std::string net_display_label(const RootSystem& rs, const Subsystem& psi, const Net& net,
                              const std::set<int>* orbit_filter = nullptr);

// Lower bound on the contribution of one net to codim V_kappa(s), for s of
// order r (mod centre) with Phi(s) disjoint from Psi: net mass minus the
// largest mass of a set of weights no two of which differ by t*alpha with
// alpha in Psi and t not divisible by r.
Int c_semisimple(const RootSystem& rs, const WeightTable& table, const Net& net,
                 const Subsystem& psi, Int r, Char p);

// Lower bound on the contribution of one net to codim C_V(u_Psi): decompose
// the net under the principal tori of the Psi components into boxes of
// strings, and for each box take max_i (n_i - ceil(n_i/p)) * prod_{j!=i} n_j.
Int c_unipotent(const RootSystem& rs, const WeightTable& table, const Net& net,
                const Subsystem& psi, Char p);

// Totals over all nets (each group contributes count * per-net value).
Int c_total_semisimple(const RootSystem& rs, const WeightTable& table,
                       const NetDecomposition& nets, Int r, Char p);
Int c_total_unipotent(const RootSystem& rs, const WeightTable& table,
                      const NetDecomposition& nets, Char p);

// Oracle used by tests: minimum over admissible eigenvalue assignments
// phi: ZPsi -> Z/r non-vanishing on every root of Psi of (mass - largest
// class).  Returns nothing when no admissible assignment exists.
std::optional<Int> c_semisimple_assignment_oracle(const RootSystem& rs, const WeightTable& table,
                                                  const Net& net, const Subsystem& psi, Int r,
                                                  Char p);

}  // namespace stabgate
