#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabgate/basics.hpp"
#include "stabgate/rootsys.hpp"

namespace stabgate {

// M, M_r (upper bounds for class dimensions of order-r elements) per group.
struct BoundTable {
  static Int M(GroupId g);
  // r in {2,3}; additionally M_5 for F4 and E7.  Anything else is a hard
  // data-missing error: no escalation may silently rely on an unknown M_r.
  static Int Mr(GroupId g, Int r);
  static Int d_phi_r(GroupId g, Int r) { return RootSystem::get(g).dim_group() - Mr(g, r); }
};

// ---- partitions -------------------------------------------------------

using Partition = std::vector<Int>;  // weakly decreasing positive entries

Partition conjugate_partition(const Partition& p);
std::vector<Partition> partitions_of(Int n);
// dominance: a <= b iff prefix sums of a never exceed those of b
bool dominates(const Partition& top, const Partition& bottom);
Int partition_sum(const Partition& p);

// ---- unipotent class specifications -----------------------------------

struct UnipotentSpec {
  enum class Kind { subsystem_regular, classical_partition, p2_orthsymp } kind;
  // subsystem_regular
  Subsystem psi;
  std::string label;  // display label; exceptional table key
  // classical_partition: Jordan blocks on the natural module
  Partition blocks;
  // p2_orthsymp: W(1)^{a1} + W(2)^{y} + V(2)^{b_v} with a1 + 2y + b_v = ell
  Int y = 0;
  Int v_blocks = 0;

  static UnipotentSpec regular(Subsystem psi, std::string label);
  static UnipotentSpec partition(Partition blocks);
  static UnipotentSpec p2(Int ell, Int y, Int v_blocks);
};

struct SemisimpleSpec {
  Subsystem phi_s;  // the fixed subsystem Phi(s)
  Int r = 0;        // prime order modulo the centre (informational)
};

// dim s^G = |Phi| - |Phi(s)|
Int dim_ss_class(const RootSystem& rs, const SemisimpleSpec& spec);

// dimension of the centralizer in the classical group of a unipotent element
// with the given Jordan blocks on the natural module
Int dim_centralizer_classical(char type, Int rank, const Partition& blocks);
// class dimension from the natural-module Jordan type (p at least 3 for BCD)
Int dim_unip_class_partition(char type, Int rank, const Partition& blocks);

// Jordan blocks on the natural module of a regular unipotent of the given
// subsystem, for classical ambients
Partition natural_partition_of_subsystem(const RootSystem& rs, const Subsystem& psi);

// Exceptional-group class dimensions come from the embedded table; each row
// cites the proposition it was transcribed from.
struct ExceptionalClassDim {
  GroupId group;
  std::string label;
  ZExpr dim;  // p-dependent (F4 A1~ shrinks at p = 2)
  std::string citation;
};
class ExceptionalClassTable {
 public:
  static ExceptionalClassTable& instance();
  void add(ExceptionalClassDim row);
  Int dim(GroupId g, const std::string& label, Char p) const;
  bool has(GroupId g, const std::string& label) const;

 private:
  std::map<std::pair<GroupId, std::string>, ExceptionalClassDim> rows_;
};

// dim u^G for any spec kind; requires p large enough for u to have order p
// (checked via the Coxeter numbers of the components for subsystem kinds)
Int dim_unip_class(const RootSystem& rs, const UnipotentSpec& spec, Char p);
// order-p membership test for a subsystem-regular element
bool unipotent_in_g_p(const Subsystem& psi, Char p);

// p = 2 class dimensions in types B/C:  W(1)^{l-2y-i} W(2)^y V(2)^i
Int dim_p2_class(Int ell, Int y, Int v_blocks);

// ---- m_Psi -------------------------------------------------------------

// size of the smallest subsystem meeting every conjugate of psi; formula for
// the type-A cases of the m_Psi lemma, exhaustive search elsewhere in type A
Int m_psi(const RootSystem& rs, const Subsystem& psi);
Int m_psi_search(const RootSystem& rs, const Subsystem& psi, Int cap = 1000000);

// ---- conjugate geometry -------------------------------------------------

bool disjoint_conjugate_exists(const RootSystem& rs, const Subsystem& psi,
                               const Subsystem& phi_s, Int cap = 1000000);

enum class ClosureVerdict { yes, no, trusted, unknown };

struct ClosureFact {
  GroupId group;
  std::string contained_label;  // the class contained in the closures
  Int dim_at_least = 0;         // of every class of at least this dimension
  std::string citation;
};
class ClosureFactTable {
 public:
  static ClosureFactTable& instance();
  void add(ClosureFact f);
  // does every class of dimension >= dim_threshold contain `label` in its
  // closure?  trusted if a fact (with premise <= threshold) is embedded.
  ClosureVerdict covers(GroupId g, const std::string& label, Int dim_threshold) const;

 private:
  std::vector<ClosureFact> facts_;
};

// classical closure order on natural-module Jordan types (dominance)
ClosureVerdict closure_contains(const RootSystem& rs, const UnipotentSpec& bigger,
                                const UnipotentSpec& smaller, Char p);

// ---- eigenspace dimension gap (classical Lie algebras) ------------------

// delta = dim L(G)_1(s) - dim L(G)_{eta_r}(s) for s described by the
// eigenvalue multiplicities m_0..m_{r-1} on the natural coordinates
Int eigenspace_gap(char type, Int rank, Int r, const std::vector<Int>& m);

}  // namespace stabgate
