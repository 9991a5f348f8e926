#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabgate/basics.hpp"

namespace stabgate {

// Simple type label A..G plus rank, e.g. {'E', 6}.
struct GroupId {
  char type = 'A';
  int rank = 0;

  bool operator==(const GroupId&) const = default;
  auto operator<=>(const GroupId&) const = default;
  std::string str() const { return std::string(1, type) + std::to_string(rank); }
  static GroupId parse(const std::string& s);
};

using RootVec = std::vector<Int>;  // coefficients over the simple basis

// An irreducible root system with Bourbaki numbering.  Roots are stored as
// integer vectors over the simple basis; all inner products go through the
// integral Gram matrix, so there is no floating point anywhere.
class RootSystem {
 public:
  static const RootSystem& get(GroupId id);  // cached
  static RootSystem build(GroupId id);

  GroupId id() const { return id_; }
  int rank() const { return id_.rank; }
  Int num_roots() const { return static_cast<Int>(roots_.size()); }
  Int num_positive() const { return num_roots() / 2; }
  Int weyl_order() const { return weyl_order_; }
  Int dim_group() const { return num_roots() + rank(); }

  const std::vector<RootVec>& roots() const { return roots_; }
  const RootVec& root(int idx) const { return roots_[idx]; }
  int root_index(const RootVec& v) const;  // -1 if not a root
  bool is_root(const RootVec& v) const { return root_index(v) >= 0; }
  int negative_of(int idx) const { return neg_of_[idx]; }
  bool is_positive(int idx) const;
  bool is_short(int idx) const { return short_flag_[idx]; }
  Int height(int idx) const;

  // Cartan matrix entry <alpha_i, alpha_j^vee>.
  Int cartan(int i, int j) const { return cartan_[i][j]; }
  // symmetric bilinear form of two root-basis vectors
  Int form(const RootVec& a, const RootVec& b) const;
  Int norm2(const RootVec& a) const { return form(a, a); }
  // <v, beta^vee> for a root-basis vector v and root beta
  Int pairing_with_coroot(const RootVec& v, int beta_idx) const;

  // reflection of a root-basis vector in the hyperplane of rs.roots[alpha]
  RootVec reflect(const RootVec& v, int alpha_idx) const;
  // the permutation induced by the simple reflection s_i on the root list
  const std::vector<int>& simple_reflection_perm(int i) const { return simple_perm_[i]; }

  int max_simple_norm2() const { return max_norm2_; }

  // epsilon-coordinate description of a root (classical types only):
  // vector of length ell' in the standard orthonormal basis of Section 1.2.
  std::vector<Int> to_epsilon(int idx) const;
  int epsilon_dim() const;
  std::optional<RootVec> from_epsilon(const std::vector<Int>& eps) const;

 private:
  GroupId id_;
  std::vector<std::vector<Int>> cartan_;
  std::vector<Int> norm2_simple_;
  std::vector<std::vector<Int>> gram_;  // gram_[i][j] = (alpha_i, alpha_j)
  std::vector<RootVec> roots_;          // sorted by (height, lex)
  std::vector<int> neg_of_;
  std::vector<bool> short_flag_;
  std::vector<std::vector<int>> simple_perm_;
  std::map<RootVec, int> index_;
  Int weyl_order_ = 0;
  Int max_norm2_ = 2;
};

// A component of a subsystem: its type as classified from the Cartan matrix,
// plus whether its roots are short in the ambient system (drives the naming
// conventions B1/C1/A1~ used in multiply-laced ambients).
struct SubComponent {
  char type = 'A';
  int rank = 0;
  bool ambient_short = false;  // all roots short in a multiply-laced ambient
  std::vector<int> base;       // simple system (ambient root indices)
  Int num_roots = 0;
};

struct Subsystem {
  const RootSystem* ambient = nullptr;
  std::vector<int> root_idx;  // sorted, closed under negation and addition
  std::vector<SubComponent> components;
  std::string label;

  bool empty() const { return root_idx.empty(); }
  Int size() const { return static_cast<Int>(root_idx.size()); }
  bool contains(int idx) const;
  int rank() const;
  // Coxeter number of the largest component (order-p condition for u_Psi)
  Int max_coxeter_number() const;
};

// Smallest closed subsystem containing the given roots.
Subsystem subsystem_from_generators(const RootSystem& rs, const std::vector<int>& generators);
// Convenience: generators given as simple-root positions 1..rank.
Subsystem standard_subsystem(const RootSystem& rs, const std::vector<int>& simple_positions);

// Enumerate the W-orbit of psi's root set (each subset reported once, as a
// sorted index vector, in BFS order).  Throws resource_error past the cap.
std::vector<std::vector<int>> conjugates(const RootSystem& rs, const Subsystem& psi,
                                         Int cap = 1000000);
// Streaming variant: visit returns false to stop early.
void for_each_conjugate(const RootSystem& rs, const Subsystem& psi,
                        const std::function<bool(const std::vector<int>&)>& visit,
                        Int cap = 1000000);

Int coxeter_number(char type, int rank);

}  // namespace stabgate
