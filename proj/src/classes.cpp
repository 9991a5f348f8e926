#include "stabgate/classes.hpp"

#include <algorithm>
#include <set>

namespace stabgate {

Int BoundTable::M(GroupId g) { return RootSystem::get(g).num_roots(); }

Int BoundTable::Mr(GroupId g, Int r) {
  Int l = g.rank;
  if (r == 2) {
    switch (g.type) {
      case 'A':
        return ((l + 1) * (l + 1)) / 2;
      case 'B':
      case 'C':
        return l * (l + 1);
      case 'D':
        return 2 * ((l * l) / 2);
      case 'E':
        return l == 6 ? 40 : l == 7 ? 70 : 128;
      case 'F':
        return 28;
      case 'G':
        return 8;
    }
  }
  if (r == 3) {
    switch (g.type) {
      case 'A':
        return 2 * (((l + 1) * (l + 1)) / 3);
      case 'B':
      case 'C':
        return 2 * ((l * (2 * l + 1)) / 3);
      case 'D':
        return 2 * ((l * (2 * l - 1)) / 3);
      case 'E':
        return l == 6 ? 54 : l == 7 ? 90 : 168;
      case 'F':
        return 36;
      case 'G':
        return 10;
    }
  }
  if (r == 5) {
    if (g.type == 'F' && l == 4) return 40;
    if (g.type == 'E' && l == 7) return 106;
  }
  throw data_missing_error("no M_" + std::to_string(r) + " bound for " + g.str());
}

Partition conjugate_partition(const Partition& p) {
  Partition out;
  if (p.empty()) return out;
  for (Int i = 1; i <= p[0]; ++i) {
    Int cnt = 0;
    for (Int part : p)
      if (part >= i) ++cnt;
    out.push_back(cnt);
  }
  return out;
}

std::vector<Partition> partitions_of(Int n) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(Int, Int)> rec = [&](Int remaining, Int maxpart) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (Int p = std::min(remaining, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

Int partition_sum(const Partition& p) {
  Int s = 0;
  for (Int x : p) s += x;
  return s;
}

bool dominates(const Partition& top, const Partition& bottom) {
  if (partition_sum(top) != partition_sum(bottom)) return false;
  Int st = 0, sb = 0;
  size_t n = std::max(top.size(), bottom.size());
  for (size_t i = 0; i < n; ++i) {
    st += i < top.size() ? top[i] : 0;
    sb += i < bottom.size() ? bottom[i] : 0;
    if (sb > st) return false;
  }
  return true;
}

UnipotentSpec UnipotentSpec::regular(Subsystem psi, std::string label) {
  UnipotentSpec s;
  s.kind = Kind::subsystem_regular;
  s.psi = std::move(psi);
  s.label = std::move(label);
  return s;
}
UnipotentSpec UnipotentSpec::partition(Partition blocks) {
  UnipotentSpec s;
  s.kind = Kind::classical_partition;
  s.blocks = std::move(blocks);
  std::sort(s.blocks.begin(), s.blocks.end(), std::greater<Int>());
  return s;
}
UnipotentSpec UnipotentSpec::p2(Int ell, Int y, Int v_blocks) {
  if (v_blocks < 0 || v_blocks > 2 || y < 0 || ell - 2 * y - v_blocks < 0)
    throw argument_error("invalid W(1)/W(2)/V(2) data");
  UnipotentSpec s;
  s.kind = Kind::p2_orthsymp;
  s.y = y;
  s.v_blocks = v_blocks;
  s.blocks.assign(static_cast<size_t>(2 * y + v_blocks), 2);
  for (Int i = 0; i < 2 * (ell - 2 * y - v_blocks); ++i) s.blocks.push_back(1);
  return s;
}

Int dim_ss_class(const RootSystem& rs, const SemisimpleSpec& spec) {
  return rs.num_roots() - spec.phi_s.size();
}

Int dim_centralizer_classical(char type, Int rank, const Partition& blocks) {
  Partition conj = conjugate_partition(blocks);
  Int sq = 0;
  for (Int c : conj) sq = checked_add(sq, checked_mul(c, c));
  Int odd = 0;
  for (Int b : blocks)
    if (b % 2 != 0) ++odd;
  switch (type) {
    case 'A': {
      if (partition_sum(blocks) != rank + 1) throw argument_error("partition must sum to l+1");
      return sq - 1;  // SL centralizer
    }
    case 'B': {
      if (partition_sum(blocks) != 2 * rank + 1) throw argument_error("partition must sum to 2l+1");
      for (Int b : blocks) {
        Int mult = std::count(blocks.begin(), blocks.end(), b);
        if (b % 2 == 0 && mult % 2 != 0) throw argument_error("even blocks need even multiplicity in SO");
      }
      return (sq - odd) / 2;
    }
    case 'D': {
      if (partition_sum(blocks) != 2 * rank) throw argument_error("partition must sum to 2l");
      for (Int b : blocks) {
        Int mult = std::count(blocks.begin(), blocks.end(), b);
        if (b % 2 == 0 && mult % 2 != 0) throw argument_error("even blocks need even multiplicity in SO");
      }
      return (sq - odd) / 2;
    }
    case 'C': {
      if (partition_sum(blocks) != 2 * rank) throw argument_error("partition must sum to 2l");
      for (Int b : blocks) {
        Int mult = std::count(blocks.begin(), blocks.end(), b);
        if (b % 2 != 0 && mult % 2 != 0) throw argument_error("odd blocks need even multiplicity in Sp");
      }
      return (sq + odd) / 2;
    }
  }
  throw argument_error("classical centralizer formula needs type A/B/C/D");
}

Int dim_unip_class_partition(char type, Int rank, const Partition& blocks) {
  return RootSystem::get({type, static_cast<int>(rank)}).dim_group() -
         dim_centralizer_classical(type, rank, blocks);
}

Partition natural_partition_of_subsystem(const RootSystem& rs, const Subsystem& psi) {
  char amb = rs.id().type;
  if (amb != 'A' && amb != 'B' && amb != 'C' && amb != 'D')
    throw argument_error("natural partition needs a classical ambient");
  // weights of the natural module in epsilon coordinates
  Int m = rs.epsilon_dim();
  std::vector<std::vector<Int>> wts;
  if (amb == 'A') {
    // eps_i, recorded projectively: differences are what matters below
    for (Int i = 0; i < m; ++i) {
      std::vector<Int> e(m, 0);
      e[i] = 1;
      wts.push_back(e);
    }
  } else {
    for (Int i = 0; i < m; ++i) {
      std::vector<Int> e(m, 0);
      e[i] = 1;
      wts.push_back(e);
      e[i] = -1;
      wts.push_back(e);
    }
    if (amb == 'B') wts.push_back(std::vector<Int>(m, 0));
  }
  // per-component principal grading: h_c(w) = sum over positive component
  // roots beta of <w, beta^vee>, computed in epsilon coordinates
  size_t ncomp = psi.components.size();
  std::map<std::vector<Int>, Int> points;
  auto eps_pairing = [&](const std::vector<Int>& w, int root_idx) -> Int {
    std::vector<Int> beta = rs.to_epsilon(root_idx);
    // type B scales epsilon vectors of short roots by 1; the bilinear form in
    // these coordinates is the standard dot product up to one global factor,
    // which cancels in 2(w,beta)/(beta,beta)
    Int num = 0, den = 0;
    for (Int i = 0; i < m; ++i) {
      num += 2 * w[i] * beta[i];
      den += beta[i] * beta[i];
    }
    if (den == 0 || num % den != 0) throw consistency_error("bad epsilon pairing");
    return num / den;
  };
  std::vector<std::vector<int>> comp_pos(ncomp);
  for (size_t c = 0; c < ncomp; ++c) {
    Subsystem comp = subsystem_from_generators(rs, psi.components[c].base);
    for (int idx : comp.root_idx)
      if (rs.is_positive(idx)) comp_pos[c].push_back(idx);
  }
  for (const auto& w : wts) {
    std::vector<Int> h(ncomp, 0);
    for (size_t c = 0; c < ncomp; ++c)
      for (int idx : comp_pos[c]) h[c] += eps_pairing(w, idx);
    points[h]++;
  }
  // peel boxes from the lexicographically largest corner; each box is a
  // tensor product of strings and contributes its Jordan type
  Partition blocks;
  while (!points.empty()) {
    auto it = std::prev(points.end());
    std::vector<Int> corner = it->first;
    std::vector<Int> dims;
    for (Int a : corner) {
      if (a < 0) throw consistency_error("natural-module string peel failed");
      dims.push_back(a + 1);
    }
    std::vector<Int> cur(ncomp);
    std::function<void(size_t)> peel = [&](size_t c) {
      if (c == ncomp) {
        auto pit = points.find(cur);
        if (pit == points.end() || pit->second <= 0)
          throw consistency_error("natural-module string peel failed (missing point)");
        if (--pit->second == 0) points.erase(pit);
        return;
      }
      for (Int v = -corner[c]; v <= corner[c]; v += 2) {
        cur[c] = v;
        peel(c + 1);
      }
    };
    if (ncomp == 0) {
      blocks.assign(wts.size(), 1);
      break;
    }
    peel(0);
    std::vector<Int> nontrivial;
    for (Int d : dims)
      if (d > 1) nontrivial.push_back(d);
    if (nontrivial.empty())
      blocks.push_back(1);
    else if (nontrivial.size() == 1)
      blocks.push_back(nontrivial[0]);
    else if (nontrivial.size() == 2 && nontrivial[0] == 2 && nontrivial[1] == 2) {
      blocks.push_back(3);  // J2 (x) J2 away from characteristic 2
      blocks.push_back(1);
    } else
      throw consistency_error("unexpected tensor factor in natural-module decomposition");
  }
  std::sort(blocks.begin(), blocks.end(), std::greater<Int>());
  return blocks;
}

namespace {
std::string strip_label(const std::string& in) {
  std::string out;
  for (char c : in)
    if (c != '(' && c != ')' && c != '\'' && c != ' ') out += c;
  // expand X^k
  std::string expanded;
  for (size_t i = 0; i < out.size();) {
    size_t start = i;
    ++i;
    while (i < out.size() && (std::isdigit(static_cast<unsigned char>(out[i])) || out[i] == '~')) ++i;
    std::string comp = out.substr(start, i - start);
    Int reps = 1;
    if (i < out.size() && out[i] == '^') {
      ++i;
      std::string n;
      while (i < out.size() && std::isdigit(static_cast<unsigned char>(out[i]))) n += out[i++];
      reps = std::stoll(n);
    }
    for (Int k = 0; k < reps; ++k) expanded += comp;
  }
  return expanded;
}
}  // namespace

ExceptionalClassTable& ExceptionalClassTable::instance() {
  static ExceptionalClassTable t;
  return t;
}
void ExceptionalClassTable::add(ExceptionalClassDim row) {
  auto key = std::make_pair(row.group, strip_label(row.label));
  rows_[key] = std::move(row);
}
bool ExceptionalClassTable::has(GroupId g, const std::string& label) const {
  return rows_.count({g, strip_label(label)}) > 0;
}
Int ExceptionalClassTable::dim(GroupId g, const std::string& label, Char p) const {
  auto it = rows_.find({g, strip_label(label)});
  if (it == rows_.end())
    throw data_missing_error("no embedded class dimension for " + label + " in " + g.str());
  return it->second.dim.eval(p);
}

bool unipotent_in_g_p(const Subsystem& psi, Char p) {
  return p.at_least(psi.max_coxeter_number());
}

Int dim_p2_class(Int ell, Int y, Int v_blocks) {
  switch (v_blocks) {
    case 0:
      if (y < 1) throw argument_error("W(2)-free class is trivial");
      return 2 * y * (2 * ell - 2 * y);
    case 1:
      return (2 * y + 1) * (2 * ell - 2 * y);
    case 2:
      return (2 * y + 2) * (2 * ell - 2 * y - 1);
  }
  throw argument_error("V(2) exponent must be 0, 1 or 2");
}

Int dim_unip_class(const RootSystem& rs, const UnipotentSpec& spec, Char p) {
  switch (spec.kind) {
    case UnipotentSpec::Kind::classical_partition:
      return dim_unip_class_partition(rs.id().type, rs.rank(), spec.blocks);
    case UnipotentSpec::Kind::p2_orthsymp:
      if (rs.id().type != 'B' && rs.id().type != 'C')
        throw argument_error("W/V notation implemented for types B and C");
      if (!(p == Char::prime(2))) throw argument_error("W/V classes live in characteristic 2");
      return dim_p2_class(rs.rank(), spec.y, spec.v_blocks);
    case UnipotentSpec::Kind::subsystem_regular: {
      if (!unipotent_in_g_p(spec.psi, p))
        throw argument_error("regular unipotent of " + spec.label + " has order > p");
      char amb = rs.id().type;
      if (amb == 'A' || amb == 'B' || amb == 'C' || amb == 'D')
        return dim_unip_class_partition(amb, rs.rank(),
                                        natural_partition_of_subsystem(rs, spec.psi));
      return ExceptionalClassTable::instance().dim(rs.id(), spec.label, p);
    }
  }
  throw argument_error("unknown unipotent spec");
}

namespace {

// all subsystem types of A_l are parametrized by partitions of l+1
Subsystem standard_A_subsystem(const RootSystem& rs, const Partition& parts) {
  std::vector<int> gens;
  Int offset = 0;
  for (Int m : parts) {
    for (Int j = 1; j < m; ++j) gens.push_back(static_cast<int>(offset + j));
    offset += m;
  }
  return standard_subsystem(rs, gens);
}

}  // namespace

Int m_psi_search(const RootSystem& rs, const Subsystem& psi, Int cap) {
  if (rs.id().type != 'A')
    throw argument_error("m_psi search path implemented for type A ambients");
  auto conj = conjugates(rs, psi, cap);
  Int best = -1;
  for (const auto& parts : partitions_of(rs.rank() + 1)) {
    Subsystem cand = standard_A_subsystem(rs, parts);
    if (cand.empty()) continue;
    bool hits_all = true;
    for (const auto& c : conj) {
      bool hit = false;
      for (int idx : c)
        if (cand.contains(idx)) {
          hit = true;
          break;
        }
      if (!hit) {
        hits_all = false;
        break;
      }
    }
    if (hits_all && (best < 0 || cand.size() < best)) best = cand.size();
  }
  if (best < 0) throw consistency_error("no subsystem meets every conjugate");
  return best;
}

Int m_psi(const RootSystem& rs, const Subsystem& psi) {
  if (rs.id().type == 'A') {
    Int l = rs.rank();
    std::multiset<std::pair<char, int>> shape;
    for (const auto& c : psi.components) shape.insert({c.type, c.rank});
    std::multiset<std::pair<char, int>> a1x2{{'A', 1}, {'A', 1}};
    std::multiset<std::pair<char, int>> a1x3{{'A', 1}, {'A', 1}, {'A', 1}};
    std::multiset<std::pair<char, int>> a2{{'A', 2}};
    std::multiset<std::pair<char, int>> a2a1a1{{'A', 2}, {'A', 1}, {'A', 1}};
    if (shape == a1x2 && l >= 3) return l * (l - 1);
    if (shape == a1x3 && l >= 5) return (l - 1) * (l - 2);
    if (shape == a2 && l >= 2) return (l * l) / 2;
    if (shape == a2a1a1 && l >= 9) return (l * l) / 2;
    if (l <= 7) return m_psi_search(rs, psi);
    throw argument_error("m_psi outside the lemma cases for " + psi.label + " in " + rs.id().str());
  }
  if (rs.rank() <= 4 && rs.id().type != 'A')
    throw argument_error("m_psi search path implemented for type A ambients");
  throw argument_error("m_psi unsupported for ambient " + rs.id().str());
}

bool disjoint_conjugate_exists(const RootSystem& rs, const Subsystem& psi, const Subsystem& phi_s,
                               Int cap) {
  if (psi.empty()) return true;
  bool found = false;
  for_each_conjugate(
      rs, psi,
      [&](const std::vector<int>& c) {
        bool disjoint = true;
        for (int idx : c)
          if (phi_s.contains(idx)) {
            disjoint = false;
            break;
          }
        if (disjoint) {
          found = true;
          return false;
        }
        return true;
      },
      cap);
  return found;
}

ClosureFactTable& ClosureFactTable::instance() {
  static ClosureFactTable t;
  return t;
}
void ClosureFactTable::add(ClosureFact f) { facts_.push_back(std::move(f)); }
ClosureVerdict ClosureFactTable::covers(GroupId g, const std::string& label,
                                        Int dim_threshold) const {
  for (const auto& f : facts_)
    if (f.group == g && f.contained_label == label && f.dim_at_least <= dim_threshold)
      return ClosureVerdict::trusted;
  return ClosureVerdict::unknown;
}

ClosureVerdict closure_contains(const RootSystem& rs, const UnipotentSpec& bigger,
                                const UnipotentSpec& smaller, Char p) {
  char amb = rs.id().type;
  if (amb == 'A' || amb == 'B' || amb == 'C' || amb == 'D') {
    auto nat = [&](const UnipotentSpec& s) -> Partition {
      if (s.kind == UnipotentSpec::Kind::subsystem_regular)
        return natural_partition_of_subsystem(rs, s.psi);
      return s.blocks;
    };
    return dominates(nat(bigger), nat(smaller)) ? ClosureVerdict::yes : ClosureVerdict::no;
  }
  (void)p;
  return ClosureVerdict::unknown;
}

Int eigenspace_gap(char type, Int rank, Int r, const std::vector<Int>& m) {
  if (static_cast<Int>(m.size()) != r) throw argument_error("multiplicity tuple must have r parts");
  Int total = 0;
  for (Int x : m) {
    if (x < 0) throw argument_error("multiplicities must be non-negative");
    total += x;
  }
  Int expect = (type == 'A') ? rank + 1 : rank;
  if (total != expect) throw argument_error("multiplicities must sum to the coordinate count");
  if (type != 'A' && r == 2) throw argument_error("r = 2 is a bad prime for types B, C, D");
  if (type != 'A' && type != 'B' && type != 'C' && type != 'D')
    throw argument_error("eigenspace gap needs a classical type");

  // coordinates with assigned exponents per the multiplicity tuple
  std::vector<Int> e;
  for (Int j = 0; j < r; ++j)
    for (Int i = 0; i < m[j]; ++i) e.push_back(j);
  Int n = total;
  Int at0 = 0, at1 = 0;
  auto tally = [&](Int v) {
    Int vr = ((v % r) + r) % r;
    if (vr == 0) ++at0;
    if (vr == 1) ++at1;
  };
  for (Int i = 0; i < n; ++i)
    for (Int j = 0; j < n; ++j) {
      if (i == j) continue;
      tally(e[i] - e[j]);  // eps_i - eps_j
    }
  if (type == 'B' || type == 'C' || type == 'D') {
    for (Int i = 0; i < n; ++i)
      for (Int j = i + 1; j < n; ++j) {
        tally(e[i] + e[j]);  // eps_i + eps_j
        tally(-e[i] - e[j]);
      }
  }
  if (type == 'B') {
    for (Int i = 0; i < n; ++i) {
      tally(e[i]);
      tally(-e[i]);
    }
  }
  if (type == 'C') {
    for (Int i = 0; i < n; ++i) {
      tally(2 * e[i]);
      tally(-2 * e[i]);
    }
  }
  Int dim_l1 = rank + at0;
  Int dim_le = at1;
  return dim_l1 - dim_le;
}

}  // namespace stabgate
