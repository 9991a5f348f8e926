#include "stabgate/psinets.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace stabgate {

namespace {

// membership of an integer vector in the lattice spanned by the Psi base
struct LatticeTest {
  const RootSystem& rs;
  std::vector<RootVec> basis;

  explicit LatticeTest(const RootSystem& r, const Subsystem& psi) : rs(r) {
    for (const auto& comp : psi.components)
      for (int idx : comp.base) basis.push_back(rs.root(idx));
  }

  bool contains(const RootVec& v) const {
    // solve sum x_b basis_b = v exactly; integral solution required
    size_t k = basis.size();
    if (k == 0) {
      for (Int c : v)
        if (c != 0) return false;
      return true;
    }
    size_t n = v.size();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(k + 1));
    for (size_t row = 0; row < n; ++row) {
      for (size_t col = 0; col < k; ++col) m[row][col] = Rat(basis[col][row]);
      m[row][k] = Rat(v[row]);
    }
    size_t rank = 0;
    std::vector<int> pivot_col_of_row;
    for (size_t col = 0; col < k && rank < n; ++col) {
      size_t piv = rank;
      while (piv < n && m[piv][col].is_zero()) ++piv;
      if (piv == n) continue;
      std::swap(m[rank], m[piv]);
      for (size_t row = 0; row < n; ++row) {
        if (row == rank || m[row][col].is_zero()) continue;
        Rat f = m[row][col] / m[rank][col];
        for (size_t j = col; j <= k; ++j) m[row][j] = m[row][j] - f * m[rank][j];
      }
      pivot_col_of_row.push_back(static_cast<int>(col));
      ++rank;
    }
    for (size_t row = rank; row < n; ++row)
      if (!m[row][k].is_zero()) return false;  // outside the span
    // basis vectors are linearly independent (simple system), so the solution
    // is unique; check integrality
    for (size_t row = 0; row < rank; ++row) {
      Rat x = m[row][k] / m[row][pivot_col_of_row[row]];
      if (!x.is_integer()) return false;
    }
    return true;
  }
};

std::vector<int> psi_base(const Subsystem& psi) {
  std::vector<int> base;
  for (const auto& comp : psi.components)
    for (int idx : comp.base) base.push_back(idx);
  std::sort(base.begin(), base.end());
  return base;
}

}  // namespace

Int Net::mass(const WeightTable& table, Char p) const {
  Int s = 0;
  for (const auto& e : members) s = checked_add(s, table.row_by_index(e.orbit_index).multiplicity.eval(p));
  return s;
}


std::string net_display_label(const RootSystem& rs, const Subsystem& psi, const Net& net,
                              const std::set<int>* orbit_filter) {
  std::vector<int> b = psi_base(psi);
  std::vector<size_t> keep;
  for (size_t i = 0; i < net.members.size(); ++i)
    if (!orbit_filter || orbit_filter->count(net.members[i].orbit_index)) keep.push_back(i);
  if (keep.empty()) return "0";
  auto diff_nonneg = [&](size_t i, size_t j) -> std::optional<bool> {
    // is mu_j - mu_i a non-negative rational combination of the base roots?
    auto ci = weight_in_root_basis(rs, net.members[i].w);
    auto cj = weight_in_root_basis(rs, net.members[j].w);
    size_t k = b.size();
    std::vector<std::vector<Rat>> m(rs.rank(), std::vector<Rat>(k + 1));
    for (int rowi = 0; rowi < rs.rank(); ++rowi) {
      for (size_t col = 0; col < k; ++col) m[rowi][col] = Rat(rs.root(b[col])[rowi]);
      m[rowi][k] = cj[rowi] - ci[rowi];
    }
    size_t rank = 0;
    std::vector<int> piv;
    for (size_t col = 0; col < k && rank < static_cast<size_t>(rs.rank()); ++col) {
      size_t pr = rank;
      while (pr < static_cast<size_t>(rs.rank()) && m[pr][col].is_zero()) ++pr;
      if (pr == static_cast<size_t>(rs.rank())) continue;
      std::swap(m[rank], m[pr]);
      for (size_t rowi = 0; rowi < static_cast<size_t>(rs.rank()); ++rowi) {
        if (rowi == rank || m[rowi][col].is_zero()) continue;
        Rat f = m[rowi][col] / m[rank][col];
        for (size_t jj = col; jj <= k; ++jj) m[rowi][jj] = m[rowi][jj] - f * m[rank][jj];
      }
      piv.push_back(static_cast<int>(col));
      ++rank;
    }
    for (size_t rowi = rank; rowi < static_cast<size_t>(rs.rank()); ++rowi)
      if (!m[rowi][k].is_zero()) return std::nullopt;
    bool nonneg = true, nonzero = false;
    for (size_t rowi = 0; rowi < rank; ++rowi) {
      Rat x = m[rowi][k] / m[rowi][piv[rowi]];
      if (x.num < 0) nonneg = false;
      if (!x.is_zero()) nonzero = true;
    }
    if (!nonzero) return std::nullopt;
    return nonneg;
  };
  std::vector<size_t> maximal;
  for (size_t i : keep) {
    bool dom = true;
    for (Int a : net.restricted[i])
      if (a < 0) dom = false;
    if (!dom) continue;
    bool is_max = true;
    for (size_t j : keep) {
      if (j == i) continue;
      auto beats = diff_nonneg(i, j);
      if (beats && *beats) {
        is_max = false;
        break;
      }
    }
    if (is_max) maximal.push_back(i);
  }
  std::vector<std::string> labels;
  for (size_t i : maximal) {
    std::vector<std::pair<int, Int>> terms;
    for (size_t j = 0; j < b.size(); ++j) {
      Int a = net.restricted[i][j];
      if (a == 0) continue;
      int pos = 1000 + static_cast<int>(j);
      for (int sidx = 0; sidx < rs.rank(); ++sidx) {
        RootVec e(rs.rank(), 0);
        e[sidx] = 1;
        if (rs.root(b[j]) == e) {
          pos = sidx + 1;
          break;
        }
      }
      terms.push_back({pos, a});
    }
    std::sort(terms.begin(), terms.end());
    std::string t;
    for (const auto& [pos, a] : terms) {
      if (!t.empty()) t += "+";
      if (a != 1) t += std::to_string(a);
      t += "w" + (pos < 1000 ? std::to_string(pos) : "[" + std::to_string(pos - 999) + "]");
    }
    if (t.empty()) t = "0";
    labels.push_back(t);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::string out;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (i) out += "/";
    out += labels[i];
  }
  return out.empty() ? "0" : out;
}

NetDecomposition compute_nets(const RootSystem& rs, const WeightTable& table,
                              const Subsystem& psi) {
  NetDecomposition out;
  out.psi = psi;
  auto entries = table.all_weights(rs);
  size_t n = entries.size();
  LatticeTest lattice(rs, psi);

  // union-find over weights
  std::vector<int> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto to_rootvec = [&](const Weight& a, const Weight& b) {
    auto ca = weight_in_root_basis(rs, a);
    auto cb = weight_in_root_basis(rs, b);
    RootVec v(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) {
      Rat diff = ca[i] - cb[i];
      if (!diff.is_integer()) throw consistency_error("weight difference not in the root lattice");
      v[i] = diff.num;
    }
    return v;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      if (find(static_cast<int>(i)) == find(static_cast<int>(j))) continue;
      if (lattice.contains(to_rootvec(entries[i].w, entries[j].w)))
        parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
    }

  std::map<int, Net> nets;
  std::vector<int> base = psi_base(psi);
  for (size_t i = 0; i < n; ++i) {
    Net& net = nets[find(static_cast<int>(i))];
    net.members.push_back(entries[i]);
    std::vector<Int> restr;
    for (int b : base) restr.push_back(pairing_weight_coroot(rs, entries[i].w, b));
    net.restricted.push_back(restr);
  }

  // group by shape: multiset of (orbit index, restricted weight)
  std::map<std::vector<std::pair<int, std::vector<Int>>>, NetGroup> groups;
  for (auto& [root, net] : nets) {
    std::vector<std::pair<int, std::vector<Int>>> key;
    for (size_t i = 0; i < net.members.size(); ++i)
      key.push_back({net.members[i].orbit_index, net.restricted[i]});
    std::sort(key.begin(), key.end());
    auto it = groups.find(key);
    if (it == groups.end()) {
      NetGroup g;
      g.shape = net;
      g.count = 1;
      for (const auto& e : net.members) g.n[e.orbit_index]++;
      groups.emplace(std::move(key), std::move(g));
    } else {
      it->second.count++;
    }
  }

  for (auto& [key, g] : groups) g.nu_label = net_display_label(rs, psi, g.shape);

  for (auto& [key, g] : groups) out.groups.push_back(std::move(g));
  // deterministic order: by descending net size, then by n-vector, then label
  std::sort(out.groups.begin(), out.groups.end(), [](const NetGroup& a, const NetGroup& b) {
    if (a.shape.members.size() != b.shape.members.size())
      return a.shape.members.size() > b.shape.members.size();
    if (a.n != b.n) return a.n > b.n;
    return a.nu_label < b.nu_label;
  });
  return out;
}

Int c_semisimple(const RootSystem& rs, const WeightTable& table, const Net& net,
                 const Subsystem& psi, Int r, Char p) {
  if (r < 2) throw argument_error("r must be a prime");
  size_t n = net.members.size();
  if (n > 64) throw resource_error("net too large for the independent-set solver");
  std::vector<Int> mass(n);
  Int total = 0;
  for (size_t i = 0; i < n; ++i) {
    mass[i] = table.row_by_index(net.members[i].orbit_index).multiplicity.eval(p);
    total += mass[i];
  }
  // adjacency: mu_i - mu_j = t * alpha with alpha in Psi, r not dividing t
  std::vector<std::uint64_t> adj(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      auto ci = weight_in_root_basis(rs, net.members[i].w);
      auto cj = weight_in_root_basis(rs, net.members[j].w);
      RootVec diff(rs.rank());
      for (int a = 0; a < rs.rank(); ++a) {
        Rat d = ci[a] - cj[a];
        if (!d.is_integer()) throw consistency_error("non-integral weight difference");
        diff[a] = d.num;
      }
      bool edge = false;
      for (int idx : psi.root_idx) {
        if (!rs.is_positive(idx)) continue;
        const RootVec& alpha = rs.root(idx);
        // diff == t * alpha for an integer t != 0?
        Int t = 0;
        bool ok = true;
        for (int a = 0; a < rs.rank() && ok; ++a) {
          if (alpha[a] == 0) {
            if (diff[a] != 0) ok = false;
          } else {
            if (diff[a] % alpha[a] != 0) {
              ok = false;
            } else {
              Int tt = diff[a] / alpha[a];
              if (t == 0)
                t = tt;
              else if (t != tt)
                ok = false;
            }
          }
        }
        if (ok && t != 0) {
          Int tr = ((t % r) + r) % r;
          if (tr != 0) {
            edge = true;
            break;
          }
        }
      }
      if (edge) {
        adj[i] |= (1ull << j);
        adj[j] |= (1ull << i);
      }
    }
  // max-weight independent set, branch and bound
  Int best = 0;
  std::function<void(std::uint64_t, Int)> bnb = [&](std::uint64_t avail, Int acc) {
    if (!avail) {
      best = std::max(best, acc);
      return;
    }
    Int bound = acc;
    for (std::uint64_t m = avail; m;) {
      int i = __builtin_ctzll(m);
      m &= m - 1;
      bound += mass[i];
    }
    if (bound <= best) return;
    int i = __builtin_ctzll(avail);
    // take i
    bnb(avail & ~(1ull << i) & ~adj[i], acc + mass[i]);
    // skip i
    bnb(avail & ~(1ull << i), acc);
  };
  bnb(n == 64 ? ~0ull : ((1ull << n) - 1), 0);
  return total - best;
}

namespace {

// mapping of a component's base (ambient root indices, ambient-index order)
// onto the Bourbaki simple roots of its abstract type
struct CompMap {
  GroupId type;
  std::vector<int> perm;  // abstract simple i <- base slot perm[i]
};

CompMap match_component(const RootSystem& rs, const SubComponent& comp) {
  CompMap out;
  out.type = {comp.type, comp.rank};
  const RootSystem& abs = RootSystem::get(out.type);
  int r = comp.rank;
  std::vector<int> perm(r);
  for (int i = 0; i < r; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end());
  do {
    bool ok = true;
    for (int i = 0; i < r && ok; ++i)
      for (int j = 0; j < r && ok; ++j) {
        Int pairing = rs.pairing_with_coroot(rs.root(comp.base[perm[i]]), comp.base[perm[j]]);
        if (pairing != abs.cartan(i, j)) ok = false;
      }
    if (ok) {
      out.perm = perm;
      return out;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw consistency_error("component does not match its abstract Cartan matrix");
}

}  // namespace

// The net is the weight multiset of characteristic-zero Weyl modules for
// G_Psi (a single one except for the adjoint-type union nets), plus possible
// zero-weight surplus.  Blocks of a regular unipotent of order p pack at the
// level of these modules: an m-dimensional tensor factor contributes
// ceil(m/p) Jordan blocks.
Int c_unipotent(const RootSystem& rs, const WeightTable& table, const Net& net,
                const Subsystem& psi, Char p) {
  size_t ncomp = psi.components.size();
  if (ncomp == 0) return 0;
  std::vector<int> base;
  for (const auto& comp : psi.components)
    for (int idx : comp.base) base.push_back(idx);
  std::sort(base.begin(), base.end());
  // slots of each component inside the sorted base
  std::vector<std::vector<size_t>> comp_slots(ncomp);
  for (size_t c = 0; c < ncomp; ++c)
    for (int idx : psi.components[c].base)
      comp_slots[c].push_back(
          std::lower_bound(base.begin(), base.end(), idx) - base.begin());
  std::vector<CompMap> maps;
  for (const auto& comp : psi.components) maps.push_back(match_component(rs, comp));

  std::map<std::vector<Int>, Int> mset;    // restricted vector -> mass
  std::map<std::vector<Int>, Int> height;  // restricted vector -> principal height
  std::vector<int> psi_pos;
  for (int idx : psi.root_idx)
    if (rs.is_positive(idx)) psi_pos.push_back(idx);
  for (size_t i = 0; i < net.members.size(); ++i) {
    std::vector<Int> restr(base.size());
    for (size_t j = 0; j < base.size(); ++j)
      restr[j] = pairing_weight_coroot(rs, net.members[i].w, base[j]);
    mset[restr] += table.row_by_index(net.members[i].orbit_index).multiplicity.eval(p);
    if (!height.count(restr)) {
      Int h = 0;
      for (int idx : psi_pos) h += pairing_weight_coroot(rs, net.members[i].w, idx);
      height[restr] = h;
    }
  }
  for (auto it = mset.begin(); it != mset.end();) {
    if (it->second == 0)
      it = mset.erase(it);
    else
      ++it;
  }

  auto blocks = [&](Int m) -> Int {
    if (p.is_infinite()) return 1;
    return (m + p.v - 1) / p.v;
  };

  Int contribution = 0;
  while (!mset.empty()) {
    // a weight of maximal principal height is the highest weight of one of
    // the remaining Weyl constituents
    std::vector<Int> head;
    Int best_h = 0;
    for (const auto& [key, mass] : mset) {
      Int h = height.at(key);
      if (head.empty() || h > best_h || (h == best_h && key > head)) {
        head = key;
        best_h = h;
      }
    }
    // per-component weight multisets of the factors: the characteristic-zero
    // Weyl module, except for the two restricted families that shrink at
    // small p and genuinely occur in the tables
    std::vector<std::map<std::vector<Int>, Int>> factors(ncomp);
    std::vector<Int> dims(ncomp, 1);
    std::vector<Int> string_count(ncomp, 0);
    std::vector<bool> special(ncomp, false);
    for (size_t c = 0; c < ncomp; ++c) {
      int r = psi.components[c].rank;
      Weight hw(r, 0);
      for (int i = 0; i < r; ++i) {
        Int coord = head[comp_slots[c][maps[c].perm[i]]];
        if (coord < 0)
          throw consistency_error("net decomposition: head weight not dominant");
        hw[i] = coord;
      }
      std::map<Weight, Int> wm = weyl_module_weights(maps[c].type, hw);
      if (!p.is_infinite()) {
        bool a1_frobenius = maps[c].type.type == 'A' && r == 1 && hw[0] == 2 && p.v == 2;
        bool adjoint_drop = maps[c].type.type == 'A' && r >= 2 && hw.front() == 1 &&
                            hw.back() == 1 &&
                            std::count(hw.begin(), hw.end(), 0) == r - 2 && (r + 1) % p.v == 0;
        if (a1_frobenius || adjoint_drop) {
          Weight zero(r, 0);
          auto zit = wm.find(zero);
          if (zit == wm.end() || zit->second < 1)
            throw consistency_error("expected a zero weight to drop");
          if (--zit->second == 0) wm.erase(zit);
          special[c] = true;
        }
      }
      Int dim = 0;
      for (const auto& [w, m] : wm) {
        std::vector<Int> slice(comp_slots[c].size());
        for (int i = 0; i < r; ++i) slice[maps[c].perm[i]] = w[i];
        factors[c][slice] += m;
        dim += m;
      }
      dims[c] = dim;
      // characteristic-zero strings of the factor under its principal torus:
      // one per weight of grading 0 or 1
      const RootSystem& abs = RootSystem::get(maps[c].type);
      std::vector<int> abs_pos;
      for (int idx = 0; idx < abs.num_roots(); ++idx)
        if (abs.is_positive(idx)) abs_pos.push_back(idx);
      for (const auto& [w, m] : wm) {
        Int h = 0;
        for (int idx : abs_pos) h += pairing_weight_coroot(abs, w, idx);
        if (h == 0 || h == 1) string_count[c] += m;
      }
    }
    // subtract the product multiset
    std::vector<std::pair<std::vector<Int>, Int>> flat{{std::vector<Int>(), 1}};
    for (size_t c = 0; c < ncomp; ++c) {
      std::vector<std::pair<std::vector<Int>, Int>> next;
      for (const auto& [prefix, m] : flat)
        for (const auto& [slice, m2] : factors[c]) {
          std::vector<Int> cat = prefix;
          cat.insert(cat.end(), slice.begin(), slice.end());
          next.push_back({cat, checked_mul(m, m2)});
        }
      flat = std::move(next);
    }
    for (const auto& [concat, m] : flat) {
      // reorder: concat is per component slots in order; scatter to base order
      std::vector<Int> restr(base.size());
      size_t pos = 0;
      for (size_t c = 0; c < ncomp; ++c)
        for (size_t s = 0; s < comp_slots[c].size(); ++s) restr[comp_slots[c][s]] = concat[pos++];
      auto mit = mset.find(restr);
      if (mit == mset.end() || mit->second < m)
        throw consistency_error("net is not a sum of Weyl-module weight multisets");
      mit->second -= m;
      if (mit->second == 0) mset.erase(mit);
    }
    Int best = 0;
    for (size_t c = 0; c < ncomp; ++c) {
      Int others = 1;
      for (size_t j = 0; j < ncomp; ++j)
        if (j != c) others = checked_mul(others, dims[j]);
      // Jordan blocks of the regular unipotent on the factor: the
      // characteristic-zero strings can merge up to blocks of size p, but
      // never below the string count
      Int nblocks = special[c] ? blocks(dims[c]) : std::max(string_count[c], blocks(dims[c]));
      if (p.is_infinite() && !special[c]) nblocks = string_count[c];
      best = std::max(best, checked_mul(dims[c] - nblocks, others));
    }
    contribution = checked_add(contribution, best);
  }
  return contribution;
}

Int c_total_semisimple(const RootSystem& rs, const WeightTable& table,
                       const NetDecomposition& nets, Int r, Char p) {
  Int total = 0;
  for (const auto& g : nets.groups)
    total = checked_add(total,
                        checked_mul(g.count, c_semisimple(rs, table, g.shape, nets.psi, r, p)));
  return total;
}

Int c_total_unipotent(const RootSystem& rs, const WeightTable& table,
                      const NetDecomposition& nets, Char p) {
  Int total = 0;
  for (const auto& g : nets.groups)
    total = checked_add(total, checked_mul(g.count, c_unipotent(rs, table, g.shape, nets.psi, p)));
  return total;
}

std::optional<Int> c_semisimple_assignment_oracle(const RootSystem& rs, const WeightTable& table,
                                                  const Net& net, const Subsystem& psi, Int r,
                                                  Char p) {
  // enumerate phi over (Z/r)^{rank Psi} via values on the base roots
  std::vector<int> base;
  for (const auto& comp : psi.components)
    for (int idx : comp.base) base.push_back(idx);
  size_t k = base.size();
  std::vector<RootVec> pos_roots;
  for (int idx : psi.root_idx)
    if (rs.is_positive(idx)) pos_roots.push_back(rs.root(idx));
  // coordinates of each positive Psi-root over the base
  std::vector<std::vector<Int>> coords;
  for (const auto& beta : pos_roots) {
    std::vector<Int> c(k, 0);
    // solve beta = sum c_b base_b by rational elimination (unique solution)
    std::vector<std::vector<Rat>> m(rs.rank(), std::vector<Rat>(k + 1));
    for (int row = 0; row < rs.rank(); ++row) {
      for (size_t col = 0; col < k; ++col) m[row][col] = Rat(rs.root(base[col])[row]);
      m[row][k] = Rat(beta[row]);
    }
    size_t rank = 0;
    std::vector<int> piv;
    for (size_t col = 0; col < k && rank < static_cast<size_t>(rs.rank()); ++col) {
      size_t pr = rank;
      while (pr < static_cast<size_t>(rs.rank()) && m[pr][col].is_zero()) ++pr;
      if (pr == static_cast<size_t>(rs.rank())) continue;
      std::swap(m[rank], m[pr]);
      for (size_t row = 0; row < static_cast<size_t>(rs.rank()); ++row) {
        if (row == rank || m[row][col].is_zero()) continue;
        Rat f = m[row][col] / m[rank][col];
        for (size_t jj = col; jj <= k; ++jj) m[row][jj] = m[row][jj] - f * m[rank][jj];
      }
      piv.push_back(static_cast<int>(col));
      ++rank;
    }
    for (size_t row = 0; row < rank; ++row) {
      Rat x = m[row][k] / m[row][piv[row]];
      if (!x.is_integer()) throw consistency_error("root not integral over base");
      c[piv[row]] = x.num;
    }
    coords.push_back(c);
  }
  // net weight offsets over the base (relative to member 0)
  size_t n = net.members.size();
  std::vector<std::vector<Int>> offsets(n, std::vector<Int>(k, 0));
  {
    for (size_t i = 1; i < n; ++i) {
      auto c0 = weight_in_root_basis(rs, net.members[0].w);
      auto ci = weight_in_root_basis(rs, net.members[i].w);
      std::vector<std::vector<Rat>> m(rs.rank(), std::vector<Rat>(k + 1));
      for (int row = 0; row < rs.rank(); ++row) {
        for (size_t col = 0; col < k; ++col) m[row][col] = Rat(rs.root(base[col])[row]);
        m[row][k] = ci[row] - c0[row];
      }
      size_t rank = 0;
      std::vector<int> piv;
      for (size_t col = 0; col < k && rank < static_cast<size_t>(rs.rank()); ++col) {
        size_t pr = rank;
        while (pr < static_cast<size_t>(rs.rank()) && m[pr][col].is_zero()) ++pr;
        if (pr == static_cast<size_t>(rs.rank())) continue;
        std::swap(m[rank], m[pr]);
        for (size_t row = 0; row < static_cast<size_t>(rs.rank()); ++row) {
          if (row == rank || m[row][col].is_zero()) continue;
          Rat f = m[row][col] / m[rank][col];
          for (size_t jj = col; jj <= k; ++jj) m[row][jj] = m[row][jj] - f * m[rank][jj];
        }
        piv.push_back(static_cast<int>(col));
        ++rank;
      }
      for (size_t row = 0; row < rank; ++row) {
        Rat x = m[row][k] / m[row][piv[row]];
        if (!x.is_integer()) throw consistency_error("net offset not integral over base");
        offsets[i][piv[row]] = x.num;
      }
    }
  }
  std::vector<Int> mass(n);
  Int total = 0;
  for (size_t i = 0; i < n; ++i) {
    mass[i] = table.row_by_index(net.members[i].orbit_index).multiplicity.eval(p);
    total += mass[i];
  }
  std::optional<Int> best;
  std::vector<Int> phi(k, 0);
  std::function<void(size_t)> rec = [&](size_t pos) {
    if (pos == k) {
      for (const auto& c : coords) {
        Int v = 0;
        for (size_t b = 0; b < k; ++b) v += c[b] * phi[b];
        if (((v % r) + r) % r == 0) return;  // vanishes on a root: inadmissible
      }
      std::map<Int, Int> cls;
      for (size_t i = 0; i < n; ++i) {
        Int v = 0;
        for (size_t b = 0; b < k; ++b) v += offsets[i][b] * phi[b];
        cls[((v % r) + r) % r] += mass[i];
      }
      Int largest = 0;
      for (auto& [key, val] : cls) largest = std::max(largest, val);
      Int c = total - largest;
      if (!best || c < *best) best = c;
      return;
    }
    for (Int v = 0; v < r; ++v) {
      phi[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace stabgate
