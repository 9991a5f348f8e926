#include <algorithm>
#include <functional>
#include <mutex>

#include "stabgate/engine.hpp"

namespace stabgate {

namespace {

// Net decompositions do not depend on the characteristic; cache them across
// the per-p instances of a sweep.
const NetDecomposition& cached_nets(const RootSystem& rs, const WeightTable& table,
                                    const Subsystem& psi) {
  static std::map<std::string, NetDecomposition> cache;
  static std::mutex mu;
  std::string key = weight_key(rs.id(), table.lambda) + "|";
  for (int idx : psi.root_idx) key += std::to_string(idx) + ",";
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute_nets(rs, table, psi)).first;
  return it->second;
}

// lower bound for B_{d,k} knowing only |d| = d and d_1 <= d1
Int b_lower_from_fixed_space(Int d, Int d1, Int k) {
  if (d1 <= 0) throw argument_error("fixed space must be positive");
  return b_min(bounded_extremal_tuple(d, d1), k).value;
}

std::string part_str(const std::vector<Int>& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

void record(FamilyReport& rep, const std::string& desc, Int lhs, Int rhs, bool only_failures) {
  bool ok = lhs > rhs;
  if (!ok) rep.certified = false;
  if (ok && only_failures) return;
  FamilyInstanceCheck c;
  c.description = desc;
  c.lhs = lhs;
  c.rhs = rhs;
  c.ok = ok;
  rep.checks.push_back(std::move(c));
}

void record_equal(FamilyReport& rep, const std::string& desc, Int got, Int expect) {
  if (got == expect) return;
  FamilyInstanceCheck c;
  c.description = desc + ": computed " + std::to_string(got) + " expected " + std::to_string(expect);
  c.lhs = got;
  c.rhs = expect;
  c.ok = false;
  rep.certified = false;
  rep.checks.push_back(std::move(c));
}

void summarize(FamilyReport& rep, const std::string& what, Int count) {
  FamilyInstanceCheck c;
  c.description = what + ": " + std::to_string(count) + " class checks";
  c.lhs = 1;
  c.rhs = 0;
  c.ok = true;
  rep.checks.push_back(std::move(c));
}

void for_each_composition(Int n, Int r, const std::function<void(const std::vector<Int>&)>& f) {
  std::vector<Int> cur(r, 0);
  std::function<void(Int, Int)> rec = [&](Int pos, Int left) {
    if (pos == r - 1) {
      cur[pos] = left;
      f(cur);
      return;
    }
    for (Int v = 0; v <= left; ++v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, n);
}

std::vector<Int> rreps_excluding(Char p) {
  std::vector<Int> out;
  for (Int r : {Int(2), Int(3), Int(5), Int(7)}) {
    if (!p.is_infinite() && p.v == r) continue;
    out.push_back(r);
  }
  return out;
}

// Cached eigenvalue machinery for semisimple sweeps on classical groups: s is
// described by epsilon exponents f_i taken modulo 2r (odd entries encode the
// xi = -1 or eta_4 branch).
struct EigenSweeper {
  const RootSystem& rs;
  std::vector<std::pair<std::vector<Int>, Int>> weight_eps;  // 2x epsilon, mult
  std::vector<std::vector<Int>> root_eps;                    // 2x epsilon

  EigenSweeper(const RootSystem& r, const WeightTable& table, Char p) : rs(r) {
    Int m = rs.epsilon_dim();
    std::vector<std::vector<Int>> simple_eps;
    for (int i = 0; i < rs.rank(); ++i) {
      RootVec e(rs.rank(), 0);
      e[i] = 1;
      simple_eps.push_back(rs.to_epsilon(rs.root_index(e)));
    }
    for (const auto& row : table.rows) {
      Int mult = row.multiplicity.eval(p);
      if (mult == 0) continue;
      for (const auto& w : weyl_orbit(rs, row.dominant)) {
        auto coords = weight_in_root_basis(rs, w);
        std::vector<Rat> eps(m, Rat(0));
        for (int i = 0; i < rs.rank(); ++i)
          for (Int j = 0; j < m; ++j) eps[j] = eps[j] + coords[i] * Rat(simple_eps[i][j]);
        std::vector<Int> doubled(m);
        for (Int j = 0; j < m; ++j) {
          Rat two = eps[j] * Rat(2);
          if (!two.is_integer()) throw consistency_error("weight epsilon coordinates not half-integral");
          doubled[j] = two.num;
        }
        weight_eps.push_back({doubled, mult});
      }
    }
    for (int idx = 0; idx < rs.num_roots(); ++idx) {
      auto ev = rs.to_epsilon(idx);
      for (auto& c : ev) c *= 2;
      root_eps.push_back(ev);
    }
  }

  // returns (sorted eigenspace dims, |Phi(s)|)
  std::pair<std::vector<Int>, Int> split(Int r, const std::vector<Int>& f) const {
    Int mod = 4 * r;  // doubled coordinates against modulus 2r
    std::map<Int, Int> cls;
    for (const auto& [eps, mult] : weight_eps) {
      Int v = 0;
      for (size_t j = 0; j < eps.size(); ++j) v += eps[j] * f[j];
      if (v % 2 != 0) throw consistency_error("odd doubled exponent");
      v /= 2;
      cls[((v % mod) + mod) % mod] += mult;
    }
    std::vector<Int> dims;
    for (auto& [key, v] : cls) dims.push_back(v);
    std::sort(dims.begin(), dims.end(), std::greater<Int>());
    Int phi = 0;
    for (const auto& ev : root_eps) {
      Int v = 0;
      for (size_t j = 0; j < ev.size(); ++j) v += ev[j] * f[j];
      v /= 2;
      if (((v % mod) + mod) % mod == 0) ++phi;
    }
    return {dims, phi};
  }
};

void ss_sweep_classical(FamilyReport& rep, const RootSystem& rs, const WeightTable& table, Char p,
                        Int k) {
  Int M = rs.num_roots();
  Int m = rs.epsilon_dim();
  char type = rs.id().type;
  EigenSweeper sweeper(rs, table, p);
  Int count = 0;
  for (Int r : rreps_excluding(p)) {
    std::vector<Int> sigmas{0};
    if (type == 'C' || type == 'D') sigmas.push_back(1);
    Int shift = (r % 2 == 1) ? r : 1;
    for (Int sigma : sigmas) {
      for_each_composition(m, r, [&](const std::vector<Int>& comp) {
        std::vector<Int> f;
        for (Int j = 0; j < r; ++j)
          for (Int c = 0; c < comp[j]; ++c) f.push_back(2 * j + sigma * shift);
        auto [dims, phi] = sweeper.split(r, f);
        Int dim_class = M - phi;
        if (dim_class == 0) return;  // central
        Int B = codim_fixed_grassmann_eigendims(dims, k);
        ++count;
        record(rep,
               "ss r=" + std::to_string(r) + " sigma=" + std::to_string(sigma) + " m=" +
                   part_str(comp) + " p=" + p.str(),
               B, dim_class, true);
      });
    }
  }
  summarize(rep, "semisimple sweep p=" + p.str(), count);
}

// ---- family: A_l, omega_2 and 2*omega_1, k0 = 3 ---------------------------

Subsystem partition_subsystem_A(const RootSystem& rs, const Partition& part) {
  std::vector<int> gens;
  Int offset = 0;
  for (Int mm : part) {
    for (Int j = 1; j < mm; ++j) gens.push_back(static_cast<int>(offset + j));
    offset += mm;
  }
  return standard_subsystem(rs, gens);
}

void family_A_k3(FamilyReport& rep, int l, bool two_omega1, Char p, Int k) {
  GroupId g{'A', l};
  const RootSystem& rs = RootSystem::get(g);
  Weight lambda(l, 0);
  if (two_omega1)
    lambda[0] = 2;
  else
    lambda[1] = 1;
  const WeightTable& table = WeightTableStore::instance().get(g, lambda);
  Int d = table.dim(p);
  Int M = rs.num_roots();

  struct ClassInfo {
    Partition m;
    Int dim = 0;
    Int c = 0;
  };
  std::vector<ClassInfo> classes;
  for (const auto& part : partitions_of(l + 1)) {
    if (part.size() == static_cast<size_t>(l + 1)) continue;
    if (!p.is_infinite() && part[0] > p.v) continue;
    ClassInfo ci;
    ci.m = part;
    ci.dim = dim_unip_class_partition('A', l, part);
    ci.c = c_total_unipotent(rs, table, cached_nets(rs, table, partition_subsystem_A(rs, part)), p);
    classes.push_back(std::move(ci));
  }
  for (const auto& ci : classes) {
    Int best = 0;
    for (const auto& cj : classes) {
      if (!dominates(ci.m, cj.m)) continue;
      best = std::max(best, b_lower_from_fixed_space(d, d - cj.c, k));
    }
    record(rep, "u class " + part_str(ci.m) + " p=" + p.str(), best, ci.dim, true);
  }
  summarize(rep, "unipotent sweep p=" + p.str(), static_cast<Int>(classes.size()));

  Int count = 0;
  for (Int r : rreps_excluding(p)) {
    for (const auto& a : partitions_of(l + 1)) {
      if (a.size() == 1) continue;
      if (static_cast<Int>(a.size()) > r) continue;
      Int phi_size = 0;
      for (Int ai : a) phi_size += ai * (ai - 1);
      Int dim_class = M - phi_size;
      const NetDecomposition& nets =
          cached_nets(rs, table, partition_subsystem_A(rs, conjugate_partition(a)));
      Int c = c_total_semisimple(rs, table, nets, r, p);
      Int B = c > 0 ? b_lower_from_fixed_space(d, d - c, k) : 0;
      ++count;
      record(rep, "ss Phi(s)=" + part_str(a) + " r=" + std::to_string(r) + " p=" + p.str(), B,
             dim_class, true);
    }
  }
  summarize(rep, "semisimple sweep p=" + p.str(), count);
}

// ---- family: A_l, omega_1 + q*omega_1, k0 = 2 ------------------------------

void family_A_w1qw1(FamilyReport& rep, int l, Int q, Int k) {
  GroupId g{'A', l};
  Char p = Char::prime(q);
  Weight lambda(l, 0);
  lambda[0] = q + 1;
  const WeightTable& table = WeightTableStore::instance().get(g, lambda);
  Int d = table.dim(p);
  if (d != (Int(l) + 1) * (l + 1)) throw consistency_error("tensor-module dimension");

  Int ucount = 0;
  for (const auto& part : partitions_of(l + 1)) {
    if (part.size() == static_cast<size_t>(l + 1)) continue;
    if (part[0] > p.v) continue;
    Int dim_class = dim_unip_class_partition('A', l, part);
    Int d1 = 0;
    for (Int a : part)
      for (Int b : part) d1 += std::min(a, b);
    Int B = b_lower_from_fixed_space(d, d1, k);
    ++ucount;
    record(rep, "u class " + part_str(part) + " q=" + std::to_string(q), B, dim_class, true);
  }
  summarize(rep, "unipotent sweep q=" + std::to_string(q), ucount);

  Int count = 0;
  for (Int r : rreps_excluding(p)) {
    for_each_composition(l + 1, r, [&](const std::vector<Int>& m) {
      Int sq = 0;
      for (Int x : m) sq += x * x;
      Int dim_class = (Int(l) + 1) * (l + 1) - sq;
      if (dim_class == 0) return;
      std::map<Int, Int> cls;
      for (Int i = 0; i < r; ++i)
        for (Int j = 0; j < r; ++j)
          if (m[i] && m[j]) cls[(i + q * j) % r] += m[i] * m[j];
      std::vector<Int> dims;
      for (auto& [key, v] : cls) dims.push_back(v);
      Int B = codim_fixed_grassmann_eigendims(dims, k);
      ++count;
      record(rep, "ss m=" + part_str(m) + " r=" + std::to_string(r) + " q=" + std::to_string(q), B,
             dim_class, true);
    });
  }
  summarize(rep, "semisimple sweep q=" + std::to_string(q), count);
}

// ---- family: B_l / D_l, 2*omega_1, k0 = 2 ----------------------------------

void family_BD_2w1(FamilyReport& rep, char type, int l, Char p, Int k) {
  GroupId g{type, l};
  const RootSystem& rs = RootSystem::get(g);
  Weight lambda(l, 0);
  lambda[0] = 2;
  const WeightTable& table = WeightTableStore::instance().get(g, lambda);
  Int d = table.dim(p);
  Int n = type == 'B' ? 2 * l + 1 : 2 * l;

  Int ucount = 0;
  for (const auto& part : partitions_of(n)) {
    if (partition_sum(part) == static_cast<Int>(part.size())) continue;
    if (!p.is_infinite() && part[0] > p.v) continue;
    Int dim_class;
    try {
      dim_class = dim_unip_class_partition(type, l, part);
    } catch (const argument_error&) {
      continue;
    }
    Partition conj = conjugate_partition(part);
    Int n0 = 0;
    for (Int c : conj) n0 += c * c;
    Int n1 = 0;
    for (Int b : part)
      if (b % 2 != 0) ++n1;
    Int d1 = (n0 + n1) / 2 - 1;  // worst case of dim C_V(u)
    Int B = b_lower_from_fixed_space(d, d1, k);
    ++ucount;
    record(rep, std::string(1, type) + " u class " + part_str(part) + " p=" + p.str(), B,
           dim_class, true);
  }
  summarize(rep, "unipotent sweep p=" + p.str(), ucount);
  ss_sweep_classical(rep, rs, table, p, k);
}

// ---- family: C_l, omega_2, k0 = 2 ------------------------------------------

void family_C_w2(FamilyReport& rep, int l, Char p, Int k) {
  GroupId g{'C', l};
  const RootSystem& rs = RootSystem::get(g);
  Weight lambda(l, 0);
  lambda[1] = 1;
  const WeightTable& table = WeightTableStore::instance().get(g, lambda);
  Int d = table.dim(p);

  Int ucount = 0;
  if (!p.is_infinite() && p.v == 2) {
    for (Int i = 0; i <= 2; ++i) {
      Int ylo = i == 0 ? 1 : 0;
      for (Int y = ylo; 2 * y + i <= l; ++y) {
        Int dim_class = dim_p2_class(l, y, i);
        Int yy = i == 2 ? y + 1 : y;  // V(2)^2 classes contain A_1^{y+1} in their closure
        if (2 * yy + (i == 1 ? 1 : 0) > l) continue;
        std::vector<int> gens;
        for (Int j = 1; j <= yy; ++j) gens.push_back(static_cast<int>(2 * j - 1));
        if (i == 1) gens.push_back(l);
        Subsystem psi = standard_subsystem(rs, gens);
        Int c = c_total_unipotent(rs, table, cached_nets(rs, table, psi), p);
        if (i == 0)
          record_equal(rep, "c(u) closed form A1^" + std::to_string(yy) + " l=" + std::to_string(l),
                       c, yy * (4 * l - 4 * yy - 3));
        else if (i == 1)
          record_equal(rep, "c(u) closed form A1^" + std::to_string(y) + "C1 l=" + std::to_string(l),
                       c, 4 * l * y - 4 * y * y + 2 * l - 7 * y - 2);
        Int B = b_lower_from_fixed_space(d, d - c, k);
        if (i == 2 && l == 4 && y == 1) {
          RootVec a1(rs.rank(), 0);
          a1[0] = 1;
          RootVec a4(rs.rank(), 0);
          a4[3] = 1;
          RootVec twoe3(rs.rank(), 0);
          twoe3[2] = 2;
          twoe3[3] = 1;  // 2 eps_3
          Subsystem special = subsystem_from_generators(
              rs, {rs.root_index(a1), rs.root_index(a4), rs.root_index(twoe3)});
          NetDecomposition snets = compute_nets(rs, table, special);
          Int cs = c_total_unipotent(rs, table, snets, p);
          B = std::max(B, b_lower_from_fixed_space(d, d - cs, k));
        }
        ++ucount;
        record(rep, "u class W(2)^" + std::to_string(y) + "V(2)^" + std::to_string(i) + " p=2", B,
               dim_class, true);
      }
    }
  } else {
    for (const auto& part : partitions_of(2 * l)) {
      if (partition_sum(part) == static_cast<Int>(part.size())) continue;
      if (!p.is_infinite() && part[0] > p.v) continue;
      Int dim_class;
      try {
        dim_class = dim_unip_class_partition('C', l, part);
      } catch (const argument_error&) {
        continue;
      }
      Partition conj = conjugate_partition(part);
      Int n0 = 0;
      for (Int c : conj) n0 += c * c;
      Int n1 = 0;
      for (Int b : part)
        if (b % 2 != 0) ++n1;
      Int d1 = (n0 - n1) / 2 - 1;
      Int B = b_lower_from_fixed_space(d, d1, k);
      ++ucount;
      record(rep, "u class " + part_str(part) + " p=" + p.str(), B, dim_class, true);
    }
  }
  summarize(rep, "unipotent sweep p=" + p.str(), ucount);
  ss_sweep_classical(rep, rs, table, p, k);
}

}  // namespace

std::vector<std::string> family_ids() {
  return {"A_w2_k3", "A_2w1_k3", "A_w1qw1_k2", "B_2w1_k2", "D_2w1_k2", "C_w2_k2"};
}

std::vector<FamilyReport> family_sweep(const std::string& family_id, int rank_lo, int rank_hi,
                                       bool spot_check_k_plus_one) {
  load_all_data();
  std::vector<FamilyReport> out;
  auto run = [&](GroupId g, const Weight& lambda, const std::string& pclass, Int k,
                 const std::function<void(FamilyReport&, Char, Int)>& body) {
    for (Int kk : spot_check_k_plus_one ? std::vector<Int>{k, k + 1} : std::vector<Int>{k}) {
      FamilyReport rep;
      rep.family_id = family_id;
      rep.quad.group = g;
      rep.quad.lambda = lambda;
      rep.quad.p_class = PClass::parse(pclass);
      rep.quad.k = kk;
      const WeightTable& table = WeightTableStore::instance().get(g, lambda);
      bool any = false;
      for (Char p : rep.quad.p_class.reps()) {
        if (2 * kk > table.dim(p)) continue;
        any = true;
        body(rep, p, kk);
      }
      if (any) out.push_back(std::move(rep));
    }
  };

  std::vector<std::string> known = family_ids();
  if (std::find(known.begin(), known.end(), family_id) == known.end())
    throw argument_error("unknown family: " + family_id);
  for (int l = rank_lo; l <= rank_hi; ++l) {
    if (family_id == "A_w2_k3" && l >= 6) {
      Weight lam(l, 0);
      lam[1] = 1;
      run({'A', l}, lam, "any", 3,
          [&](FamilyReport& rep, Char p, Int k) { family_A_k3(rep, l, false, p, k); });
    } else if (family_id == "A_2w1_k3" && l >= 3) {
      Weight lam(l, 0);
      lam[0] = 2;
      run({'A', l}, lam, ">=3", 3,
          [&](FamilyReport& rep, Char p, Int k) { family_A_k3(rep, l, true, p, k); });
    } else if (family_id == "A_w1qw1_k2" && l >= 2) {
      for (Int q : {Int(2), Int(3)}) {
        Weight lam(l, 0);
        lam[0] = q + 1;
        run({'A', l}, lam, "=" + std::to_string(q), 2,
            [&, q](FamilyReport& rep, Char, Int k) { family_A_w1qw1(rep, l, q, k); });
      }
    } else if (family_id == "B_2w1_k2" && l >= 2) {
      Weight lam(l, 0);
      lam[0] = 2;
      run({'B', l}, lam, ">=3", 2,
          [&](FamilyReport& rep, Char p, Int k) { family_BD_2w1(rep, 'B', l, p, k); });
    } else if (family_id == "D_2w1_k2" && l >= 4) {
      Weight lam(l, 0);
      lam[0] = 2;
      run({'D', l}, lam, ">=3", 2,
          [&](FamilyReport& rep, Char p, Int k) { family_BD_2w1(rep, 'D', l, p, k); });
    } else if (family_id == "C_w2_k2" && l >= 4) {
      Weight lam(l, 0);
      lam[1] = 1;
      run({'C', l}, lam, "any", 2,
          [&](FamilyReport& rep, Char p, Int k) { family_C_w2(rep, l, p, k); });
    }
  }
  return out;
}

}  // namespace stabgate
