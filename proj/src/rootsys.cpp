#include "stabgate/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <unordered_set>

namespace stabgate {

GroupId GroupId::parse(const std::string& s) {
  if (s.size() < 2) throw argument_error("bad group id: " + s);
  char t = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  int r = std::stoi(s.substr(1));
  return {t, r};
}

namespace {

void validate(GroupId id) {
  auto bad = [&] { throw config_error("invalid simple type " + id.str()); };
  switch (id.type) {
    case 'A':
      if (id.rank < 1) bad();
      break;
    case 'B':
      if (id.rank < 1) bad();  // B1 allowed for internal use (short-root A1)
      break;
    case 'C':
      if (id.rank < 1) bad();
      break;
    case 'D':
      if (id.rank < 3) bad();
      break;
    case 'E':
      if (id.rank < 6 || id.rank > 8) bad();
      break;
    case 'F':
      if (id.rank != 4) bad();
      break;
    case 'G':
      if (id.rank != 2) bad();
      break;
    default:
      bad();
  }
}

// Cartan matrix and simple-root norms (Bourbaki numbering, 0-based).
void cartan_data(GroupId id, std::vector<std::vector<Int>>& A, std::vector<Int>& norm2) {
  int n = id.rank;
  A.assign(n, std::vector<Int>(n, 0));
  norm2.assign(n, 2);
  for (int i = 0; i < n; ++i) A[i][i] = 2;
  auto chain = [&](int i, int j) {
    A[i][j] = -1;
    A[j][i] = -1;
  };
  switch (id.type) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      if (n >= 2) {
        A[n - 2][n - 1] = -2;  // <alpha_{l-1}, alpha_l^vee>
        A[n - 1][n - 2] = -1;
      }
      norm2[n - 1] = 1;
      for (int i = 0; i + 1 < n; ++i) norm2[i] = 2;
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      if (n >= 2) {
        A[n - 2][n - 1] = -1;
        A[n - 1][n - 2] = -2;
      }
      norm2[n - 1] = 4;
      for (int i = 0; i + 1 < n; ++i) norm2[i] = 2;
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) chain(i, i + 1);
      chain(n - 3, n - 1);
      break;
    case 'E':
      // Bourbaki: chain 1-3-4-5-6(-7)(-8), node 2 hangs off node 4.
      chain(0, 2);
      chain(2, 3);
      chain(3, 4);
      chain(4, 5);
      if (n >= 7) chain(5, 6);
      if (n >= 8) chain(6, 7);
      chain(1, 3);
      break;
    case 'F':
      chain(0, 1);
      chain(2, 3);
      A[1][2] = -2;
      A[2][1] = -1;
      norm2[0] = norm2[1] = 4;
      norm2[2] = norm2[3] = 2;
      break;
    case 'G':
      // alpha_1 short, alpha_2 long; highest root 3a1 + 2a2
      A[0][1] = -1;
      A[1][0] = -3;
      norm2[0] = 2;
      norm2[1] = 6;
      break;
  }
}

Int weyl_order_of(GroupId id) {
  Int n = id.rank;
  auto fact = [](Int m) {
    Int f = 1;
    for (Int i = 2; i <= m; ++i) f = checked_mul(f, i);
    return f;
  };
  switch (id.type) {
    case 'A':
      return fact(n + 1);
    case 'B':
    case 'C':
      return checked_mul(Int(1) << n, fact(n));
    case 'D':
      return checked_mul(Int(1) << (n - 1), fact(n));
    case 'E':
      if (n == 6) return 51840;
      if (n == 7) return 2903040;
      return 696729600;
    case 'F':
      return 1152;
    case 'G':
      return 12;
  }
  throw config_error("unreachable");
}

}  // namespace

RootSystem RootSystem::build(GroupId id) {
  validate(id);
  RootSystem rs;
  rs.id_ = id;
  cartan_data(id, rs.cartan_, rs.norm2_simple_);
  int n = id.rank;
  rs.gram_.assign(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Int v = rs.cartan_[i][j] * rs.norm2_simple_[j];
      if (v % 2 != 0) throw consistency_error("gram matrix not integral");
      rs.gram_[i][j] = v / 2;
    }
  rs.max_norm2_ = *std::max_element(rs.norm2_simple_.begin(), rs.norm2_simple_.end());

  // Close the simple roots under simple reflections; every root arises.
  std::set<RootVec> seen;
  std::deque<RootVec> queue;
  for (int i = 0; i < n; ++i) {
    RootVec e(n, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    RootVec v = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      // s_i(v) = v - <v, alpha_i^vee> alpha_i
      Int pair = 0;
      for (int j = 0; j < n; ++j) pair += v[j] * rs.cartan_[j][i];
      RootVec w = v;
      w[i] -= pair;
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  // negatives of everything found (the set is already negation-closed, but be safe)
  for (auto it = seen.begin(); it != seen.end();) {
    RootVec neg = *it;
    for (auto& c : neg) c = -c;
    if (!seen.count(neg)) {
      seen.insert(neg);
      it = seen.begin();
    } else
      ++it;
  }

  rs.roots_.assign(seen.begin(), seen.end());
  std::sort(rs.roots_.begin(), rs.roots_.end(), [&](const RootVec& a, const RootVec& b) {
    Int ha = 0, hb = 0;
    for (Int c : a) ha += c;
    for (Int c : b) hb += c;
    if (ha != hb) return ha < hb;
    return a < b;
  });
  for (int i = 0; i < static_cast<int>(rs.roots_.size()); ++i) rs.index_[rs.roots_[i]] = i;

  rs.neg_of_.resize(rs.roots_.size());
  rs.short_flag_.resize(rs.roots_.size());
  Int min_norm = -1;
  for (const auto& r : rs.roots_) {
    Int nn = rs.form(r, r);
    if (min_norm < 0 || nn < min_norm) min_norm = nn;
  }
  for (size_t i = 0; i < rs.roots_.size(); ++i) {
    RootVec neg = rs.roots_[i];
    for (auto& c : neg) c = -c;
    rs.neg_of_[i] = rs.index_.at(neg);
    // single-length systems: regard all roots as short (Section 1.2 convention)
    rs.short_flag_[i] = rs.form(rs.roots_[i], rs.roots_[i]) == min_norm;
  }

  rs.simple_perm_.assign(n, std::vector<int>(rs.roots_.size()));
  for (int i = 0; i < n; ++i) {
    RootVec alpha(n, 0);
    alpha[i] = 1;
    int ai = rs.index_.at(alpha);
    for (size_t k = 0; k < rs.roots_.size(); ++k)
      rs.simple_perm_[i][k] = rs.index_.at(rs.reflect(rs.roots_[k], ai));
  }

  rs.weyl_order_ = weyl_order_of(id);

  // |Phi| = dim G - rank G sanity numbers per type
  Int expect = 0;
  switch (id.type) {
    case 'A':
      expect = Int(n) * (n + 1);
      break;
    case 'B':
    case 'C':
      expect = 2 * Int(n) * n;
      break;
    case 'D':
      expect = 2 * Int(n) * (n - 1);
      break;
    case 'E':
      expect = (n == 6) ? 72 : (n == 7) ? 126 : 240;
      break;
    case 'F':
      expect = 48;
      break;
    case 'G':
      expect = 12;
      break;
  }
  if (id.type == 'B' && n == 1) expect = 2;
  if (rs.num_roots() != expect) throw consistency_error("root count mismatch for " + id.str());
  return rs;
}

const RootSystem& RootSystem::get(GroupId id) {
  static std::map<GroupId, RootSystem> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, build(id)).first;
  return it->second;
}

int RootSystem::root_index(const RootVec& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}

bool RootSystem::is_positive(int idx) const {
  for (Int c : roots_[idx]) {
    if (c > 0) return true;
    if (c < 0) return false;
  }
  return false;
}

Int RootSystem::height(int idx) const {
  Int h = 0;
  for (Int c : roots_[idx]) h += c;
  return h;
}

Int RootSystem::form(const RootVec& a, const RootVec& b) const {
  Int s = 0;
  int n = rank();
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j)
      if (b[j] != 0) s = checked_add(s, checked_mul(a[i], checked_mul(b[j], gram_[i][j])));
  }
  return s;
}

Int RootSystem::pairing_with_coroot(const RootVec& v, int beta_idx) const {
  const RootVec& beta = roots_[beta_idx];
  Int num = 2 * form(v, beta);
  Int den = form(beta, beta);
  if (num % den != 0) throw consistency_error("non-integral coroot pairing");
  return num / den;
}

RootVec RootSystem::reflect(const RootVec& v, int alpha_idx) const {
  if (alpha_idx < 0 || alpha_idx >= num_roots())
    throw argument_error("reflection axis is not a root of the system");
  Int c = pairing_with_coroot(v, alpha_idx);
  RootVec w = v;
  const RootVec& alpha = roots_[alpha_idx];
  for (int i = 0; i < rank(); ++i) w[i] -= c * alpha[i];
  return w;
}

int RootSystem::epsilon_dim() const {
  switch (id_.type) {
    case 'A':
      return id_.rank + 1;
    case 'B':
    case 'C':
    case 'D':
      return id_.rank;
    default:
      throw argument_error("epsilon coordinates only for classical types");
  }
}

std::vector<Int> RootSystem::to_epsilon(int idx) const {
  int n = id_.rank;
  int m = epsilon_dim();
  // epsilon-vectors of the simple roots, scaled by 2 for type B so that
  // everything stays integral (alpha_l = eps_l has the only odd entries).
  std::vector<Int> out(m, 0);
  const RootVec& r = roots_[idx];
  auto add_simple = [&](int i, Int coeff) {
    if (coeff == 0) return;
    if (id_.type == 'A' || i + 1 < n) {
      out[i] += coeff;
      out[i + 1] -= coeff;
      return;
    }
    switch (id_.type) {
      case 'B':
        out[n - 1] += coeff;
        break;
      case 'C':
        out[n - 1] += 2 * coeff;
        break;
      case 'D':
        out[n - 2] += coeff;
        out[n - 1] += coeff;
        break;
      default:
        break;
    }
  };
  for (int i = 0; i < n; ++i) add_simple(i, r[i]);
  return out;
}

std::optional<RootVec> RootSystem::from_epsilon(const std::vector<Int>& eps) const {
  // brute inverse: compare against all roots (classical ranks are small)
  for (int i = 0; i < num_roots(); ++i)
    if (to_epsilon(i) == eps) return roots_[i];
  return std::nullopt;
}

bool Subsystem::contains(int idx) const {
  return std::binary_search(root_idx.begin(), root_idx.end(), idx);
}

int Subsystem::rank() const {
  int r = 0;
  for (const auto& c : components) r += c.rank;
  return r;
}

Int coxeter_number(char type, int rank) {
  switch (type) {
    case 'A':
      return rank + 1;
    case 'B':
    case 'C':
      return 2 * rank;
    case 'D':
      return 2 * rank - 2;
    case 'E':
      return rank == 6 ? 12 : rank == 7 ? 18 : 30;
    case 'F':
      return 12;
    case 'G':
      return 6;
  }
  throw config_error("unknown type");
}

Int Subsystem::max_coxeter_number() const {
  Int h = 1;
  for (const auto& c : components) h = std::max(h, coxeter_number(c.type, c.rank));
  return h;
}

namespace {

// Classify one component from its base (ambient indices).  Uses root count
// and length statistics; B2/C2 coincide and default to 'B' unless the ambient
// is type C.
SubComponent classify_component(const RootSystem& rs, const std::vector<int>& base,
                                const std::vector<int>& comp_roots) {
  SubComponent sc;
  sc.base = base;
  sc.rank = static_cast<int>(base.size());
  sc.num_roots = static_cast<Int>(comp_roots.size());
  Int lo = -1, hi = -1;
  for (int idx : comp_roots) {
    Int nn = rs.norm2(rs.root(idx));
    if (lo < 0 || nn < lo) lo = nn;
    if (nn > hi) hi = nn;
  }
  Int ambient_hi = -1, ambient_lo = -1;
  for (int idx = 0; idx < rs.num_roots(); ++idx) {
    Int nn = rs.norm2(rs.root(idx));
    if (ambient_lo < 0 || nn < ambient_lo) ambient_lo = nn;
    if (nn > ambient_hi) ambient_hi = nn;
  }
  sc.ambient_short = (ambient_lo < ambient_hi) && (hi < ambient_hi);
  int r = sc.rank;
  Int cnt = sc.num_roots;
  bool two_lengths = lo < hi;
  if (!two_lengths && cnt == Int(r) * (r + 1)) {
    sc.type = 'A';
    return sc;
  }
  if (two_lengths && r >= 2 && cnt == 2 * Int(r) * r) {
    if (r == 2) {
      sc.type = (rs.id().type == 'C') ? 'C' : 'B';
      return sc;
    }
    Int longs = 0;
    for (int idx : comp_roots)
      if (rs.norm2(rs.root(idx)) == hi) ++longs;
    sc.type = (longs == 2 * r) ? 'C' : 'B';
    return sc;
  }
  if (!two_lengths && r >= 3 && cnt == 2 * Int(r) * (r - 1)) {
    sc.type = 'D';
    return sc;
  }
  if (two_lengths && r == 2 && cnt == 12) {
    sc.type = 'G';
    return sc;
  }
  if (two_lengths && r == 4 && cnt == 48) {
    sc.type = 'F';
    return sc;
  }
  if (!two_lengths && ((r == 6 && cnt == 72) || (r == 7 && cnt == 126) || (r == 8 && cnt == 240))) {
    sc.type = 'E';
    return sc;
  }
  throw consistency_error("unclassifiable subsystem component (rank " + std::to_string(r) +
                          ", roots " + std::to_string(cnt) + ")");
}

std::string component_name(const RootSystem& rs, const SubComponent& c) {
  char amb = rs.id().type;
  if (c.rank == 1) {
    if (amb == 'B') return c.ambient_short ? "B1" : "A1";
    if (amb == 'C') return c.ambient_short ? "A1" : "C1";
    if (amb == 'F' || amb == 'G') return c.ambient_short ? "A1~" : "A1";
    return "A1";
  }
  std::string name = std::string(1, c.type) + std::to_string(c.rank);
  if ((amb == 'F' || amb == 'G') && c.ambient_short) name += "~";
  return name;
}

}  // namespace

Subsystem subsystem_from_generators(const RootSystem& rs, const std::vector<int>& generators) {
  Subsystem sub;
  sub.ambient = &rs;
  std::set<int> closure;
  for (int g : generators) {
    if (g < 0 || g >= rs.num_roots()) throw argument_error("generator is not a root index");
    closure.insert(g);
    closure.insert(rs.negative_of(g));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(closure.begin(), closure.end());
    for (size_t a = 0; a < cur.size(); ++a)
      for (size_t b = a + 1; b < cur.size(); ++b) {
        RootVec s = rs.root(cur[a]);
        const RootVec& t = rs.root(cur[b]);
        for (int i = 0; i < rs.rank(); ++i) s[i] += t[i];
        int idx = rs.root_index(s);
        if (idx >= 0 && !closure.count(idx)) {
          closure.insert(idx);
          closure.insert(rs.negative_of(idx));
          grew = true;
        }
      }
  }
  sub.root_idx.assign(closure.begin(), closure.end());
  if (sub.root_idx.empty()) {
    sub.label = "0";
    return sub;
  }

  // base: positive roots of the subsystem not expressible as a sum of two
  std::vector<int> pos;
  for (int idx : sub.root_idx)
    if (rs.is_positive(idx)) pos.push_back(idx);
  std::set<int> pos_set(pos.begin(), pos.end());
  std::vector<int> base;
  for (int idx : pos) {
    bool decomposable = false;
    for (int a : pos) {
      if (a == idx) continue;
      RootVec diff = rs.root(idx);
      const RootVec& ra = rs.root(a);
      for (int i = 0; i < rs.rank(); ++i) diff[i] -= ra[i];
      int di = rs.root_index(diff);
      if (di >= 0 && pos_set.count(di)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) base.push_back(idx);
  }
  std::sort(base.begin(), base.end());

  // components via orthogonality graph on the base
  int nb = static_cast<int>(base.size());
  std::vector<int> comp(nb, -1);
  int ncomp = 0;
  for (int i = 0; i < nb; ++i) {
    if (comp[i] >= 0) continue;
    std::deque<int> q{i};
    comp[i] = ncomp;
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      for (int b = 0; b < nb; ++b)
        if (comp[b] < 0 && rs.form(rs.root(base[a]), rs.root(base[b])) != 0) {
          comp[b] = ncomp;
          q.push_back(b);
        }
    }
    ++ncomp;
  }
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> cbase;
    for (int i = 0; i < nb; ++i)
      if (comp[i] == c) cbase.push_back(base[i]);
    // roots of this component: those whose decomposition over the base uses
    // only this component's simple roots; equivalently non-orthogonal closure
    std::vector<int> croots;
    for (int idx : sub.root_idx) {
      bool touches = false, touches_other = false;
      for (int i = 0; i < nb; ++i) {
        if (rs.form(rs.root(idx), rs.root(base[i])) != 0) {
          if (comp[i] == c)
            touches = true;
          else
            touches_other = true;
        }
      }
      if (touches && !touches_other) croots.push_back(idx);
    }
    sub.components.push_back(classify_component(rs, cbase, croots));
  }
  std::sort(sub.components.begin(), sub.components.end(),
            [&](const SubComponent& a, const SubComponent& b) {
              if (a.rank != b.rank) return a.rank > b.rank;
              std::string na = component_name(rs, a), nb2 = component_name(rs, b);
              return na < nb2;
            });
  for (const auto& c : sub.components) sub.label += component_name(rs, c);
  Int total = 0;
  for (const auto& c : sub.components) total += c.num_roots;
  if (total != sub.size()) throw consistency_error("component decomposition lost roots");
  return sub;
}

Subsystem standard_subsystem(const RootSystem& rs, const std::vector<int>& simple_positions) {
  std::vector<int> gens;
  for (int pos : simple_positions) {
    if (pos < 1 || pos > rs.rank()) throw argument_error("simple-root position out of range");
    RootVec e(rs.rank(), 0);
    e[pos - 1] = 1;
    gens.push_back(rs.root_index(e));
  }
  return subsystem_from_generators(rs, gens);
}

void for_each_conjugate(const RootSystem& rs, const Subsystem& psi,
                        const std::function<bool(const std::vector<int>&)>& visit, Int cap) {
  if (psi.root_idx.empty()) {
    visit(psi.root_idx);
    return;
  }
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  seen.insert(psi.root_idx);
  queue.push_back(psi.root_idx);
  if (!visit(psi.root_idx)) return;
  while (!queue.empty()) {
    std::vector<int> cur = queue.front();
    queue.pop_front();
    for (int i = 0; i < rs.rank(); ++i) {
      const auto& perm = rs.simple_reflection_perm(i);
      std::vector<int> next(cur.size());
      for (size_t k = 0; k < cur.size(); ++k) next[k] = perm[cur[k]];
      std::sort(next.begin(), next.end());
      if (seen.insert(next).second) {
        if (static_cast<Int>(seen.size()) > cap)
          throw resource_error("conjugate enumeration exceeded cap (" + std::to_string(cap) +
                               " subsets reached)");
        queue.push_back(next);
        if (!visit(next)) return;
      }
    }
  }
}

std::vector<std::vector<int>> conjugates(const RootSystem& rs, const Subsystem& psi, Int cap) {
  std::vector<std::vector<int>> out;
  for_each_conjugate(
      rs, psi,
      [&](const std::vector<int>& s) {
        out.push_back(s);
        return true;
      },
      cap);
  return out;
}

}  // namespace stabgate
