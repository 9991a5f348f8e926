#include "stabgate/weights.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>

namespace stabgate {

bool is_dominant(const Weight& w) {
  for (Int c : w)
    if (c < 0) return false;
  return true;
}

Weight simple_reflect_weight(const RootSystem& rs, const Weight& w, int i) {
  Weight out = w;
  Int c = w[i];
  for (int j = 0; j < rs.rank(); ++j) out[j] -= c * rs.cartan(i, j);
  return out;
}

std::vector<Rat> weight_in_root_basis(const RootSystem& rs, const Weight& w) {
  // solve x * Cartan = w  (alpha_i = sum_j cartan(i,j) omega_j)
  int n = rs.rank();
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = Rat(rs.cartan(j, i));
    m[i][n] = Rat(w[i]);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!m[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw consistency_error("singular Cartan matrix");
    std::swap(m[col], m[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      Rat f = m[r][col] / m[col][col];
      for (int j = col; j <= n; ++j) m[r][j] = m[r][j] - f * m[col][j];
    }
  }
  std::vector<Rat> x(n);
  for (int i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

Weight root_vec_to_weight(const RootSystem& rs, const RootVec& v) {
  Weight w(rs.rank(), 0);
  for (int j = 0; j < rs.rank(); ++j)
    for (int i = 0; i < rs.rank(); ++i) w[j] += v[i] * rs.cartan(i, j);
  return w;
}

std::vector<Weight> weyl_orbit(const RootSystem& rs, const Weight& dominant) {
  if (static_cast<int>(dominant.size()) != rs.rank())
    throw argument_error("weight has wrong rank");
  if (!is_dominant(dominant)) throw argument_error("weyl_orbit requires a dominant weight");
  std::set<Weight> seen{dominant};
  std::deque<Weight> queue{dominant};
  while (!queue.empty()) {
    Weight w = queue.front();
    queue.pop_front();
    for (int i = 0; i < rs.rank(); ++i) {
      if (w[i] == 0) continue;
      Weight nxt = simple_reflect_weight(rs, w, i);
      if (seen.insert(nxt).second) queue.push_back(nxt);
    }
  }
  std::vector<Weight> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [&](const Weight& a, const Weight& b) {
    return weight_in_root_basis(rs, a) < weight_in_root_basis(rs, b);
  });
  return out;
}

Int weyl_stabilizer_order(const RootSystem& rs, const Weight& dominant) {
  if (!is_dominant(dominant)) throw argument_error("stabilizer formula needs a dominant weight");
  std::vector<int> fixed;
  for (int i = 0; i < rs.rank(); ++i)
    if (dominant[i] == 0) fixed.push_back(i + 1);
  if (fixed.empty()) return 1;
  Subsystem sub = standard_subsystem(rs, fixed);
  Int order = 1;
  for (const auto& c : sub.components) order = checked_mul(order, RootSystem::get({c.type, c.rank}).weyl_order());
  return order;
}

Int weyl_orbit_size(const RootSystem& rs, const Weight& dominant) {
  return rs.weyl_order() / weyl_stabilizer_order(rs, dominant);
}

// <mu, beta^vee> for mu in fundamental coordinates:
// 2(mu, beta) = sum_i mu_i * (alpha_i, alpha_i) * b_i.
Int pairing_weight_coroot(const RootSystem& rs, const Weight& w, int beta_idx) {
  const RootVec& beta = rs.root(beta_idx);
  Int num = 0;
  for (int i = 0; i < rs.rank(); ++i) {
    RootVec e(rs.rank(), 0);
    e[i] = 1;
    num = checked_add(num, checked_mul(w[i], checked_mul(rs.form(e, e), beta[i])));
  }
  Int den = rs.norm2(beta);
  if (num % den != 0) throw consistency_error("non-integral weight/coroot pairing");
  return num / den;
}

Int weyl_dim_formula(const RootSystem& rs, const Weight& lambda) {
  Rat prod(1);
  Weight rho(rs.rank(), 1);
  Weight lam_rho(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) lam_rho[i] = lambda[i] + 1;
  for (int idx = 0; idx < rs.num_roots(); ++idx) {
    if (!rs.is_positive(idx)) continue;
    prod = prod * Rat(pairing_weight_coroot(rs, lam_rho, idx), pairing_weight_coroot(rs, rho, idx));
  }
  if (!prod.is_integer()) throw consistency_error("Weyl dimension formula gave a non-integer");
  return prod.num;
}

namespace {

Rat weight_form(const RootSystem& rs, const Weight& a, const Weight& b) {
  auto ca = weight_in_root_basis(rs, a);
  auto cb = weight_in_root_basis(rs, b);
  Rat s(0);
  RootVec ei(rs.rank(), 0), ej(rs.rank(), 0);
  for (int i = 0; i < rs.rank(); ++i) {
    ei.assign(rs.rank(), 0);
    ei[i] = 1;
    for (int j = 0; j < rs.rank(); ++j) {
      ej.assign(rs.rank(), 0);
      ej[j] = 1;
      s = s + ca[i] * cb[j] * Rat(rs.form(ei, ej));
    }
  }
  return s;
}

}  // namespace

const std::map<Weight, Int>& weyl_module_weights(GroupId g, const Weight& lambda) {
  static std::map<std::pair<GroupId, Weight>, std::map<Weight, Int>> cache;
  static std::mutex mu;
  auto key = std::make_pair(g, lambda);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const RootSystem& rs = RootSystem::get(g);
  if (!is_dominant(lambda)) throw argument_error("Weyl module needs a dominant highest weight");

  // dominant weights under lambda: mu = lambda - sum c_i alpha_i dominant with
  // c_i bounded by the root coordinates of lambda - w0(lambda)
  Weight lowest = lambda;
  bool moved0 = true;
  while (moved0) {
    moved0 = false;
    for (int i = 0; i < rs.rank(); ++i)
      if (lowest[i] > 0) {
        lowest = simple_reflect_weight(rs, lowest, i);
        moved0 = true;
      }
  }
  std::vector<Int> bound(rs.rank());
  {
    auto cl = weight_in_root_basis(rs, lambda);
    auto cw = weight_in_root_basis(rs, lowest);
    for (int i = 0; i < rs.rank(); ++i) {
      Rat b = cl[i] - cw[i];
      if (!b.is_integer() || b.num < 0) throw consistency_error("bad weight spread");
      bound[i] = b.num;
    }
  }
  std::set<Weight> dominants;
  std::vector<Int> c(rs.rank(), 0);
  std::function<void(int)> enumerate = [&](int pos) {
    if (pos == rs.rank()) {
      Weight mu = lambda;
      for (int i = 0; i < rs.rank(); ++i) {
        Weight alpha_w = root_vec_to_weight(rs, [&] {
          RootVec e(rs.rank(), 0);
          e[i] = 1;
          return e;
        }());
        for (int j = 0; j < rs.rank(); ++j) mu[j] -= c[i] * alpha_w[j];
      }
      if (is_dominant(mu)) dominants.insert(mu);
      return;
    }
    for (Int v = 0; v <= bound[pos]; ++v) {
      c[pos] = v;
      enumerate(pos + 1);
    }
  };
  enumerate(0);

  // order dominants by decreasing height of lambda - mu
  std::vector<Weight> order(dominants.begin(), dominants.end());
  auto depth = [&](const Weight& mu) {
    auto cl = weight_in_root_basis(rs, lambda);
    auto cm = weight_in_root_basis(rs, mu);
    Rat d(0);
    for (int i = 0; i < rs.rank(); ++i) d = d + (cl[i] - cm[i]);
    return d;
  };
  std::sort(order.begin(), order.end(),
            [&](const Weight& a, const Weight& b) { return depth(a) < depth(b); });

  Weight rho(rs.rank(), 1);
  auto rho_norm = [&](const Weight& mu) {
    Weight s(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) s[i] = mu[i] + 1;
    return weight_form(rs, s, s);
  };
  Rat top = rho_norm(lambda);

  std::map<Weight, Rat> mult;  // on dominant representatives
  mult[lambda] = Rat(1);
  auto lookup = [&](Weight w) -> Rat {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < rs.rank(); ++i)
        if (w[i] < 0) {
          w = simple_reflect_weight(rs, w, i);
          moved = true;
        }
    }
    auto mit = mult.find(w);
    return mit == mult.end() ? Rat(0) : mit->second;
  };
  for (const auto& mu : order) {
    if (mu == lambda) continue;
    Rat denom = top - rho_norm(mu);
    Rat sum(0);
    for (int idx = 0; idx < rs.num_roots(); ++idx) {
      if (!rs.is_positive(idx)) continue;
      Weight alpha_w = root_vec_to_weight(rs, rs.root(idx));
      for (Int k = 1;; ++k) {
        Weight shifted = mu;
        for (int i = 0; i < rs.rank(); ++i) shifted[i] += k * alpha_w[i];
        // stop once we leave the cone below lambda
        auto cl = weight_in_root_basis(rs, lambda);
        auto cs = weight_in_root_basis(rs, shifted);
        bool in_cone = true;
        for (int i = 0; i < rs.rank(); ++i)
          if ((cl[i] - cs[i]).num < 0) in_cone = false;
        if (!in_cone) break;
        Rat m = lookup(shifted);
        if (!m.is_zero()) sum = sum + m * weight_form(rs, shifted, root_vec_to_weight(rs, rs.root(idx)));
      }
    }
    if (denom.is_zero()) {
      if (!sum.is_zero()) throw consistency_error("Freudenthal recursion degenerate");
      continue;
    }
    Rat m = Rat(2) * sum / denom;
    if (!m.is_integer() || m.num < 0) throw consistency_error("Freudenthal gave a bad multiplicity");
    if (m.num > 0) mult[mu] = m;
  }

  std::map<Weight, Int> full;
  for (const auto& [dom, m] : mult)
    for (const auto& w : weyl_orbit(rs, dom)) full[w] = m.num;
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(full)).first->second;
}

Int WeightTable::dim(Char p) const {
  Int d = 0;
  for (const auto& r : rows) d = checked_add(d, checked_mul(r.orbit_size, r.multiplicity.eval(p)));
  if (d <= 0) throw consistency_error("weight table dimension must be positive");
  return d;
}

const WeightTableRow& WeightTable::row_by_index(int orbit_index) const {
  for (const auto& r : rows)
    if (r.orbit_index == orbit_index) return r;
  throw argument_error("no weight-table row with index " + std::to_string(orbit_index));
}

int WeightTable::orbit_of(const RootSystem& rs, const Weight& w) const {
  // dominant representative by repeated reflection
  Weight cur = w;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < rs.rank(); ++i)
      if (cur[i] < 0) {
        cur = simple_reflect_weight(rs, cur, i);
        moved = true;
      }
  }
  for (const auto& r : rows)
    if (r.dominant == cur) return r.orbit_index;
  return -1;
}

std::vector<WeightTable::Entry> WeightTable::all_weights(const RootSystem& rs) const {
  std::vector<Entry> out;
  for (const auto& r : rows)
    for (const auto& w : weyl_orbit(rs, r.dominant)) out.push_back({w, r.orbit_index});
  return out;
}

WeightTableStore& WeightTableStore::instance() {
  static WeightTableStore store;
  return store;
}

void WeightTableStore::add(WeightTable t) {
  tables_[{t.group, t.lambda}] = std::move(t);
}

bool WeightTableStore::has(GroupId g, const Weight& lambda) const {
  return tables_.count({g, lambda}) > 0;
}

const WeightTable& WeightTableStore::get(GroupId g, const Weight& lambda, SourcePolicy policy) {
  auto it = tables_.find({g, lambda});
  if (it == tables_.end()) {
    if (policy == SourcePolicy::embedded_only)
      throw data_missing_error("no embedded weight table for " + weight_key(g, lambda));
    // computed fallback: single-orbit table of multiplicity one; callers must
    // supply multiplicities for anything beyond minuscule-like modules
    WeightTable t;
    t.group = g;
    t.lambda = lambda;
    t.source = TableSource::computed;
    const RootSystem& rs = RootSystem::get(g);
    WeightTableRow row;
    row.orbit_index = 1;
    row.dominant = lambda;
    row.orbit_size = weyl_orbit_size(rs, lambda);
    row.multiplicity = ZExpr(1);
    t.rows.push_back(row);
    it = tables_.emplace(std::make_pair(g, lambda), std::move(t)).first;
    return it->second;
  }
  // verify stored orbit sizes and multiplicity positivity on access
  const RootSystem& rs = RootSystem::get(g);
  for (const auto& r : it->second.rows) {
    Int sz = weyl_orbit_size(rs, r.dominant);
    if (sz != r.orbit_size)
      throw consistency_error("embedded orbit size mismatch in " + weight_key(g, lambda) + " row " +
                              std::to_string(r.orbit_index) + ": stored " +
                              std::to_string(r.orbit_size) + ", computed " + std::to_string(sz));
    for (Char p : {Char::prime(2), Char::prime(3), Char::prime(5), Char::prime(7), Char::infinity()})
      if (r.multiplicity.eval(p) < 0)
        throw consistency_error("negative multiplicity in " + weight_key(g, lambda) + " at p=" +
                                p.str());
  }
  return it->second;
}

std::vector<std::pair<GroupId, Weight>> WeightTableStore::keys() const {
  std::vector<std::pair<GroupId, Weight>> out;
  for (const auto& [k, v] : tables_) out.push_back(k);
  return out;
}

HeightSplit gen_height_split(const RootSystem& rs, const WeightTable& table, const GenHeight& h) {
  if (static_cast<int>(h.values.size()) != rs.rank())
    throw argument_error("height function has wrong rank");
  for (Int v : h.values)
    if (v < 0) throw argument_error("generalized heights must be non-negative");
  HeightSplit out;
  for (const auto& e : table.all_weights(rs)) {
    auto coords = weight_in_root_basis(rs, e.w);
    Rat hv(0);
    for (int i = 0; i < rs.rank(); ++i) hv = hv + coords[i] * Rat(h.values[i]);
    if (!hv.is_integer())
      throw argument_error("generalized height is not integral on weight " + weight_str(e.w));
    out.classes[hv.num].push_back(e);
  }
  for (int idx = 0; idx < rs.num_roots(); ++idx) {
    Int hv = 0;
    for (int i = 0; i < rs.rank(); ++i) hv += rs.root(idx)[i] * h.values[i];
    if (hv == 0) out.roots_height_zero.push_back(idx);
  }
  return out;
}

namespace {

// Exact phase-1/2 simplex for: exists x >= 0 with A x = b (A integral).
// Returns a solution if feasible.  Small dense problems only.
std::optional<std::vector<Rat>> solve_nonneg(const std::vector<std::vector<Int>>& A,
                                             const std::vector<Int>& b) {
  size_t rows = A.size();
  size_t cols = rows ? A[0].size() : 0;
  // tableau with artificial variables; minimize their sum
  size_t total = cols + rows;
  std::vector<std::vector<Rat>> T(rows, std::vector<Rat>(total + 1));
  std::vector<size_t> basis(rows);
  for (size_t r = 0; r < rows; ++r) {
    Int sign = b[r] >= 0 ? 1 : -1;
    for (size_t c = 0; c < cols; ++c) T[r][c] = Rat(sign * A[r][c]);
    T[r][cols + r] = Rat(1);
    T[r][total] = Rat(sign * b[r]);
    basis[r] = cols + r;
  }
  // phase-1 objective row: reduced costs of the real variables with the
  // artificial basis (cost 1 on artificials, 0 elsewhere)
  std::vector<Rat> z(total + 1, Rat(0));
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c <= total; ++c) z[c] = z[c] + T[r][c];
  auto iterate = [&]() {
    while (true) {
      // Bland's rule; artificial columns never re-enter
      size_t pivot_col = total;
      for (size_t c = 0; c < cols; ++c) {
        if (z[c] > Rat(0)) {
          pivot_col = c;
          break;
        }
      }
      if (pivot_col == total) return;
      size_t pivot_row = rows;
      Rat best(0);
      for (size_t r = 0; r < rows; ++r) {
        if (T[r][pivot_col] > Rat(0)) {
          Rat ratio = T[r][total] / T[r][pivot_col];
          if (pivot_row == rows || ratio < best ||
              (ratio == best && basis[r] < basis[pivot_row])) {
            pivot_row = r;
            best = ratio;
          }
        }
      }
      if (pivot_row == rows) return;  // unbounded; cannot happen in phase 1
      Rat pv = T[pivot_row][pivot_col];
      for (size_t c = 0; c <= total; ++c) T[pivot_row][c] = T[pivot_row][c] / pv;
      for (size_t r = 0; r < rows; ++r) {
        if (r == pivot_row || T[r][pivot_col].is_zero()) continue;
        Rat f = T[r][pivot_col];
        for (size_t c = 0; c <= total; ++c) T[r][c] = T[r][c] - f * T[pivot_row][c];
      }
      Rat fz = z[pivot_col];
      for (size_t c = 0; c <= total; ++c) z[c] = z[c] - fz * T[pivot_row][c];
      basis[pivot_row] = pivot_col;
    }
  };
  iterate();
  // feasible iff all artificial variables are zero
  for (size_t r = 0; r < rows; ++r)
    if (basis[r] >= cols && !T[r][total].is_zero()) return std::nullopt;
  std::vector<Rat> x(cols, Rat(0));
  for (size_t r = 0; r < rows; ++r)
    if (basis[r] < cols) x[basis[r]] = T[r][total];
  return x;
}

// depth-first search for the lexicographically smallest positive integral
// combination with given total sum
bool zlc_dfs(const std::vector<std::vector<Int>>& vs, size_t i, Int remaining,
             std::vector<Int>& partial, std::vector<Int>& acc, std::vector<Int>& out) {
  size_t m = vs.size();
  if (i == m) {
    if (remaining != 0) return false;
    for (Int c : acc)
      if (c != 0) return false;
    out = partial;
    return true;
  }
  Int max_here = remaining - static_cast<Int>(m - i - 1);
  for (Int c = 1; c <= max_here; ++c) {
    partial.push_back(c);
    for (size_t j = 0; j < acc.size(); ++j) acc[j] += c * vs[i][j];
    if (zlc_dfs(vs, i + 1, remaining - c, partial, acc, out)) return true;
    for (size_t j = 0; j < acc.size(); ++j) acc[j] -= c * vs[i][j];
    partial.pop_back();
  }
  return false;
}

}  // namespace

ZlcResult has_zlc(const std::vector<Weight>& weights) {
  ZlcResult res;
  if (weights.empty()) return res;
  size_t m = weights.size();
  size_t n = weights[0].size();
  // feasibility: c_i >= 1, sum c_i w_i = 0  <=>  x >= 0, sum x_i w_i = -sum w_i
  std::vector<std::vector<Int>> A(n, std::vector<Int>(m));
  std::vector<Int> b(n, 0);
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < m; ++i) {
      A[j][i] = weights[i][j];
      b[j] -= weights[i][j];
    }
  auto sol = solve_nonneg(A, b);
  if (!sol) return res;
  res.has = true;
  // minimal-total-sum integer certificate by iterative deepening (small sets)
  if (m <= 12) {
    std::vector<std::vector<Int>> vs(m, std::vector<Int>(n));
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < n; ++j) vs[i][j] = weights[i][j];
    for (Int total = static_cast<Int>(m); total <= 64; ++total) {
      std::vector<Int> partial, acc(n, 0), out;
      if (zlc_dfs(vs, 0, total, partial, acc, out)) {
        res.certificate = out;
        return res;
      }
    }
  }
  // fall back to the scaled LP vertex (valid, possibly not sum-minimal)
  Int denom = 1;
  for (const auto& r : *sol) denom = std::lcm(denom, r.den);
  res.certificate.resize(m);
  for (size_t i = 0; i < m; ++i) res.certificate[i] = denom + (*sol)[i].num * (denom / (*sol)[i].den);
  return res;
}

bool has_zlce(const std::vector<Weight>& delta, const std::vector<Weight>& ambient) {
  auto contains = [&](const Weight& w) {
    return std::find(ambient.begin(), ambient.end(), w) != ambient.end();
  };
  for (const auto& w : delta)
    if (!contains(w)) throw argument_error("ZLCE: delta is not a subset of the ambient set");
  if (!has_zlc(delta).has) return false;
  for (const auto& nu : ambient) {
    if (std::find(delta.begin(), delta.end(), nu) != delta.end()) continue;
    std::vector<Weight> ext = delta;
    ext.push_back(nu);
    if (!has_zlc(ext).has) return false;
  }
  return true;
}

std::string weight_str(const Weight& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

std::string weight_key(GroupId g, const Weight& lambda) {
  std::string s = g.str() + ":";
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(lambda[i]);
  }
  return s;
}

}  // namespace stabgate
