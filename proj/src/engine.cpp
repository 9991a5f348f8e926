#include "stabgate/engine.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace stabgate {

using nlohmann::json;

// ---- characteristic and prime ranges --------------------------------------

bool PClass::admits(Char p) const {
  if (spec == "any") return true;
  if (spec == "<inf") return !p.is_infinite();
  if (spec.rfind(">=", 0) == 0) return p.at_least(std::stoll(spec.substr(2)));
  if (spec.rfind("!=", 0) == 0) {
    Int v = std::stoll(spec.substr(2));
    return p.is_infinite() || p.v != v;
  }
  if (spec.rfind("=", 0) == 0) return !p.is_infinite() && p.v == std::stoll(spec.substr(1));
  throw argument_error("bad characteristic class: " + spec);
}

std::vector<Char> PClass::reps() const {
  std::vector<Char> all{Char::prime(2), Char::prime(3), Char::prime(5), Char::prime(7),
                        Char::infinity()};
  std::vector<Char> out;
  for (Char p : all)
    if (admits(p)) out.push_back(p);
  if (out.empty()) throw argument_error("characteristic class admits no representative: " + spec);
  return out;
}

RRange RRange::parse(const std::string& s) {
  std::string t = s;
  if (t.rfind("r", 0) == 0) t = t.substr(1);
  RRange r;
  if (t.rfind(">=", 0) == 0)
    r.lo = std::stoll(t.substr(2));
  else if (t.rfind("=", 0) == 0)
    r.exact = std::stoll(t.substr(1));
  else
    throw argument_error("bad r-range: " + s);
  return r;
}
bool RRange::admits(Int r) const { return exact ? r == exact : r >= lo; }
std::vector<Int> RRange::reps() const {
  std::vector<Int> out;
  for (Int r : {Int(2), Int(3), Int(5), Int(7)})
    if (admits(r)) out.push_back(r);
  if (out.empty()) throw argument_error("empty r-range");
  return out;
}
std::string RRange::str() const {
  return exact ? "r=" + std::to_string(exact) : "r>=" + std::to_string(lo);
}

namespace {

struct PRange {
  Int lo = 2;
  Int exact = 0;
  static PRange parse(const std::string& s) {
    std::string t = s;
    if (t.rfind("p", 0) == 0) t = t.substr(1);
    PRange r;
    if (t.rfind(">=", 0) == 0)
      r.lo = std::stoll(t.substr(2));
    else if (t.rfind("=", 0) == 0)
      r.exact = std::stoll(t.substr(1));
    else
      throw argument_error("bad p-range: " + s);
    return r;
  }
  bool admits(Char p) const {
    if (exact) return !p.is_infinite() && p.v == exact;
    return p.at_least(lo);
  }
};

std::string lambda_token(const Weight& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (w[i] != 1) s += std::to_string(w[i]);
    s += "w" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

std::string Quadruple::key() const {
  return group.str() + ":" + lambda_token(lambda) + ":" + p_class.spec + ":" + std::to_string(k);
}

Quadruple Quadruple::parse(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else
      cur += c;
  }
  parts.push_back(cur);
  if (parts.size() != 4) throw argument_error("quadruple shorthand needs 4 fields: " + s);
  Quadruple q;
  q.group = GroupId::parse(parts[0]);
  RootSystem::get(q.group);  // validates the (type, rank) pair
  q.lambda.assign(q.group.rank, 0);
  std::stringstream ss(parts[1]);
  std::string term;
  while (std::getline(ss, term, '+')) {
    size_t wpos = term.find('w');
    if (wpos == std::string::npos) throw argument_error("bad weight token: " + term);
    Int coeff = wpos == 0 ? 1 : std::stoll(term.substr(0, wpos));
    int idx = std::stoi(term.substr(wpos + 1));
    if (idx < 1 || idx > q.group.rank) throw argument_error("weight index out of range: " + term);
    q.lambda[idx - 1] += coeff;
  }
  q.p_class = PClass::parse(parts[2]);
  q.k = std::stoll(parts[3]);
  return q;
}

// ---- script store -----------------------------------------------------------

ScriptStore& ScriptStore::instance() {
  static ScriptStore s;
  return s;
}
void ScriptStore::add(EscalationScript s) { scripts_[s.quad.key()] = std::move(s); }
const EscalationScript& ScriptStore::get(const std::string& key) const {
  auto it = scripts_.find(key);
  if (it == scripts_.end()) throw data_missing_error("no escalation script " + key);
  return it->second;
}
std::vector<std::string> ScriptStore::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : scripts_) out.push_back(k);
  return out;
}

// ---- codim on the Grassmannian ------------------------------------------------

Int codim_fixed_grassmann_eigendims(std::vector<Int> dims, Int k) {
  std::sort(dims.begin(), dims.end(), std::greater<Int>());
  while (!dims.empty() && dims.back() == 0) dims.pop_back();
  return b_min(DimTuple(dims), k).value;
}

Int codim_fixed_grassmann_blocks(const Partition& blocks, Int k) {
  Partition sorted = blocks;
  std::sort(sorted.begin(), sorted.end(), std::greater<Int>());
  Int t = sorted.empty() ? 0 : sorted[0];
  std::vector<Int> d;
  for (Int i = 1; i <= t; ++i) {
    Int cnt = 0;
    for (Int b : sorted)
      if (b >= i) ++cnt;
    d.push_back(cnt);
  }
  return b_min(DimTuple(d), k).value;
}

// ---- label utilities -----------------------------------------------------------

namespace {

// normalize a display label like "(A1^3)'", "D2", "A2A1~" to the canonical
// component string produced by the classifier
std::string normalize_label(const std::string& in) {
  std::string s;
  for (char c : in)
    if (c != '(' && c != ')' && c != '\'' && c != '*' && c != ' ') s += c;
  // expand X<rank>[~]^k
  std::vector<std::string> comps;
  size_t i = 0;
  while (i < s.size()) {
    if (!std::isupper(static_cast<unsigned char>(s[i])))
      throw argument_error("bad subsystem label: " + in);
    std::string comp(1, s[i++]);
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) comp += s[i++];
    if (i < s.size() && s[i] == '~') comp += s[i++];
    Int reps = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      std::string num;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) num += s[i++];
      reps = std::stoll(num);
    }
    for (Int rcount = 0; rcount < reps; ++rcount) comps.push_back(comp);
  }
  // D2 = A1A1 and D3 = A3 inside bigger systems
  std::vector<std::string> expanded;
  for (auto& c : comps) {
    if (c == "D2") {
      expanded.push_back("A1");
      expanded.push_back("A1");
    } else if (c == "D3")
      expanded.push_back("A3");
    else
      expanded.push_back(c);
  }
  std::sort(expanded.begin(), expanded.end(), [](const std::string& a, const std::string& b) {
    auto rank_of = [](const std::string& x) {
      std::string num;
      for (char c : x)
        if (std::isdigit(static_cast<unsigned char>(c))) num += c;
      return std::stoll(num);
    };
    Int ra = rank_of(a), rb = rank_of(b);
    if (ra != rb) return ra > rb;
    return a < b;
  });
  std::string out;
  for (auto& c : expanded) out += c;
  return out;
}

// Bala-Carter reading of a classical label: blocks on the natural module
// (A_k: k+1 twice outside type A; B_k: 2k+1; C_k: 2k; D_k: 2k-1 and 1)
Partition partition_from_label(const RootSystem& rs, const std::string& label) {
  char amb = rs.id().type;
  Int n = amb == 'A' ? rs.rank() + 1 : amb == 'B' ? 2 * rs.rank() + 1 : 2 * rs.rank();
  std::string s;
  for (char c : label)
    if (c != '(' && c != ')' && c != '\'' && c != ' ') s += c;
  Partition blocks;
  size_t i = 0;
  while (i < s.size()) {
    char t = s[i++];
    std::string num;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) num += s[i++];
    if (i < s.size() && s[i] == '~') ++i;
    Int k = std::stoll(num);
    Int reps = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      std::string rn;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) rn += s[i++];
      reps = std::stoll(rn);
    }
    for (Int rep = 0; rep < reps; ++rep) {
      switch (t) {
        case 'A':
          blocks.push_back(k + 1);
          if (amb != 'A') blocks.push_back(k + 1);
          break;
        case 'B':
          blocks.push_back(2 * k + 1);
          break;
        case 'C':
          blocks.push_back(2 * k);
          break;
        case 'D':
          blocks.push_back(2 * k - 1);
          blocks.push_back(1);
          break;
        default:
          throw argument_error("bad classical class label " + label);
      }
    }
  }
  Int used = partition_sum(blocks);
  if (used > n) throw argument_error("class label too large for the natural module");
  for (Int j = used; j < n; ++j) blocks.push_back(1);
  std::sort(blocks.begin(), blocks.end(), std::greater<Int>());
  return blocks;
}

// Find a standard subsystem (generated by simple roots) with the given label.
// In classical ambients the label is read in the Bala-Carter sense, so the
// natural-module partition must match as well (this separates a D3 fork from
// an A3 chain, both of abstract type A3).
std::optional<Subsystem> find_standard_by_label(const RootSystem& rs, const std::string& label) {
  std::string want = normalize_label(label);
  char amb = rs.id().type;
  bool classical = amb == 'A' || amb == 'B' || amb == 'C' || amb == 'D';
  std::optional<Partition> want_blocks;
  if (classical) want_blocks = partition_from_label(rs, label);
  int n = rs.rank();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> gens;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) gens.push_back(i + 1);
    Subsystem sub = standard_subsystem(rs, gens);
    if (normalize_label(sub.label) != want) continue;
    if (want_blocks && natural_partition_of_subsystem(rs, sub) != *want_blocks) continue;
    return sub;
  }
  return std::nullopt;
}

struct RunState {
  const EscalationScript& script;
  const EngineOptions& opts;
  const RootSystem& rs;
  const WeightTable& table;
  VerificationReport& report;
  std::vector<Char> p_all;
  // coverage: killed semisimple (r,p) pairs and unipotent p values
  std::set<std::pair<Int, Int>> ss_killed;  // (r, p.v with inf = 0)
  std::set<Int> u_killed;

  void mismatch(const std::string& what) { report.mismatches.push_back(what); }
};

Int resolve_target_value(RunState& st, const ScriptTarget& t, const Subsystem& psi,
                         const std::string& psi_label, Int r, Char p) {
  (void)r;
  if (t.kind == "M") return st.rs.num_roots();
  if (t.kind == "M2") return BoundTable::Mr(st.rs.id(), 2);
  if (t.kind == "M3") return BoundTable::Mr(st.rs.id(), 3);
  if (t.kind == "M5") return BoundTable::Mr(st.rs.id(), 5);
  if (t.kind == "class") {
    std::string label = t.label.empty() ? psi_label : t.label;
    char amb = st.rs.id().type;
    if (amb == 'A' || amb == 'B' || amb == 'C' || amb == 'D') {
      if (t.label.empty())
        return dim_unip_class_partition(amb, st.rs.rank(),
                                        natural_partition_of_subsystem(st.rs, psi));
      return dim_unip_class_partition(amb, st.rs.rank(), partition_from_label(st.rs, t.label));
    }
    return ExceptionalClassTable::instance().dim(st.rs.id(), label, p);
  }
  if (t.kind == "value") return t.value.eval(p);
  throw argument_error("unknown target kind " + t.kind);
}

std::string fmt_rep(Int r, Char p) {
  std::string s = "(";
  s += r > 0 ? "r=" + std::to_string(r) : "r=-";
  s += ",p=" + p.str() + ")";
  return s;
}

}  // namespace

// ---- run_script -----------------------------------------------------------------

VerificationReport run_script(const EscalationScript& script, const EngineOptions& opts) {
  VerificationReport report;
  report.quad = script.quad;

  if (!script.alias_of.empty()) {
    const auto& target = ScriptStore::instance().get(script.alias_of);
    VerificationReport inner = run_script(target, opts);
    report.mismatches = inner.mismatches;
    report.trusted_facts = inner.trusted_facts;
    report.computed_facts = inner.computed_facts;
    report.embedded_facts = inner.embedded_facts;
    report.verdict = inner.verdict;
    StageRecord rec;
    rec.psi_label = "alias of " + script.alias_of;
    rec.provenance = "computed";
    report.stages.push_back(rec);
    return report;
  }

  const RootSystem& rs = RootSystem::get(script.quad.group);
  const WeightTable& table =
      WeightTableStore::instance().get(script.quad.group, script.quad.lambda);
  report.embedded_facts += static_cast<Int>(table.rows.size());

  RunState st{script, opts, rs, table, report, script.quad.p_class.reps(), {}, {}};

  // headline constants
  if (script.M != rs.num_roots())
    st.mismatch("M: embedded " + std::to_string(script.M) + " vs computed " +
                std::to_string(rs.num_roots()));
  for (const auto& [r, val] : script.Mr) {
    Int got = BoundTable::Mr(rs.id(), r);
    if (got != val)
      st.mismatch("M_" + std::to_string(r) + ": embedded " + std::to_string(val) +
                  " vs computed " + std::to_string(got));
  }
  report.computed_facts += 1 + static_cast<Int>(script.Mr.size());

  Int k0 = opts.k_override > 0 ? opts.k_override : script.quad.k;
  bool pinned = opts.k_override == 0 || opts.k_override == script.quad.k;
  Int r_min = 2, p_min = 2;

  for (size_t si = 0; si < script.stages.size(); ++si) {
    const ScriptStage& stage = script.stages[si];
    std::vector<Subsystem> psis;
    std::vector<NetDecomposition> nets;
    for (const auto& branch : stage.branches) {
      Subsystem psi = standard_subsystem(rs, branch.gens);
      if (normalize_label(psi.label) != normalize_label(branch.label))
        st.mismatch("stage " + std::to_string(si + 1) + ": label " + branch.label +
                    " but computed " + psi.label);
      NetDecomposition nd = compute_nets(rs, table, psi);

      // Orbits whose multiplicity vanishes at every admissible characteristic
      // are invisible in the printed tables; project them away before
      // matching rows (only the F4 omega_1 p = 2 script exercises this).
      std::set<int> active;
      for (const auto& trow : table.rows)
        for (Char p : st.p_all)
          if (trow.multiplicity.eval(p) != 0) active.insert(trow.orbit_index);
      struct Projected {
        std::vector<const NetGroup*> groups;
        Int m = 0;
      };
      std::map<std::pair<std::string, std::map<int, Int>>, Projected> projected;
      bool all_active = true;
      for (const auto& trow : table.rows)
        if (!active.count(trow.orbit_index)) all_active = false;
      for (const auto& g : nd.groups) {
        std::map<int, Int> key_n;
        for (const auto& [orbit, cnt] : g.n)
          if (active.count(orbit)) key_n[orbit] = cnt;
        if (key_n.empty()) continue;  // carries no weight at any admissible p
        std::string label =
            all_active ? g.nu_label : net_display_label(rs, psi, g.shape, &active);
        auto& slot = projected[{label, key_n}];
        slot.groups.push_back(&g);
        slot.m += g.count;
      }

      std::set<std::pair<std::string, std::map<int, Int>>> used;
      for (const auto& row : branch.rows) {
        std::map<int, Int> nonzero;
        for (const auto& [orbit, cnt] : row.n)
          if (cnt) nonzero[orbit] = cnt;
        auto key = std::make_pair(row.nu, nonzero);
        auto pit = projected.find(key);
        if (pit == projected.end() || pit->second.m != row.m) {
          st.mismatch("stage " + std::to_string(si + 1) + " " + branch.label + ": no computed net " +
                      row.nu + " (m=" + std::to_string(row.m) + ")");
          continue;
        }
        used.insert(key);
        const Projected& agg = pit->second;
        for (const auto& [range, expr] : row.cs) {
          for (Int r : RRange::parse(range).reps())
            for (Char p : st.p_all) {
              Int got = 0;
              for (const NetGroup* g : agg.groups)
                got = checked_add(got,
                                  checked_mul(c_semisimple(rs, table, g->shape, psi, r, p), g->count));
              Int want = expr.eval(p);
              if (got != want)
                st.mismatch("stage " + std::to_string(si + 1) + " " + branch.label + " net " +
                            row.nu + " c(s)" + fmt_rep(r, p) + ": embedded " +
                            std::to_string(want) + " vs computed " + std::to_string(got));
              ++report.computed_facts;
            }
        }
        for (const auto& [range, expr] : row.cu) {
          PRange pr = PRange::parse(range);
          for (Char p : st.p_all) {
            if (!pr.admits(p) || !unipotent_in_g_p(psi, p)) continue;
            Int got = 0;
            for (const NetGroup* g : agg.groups)
              got = checked_add(got,
                                checked_mul(c_unipotent(rs, table, g->shape, psi, p), g->count));
            Int want = expr.eval(p);
            if (got != want)
              st.mismatch("stage " + std::to_string(si + 1) + " " + branch.label + " net " + row.nu +
                          " c(u)(p=" + p.str() + "): embedded " + std::to_string(want) +
                          " vs computed " + std::to_string(got));
            ++report.computed_facts;
          }
        }
      }
      for (const auto& [key, agg] : projected)
        if (!used.count(key))
          st.mismatch("stage " + std::to_string(si + 1) + " " + branch.label + ": computed net " +
                      key.first + " (m=" + std::to_string(agg.m) +
                      ") missing from embedded table");

      // ---- totals
      for (const auto& [range, expr] : branch.cs_total)
        for (Int r : RRange::parse(range).reps())
          for (Char p : st.p_all) {
            Int got = c_total_semisimple(rs, table, nd, r, p);
            Int want = expr.eval(p);
            if (got != want)
              st.mismatch("stage " + std::to_string(si + 1) + " " + branch.label + " c(Psi)_ss" +
                          fmt_rep(r, p) + ": embedded " + std::to_string(want) + " vs computed " +
                          std::to_string(got));
            ++report.computed_facts;
          }
      for (const auto& [range, expr] : branch.cu_total) {
        PRange pr = PRange::parse(range);
        for (Char p : st.p_all) {
          if (!pr.admits(p) || !unipotent_in_g_p(psi, p)) continue;
          Int got = c_total_unipotent(rs, table, nd, p);
          Int want = expr.eval(p);
          if (got != want)
            st.mismatch("stage " + std::to_string(si + 1) + " " + branch.label + " c(Psi)_u(p=" +
                        p.str() + "): embedded " + std::to_string(want) + " vs computed " +
                        std::to_string(got));
          ++report.computed_facts;
        }
      }
      psis.push_back(std::move(psi));
      nets.push_back(std::move(nd));
    }

    // ---- bound checks
    std::vector<std::map<std::string, Int>> computed_B(stage.checks.size());
    for (size_t ci = 0; ci < stage.checks.size(); ++ci) {
      const ScriptCheck& check = stage.checks[ci];
      const Subsystem& psi = psis[check.branch];
      const NetDecomposition& nd = nets[check.branch];
      bool want_ss = check.side == "ss" || check.side == "both";
      bool want_u = check.side == "u" || check.side == "both";
      std::vector<Int> rreps =
          want_ss ? RRange::parse(check.r_range.empty() ? "r>=" + std::to_string(r_min)
                                                        : check.r_range)
                        .reps()
                  : std::vector<Int>{0};
      PRange prange = PRange::parse(check.p_range.empty() ? "p>=" + std::to_string(p_min)
                                                          : check.p_range);
      bool equality_seen = false;
      for (Char p : st.p_all) {
        bool u_applies = want_u && prange.admits(p) && unipotent_in_g_p(psi, p);
        // the c bound must be valid for every applicable column value
        Int c_used = check.c.eval(p);
        Int cmin = -1;
        if (want_ss) {
          for (Int r : rreps) {
            Int cs = c_total_semisimple(rs, table, nd, r, p);
            if (cs < c_used)
              st.mismatch("stage " + std::to_string(si + 1) + " check " + std::to_string(ci) +
                          ": c(s)" + fmt_rep(r, p) + " = " + std::to_string(cs) +
                          " below the used bound " + std::to_string(c_used));
            cmin = cmin < 0 ? cs : std::min(cmin, cs);
          }
        }
        if (u_applies) {
          Int cu = c_total_unipotent(rs, table, nd, p);
          if (cu < c_used)
            st.mismatch("stage " + std::to_string(si + 1) + " check " + std::to_string(ci) +
                        ": c(u)(p=" + p.str() + ") = " + std::to_string(cu) +
                        " below the used bound " + std::to_string(c_used));
          cmin = cmin < 0 ? cu : std::min(cmin, cu);
        }
        if (cmin == c_used) equality_seen = true;
        if (!want_ss && !u_applies) continue;

        Int d = table.dim(p);
        if (2 * k0 > d) continue;  // k beyond d/2: nothing to verify at this p
        DimTuple d0 = bounded_extremal_tuple(d, d - c_used);
        if (pinned && !check.d0.empty()) {
          std::vector<Int> want_d0;
          for (const auto& e : check.d0) want_d0.push_back(e.eval(p));
          if (d0.parts != want_d0)
            st.mismatch("stage " + std::to_string(si + 1) + " check " + std::to_string(ci) +
                        " (p=" + p.str() + "): d0 mismatch");
          ++report.computed_facts;
        }
        Int B = b_min(d0, k0).value;
        computed_B[ci]["p=" + p.str()] = B;
        if (pinned) {
          Int wantB = check.B.eval(p);
          if (B != wantB)
            st.mismatch("stage " + std::to_string(si + 1) + " check " + std::to_string(ci) +
                        " (p=" + p.str() + "): B embedded " + std::to_string(wantB) +
                        " vs computed " + std::to_string(B));
          ++report.computed_facts;
          for (const auto& kv : check.blist) {
            Int got = b_of_pair(d0, kv.kappa);
            Int want = kv.B.eval(p);
            if (got != want)
              st.mismatch("stage " + std::to_string(si + 1) + " check " + std::to_string(ci) +
                          " (p=" + p.str() + "): B_{d0,kappa} embedded " + std::to_string(want) +
                          " vs computed " + std::to_string(got));
            ++report.computed_facts;
          }
        }

        std::string target_desc;
        for (const auto& t : check.targets) {
          for (Int r : rreps) {
            Int tv = resolve_target_value(st, t, psi, stage.branches[check.branch].label, r, p);
            Int embedded = t.value.eval(p);
            if (tv != embedded)
              st.mismatch("stage " + std::to_string(si + 1) + " check " + std::to_string(ci) +
                          " target " + t.kind + " (p=" + p.str() + "): embedded " +
                          std::to_string(embedded) + " vs computed " + std::to_string(tv));
            ++report.computed_facts;
            bool holds = t.rel == ">" ? (B > tv) : (B == tv);
            if (!holds)
              st.mismatch("stage " + std::to_string(si + 1) + " check " + std::to_string(ci) +
                          ": relation B " + t.rel + " " + t.kind + " fails at " + fmt_rep(r, p));
            target_desc = t.kind + (t.kind == "class" ? "(" + t.label + ")" : "") + "=" +
                          std::to_string(tv);
            // coverage bookkeeping
            if (t.rel == ">" && holds) {
              if (t.kind == "M") {
                if (want_ss && r > 0 && (!p.is_infinite() ? p.v != r : true))
                  st.ss_killed.insert({r, p.is_infinite() ? 0 : p.v});
                if (u_applies) st.u_killed.insert(p.is_infinite() ? 0 : p.v);
              } else if (t.kind == "M2" || t.kind == "M3" || t.kind == "M5") {
                Int n = t.kind[1] - '0';
                if (want_ss && RRange::parse(check.r_range.empty()
                                                 ? "r>=" + std::to_string(r_min)
                                                 : check.r_range)
                                   .admits(n))
                  st.ss_killed.insert({n, p.is_infinite() ? 0 : p.v});
                if (u_applies && !p.is_infinite() && p.v == n && prange.admits(p))
                  st.u_killed.insert(p.v);
              }
            }
            // B = M still covers every class of positive codimension; only
            // regular elements have class dimension M, and a regular
            // unipotent lies in G_(p) only for p at least the Coxeter number
            if (t.rel == "=" && holds && t.kind == "M" && u_applies && !p.is_infinite() &&
                p.v < coxeter_number(rs.id().type, rs.rank()))
              st.u_killed.insert(p.v);
            if (t.kind != "class" && !want_ss) break;  // target independent of r
          }
        }
        StageRecord rec;
        rec.psi_label = stage.branches[check.branch].label;
        rec.applied_at = (want_ss ? RRange::parse(check.r_range.empty()
                                                      ? "r>=" + std::to_string(r_min)
                                                      : check.r_range)
                                        .str() + ","
                                  : std::string()) +
                         "p=" + p.str();
        rec.c_ss = want_ss ? c_total_semisimple(rs, table, nd, rreps[0], p) : -1;
        rec.c_u = u_applies ? c_total_unipotent(rs, table, nd, p) : -1;
        rec.d0 = d0.parts;
        rec.B = B;
        rec.target = target_desc;
        rec.provenance = "computed";
        report.stages.push_back(rec);
      }
      if (!equality_seen && (want_ss || want_u))
        st.mismatch("stage " + std::to_string(si + 1) + " check " + std::to_string(ci) +
                    ": used c never attained by a computed column");
    }

    // ---- concluded |Phi(s)| bound
    if (pinned && stage.phi_bound && stage.phi_from_check >= 0) {
      for (Char p : st.p_all) {
        auto it = computed_B[stage.phi_from_check].find("p=" + p.str());
        if (it == computed_B[stage.phi_from_check].end()) continue;
        Int want = stage.phi_bound->eval(p);
        Int got = rs.num_roots() - it->second;
        if (got != want)
          st.mismatch("stage " + std::to_string(si + 1) + ": |Phi(s)| bound embedded " +
                      std::to_string(want) + " vs computed " + std::to_string(got));
        ++report.computed_facts;
      }
    }

    // ---- side conditions for the next stage
    for (const auto& cond : stage.next_psi) {
      if (cond.justification == "rank1") {
        auto found = find_standard_by_label(rs, cond.label);
        if (!found || found->rank() != 1)
          st.mismatch("stage " + std::to_string(si + 1) + ": rank-1 justification for " +
                      cond.label);
        ++report.computed_facts;
      } else if (cond.justification == "m_psi") {
        auto found = find_standard_by_label(rs, cond.label);
        if (!found) {
          st.mismatch("stage " + std::to_string(si + 1) + ": no standard subsystem " + cond.label);
          continue;
        }
        Int mval = m_psi(rs, *found);
        for (Char p : st.p_all) {
          Int want = cond.m_psi_value.eval(p);
          if (mval != want)
            st.mismatch("stage " + std::to_string(si + 1) + ": m_Psi(" + cond.label +
                        ") embedded " + std::to_string(want) + " vs computed " +
                        std::to_string(mval));
          if (stage.phi_bound && stage.phi_bound->eval(p) >= mval)
            st.mismatch("stage " + std::to_string(si + 1) + ": |Phi(s)| bound not below m_Psi(" +
                        cond.label + ")");
        }
        ++report.computed_facts;
      } else if (cond.justification == "search") {
        // type A: every subsystem type is a partition type, so the remaining
        // Phi(s) can be enumerated and tested directly
        if (rs.id().type != 'A' || !stage.phi_bound) {
          st.mismatch("search justification needs a type-A ambient and a bound");
          continue;
        }
        auto found = find_standard_by_label(rs, cond.label);
        if (!found) {
          st.mismatch("no standard subsystem " + cond.label);
          continue;
        }
        Int bound = 0;
        for (Char p : st.p_all) bound = std::max(bound, stage.phi_bound->eval(p));
        bool all_ok = true;
        for (const auto& parts : partitions_of(rs.rank() + 1)) {
          Int size = 0;
          for (Int a : parts) size += a * (a - 1);
          if (size > bound || size == 0) continue;
          std::vector<int> gens;
          Int offset = 0;
          for (Int a : parts) {
            for (Int j = 1; j < a; ++j) gens.push_back(static_cast<int>(offset + j));
            offset += a;
          }
          Subsystem phi_s = standard_subsystem(rs, gens);
          if (!disjoint_conjugate_exists(rs, *found, phi_s, opts.conjugate_cap)) {
            all_ok = false;
            break;
          }
        }
        if (!all_ok)
          st.mismatch("stage " + std::to_string(si + 1) + ": no disjoint conjugate of " +
                      cond.label + " for some admissible Phi(s)");
        ++report.computed_facts;
      } else if (cond.justification == "inspection") {
        ++report.trusted_facts;
      } else {
        st.mismatch("unknown disjointness justification " + cond.justification);
      }
    }
    // Deep mode replays the inspection claims over the standard subsystems
    // within the stage's bound.  The stage may offer alternative subsystems;
    // each candidate Phi(s) only needs a disjoint conjugate of one of them.
    if (opts.deep && stage.phi_bound && !stage.next_psi.empty()) {
      bool any_inspection = false;
      for (const auto& cond : stage.next_psi)
        if (cond.justification == "inspection") any_inspection = true;
      std::vector<Subsystem> alternatives;
      for (const auto& cond : stage.next_psi)
        if (auto found = find_standard_by_label(rs, cond.label)) alternatives.push_back(*found);
      if (any_inspection && !alternatives.empty()) {
        Int bound = 0;
        for (Char p : st.p_all) bound = std::max(bound, stage.phi_bound->eval(p));
        int n = rs.rank();
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
          std::vector<int> gens;
          for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) gens.push_back(i + 1);
          Subsystem phi_s = standard_subsystem(rs, gens);
          if (phi_s.size() > bound) continue;
          bool ok = false;
          for (const auto& alt : alternatives)
            if (disjoint_conjugate_exists(rs, alt, phi_s, opts.conjugate_cap)) {
              ok = true;
              break;
            }
          if (!ok) {
            st.mismatch("deep: stage " + std::to_string(si + 1) +
                        ": no disjoint conjugate of any listed subsystem for the standard "
                        "subsystem " + phi_s.label);
            break;
          }
        }
        ++report.computed_facts;
      }
    }
    // Closure conditions.  Computed ones are verified jointly: every valid
    // natural-module class of dimension at least the stage's concluded bound
    // must dominate at least one of the listed targets (the stage may offer
    // alternative subsystems, as in the D_l spin escalations).
    {
      std::vector<Partition> computed_targets;
      std::vector<std::string> computed_labels;
      Int threshold = -1;   // least bound over every check: joint dominance runs there
      Int threshold_u = 0;  // best unipotent-side bound: trusted facts cover from there
      for (size_t ci = 0; ci < stage.checks.size(); ++ci) {
        Int bmin = -1;
        for (const auto& [key, val] : computed_B[ci]) {
          threshold = threshold < 0 ? val : std::min(threshold, val);
          bmin = bmin < 0 ? val : std::min(bmin, val);
        }
        if (stage.checks[ci].side != "ss" && bmin > threshold_u) threshold_u = bmin;
      }
      for (const auto& cond : stage.closures) {
        if (cond.justification == "computed") {
          char amb = rs.id().type;
          if (amb != 'A' && amb != 'B' && amb != 'C' && amb != 'D') {
            st.mismatch("computed closure outside classical types");
            continue;
          }
          computed_targets.push_back(partition_from_label(rs, cond.label));
          computed_labels.push_back(cond.label);
        } else if (cond.justification == "trusted") {
          ClosureVerdict v = ClosureFactTable::instance().covers(rs.id(), cond.label, threshold_u);
          if (v != ClosureVerdict::trusted)
            report.missing_facts.push_back("closure fact for " + cond.label + " in " +
                                           rs.id().str() + " from dimension " +
                                           std::to_string(threshold_u));
          ++report.trusted_facts;
        } else {
          st.mismatch("unknown closure justification " + cond.justification);
        }
      }
      if (!computed_targets.empty() && threshold >= 0) {
        Int n = partition_sum(computed_targets[0]);
        // classes below a branch's own bound are already covered through that
        // branch's subsystem; collect (partition, bound) alternatives
        std::vector<std::pair<Partition, Int>> branch_alts;
        for (size_t ci = 0; ci < stage.checks.size(); ++ci) {
          const ScriptCheck& ck = stage.checks[ci];
          if (ck.side == "ss") continue;
          Int bmin = -1;
          for (const auto& [key, val] : computed_B[ci]) bmin = bmin < 0 ? val : std::min(bmin, val);
          if (bmin < 0) continue;
          branch_alts.push_back({natural_partition_of_subsystem(rs, psis[ck.branch]), bmin});
        }
        for (const auto& blocks : partitions_of(n)) {
          Int dim;
          try {
            dim = dim_unip_class_partition(rs.id().type, rs.rank(), blocks);
          } catch (const argument_error&) {
            continue;
          }
          if (dim < threshold) continue;
          bool ok = false;
          for (const auto& target : computed_targets)
            if (dominates(blocks, target)) ok = true;
          for (const auto& [part, bound] : branch_alts)
            if (dim < bound && dominates(blocks, part)) ok = true;
          if (!ok) {
            std::string cls;
            for (Int b : blocks) cls += (cls.empty() ? "" : ",") + std::to_string(b);
            st.mismatch("stage " + std::to_string(si + 1) + " closure: class (" + cls +
                        ") of dimension " + std::to_string(dim) +
                        " dominates none of the listed subsystems");
          }
        }
        ++report.computed_facts;
      }
    }

    r_min = std::max<Int>(r_min, stage.r_min_after);
    p_min = std::max<Int>(p_min, stage.p_min_after);
  }

  // ---- final coverage
  bool covered = true;
  for (Char p : st.p_all) {
    Int pv = p.is_infinite() ? 0 : p.v;
    if (!st.u_killed.count(pv)) {
      covered = false;
      report.missing_facts.push_back("unipotent side not certified at p=" + p.str());
    }
    for (Int r : {Int(2), Int(3), Int(5), Int(7)}) {
      if (!p.is_infinite() && p.v == r) continue;
      if (!st.ss_killed.count({r, pv})) {
        covered = false;
        report.missing_facts.push_back("semisimple side not certified at " + fmt_rep(r, p));
      }
    }
  }

  if (!report.mismatches.empty())
    report.verdict = Verdict::failed;
  else if (!covered || !report.missing_facts.empty())
    report.verdict = Verdict::needs_trusted_facts;
  else
    report.verdict = report.trusted_facts > 0 ? Verdict::certified_with_trusted : Verdict::certified;
  return report;
}

std::string VerificationReport::to_json() const {
  json j;
  j["schema"] = 1;
  j["quadruple"] = quad.key();
  j["verdict"] = verdict == Verdict::certified                ? "certified"
                 : verdict == Verdict::certified_with_trusted ? "certified-with-trusted"
                 : verdict == Verdict::failed                 ? "failed"
                                                              : "needs-trusted-facts";
  j["provenance"] = {{"computed", computed_facts},
                     {"embedded", embedded_facts},
                     {"trusted", trusted_facts}};
  j["stages"] = json::array();
  for (const auto& s : stages) {
    json e;
    e["psi"] = s.psi_label;
    e["at"] = s.applied_at;
    if (s.c_ss >= 0) e["c_ss"] = s.c_ss;
    if (s.c_u >= 0) e["c_u"] = s.c_u;
    e["d0"] = s.d0;
    e["B"] = s.B;
    e["target"] = s.target;
    e["provenance"] = s.provenance;
    j["stages"].push_back(e);
  }
  j["mismatches"] = mismatches;
  j["missing_facts"] = missing_facts;
  return j.dump(2);
}

}  // namespace stabgate
