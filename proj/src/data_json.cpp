#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

#include "json.hpp"
#include "stabgate/engine.hpp"

namespace stabgate {

using nlohmann::json;

namespace {

ZExpr zx(const json& j) {
  if (j.is_number_integer()) return ZExpr(j.get<Int>());
  return ZExpr::parse(j.get<std::string>());
}

Weight jweight(const json& j) {
  Weight w;
  for (const auto& c : j) w.push_back(c.get<Int>());
  return w;
}

void load_weight_tables(const json& j) {
  for (const auto& t : j) {
    WeightTable wt;
    wt.group = GroupId::parse(t.at("group").get<std::string>());
    wt.lambda = jweight(t.at("lambda"));
    wt.source = TableSource::embedded;
    for (const auto& r : t.at("rows")) {
      WeightTableRow row;
      row.orbit_index = r.at("i").get<int>();
      row.dominant = jweight(r.at("mu"));
      row.orbit_size = r.at("orbit").get<Int>();
      row.multiplicity = zx(r.at("mult"));
      wt.rows.push_back(row);
    }
    WeightTableStore::instance().add(std::move(wt));
  }
}

void load_class_dims(const json& j) {
  for (const auto& r : j) {
    ExceptionalClassDim row;
    row.group = GroupId::parse(r.at("group").get<std::string>());
    row.label = r.at("label").get<std::string>();
    row.dim = zx(r.at("dim"));
    row.citation = r.value("source", "");
    ExceptionalClassTable::instance().add(std::move(row));
  }
}

void load_closure_facts(const json& j) {
  for (const auto& r : j) {
    ClosureFact f;
    f.group = GroupId::parse(r.at("group").get<std::string>());
    f.contained_label = r.at("label").get<std::string>();
    f.dim_at_least = r.at("dim_at_least").get<Int>();
    f.citation = r.value("source", "");
    ClosureFactTable::instance().add(std::move(f));
  }
}

void load_scripts(const json& j) {
  for (const auto& s : j) {
    EscalationScript sc;
    sc.quad.group = GroupId::parse(s.at("group").get<std::string>());
    sc.quad.lambda = jweight(s.at("lambda"));
    sc.quad.p_class = PClass::parse(s.at("p").get<std::string>());
    sc.quad.k = s.at("k0").get<Int>();
    if (s.contains("alias_of")) {
      sc.alias_of = s.at("alias_of").get<std::string>();
      sc.note = s.value("note", "");
      ScriptStore::instance().add(std::move(sc));
      continue;
    }
    sc.M = s.at("M").get<Int>();
    if (s.contains("Mr"))
      for (const auto& [key, val] : s.at("Mr").items()) sc.Mr[std::stoll(key)] = val.get<Int>();
    for (const auto& st : s.at("stages")) {
      ScriptStage stage;
      for (const auto& b : st.at("branches")) {
        ScriptBranch br;
        for (const auto& g : b.at("gens")) br.gens.push_back(g.get<int>());
        br.label = b.at("label").get<std::string>();
        for (const auto& r : b.at("rows")) {
          ScriptNetRow row;
          row.nu = r.at("nu").get<std::string>();
          for (const auto& [key, val] : r.at("n").items()) row.n[std::stoi(key)] = val.get<Int>();
          row.m = r.at("m").get<Int>();
          if (r.contains("cs"))
            for (const auto& [key, val] : r.at("cs").items()) row.cs[key] = zx(val);
          if (r.contains("cu"))
            for (const auto& [key, val] : r.at("cu").items()) row.cu[key] = zx(val);
          br.rows.push_back(std::move(row));
        }
        if (b.contains("cs_total"))
          for (const auto& [key, val] : b.at("cs_total").items()) br.cs_total[key] = zx(val);
        if (b.contains("cu_total"))
          for (const auto& [key, val] : b.at("cu_total").items()) br.cu_total[key] = zx(val);
        stage.branches.push_back(std::move(br));
      }
      for (const auto& c : st.at("checks")) {
        ScriptCheck ck;
        ck.branch = c.value("branch", 0);
        ck.side = c.at("side").get<std::string>();
        ck.r_range = c.value("r", "");
        ck.p_range = c.value("p", "");
        ck.c = zx(c.at("c"));
        if (c.contains("d0"))
          for (const auto& e : c.at("d0")) ck.d0.push_back(zx(e));
        ck.B = zx(c.at("B"));
        if (c.contains("blist"))
          for (const auto& e : c.at("blist")) {
            ScriptKappaValue kv;
            for (const auto& x : e.at("kappa")) kv.kappa.push_back(x.get<Int>());
            kv.B = zx(e.at("B"));
            ck.blist.push_back(std::move(kv));
          }
        for (const auto& t : c.at("targets")) {
          ScriptTarget tg;
          tg.kind = t.at("kind").get<std::string>();
          tg.label = t.value("label", "");
          tg.value = zx(t.at("value"));
          tg.rel = t.value("rel", ">");
          ck.targets.push_back(std::move(tg));
        }
        stage.checks.push_back(std::move(ck));
      }
      stage.r_min_after = st.value("r_min", Int(2));
      stage.p_min_after = st.value("p_min", Int(2));
      if (st.contains("phi_bound")) {
        stage.phi_bound = zx(st.at("phi_bound"));
        stage.phi_from_check = st.value("phi_from", 0);
      }
      if (st.contains("next_psi"))
        for (const auto& c : st.at("next_psi")) {
          ScriptSideCondition sc2;
          sc2.label = c.at("label").get<std::string>();
          sc2.justification = c.at("just").get<std::string>();
          if (c.contains("m_psi")) sc2.m_psi_value = zx(c.at("m_psi"));
          stage.next_psi.push_back(std::move(sc2));
        }
      if (st.contains("closure"))
        for (const auto& c : st.at("closure")) {
          ScriptSideCondition sc2;
          sc2.label = c.at("label").get<std::string>();
          sc2.justification = c.at("just").get<std::string>();
          stage.closures.push_back(std::move(sc2));
        }
      sc.stages.push_back(std::move(stage));
    }
    ScriptStore::instance().add(std::move(sc));
  }
}

void load_dense_tables(const json& j) {
  for (const auto& r : j) {
    DenseTableRow row;
    row.table = r.at("table").get<int>();
    row.group = GroupId::parse(r.at("group").get<std::string>());
    row.lambda = jweight(r.at("lambda"));
    row.p_class = PClass::parse(r.at("p").get<std::string>());
    row.k = r.at("k").get<Int>();
    row.stabilizer = r.at("stab").get<std::string>();
    row.dense = r.value("dense", "");
    DenseTableStore::instance().add(std::move(row));
  }
}

// ---- programmatic weight tables for the infinite families -----------------

void add_table(GroupId g, Weight lambda, std::vector<WeightTableRow> rows) {
  WeightTable t;
  t.group = g;
  t.lambda = std::move(lambda);
  t.rows = std::move(rows);
  t.source = TableSource::embedded;
  WeightTableStore::instance().add(std::move(t));
}

Weight fw(int rank, std::initializer_list<std::pair<int, Int>> coords) {
  Weight w(rank, 0);
  for (auto [i, c] : coords) w[i - 1] = c;
  return w;
}

// Weight table of L((q+1) w1) for A_l with q in {2, 3}: the symmetric power
// at p >= 5, the twisted tensor product at p = q, a Frobenius twist of the
// natural module at the other small prime.  Orbits are enumerated from the
// exponent multisets of the monomial basis.
void register_A_power_table(int l, Int q) {
  GroupId g{'A', l};
  const RootSystem& rs = RootSystem::get(g);
  std::map<Weight, Int> orbits;  // dominant representative -> orbit size
  std::map<Weight, Int> kind;    // 0 = top, 1 = (q,1) type, 2 = the rest
  std::vector<Int> expo(l + 1, 0);
  std::function<void(Int, Int)> rec = [&](Int pos, Int left) {
    if (pos == l) {
      expo[pos] = left;
      std::vector<Int> sorted = expo;
      std::sort(sorted.begin(), sorted.end(), std::greater<Int>());
      Weight dom(l, 0);
      for (int i = 0; i < l; ++i) dom[i] = sorted[i] - sorted[i + 1];
      if (!orbits.count(dom)) {
        orbits[dom] = weyl_orbit_size(rs, dom);
        if (sorted[0] == q + 1)
          kind[dom] = 0;
        else if (sorted[0] == q && sorted[1] == 1)
          kind[dom] = 1;
        else
          kind[dom] = 2;
      }
      return;
    }
    for (Int v = 0; v <= left; ++v) {
      expo[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, q + 1);
  std::vector<WeightTableRow> rows;
  int index = static_cast<int>(orbits.size());
  Int other = q == 2 ? 3 : 2;
  std::vector<std::pair<Weight, Int>> sorted_orbits(orbits.begin(), orbits.end());
  auto mu_height = [&](const Weight& w) {
    auto coords = weight_in_root_basis(rs, w);
    Rat h(0);
    for (const auto& c : coords) h = h + c;
    return h;
  };
  std::sort(sorted_orbits.begin(), sorted_orbits.end(), [&](const auto& a, const auto& b) {
    if (kind[a.first] != kind[b.first]) return kind[a.first] < kind[b.first];
    return mu_height(b.first) < mu_height(a.first);
  });
  for (const auto& [dom, size] : sorted_orbits) {
    ZExpr mult(1);
    if (kind[dom] == 1)
      mult.terms.push_back({-1, other, false});
    else if (kind[dom] == 2) {
      mult.terms.push_back({-1, 2, false});
      mult.terms.push_back({-1, 3, false});
    }
    rows.push_back({--index, dom, size, mult});
  }
  add_table(g, fw(l, {{1, q + 1}}), std::move(rows));
}

void register_family_tables() {
  // type A: omega_2, 2*omega_1, omega_1 + q*omega_1 (q = 2, 3)
  for (int l = 1; l <= 9; ++l) {
    GroupId g{'A', l};
    Int binom = Int(l + 1) * l / 2;
    if (l >= 2)
      add_table(g, fw(l, {{2, 1}}), {{1, fw(l, {{2, 1}}), binom, ZExpr(1)}});
    add_table(g, fw(l, {{1, 2}}),
              l >= 2 ? std::vector<WeightTableRow>{{2, fw(l, {{1, 2}}), l + 1, ZExpr(1)},
                                                   {1, fw(l, {{2, 1}}), binom, ZExpr(1)}}
                     : std::vector<WeightTableRow>{{2, fw(l, {{1, 2}}), 2, ZExpr(1)},
                                                   {1, fw(l, {}), 1, ZExpr::parse("1-z2")}});
    for (Int q : {Int(2), Int(3)})
      if (l <= 6) register_A_power_table(l, q);
  }

  // types B and D: 2*omega_1 (p >= 3); type C: omega_2; natural modules
  for (int l = 2; l <= 8; ++l) {
    GroupId b{'B', l};
    ZExpr zero_mult_b;
    zero_mult_b.base = l;
    zero_mult_b.terms.push_back({-1, 2 * l + 1, true});
    // eps_1 + eps_2 is 2*omega_2 when l = 2 (omega_2 is the spin weight)
    Weight short_pair = l == 2 ? fw(l, {{2, 2}}) : fw(l, {{2, 1}});
    add_table(b, fw(l, {{1, 2}}),
              {{3, fw(l, {{1, 2}}), 2 * l, ZExpr(1)},
               {2, short_pair, 2 * Int(l) * (l - 1), ZExpr(1)},
               {1, fw(l, {{1, 1}}), 2 * l, ZExpr(1)},
               {0, fw(l, {}), 1, zero_mult_b}});
    ZExpr nat_zero = ZExpr::parse("1-z2");
    add_table(b, fw(l, {{1, 1}}),
              {{1, fw(l, {{1, 1}}), 2 * l, ZExpr(1)}, {0, fw(l, {}), 1, nat_zero}});
  }
  for (int l = 4; l <= 8; ++l) {
    GroupId d{'D', l};
    ZExpr zero_mult_d;
    zero_mult_d.base = l - 1;
    zero_mult_d.terms.push_back({-1, 2 * l, true});
    add_table(d, fw(l, {{1, 2}}),
              {{2, fw(l, {{1, 2}}), 2 * l, ZExpr(1)},
               {1, fw(l, {{2, 1}}), 2 * Int(l) * (l - 1), ZExpr(1)},
               {0, fw(l, {}), 1, zero_mult_d}});
    add_table(d, fw(l, {{1, 1}}), {{1, fw(l, {{1, 1}}), 2 * l, ZExpr(1)}});
  }
  for (int l = 3; l <= 8; ++l) {
    GroupId c{'C', l};
    ZExpr zero_mult_c;
    zero_mult_c.base = l - 1;
    zero_mult_c.terms.push_back({-1, l, true});
    add_table(c, fw(l, {{2, 1}}),
              {{1, fw(l, {{2, 1}}), 2 * Int(l) * (l - 1), ZExpr(1)}, {0, fw(l, {}), 1, zero_mult_c}});
    add_table(c, fw(l, {{1, 1}}), {{1, fw(l, {{1, 1}}), 2 * l, ZExpr(1)}});
  }
  for (int l = 2; l <= 8; ++l)
    if (!WeightTableStore::instance().has({'A', l}, fw(l, {{1, 1}})))
      add_table({'A', l}, fw(l, {{1, 1}}), {{1, fw(l, {{1, 1}}), l + 1, ZExpr(1)}});
  add_table({'A', 1}, fw(1, {{1, 1}}), {{1, fw(1, {{1, 1}}), 2, ZExpr(1)}});
}

std::once_flag load_flag;

}  // namespace

void load_all_data(const std::string& override_dir) {
  std::call_once(load_flag, [&] {
    register_family_tables();
    auto read_file = [&](const std::string& name) -> std::string {
      std::string dir = override_dir;
      if (dir.empty()) {
        const char* env = std::getenv("STABGATE_DATA");
        if (env) dir = env;
      }
      if (!dir.empty()) {
        std::filesystem::path p = std::filesystem::path(dir) / name;
        if (std::filesystem::exists(p)) {
          std::ifstream in(p);
          std::stringstream ss;
          ss << in.rdbuf();
          return ss.str();
        }
      }
      auto it = embedded_data_files().find(name);
      if (it == embedded_data_files().end())
        throw data_missing_error("dataset " + name + " not found on disk or embedded");
      return it->second;
    };
    load_weight_tables(json::parse(read_file("weight_tables.json")));
    load_class_dims(json::parse(read_file("exceptional_unipotent_dims.json")));
    load_closure_facts(json::parse(read_file("closure_facts.json")));
    load_scripts(json::parse(read_file("scripts.json")));
    load_dense_tables(json::parse(read_file("tables123.json")));
  });
}

}  // namespace stabgate
