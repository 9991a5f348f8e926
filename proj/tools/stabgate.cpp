#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stabgate/engine.hpp"

using namespace stabgate;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

int cmd_roots(const std::string& type, int rank, bool as_json) {
  const RootSystem& rs = RootSystem::get(GroupId{type[0], rank});
  if (as_json) {
    json j;
    j["type"] = rs.id().str();
    j["num_roots"] = rs.num_roots();
    j["weyl_order"] = rs.weyl_order();
    j["roots"] = json::array();
    for (int i = 0; i < rs.num_roots(); ++i) {
      json r;
      r["coeffs"] = rs.root(i);
      r["height"] = rs.height(i);
      r["short"] = rs.is_short(i);
      j["roots"].push_back(r);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rs.id().str() << ": " << rs.num_roots() << " roots, |W| = " << rs.weyl_order()
              << "\n";
    for (int i = 0; i < rs.num_roots(); ++i) {
      const auto& r = rs.root(i);
      for (size_t c = 0; c < r.size(); ++c) std::cout << (c ? " " : "") << r[c];
      std::cout << (rs.is_short(i) ? "  s" : "  l") << "\n";
    }
  }
  return 0;
}

Char parse_char(const std::string& s) {
  if (s == "inf" || s == "0") return Char::infinity();
  return Char::prime(std::stoll(s));
}

int cmd_weights(const std::string& type, int rank, const std::string& lambda_csv,
                const std::string& p_str, bool as_json) {
  load_all_data();
  GroupId g{type[0], rank};
  const RootSystem& rs = RootSystem::get(g);
  Weight lambda;
  for (int c : parse_int_list(lambda_csv)) lambda.push_back(c);
  if (static_cast<int>(lambda.size()) != rank) throw argument_error("lambda has wrong rank");
  const WeightTable& t = WeightTableStore::instance().get(g, lambda, SourcePolicy::allow_computed);
  Char p = parse_char(p_str);
  json j;
  j["group"] = g.str();
  j["lambda"] = lambda;
  j["source"] = t.source == TableSource::embedded ? "embedded" : "computed";
  j["dim"] = t.dim(p);
  j["rows"] = json::array();
  for (const auto& r : t.rows) {
    json row;
    row["i"] = r.orbit_index;
    row["mu"] = r.dominant;
    row["orbit"] = r.orbit_size;
    row["mult"] = r.multiplicity.eval(p);
    j["rows"].push_back(row);
  }
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else {
    std::cout << "dim L(lambda) at p=" << p.str() << ": " << t.dim(p) << "\n";
    for (const auto& r : t.rows) {
      std::cout << "  orbit " << r.orbit_index << ": mu = " << weight_str(r.dominant)
                << ", |W.mu| = " << r.orbit_size << ", m = " << r.multiplicity.eval(p) << "\n";
    }
    (void)rs;
  }
  return 0;
}

int cmd_tuples(const std::string& d_csv, Int k, bool as_json, bool as_tsv) {
  std::vector<Int> parts;
  for (int c : parse_int_list(d_csv)) parts.push_back(c);
  std::sort(parts.begin(), parts.end(), std::greater<Int>());
  DimTuple d(parts);
  BMinResult res = b_min(d, k);
  if (as_tsv) {
    std::cout << res.value;
    for (Int w : res.witness) std::cout << "\t" << w;
    std::cout << "\n";
    return 0;
  }
  if (as_json) {
    json j;
    j["d"] = d.parts;
    j["k"] = k;
    j["B"] = res.value;
    j["witness"] = res.witness;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << res.value << "\n";
  }
  return 0;
}

int cmd_nets(const std::string& type, int rank, const std::string& lambda_csv,
             const std::vector<std::string>& psi_spec, const std::string& p_str, Int r,
             bool as_json) {
  load_all_data();
  GroupId g{type[0], rank};
  const RootSystem& rs = RootSystem::get(g);
  Weight lambda;
  for (int c : parse_int_list(lambda_csv)) lambda.push_back(c);
  const WeightTable& t = WeightTableStore::instance().get(g, lambda, SourcePolicy::allow_computed);
  std::vector<int> gens;
  for (const auto& part : psi_spec) {
    // each token is "a1:3" style or a bare list "3,4"
    std::string positions = part;
    size_t colon = part.find(':');
    if (colon != std::string::npos) positions = part.substr(colon + 1);
    for (int pos : parse_int_list(positions)) gens.push_back(pos);
  }
  Subsystem psi = standard_subsystem(rs, gens);
  NetDecomposition nets = compute_nets(rs, t, psi);
  Char p = parse_char(p_str);
  json j;
  j["psi"] = psi.label;
  j["rows"] = json::array();
  Int cs_total = 0, cu_total = 0;
  bool order_ok = unipotent_in_g_p(psi, p);
  for (const auto& gnet : nets.groups) {
    json row;
    row["nu"] = gnet.nu_label;
    row["n"] = json::object();
    for (auto& [orbit, cnt] : gnet.n) row["n"][std::to_string(orbit)] = cnt;
    row["m"] = gnet.count;
    Int cs = c_semisimple(rs, t, gnet.shape, psi, r, p) * gnet.count;
    row["c_s"] = cs;
    cs_total += cs;
    if (order_ok) {
      Int cu = c_unipotent(rs, t, gnet.shape, psi, p) * gnet.count;
      row["c_u"] = cu;
      cu_total += cu;
    }
    j["rows"].push_back(row);
  }
  j["c_ss_total"] = cs_total;
  if (order_ok) j["c_u_total"] = cu_total;
  j["r"] = r;
  j["p"] = p.str();
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else {
    std::cout << "Psi = " << psi.label << "  (r=" << r << ", p=" << p.str() << ")\n";
    for (const auto& row : j["rows"]) {
      std::cout << "  " << row["nu"].get<std::string>() << "  n=";
      for (auto& [k2, v] : row["n"].items()) std::cout << k2 << ":" << v << " ";
      std::cout << " m=" << row["m"] << "  c(s)=" << row["c_s"];
      if (row.contains("c_u")) std::cout << "  c(u)=" << row["c_u"];
      std::cout << "\n";
    }
    std::cout << "totals: c(Psi)_ss = " << cs_total;
    if (order_ok) std::cout << ", c(Psi)_u = " << cu_total;
    std::cout << "\n";
  }
  return 0;
}

int report_exit(const std::vector<VerificationReport>& reports) {
  bool any_fail = false, any_trusted = false;
  for (const auto& r : reports) {
    if (!r.ok()) any_fail = true;
    if (r.verdict == Verdict::certified_with_trusted || r.trusted_facts > 0) any_trusted = true;
  }
  if (any_fail) return 1;
  return any_trusted ? 2 : 0;
}

int cmd_verify(const std::string& quad, bool deep, bool as_json) {
  load_all_data();
  EngineOptions opts;
  opts.deep = deep;
  std::vector<VerificationReport> reports;
  if (quad == "all") {
    for (const auto& key : ScriptStore::instance().keys())
      reports.push_back(run_script(ScriptStore::instance().get(key), opts));
  } else {
    Quadruple q = Quadruple::parse(quad);
    reports.push_back(run_script(ScriptStore::instance().get(q.key()), opts));
  }
  for (const auto& r : reports) {
    if (as_json)
      std::cout << r.to_json() << "\n";
    else {
      std::cout << r.quad.key() << ": "
                << (r.verdict == Verdict::certified                ? "certified"
                    : r.verdict == Verdict::certified_with_trusted ? "certified-with-trusted"
                    : r.verdict == Verdict::failed                 ? "FAILED"
                                                                   : "needs-trusted-facts")
                << " (computed " << r.computed_facts << ", embedded " << r.embedded_facts
                << ", trusted " << r.trusted_facts << ")\n";
      for (const auto& m : r.mismatches) std::cout << "    " << m << "\n";
      for (const auto& m : r.missing_facts) std::cout << "    missing: " << m << "\n";
    }
  }
  return report_exit(reports);
}

int cmd_sweep(const std::string& family, int lo, int hi, bool as_json) {
  auto reports = family_sweep(family, lo, hi);
  bool ok = true;
  for (const auto& r : reports) {
    if (!r.certified) ok = false;
    if (as_json) {
      json j;
      j["family"] = r.family_id;
      j["quadruple"] = r.quad.key();
      j["certified"] = r.certified;
      j["checks"] = json::array();
      for (const auto& c : r.checks)
        j["checks"].push_back({{"what", c.description}, {"ok", c.ok}, {"bound", c.lhs}, {"dim", c.rhs}});
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << r.quad.key() << ": " << (r.certified ? "certified" : "FAILED") << "\n";
      for (const auto& c : r.checks)
        if (!c.ok)
          std::cout << "    " << c.description << ": bound " << c.lhs << " <= dim " << c.rhs << "\n";
    }
  }
  return ok ? 0 : 1;
}

int cmd_tables(bool as_json, bool as_tsv) {
  auto results = dense_orbit_check_all();
  bool ok = true;
  for (const auto& r : results) {
    if (!r.consistent) ok = false;
    if (as_tsv) {
      std::cout << r.row.table << "\t" << r.row.group.str() << "\t" << r.row.p_class.spec
                << "\t" << r.row.k << "\t" << r.row.stabilizer << "\t" << r.row.dense << "\t"
                << (r.consistent ? "ok" : r.detail) << "\n";
      continue;
    }
    if (as_json) {
      json j;
      j["table"] = r.row.table;
      j["group"] = r.row.group.str();
      j["k"] = r.row.k;
      j["stabilizer"] = r.row.stabilizer;
      j["dense"] = r.row.dense;
      j["consistent"] = r.consistent;
      j["detail"] = r.detail;
      std::cout << j.dump() << "\n";
    } else if (!r.consistent) {
      std::cout << "table " << r.row.table << " row " << r.row.group.str() << " k=" << r.row.k
                << ": " << r.detail << "\n";
    }
  }
  CorollaryReport cor = corollary_checks();
  for (const auto& f : cor.failures) {
    ok = false;
    std::cout << "corollary: " << f << "\n";
  }
  if (!as_json)
    std::cout << "dense-orbit rows checked: " << results.size() << (ok ? " (all consistent)" : "")
              << "\n";
  return ok ? 0 : 1;
}

int cmd_check_all(bool deep) {
  load_all_data();
  EngineOptions opts;
  opts.deep = deep;
  int fails = 0, certified = 0, trusted = 0;

  std::cout << "== escalation scripts ==\n";
  for (const auto& key : ScriptStore::instance().keys()) {
    VerificationReport r = run_script(ScriptStore::instance().get(key), opts);
    bool ok = r.ok();
    std::cout << (ok ? "PASS " : "FAIL ") << key;
    if (r.trusted_facts) std::cout << " [trusted " << r.trusted_facts << "]";
    std::cout << "\n";
    for (const auto& m : r.mismatches) std::cout << "      " << m << "\n";
    if (!ok)
      ++fails;
    else {
      ++certified;
      if (r.trusted_facts) ++trusted;
    }
  }

  std::cout << "== family sweeps ==\n";
  struct FamilyRange {
    const char* id;
    int lo, hi;
  };
  for (auto [id, lo, hi] : {FamilyRange{"C_w2_k2", 4, 8}, FamilyRange{"B_2w1_k2", 2, 6},
                            FamilyRange{"D_2w1_k2", 4, 6}, FamilyRange{"A_w2_k3", 6, 9},
                            FamilyRange{"A_2w1_k3", 3, 9}, FamilyRange{"A_w1qw1_k2", 2, 5}}) {
    auto reports = family_sweep(id, lo, hi);
    int bad = 0;
    for (const auto& r : reports)
      if (!r.certified) ++bad;
    std::cout << (bad ? "FAIL " : "PASS ") << id << " (" << reports.size() << " instances)\n";
    if (bad) ++fails;
  }

  std::cout << "== dense-orbit tables ==\n";
  auto dense = dense_orbit_check_all();
  int bad_rows = 0;
  for (const auto& r : dense)
    if (!r.consistent) {
      ++bad_rows;
      std::cout << "FAIL table " << r.row.table << " " << r.row.group.str() << " k=" << r.row.k
                << ": " << r.detail << "\n";
    }
  std::cout << (bad_rows ? "FAIL" : "PASS") << " dense-orbit arithmetic (" << dense.size()
            << " rows)\n";
  fails += bad_rows ? 1 : 0;

  CorollaryReport cor = corollary_checks();
  for (const auto& f : cor.failures) std::cout << "FAIL corollary: " << f << "\n";
  std::cout << (cor.ok() ? "PASS" : "FAIL") << " corollary checks\n";
  if (!cor.ok()) ++fails;

  std::cout << "summary: " << certified << " scripts certified, " << fails << " failures, "
            << trusted << " with trusted facts\n";
  if (fails) return 1;
  return trusted ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabgate: combinatorial verification for generic-stabilizer bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false, as_tsv = false;
  app.add_flag("--json", as_json, "emit JSON");
  app.add_flag("--tsv", as_tsv, "emit tab-separated values where supported");

  std::string type = "A", lambda_csv, p_str = "inf", d_csv, quad, family;
  int rank = 1, lo = 2, hi = 6;
  Int k = 1, r = 2;
  bool deep = false;
  std::vector<std::string> psi_spec;

  auto* roots = app.add_subcommand("roots", "build a root system");
  roots->add_option("--type", type)->required();
  roots->add_option("--rank", rank)->required();

  auto* weights = app.add_subcommand("weights", "weight table of L(lambda)");
  weights->add_option("--type", type)->required();
  weights->add_option("--rank", rank)->required();
  weights->add_option("--lambda", lambda_csv)->required();
  weights->add_option("--p", p_str);

  auto* tuples = app.add_subcommand("tuples", "B_{d,k} with witness");
  tuples->add_option("--d", d_csv)->required();
  tuples->add_option("--k", k)->required();

  auto* nets = app.add_subcommand("nets", "Psi-net table");
  nets->add_option("--type", type)->required();
  nets->add_option("--rank", rank)->required();
  nets->add_option("--lambda", lambda_csv)->required();
  nets->add_option("--psi", psi_spec)->required();
  nets->add_option("--p", p_str);
  nets->add_option("--r", r);

  auto* verify = app.add_subcommand("verify", "run an escalation script");
  verify->add_option("--quad", quad)->required();
  verify->add_flag("--deep", deep);

  auto* sweep = app.add_subcommand("sweep", "family sweep");
  sweep->add_option("--family", family)->required();
  sweep->add_option("--lo", lo);
  sweep->add_option("--hi", hi);

  app.add_subcommand("tables", "dense-orbit and corollary checks");
  auto* check_all = app.add_subcommand("check-all", "run every verification");
  check_all->add_flag("--deep", deep);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand("roots")) return cmd_roots(type, rank, as_json);
    if (app.got_subcommand("weights")) return cmd_weights(type, rank, lambda_csv, p_str, as_json);
    if (app.got_subcommand("tuples")) return cmd_tuples(d_csv, k, as_json, as_tsv);
    if (app.got_subcommand("nets"))
      return cmd_nets(type, rank, lambda_csv, psi_spec, p_str, r, as_json);
    if (app.got_subcommand("verify")) return cmd_verify(quad, deep, as_json);
    if (app.got_subcommand("sweep")) return cmd_sweep(family, lo, hi, as_json);
    if (app.got_subcommand("tables")) return cmd_tables(as_json, as_tsv);
    if (app.got_subcommand("check-all")) return cmd_check_all(deep);
  } catch (const data_missing_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const argument_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const config_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
