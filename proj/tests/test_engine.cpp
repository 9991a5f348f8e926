#include "doctest.h"
#include "stabgate/engine.hpp"

using namespace stabgate;

TEST_CASE("quadruple shorthand") {
  Quadruple q = Quadruple::parse("A5:w2:any:4");
  CHECK(q.group.str() == "A5");
  CHECK(q.lambda == Weight{0, 1, 0, 0, 0});
  CHECK(q.k == 4);
  CHECK(q.key() == "A5:w2:any:4");
  Quadruple q2 = Quadruple::parse("A2:3w1:>=5:2");
  CHECK(q2.lambda == Weight{3, 0});
  CHECK_THROWS_AS(Quadruple::parse("A5:w2:any"), argument_error);
}

TEST_CASE("codimension of fixed points on the Grassmannian") {
  // blocks 2^2 1^3 on a 7-dimensional module, k = 2: d = (5, 2), B = 4
  CHECK(codim_fixed_grassmann_blocks({2, 2, 1, 1, 1}, 2) == 4);
  CHECK(codim_fixed_grassmann_eigendims({7}, 3) == 0);
  CHECK(codim_fixed_grassmann_eigendims({21, 6}, 4) == 24);
  CHECK(codim_fixed_grassmann_eigendims({6, 21}, 4) == 24);
}

TEST_CASE("spot values from the embedded scripts") {
  load_all_data();
  // A5 w2 final stage: B_{(3,3,3,3,3),4} = 36 > M = 30
  CHECK(b_min(DimTuple({3, 3, 3, 3, 3}), 4).value == 36);
  // E6 w1 stage A2A1: c = 15, B_{(12,12,3),4} = 52 > 46
  CHECK(b_min(DimTuple({12, 12, 3}), 4).value == 52);
  // E8 w8 stage A3: c = 148, B_{(100,100,48),2} = 294 > 240
  CHECK(b_min(DimTuple({100, 100, 48}), 2).value == 294);
  // F4 w4 stage C3 (unipotent side): B_{(4,4,4,4,4,4,2),3} = 60 > 48
  CHECK(b_min(DimTuple({4, 4, 4, 4, 4, 4, 2}), 3).value == 60);

  const RootSystem& e6 = RootSystem::get({'E', 6});
  const WeightTable& t = WeightTableStore::instance().get({'E', 6}, {1, 0, 0, 0, 0, 0});
  NetDecomposition nd = compute_nets(e6, t, standard_subsystem(e6, {1, 3, 6}));
  CHECK(c_total_semisimple(e6, t, nd, 3, Char::prime(5)) == 15);

  const RootSystem& e8 = RootSystem::get({'E', 8});
  const WeightTable& t8 = WeightTableStore::instance().get({'E', 8}, {0, 0, 0, 0, 0, 0, 0, 1});
  NetDecomposition nd8 = compute_nets(e8, t8, standard_subsystem(e8, {1, 3, 4}));
  CHECK(c_total_semisimple(e8, t8, nd8, 5, Char::prime(7)) == 148);
  CHECK(c_total_unipotent(e8, t8, nd8, Char::prime(5)) == 148);
}

TEST_CASE("run_script on the A5 w2 quadruple") {
  load_all_data();
  const auto& script = ScriptStore::instance().get("A5:w2:any:4");
  VerificationReport rep = run_script(script);
  CHECK(rep.verdict == Verdict::certified);
  CHECK(rep.mismatches.empty());
  CHECK(rep.trusted_facts == 0);
  CHECK(rep.computed_facts > 100);
  // reports are deterministic
  CHECK(rep.to_json() == run_script(script).to_json());
}

TEST_CASE("certified verdicts are monotone in k") {
  load_all_data();
  for (const char* key : {"A5:w2:any:4", "A6:w3:any:2", "D5:w5:any:5", "E6:w2:any:2"}) {
    const auto& script = ScriptStore::instance().get(key);
    for (Int bump = 1; bump <= 2; ++bump) {
      EngineOptions opts;
      opts.k_override = script.quad.k + bump;
      VerificationReport rep = run_script(script, opts);
      CHECK(rep.ok());
    }
  }
}

TEST_CASE("missing script raises a data error") {
  load_all_data();
  CHECK_THROWS_AS(ScriptStore::instance().get("A9:w4:any:2"), data_missing_error);
}

TEST_CASE("stabilizer descriptor dimensions") {
  CHECK(StabilizerDescriptor::parse("A2T1.Z2").dimension == 9);
  CHECK(StabilizerDescriptor::parse("G2B1").dimension == 17);
  CHECK(StabilizerDescriptor::parse("A1^3.S3").dimension == 9);
  CHECK(StabilizerDescriptor::parse("Z2/(2,p)^2.Z2^2").dimension == 0);
  CHECK(StabilizerDescriptor::parse("A2~").dimension == 8);
  CHECK(StabilizerDescriptor::parse("A1U2").dimension == 5);
  CHECK(StabilizerDescriptor::parse("D4.Z2/(2,p).Z2").dimension == 28);
  CHECK(StabilizerDescriptor::parse("B1^2(*)").semi_generic);
  CHECK(StabilizerDescriptor::parse("B1^2(*)").dimension == 6);
  CHECK_THROWS_AS(StabilizerDescriptor::parse("Q5"), argument_error);
}

TEST_CASE("dense-orbit spot rows") {
  load_all_data();
  // A4 w2 k=3: 24 - 3 = 21 = dim G_3(V), dense
  DenseTableRow a4{2, GroupId{'A', 4}, {0, 1, 0, 0}, PClass::parse("any"), 3, "A1", "yes"};
  CHECK(dense_orbit_check(a4).consistent);
  // G2 w1 p=2 k=3: 14 - 5 = 9 = dim G_3(V), dense
  DenseTableRow g2{3, GroupId{'G', 2}, {1, 0}, PClass::parse("=2"), 3, "A1U2", "yes"};
  CHECK(dense_orbit_check(g2).consistent);
  // E6 w1 k=3 says no: 78 - 8 != 72
  DenseTableRow e6{3, GroupId{'E', 6}, {1, 0, 0, 0, 0, 0}, PClass::parse("any"), 3,
                   "A2.Z3/(3,p).S3", "no"};
  CHECK(dense_orbit_check(e6).consistent);
  // flipping the verdict is caught
  e6.dense = "yes";
  CHECK_FALSE(dense_orbit_check(e6).consistent);
}

TEST_CASE("family sweep edge cases") {
  CHECK_THROWS_AS(family_sweep("no_such_family", 2, 4), argument_error);
  auto reports = family_sweep("C_w2_k2", 4, 4, false);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].certified);
  CHECK(reports[0].quad.k == 2);
}

TEST_CASE("c totals never decrease as Psi grows along a script") {
  load_all_data();
  for (const auto& key : ScriptStore::instance().keys()) {
    const auto& script = ScriptStore::instance().get(key);
    if (!script.alias_of.empty()) continue;
    const RootSystem& rs = RootSystem::get(script.quad.group);
    Char p = script.quad.p_class.reps().back();
    // evaluate the used bound c of every check, keyed by the branch root set
    struct Entry {
      std::vector<int> roots;
      Int c;
    };
    std::vector<Entry> seen;
    for (const auto& stage : script.stages) {
      for (const auto& check : stage.checks) {
        Subsystem psi = standard_subsystem(rs, stage.branches[check.branch].gens);
        Int c = check.c.eval(p);
        for (const auto& prev : seen) {
          bool grows = prev.roots.size() < psi.root_idx.size() &&
                       std::includes(psi.root_idx.begin(), psi.root_idx.end(),
                                     prev.roots.begin(), prev.roots.end());
          if (grows) CHECK(c >= prev.c);
        }
        seen.push_back({psi.root_idx, c});
      }
    }
  }
}

TEST_CASE("codim is invariant under permuting eigenvalue dimensions") {
  Rng rng(777);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Int> dims;
    Int n = 2 + rng.below(4);
    for (Int i = 0; i < n; ++i) dims.push_back(1 + rng.below(6));
    Int total = 0;
    for (Int d : dims) total += d;
    Int k = 1 + rng.below(total / 2 > 0 ? total / 2 : 1);
    Int base = codim_fixed_grassmann_eigendims(dims, k);
    for (size_t i = dims.size(); i > 1; --i)
      std::swap(dims[i - 1], dims[rng.below(static_cast<Int>(i))]);
    CHECK(codim_fixed_grassmann_eigendims(dims, k) == base);
  }
}

TEST_CASE("empty script and empty sweep ranges") {
  load_all_data();
  EscalationScript empty;
  empty.quad = Quadruple::parse("A5:w2:any:4");
  empty.M = 30;
  VerificationReport rep = run_script(empty);
  CHECK(rep.verdict == Verdict::needs_trusted_facts);
  CHECK(rep.stages.empty());
  CHECK(rep.mismatches.empty());
  CHECK_FALSE(rep.missing_facts.empty());

  CHECK(family_sweep("A_w2_k3", 2, 4).empty());  // below the family's first rank
}

TEST_CASE("embedded-only weight table policy") {
  load_all_data();
  Weight strange(5, 0);
  strange[0] = 7;
  CHECK_THROWS_AS(WeightTableStore::instance().get({'A', 5}, strange), data_missing_error);
}

TEST_CASE("closure fact premises") {
  load_all_data();
  CHECK(ClosureFactTable::instance().covers({'E', 6}, "A1A1", 24) == ClosureVerdict::trusted);
  CHECK(ClosureFactTable::instance().covers({'E', 6}, "A1A1", 70) == ClosureVerdict::trusted);
  CHECK(ClosureFactTable::instance().covers({'E', 6}, "A1A1", 23) == ClosureVerdict::unknown);
  CHECK(ClosureFactTable::instance().covers({'E', 6}, "A7", 24) == ClosureVerdict::unknown);
}

TEST_CASE("m_Psi includes the composite lemma case") {
  const RootSystem& a9 = RootSystem::get({'A', 9});
  Subsystem psi = standard_subsystem(a9, {1, 2, 4, 6});
  CHECK(psi.label == "A2A1A1");
  CHECK(m_psi(a9, psi) == 40);  // floor(81/2), as for A2 alone
}

TEST_CASE("deep mode replays the inspection claims") {
  load_all_data();
  EngineOptions opts;
  opts.deep = true;
  for (const char* key : {"D5:w5:any:5", "B4:w4:any:4", "E6:w1:any:4"}) {
    VerificationReport rep = run_script(ScriptStore::instance().get(key), opts);
    CHECK(rep.ok());
    CHECK(rep.mismatches.empty());
  }
}

TEST_CASE("corrupted script data is caught") {
  load_all_data();
  EscalationScript bad = ScriptStore::instance().get("A5:w2:any:4");
  // perturb one printed total
  REQUIRE(!bad.stages.empty());
  bad.stages[0].branches[0].cs_total["r>=2"] = ZExpr(5);
  VerificationReport rep = run_script(bad);
  CHECK(rep.verdict == Verdict::failed);
  CHECK_FALSE(rep.mismatches.empty());

  // perturb a net count
  EscalationScript bad2 = ScriptStore::instance().get("A5:w2:any:4");
  bad2.stages[0].branches[0].rows[0].m = 5;
  CHECK(run_script(bad2).verdict == Verdict::failed);

  // perturb a bound
  EscalationScript bad3 = ScriptStore::instance().get("A5:w2:any:4");
  bad3.stages[1].checks[0].B = ZExpr(22);
  CHECK(run_script(bad3).verdict == Verdict::failed);

  // perturb a class-dimension target
  EscalationScript bad4 = ScriptStore::instance().get("A5:w2:any:4");
  bad4.stages[0].checks[0].targets[0].value = ZExpr(11);
  CHECK(run_script(bad4).verdict == Verdict::failed);

  // perturb the headline constant
  EscalationScript bad5 = ScriptStore::instance().get("A5:w2:any:4");
  bad5.M = 31;
  CHECK(run_script(bad5).verdict == Verdict::failed);
}

