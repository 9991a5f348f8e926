#include <algorithm>

#include "doctest.h"
#include "stabgate/classes.hpp"
#include "stabgate/engine.hpp"

using namespace stabgate;

TEST_CASE("M_r table") {
  CHECK(BoundTable::M({'A', 5}) == 30);
  CHECK(BoundTable::Mr({'A', 5}, 2) == 18);
  CHECK(BoundTable::Mr({'A', 5}, 3) == 24);
  CHECK(BoundTable::Mr({'E', 7}, 5) == 106);
  CHECK(BoundTable::Mr({'F', 4}, 5) == 40);
  CHECK(BoundTable::Mr({'G', 2}, 2) == 8);
  CHECK(BoundTable::Mr({'D', 5}, 2) == 24);
  CHECK(BoundTable::Mr({'D', 5}, 3) == 30);
  CHECK_THROWS_AS(BoundTable::Mr({'A', 5}, 5), data_missing_error);
  CHECK_THROWS_AS(BoundTable::Mr({'E', 8}, 7), data_missing_error);
  for (GroupId g : {GroupId{'A', 4}, GroupId{'B', 5}, GroupId{'C', 3}, GroupId{'D', 6},
                    GroupId{'E', 6}, GroupId{'F', 4}, GroupId{'G', 2}}) {
    for (Int r : {Int(2), Int(3)}) {
      CHECK(BoundTable::Mr(g, r) <= BoundTable::M(g));
      CHECK(BoundTable::d_phi_r(g, r) >= g.rank);
    }
  }
}

TEST_CASE("semisimple class dimensions") {
  const RootSystem& c4 = RootSystem::get({'C', 4});
  Subsystem a1c2 = standard_subsystem(c4, {1, 3, 4});
  CHECK(a1c2.label == "C2A1");
  CHECK(dim_ss_class(c4, {a1c2, 2}) == 22);
  Subsystem a3 = standard_subsystem(c4, {1, 2, 3});
  CHECK(dim_ss_class(c4, {a3, 2}) == 20);
  Subsystem all = standard_subsystem(c4, {1, 2, 3, 4});
  CHECK(dim_ss_class(c4, {all, 2}) == 0);
  for (GroupId g : {GroupId{'A', 4}, GroupId{'B', 3}}) {
    const RootSystem& rs = RootSystem::get(g);
    Subsystem s = standard_subsystem(rs, {1});
    CHECK(dim_ss_class(rs, {s, 3}) + s.size() == rs.num_roots());
  }
}

TEST_CASE("unipotent class dimensions from partitions") {
  // type A: single 2-block in A_l has dimension 2l
  for (int l = 2; l <= 6; ++l) {
    Partition p{2};
    for (int i = 2; i <= l; ++i) p.push_back(1);
    CHECK(dim_unip_class_partition('A', l, p) == 2 * l);
  }
  // identity is zero-dimensional
  CHECK(dim_unip_class_partition('A', 4, {1, 1, 1, 1, 1}) == 0);
  CHECK(dim_unip_class_partition('C', 3, {2, 2, 1, 1}) == 10);
  CHECK(dim_unip_class_partition('B', 4, {3, 3, 3}) == 24);
  CHECK(dim_unip_class_partition('D', 5, {3, 1, 1, 1, 1, 1, 1, 1}) == 16);
  CHECK(dim_unip_class_partition('D', 5, {2, 2, 2, 2, 1, 1}) == 20);
  CHECK_THROWS_AS(dim_unip_class_partition('B', 4, {4, 3, 1, 1}), argument_error);
  CHECK_THROWS_AS(dim_unip_class_partition('C', 3, {3, 2, 1}), argument_error);

  // class dimensions are even, for every valid partition with n <= 12
  for (char type : {'A', 'B', 'C', 'D'}) {
    for (int rank = 2; rank <= 6; ++rank) {
      Int n = type == 'A' ? rank + 1 : type == 'B' ? 2 * rank + 1 : 2 * rank;
      if (n > 12 || (type == 'D' && rank < 3)) continue;
      for (const auto& p : partitions_of(n)) {
        Int dim;
        try {
          dim = dim_unip_class_partition(type, rank, p);
        } catch (const argument_error&) {
          continue;
        }
        CHECK(dim >= 0);
        CHECK(dim % 2 == 0);
      }
    }
  }
}

TEST_CASE("natural partitions of subsystem-regular elements") {
  const RootSystem& d5 = RootSystem::get({'D', 5});
  CHECK(natural_partition_of_subsystem(d5, standard_subsystem(d5, {4, 5})) ==
        Partition{3, 1, 1, 1, 1, 1, 1, 1});
  CHECK(natural_partition_of_subsystem(d5, standard_subsystem(d5, {1, 3})) ==
        Partition{2, 2, 2, 2, 1, 1});
  CHECK(natural_partition_of_subsystem(d5, standard_subsystem(d5, {3, 4, 5})) ==
        Partition{5, 1, 1, 1, 1, 1});
  const RootSystem& b4 = RootSystem::get({'B', 4});
  CHECK(natural_partition_of_subsystem(b4, standard_subsystem(b4, {1, 2, 4})) ==
        Partition{3, 3, 3});
  CHECK(natural_partition_of_subsystem(b4, standard_subsystem(b4, {3, 4})) ==
        Partition{5, 1, 1, 1, 1});
  const RootSystem& c3 = RootSystem::get({'C', 3});
  CHECK(natural_partition_of_subsystem(c3, standard_subsystem(c3, {3})) ==
        Partition{2, 1, 1, 1, 1});
  CHECK(natural_partition_of_subsystem(c3, standard_subsystem(c3, {1})) ==
        Partition{2, 2, 1, 1});
  const RootSystem& a5 = RootSystem::get({'A', 5});
  CHECK(natural_partition_of_subsystem(a5, standard_subsystem(a5, {1, 2, 4})) ==
        Partition{3, 2, 1});
}

TEST_CASE("unipotent class dimensions through specs") {
  load_all_data();
  const RootSystem& e6 = RootSystem::get({'E', 6});
  Subsystem a2a1 = standard_subsystem(e6, {1, 3, 6});
  CHECK(dim_unip_class(e6, UnipotentSpec::regular(a2a1, "A2A1"), Char::prime(5)) == 46);

  const RootSystem& c4 = RootSystem::get({'C', 4});
  CHECK(dim_unip_class(c4, UnipotentSpec::p2(4, 1, 2), Char::prime(2)) == 20);
  CHECK(dim_p2_class(4, 1, 0) == 12);

  const RootSystem& a4 = RootSystem::get({'A', 4});
  Subsystem a1 = standard_subsystem(a4, {1});
  CHECK(dim_unip_class(a4, UnipotentSpec::regular(a1, "A1"), Char::prime(2)) == 8);

  CHECK(dim_unip_class(a4, UnipotentSpec::partition({1, 1, 1, 1, 1}), Char::prime(3)) == 0);
  CHECK_THROWS_AS(
      dim_unip_class(e6, UnipotentSpec::regular(standard_subsystem(e6, {1, 2, 3, 4, 5, 6}), "E6"),
                     Char::prime(5)),
      argument_error);  // regular unipotent of E6 has order > 5
}

TEST_CASE("order-p membership via Coxeter numbers") {
  const RootSystem& e6 = RootSystem::get({'E', 6});
  Subsystem a4a1 = standard_subsystem(e6, {1, 2, 4, 5, 6});
  CHECK(a4a1.max_coxeter_number() == 5);
  CHECK(unipotent_in_g_p(a4a1, Char::prime(5)));
  CHECK_FALSE(unipotent_in_g_p(a4a1, Char::prime(3)));
  CHECK(unipotent_in_g_p(a4a1, Char::infinity()));
  const RootSystem& d5 = RootSystem::get({'D', 5});
  CHECK(standard_subsystem(d5, {3, 4, 5}).max_coxeter_number() == 4);
}

TEST_CASE("m_psi formulas and search") {
  const RootSystem& a5 = RootSystem::get({'A', 5});
  CHECK(m_psi(a5, standard_subsystem(a5, {1, 3})) == 20);
  const RootSystem& a7 = RootSystem::get({'A', 7});
  CHECK(m_psi(a7, standard_subsystem(a7, {1, 3, 5})) == 30);
  const RootSystem& a3 = RootSystem::get({'A', 3});
  CHECK(m_psi(a3, standard_subsystem(a3, {1, 3})) == 6);
  CHECK(m_psi_search(a3, standard_subsystem(a3, {1, 3})) == 6);

  // formula equals search on A_l, l <= 6, for A1^2 and A2; A1^3 at l = 5, 6
  for (int l = 3; l <= 6; ++l) {
    const RootSystem& rs = RootSystem::get({'A', l});
    CHECK(m_psi(rs, standard_subsystem(rs, {1, 3})) ==
          m_psi_search(rs, standard_subsystem(rs, {1, 3})));
    CHECK(m_psi(rs, standard_subsystem(rs, {1, 2})) ==
          m_psi_search(rs, standard_subsystem(rs, {1, 2})));
    if (l >= 5)
      CHECK(m_psi(rs, standard_subsystem(rs, {1, 3, 5})) ==
            m_psi_search(rs, standard_subsystem(rs, {1, 3, 5})));
  }
}

TEST_CASE("disjoint conjugates") {
  const RootSystem& a5 = RootSystem::get({'A', 5});
  Subsystem psi = standard_subsystem(a5, {1, 2, 4});
  Subsystem empty = subsystem_from_generators(a5, {});
  CHECK(disjoint_conjugate_exists(a5, psi, empty));
  Subsystem full = standard_subsystem(a5, {1, 2, 3, 4, 5});
  CHECK_FALSE(disjoint_conjugate_exists(a5, psi, full));
  // every Phi(s) with at most 9 roots admits a disjoint A2A1 conjugate
  for (const auto& parts : partitions_of(6)) {
    std::vector<int> gens;
    Int offset = 0;
    for (Int m : parts) {
      for (Int j = 1; j < m; ++j) gens.push_back(static_cast<int>(offset + j));
      offset += m;
    }
    Subsystem phi_s = subsystem_from_generators(a5, [&] {
      std::vector<int> idx;
      for (int pos : gens) {
        RootVec e(5, 0);
        e[pos - 1] = 1;
        idx.push_back(a5.root_index(e));
      }
      return idx;
    }());
    if (phi_s.size() > 9) continue;
    CHECK(disjoint_conjugate_exists(a5, psi, phi_s));
  }
}

TEST_CASE("closure order on classical classes") {
  const RootSystem& a4 = RootSystem::get({'A', 4});
  auto spec = [&](Partition p) { return UnipotentSpec::partition(std::move(p)); };
  CHECK(closure_contains(a4, spec({3, 1, 1}), spec({2, 2, 1}), Char::prime(5)) ==
        ClosureVerdict::yes);
  CHECK(closure_contains(a4, spec({2, 2, 1}), spec({3, 1, 1}), Char::prime(5)) ==
        ClosureVerdict::no);
  CHECK(closure_contains(a4, spec({3, 2}), spec({3, 2}), Char::prime(5)) == ClosureVerdict::yes);

  // partial-order laws on partitions of n <= 10
  Rng rng(24680);
  auto parts10 = partitions_of(8);
  for (int trial = 0; trial < 400; ++trial) {
    const auto& a = parts10[rng.below(static_cast<Int>(parts10.size()))];
    const auto& b = parts10[rng.below(static_cast<Int>(parts10.size()))];
    const auto& c = parts10[rng.below(static_cast<Int>(parts10.size()))];
    CHECK(dominates(a, a));
    if (dominates(a, b) && dominates(b, a)) CHECK(a == b);
    if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
  }
}

TEST_CASE("eigenspace gap") {
  // equality case: all m_j equal in type A forces delta = -1
  CHECK(eigenspace_gap('A', 5, 3, {2, 2, 2}) == -1);
  CHECK(eigenspace_gap('A', 5, 2, {3, 3}) == -1);
  // everything concentrated: s central, gap = rank + |Phi| - 0
  CHECK(eigenspace_gap('A', 4, 3, {5, 0, 0}) == 4 + 20);
  CHECK_THROWS_AS(eigenspace_gap('B', 4, 2, {2, 2}), argument_error);
  CHECK_THROWS_AS(eigenspace_gap('A', 4, 3, {4, 0, 0}), argument_error);

  // exhaustive: delta >= -a with a = 1 only in type A with r | l+1
  for (char type : {'A', 'B', 'C', 'D'}) {
    for (Int l = (type == 'D' ? 3 : 1); l <= 6; ++l) {
      if (type == 'B' && l < 2) continue;
      for (Int r : {Int(2), Int(3), Int(5)}) {
        if (type != 'A' && r == 2) continue;
        Int coords = type == 'A' ? l + 1 : l;
        std::vector<Int> m(r, 0);
        std::function<void(Int, Int)> rec = [&](Int pos, Int left) {
          if (pos == r - 1) {
            m[pos] = left;
            Int a = (type == 'A' && (l + 1) % r == 0) ? 1 : 0;
            CHECK(eigenspace_gap(type, l, r, m) >= -a);
            return;
          }
          for (Int v = 0; v <= left; ++v) {
            m[pos] = v;
            rec(pos + 1, left - v);
          }
        };
        rec(0, coords);
      }
    }
  }
}

TEST_CASE("eigenspace gap agrees with the closed polynomials in type A") {
  // dim L_1 = sum m_j(m_j - 1) + l, dim L_eta = sum m_j m_{j+1 mod r}
  for (Int l = 2; l <= 6; ++l)
    for (Int r : {Int(2), Int(3), Int(5)}) {
      std::vector<Int> m(r, 0);
      std::function<void(Int, Int)> rec = [&](Int pos, Int left) {
        if (pos == r - 1) {
          m[pos] = left;
          Int l1 = l, le = 0;
          for (Int j = 0; j < r; ++j) {
            l1 += m[j] * (m[j] - 1);
            le += m[j] * m[(j + 1) % r];
          }
          if (r == 2) le = m[0] * m[1] + m[1] * m[0];
          CHECK(eigenspace_gap('A', l, r, m) == l1 - le);
          return;
        }
        for (Int v = 0; v <= left; ++v) {
          m[pos] = v;
          rec(pos + 1, left - v);
        }
      };
      rec(0, l + 1);
    }
}
