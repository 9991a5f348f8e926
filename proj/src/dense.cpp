#include <algorithm>
#include <cctype>

#include "stabgate/engine.hpp"

namespace stabgate {

StabilizerDescriptor StabilizerDescriptor::parse(const std::string& s) {
  StabilizerDescriptor out;
  out.text = s;
  size_t i = 0;
  auto read_int = [&]() {
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw argument_error("expected a number in descriptor: " + s);
    return std::stoll(s.substr(start, i - start));
  };
  auto factor_dim = [&]() -> Int {
    char c = s[i];
    if (c == '(') {
      if (s.compare(i, 3, "(*)") == 0) {
        i += 3;
        out.semi_generic = true;
        return 0;
      }
      throw argument_error("bad group in descriptor: " + s);
    }
    if (s.compare(i, 3, "Dih") == 0) {
      i += 3;
      read_int();
      return 0;
    }
    if (s.compare(i, 3, "Alt") == 0) {
      i += 3;
      read_int();
      return 0;
    }
    ++i;
    switch (c) {
      case 'T':
      case 'U':
        return read_int();
      case 'Z': {
        read_int();
        // orders like Z2/(2,p) contribute nothing to the dimension
        if (i < s.size() && s[i] == '/') {
          while (i < s.size() && s[i] != ')') ++i;
          if (i < s.size()) ++i;
        }
        return 0;
      }
      case 'S':
        read_int();
        return 0;
      case 'A':
      case 'B':
      case 'C':
      case 'D':
      case 'E':
      case 'F':
      case 'G': {
        Int n = read_int();
        if (i < s.size() && s[i] == '~') ++i;
        switch (c) {
          case 'A':
            return n * (n + 2);
          case 'B':
          case 'C':
            return n * (2 * n + 1);
          case 'D':
            return n * (2 * n - 1);
          case 'E':
            return n == 6 ? 78 : n == 7 ? 133 : 248;
          case 'F':
            return 52;
          case 'G':
            return 14;
        }
        return 0;
      }
      default:
        throw argument_error("bad factor '" + std::string(1, c) + "' in descriptor: " + s);
    }
  };
  while (i < s.size()) {
    if (s[i] == '.' || s[i] == ' ') {
      ++i;
      continue;
    }
    Int dim = factor_dim();
    Int reps = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      reps = std::stoll(s.substr(start, i - start));
    }
    out.dimension += dim * reps;
  }
  return out;
}

DenseTableStore& DenseTableStore::instance() {
  static DenseTableStore s;
  return s;
}
void DenseTableStore::add(DenseTableRow r) { rows_.push_back(std::move(r)); }

DenseCheckResult dense_orbit_check(const DenseTableRow& row) {
  DenseCheckResult res;
  res.row = row;
  const RootSystem& rs = RootSystem::get(row.group);
  const WeightTable& table = WeightTableStore::instance().get(row.group, row.lambda);
  StabilizerDescriptor stab = StabilizerDescriptor::parse(row.stabilizer);
  Int dim_g = rs.dim_group();
  res.consistent = true;
  for (Char p : row.p_class.reps()) {
    Int d = table.dim(p);
    Int dim_grass = row.k * (d - row.k);
    bool dense = (dim_g - stab.dimension) == dim_grass;
    std::string expect = row.dense;
    if (row.table == 1) expect = "no";
    bool want_dense = expect == "yes";
    if (dense != want_dense) {
      res.consistent = false;
      res.detail += "p=" + p.str() + ": dimG-dimC=" + std::to_string(dim_g - stab.dimension) +
                    " vs k(d-k)=" + std::to_string(dim_grass) + " contradicts '" + expect + "'; ";
    }
    if (row.table == 1 && dim_grass <= dim_g) {
      res.consistent = false;
      res.detail += "p=" + p.str() + ": large quadruple has dim X <= dim G; ";
    }
  }
  if (res.consistent) res.detail = "ok";
  return res;
}

std::vector<DenseCheckResult> dense_orbit_check_all() {
  load_all_data();
  std::vector<DenseCheckResult> out;
  for (const auto& row : DenseTableStore::instance().rows()) out.push_back(dense_orbit_check(row));
  return out;
}

CorollaryReport corollary_checks() {
  load_all_data();
  CorollaryReport rep;
  const auto& rows = DenseTableStore::instance().rows();

  // stabilizer dimensions are non-increasing in k for a fixed triple
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<Int, Int>>> triples;
  for (const auto& row : rows) {
    StabilizerDescriptor stab = StabilizerDescriptor::parse(row.stabilizer);
    std::string gkey = row.group.str() + ":" + weight_key(row.group, row.lambda);
    triples[{gkey, row.p_class.spec}].push_back({row.k, stab.dimension});
  }
  for (auto& [key, list] : triples) {
    std::sort(list.begin(), list.end());
    for (size_t i = 1; i < list.size(); ++i)
      if (list[i].second > list[i - 1].second)
        rep.failures.push_back("stabilizer dimension increases with k for " + key.first + " (p " +
                               key.second + ")");
  }
  rep.notes.push_back("dimension monotonicity over " + std::to_string(triples.size()) + " triples");

  // the k >= 4 exceptions are exactly: natural modules, A4 w2 k in {4,5},
  // B3 w3 k=4 (and C3 w3 p=2 k=4), D5 w5 k=4
  auto is_natural = [](const DenseTableRow& r) {
    Weight nat(r.group.rank, 0);
    nat[0] = 1;
    return r.lambda == nat &&
           (r.group.type == 'A' || r.group.type == 'B' || r.group.type == 'C' || r.group.type == 'D');
  };
  auto in_exception_list = [&](const DenseTableRow& r) {
    if (is_natural(r)) return true;
    Weight w2(r.group.rank, 0);
    if (r.group.rank >= 2) w2[1] = 1;
    if (r.group == GroupId{'A', 4} && r.lambda == w2 && (r.k == 4 || r.k == 5)) return true;
    Weight w3(r.group.rank, 0);
    if (r.group.rank >= 3) w3[2] = 1;
    if (r.group == GroupId{'B', 3} && r.lambda == w3 && r.k == 4) return true;
    if (r.group == GroupId{'C', 3} && r.lambda == w3 && r.k == 4) return true;
    Weight w5(r.group.rank, 0);
    if (r.group.rank >= 5) w5[4] = 1;
    if (r.group == GroupId{'D', 5} && r.lambda == w5 && r.k == 4) return true;
    return false;
  };
  bool saw_a4 = false, saw_b3 = false, saw_d5 = false;
  for (const auto& row : rows) {
    if (row.k >= 4 && !in_exception_list(row))
      rep.failures.push_back("row " + row.group.str() + " k=" + std::to_string(row.k) +
                             " is a non-TGS quadruple outside the k>=4 exception list");
    if (row.k >= 4) {
      if (row.group == GroupId{'A', 4}) saw_a4 = true;
      if (row.group == GroupId{'B', 3} || row.group == GroupId{'C', 3}) saw_b3 = true;
      if (row.group == GroupId{'D', 5}) saw_d5 = true;
    }
  }
  if (!(saw_a4 && saw_b3 && saw_d5))
    rep.failures.push_back("expected k>=4 exceptions missing from the embedded tables");
  rep.notes.push_back("k>=4 exception list verified");
  return rep;
}

}  // namespace stabgate
