#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stabgate/basics.hpp"
#include "stabgate/classes.hpp"
#include "stabgate/psinets.hpp"
#include "stabgate/rootsys.hpp"
#include "stabgate/tuples.hpp"
#include "stabgate/weights.hpp"

namespace stabgate {

// A characteristic class like "any", "=2", ">=3", "!=3", "<inf"; expands to
// the representative set {2,3,5,7,inf} filtered by the constraint.
struct PClass {
  std::string spec = "any";
  static PClass parse(const std::string& s) { return PClass{s}; }
  bool admits(Char p) const;
  std::vector<Char> reps() const;
};

// A prime-order class like "r>=2", "r=3"; representatives from {2,3,5,7}.
struct RRange {
  Int lo = 2;
  Int exact = 0;  // nonzero: only this value
  static RRange parse(const std::string& s);
  bool admits(Int r) const;
  std::vector<Int> reps() const;
  std::string str() const;
};

struct Quadruple {
  GroupId group;
  Weight lambda;
  PClass p_class;
  Int k = 0;

  std::string key() const;
  static Quadruple parse(const std::string& shorthand);  // TYPE+RANK:wI[+wJ..]:P:K
};

// ---- escalation scripts --------------------------------------------------

struct ScriptNetRow {
  std::string nu;                        // display label
  std::map<int, Int> n;                  // per-orbit weight counts
  Int m = 0;                             // number of nets of this shape
  std::map<std::string, ZExpr> cs;       // r-range -> printed per-row c(s)
  std::map<std::string, ZExpr> cu;       // p-range -> printed per-row c(u)
};

struct ScriptBranch {
  std::vector<int> gens;  // simple-root positions
  std::string label;
  std::vector<ScriptNetRow> rows;
  std::map<std::string, ZExpr> cs_total;
  std::map<std::string, ZExpr> cu_total;
};

struct ScriptTarget {
  std::string kind;   // "M", "M2", "M3", "M5", "class", "value", "none"
  std::string label;  // class label for kind == "class"
  ZExpr value;
  std::string rel = ">";  // ">" or "="
};

struct ScriptKappaValue {
  std::vector<Int> kappa;
  ZExpr B;
};

struct ScriptCheck {
  int branch = 0;
  std::string side;    // "ss", "u", "both"
  std::string r_range; // e.g. "r>=3"; empty for side "u"
  std::string p_range; // e.g. "p>=3"; empty means the stage's p assumption
  ZExpr c;
  std::vector<ZExpr> d0;
  ZExpr B;
  std::vector<ScriptKappaValue> blist;
  std::vector<ScriptTarget> targets;
};

struct ScriptSideCondition {
  std::string label;          // next-stage subsystem label
  std::string justification;  // "m_psi" | "rank1" | "inspection" | "computed"
  ZExpr m_psi_value;          // for justification == "m_psi"
};

struct ScriptStage {
  std::vector<ScriptBranch> branches;
  std::vector<ScriptCheck> checks;
  Int r_min_after = 2;
  Int p_min_after = 2;
  std::optional<ZExpr> phi_bound;  // |Phi(s)| bound concluded by the stage
  int phi_from_check = -1;
  std::vector<ScriptSideCondition> next_psi;     // disjointness facts
  std::vector<ScriptSideCondition> closures;     // closure facts
};

struct EscalationScript {
  Quadruple quad;
  Int M = 0;
  std::map<Int, Int> Mr;  // r -> M_r as printed
  std::vector<ScriptStage> stages;
  std::string alias_of;  // non-empty: certified by reference to another script
  std::string note;
};

// ---- reports ---------------------------------------------------------------

enum class Verdict { certified, certified_with_trusted, failed, needs_trusted_facts };

struct StageRecord {
  std::string psi_label;
  std::string applied_at;  // "(r,p)" summary
  Int c_ss = -1, c_u = -1;
  std::vector<Int> d0;
  Int B = 0;
  std::string target;
  Int margin = 0;
  std::string provenance;  // computed | embedded | trusted
};

struct VerificationReport {
  Quadruple quad;
  std::vector<StageRecord> stages;
  std::vector<std::string> mismatches;
  std::vector<std::string> missing_facts;  // embedded data gaps, not mismatches
  Int trusted_facts = 0;
  Int computed_facts = 0;
  Int embedded_facts = 0;
  Verdict verdict = Verdict::needs_trusted_facts;

  std::string to_json() const;
  bool ok() const { return verdict == Verdict::certified || verdict == Verdict::certified_with_trusted; }
};

struct EngineOptions {
  bool deep = false;          // enumerate conjugates instead of trusting inspection facts
  Int conjugate_cap = 1000000;
  // re-run a certified script at a larger Grassmannian parameter: bounds are
  // recomputed at this k and the k-pinned regression values are skipped
  Int k_override = 0;
};

class ScriptStore {
 public:
  static ScriptStore& instance();
  void add(EscalationScript s);
  const EscalationScript& get(const std::string& key) const;
  std::vector<std::string> keys() const;

 private:
  std::map<std::string, EscalationScript> scripts_;
};

VerificationReport run_script(const EscalationScript& script, const EngineOptions& opts = {});

// ---- codimension on the Grassmannian --------------------------------------

// semisimple: d = eigenspace dimensions; unipotent: pass Jordan blocks and the
// partial sums d_i = b_i + ... + b_t are formed here
Int codim_fixed_grassmann_eigendims(std::vector<Int> dims, Int k);
Int codim_fixed_grassmann_blocks(const Partition& blocks, Int k);

// ---- family sweeps ---------------------------------------------------------

struct FamilyInstanceCheck {
  std::string description;
  bool ok = false;
  Int lhs = 0, rhs = 0;  // bound vs class dimension
};

struct FamilyReport {
  std::string family_id;
  Quadruple quad;
  std::vector<FamilyInstanceCheck> checks;
  bool certified = true;
  std::vector<std::string> notes;
};

std::vector<std::string> family_ids();
std::vector<FamilyReport> family_sweep(const std::string& family_id, int rank_lo, int rank_hi,
                                       bool spot_check_k_plus_one = true);

// ---- dense-orbit tables ------------------------------------------------------

struct StabilizerDescriptor {
  std::string text;
  Int dimension = 0;
  bool semi_generic = false;  // carries the (*) marker
  static StabilizerDescriptor parse(const std::string& s);
};

struct DenseTableRow {
  int table = 0;  // 1, 2 or 3
  GroupId group;
  Weight lambda;
  PClass p_class;
  Int k = 0;
  std::string stabilizer;
  std::string dense;  // "yes", "no", or "" for table 1
};

struct DenseCheckResult {
  DenseTableRow row;
  bool consistent = false;
  std::string detail;
};

class DenseTableStore {
 public:
  static DenseTableStore& instance();
  void add(DenseTableRow r);
  const std::vector<DenseTableRow>& rows() const { return rows_; }

 private:
  std::vector<DenseTableRow> rows_;
};

DenseCheckResult dense_orbit_check(const DenseTableRow& row);
std::vector<DenseCheckResult> dense_orbit_check_all();

struct CorollaryReport {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  bool ok() const { return failures.empty(); }
};
CorollaryReport corollary_checks();

// ---- data loading ------------------------------------------------------------

// Loads every dataset (weight tables, class dims, closure facts, scripts,
// dense tables) from the given directory, or from the embedded copies when the
// directory is empty/absent.  Idempotent.
void load_all_data(const std::string& override_dir = "");
const std::map<std::string, std::string>& embedded_data_files();

}  // namespace stabgate
