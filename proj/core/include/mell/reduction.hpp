#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mell/equivalence.hpp"
#include "mell/term.hpp"
#include "mell/typing.hpp"

namespace mell {

enum class RedexAxiom {
  BetaParL,   // (par a b. t)L @ r
  BetaParR,   // (par a b. t)L ~@ r
  BetaTensor, // t[(a,b) := (s,r)L]
  BetaBang,   // t[!$u := (bang a. s)L]
  BetaWn,     // wncase (wn $u. s)L with a. t
  ParTensor,  // (par a b. t)L # (s,r)K
  TensorPar,  // (s,r)L # (par a b. t)K
  BangWn,     // (bang a. t)L # (wn $u. r)K
  WnBang,     // (wn $u. r)L # (bang a. t)K
  BetaLamL,   // (\a. t)L @ s        (MLL)
  BetaLamR,   // (\a. t)L ~@ s       (MLL)
};

std::string to_string(RedexAxiom ax);

struct Redex {
  Path pos;
  RedexAxiom axiom;
};

// All positions matching a reduction axiom left-hand side, in leftmost-
// outermost (pre-order) order. The term must be linear.
std::vector<Redex> find_pre_redexes(const TermPtr& t, Mode mode);

// Fires the redex; throws SubstError("stale redex...") when the pattern no
// longer matches at the recorded position. Side conditions are restored by
// renaming bound variables.
TermPtr pre_step(const TermPtr& t, const Redex& r, Mode mode);

struct ReduceFuel {
  int steps = 100000;
  int class_nodes = 10000;
  int equiv_nodes = 10000;
};

// One entry of a reduction trace: optional equivalence bridge followed by a
// pre-reduction step.
struct TraceStep {
  std::vector<EquivStep> bridge; // applied before the redex fires
  Redex redex;
  TermPtr before; // class member the redex fired on
  TermPtr after;  // raw contractum
};

struct Successor {
  TermPtr rep; // simplify-canonical representative
  TraceStep trace;
};

struct StepResult {
  std::vector<Successor> successors;
  bool fuel_exhausted = false;
};

// Reduction modulo structural equivalence: explores the equivalence class of
// t (size-bounded moves only, fueled), fires pre-redexes on the members and
// returns deduplicated successor representatives with bridging traces.
StepResult step_modulo(const Env& env, const TermPtr& t, Mode mode, const ReduceFuel& fuel);

enum class Strategy { LeftmostOutermost, FullSearch };

struct NormalizeResult {
  TermPtr normal_form;
  std::vector<TraceStep> trace;
  int steps = 0;
  bool fuel_exhausted = false;
};

// Reduces to normal form. The default strategy fires the leftmost-outermost
// redex and keeps simplify-canonical representatives between steps.
NormalizeResult normalize(const Env& env, const TermPtr& t, Mode mode, Strategy strategy,
                          const ReduceFuel& fuel);

// All normal forms reachable by exhaustive search over reduction modulo
// equivalence (simplify-canonical node keys).
struct FullSearchResult {
  std::vector<TermPtr> normal_forms;
  int nodes = 0;
  bool fuel_exhausted = false;
};
FullSearchResult normal_forms(const Env& env, const TermPtr& t, Mode mode, const ReduceFuel& fuel);

// Length of the longest reduction sequence from t (finite by strong
// normalization), computed over the memoized reduction DAG. `use_memo`
// disabled gives the independent oracle.
int tml(const Env& env, const TermPtr& t, Mode mode, const ReduceFuel& fuel, bool use_memo = true);

struct JoinReport {
  bool joined = true;     // vacuously true for deterministic terms
  bool unknown = false;
  int pairs = 0;
  std::string detail;
};

// Weak Church-Rosser probe: every pair of one-step reducts is checked for a
// common reduct modulo equivalence (via normal forms, which exist by SN).
JoinReport wcr_join(const Env& env, const TermPtr& t, Mode mode, const ReduceFuel& fuel);

struct BisimReport {
  bool ok = true;
  bool unknown = false;
  std::string detail;
};

// Strong-bisimulation probe for an established pair t == s: every pre-step
// on either side must be matched by a pre-step on the other with equivalent
// results.
BisimReport bisim_check(const Env& env, const TermPtr& t, const TermPtr& s, Mode mode,
                        const ReduceFuel& fuel);

} // namespace mell
