#pragma once

#include <utility>
#include <vector>

#include "mell/term.hpp"
#include "mell/typing.hpp"

namespace mell {

// The substitution-free axiom base for structural equivalence.
enum class EquivAxiom {
  Prop,          // F<t>[p := r]  ==  F<t[p := r]>
  BetaOne,       // t[* := *]     ==  t
  SymmOne,       // t[* := s]     ==  s[* := t]          (t : 1)
  LUnitBot,      // * # t         ==  t                  (t : bot)
  EPar2IPar,     // (s ~@ t) # r  ==  t # (s @ r)
  ITensorEPar2,  // (r, t) # s    ==  r # (s ~@ t)
  IParETensor,   // (par a b. s) # t  ==  s[(a,b) := t]
  IWnEBang,      // (wn $u. s) # t    ==  s[!$u := t]
  IBangEWn,      // (bang a. t) # s   ==  wncase s with a. t
  IBotEOne,      // t[* := s] # r     ==  s # (r # t)
};

std::string to_string(EquivAxiom ax);

struct EquivStep {
  Path pos;
  EquivAxiom axiom;
  bool forward;
};

std::string to_string(const EquivStep& st);

enum class EquivVerdict { Equivalent, NotEquivalent, Unknown };

struct EquivResult {
  EquivVerdict verdict;
  std::vector<EquivStep> path; // only for Equivalent
  int nodes_explored = 0;
};

// All terms one axiom application away (either orientation, any position).
// The caller guarantees t type-checks under env. `include_expansions`
// gates the two size-increasing orientations (reverse beta-one / lunit).
std::vector<std::pair<TermPtr, EquivStep>> equiv_neighbors(const Env& env, const TermPtr& t,
                                                           bool include_expansions = true);

// Fueled bidirectional search over equiv_neighbors. Both terms must check at
// the same type under env (TypeMismatch otherwise); differing free-variable
// sets decide NotEquivalent outright since equivalence preserves them.
EquivResult equiv_check(const Env& env, const TermPtr& t, const TermPtr& s, int fuel_nodes,
                        Mode mode = Mode::MELL);

// Orients the two strictly size-decreasing axioms (beta-one, lunit) to
// fixpoint; the result is equivalent to the input.
TermPtr simplify(const TermPtr& t);

// --- deep contexts ---------------------------------------------------------

// One-hole context represented as a term skeleton with a reserved linear
// variable standing for the hole.
struct DeepCtx {
  TermPtr skeleton;
  std::string hole = "_";
};

// True when the hole occurs exactly once and only in deep-context positions
// (never under a bang binder or in a wncase body).
bool is_deep_ctx(const DeepCtx& d);

// Plugs the hole; free variables of t may be captured by design.
TermPtr plug_deep(const DeepCtx& d, const TermPtr& t);

// The dual context: contra-substitution of the hole by itself.
DeepCtx dual_deep_ctx(const DeepCtx& d);

// Returns the pair (D<a>((a := t)), ~D<t>); the two components are expected
// to be structurally equivalent. Throws SubstError("freeness violation")
// when t is not free for D.
std::pair<TermPtr, TermPtr> cos_via_context(const DeepCtx& d, const TermPtr& t);

} // namespace mell
