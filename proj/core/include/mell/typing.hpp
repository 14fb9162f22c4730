#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mell/errors.hpp"
#include "mell/formula.hpp"
#include "mell/term.hpp"

namespace mell {

// Typing environment: unrestricted (Delta) and linear (Gamma) assumptions.
// The two domains are disjoint namespaces by construction.
struct Env {
  std::map<std::string, FormulaPtr> unrestricted;
  std::map<std::string, FormulaPtr> linear;
};

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

// One node of a typing derivation; mirrors the syntax-directed rules.
struct Derivation {
  std::string rule;
  Mode mode;
  std::map<std::string, FormulaPtr> delta;
  std::map<std::string, FormulaPtr> gamma;
  TermPtr subject;
  FormulaPtr type;
  std::vector<DerivPtr> children;
};

struct Checked {
  FormulaPtr type;
  // Linear assumptions actually consumed; equals env.linear for `check`.
  std::map<std::string, FormulaPtr> used_linear;
  DerivPtr derivation;
};

// Checking entry point. The linear environment must list exactly the free
// linear variables of t; the unrestricted environment may contain unused
// entries. Binder types are inferred by unification; a binder whose type is
// not forced by its uses defaults to a fresh atom named after the binder.
Checked check(const Env& env, const TermPtr& t, Mode mode);

// As `check`, but the linear environment may contain extra entries; the ones
// actually consumed are returned.
Checked infer(const Env& env, const TermPtr& t, Mode mode);

// Type of every subterm, keyed by path. Computed from one checking pass.
std::map<Path, FormulaPtr> subterm_types(const Env& env, const TermPtr& t, Mode mode);

// Admissible structural operations. Each returns a derivation of the stated
// judgement, obtained by re-checking the witness term.

// Delta, u:B extension of d's judgement (same subject term).
DerivPtr weaken(const DerivPtr& d, const std::string& u, const FormulaPtr& B);

// Merge two unrestricted assumptions of equal type: v is renamed to u.
struct ContractResult {
  TermPtr term;
  DerivPtr derivation;
};
ContractResult contract(const DerivPtr& d, const std::string& u, const std::string& v);

// Trade an unrestricted assumption u:A for a linear one a:!A; witness term
// t[!$u := a].
ContractResult to_bang_linear(const DerivPtr& d, const std::string& u, const std::string& a);

// Inverse direction: trade a:!A for u:A; witness t{a := bang b.($u # b)}.
ContractResult from_bang_linear(const DerivPtr& d, const std::string& a, const std::string& u);

// Admissible substitution: from d1 : (Delta; Gamma, a:A |- t : B) and
// d2 : (Delta; Gamma' |- s : A), a derivation of Delta; Gamma, Gamma' |-
// t{a:=s} : B. Throws ContextOverlap when the linear contexts meet.
ContractResult admissible_sub(const DerivPtr& d1, const std::string& a, const DerivPtr& d2);

std::string judgement_string(const DerivPtr& d);

} // namespace mell
