#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mell/formula.hpp"

namespace mell {

enum class TTag {
  LinVar,     // a
  UnrVar,     // $u
  Pair,       // (t, s)
  TensorElim, // t[(a,b) := s]     binds a,b in t
  ParIntro,   // par a b. t        binds a,b in t
  App,        // t @ s
  ContraApp,  // t ~@ s
  OfcIntro,   // bang a. t         binds a in t
  OfcElim,    // t[!$u := s]       binds $u in t
  WhyIntro,   // wn $u. t          binds $u in t
  WhyElim,    // wncase s with a. t   binds a in t; s is the scrutinee
  Contra,     // t # s
  Star,       // *
  OneElim,    // t[* := s]
  Lambda,     // \a. t             MLL only
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable term node. `x`/`y` hold variable or binder names, `a`/`b` the
// subterms. Child index 0 is `a`, child index 1 is `b`.
struct Term {
  TTag tag;
  std::string x, y;
  TermPtr a, b;

  static TermPtr lin_var(std::string n);
  static TermPtr unr_var(std::string n);
  static TermPtr pair(TermPtr t, TermPtr s);
  static TermPtr tensor_elim(TermPtr body, std::string va, std::string vb, TermPtr scrut);
  static TermPtr par_intro(std::string va, std::string vb, TermPtr body);
  static TermPtr app(TermPtr t, TermPtr s);
  static TermPtr contra_app(TermPtr t, TermPtr s);
  static TermPtr ofc_intro(std::string va, TermPtr body);
  static TermPtr ofc_elim(TermPtr body, std::string vu, TermPtr scrut);
  static TermPtr why_intro(std::string vu, TermPtr body);
  static TermPtr why_elim(TermPtr body, std::string va, TermPtr scrut);
  static TermPtr contra(TermPtr t, TermPtr s);
  static TermPtr star();
  static TermPtr one_elim(TermPtr body, TermPtr scrut);
  static TermPtr lambda(std::string va, TermPtr body);
};

// Path into a term: sequence of child indices (0 = `a`, 1 = `b`).
using Path = std::vector<int>;

std::string path_to_string(const Path& p);

int term_size(const TermPtr& t); // constructor count; variables and * are 0
bool term_eq(const TermPtr& a, const TermPtr& b); // strict structural equality
bool term_in_mode(const TermPtr& t, Mode mode);

struct FreeVars {
  std::set<std::string> linear;
  std::set<std::string> unrestricted;
};
FreeVars free_vars(const TermPtr& t);
std::set<std::string> free_linear(const TermPtr& t);
// All names appearing anywhere (free or bound, either namespace); used by
// fresh-name generation.
void all_names(const TermPtr& t, std::set<std::string>& out);

// Paper linearity: free/bound linear variables occur exactly once, bodies of
// `bang` binders and `wncase` bodies close over exactly their binder. MLL
// mode checks only the occurrence conditions.
bool is_linear(const TermPtr& t, Mode mode);

// Canonical renaming of bound variables (leftmost-binder numbering); alpha_eq
// compares the canonical forms structurally.
TermPtr alpha_canon(const TermPtr& t);
bool alpha_eq(const TermPtr& t, const TermPtr& s);

TermPtr subterm_at(const TermPtr& t, const Path& p);
TermPtr replace_at(const TermPtr& t, const Path& p, const TermPtr& repl);

// Deterministic fresh-name supply: smallest `base` or `baseN` not in avoid.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// --- positive eliminator contexts -----------------------------------------

enum class ElimKind { Tensor, Ofc, One };

// One positive eliminator suffix: [(a,b) := s], [!$u := s] or [* := s].
struct Eliminator {
  ElimKind kind;
  std::string x, y; // binders (Tensor: x,y; Ofc: x)
  TermPtr scrut;
};

// A positive eliminator context L as a sequence; the first element is the
// innermost suffix. plug(t, L) applies each in order and may capture free
// variables of t by design.
using ElimSpine = std::vector<Eliminator>;

TermPtr plug(const TermPtr& t, const ElimSpine& L);
// Decompose t into head and maximal eliminator spine: t = plug(head, L).
// MLL mode collects tensor eliminations only (case contexts).
void strip_spine(const TermPtr& t, Mode mode, TermPtr& head, ElimSpine& L);

} // namespace mell
