#pragma once

#include "mell/term.hpp"
#include "mell/typing.hpp"

namespace mell {

// Capture-avoiding substitution of a linear variable. Replaces every free
// occurrence (at most one in a linear term); binders of t clashing with
// fv(s) are freshened.
TermPtr subst_linear(const TermPtr& t, const std::string& a, const TermPtr& s);

// Capture-avoiding substitution of an unrestricted variable; zero or more
// occurrences are replaced.
TermPtr subst_unrestricted(const TermPtr& t, const std::string& u, const TermPtr& s);

// Contra-substitution t((a := s)): turns the linear term t inside out at the
// unique free occurrence of a and plugs s. Requires t linear with a free;
// throws SubstError (NotLinear / VariableNotFree / ImpossibleCase) otherwise.
TermPtr contra_subst(const TermPtr& t, const std::string& a, const TermPtr& s, Mode mode);

inline TermPtr contra_subst_mll(const TermPtr& t, const std::string& a, const TermPtr& s) {
  return contra_subst(t, a, s, Mode::MLL);
}
inline TermPtr contra_subst_mell(const TermPtr& t, const std::string& a, const TermPtr& s) {
  return contra_subst(t, a, s, Mode::MELL);
}

// Typed compatibility: from dt : (Delta; Gamma, a:A |- t : B) and
// ds : (Delta; Gamma' |- s : ~B), a derivation of Delta; Gamma, Gamma' |-
// t((a:=s)) : ~A obtained by re-checking.
DerivPtr check_contra_typing(const DerivPtr& dt, const std::string& a, const DerivPtr& ds);

// Renames binders of t so that no bound name lies in `avoid`; the result is
// alpha-equal to t.
TermPtr freshen_binders(const TermPtr& t, const std::set<std::string>& avoid);

// Renames binders so that all bound names are pairwise distinct and disjoint
// from the free names of t.
TermPtr barendregt(const TermPtr& t);

} // namespace mell
