#pragma once

#include <memory>
#include <string>
#include <vector>

namespace mell {

// Which calculus a formula or term belongs to. MLL restricts formulas to
// atoms, tensor and linear implication; MELL adds the units and exponentials
// and treats A -o B as sugar for ~A par B.
enum class Mode { MLL, MELL };

enum class FTag {
  Atom,      // positive atom
  NegAtom,   // negated atom (negation is only ever stored on atoms)
  Tensor,    // A * B
  Par,       // A par B          (MELL)
  One,       // 1                (MELL)
  Bottom,    // bot              (MELL)
  OfCourse,  // !A               (MELL)
  WhyNot,    // ?A               (MELL)
  LinImp,    // A -o B           (MLL primitive)
  Meta,      // checker-internal unification variable; never parsed or stored
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FTag tag;
  std::string name;      // Atom/NegAtom
  FormulaPtr left, right;
  int meta_id = -1;      // Meta
  bool meta_neg = false; // Meta stands for the negation of its binding

  static FormulaPtr atom(std::string n);
  static FormulaPtr neg_atom(std::string n);
  static FormulaPtr tensor(FormulaPtr a, FormulaPtr b);
  static FormulaPtr par(FormulaPtr a, FormulaPtr b);
  static FormulaPtr one();
  static FormulaPtr bottom();
  static FormulaPtr of_course(FormulaPtr a);
  static FormulaPtr why_not(FormulaPtr a);
  static FormulaPtr lin_imp(FormulaPtr a, FormulaPtr b);
  static FormulaPtr meta(int id, bool neg);
};

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);
// Total order for multiset normalization; consistent with formula_eq.
int formula_cmp(const FormulaPtr& a, const FormulaPtr& b);

// Structural dual. In MELL ~(A * B) = ~A par ~B; in MLL ~(A * B) = A -o ~B
// and ~(A -o B) = A * ~B. Involutive in both modes.
FormulaPtr negate(const FormulaPtr& f, Mode mode);

int formula_depth(const FormulaPtr& f);
bool formula_in_mode(const FormulaPtr& f, Mode mode);
bool contains_meta(const FormulaPtr& f);
bool is_why_not(const FormulaPtr& f);

} // namespace mell
