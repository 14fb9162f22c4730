#include "mell/formula.hpp"

#include <cassert>
#include <stdexcept>

namespace mell {

static FormulaPtr mk(FTag tag, std::string name, FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->tag = tag;
  f->name = std::move(name);
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

FormulaPtr Formula::atom(std::string n) { return mk(FTag::Atom, std::move(n), nullptr, nullptr); }
FormulaPtr Formula::neg_atom(std::string n) { return mk(FTag::NegAtom, std::move(n), nullptr, nullptr); }
FormulaPtr Formula::tensor(FormulaPtr a, FormulaPtr b) { return mk(FTag::Tensor, "", std::move(a), std::move(b)); }
FormulaPtr Formula::par(FormulaPtr a, FormulaPtr b) { return mk(FTag::Par, "", std::move(a), std::move(b)); }
FormulaPtr Formula::one() { return mk(FTag::One, "", nullptr, nullptr); }
FormulaPtr Formula::bottom() { return mk(FTag::Bottom, "", nullptr, nullptr); }
FormulaPtr Formula::of_course(FormulaPtr a) { return mk(FTag::OfCourse, "", std::move(a), nullptr); }
FormulaPtr Formula::why_not(FormulaPtr a) { return mk(FTag::WhyNot, "", std::move(a), nullptr); }
FormulaPtr Formula::lin_imp(FormulaPtr a, FormulaPtr b) { return mk(FTag::LinImp, "", std::move(a), std::move(b)); }

FormulaPtr Formula::meta(int id, bool neg) {
  auto f = std::make_shared<Formula>();
  f->tag = FTag::Meta;
  f->meta_id = id;
  f->meta_neg = neg;
  return f;
}

int formula_cmp(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->tag != b->tag) return a->tag < b->tag ? -1 : 1;
  switch (a->tag) {
    case FTag::Atom:
    case FTag::NegAtom:
      return a->name.compare(b->name);
    case FTag::One:
    case FTag::Bottom:
      return 0;
    case FTag::OfCourse:
    case FTag::WhyNot:
      return formula_cmp(a->left, b->left);
    case FTag::Tensor:
    case FTag::Par:
    case FTag::LinImp: {
      int c = formula_cmp(a->left, b->left);
      return c != 0 ? c : formula_cmp(a->right, b->right);
    }
    case FTag::Meta: {
      if (a->meta_id != b->meta_id) return a->meta_id < b->meta_id ? -1 : 1;
      if (a->meta_neg != b->meta_neg) return a->meta_neg ? 1 : -1;
      return 0;
    }
  }
  return 0;
}

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) { return formula_cmp(a, b) == 0; }

FormulaPtr negate(const FormulaPtr& f, Mode mode) {
  switch (f->tag) {
    case FTag::Atom: return Formula::neg_atom(f->name);
    case FTag::NegAtom: return Formula::atom(f->name);
    case FTag::One: return Formula::bottom();
    case FTag::Bottom: return Formula::one();
    case FTag::OfCourse: return Formula::why_not(negate(f->left, mode));
    case FTag::WhyNot: return Formula::of_course(negate(f->left, mode));
    case FTag::Tensor:
      if (mode == Mode::MLL) return Formula::lin_imp(f->left, negate(f->right, mode));
      return Formula::par(negate(f->left, mode), negate(f->right, mode));
    case FTag::Par: return Formula::tensor(negate(f->left, mode), negate(f->right, mode));
    case FTag::LinImp:
      if (mode != Mode::MLL) throw std::logic_error("negate: -o is not a MELL connective");
      return Formula::tensor(f->left, negate(f->right, mode));
    case FTag::Meta: return Formula::meta(f->meta_id, !f->meta_neg);
  }
  throw std::logic_error("negate: bad tag");
}

int formula_depth(const FormulaPtr& f) {
  switch (f->tag) {
    case FTag::Atom:
    case FTag::NegAtom:
    case FTag::One:
    case FTag::Bottom:
    case FTag::Meta:
      return 0;
    case FTag::OfCourse:
    case FTag::WhyNot:
      return 1 + formula_depth(f->left);
    default:
      return 1 + std::max(formula_depth(f->left), formula_depth(f->right));
  }
}

bool formula_in_mode(const FormulaPtr& f, Mode mode) {
  switch (f->tag) {
    case FTag::Atom:
    case FTag::NegAtom:
      return true;
    case FTag::Tensor:
      return formula_in_mode(f->left, mode) && formula_in_mode(f->right, mode);
    case FTag::LinImp:
      return mode == Mode::MLL && formula_in_mode(f->left, mode) && formula_in_mode(f->right, mode);
    case FTag::Par:
      return mode == Mode::MELL && formula_in_mode(f->left, mode) && formula_in_mode(f->right, mode);
    case FTag::One:
    case FTag::Bottom:
      return mode == Mode::MELL;
    case FTag::OfCourse:
    case FTag::WhyNot:
      return mode == Mode::MELL && formula_in_mode(f->left, mode);
    case FTag::Meta:
      return false;
  }
  return false;
}

bool contains_meta(const FormulaPtr& f) {
  if (!f) return false;
  if (f->tag == FTag::Meta) return true;
  return contains_meta(f->left) || contains_meta(f->right);
}

bool is_why_not(const FormulaPtr& f) { return f->tag == FTag::WhyNot; }

} // namespace mell
