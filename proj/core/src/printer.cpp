#include "mell/printer.hpp"

#include <stdexcept>

namespace mell {

namespace {

// Formula precedence: unary (4) > * (3) > par (2) > -o (1, right assoc).
int fprec(const FormulaPtr& f) {
  switch (f->tag) {
    case FTag::Tensor: return 3;
    case FTag::Par: return 2;
    case FTag::LinImp: return 1;
    default: return 4;
  }
}

void fprint(const FormulaPtr& f, int min, std::string& out) {
  int p = fprec(f);
  bool paren = p < min;
  if (paren) out += '(';
  switch (f->tag) {
    case FTag::Atom: out += f->name; break;
    case FTag::NegAtom: out += '~'; out += f->name; break;
    case FTag::One: out += '1'; break;
    case FTag::Bottom: out += "bot"; break;
    case FTag::OfCourse: out += '!'; fprint(f->left, 4, out); break;
    case FTag::WhyNot: out += '?'; fprint(f->left, 4, out); break;
    case FTag::Tensor:
      fprint(f->left, 3, out);
      out += " * ";
      fprint(f->right, 4, out);
      break;
    case FTag::Par:
      fprint(f->left, 2, out);
      out += " par ";
      fprint(f->right, 3, out);
      break;
    case FTag::LinImp:
      fprint(f->left, 2, out);
      out += " -o ";
      fprint(f->right, 1, out);
      break;
    case FTag::Meta:
      out += (f->meta_neg ? "~?m" : "?m") + std::to_string(f->meta_id);
      break;
  }
  if (paren) out += ')';
}

// Term precedence levels:
//   3: atoms, pairs, bracket postfix eliminators
//   2: @ and ~@ (left assoc)
//   1: # (left assoc)
//   0: binders (par/bang/wn/wncase/\), body extends maximally right
int tprec(const TermPtr& t) {
  switch (t->tag) {
    case TTag::App:
    case TTag::ContraApp:
      return 2;
    case TTag::Contra:
      return 1;
    case TTag::ParIntro:
    case TTag::OfcIntro:
    case TTag::WhyIntro:
    case TTag::WhyElim:
    case TTag::Lambda:
      return 0;
    default:
      return 3;
  }
}

void tprint(const TermPtr& t, int min, std::string& out) {
  int p = tprec(t);
  bool paren = p < min;
  if (paren) out += '(';
  switch (t->tag) {
    case TTag::LinVar: out += t->x; break;
    case TTag::UnrVar: out += '$'; out += t->x; break;
    case TTag::Star: out += '*'; break;
    case TTag::Pair:
      out += '(';
      tprint(t->a, 0, out);
      out += ", ";
      tprint(t->b, 0, out);
      out += ')';
      break;
    case TTag::TensorElim:
      tprint(t->a, 3, out);
      out += "[(" + t->x + "," + t->y + ") := ";
      tprint(t->b, 0, out);
      out += ']';
      break;
    case TTag::OfcElim:
      tprint(t->a, 3, out);
      out += "[!$" + t->x + " := ";
      tprint(t->b, 0, out);
      out += ']';
      break;
    case TTag::OneElim:
      tprint(t->a, 3, out);
      out += "[* := ";
      tprint(t->b, 0, out);
      out += ']';
      break;
    case TTag::App:
      tprint(t->a, 2, out);
      out += " @ ";
      tprint(t->b, 3, out);
      break;
    case TTag::ContraApp:
      tprint(t->a, 2, out);
      out += " ~@ ";
      tprint(t->b, 3, out);
      break;
    case TTag::Contra:
      tprint(t->a, 1, out);
      out += " # ";
      tprint(t->b, 2, out);
      break;
    case TTag::ParIntro:
      out += "par " + t->x + " " + t->y + ". ";
      tprint(t->a, 0, out);
      break;
    case TTag::OfcIntro:
      out += "bang " + t->x + ". ";
      tprint(t->a, 0, out);
      break;
    case TTag::WhyIntro:
      out += "wn $" + t->x + ". ";
      tprint(t->a, 0, out);
      break;
    case TTag::WhyElim:
      out += "wncase ";
      tprint(t->b, 1, out);
      out += " with " + t->x + ". ";
      tprint(t->a, 0, out);
      break;
    case TTag::Lambda:
      out += "\\" + t->x + ". ";
      tprint(t->a, 0, out);
      break;
  }
  if (paren) out += ')';
}

} // namespace

std::string to_string(const FormulaPtr& f) {
  std::string out;
  fprint(f, 0, out);
  return out;
}

std::string to_string(const TermPtr& t) {
  std::string out;
  tprint(t, 0, out);
  return out;
}

nlohmann::json to_json(const FormulaPtr& f) {
  using nlohmann::json;
  switch (f->tag) {
    case FTag::Atom: return json{{"tag", "atom"}, {"name", f->name}};
    case FTag::NegAtom: return json{{"tag", "neg_atom"}, {"name", f->name}};
    case FTag::One: return json{{"tag", "one"}};
    case FTag::Bottom: return json{{"tag", "bottom"}};
    case FTag::OfCourse: return json{{"tag", "of_course"}, {"arg", to_json(f->left)}};
    case FTag::WhyNot: return json{{"tag", "why_not"}, {"arg", to_json(f->left)}};
    case FTag::Tensor: return json{{"tag", "tensor"}, {"left", to_json(f->left)}, {"right", to_json(f->right)}};
    case FTag::Par: return json{{"tag", "par"}, {"left", to_json(f->left)}, {"right", to_json(f->right)}};
    case FTag::LinImp: return json{{"tag", "lin_imp"}, {"left", to_json(f->left)}, {"right", to_json(f->right)}};
    case FTag::Meta: throw std::logic_error("to_json: unresolved meta");
  }
  throw std::logic_error("to_json: bad formula");
}

nlohmann::json to_json(const TermPtr& t) {
  using nlohmann::json;
  switch (t->tag) {
    case TTag::LinVar: return json{{"tag", "lin_var"}, {"name", t->x}};
    case TTag::UnrVar: return json{{"tag", "unr_var"}, {"name", t->x}};
    case TTag::Star: return json{{"tag", "star"}};
    case TTag::Pair: return json{{"tag", "pair"}, {"first", to_json(t->a)}, {"second", to_json(t->b)}};
    case TTag::TensorElim:
      return json{{"tag", "tensor_elim"}, {"body", to_json(t->a)}, {"bind1", t->x}, {"bind2", t->y}, {"scrutinee", to_json(t->b)}};
    case TTag::ParIntro:
      return json{{"tag", "par"}, {"bind1", t->x}, {"bind2", t->y}, {"body", to_json(t->a)}};
    case TTag::App: return json{{"tag", "app"}, {"fun", to_json(t->a)}, {"arg", to_json(t->b)}};
    case TTag::ContraApp: return json{{"tag", "contra_app"}, {"fun", to_json(t->a)}, {"arg", to_json(t->b)}};
    case TTag::OfcIntro: return json{{"tag", "bang"}, {"bind", t->x}, {"body", to_json(t->a)}};
    case TTag::OfcElim:
      return json{{"tag", "ofc_elim"}, {"body", to_json(t->a)}, {"bind", t->x}, {"scrutinee", to_json(t->b)}};
    case TTag::WhyIntro: return json{{"tag", "wn"}, {"bind", t->x}, {"body", to_json(t->a)}};
    case TTag::WhyElim:
      return json{{"tag", "wn_case"}, {"scrutinee", to_json(t->b)}, {"bind", t->x}, {"body", to_json(t->a)}};
    case TTag::Contra: return json{{"tag", "contradiction"}, {"left", to_json(t->a)}, {"right", to_json(t->b)}};
    case TTag::OneElim: return json{{"tag", "one_elim"}, {"body", to_json(t->a)}, {"scrutinee", to_json(t->b)}};
    case TTag::Lambda: return json{{"tag", "lambda"}, {"bind", t->x}, {"body", to_json(t->a)}};
  }
  throw std::logic_error("to_json: bad term");
}

} // namespace mell
