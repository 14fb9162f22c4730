#include "mell/typing.hpp"

#include <cassert>
#include <functional>

#include "mell/printer.hpp"
#include "mell/substitution.hpp"

namespace mell {

namespace {

struct Unifier {
  std::map<int, FormulaPtr> bind;
  std::map<int, std::string> hint; // binder name that introduced the meta
  int next_id = 0;
  Mode mode;

  explicit Unifier(Mode m) : mode(m) {}

  FormulaPtr fresh(const std::string& binder_hint) {
    int id = next_id++;
    hint[id] = binder_hint;
    return Formula::meta(id, false);
  }

  FormulaPtr resolve(const FormulaPtr& f) {
    if (f->tag != FTag::Meta) return f;
    auto it = bind.find(f->meta_id);
    if (it == bind.end()) return f;
    FormulaPtr r = resolve(it->second);
    return f->meta_neg ? negate(r, mode) : r;
  }

  bool occurs(int id, const FormulaPtr& f) {
    FormulaPtr g = resolve(f);
    if (g->tag == FTag::Meta) return g->meta_id == id;
    if (g->left && occurs(id, g->left)) return true;
    if (g->right && occurs(id, g->right)) return true;
    return false;
  }

  void unify(const FormulaPtr& a0, const FormulaPtr& b0, const TermPtr& at) {
    FormulaPtr a = resolve(a0), b = resolve(b0);
    if (a->tag == FTag::Meta && b->tag == FTag::Meta && a->meta_id == b->meta_id) {
      if (a->meta_neg == b->meta_neg) return;
      mismatch(a0, b0, at); // X = ~X is unsatisfiable
    }
    if (a->tag == FTag::Meta) {
      if (occurs(a->meta_id, b)) mismatch(a0, b0, at);
      bind[a->meta_id] = a->meta_neg ? negate(b, mode) : b;
      return;
    }
    if (b->tag == FTag::Meta) {
      unify(b, a, at);
      return;
    }
    if (a->tag != b->tag) mismatch(a, b, at);
    switch (a->tag) {
      case FTag::Atom:
      case FTag::NegAtom:
        if (a->name != b->name) mismatch(a, b, at);
        return;
      case FTag::One:
      case FTag::Bottom:
        return;
      case FTag::OfCourse:
      case FTag::WhyNot:
        unify(a->left, b->left, at);
        return;
      default:
        unify(a->left, b->left, at);
        unify(a->right, b->right, at);
        return;
    }
  }

  [[noreturn]] void mismatch(const FormulaPtr& a, const FormulaPtr& b, const TermPtr& at) {
    throw TypeError(TypeErrorKind::TypeMismatch,
                    "type mismatch: expected " + to_string(resolve(a)) + ", got " + to_string(resolve(b)) +
                        " at subterm `" + to_string(at) + "`");
  }

  // Deep-resolve; unresolved metas default to an atom named after the binder
  // that introduced them.
  FormulaPtr zonk(const FormulaPtr& f) {
    FormulaPtr g = resolve(f);
    if (g->tag == FTag::Meta) {
      auto it = hint.find(g->meta_id);
      std::string base = it != hint.end() && !it->second.empty() ? it->second : "t";
      FormulaPtr atom = Formula::atom(base);
      bind[g->meta_id] = atom;
      return g->meta_neg ? negate(atom, mode) : atom;
    }
    if (!g->left && !g->right) return g;
    auto r = std::make_shared<Formula>(*g);
    if (g->left) r->left = zonk(g->left);
    if (g->right) r->right = zonk(g->right);
    return r;
  }
};

struct CheckCtx {
  Mode mode;
  Unifier uni;
  std::map<std::string, FormulaPtr> delta_base;

  explicit CheckCtx(Mode m) : mode(m), uni(m) {}
};

struct RawDeriv {
  std::string rule;
  std::map<std::string, FormulaPtr> delta;
  std::map<std::string, FormulaPtr> gamma;
  TermPtr subject;
  FormulaPtr type;
  std::vector<std::shared_ptr<RawDeriv>> children;
};
using RawPtr = std::shared_ptr<RawDeriv>;

using Linear = std::map<std::string, FormulaPtr>;

Linear restrict_to(const Linear& gamma, const std::set<std::string>& names, const TermPtr& at) {
  Linear out;
  for (const auto& n : names) {
    auto it = gamma.find(n);
    if (it == gamma.end())
      throw TypeError(TypeErrorKind::UnboundVariable, "unbound linear variable `" + n + "` in `" + to_string(at) + "`");
    out[n] = it->second;
  }
  return out;
}

RawPtr infer_rec(CheckCtx& cx, const std::map<std::string, FormulaPtr>& delta, const Linear& gamma,
                 const TermPtr& t) {
  auto node = std::make_shared<RawDeriv>();
  node->delta = delta;
  node->gamma = gamma;
  node->subject = t;

  auto split = [&](const TermPtr& sub) { return restrict_to(gamma, free_linear(sub), t); };

  switch (t->tag) {
    case TTag::LinVar: {
      auto it = gamma.find(t->x);
      if (it == gamma.end())
        throw TypeError(TypeErrorKind::UnboundVariable, "unbound linear variable `" + t->x + "`");
      node->rule = "m-ax";
      node->type = it->second;
      return node;
    }
    case TTag::UnrVar: {
      if (cx.mode == Mode::MLL)
        throw TypeError(TypeErrorKind::ModeViolation, "unrestricted variable in MLL term");
      auto it = delta.find(t->x);
      if (it == delta.end())
        throw TypeError(TypeErrorKind::UnboundVariable, "unbound unrestricted variable `$" + t->x + "`");
      node->rule = "m-uax";
      node->type = it->second;
      return node;
    }
    case TTag::Star: {
      node->rule = "m-i1";
      node->type = Formula::one();
      return node;
    }
    case TTag::Pair: {
      auto d1 = infer_rec(cx, delta, split(t->a), t->a);
      auto d2 = infer_rec(cx, delta, split(t->b), t->b);
      node->rule = "m-i*";
      node->type = Formula::tensor(d1->type, d2->type);
      node->children = {d1, d2};
      return node;
    }
    case TTag::TensorElim: {
      auto ds = infer_rec(cx, delta, split(t->b), t->b);
      FormulaPtr A = cx.uni.fresh(t->x), B = cx.uni.fresh(t->y);
      cx.uni.unify(ds->type, Formula::tensor(A, B), t);
      auto fl = free_linear(t->a);
      fl.erase(t->x);
      fl.erase(t->y);
      Linear gbody = restrict_to(gamma, fl, t);
      gbody[t->x] = A;
      gbody[t->y] = B;
      auto db = infer_rec(cx, delta, gbody, t->a);
      node->rule = "m-e*";
      node->type = db->type;
      node->children = {ds, db};
      return node;
    }
    case TTag::ParIntro: {
      if (cx.mode == Mode::MLL) throw TypeError(TypeErrorKind::ModeViolation, "par binder in MLL term");
      FormulaPtr A = cx.uni.fresh(t->x), B = cx.uni.fresh(t->y);
      Linear g = gamma;
      g.erase(t->x);
      g.erase(t->y);
      g[t->x] = A;
      g[t->y] = B;
      auto db = infer_rec(cx, delta, g, t->a);
      cx.uni.unify(db->type, Formula::bottom(), t);
      node->rule = "m-ipar";
      node->type = Formula::par(negate(A, cx.mode), negate(B, cx.mode));
      node->children = {db};
      return node;
    }
    case TTag::App: {
      auto d1 = infer_rec(cx, delta, split(t->a), t->a);
      auto d2 = infer_rec(cx, delta, split(t->b), t->b);
      if (cx.mode == Mode::MLL) {
        FormulaPtr A = cx.uni.fresh("arg"), B = cx.uni.fresh("res");
        cx.uni.unify(d1->type, Formula::lin_imp(A, B), t);
        cx.uni.unify(d2->type, A, t);
        node->rule = "m-e-o1";
        node->type = B;
      } else {
        FormulaPtr A = cx.uni.fresh("l"), B = cx.uni.fresh("r");
        cx.uni.unify(d1->type, Formula::par(A, B), t);
        cx.uni.unify(d2->type, negate(A, cx.mode), t);
        node->rule = "m-epar1";
        node->type = B;
      }
      node->children = {d1, d2};
      return node;
    }
    case TTag::ContraApp: {
      auto d1 = infer_rec(cx, delta, split(t->a), t->a);
      auto d2 = infer_rec(cx, delta, split(t->b), t->b);
      if (cx.mode == Mode::MLL) {
        FormulaPtr A = cx.uni.fresh("arg"), B = cx.uni.fresh("res");
        cx.uni.unify(d1->type, Formula::lin_imp(A, B), t);
        cx.uni.unify(d2->type, negate(B, cx.mode), t);
        node->rule = "m-e-o2";
        node->type = negate(A, cx.mode);
      } else {
        FormulaPtr A = cx.uni.fresh("l"), B = cx.uni.fresh("r");
        cx.uni.unify(d1->type, Formula::par(A, B), t);
        cx.uni.unify(d2->type, negate(B, cx.mode), t);
        node->rule = "m-epar2";
        node->type = A;
      }
      node->children = {d1, d2};
      return node;
    }
    case TTag::Lambda: {
      if (cx.mode == Mode::MELL) throw TypeError(TypeErrorKind::ModeViolation, "lambda in MELL term");
      FormulaPtr A = cx.uni.fresh(t->x);
      Linear g = gamma;
      g.erase(t->x);
      g[t->x] = A;
      auto db = infer_rec(cx, delta, g, t->a);
      node->rule = "m-i-o";
      node->type = Formula::lin_imp(A, db->type);
      node->children = {db};
      return node;
    }
    case TTag::OfcIntro: {
      if (cx.mode == Mode::MLL) throw TypeError(TypeErrorKind::ModeViolation, "bang in MLL term");
      auto fl = free_linear(t->a);
      fl.erase(t->x);
      if (!fl.empty() || !gamma.empty())
        throw TypeError(TypeErrorKind::NonLinearUsage,
                        "bang body must close over exactly its binder in `" + to_string(t) + "`");
      FormulaPtr A = cx.uni.fresh(t->x);
      Linear g;
      g[t->x] = A;
      auto db = infer_rec(cx, delta, g, t->a);
      cx.uni.unify(db->type, Formula::bottom(), t);
      node->rule = "m-i!";
      node->type = Formula::of_course(negate(A, cx.mode));
      node->children = {db};
      return node;
    }
    case TTag::OfcElim: {
      if (cx.mode == Mode::MLL) throw TypeError(TypeErrorKind::ModeViolation, "bang eliminator in MLL term");
      auto ds = infer_rec(cx, delta, split(t->b), t->b);
      FormulaPtr A = cx.uni.fresh(t->x);
      cx.uni.unify(ds->type, Formula::of_course(A), t);
      auto delta2 = delta;
      delta2[t->x] = A;
      auto db = infer_rec(cx, delta2, split(t->a), t->a);
      node->rule = "m-e!";
      node->type = db->type;
      node->children = {ds, db};
      return node;
    }
    case TTag::WhyIntro: {
      if (cx.mode == Mode::MLL) throw TypeError(TypeErrorKind::ModeViolation, "wn in MLL term");
      FormulaPtr NA = cx.uni.fresh(t->x);
      auto delta2 = delta;
      delta2[t->x] = NA;
      auto db = infer_rec(cx, delta2, gamma, t->a);
      cx.uni.unify(db->type, Formula::bottom(), t);
      node->rule = "m-i?";
      node->type = Formula::why_not(negate(NA, cx.mode));
      node->children = {db};
      return node;
    }
    case TTag::WhyElim: {
      if (cx.mode == Mode::MLL) throw TypeError(TypeErrorKind::ModeViolation, "wncase in MLL term");
      auto fl = free_linear(t->a);
      fl.erase(t->x);
      if (!fl.empty())
        throw TypeError(TypeErrorKind::NonLocalLinearCapture,
                        "wncase body may use only its binder linearly in `" + to_string(t) + "`");
      auto ds = infer_rec(cx, delta, split(t->b), t->b);
      FormulaPtr A = cx.uni.fresh(t->x);
      cx.uni.unify(ds->type, Formula::why_not(A), t);
      Linear g;
      g[t->x] = A;
      auto db = infer_rec(cx, delta, g, t->a);
      cx.uni.unify(db->type, Formula::bottom(), t);
      node->rule = "m-e?";
      node->type = Formula::bottom();
      node->children = {ds, db};
      return node;
    }
    case TTag::Contra: {
      if (cx.mode == Mode::MLL) throw TypeError(TypeErrorKind::ModeViolation, "contradiction in MLL term");
      auto d1 = infer_rec(cx, delta, split(t->a), t->a);
      auto d2 = infer_rec(cx, delta, split(t->b), t->b);
      cx.uni.unify(d2->type, negate(d1->type, cx.mode), t);
      node->rule = "m-ibot";
      node->type = Formula::bottom();
      node->children = {d1, d2};
      return node;
    }
    case TTag::OneElim: {
      if (cx.mode == Mode::MLL) throw TypeError(TypeErrorKind::ModeViolation, "unit eliminator in MLL term");
      auto ds = infer_rec(cx, delta, split(t->b), t->b);
      cx.uni.unify(ds->type, Formula::one(), t);
      auto db = infer_rec(cx, delta, split(t->a), t->a);
      node->rule = "m-e1";
      node->type = db->type;
      node->children = {ds, db};
      return node;
    }
  }
  throw std::logic_error("infer_rec: bad tag");
}

DerivPtr finalize(Unifier& uni, const RawPtr& raw, Mode mode) {
  auto d = std::make_shared<Derivation>();
  d->rule = raw->rule;
  d->mode = mode;
  d->subject = raw->subject;
  d->type = uni.zonk(raw->type);
  for (auto& [k, v] : raw->delta) d->delta[k] = uni.zonk(v);
  for (auto& [k, v] : raw->gamma) d->gamma[k] = uni.zonk(v);
  for (auto& c : raw->children) d->children.push_back(finalize(uni, c, mode));
  return d;
}

} // namespace

namespace {

// Reports wncase bodies that close over more than their binder before the
// generic linearity check turns the same situation into NonLinearUsage.
void check_wncase_capture(const TermPtr& t) {
  if (t->tag == TTag::WhyElim) {
    auto fl = free_linear(t->a);
    fl.erase(t->x);
    if (!fl.empty())
      throw TypeError(TypeErrorKind::NonLocalLinearCapture,
                      "wncase body may use only its binder linearly in `" + to_string(t) + "`");
  }
  if (t->a) check_wncase_capture(t->a);
  if (t->b) check_wncase_capture(t->b);
}

} // namespace

Checked infer(const Env& env, const TermPtr& t, Mode mode) {
  if (!term_in_mode(t, mode))
    throw TypeError(TypeErrorKind::ModeViolation, "term uses constructors outside the selected mode");
  if (mode == Mode::MELL) check_wncase_capture(t);
  if (!is_linear(t, mode))
    throw TypeError(TypeErrorKind::NonLinearUsage, "term is not linear: `" + to_string(t) + "`");
  for (const auto& [n, f] : env.linear)
    if (env.unrestricted.count(n))
      throw TypeError(TypeErrorKind::NameClash, "name `" + n + "` declared both linear and unrestricted");
  if (mode == Mode::MLL && !env.unrestricted.empty())
    throw TypeError(TypeErrorKind::ModeViolation, "unrestricted declarations in MLL mode");

  auto fv = free_vars(t);
  for (const auto& u : fv.unrestricted)
    if (!env.unrestricted.count(u))
      throw TypeError(TypeErrorKind::UnboundVariable, "unbound unrestricted variable `$" + u + "`");

  CheckCtx cx(mode);
  Linear gamma = restrict_to(env.linear, fv.linear, t);
  auto raw = infer_rec(cx, env.unrestricted, gamma, t);
  Checked out;
  out.derivation = finalize(cx.uni, raw, mode);
  out.type = out.derivation->type;
  out.used_linear = out.derivation->gamma;
  return out;
}

Checked check(const Env& env, const TermPtr& t, Mode mode) {
  auto fv = free_linear(t);
  for (const auto& [n, f] : env.linear)
    if (!fv.count(n))
      throw TypeError(TypeErrorKind::UnusedLinear, "linear variable `" + n + "` is not used by the term");
  return infer(env, t, mode);
}

namespace {

void collect_types(const DerivPtr& d, Path& p, std::map<Path, FormulaPtr>& out, Mode mode) {
  out[p] = d->type;
  const TermPtr& t = d->subject;
  // Child derivations follow the checking order: for eliminator forms the
  // scrutinee (child index 1) was checked first.
  auto desc = [&](int child_ix, const DerivPtr& sub) {
    p.push_back(child_ix);
    collect_types(sub, p, out, mode);
    p.pop_back();
  };
  switch (t->tag) {
    case TTag::Pair:
    case TTag::App:
    case TTag::ContraApp:
    case TTag::Contra:
      desc(0, d->children[0]);
      desc(1, d->children[1]);
      break;
    case TTag::TensorElim:
    case TTag::OfcElim:
    case TTag::WhyElim:
    case TTag::OneElim:
      desc(1, d->children[0]);
      desc(0, d->children[1]);
      break;
    case TTag::ParIntro:
    case TTag::OfcIntro:
    case TTag::WhyIntro:
    case TTag::Lambda:
      desc(0, d->children[0]);
      break;
    default:
      break;
  }
}

} // namespace

std::map<Path, FormulaPtr> subterm_types(const Env& env, const TermPtr& t, Mode mode) {
  auto c = infer(env, t, mode);
  std::map<Path, FormulaPtr> out;
  Path p;
  collect_types(c.derivation, p, out, mode);
  return out;
}

namespace {

Env env_of(const DerivPtr& d) {
  Env e;
  e.unrestricted = d->delta;
  e.linear = d->gamma;
  return e;
}

} // namespace

DerivPtr weaken(const DerivPtr& d, const std::string& u, const FormulaPtr& B) {
  if (d->delta.count(u))
    throw TypeError(TypeErrorKind::NameClash, "weaken: `$" + u + "` already in the unrestricted context");
  if (d->gamma.count(u))
    throw TypeError(TypeErrorKind::NameClash, "weaken: `" + u + "` clashes with a linear name");
  Env e = env_of(d);
  e.unrestricted[u] = B;
  auto c = check(e, d->subject, d->mode);
  if (!formula_eq(c.type, d->type))
    throw TypeError(TypeErrorKind::TypeMismatch, "weaken: rechecking changed the type");
  return c.derivation;
}

ContractResult contract(const DerivPtr& d, const std::string& u, const std::string& v) {
  auto iu = d->delta.find(u), iv = d->delta.find(v);
  if (iu == d->delta.end() || iv == d->delta.end())
    throw TypeError(TypeErrorKind::UnboundVariable, "contract: assumption not in context");
  if (!formula_eq(iu->second, iv->second))
    throw TypeError(TypeErrorKind::TypeMismatch, "contract: the two assumptions have different types");
  TermPtr renamed = subst_unrestricted(d->subject, v, Term::unr_var(u));
  Env e = env_of(d);
  e.unrestricted.erase(v);
  auto c = check(e, renamed, Mode::MELL);
  return {renamed, c.derivation};
}

ContractResult to_bang_linear(const DerivPtr& d, const std::string& u, const std::string& a) {
  auto iu = d->delta.find(u);
  if (iu == d->delta.end())
    throw TypeError(TypeErrorKind::UnboundVariable, "to_bang_linear: `$" + u + "` not in context");
  if (d->gamma.count(a))
    throw TypeError(TypeErrorKind::NameClash, "to_bang_linear: `" + a + "` already in the linear context");
  TermPtr t = Term::ofc_elim(d->subject, u, Term::lin_var(a));
  Env e = env_of(d);
  e.unrestricted.erase(u);
  e.linear[a] = Formula::of_course(iu->second);
  auto c = check(e, t, Mode::MELL);
  return {t, c.derivation};
}

ContractResult from_bang_linear(const DerivPtr& d, const std::string& a, const std::string& u) {
  auto ia = d->gamma.find(a);
  if (ia == d->gamma.end())
    throw TypeError(TypeErrorKind::UnboundVariable, "from_bang_linear: `" + a + "` not in context");
  if (ia->second->tag != FTag::OfCourse)
    throw TypeError(TypeErrorKind::TypeMismatch, "from_bang_linear: `" + a + "` is not of !-type");
  if (d->delta.count(u))
    throw TypeError(TypeErrorKind::NameClash, "from_bang_linear: `$" + u + "` already in context");
  std::set<std::string> avoid;
  all_names(d->subject, avoid);
  std::string b = fresh_name("b", avoid);
  TermPtr bang_u = Term::ofc_intro(b, Term::contra(Term::unr_var(u), Term::lin_var(b)));
  TermPtr t = subst_linear(d->subject, a, bang_u);
  Env e = env_of(d);
  e.linear.erase(a);
  e.unrestricted[u] = ia->second->left;
  auto c = check(e, t, Mode::MELL);
  return {t, c.derivation};
}

ContractResult admissible_sub(const DerivPtr& d1, const std::string& a, const DerivPtr& d2) {
  auto ia = d1->gamma.find(a);
  if (ia == d1->gamma.end())
    throw TypeError(TypeErrorKind::UnboundVariable, "admissible_sub: `" + a + "` not in context");
  if (!formula_eq(ia->second, d2->type))
    throw TypeError(TypeErrorKind::TypeMismatch, "admissible_sub: substituend type differs from assumption");
  for (const auto& [n, f] : d2->gamma)
    if (d1->gamma.count(n) && n != a)
      throw TypeError(TypeErrorKind::ContextOverlap, "admissible_sub: linear contexts overlap at `" + n + "`");
  Mode mode = d1->mode;
  TermPtr t = subst_linear(d1->subject, a, d2->subject);
  Env e;
  for (auto& [k, v] : d1->delta) e.unrestricted[k] = v;
  for (auto& [k, v] : d2->delta) {
    auto it = e.unrestricted.find(k);
    if (it != e.unrestricted.end() && !formula_eq(it->second, v))
      throw TypeError(TypeErrorKind::NameClash, "admissible_sub: `$" + k + "` typed differently in the premises");
    e.unrestricted[k] = v;
  }
  for (auto& [k, v] : d1->gamma)
    if (k != a) e.linear[k] = v;
  for (auto& [k, v] : d2->gamma) e.linear[k] = v;
  auto c = check(e, t, mode);
  return {t, c.derivation};
}

std::string judgement_string(const DerivPtr& d) {
  std::string s;
  bool first = true;
  for (auto& [k, v] : d->delta) {
    if (!first) s += ", ";
    s += "$" + k + " : " + to_string(v);
    first = false;
  }
  s += "; ";
  first = true;
  for (auto& [k, v] : d->gamma) {
    if (!first) s += ", ";
    s += k + " : " + to_string(v);
    first = false;
  }
  s += " |- " + to_string(d->subject) + " : " + to_string(d->type);
  return s;
}

} // namespace mell
