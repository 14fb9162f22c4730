#include "mell/substitution.hpp"

#include "mell/printer.hpp"

namespace mell {

namespace {

// Renames one top-level linear binder occurrence inside `body` (used when a
// binder clashes with the substituend's free variables).
TermPtr rename_linear(const TermPtr& t, const std::string& from, const std::string& to) {
  return subst_linear(t, from, Term::lin_var(to));
}

TermPtr rename_unrestricted(const TermPtr& t, const std::string& from, const std::string& to) {
  return subst_unrestricted(t, from, Term::unr_var(to));
}

// Picks fresh replacements for the binders of node t that clash with `avoid`
// and rewrites the bound occurrences. Only the top node is adjusted.
TermPtr avoid_capture(const TermPtr& t, const std::set<std::string>& avoid) {
  auto need = [&](const std::string& n) { return !n.empty() && avoid.count(n) > 0; };
  std::set<std::string> taken = avoid;
  all_names(t, taken);
  switch (t->tag) {
    case TTag::TensorElim: {
      if (!need(t->x) && !need(t->y)) return t;
      std::string nx = need(t->x) ? fresh_name(t->x, taken) : t->x;
      taken.insert(nx);
      std::string ny = need(t->y) ? fresh_name(t->y, taken) : t->y;
      TermPtr body = t->a;
      if (nx != t->x) body = rename_linear(body, t->x, nx);
      if (ny != t->y) body = rename_linear(body, t->y, ny);
      return Term::tensor_elim(body, nx, ny, t->b);
    }
    case TTag::ParIntro: {
      if (!need(t->x) && !need(t->y)) return t;
      std::string nx = need(t->x) ? fresh_name(t->x, taken) : t->x;
      taken.insert(nx);
      std::string ny = need(t->y) ? fresh_name(t->y, taken) : t->y;
      TermPtr body = t->a;
      if (nx != t->x) body = rename_linear(body, t->x, nx);
      if (ny != t->y) body = rename_linear(body, t->y, ny);
      return Term::par_intro(nx, ny, body);
    }
    case TTag::Lambda: {
      if (!need(t->x)) return t;
      std::string nx = fresh_name(t->x, taken);
      return Term::lambda(nx, rename_linear(t->a, t->x, nx));
    }
    case TTag::OfcIntro: {
      if (!need(t->x)) return t;
      std::string nx = fresh_name(t->x, taken);
      return Term::ofc_intro(nx, rename_linear(t->a, t->x, nx));
    }
    case TTag::WhyElim: {
      if (!need(t->x)) return t;
      std::string nx = fresh_name(t->x, taken);
      return Term::why_elim(rename_linear(t->a, t->x, nx), nx, t->b);
    }
    case TTag::OfcElim: {
      if (!need(t->x)) return t;
      std::string nx = fresh_name(t->x, taken);
      return Term::ofc_elim(rename_unrestricted(t->a, t->x, nx), nx, t->b);
    }
    case TTag::WhyIntro: {
      if (!need(t->x)) return t;
      std::string nx = fresh_name(t->x, taken);
      return Term::why_intro(nx, rename_unrestricted(t->a, t->x, nx));
    }
    default:
      return t;
  }
}

struct SubstNames {
  std::set<std::string> avoid; // free names of s plus the substituted name
};

TermPtr subst_lin_rec(const TermPtr& t, const std::string& a, const TermPtr& s, const SubstNames& ns) {
  switch (t->tag) {
    case TTag::LinVar:
      return t->x == a ? s : t;
    case TTag::UnrVar:
    case TTag::Star:
      return t;
    default:
      break;
  }
  TermPtr u = avoid_capture(t, ns.avoid);
  // A binder that shadows the substituted name stops the descent into the
  // body; the scrutinee is still rewritten.
  bool shadows = false;
  switch (u->tag) {
    case TTag::TensorElim:
    case TTag::ParIntro:
      shadows = u->x == a || u->y == a;
      break;
    case TTag::Lambda:
    case TTag::OfcIntro:
    case TTag::WhyElim:
      shadows = u->x == a;
      break;
    default:
      break;
  }
  auto r = std::make_shared<Term>(*u);
  if (u->a && !shadows) r->a = subst_lin_rec(u->a, a, s, ns);
  if (u->b) r->b = subst_lin_rec(u->b, a, s, ns);
  return r;
}

TermPtr subst_unr_rec(const TermPtr& t, const std::string& a, const TermPtr& s, const SubstNames& ns) {
  switch (t->tag) {
    case TTag::UnrVar:
      return t->x == a ? s : t;
    case TTag::LinVar:
    case TTag::Star:
      return t;
    default:
      break;
  }
  TermPtr u = avoid_capture(t, ns.avoid);
  bool shadows = (u->tag == TTag::OfcElim || u->tag == TTag::WhyIntro) && u->x == a;
  auto r = std::make_shared<Term>(*u);
  if (u->a && !shadows) r->a = subst_unr_rec(u->a, a, s, ns);
  if (u->b) r->b = subst_unr_rec(u->b, a, s, ns);
  return r;
}

} // namespace

TermPtr subst_linear(const TermPtr& t, const std::string& a, const TermPtr& s) {
  SubstNames ns;
  auto fv = free_vars(s);
  ns.avoid = fv.linear;
  ns.avoid.insert(fv.unrestricted.begin(), fv.unrestricted.end());
  ns.avoid.insert(a);
  return subst_lin_rec(t, a, s, ns);
}

TermPtr subst_unrestricted(const TermPtr& t, const std::string& u, const TermPtr& s) {
  SubstNames ns;
  auto fv = free_vars(s);
  ns.avoid = fv.linear;
  ns.avoid.insert(fv.unrestricted.begin(), fv.unrestricted.end());
  ns.avoid.insert(u);
  return subst_unr_rec(t, u, s, ns);
}

TermPtr freshen_binders(const TermPtr& t, const std::set<std::string>& avoid) {
  TermPtr u = avoid_capture(t, avoid);
  auto r = std::make_shared<Term>(*u);
  if (u->a) r->a = freshen_binders(u->a, avoid);
  if (u->b) r->b = freshen_binders(u->b, avoid);
  return r;
}

namespace {

TermPtr barendregt_rec(const TermPtr& t, std::set<std::string>& taken) {
  TermPtr u = avoid_capture(t, taken);
  bool lin_xy = u->tag == TTag::TensorElim || u->tag == TTag::ParIntro;
  bool lin_x = u->tag == TTag::Lambda || u->tag == TTag::OfcIntro || u->tag == TTag::WhyElim;
  bool unr_x = u->tag == TTag::OfcElim || u->tag == TTag::WhyIntro;
  if (lin_xy || lin_x || unr_x) {
    taken.insert(u->x);
    if (lin_xy) taken.insert(u->y);
  }
  auto r = std::make_shared<Term>(*u);
  if (u->a) r->a = barendregt_rec(u->a, taken);
  if (u->b) r->b = barendregt_rec(u->b, taken);
  return r;
}

} // namespace

TermPtr barendregt(const TermPtr& t) {
  auto fv = free_vars(t);
  std::set<std::string> taken = fv.linear;
  taken.insert(fv.unrestricted.begin(), fv.unrestricted.end());
  return barendregt_rec(t, taken);
}

namespace {

bool has_free_lin(const TermPtr& t, const std::string& a) { return free_linear(t).count(a) > 0; }

TermPtr cos_rec(const TermPtr& t0, const std::string& a, const TermPtr& s, Mode mode) {
  std::set<std::string> avoid;
  auto fv = free_vars(s);
  avoid = fv.linear;
  avoid.insert(fv.unrestricted.begin(), fv.unrestricted.end());
  avoid.insert(a);
  TermPtr t = avoid_capture(t0, avoid);

  switch (t->tag) {
    case TTag::LinVar:
      if (t->x == a) return s;
      throw SubstError("contra_subst: variable `" + a + "` is not free in `" + to_string(t) + "`");
    case TTag::UnrVar:
    case TTag::Star:
      throw SubstError("contra_subst: impossible case at `" + to_string(t) + "`");
    case TTag::Pair: {
      if (has_free_lin(t->a, a)) return cos_rec(t->a, a, Term::contra_app(s, t->b), mode);
      return cos_rec(t->b, a, Term::app(s, t->a), mode);
    }
    case TTag::App: {
      if (has_free_lin(t->a, a)) return cos_rec(t->a, a, Term::pair(t->b, s), mode);
      return cos_rec(t->b, a, Term::contra_app(t->a, s), mode);
    }
    case TTag::ContraApp: {
      if (has_free_lin(t->a, a)) return cos_rec(t->a, a, Term::pair(s, t->b), mode);
      return cos_rec(t->b, a, Term::app(t->a, s), mode);
    }
    case TTag::Lambda: {
      if (mode != Mode::MLL) throw SubstError("contra_subst: lambda outside MLL");
      std::set<std::string> taken = avoid;
      all_names(t, taken);
      std::string c = fresh_name("c", taken);
      TermPtr inner = cos_rec(t->a, a, Term::lin_var(c), mode);
      return Term::tensor_elim(inner, t->x, c, s);
    }
    case TTag::TensorElim: {
      if (has_free_lin(t->a, a))
        return Term::tensor_elim(cos_rec(t->a, a, s, mode), t->x, t->y, t->b);
      if (mode == Mode::MLL)
        return cos_rec(t->b, a, Term::lambda(t->x, cos_rec(t->a, t->y, s, mode)), mode);
      return cos_rec(t->b, a, Term::par_intro(t->x, t->y, Term::contra(t->a, s)), mode);
    }
    case TTag::ParIntro:
      return Term::tensor_elim(cos_rec(t->a, a, Term::star(), mode), t->x, t->y, s);
    case TTag::OfcIntro:
      throw SubstError("contra_subst: impossible case (bang body has no free linear variables)");
    case TTag::OfcElim: {
      if (has_free_lin(t->a, a))
        return Term::ofc_elim(cos_rec(t->a, a, s, mode), t->x, t->b);
      return cos_rec(t->b, a, Term::why_intro(t->x, Term::contra(t->a, s)), mode);
    }
    case TTag::WhyIntro:
      return Term::ofc_elim(cos_rec(t->a, a, Term::star(), mode), t->x, s);
    case TTag::WhyElim: {
      if (has_free_lin(t->a, a))
        throw SubstError("contra_subst: impossible case (wncase body closes over its binder)");
      return Term::one_elim(cos_rec(t->b, a, Term::ofc_intro(t->x, t->a), mode), s);
    }
    case TTag::Contra: {
      if (has_free_lin(t->a, a)) return Term::one_elim(cos_rec(t->a, a, t->b, mode), s);
      return Term::one_elim(cos_rec(t->b, a, t->a, mode), s);
    }
    case TTag::OneElim: {
      if (has_free_lin(t->a, a)) return Term::one_elim(cos_rec(t->a, a, s, mode), t->b);
      return cos_rec(t->b, a, Term::contra(t->a, s), mode);
    }
  }
  throw std::logic_error("contra_subst: bad tag");
}

} // namespace

TermPtr contra_subst(const TermPtr& t, const std::string& a, const TermPtr& s, Mode mode) {
  if (!is_linear(t, mode))
    throw SubstError("contra_subst: term is not linear: `" + to_string(t) + "`");
  if (!free_linear(t).count(a))
    throw SubstError("contra_subst: variable `" + a + "` is not free in `" + to_string(t) + "`");
  return cos_rec(t, a, s, mode);
}

DerivPtr check_contra_typing(const DerivPtr& dt, const std::string& a, const DerivPtr& ds) {
  auto ia = dt->gamma.find(a);
  if (ia == dt->gamma.end())
    throw TypeError(TypeErrorKind::UnboundVariable, "check_contra_typing: `" + a + "` not in context");
  Mode mode = dt->mode;
  FormulaPtr expected_arg = negate(dt->type, mode);
  if (!formula_eq(ds->type, expected_arg))
    throw TypeError(TypeErrorKind::TypeMismatch,
                    "check_contra_typing: substituend has type " + to_string(ds->type) + ", expected " +
                        to_string(expected_arg));
  for (const auto& [n, f] : ds->gamma)
    if (dt->gamma.count(n) && n != a)
      throw TypeError(TypeErrorKind::ContextOverlap, "check_contra_typing: linear contexts overlap at `" + n + "`");

  TermPtr out = contra_subst(dt->subject, a, ds->subject, mode);
  Env e;
  for (auto& [k, v] : dt->delta) e.unrestricted[k] = v;
  for (auto& [k, v] : ds->delta) {
    auto it = e.unrestricted.find(k);
    if (it != e.unrestricted.end() && !formula_eq(it->second, v))
      throw TypeError(TypeErrorKind::NameClash, "check_contra_typing: `$" + k + "` typed differently");
    e.unrestricted[k] = v;
  }
  for (auto& [k, v] : dt->gamma)
    if (k != a) e.linear[k] = v;
  for (auto& [k, v] : ds->gamma) e.linear[k] = v;

  auto c = check(e, out, mode);
  FormulaPtr want = negate(ia->second, mode);
  if (!formula_eq(c.type, want))
    throw TypeError(TypeErrorKind::TypeMismatch,
                    "check_contra_typing: result re-checked at " + to_string(c.type) + ", expected " +
                        to_string(want));
  return c.derivation;
}

} // namespace mell
