#include "mell/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

#include "mell/printer.hpp"
#include "mell/substitution.hpp"

namespace mell {

std::string to_string(EquivAxiom ax) {
  switch (ax) {
    case EquivAxiom::Prop: return "prop";
    case EquivAxiom::BetaOne: return "beta-one";
    case EquivAxiom::SymmOne: return "symm-one";
    case EquivAxiom::LUnitBot: return "lunit-bot";
    case EquivAxiom::EPar2IPar: return "epar2/ipar";
    case EquivAxiom::ITensorEPar2: return "itensor/epar2";
    case EquivAxiom::IParETensor: return "ipar/etensor";
    case EquivAxiom::IWnEBang: return "iwn/ebang";
    case EquivAxiom::IBangEWn: return "ibang/ewn";
    case EquivAxiom::IBotEOne: return "ibot/eone";
  }
  return "?";
}

std::string to_string(const EquivStep& st) {
  return to_string(st.axiom) + (st.forward ? " > @ " : " < @ ") + path_to_string(st.pos);
}

namespace {

using Neighbor = std::pair<TermPtr, EquivStep>;

bool is_one(const FormulaPtr& f) { return f && f->tag == FTag::One; }
bool is_bot(const FormulaPtr& f) { return f && f->tag == FTag::Bottom; }

// Surface-context data for a constructor: which children may hold the hole
// and which binders scope over each.
struct HolePos {
  int child;
  std::vector<std::pair<std::string, bool>> binders; // (name, is_linear)
};

std::vector<HolePos> surface_holes(const TermPtr& t) {
  switch (t->tag) {
    case TTag::ParIntro: return {{0, {{t->x, true}, {t->y, true}}}};
    case TTag::Pair:
    case TTag::App:
    case TTag::ContraApp:
    case TTag::Contra:
      return {{0, {}}, {1, {}}};
    case TTag::WhyIntro: return {{0, {{t->x, false}}}};
    case TTag::TensorElim: return {{0, {{t->x, true}, {t->y, true}}}, {1, {}}};
    case TTag::OfcElim: return {{0, {{t->x, false}}}, {1, {}}};
    case TTag::OneElim: return {{0, {}}, {1, {}}};
    case TTag::WhyElim: return {{1, {}}};
    default: return {};
  }
}

TermPtr child_of(const TermPtr& t, int ix) { return ix == 0 ? t->a : t->b; }

TermPtr with_child(const TermPtr& t, int ix, const TermPtr& c) {
  auto r = std::make_shared<Term>(*t);
  if (ix == 0) r->a = c;
  else r->b = c;
  return r;
}

bool is_pos_eliminator(const TermPtr& t) {
  return t->tag == TTag::TensorElim || t->tag == TTag::OfcElim || t->tag == TTag::OneElim;
}

std::vector<std::pair<std::string, bool>> pattern_vars(const TermPtr& e) {
  switch (e->tag) {
    case TTag::TensorElim: return {{e->x, true}, {e->y, true}};
    case TTag::OfcElim: return {{e->x, false}};
    default: return {};
  }
}

bool occurs_name(const FreeVars& fv, const std::string& n, bool linear) {
  return linear ? fv.linear.count(n) > 0 : fv.unrestricted.count(n) > 0;
}

// Free variables of the context c with child `hole` masked out.
FreeVars ctx_free_vars(const TermPtr& c, int hole) {
  return free_vars(with_child(c, hole, Term::star()));
}

std::set<std::string> all_fv_names(const TermPtr& t) {
  auto fv = free_vars(t);
  std::set<std::string> out = fv.linear;
  out.insert(fv.unrestricted.begin(), fv.unrestricted.end());
  return out;
}

TermPtr freshen_pattern(const TermPtr& e, std::set<std::string> avoid) {
  all_names(e, avoid);
  auto r = std::make_shared<Term>(*e);
  if (e->tag == TTag::TensorElim) {
    std::string nx = fresh_name(e->x, avoid);
    avoid.insert(nx);
    std::string ny = fresh_name(e->y, avoid);
    r->x = nx;
    r->y = ny;
    TermPtr body = e->a;
    if (nx != e->x) body = subst_linear(body, e->x, Term::lin_var(nx));
    if (ny != e->y) body = subst_linear(body, e->y, Term::lin_var(ny));
    r->a = body;
  } else if (e->tag == TTag::OfcElim) {
    std::string nx = fresh_name(e->x, avoid);
    r->x = nx;
    if (nx != e->x) r->a = subst_unrestricted(e->a, e->x, Term::unr_var(nx));
  }
  return r;
}

TermPtr freshen_ctx_binders(const TermPtr& c, int hole, std::set<std::string> avoid) {
  all_names(c, avoid);
  auto r = std::make_shared<Term>(*c);
  switch (c->tag) {
    case TTag::ParIntro:
    case TTag::TensorElim: {
      if (hole != 0) return r;
      TermPtr body = c->a;
      std::string nx = fresh_name(c->x, avoid);
      avoid.insert(nx);
      std::string ny = fresh_name(c->y, avoid);
      if (nx != c->x) body = subst_linear(body, c->x, Term::lin_var(nx));
      if (ny != c->y) body = subst_linear(body, c->y, Term::lin_var(ny));
      r->x = nx;
      r->y = ny;
      r->a = body;
      return r;
    }
    case TTag::WhyIntro:
    case TTag::OfcElim: {
      if (hole != 0) return r;
      std::string n = fresh_name(c->x, avoid);
      r->x = n;
      if (n != c->x) r->a = subst_unrestricted(c->a, c->x, Term::unr_var(n));
      return r;
    }
    default:
      return r;
  }
}

struct NeighborGen {
  const std::map<Path, FormulaPtr>& types;
  bool include_expansions;
  const TermPtr& root;
  std::vector<Neighbor> out;

  void add(const TermPtr& whole, const Path& pos, EquivAxiom ax, bool fwd) {
    out.push_back({whole, {pos, ax, fwd}});
  }

  FormulaPtr type_at(const Path& p) const {
    auto it = types.find(p);
    return it == types.end() ? nullptr : it->second;
  }

  FormulaPtr child_type(Path p, int ix) const {
    p.push_back(ix);
    return type_at(p);
  }

  void local(const TermPtr& u, const Path& p) {
    auto rewrite = [&](const TermPtr& repl, EquivAxiom ax, bool fwd) {
      add(replace_at(root, p, repl), p, ax, fwd);
    };

    // beta-one
    if (u->tag == TTag::OneElim && u->b->tag == TTag::Star) rewrite(u->a, EquivAxiom::BetaOne, true);
    if (include_expansions) rewrite(Term::one_elim(u, Term::star()), EquivAxiom::BetaOne, false);

    // symm-one (needs t : 1)
    if (u->tag == TTag::OneElim && is_one(child_type(p, 0)))
      rewrite(Term::one_elim(u->b, u->a), EquivAxiom::SymmOne, true);

    // lunit
    if (u->tag == TTag::Contra && u->a->tag == TTag::Star) rewrite(u->b, EquivAxiom::LUnitBot, true);
    if (include_expansions && is_bot(type_at(p)))
      rewrite(Term::contra(Term::star(), u), EquivAxiom::LUnitBot, false);

    if (u->tag == TTag::Contra) {
      const TermPtr& l = u->a;
      const TermPtr& r = u->b;
      if (l->tag == TTag::ContraApp)
        rewrite(Term::contra(l->b, Term::app(l->a, r)), EquivAxiom::EPar2IPar, true);
      if (r->tag == TTag::App)
        rewrite(Term::contra(Term::contra_app(r->a, l), r->b), EquivAxiom::EPar2IPar, false);
      if (l->tag == TTag::Pair)
        rewrite(Term::contra(l->a, Term::contra_app(r, l->b)), EquivAxiom::ITensorEPar2, true);
      if (r->tag == TTag::ContraApp)
        rewrite(Term::contra(Term::pair(l, r->b), r->a), EquivAxiom::ITensorEPar2, false);
      if (l->tag == TTag::ParIntro)
        rewrite(Term::tensor_elim(l->a, l->x, l->y, r), EquivAxiom::IParETensor, true);
      if (l->tag == TTag::WhyIntro)
        rewrite(Term::ofc_elim(l->a, l->x, r), EquivAxiom::IWnEBang, true);
      if (l->tag == TTag::OfcIntro)
        rewrite(Term::why_elim(l->a, l->x, r), EquivAxiom::IBangEWn, true);
      if (l->tag == TTag::OneElim)
        rewrite(Term::contra(l->b, Term::contra(r, l->a)), EquivAxiom::IBotEOne, true);
      if (r->tag == TTag::Contra && is_one(child_type(p, 0)))
        rewrite(Term::contra(Term::one_elim(r->b, l), r->a), EquivAxiom::IBotEOne, false);
    }

    // reverse orientations of the intro/elim pairings
    if (u->tag == TTag::TensorElim && is_bot(child_type(p, 0)))
      rewrite(Term::contra(Term::par_intro(u->x, u->y, u->a), u->b), EquivAxiom::IParETensor, false);
    if (u->tag == TTag::OfcElim && is_bot(child_type(p, 0)))
      rewrite(Term::contra(Term::why_intro(u->x, u->a), u->b), EquivAxiom::IWnEBang, false);
    if (u->tag == TTag::WhyElim)
      rewrite(Term::contra(Term::ofc_intro(u->x, u->a), u->b), EquivAxiom::IBangEWn, false);

    prop(u, p);
  }

  void prop(const TermPtr& u, const Path& p) {
    // push inward: u = F<x>[pat := r] becomes F<x[pat := r]>
    if (is_pos_eliminator(u)) {
      TermPtr c = u->a;
      for (const auto& hp : surface_holes(c)) {
        FreeVars fctx = ctx_free_vars(c, hp.child);
        bool blocked = false;
        for (auto& [n, lin] : pattern_vars(u))
          if (occurs_name(fctx, n, lin)) blocked = true;
        if (blocked) continue;
        TermPtr cc = c;
        auto rfv = free_vars(u->b);
        bool clash = false;
        for (auto& [n, lin] : hp.binders)
          if (occurs_name(rfv, n, lin)) clash = true;
        if (clash) cc = freshen_ctx_binders(c, hp.child, all_fv_names(u->b));
        TermPtr inner = with_child(u, 0, child_of(cc, hp.child));
        add(replace_at(root, p, with_child(cc, hp.child, inner)), p, EquivAxiom::Prop, true);
      }
    }
    // pull outward: u = F<x[pat := r]> becomes F<x>[pat := r]
    for (const auto& hp : surface_holes(u)) {
      TermPtr e = child_of(u, hp.child);
      if (!e || !is_pos_eliminator(e)) continue;
      auto rfv = free_vars(e->b);
      bool dep = false;
      for (auto& [n, lin] : hp.binders)
        if (occurs_name(rfv, n, lin)) dep = true;
      if (dep) continue; // scrutinee genuinely uses a context binder
      FreeVars fctx = ctx_free_vars(u, hp.child);
      TermPtr ee = e;
      bool clash = false;
      for (auto& [n, lin] : pattern_vars(e))
        if (occurs_name(fctx, n, lin)) clash = true;
      if (clash) ee = freshen_pattern(e, all_fv_names(u));
      TermPtr pulled = with_child(ee, 0, with_child(u, hp.child, ee->a));
      add(replace_at(root, p, pulled), p, EquivAxiom::Prop, false);
    }
  }

  void walk(const TermPtr& u, Path& p) {
    local(u, p);
    if (u->a) {
      p.push_back(0);
      walk(u->a, p);
      p.pop_back();
    }
    if (u->b) {
      p.push_back(1);
      walk(u->b, p);
      p.pop_back();
    }
  }
};

} // namespace

std::vector<std::pair<TermPtr, EquivStep>> equiv_neighbors(const Env& env, const TermPtr& t,
                                                           bool include_expansions) {
  auto types = subterm_types(env, t, Mode::MELL);
  NeighborGen gen{types, include_expansions, t, {}};
  Path p;
  gen.walk(t, p);
  return std::move(gen.out);
}

TermPtr simplify(const TermPtr& t) {
  TermPtr a = t->a ? simplify(t->a) : nullptr;
  TermPtr b = t->b ? simplify(t->b) : nullptr;
  TermPtr u = t;
  if (a != t->a || b != t->b) {
    auto r = std::make_shared<Term>(*t);
    r->a = a;
    r->b = b;
    u = r;
  }
  if (u->tag == TTag::OneElim && u->b->tag == TTag::Star) return u->a;
  if (u->tag == TTag::Contra && u->a->tag == TTag::Star) return u->b;
  return u;
}

namespace {

struct SearchNode {
  TermPtr term;
  int parent;
  EquivStep step;
  int side;
};

} // namespace

EquivResult equiv_check(const Env& env, const TermPtr& t, const TermPtr& s, int fuel_nodes, Mode mode) {
  auto ct = infer(env, t, mode);
  auto cs = infer(env, s, mode);
  if (!formula_eq(ct.type, cs.type))
    throw TypeError(TypeErrorKind::TypeMismatch,
                    "equiv_check: the terms have different types (" + to_string(ct.type) + " vs " +
                        to_string(cs.type) + ")");
  auto fvt = free_vars(t), fvs = free_vars(s);
  if (fvt.linear != fvs.linear) return {EquivVerdict::NotEquivalent, {}, 0};

  if (mode == Mode::MLL)
    return {alpha_eq(t, s) ? EquivVerdict::Equivalent : EquivVerdict::NotEquivalent, {}, 0};

  auto key = [](const TermPtr& u) { return to_string(alpha_canon(u)); };

  std::vector<SearchNode> nodes;
  std::unordered_map<std::string, int> seen[2];
  std::deque<int> frontier;
  int meet = -1;

  auto push = [&](const TermPtr& u, int parent, const EquivStep& st, int side) {
    std::string k = key(u);
    auto& mine = seen[side];
    if (mine.count(k)) return;
    nodes.push_back({u, parent, st, side});
    int ix = int(nodes.size()) - 1;
    mine[k] = ix;
    frontier.push_back(ix);
    if (meet < 0 && seen[1 - side].count(k)) meet = ix;
  };

  auto build_path = [&](int meet_ix) {
    std::string k = key(nodes[meet_ix].term);
    int a_ix = seen[0].at(k), b_ix = seen[1].at(k);
    std::vector<EquivStep> path;
    for (int i = a_ix; nodes[i].parent != -1; i = nodes[i].parent) path.push_back(nodes[i].step);
    std::reverse(path.begin(), path.end());
    for (int i = b_ix; nodes[i].parent != -1; i = nodes[i].parent) {
      EquivStep st = nodes[i].step;
      st.forward = !st.forward;
      path.push_back(st);
    }
    return path;
  };

  push(t, -1, {}, 0);
  push(s, -1, {}, 1);
  if (meet >= 0) return {EquivVerdict::Equivalent, {}, 0};

  int explored = 0;
  while (!frontier.empty()) {
    if (explored >= fuel_nodes) return {EquivVerdict::Unknown, {}, explored};
    int ix = frontier.front();
    frontier.pop_front();
    ++explored;
    std::vector<Neighbor> nb;
    try {
      nb = equiv_neighbors(env, nodes[ix].term, true);
    } catch (const TypeError&) {
      continue;
    }
    int side = nodes[ix].side;
    for (auto& [nt, st] : nb) {
      push(nt, ix, st, side);
      if (meet >= 0) return {EquivVerdict::Equivalent, build_path(meet), explored};
    }
  }
  return {EquivVerdict::NotEquivalent, {}, explored};
}

bool is_deep_ctx(const DeepCtx& d) {
  int good = 0, bad = 0;
  std::function<void(const TermPtr&, bool)> walk = [&](const TermPtr& u, bool legal) {
    if (u->tag == TTag::LinVar) {
      if (u->x == d.hole) (legal ? good : bad)++;
      return;
    }
    switch (u->tag) {
      case TTag::OfcIntro:
      case TTag::Lambda:
        if (u->a) walk(u->a, false);
        return;
      case TTag::WhyElim:
        if (u->a) walk(u->a, false); // body position is excluded
        if (u->b) walk(u->b, legal);
        return;
      default:
        if (u->a) walk(u->a, legal);
        if (u->b) walk(u->b, legal);
        return;
    }
  };
  walk(d.skeleton, true);
  return good == 1 && bad == 0;
}

TermPtr plug_deep(const DeepCtx& d, const TermPtr& t) {
  std::function<TermPtr(const TermPtr&)> go = [&](const TermPtr& u) -> TermPtr {
    if (u->tag == TTag::LinVar && u->x == d.hole) return t;
    if (!u->a && !u->b) return u;
    auto r = std::make_shared<Term>(*u);
    if (u->a) r->a = go(u->a);
    if (u->b) r->b = go(u->b);
    return r;
  };
  return go(d.skeleton);
}

DeepCtx dual_deep_ctx(const DeepCtx& d) {
  TermPtr dual = contra_subst(d.skeleton, d.hole, Term::lin_var(d.hole), Mode::MELL);
  return {dual, d.hole};
}

std::pair<TermPtr, TermPtr> cos_via_context(const DeepCtx& d, const TermPtr& t) {
  auto tfv = free_vars(t);
  bool violated = false;
  std::function<void(const TermPtr&, std::set<std::string>, std::set<std::string>)> walk =
      [&](const TermPtr& u, std::set<std::string> lin, std::set<std::string> unr) {
        if (u->tag == TTag::LinVar && u->x == d.hole) {
          for (auto& n : tfv.linear)
            if (lin.count(n)) violated = true;
          for (auto& n : tfv.unrestricted)
            if (unr.count(n)) violated = true;
          return;
        }
        auto lin2 = lin;
        auto unr2 = unr;
        switch (u->tag) {
          case TTag::TensorElim:
          case TTag::ParIntro:
            lin2.insert(u->x);
            lin2.insert(u->y);
            break;
          case TTag::OfcIntro:
          case TTag::Lambda:
          case TTag::WhyElim:
            lin2.insert(u->x);
            break;
          case TTag::OfcElim:
          case TTag::WhyIntro:
            unr2.insert(u->x);
            break;
          default:
            break;
        }
        if (u->a) walk(u->a, lin2, unr2);
        if (u->b) walk(u->b, lin, unr); // scrutinees sit outside the binders
      };
  walk(d.skeleton, {}, {});
  if (violated) throw SubstError("cos_via_context: freeness violation");

  std::set<std::string> avoid = all_fv_names(d.skeleton);
  auto t_names = all_fv_names(t);
  avoid.insert(t_names.begin(), t_names.end());
  std::set<std::string> bound;
  all_names(d.skeleton, bound);
  avoid.insert(bound.begin(), bound.end());
  std::string a = fresh_name("a", avoid);
  TermPtr lhs = contra_subst(plug_deep(d, Term::lin_var(a)), a, t, Mode::MELL);
  TermPtr rhs = plug_deep(dual_deep_ctx(d), t);
  return {lhs, rhs};
}

} // namespace mell
