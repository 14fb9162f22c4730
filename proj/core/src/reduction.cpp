#include "mell/reduction.hpp"

#include <deque>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "mell/printer.hpp"
#include "mell/substitution.hpp"

namespace mell {

std::string to_string(RedexAxiom ax) {
  switch (ax) {
    case RedexAxiom::BetaParL: return "beta-par-l";
    case RedexAxiom::BetaParR: return "beta-par-r";
    case RedexAxiom::BetaTensor: return "beta-tensor";
    case RedexAxiom::BetaBang: return "beta-bang";
    case RedexAxiom::BetaWn: return "beta-wn";
    case RedexAxiom::ParTensor: return "par-tensor";
    case RedexAxiom::TensorPar: return "tensor-par";
    case RedexAxiom::BangWn: return "bang-wn";
    case RedexAxiom::WnBang: return "wn-bang";
    case RedexAxiom::BetaLamL: return "beta-lam-l";
    case RedexAxiom::BetaLamR: return "beta-lam-r";
  }
  return "?";
}

namespace {

TTag head_tag(const TermPtr& t, Mode mode) {
  TermPtr head;
  ElimSpine L;
  strip_spine(t, mode, head, L);
  return head->tag;
}

std::optional<RedexAxiom> match_axiom(const TermPtr& u, Mode mode) {
  if (mode == Mode::MLL) {
    switch (u->tag) {
      case TTag::App:
        if (head_tag(u->a, mode) == TTag::Lambda) return RedexAxiom::BetaLamL;
        return std::nullopt;
      case TTag::ContraApp:
        if (head_tag(u->a, mode) == TTag::Lambda) return RedexAxiom::BetaLamR;
        return std::nullopt;
      case TTag::TensorElim:
        if (head_tag(u->b, mode) == TTag::Pair) return RedexAxiom::BetaTensor;
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }
  switch (u->tag) {
    case TTag::App:
      if (head_tag(u->a, mode) == TTag::ParIntro) return RedexAxiom::BetaParL;
      return std::nullopt;
    case TTag::ContraApp:
      if (head_tag(u->a, mode) == TTag::ParIntro) return RedexAxiom::BetaParR;
      return std::nullopt;
    case TTag::TensorElim:
      if (head_tag(u->b, mode) == TTag::Pair) return RedexAxiom::BetaTensor;
      return std::nullopt;
    case TTag::OfcElim:
      if (head_tag(u->b, mode) == TTag::OfcIntro) return RedexAxiom::BetaBang;
      return std::nullopt;
    case TTag::WhyElim:
      if (head_tag(u->b, mode) == TTag::WhyIntro) return RedexAxiom::BetaWn;
      return std::nullopt;
    case TTag::Contra: {
      TTag l = head_tag(u->a, mode), r = head_tag(u->b, mode);
      if (l == TTag::ParIntro && r == TTag::Pair) return RedexAxiom::ParTensor;
      if (l == TTag::Pair && r == TTag::ParIntro) return RedexAxiom::TensorPar;
      if (l == TTag::OfcIntro && r == TTag::WhyIntro) return RedexAxiom::BangWn;
      if (l == TTag::WhyIntro && r == TTag::OfcIntro) return RedexAxiom::WnBang;
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

void find_rec(const TermPtr& u, Mode mode, Path& p, std::vector<Redex>& out) {
  if (auto ax = match_axiom(u, mode)) out.push_back({p, *ax});
  if (u->a) {
    p.push_back(0);
    find_rec(u->a, mode, p, out);
    p.pop_back();
  }
  if (u->b) {
    p.push_back(1);
    find_rec(u->b, mode, p, out);
    p.pop_back();
  }
}

[[noreturn]] void stale(const Redex& r) {
  throw SubstError("stale redex: " + to_string(r.axiom) + " @ " + path_to_string(r.pos));
}

TermPtr contract(const TermPtr& u0, const Redex& r, Mode mode) {
  TermPtr u = barendregt(u0);
  switch (r.axiom) {
    case RedexAxiom::BetaParL:
    case RedexAxiom::BetaParR: {
      if (u->tag != (r.axiom == RedexAxiom::BetaParL ? TTag::App : TTag::ContraApp)) stale(r);
      TermPtr head;
      ElimSpine L;
      strip_spine(u->a, mode, head, L);
      if (head->tag != TTag::ParIntro) stale(r);
      TermPtr body;
      if (r.axiom == RedexAxiom::BetaParL)
        body = contra_subst(subst_linear(head->a, head->x, u->b), head->y, Term::star(), mode);
      else
        body = contra_subst(subst_linear(head->a, head->y, u->b), head->x, Term::star(), mode);
      return plug(body, L);
    }
    case RedexAxiom::BetaLamL:
    case RedexAxiom::BetaLamR: {
      if (u->tag != (r.axiom == RedexAxiom::BetaLamL ? TTag::App : TTag::ContraApp)) stale(r);
      TermPtr head;
      ElimSpine L;
      strip_spine(u->a, mode, head, L);
      if (head->tag != TTag::Lambda) stale(r);
      TermPtr body = r.axiom == RedexAxiom::BetaLamL ? subst_linear(head->a, head->x, u->b)
                                                     : contra_subst(head->a, head->x, u->b, mode);
      return plug(body, L);
    }
    case RedexAxiom::BetaTensor: {
      if (u->tag != TTag::TensorElim) stale(r);
      TermPtr head;
      ElimSpine L;
      strip_spine(u->b, mode, head, L);
      if (head->tag != TTag::Pair) stale(r);
      TermPtr body = subst_linear(subst_linear(u->a, u->x, head->a), u->y, head->b);
      return plug(body, L);
    }
    case RedexAxiom::BetaBang: {
      if (u->tag != TTag::OfcElim) stale(r);
      TermPtr head;
      ElimSpine L;
      strip_spine(u->b, mode, head, L);
      if (head->tag != TTag::OfcIntro) stale(r);
      TermPtr arg = contra_subst(head->a, head->x, Term::star(), mode);
      return plug(subst_unrestricted(u->a, u->x, arg), L);
    }
    case RedexAxiom::BetaWn: {
      if (u->tag != TTag::WhyElim) stale(r);
      TermPtr head;
      ElimSpine L;
      strip_spine(u->b, mode, head, L);
      if (head->tag != TTag::WhyIntro) stale(r);
      TermPtr arg = contra_subst(u->a, u->x, Term::star(), mode);
      return plug(subst_unrestricted(head->a, head->x, arg), L);
    }
    case RedexAxiom::ParTensor:
    case RedexAxiom::TensorPar: {
      if (u->tag != TTag::Contra) stale(r);
      TermPtr hl, hr;
      ElimSpine L, K;
      strip_spine(u->a, mode, hl, L);
      strip_spine(u->b, mode, hr, K);
      TermPtr par = r.axiom == RedexAxiom::ParTensor ? hl : hr;
      TermPtr pr = r.axiom == RedexAxiom::ParTensor ? hr : hl;
      if (par->tag != TTag::ParIntro || pr->tag != TTag::Pair) stale(r);
      TermPtr body = subst_linear(subst_linear(par->a, par->x, pr->a), par->y, pr->b);
      return plug(plug(body, L), K);
    }
    case RedexAxiom::BangWn:
    case RedexAxiom::WnBang: {
      if (u->tag != TTag::Contra) stale(r);
      TermPtr hl, hr;
      ElimSpine L, K;
      strip_spine(u->a, mode, hl, L);
      strip_spine(u->b, mode, hr, K);
      TermPtr bang = r.axiom == RedexAxiom::BangWn ? hl : hr;
      TermPtr wn = r.axiom == RedexAxiom::BangWn ? hr : hl;
      if (bang->tag != TTag::OfcIntro || wn->tag != TTag::WhyIntro) stale(r);
      TermPtr arg = contra_subst(bang->a, bang->x, Term::star(), mode);
      TermPtr body = subst_unrestricted(wn->a, wn->x, arg);
      return plug(plug(body, L), K);
    }
  }
  throw std::logic_error("contract: bad axiom");
}

} // namespace

std::vector<Redex> find_pre_redexes(const TermPtr& t, Mode mode) {
  std::vector<Redex> out;
  Path p;
  find_rec(t, mode, p, out);
  return out;
}

TermPtr pre_step(const TermPtr& t, const Redex& r, Mode mode) {
  TermPtr u = subterm_at(t, r.pos);
  auto ax = match_axiom(u, mode);
  if (!ax || *ax != r.axiom) stale(r);
  return replace_at(t, r.pos, contract(u, r, mode));
}

namespace {

std::string canon_key(const TermPtr& t) { return to_string(alpha_canon(t)); }

// Enumerates the equivalence class of t using size-bounded moves only (the
// pure expansions are excluded, which keeps the class finite); returns the
// members with their bridge paths.
struct ClassMember {
  TermPtr term;
  std::vector<EquivStep> bridge;
};

std::vector<ClassMember> explore_class(const Env& env, const TermPtr& t, Mode mode, int node_fuel,
                                       bool& exhausted_fuel) {
  std::vector<ClassMember> out;
  if (mode == Mode::MLL) {
    out.push_back({t, {}});
    return out;
  }
  std::unordered_set<std::string> seen;
  std::deque<size_t> frontier;
  out.push_back({t, {}});
  seen.insert(canon_key(t));
  frontier.push_back(0);
  exhausted_fuel = false;
  while (!frontier.empty()) {
    if (int(out.size()) >= node_fuel) {
      exhausted_fuel = true;
      break;
    }
    size_t ix = frontier.front();
    frontier.pop_front();
    std::vector<std::pair<TermPtr, EquivStep>> nb;
    try {
      nb = equiv_neighbors(env, out[ix].term, false);
    } catch (const TypeError&) {
      continue;
    }
    auto bridge = out[ix].bridge;
    for (auto& [nt, st] : nb) {
      std::string k = canon_key(nt);
      if (seen.count(k)) continue;
      seen.insert(k);
      auto b2 = bridge;
      b2.push_back(st);
      out.push_back({nt, std::move(b2)});
      frontier.push_back(out.size() - 1);
    }
  }
  return out;
}

} // namespace

StepResult step_modulo(const Env& env, const TermPtr& t, Mode mode, const ReduceFuel& fuel) {
  StepResult res;
  bool exhausted = false;
  auto members = explore_class(env, t, mode, fuel.class_nodes, exhausted);
  res.fuel_exhausted = exhausted;
  std::unordered_set<std::string> seen;
  for (auto& m : members) {
    for (auto& rdx : find_pre_redexes(m.term, mode)) {
      TermPtr after = pre_step(m.term, rdx, mode);
      TermPtr rep = simplify(after);
      std::string k = canon_key(rep);
      if (seen.count(k)) continue;
      seen.insert(k);
      res.successors.push_back({rep, {m.bridge, rdx, m.term, after}});
    }
  }
  return res;
}

NormalizeResult normalize(const Env& env, const TermPtr& t, Mode mode, Strategy strategy,
                          const ReduceFuel& fuel) {
  NormalizeResult res;
  if (strategy == Strategy::FullSearch) {
    // exhaustive exploration; returns the first normal form found but checks
    // the whole graph (used by the metatheory harnesses)
    auto all = normal_forms(env, t, mode, fuel);
    res.normal_form = all.normal_forms.empty() ? simplify(t) : all.normal_forms.front();
    res.fuel_exhausted = all.fuel_exhausted;
    return res;
  }
  TermPtr cur = t;
  for (;;) {
    if (res.steps >= fuel.steps) {
      res.fuel_exhausted = true;
      break;
    }
    auto redexes = find_pre_redexes(cur, mode);
    if (redexes.empty()) break; // structural equivalence is a strong
                                // bisimulation, so the whole class is normal
    const Redex& r = redexes.front();
    TermPtr after = pre_step(cur, r, mode);
    TermPtr rep = mode == Mode::MELL ? simplify(after) : after;
    res.trace.push_back({{}, r, cur, after});
    cur = rep;
    ++res.steps;
  }
  res.normal_form = cur;
  return res;
}

FullSearchResult normal_forms(const Env& env, const TermPtr& t, Mode mode, const ReduceFuel& fuel) {
  FullSearchResult res;
  std::unordered_set<std::string> seen, nf_keys;
  std::deque<TermPtr> frontier;
  TermPtr start = mode == Mode::MELL ? simplify(t) : t;
  frontier.push_back(start);
  seen.insert(canon_key(start));
  while (!frontier.empty()) {
    if (res.nodes >= fuel.steps) {
      res.fuel_exhausted = true;
      break;
    }
    TermPtr cur = frontier.front();
    frontier.pop_front();
    ++res.nodes;
    auto sr = step_modulo(env, cur, mode, fuel);
    if (sr.fuel_exhausted) res.fuel_exhausted = true;
    if (sr.successors.empty()) {
      std::string k = canon_key(cur);
      if (!nf_keys.count(k)) {
        nf_keys.insert(k);
        res.normal_forms.push_back(cur);
      }
      continue;
    }
    for (auto& s : sr.successors) {
      std::string k = canon_key(s.rep);
      if (seen.count(k)) continue;
      seen.insert(k);
      frontier.push_back(s.rep);
    }
  }
  return res;
}

namespace {

int tml_rec(const Env& env, const TermPtr& t, Mode mode, const ReduceFuel& fuel,
            std::unordered_map<std::string, int>* memo, int& budget) {
  if (budget-- <= 0) throw FuelExhausted("tml: fuel exhausted");
  std::string k = canon_key(t);
  if (memo) {
    auto it = memo->find(k);
    if (it != memo->end()) return it->second;
  }
  int best = 0;
  for (auto& rdx : find_pre_redexes(t, mode)) {
    TermPtr next = mode == Mode::MELL ? simplify(pre_step(t, rdx, mode)) : pre_step(t, rdx, mode);
    best = std::max(best, 1 + tml_rec(env, next, mode, fuel, memo, budget));
  }
  if (memo) (*memo)[k] = best;
  return best;
}

} // namespace

int tml(const Env& env, const TermPtr& t, Mode mode, const ReduceFuel& fuel, bool use_memo) {
  std::unordered_map<std::string, int> memo;
  int budget = fuel.steps;
  return tml_rec(env, t, mode, fuel, use_memo ? &memo : nullptr, budget);
}

JoinReport wcr_join(const Env& env, const TermPtr& t, Mode mode, const ReduceFuel& fuel) {
  JoinReport rep;
  auto sr = step_modulo(env, t, mode, fuel);
  auto& succ = sr.successors;
  for (size_t i = 0; i < succ.size(); ++i) {
    for (size_t j = i + 1; j < succ.size(); ++j) {
      ++rep.pairs;
      auto nfi = normal_forms(env, succ[i].rep, mode, fuel);
      auto nfj = normal_forms(env, succ[j].rep, mode, fuel);
      if (nfi.fuel_exhausted || nfj.fuel_exhausted) {
        rep.unknown = true;
        continue;
      }
      bool found = false;
      bool saw_unknown = false;
      for (auto& a : nfi.normal_forms) {
        for (auto& b : nfj.normal_forms) {
          auto e = equiv_check(env, a, b, fuel.equiv_nodes, mode);
          if (e.verdict == EquivVerdict::Equivalent) {
            found = true;
            break;
          }
          if (e.verdict == EquivVerdict::Unknown) saw_unknown = true;
        }
        if (found) break;
      }
      if (!found) {
        if (saw_unknown) {
          rep.unknown = true;
        } else {
          rep.joined = false;
          rep.detail = "reduct pair " + std::to_string(i) + "/" + std::to_string(j) +
                       " has no common reduct: " + to_string(succ[i].rep) + "  vs  " +
                       to_string(succ[j].rep);
          return rep;
        }
      }
    }
  }
  return rep;
}

namespace {

bool match_one_side(const Env& env, const TermPtr& stepped, const TermPtr& other, Mode mode,
                    const ReduceFuel& fuel, bool& unknown) {
  // find a pre-step of `other` equivalent to `stepped`
  for (auto& rdx : find_pre_redexes(other, mode)) {
    TermPtr cand = pre_step(other, rdx, mode);
    auto e = equiv_check(env, stepped, cand, fuel.equiv_nodes, mode);
    if (e.verdict == EquivVerdict::Equivalent) return true;
    if (e.verdict == EquivVerdict::Unknown) unknown = true;
  }
  return false;
}

} // namespace

BisimReport bisim_check(const Env& env, const TermPtr& t, const TermPtr& s, Mode mode,
                        const ReduceFuel& fuel) {
  BisimReport rep;
  auto pre = equiv_check(env, t, s, fuel.equiv_nodes, mode);
  if (pre.verdict != EquivVerdict::Equivalent) {
    rep.ok = false;
    rep.unknown = pre.verdict == EquivVerdict::Unknown;
    rep.detail = "the terms are not established equivalent";
    return rep;
  }
  auto one_direction = [&](const TermPtr& from, const TermPtr& to, const char* label) {
    for (auto& rdx : find_pre_redexes(from, mode)) {
      TermPtr stepped = pre_step(from, rdx, mode);
      bool unknown = false;
      if (!match_one_side(env, stepped, to, mode, fuel, unknown)) {
        if (unknown) {
          rep.unknown = true;
        } else {
          rep.ok = false;
          rep.detail = std::string(label) + " step " + to_string(rdx.axiom) + " @ " +
                       path_to_string(rdx.pos) + " has no matching step";
          return false;
        }
      }
    }
    return true;
  };
  if (!one_direction(t, s, "left")) return rep;
  one_direction(s, t, "right");
  return rep;
}

} // namespace mell
