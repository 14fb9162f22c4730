#include "mell/term.hpp"

#include <cassert>
#include <map>
#include <stdexcept>

namespace mell {

static TermPtr mk(TTag tag, std::string x, std::string y, TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>();
  t->tag = tag;
  t->x = std::move(x);
  t->y = std::move(y);
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

TermPtr Term::lin_var(std::string n) { return mk(TTag::LinVar, std::move(n), "", nullptr, nullptr); }
TermPtr Term::unr_var(std::string n) { return mk(TTag::UnrVar, std::move(n), "", nullptr, nullptr); }
TermPtr Term::pair(TermPtr t, TermPtr s) { return mk(TTag::Pair, "", "", std::move(t), std::move(s)); }
TermPtr Term::tensor_elim(TermPtr body, std::string va, std::string vb, TermPtr scrut) {
  return mk(TTag::TensorElim, std::move(va), std::move(vb), std::move(body), std::move(scrut));
}
TermPtr Term::par_intro(std::string va, std::string vb, TermPtr body) {
  return mk(TTag::ParIntro, std::move(va), std::move(vb), std::move(body), nullptr);
}
TermPtr Term::app(TermPtr t, TermPtr s) { return mk(TTag::App, "", "", std::move(t), std::move(s)); }
TermPtr Term::contra_app(TermPtr t, TermPtr s) { return mk(TTag::ContraApp, "", "", std::move(t), std::move(s)); }
TermPtr Term::ofc_intro(std::string va, TermPtr body) {
  return mk(TTag::OfcIntro, std::move(va), "", std::move(body), nullptr);
}
TermPtr Term::ofc_elim(TermPtr body, std::string vu, TermPtr scrut) {
  return mk(TTag::OfcElim, std::move(vu), "", std::move(body), std::move(scrut));
}
TermPtr Term::why_intro(std::string vu, TermPtr body) {
  return mk(TTag::WhyIntro, std::move(vu), "", std::move(body), nullptr);
}
TermPtr Term::why_elim(TermPtr body, std::string va, TermPtr scrut) {
  return mk(TTag::WhyElim, std::move(va), "", std::move(body), std::move(scrut));
}
TermPtr Term::contra(TermPtr t, TermPtr s) { return mk(TTag::Contra, "", "", std::move(t), std::move(s)); }
TermPtr Term::star() { return mk(TTag::Star, "", "", nullptr, nullptr); }
TermPtr Term::one_elim(TermPtr body, TermPtr scrut) {
  return mk(TTag::OneElim, "", "", std::move(body), std::move(scrut));
}
TermPtr Term::lambda(std::string va, TermPtr body) {
  return mk(TTag::Lambda, std::move(va), "", std::move(body), nullptr);
}

std::string path_to_string(const Path& p) {
  if (p.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

int term_size(const TermPtr& t) {
  switch (t->tag) {
    case TTag::LinVar:
    case TTag::UnrVar:
    case TTag::Star:
      return 0;
    default: {
      int n = 1;
      if (t->a) n += term_size(t->a);
      if (t->b) n += term_size(t->b);
      return n;
    }
  }
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->tag != b->tag || a->x != b->x || a->y != b->y) return false;
  if (!!a->a != !!b->a || !!a->b != !!b->b) return false;
  if (a->a && !term_eq(a->a, b->a)) return false;
  if (a->b && !term_eq(a->b, b->b)) return false;
  return true;
}

bool term_in_mode(const TermPtr& t, Mode mode) {
  switch (t->tag) {
    case TTag::Lambda:
      if (mode != Mode::MLL) return false;
      break;
    case TTag::ParIntro:
    case TTag::OfcIntro:
    case TTag::OfcElim:
    case TTag::WhyIntro:
    case TTag::WhyElim:
    case TTag::Contra:
    case TTag::Star:
    case TTag::OneElim:
    case TTag::UnrVar:
      if (mode != Mode::MELL) return false;
      break;
    default:
      break;
  }
  if (t->a && !term_in_mode(t->a, mode)) return false;
  if (t->b && !term_in_mode(t->b, mode)) return false;
  return true;
}

namespace {

void fv_rec(const TermPtr& t, FreeVars& out) {
  switch (t->tag) {
    case TTag::LinVar:
      out.linear.insert(t->x);
      return;
    case TTag::UnrVar:
      out.unrestricted.insert(t->x);
      return;
    case TTag::Star:
      return;
    case TTag::TensorElim: {
      FreeVars body;
      fv_rec(t->a, body);
      body.linear.erase(t->x);
      body.linear.erase(t->y);
      out.linear.insert(body.linear.begin(), body.linear.end());
      out.unrestricted.insert(body.unrestricted.begin(), body.unrestricted.end());
      fv_rec(t->b, out);
      return;
    }
    case TTag::ParIntro: {
      FreeVars body;
      fv_rec(t->a, body);
      body.linear.erase(t->x);
      body.linear.erase(t->y);
      out.linear.insert(body.linear.begin(), body.linear.end());
      out.unrestricted.insert(body.unrestricted.begin(), body.unrestricted.end());
      return;
    }
    case TTag::OfcIntro:
    case TTag::Lambda: {
      FreeVars body;
      fv_rec(t->a, body);
      body.linear.erase(t->x);
      out.linear.insert(body.linear.begin(), body.linear.end());
      out.unrestricted.insert(body.unrestricted.begin(), body.unrestricted.end());
      return;
    }
    case TTag::WhyElim: {
      FreeVars body;
      fv_rec(t->a, body);
      body.linear.erase(t->x);
      out.linear.insert(body.linear.begin(), body.linear.end());
      out.unrestricted.insert(body.unrestricted.begin(), body.unrestricted.end());
      fv_rec(t->b, out);
      return;
    }
    case TTag::OfcElim: {
      FreeVars body;
      fv_rec(t->a, body);
      body.unrestricted.erase(t->x);
      out.linear.insert(body.linear.begin(), body.linear.end());
      out.unrestricted.insert(body.unrestricted.begin(), body.unrestricted.end());
      fv_rec(t->b, out);
      return;
    }
    case TTag::WhyIntro: {
      FreeVars body;
      fv_rec(t->a, body);
      body.unrestricted.erase(t->x);
      out.linear.insert(body.linear.begin(), body.linear.end());
      out.unrestricted.insert(body.unrestricted.begin(), body.unrestricted.end());
      return;
    }
    default:
      if (t->a) fv_rec(t->a, out);
      if (t->b) fv_rec(t->b, out);
      return;
  }
}

// Counts free occurrences of linear variable `name`.
int count_linear(const TermPtr& t, const std::string& name) {
  switch (t->tag) {
    case TTag::LinVar:
      return t->x == name ? 1 : 0;
    case TTag::UnrVar:
    case TTag::Star:
      return 0;
    case TTag::TensorElim:
    case TTag::ParIntro: {
      int n = 0;
      if (t->x != name && t->y != name) n += count_linear(t->a, name);
      if (t->b) n += count_linear(t->b, name);
      return n;
    }
    case TTag::OfcIntro:
    case TTag::Lambda:
      return t->x == name ? 0 : count_linear(t->a, name);
    case TTag::WhyElim: {
      int n = t->x == name ? 0 : count_linear(t->a, name);
      n += count_linear(t->b, name);
      return n;
    }
    default: {
      int n = 0;
      if (t->a) n += count_linear(t->a, name);
      if (t->b) n += count_linear(t->b, name);
      return n;
    }
  }
}

bool linear_rec(const TermPtr& t, Mode mode) {
  // Check bound-occurrence and subterm conditions; free-occurrence counts are
  // checked once at the root.
  switch (t->tag) {
    case TTag::LinVar:
    case TTag::UnrVar:
    case TTag::Star:
      return true;
    case TTag::TensorElim:
    case TTag::ParIntro: {
      if (t->x == t->y) return false;
      if (count_linear(t->a, t->x) != 1) return false;
      if (count_linear(t->a, t->y) != 1) return false;
      if (!linear_rec(t->a, mode)) return false;
      return t->b ? linear_rec(t->b, mode) : true;
    }
    case TTag::Lambda:
      if (count_linear(t->a, t->x) != 1) return false;
      return linear_rec(t->a, mode);
    case TTag::OfcIntro: {
      if (count_linear(t->a, t->x) != 1) return false;
      if (mode == Mode::MELL) {
        auto fl = free_linear(t->a);
        fl.erase(t->x);
        if (!fl.empty()) return false;
      }
      return linear_rec(t->a, mode);
    }
    case TTag::WhyElim: {
      if (count_linear(t->a, t->x) != 1) return false;
      if (mode == Mode::MELL) {
        auto fl = free_linear(t->a);
        fl.erase(t->x);
        if (!fl.empty()) return false;
      }
      if (!linear_rec(t->a, mode)) return false;
      return linear_rec(t->b, mode);
    }
    default: {
      if (t->a && !linear_rec(t->a, mode)) return false;
      if (t->b && !linear_rec(t->b, mode)) return false;
      return true;
    }
  }
}

} // namespace

FreeVars free_vars(const TermPtr& t) {
  FreeVars out;
  fv_rec(t, out);
  return out;
}

std::set<std::string> free_linear(const TermPtr& t) { return free_vars(t).linear; }

void all_names(const TermPtr& t, std::set<std::string>& out) {
  if (!t->x.empty()) out.insert(t->x);
  if (!t->y.empty()) out.insert(t->y);
  if (t->a) all_names(t->a, out);
  if (t->b) all_names(t->b, out);
}

bool is_linear(const TermPtr& t, Mode mode) {
  for (const auto& v : free_linear(t))
    if (count_linear(t, v) != 1) return false;
  return linear_rec(t, mode);
}

namespace {

struct CanonState {
  int next = 0;
  std::string fresh() { return "#" + std::to_string(next++); }
};

using NameMap = std::map<std::string, std::string>;

TermPtr canon_rec(const TermPtr& t, const NameMap& lin, const NameMap& unr, CanonState& st) {
  switch (t->tag) {
    case TTag::LinVar: {
      auto it = lin.find(t->x);
      return Term::lin_var(it != lin.end() ? it->second : t->x);
    }
    case TTag::UnrVar: {
      auto it = unr.find(t->x);
      return Term::unr_var(it != unr.end() ? it->second : t->x);
    }
    case TTag::Star:
      return t;
    case TTag::TensorElim: {
      auto scrut = canon_rec(t->b, lin, unr, st);
      NameMap lin2 = lin;
      std::string nx = st.fresh(), ny = st.fresh();
      lin2[t->x] = nx;
      lin2[t->y] = ny;
      return Term::tensor_elim(canon_rec(t->a, lin2, unr, st), nx, ny, scrut);
    }
    case TTag::ParIntro: {
      NameMap lin2 = lin;
      std::string nx = st.fresh(), ny = st.fresh();
      lin2[t->x] = nx;
      lin2[t->y] = ny;
      return Term::par_intro(nx, ny, canon_rec(t->a, lin2, unr, st));
    }
    case TTag::Lambda: {
      NameMap lin2 = lin;
      std::string nx = st.fresh();
      lin2[t->x] = nx;
      return Term::lambda(nx, canon_rec(t->a, lin2, unr, st));
    }
    case TTag::OfcIntro: {
      NameMap lin2 = lin;
      std::string nx = st.fresh();
      lin2[t->x] = nx;
      return Term::ofc_intro(nx, canon_rec(t->a, lin2, unr, st));
    }
    case TTag::WhyElim: {
      NameMap lin2 = lin;
      std::string nx = st.fresh();
      lin2[t->x] = nx;
      auto body = canon_rec(t->a, lin2, unr, st);
      return Term::why_elim(body, nx, canon_rec(t->b, lin, unr, st));
    }
    case TTag::OfcElim: {
      NameMap unr2 = unr;
      std::string nx = st.fresh();
      unr2[t->x] = nx;
      auto body = canon_rec(t->a, lin, unr2, st);
      return Term::ofc_elim(body, nx, canon_rec(t->b, lin, unr, st));
    }
    case TTag::WhyIntro: {
      NameMap unr2 = unr;
      std::string nx = st.fresh();
      unr2[t->x] = nx;
      return Term::why_intro(nx, canon_rec(t->a, lin, unr2, st));
    }
    default: {
      auto r = std::make_shared<Term>(*t);
      if (t->a) r->a = canon_rec(t->a, lin, unr, st);
      if (t->b) r->b = canon_rec(t->b, lin, unr, st);
      return r;
    }
  }
}

} // namespace

TermPtr alpha_canon(const TermPtr& t) {
  CanonState st;
  return canon_rec(t, {}, {}, st);
}

bool alpha_eq(const TermPtr& t, const TermPtr& s) {
  return term_eq(alpha_canon(t), alpha_canon(s));
}

TermPtr subterm_at(const TermPtr& t, const Path& p) {
  TermPtr cur = t;
  for (int i : p) {
    cur = i == 0 ? cur->a : cur->b;
    if (!cur) throw std::out_of_range("subterm_at: bad path");
  }
  return cur;
}

TermPtr replace_at(const TermPtr& t, const Path& p, const TermPtr& repl) {
  if (p.empty()) return repl;
  auto r = std::make_shared<Term>(*t);
  Path rest(p.begin() + 1, p.end());
  if (p[0] == 0)
    r->a = replace_at(t->a, rest, repl);
  else
    r->b = replace_at(t->b, rest, repl);
  return r;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

TermPtr plug(const TermPtr& t, const ElimSpine& L) {
  TermPtr cur = t;
  for (const auto& e : L) {
    switch (e.kind) {
      case ElimKind::Tensor: cur = Term::tensor_elim(cur, e.x, e.y, e.scrut); break;
      case ElimKind::Ofc: cur = Term::ofc_elim(cur, e.x, e.scrut); break;
      case ElimKind::One: cur = Term::one_elim(cur, e.scrut); break;
    }
  }
  return cur;
}

void strip_spine(const TermPtr& t, Mode mode, TermPtr& head, ElimSpine& L) {
  // Outermost eliminator is last in L.
  if (t->tag == TTag::TensorElim) {
    strip_spine(t->a, mode, head, L);
    L.push_back({ElimKind::Tensor, t->x, t->y, t->b});
    return;
  }
  if (mode == Mode::MELL && t->tag == TTag::OfcElim) {
    strip_spine(t->a, mode, head, L);
    L.push_back({ElimKind::Ofc, t->x, "", t->b});
    return;
  }
  if (mode == Mode::MELL && t->tag == TTag::OneElim) {
    strip_spine(t->a, mode, head, L);
    L.push_back({ElimKind::One, "", "", t->b});
    return;
  }
  head = t;
}

} // namespace mell
