#include <doctest.h>

#include "mell/parser.hpp"
#include "mell/printer.hpp"
#include "mell/substitution.hpp"

using namespace mell;

namespace {

TermPtr T(const char* s, Mode m = Mode::MELL) { return parse_term(s, m); }

} // namespace

TEST_CASE("linear substitution") {
  CHECK(alpha_eq(subst_linear(T("a"), "a", T("s")), T("s")));
  CHECK(alpha_eq(subst_linear(T("t # b"), "b", T("r")), T("t # r")));
  // capture avoidance: binder renamed away from the substituend's variables
  auto r = subst_linear(T("par b c. (a # b)[* := c]"), "a", T("b # d"));
  CHECK(alpha_eq(r, T("par e f. ((b # d) # e)[* := f]")));
  // size identity |t{a:=s}| = |t| + |s| when a free
  auto t = T("(a # b)[* := c]");
  auto s = T("(x, y)");
  CHECK(term_size(subst_linear(t, "a", s)) == term_size(t) + term_size(s));
}

TEST_CASE("unrestricted substitution") {
  CHECK(alpha_eq(subst_unrestricted(T("$u"), "u", T("s")), T("s")));
  CHECK(alpha_eq(subst_unrestricted(Term::star(), "u", T("s")), Term::star()));
  // two occurrences both replaced
  CHECK(alpha_eq(subst_unrestricted(T("$u # $u"), "u", T("s # r")), T("(s # r) # (s # r)")));
}

TEST_CASE("MLL contra-substitution follows the clause table") {
  // the worked chain: (\b. a @ b)((a := s)) = (b, c)[(b,c) := s]
  auto lhs = contra_subst(T("\\b. a @ b", Mode::MLL), "a", T("s", Mode::MLL), Mode::MLL);
  CHECK(alpha_eq(lhs, T("(b, c)[(b,c) := s]", Mode::MLL)));

  CHECK(alpha_eq(contra_subst(T("a", Mode::MLL), "a", T("s", Mode::MLL), Mode::MLL), T("s", Mode::MLL)));

  // pair with a on the right: s applied to the remaining component
  CHECK(alpha_eq(contra_subst(T("(t, a)", Mode::MLL), "a", T("s", Mode::MLL), Mode::MLL),
                 T("s @ t", Mode::MLL)));
  CHECK(alpha_eq(contra_subst(T("(a, t)", Mode::MLL), "a", T("s", Mode::MLL), Mode::MLL),
                 T("s ~@ t", Mode::MLL)));

  // applications
  CHECK(alpha_eq(contra_subst(T("a @ t", Mode::MLL), "a", T("s", Mode::MLL), Mode::MLL),
                 T("(t, s)", Mode::MLL)));
  CHECK(alpha_eq(contra_subst(T("t @ a", Mode::MLL), "a", T("s", Mode::MLL), Mode::MLL),
                 T("t ~@ s", Mode::MLL)));
  CHECK(alpha_eq(contra_subst(T("a ~@ t", Mode::MLL), "a", T("s", Mode::MLL), Mode::MLL),
                 T("(s, t)", Mode::MLL)));
  CHECK(alpha_eq(contra_subst(T("t ~@ a", Mode::MLL), "a", T("s", Mode::MLL), Mode::MLL),
                 T("t @ s", Mode::MLL)));

  // tensor elimination, both branches
  CHECK(alpha_eq(contra_subst(T("a[(b,c) := t]", Mode::MLL), "a", T("s", Mode::MLL), Mode::MLL),
                 T("s[(b,c) := t]", Mode::MLL)));
  auto te = contra_subst(T("(b @ c)[(b,c) := a]", Mode::MLL), "a", T("s", Mode::MLL), Mode::MLL);
  // a((a := \b. (b @ c)((c := s)))) = \b. t' where t' = (b @ c)((c := s)) = b ~@ s
  CHECK(alpha_eq(te, T("\\b. b ~@ s", Mode::MLL)));
}

TEST_CASE("MELL contra-substitution follows the clause table") {
  // the worked example: ((par c d. s)[* := a] @ t)((a := *)) = (par c d. s) # (t, *)
  auto t = T("(par c d. s)[* := a] @ t");
  auto r = contra_subst(t, "a", Term::star(), Mode::MELL);
  CHECK(alpha_eq(r, T("(par c d. s) # (t, *)")));

  CHECK(alpha_eq(contra_subst(T("a"), "a", T("s"), Mode::MELL), T("s")));

  // contradiction, right component: (t # a)((a := s)) = t[* := s] shape
  CHECK(alpha_eq(contra_subst(T("t # a"), "a", T("s"), Mode::MELL), T("t[* := s]")));
  CHECK(alpha_eq(contra_subst(T("a # t"), "a", T("s"), Mode::MELL), T("t[* := s]")));

  // par intro
  CHECK(alpha_eq(contra_subst(T("par b c. (b # c)[* := a]"), "a", T("s"), Mode::MELL),
                 T("(b # c)[(b,c) := s]")));

  // of-course eliminator, both branches
  CHECK(alpha_eq(contra_subst(T("a[!$u := t]"), "a", T("s"), Mode::MELL), T("s[!$u := t]")));
  auto oe = contra_subst(T("($u # b)[!$u := a]"), "a", T("s"), Mode::MELL);
  // t2 = a, so: a((a := wn $u.(t1 # s))) = wn $u. (($u # b) # s)
  CHECK(alpha_eq(oe, T("wn $u. ($u # b) # s")));

  // why-not intro
  auto wi = contra_subst(T("wn $u. a # $u"), "a", T("s"), Mode::MELL);
  // (wn u. t)((a:=s)) = t((a:=*))[!u := s]; t((a:=*)) = (a # $u)((a:=*)) = $u[* := *]
  CHECK(alpha_eq(wi, T("$u[* := *][!$u := s]")));

  // wncase (why-not eliminator), scrutinee branch
  auto we = contra_subst(T("wncase a with b. b # $u"), "a", T("s"), Mode::MELL);
  CHECK(alpha_eq(we, T("(bang b. b # $u)[* := s]")));

  // unit eliminator, both branches
  CHECK(alpha_eq(contra_subst(T("a[* := t]"), "a", T("s"), Mode::MELL), T("s[* := t]")));
  CHECK(alpha_eq(contra_subst(T("t[* := a]"), "a", T("s"), Mode::MELL), T("t # s")));

  // impossible cases
  CHECK_THROWS_AS(contra_subst(T("(a, a)"), "a", T("s"), Mode::MELL), SubstError);
  CHECK_THROWS_AS(contra_subst(T("b"), "a", T("s"), Mode::MELL), SubstError);
}

TEST_CASE("size laws for both substitutions on linear MLL terms") {
  // |t((a:=s))| = |t| + |s| when a is free in t
  std::vector<const char*> ts = {"a", "(a, t)", "t @ a", "\\b. a @ b", "a[(b,c) := t]",
                                 "(b @ c)[(b,c) := a]", "t ~@ a"};
  auto s = T("(x, \\y. y)", Mode::MLL);
  for (auto* src : ts) {
    auto t = T(src, Mode::MLL);
    CHECK(term_size(contra_subst(t, "a", s, Mode::MLL)) == term_size(t) + term_size(s));
    CHECK(term_size(subst_linear(t, "a", s)) == term_size(t) + term_size(s));
  }
}

TEST_CASE("contra/subst commutation") {
  // t((a:=s)){b:=r} = t{b:=r}((a := s{b:=r})), with b occurring at most once
  auto t = T("a # b");
  auto s = T("c # d");
  auto r = T("x");
  auto lhs = subst_linear(contra_subst(t, "a", s, Mode::MELL), "b", r);
  auto rhs = contra_subst(subst_linear(t, "b", r), "a", s);
  CHECK(alpha_eq(lhs, rhs));

  auto t2 = T("a # e");
  auto s2 = T("c # b");
  auto lhs2 = subst_linear(contra_subst(t2, "a", s2, Mode::MELL), "b", r);
  auto rhs2 = contra_subst(t2, "a", subst_linear(s2, "b", r));
  CHECK(alpha_eq(lhs2, rhs2));
}

TEST_CASE("typed compatibility of contra-substitution") {
  auto src = parse_source("linear a : x; linear k : ~x; a # k", Mode::MELL);
  Env e1;
  e1.linear = src.linear;
  auto dt = check(e1, src.term, Mode::MELL);

  // s : ~bot = 1
  Env e2;
  e2.linear["p"] = parse_formula("1", Mode::MELL);
  auto ds = check(e2, T("p"), Mode::MELL);

  auto d = check_contra_typing(dt, "a", ds);
  CHECK(to_string(d->type) == "~x");
  CHECK(d->gamma.size() == 2); // k and p

  // wrong argument type is rejected
  Env e3;
  e3.linear["q"] = parse_formula("x", Mode::MELL);
  auto dq = check(e3, T("q"), Mode::MELL);
  CHECK_THROWS_AS(check_contra_typing(dt, "a", dq), TypeError);
}

TEST_CASE("barendregt renames shadowing binders apart") {
  auto t = T("(par a b. a # b) # (par a b. b # a)");
  auto u = barendregt(t);
  CHECK(alpha_eq(t, u));
  std::set<std::string> names;
  all_names(u, names);
  CHECK(names.size() >= 4);
}
