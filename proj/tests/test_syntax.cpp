#include <doctest.h>

#include "mell/parser.hpp"
#include "mell/printer.hpp"
#include "mell/substitution.hpp"

using namespace mell;

TEST_CASE("negation is involutive on the defining equations") {
  auto A = Formula::atom("a");
  auto B = Formula::atom("b");
  CHECK(formula_eq(negate(Formula::tensor(A, B), Mode::MELL),
                   Formula::par(Formula::neg_atom("a"), Formula::neg_atom("b"))));
  CHECK(formula_eq(negate(Formula::one(), Mode::MELL), Formula::bottom()));
  auto ofc = Formula::of_course(A);
  CHECK(formula_eq(negate(negate(ofc, Mode::MELL), Mode::MELL), ofc));
  // MLL: ~(A * B) = A -o ~B and back
  auto t = Formula::tensor(A, B);
  CHECK(formula_eq(negate(t, Mode::MLL), Formula::lin_imp(A, Formula::neg_atom("b"))));
  CHECK(formula_eq(negate(negate(t, Mode::MLL), Mode::MLL), t));
}

TEST_CASE("formula parsing and printing round-trip") {
  for (const char* src : {"a", "~a", "1", "bot", "!a * ?b", "a par b par c", "(a par b) * !(c par d)",
                          "!(a -o b)"}) {
    auto f = parse_formula(src, Mode::MELL);
    auto g = parse_formula(to_string(f), Mode::MELL);
    CHECK(formula_eq(f, g));
  }
  // -o desugars in MELL
  CHECK(formula_eq(parse_formula("a -o b", Mode::MELL), parse_formula("~a par b", Mode::MELL)));
  // but stays primitive in MLL
  CHECK(parse_formula("a -o b", Mode::MLL)->tag == FTag::LinImp);
  CHECK_THROWS_AS(parse_formula("a par b", Mode::MLL), ParseError);
}

TEST_CASE("term parsing and printing round-trip") {
  for (const char* src :
       {"a", "$u", "*", "(a, b)", "a @ b", "a ~@ b", "a # b", "par a b. a # b", "bang a. a # $u",
        "wn $u. $u # $v", "wncase s with a. a # $u", "a[(b,c) := d]", "a[!$u := b]", "a[* := b]",
        "x[(a,b) := (c, d)][* := e]", "(a # b) @ c", "a # b @ c", "(par a b. a # b) ~@ r"}) {
    auto t = parse_term(src, Mode::MELL);
    auto s = parse_term(to_string(t), Mode::MELL);
    CHECK(alpha_eq(t, s));
    CHECK(term_eq(t, s)); // printing preserves names exactly
  }
  for (const char* src : {"\\x. x", "\\x. \\y. x @ y", "x ~@ \\y. y", "(x, y)[(a,b) := z]"}) {
    auto t = parse_term(src, Mode::MLL);
    auto s = parse_term(to_string(t), Mode::MLL);
    CHECK(term_eq(t, s));
  }
}

TEST_CASE("free variables follow the binder table") {
  auto t = parse_term("par a b. a # b", Mode::MELL);
  CHECK(free_vars(t).linear.empty());
  CHECK(free_vars(t).unrestricted.empty());

  // x # bang a. ($u # a)  has free {x} and {$u}
  auto s = parse_term("x # bang a. $u # a", Mode::MELL);
  auto fv = free_vars(s);
  CHECK(fv.linear == std::set<std::string>{"x"});
  CHECK(fv.unrestricted == std::set<std::string>{"u"});

  CHECK(free_vars(Term::star()).linear.empty());

  // wncase binds its variable in the body, not the scrutinee
  auto w = parse_term("wncase s with a. a # $u", Mode::MELL);
  CHECK(free_vars(w).linear == std::set<std::string>{"s"});
}

TEST_CASE("linearity") {
  CHECK(is_linear(parse_term("a", Mode::MELL), Mode::MELL));
  CHECK_FALSE(is_linear(parse_term("(a, a)", Mode::MELL), Mode::MELL));
  // bang body may not capture outer linear variables
  CHECK_FALSE(is_linear(parse_term("bang a. a # x", Mode::MELL), Mode::MELL));
  CHECK(is_linear(parse_term("bang a. a # $u", Mode::MELL), Mode::MELL));
  // wncase body closes over exactly its binder
  CHECK_FALSE(is_linear(parse_term("wncase s with a. a # x", Mode::MELL), Mode::MELL));
  // bound variables must occur
  CHECK_FALSE(is_linear(parse_term("par a b. a # c", Mode::MELL), Mode::MELL));
  // MLL uses occurrence conditions only
  CHECK(is_linear(parse_term("\\x. x @ y", Mode::MLL), Mode::MLL));
  CHECK_FALSE(is_linear(parse_term("\\x. x @ x", Mode::MLL), Mode::MLL));
}

TEST_CASE("alpha equivalence") {
  auto t1 = parse_term("par a b. a # b", Mode::MELL);
  auto t2 = parse_term("par c d. c # d", Mode::MELL);
  auto t3 = parse_term("par c d. d # c", Mode::MELL);
  CHECK(alpha_eq(t1, t2));
  CHECK_FALSE(alpha_eq(t1, t3));
  CHECK_FALSE(alpha_eq(parse_term("a", Mode::MELL), parse_term("b", Mode::MELL)));
  auto b1 = parse_term("bang a. $u # a", Mode::MELL);
  auto b2 = parse_term("bang b. $u # b", Mode::MELL);
  CHECK(alpha_eq(b1, b2));
  // free variables stay rigid under canonicalization
  CHECK(free_vars(alpha_canon(parse_term("x # y", Mode::MELL))).linear ==
        std::set<std::string>{"x", "y"});
}

TEST_CASE("alpha_eq is an equivalence relation on enumerated small terms") {
  // a small hand-rolled enumeration: all terms over one linear variable pool
  // built from pair/contra/par-intro up to size 5
  std::vector<TermPtr> pool{parse_term("x", Mode::MELL), parse_term("y", Mode::MELL), Term::star()};
  std::vector<TermPtr> all = pool;
  for (int round = 0; round < 2; ++round) {
    std::vector<TermPtr> next = all;
    for (auto& t : all)
      for (auto& s : all) {
        if (term_size(t) + term_size(s) >= 5) continue;
        next.push_back(Term::pair(t, s));
        next.push_back(Term::contra(t, s));
        next.push_back(Term::par_intro("p", "q", Term::contra(t, s)));
      }
    all = next;
    if (all.size() > 400) break;
  }
  for (auto& t : all) CHECK(alpha_eq(t, t));
  for (size_t i = 0; i < all.size(); i += 17)
    for (size_t j = 0; j < all.size(); j += 23) {
      bool ij = alpha_eq(all[i], all[j]);
      CHECK(ij == alpha_eq(all[j], all[i]));
    }
}

TEST_CASE("plug is associative") {
  auto t = parse_term("x", Mode::MELL);
  ElimSpine L{{ElimKind::One, "", "", Term::star()}};
  ElimSpine K{{ElimKind::Tensor, "a", "b", parse_term("(c, d)", Mode::MELL)}};
  ElimSpine LK = L;
  LK.insert(LK.end(), K.begin(), K.end());
  CHECK(term_eq(plug(plug(t, L), K), plug(t, LK)));
  CHECK(term_eq(plug(t, {}), t));
}

TEST_CASE("size counts constructors") {
  CHECK(term_size(parse_term("a", Mode::MELL)) == 0);
  CHECK(term_size(Term::star()) == 0);
  CHECK(term_size(parse_term("(a, b)", Mode::MELL)) == 1);
  CHECK(term_size(parse_term("\\x. x @ y", Mode::MLL)) == 2);
}

TEST_CASE("json export tags every constructor") {
  auto t = parse_term("par a b. a # b", Mode::MELL);
  auto j = to_json(t);
  CHECK(j["tag"] == "par");
  CHECK(j["body"]["tag"] == "contradiction");
  auto f = parse_formula("!a * bot", Mode::MELL);
  auto jf = to_json(f);
  CHECK(jf["tag"] == "tensor");
  CHECK(jf["left"]["tag"] == "of_course");
}
