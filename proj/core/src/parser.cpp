#include "mell/parser.hpp"
#include "mell/classical.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace mell {

namespace {

enum class Tok {
  Ident,   // bare identifier
  UVar,    // $identifier
  Num1,    // literal 1
  LParen, RParen, LBrack, RBrack, Comma, Dot, Colon, Semi,
  Star, Tilde, Bang, Quest, Hash, At, TildeAt, Assign, LinArrow, FatArrow,
  Lambda, LambdaLambda, Mu, LAngle, RAngle, VBar, AtAt,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

const char* tok_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::UVar: return "unrestricted variable";
    case Tok::Num1: return "'1'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::Star: return "'*'";
    case Tok::Tilde: return "'~'";
    case Tok::Bang: return "'!'";
    case Tok::Quest: return "'?'";
    case Tok::Hash: return "'#'";
    case Tok::At: return "'@'";
    case Tok::TildeAt: return "'~@'";
    case Tok::Assign: return "':='";
    case Tok::LinArrow: return "'-o'";
    case Tok::FatArrow: return "'=>'";
    case Tok::Lambda: return "'\\'";
    case Tok::LambdaLambda: return "'\\\\'";
    case Tok::Mu: return "'mu'";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::VBar: return "'|'";
    case Tok::AtAt: return "'@@'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string text, int l, int c) { out.push_back({k, std::move(text), l, c}); };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') { ++i; ++line; col = 1; continue; }
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; ++col; continue; }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '-') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    int l = line, co = col;
    auto two = [&](char a, char b) { return c == a && i + 1 < s.size() && s[i + 1] == b; };
    if (two(':', '=')) { push(Tok::Assign, ":=", l, co); i += 2; col += 2; continue; }
    if (two('-', 'o')) { push(Tok::LinArrow, "-o", l, co); i += 2; col += 2; continue; }
    if (two('~', '@')) { push(Tok::TildeAt, "~@", l, co); i += 2; col += 2; continue; }
    if (two('=', '>')) { push(Tok::FatArrow, "=>", l, co); i += 2; col += 2; continue; }
    if (two('@', '@')) { push(Tok::AtAt, "@@", l, co); i += 2; col += 2; continue; }
    if (two('\\', '\\')) { push(Tok::LambdaLambda, "\\\\", l, co); i += 2; col += 2; continue; }
    switch (c) {
      case '(': push(Tok::LParen, "(", l, co); ++i; ++col; continue;
      case ')': push(Tok::RParen, ")", l, co); ++i; ++col; continue;
      case '[': push(Tok::LBrack, "[", l, co); ++i; ++col; continue;
      case ']': push(Tok::RBrack, "]", l, co); ++i; ++col; continue;
      case ',': push(Tok::Comma, ",", l, co); ++i; ++col; continue;
      case '.': push(Tok::Dot, ".", l, co); ++i; ++col; continue;
      case ':': push(Tok::Colon, ":", l, co); ++i; ++col; continue;
      case ';': push(Tok::Semi, ";", l, co); ++i; ++col; continue;
      case '*': push(Tok::Star, "*", l, co); ++i; ++col; continue;
      case '~': push(Tok::Tilde, "~", l, co); ++i; ++col; continue;
      case '!': push(Tok::Bang, "!", l, co); ++i; ++col; continue;
      case '?': push(Tok::Quest, "?", l, co); ++i; ++col; continue;
      case '#': push(Tok::Hash, "#", l, co); ++i; ++col; continue;
      case '@': push(Tok::At, "@", l, co); ++i; ++col; continue;
      case '\\': push(Tok::Lambda, "\\", l, co); ++i; ++col; continue;
      case '<': push(Tok::LAngle, "<", l, co); ++i; ++col; continue;
      case '>': push(Tok::RAngle, ">", l, co); ++i; ++col; continue;
      case '|': push(Tok::VBar, "|", l, co); ++i; ++col; continue;
      default: break;
    }
    if (c == '$') {
      size_t j = i + 1;
      if (j >= s.size() || !ident_start(s[j])) throw ParseError(l, co, "identifier after '$'");
      size_t k = j;
      while (k < s.size() && ident_char(s[k])) ++k;
      push(Tok::UVar, s.substr(j, k - j), l, co);
      col += int(k - i);
      i = k;
      continue;
    }
    if (c == '1') {
      push(Tok::Num1, "1", l, co);
      ++i; ++col;
      continue;
    }
    if (ident_start(c)) {
      size_t k = i;
      while (k < s.size() && ident_char(s[k])) ++k;
      std::string word = s.substr(i, k - i);
      col += int(k - i);
      i = k;
      if (word == "mu") { push(Tok::Mu, word, l, co); continue; }
      push(Tok::Ident, word, l, co);
      continue;
    }
    throw ParseError(l, co, "token");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const std::set<std::string> kReserved = {
    "mode", "mll", "mell", "linear", "unrestricted", "par", "bot", "bang",
    "wn", "wncase", "with", "var", "covar", "intuit", "proof", "calculus",
};

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;
  Mode mode = Mode::MELL;

  const Token& peek(int ahead = 0) const {
    size_t i = pos + ahead;
    return i < toks.size() ? toks[i] : toks.back();
  }
  const Token& next() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const std::string& w) const { return at(Tok::Ident) && peek().text == w; }
  bool eat(Tok k) {
    if (at(k)) { next(); return true; }
    return false;
  }
  bool eat_word(const std::string& w) {
    if (at_word(w)) { next(); return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(peek().line, peek().col, expected);
  }
  void expect(Tok k) {
    if (!eat(k)) fail(tok_name(k));
  }
  std::string expect_ident() {
    if (!at(Tok::Ident)) fail("identifier");
    std::string w = next().text;
    if (kReserved.count(w)) throw ParseError(peek().line, peek().col, "identifier (got keyword '" + w + "')");
    return w;
  }

  // --- formulas ---

  FormulaPtr formula() { return f_imp(); }

  FormulaPtr f_imp() {
    FormulaPtr l = f_par();
    if (eat(Tok::LinArrow)) {
      FormulaPtr r = f_imp();
      if (mode == Mode::MLL) return Formula::lin_imp(l, r);
      return Formula::par(negate(l, mode), r);
    }
    return l;
  }

  FormulaPtr f_par() {
    FormulaPtr l = f_tensor();
    while (at_word("par")) {
      if (mode == Mode::MLL) fail("MLL connective ('par' is MELL-only)");
      next();
      l = Formula::par(l, f_tensor());
    }
    return l;
  }

  FormulaPtr f_tensor() {
    FormulaPtr l = f_unary();
    while (eat(Tok::Star)) l = Formula::tensor(l, f_unary());
    return l;
  }

  FormulaPtr f_unary() {
    if (eat(Tok::Tilde)) return negate(f_unary(), mode);
    if (eat(Tok::Bang)) {
      if (mode == Mode::MLL) fail("MLL formula ('!' is MELL-only)");
      return Formula::of_course(f_unary());
    }
    if (eat(Tok::Quest)) {
      if (mode == Mode::MLL) fail("MLL formula ('?' is MELL-only)");
      return Formula::why_not(f_unary());
    }
    if (eat(Tok::Num1)) {
      if (mode == Mode::MLL) fail("MLL formula ('1' is MELL-only)");
      return Formula::one();
    }
    if (at_word("bot")) {
      if (mode == Mode::MLL) fail("MLL formula ('bot' is MELL-only)");
      next();
      return Formula::bottom();
    }
    if (eat(Tok::LParen)) {
      FormulaPtr f = formula();
      expect(Tok::RParen);
      return f;
    }
    if (at(Tok::Ident) && !kReserved.count(peek().text)) return Formula::atom(next().text);
    fail("formula");
  }

  // --- terms ---

  bool at_binder() const {
    if (at_word("par") || at_word("bang") || at_word("wn") || at_word("wncase")) return true;
    return at(Tok::Lambda);
  }

  TermPtr term() {
    if (at_binder()) return t_binder();
    return t_contra();
  }

  TermPtr t_binder() {
    if (eat_word("par")) {
      if (mode == Mode::MLL) fail("MLL term ('par' binder is MELL-only)");
      std::string a = expect_ident();
      std::string b = expect_ident();
      expect(Tok::Dot);
      return Term::par_intro(a, b, term());
    }
    if (eat_word("bang")) {
      if (mode == Mode::MLL) fail("MLL term ('bang' is MELL-only)");
      std::string a = expect_ident();
      expect(Tok::Dot);
      return Term::ofc_intro(a, term());
    }
    if (eat_word("wn")) {
      if (mode == Mode::MLL) fail("MLL term ('wn' is MELL-only)");
      if (!at(Tok::UVar)) fail("unrestricted variable");
      std::string u = next().text;
      expect(Tok::Dot);
      return Term::why_intro(u, term());
    }
    if (eat_word("wncase")) {
      if (mode == Mode::MLL) fail("MLL term ('wncase' is MELL-only)");
      TermPtr scrut = t_contra();
      if (!eat_word("with")) fail("'with'");
      std::string a = expect_ident();
      expect(Tok::Dot);
      return Term::why_elim(term(), a, scrut);
    }
    if (eat(Tok::Lambda)) {
      if (mode == Mode::MELL) fail("MELL term ('\\' is MLL-only)");
      std::string a = expect_ident();
      expect(Tok::Dot);
      return Term::lambda(a, term());
    }
    fail("binder");
  }

  TermPtr t_contra() {
    TermPtr l = t_app();
    while (at(Tok::Hash)) {
      next();
      if (mode == Mode::MLL) fail("MLL term ('#' is MELL-only)");
      if (at_binder()) return Term::contra(l, t_binder());
      l = Term::contra(l, t_app());
    }
    return l;
  }

  TermPtr t_app() {
    TermPtr l = t_postfix();
    while (at(Tok::At) || at(Tok::TildeAt)) {
      bool is_contra = at(Tok::TildeAt);
      next();
      TermPtr r;
      if (at_binder()) {
        r = t_binder();
        return is_contra ? Term::contra_app(l, r) : Term::app(l, r);
      }
      r = t_postfix();
      l = is_contra ? Term::contra_app(l, r) : Term::app(l, r);
    }
    return l;
  }

  TermPtr t_postfix() {
    TermPtr l = t_atom();
    while (at(Tok::LBrack)) {
      next();
      if (eat(Tok::LParen)) {
        std::string a = expect_ident();
        expect(Tok::Comma);
        std::string b = expect_ident();
        expect(Tok::RParen);
        expect(Tok::Assign);
        TermPtr s = term();
        expect(Tok::RBrack);
        l = Term::tensor_elim(l, a, b, s);
      } else if (eat(Tok::Bang)) {
        if (mode == Mode::MLL) fail("MLL term ('[!...]' is MELL-only)");
        if (!at(Tok::UVar)) fail("unrestricted variable");
        std::string u = next().text;
        expect(Tok::Assign);
        TermPtr s = term();
        expect(Tok::RBrack);
        l = Term::ofc_elim(l, u, s);
      } else if (eat(Tok::Star)) {
        if (mode == Mode::MLL) fail("MLL term ('[* := ...]' is MELL-only)");
        expect(Tok::Assign);
        TermPtr s = term();
        expect(Tok::RBrack);
        l = Term::one_elim(l, s);
      } else {
        fail("'(' or '!' or '*' in eliminator");
      }
    }
    return l;
  }

  TermPtr t_atom() {
    if (at(Tok::Star)) {
      if (mode == Mode::MLL) fail("MLL term ('*' is MELL-only)");
      next();
      return Term::star();
    }
    if (at(Tok::UVar)) {
      if (mode == Mode::MLL) fail("MLL term (unrestricted variables are MELL-only)");
      return Term::unr_var(next().text);
    }
    if (at(Tok::Ident) && !kReserved.count(peek().text)) return Term::lin_var(next().text);
    if (eat(Tok::LParen)) {
      TermPtr t = term();
      if (eat(Tok::Comma)) {
        TermPtr s = term();
        expect(Tok::RParen);
        return Term::pair(t, s);
      }
      expect(Tok::RParen);
      return t;
    }
    fail("term");
  }

  // --- classical calculi ---

  MuTermPtr mu_term() {
    // application is left-associative juxtaposition
    MuTermPtr l = mu_atom();
    while (at(Tok::Ident) || at(Tok::LParen) || at(Tok::Lambda) || at(Tok::Mu) || at(Tok::LBrack)) {
      if (at(Tok::Lambda) || at(Tok::Mu) || at(Tok::LBrack)) return MuTerm::app(l, mu_term());
      l = MuTerm::app(l, mu_atom());
    }
    return l;
  }

  MuTermPtr mu_atom() {
    if (eat(Tok::Lambda)) {
      std::string x = expect_ident();
      ClassicalTypePtr ann;
      if (eat(Tok::Colon)) ann = classical_type();
      expect(Tok::Dot);
      return MuTerm::lam(x, ann, mu_term());
    }
    if (eat(Tok::Mu)) {
      std::string a = expect_ident();
      ClassicalTypePtr ann;
      if (eat(Tok::Colon)) ann = classical_type();
      expect(Tok::Dot);
      return MuTerm::mu(a, ann, mu_term());
    }
    if (eat(Tok::LBrack)) {
      std::string a = expect_ident();
      expect(Tok::RBrack);
      return MuTerm::name(a, mu_atom_or_app());
    }
    if (at(Tok::Ident) && !kReserved.count(peek().text)) return MuTerm::var(next().text);
    if (eat(Tok::LParen)) {
      MuTermPtr t = mu_term();
      expect(Tok::RParen);
      return t;
    }
    fail("term");
  }

  MuTermPtr mu_atom_or_app() { return mu_term_after_name(); }

  MuTermPtr mu_term_after_name() {
    // [a]M binds as far right as possible
    return mu_term();
  }

  ClassicalTypePtr classical_type() {
    ClassicalTypePtr l = classical_type_atom();
    if (eat(Tok::FatArrow)) return ClassicalType::imp(l, classical_type());
    if (eat(Tok::LinArrow)) return ClassicalType::lin(l, classical_type());
    return l;
  }

  ClassicalTypePtr classical_type_atom() {
    if (at_word("bot")) { next(); return ClassicalType::bot(); }
    if (at(Tok::Ident) && !kReserved.count(peek().text)) return ClassicalType::var(next().text);
    if (eat(Tok::LParen)) {
      auto t = classical_type();
      expect(Tok::RParen);
      return t;
    }
    fail("type");
  }

  // lbar-mu-mutilde: commands <v | e>, co-terms v . e, terms x | mu a. c | \x. v
  ChTermPtr ch_any() {
    if (eat(Tok::LAngle)) {
      ChTermPtr v = ch_any();
      expect(Tok::VBar);
      ChTermPtr e = ch_any();
      expect(Tok::RAngle);
      return ChTerm::command(v, e);
    }
    ChTermPtr l = ch_atom();
    if (eat(Tok::Dot)) return ChTerm::cons(l, ch_any());
    return l;
  }

  ChTermPtr ch_atom() {
    if (eat(Tok::Lambda)) {
      std::string x = expect_ident();
      ClassicalTypePtr ann;
      if (eat(Tok::Colon)) ann = classical_type();
      expect(Tok::Dot);
      return ChTerm::lam(x, ann, ch_any());
    }
    if (eat(Tok::Mu)) {
      std::string a = expect_ident();
      ClassicalTypePtr ann;
      if (eat(Tok::Colon)) ann = classical_type();
      expect(Tok::Dot);
      return ChTerm::mu(a, ann, ch_any());
    }
    if (at(Tok::Ident) && !kReserved.count(peek().text)) return ChTerm::var(next().text);
    if (eat(Tok::LParen)) {
      ChTermPtr t = ch_any();
      expect(Tok::RParen);
      return t;
    }
    fail("term");
  }

  // muDCLL: \x.M linear lambda, \\$u.M intuitionistic lambda, M N linear app,
  // M @@ N intuitionistic app, [a]M, mu a. M
  DcllTermPtr dcll_term() {
    DcllTermPtr l = dcll_atom();
    for (;;) {
      if (eat(Tok::AtAt)) {
        if (at(Tok::Lambda) || at(Tok::LambdaLambda) || at(Tok::Mu) || at(Tok::LBrack))
          return DcllTerm::iapp(l, dcll_term());
        l = DcllTerm::iapp(l, dcll_atom());
        continue;
      }
      if (at(Tok::Ident) || at(Tok::LParen) || at(Tok::UVar)) {
        l = DcllTerm::app(l, dcll_atom());
        continue;
      }
      if (at(Tok::Lambda) || at(Tok::LambdaLambda) || at(Tok::Mu) || at(Tok::LBrack))
        return DcllTerm::app(l, dcll_term());
      return l;
    }
  }

  DcllTermPtr dcll_atom() {
    if (eat(Tok::LambdaLambda)) {
      if (!at(Tok::UVar)) fail("unrestricted variable");
      std::string u = next().text;
      ClassicalTypePtr ann;
      if (eat(Tok::Colon)) ann = classical_type();
      expect(Tok::Dot);
      return DcllTerm::ilam(u, ann, dcll_term());
    }
    if (eat(Tok::Lambda)) {
      std::string x = expect_ident();
      ClassicalTypePtr ann;
      if (eat(Tok::Colon)) ann = classical_type();
      expect(Tok::Dot);
      return DcllTerm::lam(x, ann, dcll_term());
    }
    if (eat(Tok::Mu)) {
      std::string a = expect_ident();
      ClassicalTypePtr ann;
      if (eat(Tok::Colon)) ann = classical_type();
      expect(Tok::Dot);
      return DcllTerm::mu(a, ann, dcll_term());
    }
    if (eat(Tok::LBrack)) {
      std::string a = expect_ident();
      expect(Tok::RBrack);
      return DcllTerm::name(a, dcll_term());
    }
    if (at(Tok::UVar)) return DcllTerm::uvar(next().text);
    if (at(Tok::Ident) && !kReserved.count(peek().text)) return DcllTerm::var(next().text);
    if (eat(Tok::LParen)) {
      auto t = dcll_term();
      expect(Tok::RParen);
      return t;
    }
    fail("term");
  }
};

} // namespace

FormulaPtr parse_formula(const std::string& text, Mode mode) {
  Parser p{lex(text)};
  p.mode = mode;
  FormulaPtr f = p.formula();
  if (!p.at(Tok::End)) p.fail("end of input");
  return f;
}

TermPtr parse_term(const std::string& text, Mode mode) {
  Parser p{lex(text)};
  p.mode = mode;
  TermPtr t = p.term();
  if (!p.at(Tok::End)) p.fail("end of input");
  return t;
}

SourceFile parse_source(const std::string& text, Mode default_mode) {
  Parser p{lex(text)};
  SourceFile out;
  out.mode = default_mode;
  p.mode = default_mode;
  for (;;) {
    if (p.eat_word("mode")) {
      if (p.eat_word("mll")) out.mode = Mode::MLL;
      else if (p.eat_word("mell")) out.mode = Mode::MELL;
      else p.fail("'mll' or 'mell'");
      out.mode_set = true;
      p.mode = out.mode;
      p.expect(Tok::Semi);
      continue;
    }
    if (p.eat_word("linear")) {
      std::string n = p.expect_ident();
      p.expect(Tok::Colon);
      FormulaPtr f = p.formula();
      p.expect(Tok::Semi);
      if (out.linear.count(n)) throw ParseError(p.peek().line, p.peek().col, "distinct linear name (duplicate '" + n + "')");
      out.linear[n] = f;
      continue;
    }
    if (p.eat_word("unrestricted")) {
      if (out.mode == Mode::MLL) p.fail("MLL header ('unrestricted' is MELL-only)");
      if (!p.at(Tok::UVar)) p.fail("unrestricted variable");
      std::string n = p.next().text;
      p.expect(Tok::Colon);
      FormulaPtr f = p.formula();
      p.expect(Tok::Semi);
      if (out.unrestricted.count(n)) throw ParseError(p.peek().line, p.peek().col, "distinct unrestricted name (duplicate '$" + n + "')");
      out.unrestricted[n] = f;
      continue;
    }
    break;
  }
  out.term = p.term();
  if (!p.at(Tok::End)) p.fail("end of input");
  return out;
}

// Classical entry points share the same lexer.

MuTermPtr parse_mu_term(const std::string& text) {
  Parser p{lex(text)};
  auto t = p.mu_term();
  if (!p.at(Tok::End)) p.fail("end of input");
  return t;
}

ChTermPtr parse_ch_term(const std::string& text) {
  Parser p{lex(text)};
  auto t = p.ch_any();
  if (!p.at(Tok::End)) p.fail("end of input");
  return t;
}

DcllTermPtr parse_dcll_term(const std::string& text) {
  Parser p{lex(text)};
  auto t = p.dcll_term();
  if (!p.at(Tok::End)) p.fail("end of input");
  return t;
}

ClassicalTypePtr parse_classical_type(const std::string& text) {
  Parser p{lex(text)};
  auto t = p.classical_type();
  if (!p.at(Tok::End)) p.fail("end of input");
  return t;
}

} // namespace mell
