#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mell/formula.hpp"
#include "mell/term.hpp"
#include "mell/typing.hpp"

namespace mell {

// ---------------------------------------------------------------------------
// Shared source-type syntax for the classical calculi: bot | atoms | A => B,
// plus A -o B for the dual-context calculus.
// ---------------------------------------------------------------------------

enum class CTyTag { Bot, Var, Imp, Lin, Meta };

struct ClassicalType;
using ClassicalTypePtr = std::shared_ptr<const ClassicalType>;

struct ClassicalType {
  CTyTag tag;
  std::string name;
  ClassicalTypePtr left, right;
  int meta_id = -1;

  static ClassicalTypePtr bot();
  static ClassicalTypePtr var(std::string n);
  static ClassicalTypePtr imp(ClassicalTypePtr a, ClassicalTypePtr b);
  static ClassicalTypePtr lin(ClassicalTypePtr a, ClassicalTypePtr b);
  static ClassicalTypePtr meta(int id);
};

bool ctype_eq(const ClassicalTypePtr& a, const ClassicalTypePtr& b);
std::string to_string(const ClassicalTypePtr& t);

// ---------------------------------------------------------------------------
// Parigot's lambda-mu
// ---------------------------------------------------------------------------

enum class MuTag { Var, Lam, App, Name, Mu };

struct MuTerm;
using MuTermPtr = std::shared_ptr<const MuTerm>;

struct MuTerm {
  MuTag tag;
  std::string x;            // variable or continuation name
  ClassicalTypePtr ann;     // optional binder annotation
  MuTermPtr a, b;

  static MuTermPtr var(std::string n);
  static MuTermPtr lam(std::string x, ClassicalTypePtr ann, MuTermPtr body);
  static MuTermPtr app(MuTermPtr f, MuTermPtr arg);
  static MuTermPtr name(std::string a, MuTermPtr body); // [a]M
  static MuTermPtr mu(std::string a, ClassicalTypePtr ann, MuTermPtr body);
};

std::string to_string(const MuTermPtr& t);
bool mu_alpha_eq(const MuTermPtr& a, const MuTermPtr& b);

struct MuEnv {
  std::map<std::string, ClassicalTypePtr> vars;   // Gamma
  std::map<std::string, ClassicalTypePtr> covars; // Sigma
};

// Type checking/inference; binder annotations fill in where inference is
// ambiguous. Throws TypeError.
ClassicalTypePtr mu_check(const MuEnv& env, const MuTermPtr& t);

enum class MuRule { Beta, Mu, MuPrime, Rho, Theta };
std::string to_string(MuRule r);

struct MuStep {
  MuRule rule;
  Path pos;
  MuTermPtr result;
};

// All one-step reducts. `value_discipline` selects the call-by-value variant
// (beta_v/mu_v/mu'_v/rho/theta); plain mode uses beta/mu/rho/theta.
std::vector<MuStep> mu_step(const MuTermPtr& t, bool value_discipline);

bool mu_is_value(const MuTermPtr& t);

// Right-/left-structural substitution: rewrites [a]O to [a](O N) / [a](N O).
MuTermPtr mu_struct_subst(const MuTermPtr& t, const std::string& a, const MuTermPtr& n, bool left);

// ---------------------------------------------------------------------------
// Curien and Herbelin's lbar-mu-mutilde (terms / co-terms / commands)
// ---------------------------------------------------------------------------

enum class ChTag { Var, CoVar, Lam, Mu, Cons, Command };
enum class ChCat { Term, CoTerm, Command };

struct ChTerm;
using ChTermPtr = std::shared_ptr<const ChTerm>;

struct ChTerm {
  ChTag tag;
  std::string x;
  ClassicalTypePtr ann;
  ChTermPtr a, b;

  static ChTermPtr var(std::string n);              // x (or a co-variable; resolved by typing)
  static ChTermPtr lam(std::string x, ClassicalTypePtr ann, ChTermPtr body);
  static ChTermPtr mu(std::string a, ClassicalTypePtr ann, ChTermPtr cmd);
  static ChTermPtr cons(ChTermPtr v, ChTermPtr e);  // v . e
  static ChTermPtr command(ChTermPtr v, ChTermPtr e); // <v | e>
};

std::string to_string(const ChTermPtr& t);

struct ChEnv {
  std::map<std::string, ClassicalTypePtr> vars;   // Gamma
  std::map<std::string, ClassicalTypePtr> covars; // Delta
};

struct ChJudgement {
  ChCat cat;
  ClassicalTypePtr type; // null for commands
};

ChJudgement ch_check(const ChEnv& env, const ChTermPtr& t);

struct ChStep {
  std::string rule; // "beta" or "mu"
  Path pos;
  ChTermPtr result;
};
std::vector<ChStep> ch_step(const ChTermPtr& t);

// ---------------------------------------------------------------------------
// Dual-context classical linear logic with mu (Hasegawa-style)
// ---------------------------------------------------------------------------

enum class DcllTag { Var, UVar, ILam, IApp, Lam, App, Name, Mu };

struct DcllTerm;
using DcllTermPtr = std::shared_ptr<const DcllTerm>;

struct DcllTerm {
  DcllTag tag;
  std::string x;
  ClassicalTypePtr ann;
  DcllTermPtr a, b;

  static DcllTermPtr var(std::string n);
  static DcllTermPtr uvar(std::string n);
  static DcllTermPtr ilam(std::string u, ClassicalTypePtr ann, DcllTermPtr body);
  static DcllTermPtr iapp(DcllTermPtr f, DcllTermPtr arg);
  static DcllTermPtr lam(std::string x, ClassicalTypePtr ann, DcllTermPtr body);
  static DcllTermPtr app(DcllTermPtr f, DcllTermPtr arg);
  static DcllTermPtr name(std::string a, DcllTermPtr body);
  static DcllTermPtr mu(std::string a, ClassicalTypePtr ann, DcllTermPtr body);
};

std::string to_string(const DcllTermPtr& t);

struct DcllEnv {
  std::map<std::string, ClassicalTypePtr> intuit;  // Delta
  std::map<std::string, ClassicalTypePtr> linear;  // Gamma
  std::map<std::string, ClassicalTypePtr> covars;  // Sigma
};

ClassicalTypePtr dcll_check(const DcllEnv& env, const DcllTermPtr& t);

enum class DcllRule { IntBeta, LinBeta, MuR, Theta };
std::string to_string(DcllRule r);

struct DcllStep {
  DcllRule rule;
  Path pos;
  DcllTermPtr result;
};
// Left-to-right instances of the four equational axioms.
std::vector<DcllStep> dcll_step(const DcllTermPtr& t);

// ---------------------------------------------------------------------------
// Translations into the MELL term calculus
// ---------------------------------------------------------------------------

// Shorthand !t = bang b. (t # b).
TermPtr bang_term(const TermPtr& t, const std::string& hint = "b");

// Call-by-name embedding of lambda-mu; `k` is the output continuation
// variable (unrestricted in the image).
FormulaPtr t_translate_type(const ClassicalTypePtr& t);
TermPtr t_translate(const MuTermPtr& m, const std::string& k);
// Target judgement for a typed source term: everything lands in the
// unrestricted context, the image has type bot.
Env t_translate_env(const MuEnv& env, const ClassicalTypePtr& type, const std::string& k);

// Call-by-value embedding of lambda-mu_v.
FormulaPtr q_translate_type(const ClassicalTypePtr& t);
FormulaPtr q_translate_type_core(const ClassicalTypePtr& t); // A^Q = !core(A)
TermPtr q_translate(const MuTermPtr& m, const std::string& k);
TermPtr q_translate_value(const MuTermPtr& v);
Env q_translate_env(const MuEnv& env, const ClassicalTypePtr& type, const std::string& k);

// lbar-mu-mutilde T-translation (judgement-indexed; no continuation
// parameter).
FormulaPtr ch_translate_type(const ClassicalTypePtr& t);
TermPtr ch_translate(const ChTermPtr& t);
Env ch_translate_env(const ChEnv& env);
FormulaPtr ch_translate_judgement_type(const ChJudgement& j);

// Dual-context calculus translation.
FormulaPtr dcll_translate_type(const ClassicalTypePtr& t);
TermPtr dcll_translate(const DcllTermPtr& t);
Env dcll_translate_env(const DcllEnv& env);

// ---------------------------------------------------------------------------
// Simulation verification
// ---------------------------------------------------------------------------

enum class SimRelation {
  Equal,        // images alpha-equal
  Equiv,        // images structurally equivalent
  Step,         // image reduces to image in one step (modulo equivalence)
  MultiStep,    // image reduces to image in zero or more steps
  Convertible,  // images are convertible (bidirectional reduction + equivalence)
};
std::string to_string(SimRelation r);

enum class SimVerdict { Verified, Refuted, Unknown };

struct SimReport {
  SimRelation claimed;
  SimVerdict verdict;
  std::string detail;
};

struct SimFuel {
  int equiv_nodes = 10000;
  int reduction_steps = 400;
  int search_nodes = 3000;
};

// Checks that two MELL images stand in the claimed relation.
SimReport simulate_verify(const Env& env, const TermPtr& image_from, const TermPtr& image_to,
                          SimRelation claimed, const SimFuel& fuel);

// Parsing entry points (implemented alongside the main parser).
MuTermPtr parse_mu_term(const std::string& text);
ChTermPtr parse_ch_term(const std::string& text);
DcllTermPtr parse_dcll_term(const std::string& text);
ClassicalTypePtr parse_classical_type(const std::string& text);

} // namespace mell
