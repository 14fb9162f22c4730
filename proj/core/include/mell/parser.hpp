#pragma once

#include <map>
#include <string>

#include "mell/errors.hpp"
#include "mell/formula.hpp"
#include "mell/term.hpp"

namespace mell {

// A parsed .mell source: optional `mode` header, environment declarations,
// and a single body term.
struct SourceFile {
  Mode mode = Mode::MELL;
  bool mode_set = false;
  std::map<std::string, FormulaPtr> linear;
  std::map<std::string, FormulaPtr> unrestricted;
  TermPtr term;
};

FormulaPtr parse_formula(const std::string& text, Mode mode);
TermPtr parse_term(const std::string& text, Mode mode);
SourceFile parse_source(const std::string& text, Mode default_mode = Mode::MELL);

} // namespace mell
