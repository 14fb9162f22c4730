#pragma once

#include <string>

#include "mell/formula.hpp"
#include "mell/term.hpp"

#include <json.hpp>

namespace mell {

std::string to_string(const FormulaPtr& f);
std::string to_string(const TermPtr& t);

nlohmann::json to_json(const FormulaPtr& f);
nlohmann::json to_json(const TermPtr& t);

} // namespace mell
