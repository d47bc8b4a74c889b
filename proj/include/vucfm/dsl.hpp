#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vucfm/diagnostic.hpp"
#include "vucfm/model.hpp"

namespace vucfm::dsl {

bool is_keyword(std::string_view word);

struct ParseResult {
  std::optional<VariabilityModel> model;  // set iff no Error diagnostics
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

/**
 * Parses one `.vucfm` document.
 *
 * Use case / version / revision layering is enforced by the grammar, so a
 * successful parse always yields a correctly layered tree. The parser
 * recovers at element boundaries and keeps going, so one run can report
 * several independent errors:
 *
 *   P001 unexpected token     P002 unterminated string or comment
 *   P003 keyword as name      P004 duplicate name
 *   P005 malformed path
 */
ParseResult parse(std::string_view text);

// Canonical text: 2-space indentation, siblings in stored order, actors
// first, relations last sorted by (source, kind, target), LF line endings.
std::string serialize(const VariabilityModel& model);

}  // namespace vucfm::dsl
