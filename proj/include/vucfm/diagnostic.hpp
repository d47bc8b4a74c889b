#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vucfm {

// 1-based line/column (columns count code points), 0-based byte offset.
struct SourcePosition {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;

  bool operator==(const SourcePosition&) const = default;
};

enum class Severity { Error, Warning };

/**
 * A positioned message from parsing, validation, derivation or export.
 *
 * Codes are stable: P### for the parser, V### for the validator, D### for
 * derivation and X### for diagram export.
 */
struct Diagnostic {
  std::optional<SourcePosition> position;
  Severity severity = Severity::Error;
  std::string code;
  std::string message;

  static Diagnostic error(std::string code, std::string message,
                          std::optional<SourcePosition> position = std::nullopt);
  static Diagnostic warning(std::string code, std::string message,
                            std::optional<SourcePosition> position = std::nullopt);
};

bool has_errors(std::span<const Diagnostic> diagnostics);
bool has_code(std::span<const Diagnostic> diagnostics, std::string_view code);

// Stable order: positioned diagnostics by offset first, then by code.
void sort_diagnostics(std::vector<Diagnostic>& diagnostics);

// `FILE:LINE:COL: SEVERITY[CODE]: MESSAGE`; the LINE:COL part is omitted for
// model-level diagnostics that carry no position.
std::string format_diagnostic(std::string_view file, const Diagnostic& diagnostic);

}  // namespace vucfm
