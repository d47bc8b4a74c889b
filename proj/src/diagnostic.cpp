#include "vucfm/diagnostic.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace vucfm {

Diagnostic Diagnostic::error(std::string code, std::string message,
                             std::optional<SourcePosition> position) {
  return Diagnostic{position, Severity::Error, std::move(code), std::move(message)};
}

Diagnostic Diagnostic::warning(std::string code, std::string message,
                               std::optional<SourcePosition> position) {
  return Diagnostic{position, Severity::Warning, std::move(code), std::move(message)};
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

bool has_code(std::span<const Diagnostic> diagnostics, std::string_view code) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [code](const Diagnostic& d) { return d.code == code; });
}

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
  constexpr auto kUnpositioned = std::numeric_limits<std::size_t>::max();
  std::stable_sort(diagnostics.begin(), diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     const auto ka = a.position ? a.position->offset : kUnpositioned;
                     const auto kb = b.position ? b.position->offset : kUnpositioned;
                     return std::tie(ka, a.code) < std::tie(kb, b.code);
                   });
}

std::string format_diagnostic(std::string_view file, const Diagnostic& diagnostic) {
  std::string out(file);
  out += ':';
  if (diagnostic.position) {
    out += std::to_string(diagnostic.position->line);
    out += ':';
    out += std::to_string(diagnostic.position->column);
    out += ':';
  }
  out += diagnostic.severity == Severity::Error ? " error[" : " warning[";
  out += diagnostic.code;
  out += "]: ";
  out += diagnostic.message;
  return out;
}

}  // namespace vucfm
