#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include "vucfm/diagnostic.hpp"
#include "vucfm/model.hpp"

namespace vucfm {

// One realizable product: root plus a parent-closed, group-respecting set of nodes.
struct Configuration {
  std::set<FeaturePath> selected;

  auto operator<=>(const Configuration&) const = default;
};

class InvalidModelError : public std::runtime_error {
 public:
  explicit InvalidModelError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Group that governs a node's children when counting products. Use case ->
// version and version -> revision choices are exclusive.
Group effective_group(const FeatureNode& node);

// Throws InvalidModelError when validation reports errors and
// std::overflow_error when the count does not fit 64 bits.
std::uint64_t count_configurations(const VariabilityModel& model);

constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();

// The `limit` smallest configurations in lexicographic order of their sorted
// path lists. Throws InvalidModelError, or std::length_error when the space
// exceeds kMaxEnumerated configurations.
std::vector<Configuration> enumerate_configurations(const VariabilityModel& model, std::size_t limit);

constexpr std::uint64_t kMaxEnumerated = 5'000'000;

}  // namespace vucfm
