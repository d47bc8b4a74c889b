#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "vucfm/diagnostic.hpp"
#include "vucfm/model.hpp"

namespace vucfm {

/**
 * Semantic checks beyond the grammar. Returns an empty list iff the model is
 * clean. Ordered by position, then code.
 *
 *   V001 use case without version        V002 version without revision
 *   V003 unresolved relation endpoint    V004 interact must be actor -> feature
 *   V005 is-a/include/extend/composed-by must join two features
 *   V006 import must go from a revision to a version or revision
 *   V007 is-a cycle                      V008 composed-by cycle
 *   V009 include/extend cycle            V010 import cycle
 *   V011 self-relation                   V012 specific model keeps variability
 *   V013 (warning) or/xor group with fewer than two children
 *   V014 kind layering violated          V015 duplicate name
 */
std::vector<Diagnostic> validate(const VariabilityModel& model);

// nullopt when the level matches, otherwise a V020 error.
std::optional<Diagnostic> assert_level(const VariabilityModel& model, LevelKind expected);

// Strongly connected components of size >= 2 (self-loops are ignored), each
// sorted ascending; components ordered by their smallest member.
std::vector<std::vector<std::size_t>> cyclic_components(
    std::size_t node_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

}  // namespace vucfm
