#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vucfm/diagnostic.hpp"
#include "vucfm/model.hpp"

namespace vucfm {

enum class DiagramEdgeKind { In, Out, InOut, Include, Extend, IsA };

std::string_view to_string(DiagramEdgeKind kind);

struct DiagramActor {
  std::string id;
  std::string name;
};

struct DiagramUseCase {
  std::string id;
  std::string name;   // leaf identifier, disambiguated on collision
  FeaturePath path;
  std::string group;  // leaf name of the parent feature, used for clustering
};

// Actor edges always run actor -> use case; the kind carries the direction.
struct DiagramEdge {
  std::string from;
  std::string to;
  DiagramEdgeKind kind = DiagramEdgeKind::InOut;

  auto operator<=>(const DiagramEdge&) const = default;
};

struct UseCaseDiagram {
  std::vector<DiagramActor> actors;
  std::vector<DiagramUseCase> usecases;
  std::vector<DiagramEdge> edges;
};

struct DiagramResult {
  std::optional<UseCaseDiagram> diagram;
  std::vector<Diagnostic> diagnostics;
};

/**
 * Builds the UML use case diagram of a specific-level model.
 *
 * Use cases are the features touched by at least one interact relation;
 * include / extend / is-a edges are kept when both ends became use cases.
 * composed-by has no UML counterpart and is not drawn.
 *
 * A model at another level yields a V020 error; an empty diagram comes with
 * an X001 warning.
 */
DiagramResult to_usecase_diagram(const VariabilityModel& specific);

struct RenderOptions {
  // Wrap use cases in a cluster/package named after their parent feature.
  bool group_by_parent = false;
};

std::string render_dot(const UseCaseDiagram& diagram, RenderOptions options = {});
std::string render_plantuml(const UseCaseDiagram& diagram, RenderOptions options = {});

// Replaces every character outside [A-Za-z0-9_] by '_'.
std::string sanitize_id(std::string_view text);

}  // namespace vucfm
