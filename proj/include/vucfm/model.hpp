#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vucfm/diagnostic.hpp"

namespace vucfm {

// Actors are not tree nodes; see Actor.
enum class FeatureKind { UseCase, Version, Revision, Plain };

enum class Group { And, Or, Xor };

enum class RelationKind {
  IsA,
  Include,
  Extend,
  ComposedBy,
  InInteract,
  OutInteract,
  InOutInteract,
  Import,
};

enum class LevelKind { Domain, Family, Specific };

std::string_view to_string(FeatureKind kind);
std::string_view to_string(Group group);
std::string_view to_string(LevelKind kind);

// DSL keyword for a relation kind (`is-a`, `composed-by`, `import`, ...).
std::string_view keyword(RelationKind kind);
std::optional<RelationKind> relation_kind_from_keyword(std::string_view word);

bool is_interact(RelationKind kind);
// include / extend / composed-by / is-a: the kinds that pull features into a derived model.
bool is_structural(RelationKind kind);

// Syntactic identifier check: letter (letter | digit | '_' | '-')*. Keywords
// are not rejected here.
bool is_identifier_syntax(std::string_view text);

struct Attribute {
  std::string name;
  std::string value;

  auto operator<=>(const Attribute&) const = default;
};

/// Root-anchored, dot-separated address of a tree node, e.g. `Set.Stack.V2.R2`.
class FeaturePath {
 public:
  FeaturePath() = default;
  explicit FeaturePath(std::vector<std::string> segments);

  // Splits on '.'; nullopt when a segment is empty or not an identifier.
  static std::optional<FeaturePath> parse(std::string_view dotted);

  const std::vector<std::string>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }
  const std::string& leaf() const { return segments_.back(); }

  FeaturePath parent() const;
  FeaturePath child(std::string name) const;
  // True for equal paths as well.
  bool is_prefix_of(const FeaturePath& other) const;
  std::string str() const;

  auto operator<=>(const FeaturePath&) const = default;

 private:
  std::vector<std::string> segments_;
};

struct FeatureNode {
  std::string name;
  FeatureKind kind = FeatureKind::Plain;
  std::vector<Attribute> attributes;
  Group group = Group::And;
  std::vector<FeatureNode> children;
  std::optional<SourcePosition> position;

  const FeatureNode* find_child(std::string_view child_name) const;
  FeatureNode* find_child(std::string_view child_name);
};

struct Actor {
  std::string name;
  std::vector<Attribute> attributes;
  std::optional<SourcePosition> position;
};

/// Typed edge between two endpoints. Actor endpoints are one-segment paths
/// naming the actor. Position is ignored by comparisons.
struct CrossRelation {
  FeaturePath source;
  RelationKind kind = RelationKind::Include;
  FeaturePath target;
  std::optional<SourcePosition> position;

  bool same_edge(const CrossRelation& other) const;
  // Orders by source path, kind, then target path.
  bool edge_less(const CrossRelation& other) const;
  std::string str() const;
};

struct ModelLevel {
  LevelKind kind = LevelKind::Domain;
  std::string of;  // name of the model this one was derived from; empty for Domain

  static ModelLevel domain() { return {}; }
  static ModelLevel family(std::string of) { return {LevelKind::Family, std::move(of)}; }
  static ModelLevel specific(std::string of) { return {LevelKind::Specific, std::move(of)}; }

  // `domain`, `family of X`, `specific of X`.
  std::string str() const;
  bool operator==(const ModelLevel&) const = default;
};

/**
 * One feature tree plus actors and cross-tree relations.
 *
 * `name` identifies the model; `root.name` is the first segment of every
 * feature path. The two coincide for hand-written domain models and differ
 * for derived ones (a family derived from `Set` is named after the selected
 * feature but keeps `Set` as its root).
 */
struct VariabilityModel {
  std::string name;
  ModelLevel level;
  FeatureNode root;
  std::vector<Actor> actors;
  std::vector<CrossRelation> relations;

  const Actor* find_actor(std::string_view actor_name) const;
};

class PathError : public std::invalid_argument {
 public:
  explicit PathError(const FeaturePath& path);
  const FeaturePath& path() const { return path_; }

 private:
  FeaturePath path_;
};

// nullptr when the path does not resolve.
const FeatureNode* resolve(const VariabilityModel& model, const FeaturePath& path);

enum class EndpointKind { Feature, Actor, Unresolved };
EndpointKind classify_endpoint(const VariabilityModel& model, const FeaturePath& endpoint);

// The path and all of its transitive descendants. Throws PathError.
std::set<FeaturePath> subtree(const VariabilityModel& model, const FeaturePath& path);

// Root-to-parent chain, excluding the path itself. Throws PathError.
std::vector<FeaturePath> ancestors(const VariabilityModel& model, const FeaturePath& path);

std::set<FeaturePath> feature_paths(const VariabilityModel& model);

// Pre-order walk with the path of every node.
void for_each_node(const VariabilityModel& model,
                   const std::function<void(const FeaturePath&, const FeatureNode&)>& visit);

// Structural equality: sibling, attribute, actor and relation order are ignored.
bool model_equal(const VariabilityModel& a, const VariabilityModel& b);

}  // namespace vucfm
