#include "vucfm/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <tuple>
#include <utility>

namespace vucfm {

namespace {

constexpr std::array<std::pair<RelationKind, std::string_view>, 8> kRelationKeywords{{
    {RelationKind::IsA, "is-a"},
    {RelationKind::Include, "include"},
    {RelationKind::Extend, "extend"},
    {RelationKind::ComposedBy, "composed-by"},
    {RelationKind::InInteract, "in-interact"},
    {RelationKind::OutInteract, "out-interact"},
    {RelationKind::InOutInteract, "inout-interact"},
    {RelationKind::Import, "import"},
}};

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

void collect(const FeatureNode& node, const FeaturePath& path, std::set<FeaturePath>& out) {
  out.insert(path);
  for (const auto& child : node.children) {
    collect(child, path.child(child.name), out);
  }
}

void walk(const FeatureNode& node, const FeaturePath& path,
          const std::function<void(const FeaturePath&, const FeatureNode&)>& visit) {
  visit(path, node);
  for (const auto& child : node.children) {
    walk(child, path.child(child.name), visit);
  }
}

std::vector<Attribute> sorted(std::vector<Attribute> attributes) {
  std::sort(attributes.begin(), attributes.end());
  return attributes;
}

bool node_equal(const FeatureNode& a, const FeatureNode& b) {
  if (a.name != b.name || a.kind != b.kind || a.group != b.group ||
      a.children.size() != b.children.size() ||
      sorted(a.attributes) != sorted(b.attributes)) {
    return false;
  }
  std::vector<const FeatureNode*> ca;
  std::vector<const FeatureNode*> cb;
  for (const auto& c : a.children) ca.push_back(&c);
  for (const auto& c : b.children) cb.push_back(&c);
  const auto by_name = [](const FeatureNode* x, const FeatureNode* y) { return x->name < y->name; };
  std::sort(ca.begin(), ca.end(), by_name);
  std::sort(cb.begin(), cb.end(), by_name);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (!node_equal(*ca[i], *cb[i])) return false;
  }
  return true;
}

using ActorKey = std::pair<std::string, std::vector<Attribute>>;

std::vector<ActorKey> actor_keys(const std::vector<Actor>& actors) {
  std::vector<ActorKey> keys;
  for (const auto& actor : actors) keys.emplace_back(actor.name, sorted(actor.attributes));
  std::sort(keys.begin(), keys.end());
  return keys;
}

using EdgeKey = std::tuple<FeaturePath, RelationKind, FeaturePath>;

std::vector<EdgeKey> edge_keys(const std::vector<CrossRelation>& relations) {
  std::vector<EdgeKey> keys;
  for (const auto& r : relations) keys.emplace_back(r.source, r.kind, r.target);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

}  // namespace

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::UseCase: return "usecase";
    case FeatureKind::Version: return "version";
    case FeatureKind::Revision: return "revision";
    case FeatureKind::Plain: return "feature";
  }
  return "feature";
}

std::string_view to_string(Group group) {
  switch (group) {
    case Group::And: return "and";
    case Group::Or: return "or";
    case Group::Xor: return "xor";
  }
  return "and";
}

std::string_view to_string(LevelKind kind) {
  switch (kind) {
    case LevelKind::Domain: return "domain";
    case LevelKind::Family: return "family";
    case LevelKind::Specific: return "specific";
  }
  return "domain";
}

std::string_view keyword(RelationKind kind) {
  for (const auto& [k, word] : kRelationKeywords) {
    if (k == kind) return word;
  }
  return "";
}

std::optional<RelationKind> relation_kind_from_keyword(std::string_view word) {
  for (const auto& [k, w] : kRelationKeywords) {
    if (w == word) return k;
  }
  return std::nullopt;
}

bool is_interact(RelationKind kind) {
  return kind == RelationKind::InInteract || kind == RelationKind::OutInteract ||
         kind == RelationKind::InOutInteract;
}

bool is_structural(RelationKind kind) {
  return kind == RelationKind::IsA || kind == RelationKind::Include ||
         kind == RelationKind::Extend || kind == RelationKind::ComposedBy;
}

bool is_identifier_syntax(std::string_view text) {
  if (text.empty() || !is_letter(text.front())) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return is_letter(c) || is_digit(c) || c == '_' || c == '-';
  });
}

FeaturePath::FeaturePath(std::vector<std::string> segments) : segments_(std::move(segments)) {}

std::optional<FeaturePath> FeaturePath::parse(std::string_view dotted) {
  std::vector<std::string> segments;
  std::size_t start = 0;
  while (true) {
    const auto dot = dotted.find('.', start);
    const auto segment = dotted.substr(start, dot == std::string_view::npos ? dot : dot - start);
    if (!is_identifier_syntax(segment)) return std::nullopt;
    segments.emplace_back(segment);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return FeaturePath(std::move(segments));
}

FeaturePath FeaturePath::parent() const {
  if (segments_.size() <= 1) return {};
  return FeaturePath(std::vector<std::string>(segments_.begin(), segments_.end() - 1));
}

FeaturePath FeaturePath::child(std::string name) const {
  auto segments = segments_;
  segments.push_back(std::move(name));
  return FeaturePath(std::move(segments));
}

bool FeaturePath::is_prefix_of(const FeaturePath& other) const {
  return segments_.size() <= other.segments_.size() &&
         std::equal(segments_.begin(), segments_.end(), other.segments_.begin());
}

std::string FeaturePath::str() const {
  std::string out;
  for (const auto& segment : segments_) {
    if (!out.empty()) out += '.';
    out += segment;
  }
  return out;
}

const FeatureNode* FeatureNode::find_child(std::string_view child_name) const {
  for (const auto& child : children) {
    if (child.name == child_name) return &child;
  }
  return nullptr;
}

FeatureNode* FeatureNode::find_child(std::string_view child_name) {
  for (auto& child : children) {
    if (child.name == child_name) return &child;
  }
  return nullptr;
}

bool CrossRelation::same_edge(const CrossRelation& other) const {
  return source == other.source && kind == other.kind && target == other.target;
}

bool CrossRelation::edge_less(const CrossRelation& other) const {
  return std::tie(source, kind, target) < std::tie(other.source, other.kind, other.target);
}

std::string CrossRelation::str() const {
  std::string out = source.str();
  out += ' ';
  out += keyword(kind);
  out += ' ';
  out += target.str();
  return out;
}

std::string ModelLevel::str() const {
  std::string out(to_string(kind));
  if (kind != LevelKind::Domain) {
    out += " of ";
    out += of;
  }
  return out;
}

const Actor* VariabilityModel::find_actor(std::string_view actor_name) const {
  for (const auto& actor : actors) {
    if (actor.name == actor_name) return &actor;
  }
  return nullptr;
}

PathError::PathError(const FeaturePath& path)
    : std::invalid_argument("feature path '" + path.str() + "' does not resolve"), path_(path) {}

const FeatureNode* resolve(const VariabilityModel& model, const FeaturePath& path) {
  if (path.empty() || path.segments().front() != model.root.name) return nullptr;
  const FeatureNode* node = &model.root;
  for (std::size_t i = 1; i < path.size() && node != nullptr; ++i) {
    node = node->find_child(path.segments()[i]);
  }
  return node;
}

EndpointKind classify_endpoint(const VariabilityModel& model, const FeaturePath& endpoint) {
  if (endpoint.size() == 1 && model.find_actor(endpoint.leaf()) != nullptr) {
    return EndpointKind::Actor;
  }
  return resolve(model, endpoint) != nullptr ? EndpointKind::Feature : EndpointKind::Unresolved;
}

std::set<FeaturePath> subtree(const VariabilityModel& model, const FeaturePath& path) {
  const FeatureNode* node = resolve(model, path);
  if (node == nullptr) throw PathError(path);
  std::set<FeaturePath> out;
  collect(*node, path, out);
  return out;
}

std::vector<FeaturePath> ancestors(const VariabilityModel& model, const FeaturePath& path) {
  if (resolve(model, path) == nullptr) throw PathError(path);
  std::vector<FeaturePath> chain;
  std::vector<std::string> prefix;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    prefix.push_back(path.segments()[i]);
    chain.emplace_back(prefix);
  }
  return chain;
}

std::set<FeaturePath> feature_paths(const VariabilityModel& model) {
  std::set<FeaturePath> out;
  collect(model.root, FeaturePath({model.root.name}), out);
  return out;
}

void for_each_node(const VariabilityModel& model,
                   const std::function<void(const FeaturePath&, const FeatureNode&)>& visit) {
  walk(model.root, FeaturePath({model.root.name}), visit);
}

bool model_equal(const VariabilityModel& a, const VariabilityModel& b) {
  return a.name == b.name && a.level == b.level && node_equal(a.root, b.root) &&
         actor_keys(a.actors) == actor_keys(b.actors) &&
         edge_keys(a.relations) == edge_keys(b.relations);
}

}  // namespace vucfm
