#include "vucfm/validator.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace vucfm {

namespace {

std::string quoted(const std::string& text) { return "'" + text + "'"; }

void check_names(const VariabilityModel& model, std::vector<Diagnostic>& out) {
  const auto attributes = [&](const std::vector<Attribute>& attrs, const std::string& owner,
                              const std::optional<SourcePosition>& pos) {
    std::set<std::string> seen;
    for (const auto& a : attrs) {
      if (!seen.insert(a.name).second) {
        out.push_back(Diagnostic::error("V015", "duplicate attribute " + quoted(a.name) + " on " + quoted(owner), pos));
      }
    }
  };
  for_each_node(model, [&](const FeaturePath& path, const FeatureNode& node) {
    attributes(node.attributes, path.str(), node.position);
    std::set<std::string> seen;
    for (const auto& child : node.children) {
      if (!seen.insert(child.name).second) {
        out.push_back(Diagnostic::error(
            "V015", "duplicate feature name " + quoted(child.name) + " under " + quoted(path.str()), child.position));
      }
    }
  });
  std::set<std::string> actors;
  for (const auto& actor : model.actors) {
    attributes(actor.attributes, actor.name, actor.position);
    if (!actors.insert(actor.name).second) {
      out.push_back(Diagnostic::error("V015", "duplicate actor " + quoted(actor.name), actor.position));
    }
    if (actor.name == model.root.name) {
      out.push_back(Diagnostic::error("V015", "actor " + quoted(actor.name) + " shares the root feature's name",
                                      actor.position));
    }
  }
}

bool child_kind_allowed(const FeatureNode& parent, bool parent_is_root, FeatureKind child) {
  if (parent_is_root) return child == FeatureKind::UseCase || child == FeatureKind::Plain;
  switch (parent.kind) {
    case FeatureKind::UseCase: return child == FeatureKind::Version;
    case FeatureKind::Version: return child == FeatureKind::Revision;
    case FeatureKind::Revision:
    case FeatureKind::Plain: return child == FeatureKind::Plain;
  }
  return false;
}

void check_hierarchy(const VariabilityModel& model, std::vector<Diagnostic>& out) {
  if (model.root.kind != FeatureKind::Plain) {
    out.push_back(Diagnostic::error("V014", "root " + quoted(model.root.name) + " must be a plain feature, not a " +
                                                std::string(to_string(model.root.kind))));
  }
  for_each_node(model, [&](const FeaturePath& path, const FeatureNode& node) {
    const bool is_root = path.size() == 1;
    for (const auto& child : node.children) {
      if (!child_kind_allowed(node, is_root, child.kind)) {
        out.push_back(Diagnostic::error(
            "V014",
            std::string(to_string(child.kind)) + " " + quoted(path.child(child.name).str()) +
                " cannot appear under " + (is_root ? std::string("the root") : std::string(to_string(node.kind))) +
                " " + quoted(path.str()),
            child.position));
      }
    }
    if (node.kind == FeatureKind::UseCase && node.children.empty()) {
      out.push_back(Diagnostic::error("V001", "use case " + quoted(path.str()) + " has no version", node.position));
    }
    if (node.kind == FeatureKind::Version && node.children.empty()) {
      out.push_back(Diagnostic::error("V002", "version " + quoted(path.str()) + " has no revision", node.position));
    }
    if (node.kind == FeatureKind::Plain && node.group != Group::And && node.children.size() < 2) {
      out.push_back(Diagnostic::warning("V013",
                                        std::string(to_string(node.group)) + " group of " + quoted(path.str()) +
                                            " has " + std::to_string(node.children.size()) +
                                            " child(ren); at least 2 expected",
                                        node.position));
    }
  });
}

void check_specific(const VariabilityModel& model, std::vector<Diagnostic>& out) {
  if (model.level.kind != LevelKind::Specific) return;
  for_each_node(model, [&](const FeaturePath& path, const FeatureNode& node) {
    if (node.kind != FeatureKind::UseCase) return;
    const bool resolved = node.children.size() == 1 && node.children.front().children.size() == 1;
    if (!resolved) {
      out.push_back(Diagnostic::error(
          "V012", "use case " + quoted(path.str()) +
                      " in a specific model must keep exactly one version with exactly one revision",
          node.position));
    }
  });
}

void check_relation_endpoints(const VariabilityModel& model, std::vector<Diagnostic>& out) {
  for (const auto& r : model.relations) {
    const auto where = "relation " + quoted(r.str());
    const auto src = classify_endpoint(model, r.source);
    const auto dst = classify_endpoint(model, r.target);
    bool resolved = true;
    for (const auto& [kind, path] : {std::pair{src, &r.source}, std::pair{dst, &r.target}}) {
      if (kind == EndpointKind::Unresolved) {
        out.push_back(Diagnostic::error("V003", where + ": endpoint " + quoted(path->str()) + " does not resolve",
                                        r.position));
        resolved = false;
      }
    }
    if (!resolved) continue;
    if (r.source == r.target) {
      out.push_back(Diagnostic::error("V011", where + " relates " + quoted(r.source.str()) + " to itself",
                                      r.position));
      continue;
    }
    if (is_interact(r.kind)) {
      if (src != EndpointKind::Actor || dst != EndpointKind::Feature) {
        out.push_back(Diagnostic::error("V004", where + " must go from an actor to a feature", r.position));
      }
    } else if (r.kind == RelationKind::Import) {
      const FeatureNode* s = src == EndpointKind::Feature ? resolve(model, r.source) : nullptr;
      const FeatureNode* t = dst == EndpointKind::Feature ? resolve(model, r.target) : nullptr;
      const bool ok = s != nullptr && t != nullptr && s->kind == FeatureKind::Revision &&
                      (t->kind == FeatureKind::Version || t->kind == FeatureKind::Revision);
      if (!ok) {
        out.push_back(Diagnostic::error("V006", where + " must go from a revision to a version or revision",
                                        r.position));
      }
    } else if (src != EndpointKind::Feature || dst != EndpointKind::Feature) {
      out.push_back(Diagnostic::error("V005", where + " must join two features", r.position));
    }
  }
}

// Finds a shortest cycle through `start` using only edges inside `members`.
std::vector<std::size_t> cycle_through(std::size_t start, const std::set<std::size_t>& members,
                                       const std::vector<std::vector<std::size_t>>& adjacency) {
  std::map<std::size_t, std::size_t> parent;
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (const auto v : adjacency[u]) {
      if (!members.contains(v)) continue;
      if (v == start) {
        std::vector<std::size_t> cycle{start};
        for (auto w = u; w != start; w = parent.at(w)) cycle.insert(cycle.begin() + 1, w);
        cycle.push_back(start);
        return cycle;
      }
      if (v != start && !parent.contains(v)) {
        parent.emplace(v, u);
        queue.push_back(v);
      }
    }
  }
  return {start};
}

void check_cycles(const VariabilityModel& model, std::string_view code, std::string_view label,
                  const std::function<bool(RelationKind)>& selects, std::vector<Diagnostic>& out) {
  std::vector<const CrossRelation*> edges;
  std::set<FeaturePath> nodes;
  for (const auto& r : model.relations) {
    if (!selects(r.kind) || r.source == r.target) continue;
    edges.push_back(&r);
    nodes.insert(r.source);
    nodes.insert(r.target);
  }
  if (edges.empty()) return;
  const std::vector<FeaturePath> names(nodes.begin(), nodes.end());
  const auto index_of = [&](const FeaturePath& p) {
    return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), p) - names.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<std::size_t>> adjacency(names.size());
  for (const auto* r : edges) {
    pairs.emplace_back(index_of(r->source), index_of(r->target));
    adjacency[pairs.back().first].push_back(pairs.back().second);
  }
  for (auto& list : adjacency) std::sort(list.begin(), list.end());

  for (const auto& component : cyclic_components(names.size(), pairs)) {
    const std::set<std::size_t> members(component.begin(), component.end());
    const auto cycle = cycle_through(component.front(), members, adjacency);
    std::string text;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i > 0) text += " -> ";
      text += names[cycle[i]].str();
    }
    std::optional<SourcePosition> position;
    if (cycle.size() > 1) {
      for (const auto* r : edges) {
        if (r->source == names[cycle[0]] && r->target == names[cycle[1]]) {
          position = r->position;
          break;
        }
      }
    }
    out.push_back(Diagnostic::error(std::string(code), std::string(label) + " cycle: " + text, position));
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> cyclic_components(
    std::size_t node_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adjacency(node_count);
  for (const auto& [from, to] : edges) {
    if (from != to) adjacency[from].push_back(to);
  }

  // Tarjan's algorithm.
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(node_count, kUnvisited);
  std::vector<std::size_t> low(node_count, 0);
  std::vector<bool> on_stack(node_count, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  std::vector<std::vector<std::size_t>> components;

  std::function<void(std::size_t)> connect = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto w : adjacency[v]) {
      if (index[w] == kUnvisited) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] != index[v]) return;
    std::vector<std::size_t> component;
    std::size_t w = 0;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack[w] = false;
      component.push_back(w);
    } while (w != v);
    if (component.size() >= 2) {
      std::sort(component.begin(), component.end());
      components.push_back(std::move(component));
    }
  };
  for (std::size_t v = 0; v < node_count; ++v) {
    if (index[v] == kUnvisited) connect(v);
  }
  std::sort(components.begin(), components.end());
  return components;
}

std::vector<Diagnostic> validate(const VariabilityModel& model) {
  std::vector<Diagnostic> out;
  check_names(model, out);
  check_hierarchy(model, out);
  check_specific(model, out);
  check_relation_endpoints(model, out);
  check_cycles(model, "V007", "is-a", [](RelationKind k) { return k == RelationKind::IsA; }, out);
  check_cycles(model, "V008", "composed-by", [](RelationKind k) { return k == RelationKind::ComposedBy; }, out);
  check_cycles(model, "V009", "include/extend",
               [](RelationKind k) { return k == RelationKind::Include || k == RelationKind::Extend; }, out);
  check_cycles(model, "V010", "import", [](RelationKind k) { return k == RelationKind::Import; }, out);
  sort_diagnostics(out);
  return out;
}

std::optional<Diagnostic> assert_level(const VariabilityModel& model, LevelKind expected) {
  if (model.level.kind == expected) return std::nullopt;
  return Diagnostic::error("V020", "model " + quoted(model.name) + " is at level '" + model.level.str() +
                                       "', expected '" + std::string(to_string(expected)) + "'");
}

}  // namespace vucfm
