#include "vucfm/export.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace vucfm {

namespace {

std::optional<DiagramEdgeKind> diagram_kind(RelationKind kind) {
  switch (kind) {
    case RelationKind::InInteract: return DiagramEdgeKind::In;
    case RelationKind::OutInteract: return DiagramEdgeKind::Out;
    case RelationKind::InOutInteract: return DiagramEdgeKind::InOut;
    case RelationKind::Include: return DiagramEdgeKind::Include;
    case RelationKind::Extend: return DiagramEdgeKind::Extend;
    case RelationKind::IsA: return DiagramEdgeKind::IsA;
    case RelationKind::ComposedBy:
    case RelationKind::Import: return std::nullopt;
  }
  return std::nullopt;
}

std::string unique_id(std::string base, std::set<std::string>& used) {
  if (base.empty()) base = "_";
  std::string id = base;
  for (int n = 2; !used.insert(id).second; ++n) id = base + "_" + std::to_string(n);
  return id;
}

std::string dot_string(std::string_view text) {
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

// Leaf names; colliding leaves get their parent's name, then the full path.
std::map<FeaturePath, std::string> display_names(const std::set<FeaturePath>& paths) {
  const auto tally = [](const std::map<FeaturePath, std::string>& names) {
    std::map<std::string, int> counts;
    for (const auto& [_, name] : names) ++counts[name];
    return counts;
  };
  std::map<FeaturePath, std::string> names;
  for (const auto& p : paths) names[p] = p.leaf();
  auto counts = tally(names);
  for (auto& [p, name] : names) {
    if (counts[name] > 1 && p.size() > 1) name = p.leaf() + " (" + p.parent().leaf() + ")";
  }
  counts = tally(names);
  for (auto& [p, name] : names) {
    if (counts[name] > 1) name = p.str();
  }
  return names;
}

struct NodeLine {
  std::string id;
  std::string text;
};

}  // namespace

std::string_view to_string(DiagramEdgeKind kind) {
  switch (kind) {
    case DiagramEdgeKind::In: return "in";
    case DiagramEdgeKind::Out: return "out";
    case DiagramEdgeKind::InOut: return "inout";
    case DiagramEdgeKind::Include: return "include";
    case DiagramEdgeKind::Extend: return "extend";
    case DiagramEdgeKind::IsA: return "is-a";
  }
  return "";
}

std::string sanitize_id(std::string_view text) {
  std::string out(text);
  for (auto& c : out) {
    if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '_') c = '_';
  }
  return out;
}

DiagramResult to_usecase_diagram(const VariabilityModel& specific) {
  DiagramResult result;
  if (specific.level.kind != LevelKind::Specific) {
    result.diagnostics.push_back(Diagnostic::error(
        "V020", "use case diagrams are generated from specific models; '" + specific.name + "' is at level '" +
                    specific.level.str() + "'"));
    return result;
  }

  struct ActorLink {
    std::string actor;
    FeaturePath feature;
    DiagramEdgeKind kind;
  };
  std::vector<ActorLink> links;
  std::set<FeaturePath> usecase_paths;
  std::set<std::string> actor_names;
  for (const auto& r : specific.relations) {
    if (!is_interact(r.kind)) continue;
    const auto src = classify_endpoint(specific, r.source);
    const auto dst = classify_endpoint(specific, r.target);
    const FeaturePath* actor = nullptr;
    const FeaturePath* feature = nullptr;
    if (src == EndpointKind::Actor && dst == EndpointKind::Feature) {
      actor = &r.source;
      feature = &r.target;
    } else if (src == EndpointKind::Feature && dst == EndpointKind::Actor) {
      actor = &r.target;
      feature = &r.source;
    } else {
      continue;
    }
    links.push_back({actor->leaf(), *feature, *diagram_kind(r.kind)});
    usecase_paths.insert(*feature);
    actor_names.insert(actor->leaf());
  }

  UseCaseDiagram diagram;
  std::set<std::string> used;
  std::map<FeaturePath, std::string> usecase_ids;
  const auto names = display_names(usecase_paths);
  for (const auto& path : usecase_paths) {
    auto id = unique_id(sanitize_id(path.str()), used);
    usecase_ids[path] = id;
    diagram.usecases.push_back(
        {std::move(id), names.at(path), path, path.size() > 1 ? path.parent().leaf() : std::string()});
  }
  std::map<std::string, std::string> actor_ids;
  for (const auto& name : actor_names) {
    auto id = unique_id(sanitize_id(name), used);
    actor_ids[name] = id;
    diagram.actors.push_back({std::move(id), name});
  }

  std::set<DiagramEdge> edges;
  for (const auto& link : links) {
    edges.insert({actor_ids.at(link.actor), usecase_ids.at(link.feature), link.kind});
  }
  for (const auto& r : specific.relations) {
    if (is_interact(r.kind)) continue;
    const auto kind = diagram_kind(r.kind);
    if (!kind || !usecase_ids.contains(r.source) || !usecase_ids.contains(r.target)) continue;
    edges.insert({usecase_ids.at(r.source), usecase_ids.at(r.target), *kind});
  }
  diagram.edges.assign(edges.begin(), edges.end());

  const auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  std::sort(diagram.actors.begin(), diagram.actors.end(), by_id);
  std::sort(diagram.usecases.begin(), diagram.usecases.end(), by_id);

  if (diagram.usecases.empty()) {
    result.diagnostics.push_back(Diagnostic::warning(
        "X001", "model '" + specific.name + "' has no feature interacting with an actor; the diagram is empty"));
  }
  result.diagram = std::move(diagram);
  return result;
}

std::string render_dot(const UseCaseDiagram& diagram, RenderOptions options) {
  std::vector<NodeLine> top;
  std::map<std::string, std::pair<std::string, std::vector<NodeLine>>> clusters;
  for (const auto& a : diagram.actors) {
    top.push_back({a.id, dot_string(a.id) + " [shape=box, label=" + dot_string(a.name) + "];"});
  }
  for (const auto& u : diagram.usecases) {
    NodeLine line{u.id, dot_string(u.id) + " [shape=ellipse, label=" + dot_string(u.name) + "];"};
    if (options.group_by_parent && !u.group.empty()) {
      auto& cluster = clusters["cluster_" + sanitize_id(u.group)];
      cluster.first = u.group;
      cluster.second.push_back(std::move(line));
    } else {
      top.push_back(std::move(line));
    }
  }
  const auto by_id = [](const NodeLine& a, const NodeLine& b) { return a.id < b.id; };
  std::sort(top.begin(), top.end(), by_id);

  std::string out = "digraph usecase {\n";
  for (const auto& n : top) out += "  " + n.text + "\n";
  for (auto& [cluster_id, cluster] : clusters) {
    std::sort(cluster.second.begin(), cluster.second.end(), by_id);
    out += "  subgraph " + dot_string(cluster_id) + " {\n";
    out += "    label=" + dot_string(cluster.first) + ";\n";
    for (const auto& n : cluster.second) out += "    " + n.text + "\n";
    out += "  }\n";
  }

  auto edges = diagram.edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) {
    const auto from = dot_string(e.from);
    const auto to = dot_string(e.to);
    switch (e.kind) {
      case DiagramEdgeKind::In: out += "  " + from + " -> " + to + ";\n"; break;
      case DiagramEdgeKind::Out: out += "  " + to + " -> " + from + ";\n"; break;
      case DiagramEdgeKind::InOut: out += "  " + from + " -> " + to + " [dir=both];\n"; break;
      case DiagramEdgeKind::Include:
        out += "  " + from + " -> " + to + " [style=dashed, label=\"<<include>>\"];\n";
        break;
      case DiagramEdgeKind::Extend:
        out += "  " + from + " -> " + to + " [style=dashed, label=\"<<extend>>\"];\n";
        break;
      case DiagramEdgeKind::IsA: out += "  " + from + " -> " + to + " [arrowhead=empty];\n"; break;
    }
  }
  out += "}\n";
  return out;
}

std::string render_plantuml(const UseCaseDiagram& diagram, RenderOptions options) {
  auto actors = diagram.actors;
  auto usecases = diagram.usecases;
  const auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  std::sort(actors.begin(), actors.end(), by_id);
  std::sort(usecases.begin(), usecases.end(), by_id);

  std::map<std::string, std::string> alias;
  std::string out = "@startuml\n";
  for (std::size_t i = 0; i < actors.size(); ++i) {
    alias[actors[i].id] = "A" + std::to_string(i + 1);
    out += "actor \"" + actors[i].name + "\" as " + alias[actors[i].id] + "\n";
  }
  std::map<std::string, std::vector<std::string>> packages;
  for (std::size_t i = 0; i < usecases.size(); ++i) {
    alias[usecases[i].id] = "UC" + std::to_string(i + 1);
    auto line = "usecase \"" + usecases[i].name + "\" as " + alias[usecases[i].id];
    if (options.group_by_parent && !usecases[i].group.empty()) {
      packages[usecases[i].group].push_back(std::move(line));
    } else {
      out += line + "\n";
    }
  }
  for (const auto& [name, lines] : packages) {
    out += "package \"" + name + "\" {\n";
    for (const auto& line : lines) out += "  " + line + "\n";
    out += "}\n";
  }

  auto edges = diagram.edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) {
    const auto& from = alias.at(e.from);
    const auto& to = alias.at(e.to);
    switch (e.kind) {
      case DiagramEdgeKind::In: out += from + " --> " + to + "\n"; break;
      case DiagramEdgeKind::Out: out += from + " <-- " + to + "\n"; break;
      case DiagramEdgeKind::InOut: out += from + " <--> " + to + "\n"; break;
      case DiagramEdgeKind::Include: out += from + " ..> " + to + " : <<include>>\n"; break;
      case DiagramEdgeKind::Extend: out += from + " ..> " + to + " : <<extend>>\n"; break;
      case DiagramEdgeKind::IsA: out += from + " --|> " + to + "\n"; break;
    }
  }
  out += "@enduml\n";
  return out;
}

}  // namespace vucfm
