#include "vucfm/derivation.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>

#include "vucfm/dsl.hpp"
#include "vucfm/validator.hpp"

namespace vucfm {

namespace {

std::string quoted(const std::string& text) { return "'" + text + "'"; }

// `V2` -> `Version2` when the identifier is a single marker letter plus digits.
std::string expand_ordinal(const std::string& leaf, char marker, std::string_view word) {
  const bool ordinal = leaf.size() >= 2 && leaf.front() == marker &&
                       std::all_of(leaf.begin() + 1, leaf.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
  return ordinal ? std::string(word) + leaf.substr(1) : leaf;
}

std::optional<FeatureNode> restrict_node(const FeatureNode& node, const FeaturePath& path,
                                         const std::set<FeaturePath>& selected) {
  if (!selected.contains(path)) return std::nullopt;
  FeatureNode copy = node;
  copy.children.clear();
  for (const auto& child : node.children) {
    if (auto kept = restrict_node(child, path.child(child.name), selected)) {
      copy.children.push_back(std::move(*kept));
    }
  }
  return copy;
}

DerivationResult fail(std::string code, std::string message) {
  DerivationResult result;
  result.diagnostics.push_back(Diagnostic::error(std::move(code), std::move(message)));
  return result;
}

}  // namespace

std::set<FeaturePath> relation_closure(const VariabilityModel& model, const std::set<FeaturePath>& seeds) {
  for (const auto& seed : seeds) {
    if (resolve(model, seed) == nullptr) throw PathError(seed);
  }
  std::map<FeaturePath, std::vector<FeaturePath>> pulls;
  for (const auto& r : model.relations) {
    if (is_structural(r.kind) && resolve(model, r.source) != nullptr && resolve(model, r.target) != nullptr) {
      pulls[r.source].push_back(r.target);
    }
  }

  std::set<FeaturePath> selected = seeds;
  std::deque<FeaturePath> pending(seeds.begin(), seeds.end());
  while (!pending.empty()) {
    const FeaturePath current = std::move(pending.front());
    pending.pop_front();
    const auto it = pulls.find(current);
    if (it == pulls.end()) continue;
    for (const auto& target : it->second) {
      auto reached = subtree(model, target);
      for (auto& a : ancestors(model, target)) reached.insert(std::move(a));
      for (const auto& p : reached) {
        if (selected.insert(p).second) pending.push_back(p);
      }
    }
  }
  return selected;
}

std::set<FeaturePath> selection_for(const VariabilityModel& model, const FeaturePath& feature) {
  auto seeds = subtree(model, feature);
  for (auto& a : ancestors(model, feature)) seeds.insert(std::move(a));
  return relation_closure(model, seeds);
}

VariabilityModel restrict_to(const VariabilityModel& model, const std::set<FeaturePath>& selected,
                             std::vector<Diagnostic>& warnings) {
  VariabilityModel out;
  out.name = model.name;
  out.level = model.level;
  const FeaturePath root_path({model.root.name});
  if (auto root = restrict_node(model.root, root_path, selected)) {
    out.root = std::move(*root);
  } else {
    out.root = model.root;
    out.root.children.clear();
  }

  const auto feature_kept = [&](const FeaturePath& p) {
    return classify_endpoint(model, p) == EndpointKind::Feature && selected.contains(p);
  };
  std::set<std::string> kept_actors;
  for (const auto& r : model.relations) {
    if (!is_interact(r.kind)) continue;
    if (classify_endpoint(model, r.source) == EndpointKind::Actor && feature_kept(r.target)) {
      kept_actors.insert(r.source.leaf());
    }
    if (classify_endpoint(model, r.target) == EndpointKind::Actor && feature_kept(r.source)) {
      kept_actors.insert(r.target.leaf());
    }
  }
  for (const auto& actor : model.actors) {
    if (kept_actors.contains(actor.name)) out.actors.push_back(actor);
  }

  const auto endpoint_kept = [&](const FeaturePath& p) {
    switch (classify_endpoint(model, p)) {
      case EndpointKind::Actor: return kept_actors.contains(p.leaf());
      case EndpointKind::Feature: return selected.contains(p);
      case EndpointKind::Unresolved: return false;
    }
    return false;
  };
  for (const auto& r : model.relations) {
    const bool source_kept = endpoint_kept(r.source);
    const bool target_kept = endpoint_kept(r.target);
    if (source_kept && target_kept) {
      out.relations.push_back(r);
    } else if (r.kind == RelationKind::Import && source_kept) {
      warnings.push_back(Diagnostic::warning(
          "D010", "import of " + quoted(r.target.str()) + " by " + quoted(r.source.str()) +
                      " dropped: the imported feature is not part of the derived model"));
    }
  }
  return out;
}

std::string derived_model_name(const VariabilityModel& input, const FeaturePath& feature) {
  const FeatureNode* node = resolve(input, feature);
  if (node == nullptr) throw PathError(feature);
  std::string name;
  switch (node->kind) {
    case FeatureKind::Version:
      name = expand_ordinal(feature.leaf(), 'V', "Version") + "-" + feature.parent().leaf();
      break;
    case FeatureKind::Revision:
      name = expand_ordinal(feature.leaf(), 'R', "Revision") + "-" + input.name;
      break;
    case FeatureKind::UseCase:
    case FeatureKind::Plain:
      name = feature.leaf();
      break;
  }
  if (dsl::is_keyword(name)) name += "-fm";
  return name;
}

DerivationResult derive_family(const VariabilityModel& domain, const FeaturePath& feature,
                               DerivationOptions options) {
  if (options.check_level && domain.level.kind != LevelKind::Domain) {
    return fail("D003", "family derivation needs a domain model; " + quoted(domain.name) + " is at level '" +
                            domain.level.str() + "'");
  }
  const FeatureNode* node = resolve(domain, feature);
  if (node == nullptr) {
    return fail("D002", "feature " + quoted(feature.str()) + " does not exist in " + quoted(domain.name));
  }
  if (node->kind == FeatureKind::Revision) {
    return fail("D001", "feature " + quoted(feature.str()) +
                            " is a revision; an applications family is selected by a use case, version or feature");
  }

  DerivationResult result;
  VariabilityModel out = restrict_to(domain, selection_for(domain, feature), result.diagnostics);
  out.name = derived_model_name(domain, feature);
  out.level = ModelLevel::family(domain.name);
  result.model = std::move(out);
  return result;
}

DerivationResult derive_specific(const VariabilityModel& family, const FeaturePath& revision,
                                 DerivationOptions options) {
  if (options.check_level && family.level.kind != LevelKind::Family) {
    return fail("D005", "specific derivation needs a family model; " + quoted(family.name) + " is at level '" +
                            family.level.str() + "'");
  }
  const FeatureNode* node = resolve(family, revision);
  if (node == nullptr) {
    return fail("D002", "feature " + quoted(revision.str()) + " does not exist in " + quoted(family.name));
  }
  if (node->kind != FeatureKind::Revision) {
    return fail("D004", "feature " + quoted(revision.str()) + " is a " + std::string(to_string(node->kind)) +
                            "; a specific application is selected by a revision");
  }

  DerivationResult result;
  VariabilityModel out = restrict_to(family, selection_for(family, revision), result.diagnostics);
  out.name = derived_model_name(family, revision);
  out.level = ModelLevel::specific(family.name);

  for (const auto& d : validate(out)) {
    if (d.code == "V012") {
      result.diagnostics.push_back(Diagnostic::error(
          "D006", "selection of " + quoted(revision.str()) + " leaves unresolved variability: " + d.message));
    }
  }
  if (!has_errors(result.diagnostics)) result.model = std::move(out);
  return result;
}

}  // namespace vucfm
