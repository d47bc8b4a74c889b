#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vucfm/diagnostic.hpp"
#include "vucfm/model.hpp"

namespace vucfm {

struct DerivationOptions {
  // Off only for test harnesses that feed a derived model back in.
  bool check_level = true;
};

struct DerivationResult {
  std::optional<VariabilityModel> model;  // absent iff an Error diagnostic was produced
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

/**
 * Least fixpoint over include / extend / composed-by / is-a edges.
 *
 * Starting from `seeds`, every selected feature that is the source of such a
 * relation pulls in the relation's target, the target's whole subtree and
 * the target's root-to-parent spine. Edges are followed source -> target
 * only. Throws PathError when a seed does not resolve.
 */
std::set<FeaturePath> relation_closure(const VariabilityModel& model, const std::set<FeaturePath>& seeds);

// Spine of `feature` plus its subtree plus the relation closure of both.
std::set<FeaturePath> selection_for(const VariabilityModel& model, const FeaturePath& feature);

/**
 * Copies `model` keeping only the `selected` nodes (which must include the
 * root and be closed under parenthood). Actors survive iff one of their
 * interact relations reaches a selected feature; relations survive iff both
 * endpoints survive. A dropped import whose source survived yields a D010
 * warning in `warnings`.
 */
VariabilityModel restrict_to(const VariabilityModel& model, const std::set<FeaturePath>& selected,
                             std::vector<Diagnostic>& warnings);

/**
 * Applications-family derivation from a domain model.
 *
 * `feature` may be a use case, a version or a plain feature, never a
 * revision. The result is named after the feature (`Version2-Stack` for
 * `Set.Stack.V2`) and tagged `family of <domain name>`.
 *
 * Errors: D001 feature is a revision, D002 feature not found, D003 input is
 * not a domain model.
 */
DerivationResult derive_family(const VariabilityModel& domain, const FeaturePath& feature,
                               DerivationOptions options = {});

/**
 * Specific-application derivation from a family model.
 *
 * Keeps exactly the spine down to `revision`, its subtree and its relation
 * closure; named `Revision<n>-<family name>` and tagged
 * `specific of <family name>`.
 *
 * Errors: D004 not a revision, D002 not found, D005 input is not a family
 * model, D006 the relation closure drags in a use case with more than one
 * version or revision.
 */
DerivationResult derive_specific(const VariabilityModel& family, const FeaturePath& revision,
                                 DerivationOptions options = {});

// `V2` under `Stack` -> `Version2-Stack`; `R2` -> `Revision2-<context>`.
std::string derived_model_name(const VariabilityModel& input, const FeaturePath& feature);

}  // namespace vucfm
