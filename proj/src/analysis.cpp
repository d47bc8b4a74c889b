#include "vucfm/analysis.hpp"

#include <functional>
#include <string>
#include <utility>

#include "vucfm/validator.hpp"

namespace vucfm {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("configuration count overflows 64 bits");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("configuration count overflows 64 bits");
  return out;
}

std::uint64_t count_node(const FeatureNode& node) {
  if (node.children.empty()) return 1;
  switch (effective_group(node)) {
    case Group::And: {
      std::uint64_t product = 1;
      for (const auto& c : node.children) product = checked_mul(product, count_node(c));
      return product;
    }
    case Group::Or: {
      std::uint64_t product = 1;
      for (const auto& c : node.children) product = checked_mul(product, checked_add(count_node(c), 1));
      return product - 1;
    }
    case Group::Xor: {
      std::uint64_t sum = 0;
      for (const auto& c : node.children) sum = checked_add(sum, count_node(c));
      return sum;
    }
  }
  return 1;
}

void require_valid(const VariabilityModel& model) {
  auto diagnostics = validate(model);
  if (has_errors(diagnostics)) throw InvalidModelError(std::move(diagnostics));
}

struct Pending {
  const FeatureNode* node;
  FeaturePath path;
};

// Decides one pending node at a time; each decision branch yields disjoint
// configurations, so every product is produced exactly once.
class Enumerator {
 public:
  explicit Enumerator(std::function<void(const std::set<FeaturePath>&)> emit) : emit_(std::move(emit)) {}

  void run(const VariabilityModel& model) {
    FeaturePath root({model.root.name});
    selected_.insert(root);
    expand({Pending{&model.root, root}});
  }

 private:
  void expand(std::vector<Pending> pending) {
    if (pending.empty()) {
      emit_(selected_);
      return;
    }
    const Pending next = std::move(pending.back());
    pending.pop_back();
    const auto& children = next.node->children;
    if (children.empty()) {
      expand(std::move(pending));
      return;
    }
    const auto choose = [&](const std::vector<std::size_t>& picks) {
      auto branch = pending;
      for (const auto i : picks) {
        auto path = next.path.child(children[i].name);
        selected_.insert(path);
        branch.push_back(Pending{&children[i], std::move(path)});
      }
      expand(std::move(branch));
      for (const auto i : picks) selected_.erase(next.path.child(children[i].name));
    };
    switch (effective_group(*next.node)) {
      case Group::And: {
        std::vector<std::size_t> all(children.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        choose(all);
        break;
      }
      case Group::Xor:
        for (std::size_t i = 0; i < children.size(); ++i) choose({i});
        break;
      case Group::Or: {
        if (children.size() >= 63) throw std::length_error("or-group too wide to enumerate");
        const std::uint64_t subsets = std::uint64_t{1} << children.size();
        for (std::uint64_t mask = 1; mask < subsets; ++mask) {
          std::vector<std::size_t> picks;
          for (std::size_t i = 0; i < children.size(); ++i) {
            if ((mask >> i) & 1U) picks.push_back(i);
          }
          choose(picks);
        }
        break;
      }
    }
  }

  std::function<void(const std::set<FeaturePath>&)> emit_;
  std::set<FeaturePath> selected_;
};

std::string first_message(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::Error) return "model is invalid: [" + d.code + "] " + d.message;
  }
  return "model is invalid";
}

}  // namespace

InvalidModelError::InvalidModelError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(first_message(diagnostics)), diagnostics_(std::move(diagnostics)) {}

Group effective_group(const FeatureNode& node) {
  if (node.kind == FeatureKind::UseCase || node.kind == FeatureKind::Version) return Group::Xor;
  return node.group;
}

std::uint64_t count_configurations(const VariabilityModel& model) {
  require_valid(model);
  return count_node(model.root);
}

std::vector<Configuration> enumerate_configurations(const VariabilityModel& model, std::size_t limit) {
  std::uint64_t total = 0;
  try {
    total = count_configurations(model);
  } catch (const std::overflow_error&) {
    throw std::length_error("model has more than 2^64 configurations; enumeration is capped at " +
                            std::to_string(kMaxEnumerated));
  }
  if (total > kMaxEnumerated) {
    throw std::length_error("model has " + std::to_string(total) + " configurations; enumeration is capped at " +
                            std::to_string(kMaxEnumerated));
  }
  std::set<Configuration> smallest;
  if (limit == 0) return {};
  Enumerator([&](const std::set<FeaturePath>& selected) {
    if (smallest.size() == limit && !(Configuration{selected} < *smallest.rbegin())) return;
    smallest.insert(Configuration{selected});
    if (smallest.size() > limit) smallest.erase(std::prev(smallest.end()));
  }).run(model);
  return {smallest.begin(), smallest.end()};
}

}  // namespace vucfm
