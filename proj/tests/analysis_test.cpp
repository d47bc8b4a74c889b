#include <doctest.h>

#include <random>

#include "support/files.hpp"
#include "support/oracles.hpp"
#include "support/random_models.hpp"
#include "vucfm/analysis.hpp"

using namespace vucfm;
using vucfm::testing::load_corpus;
using vucfm::testing::parse_or_throw;
using vucfm::testing::PathSet;

namespace {

std::vector<PathSet> enumerated(const VariabilityModel& m, std::size_t limit = kNoLimit) {
  std::vector<PathSet> out;
  for (auto& c : enumerate_configurations(m, limit)) out.push_back(std::move(c.selected));
  return out;
}

std::size_t leaves(const FeatureNode& node) {
  if (node.children.empty()) return 1;
  std::size_t n = 0;
  for (const auto& c : node.children) n += leaves(c);
  return n;
}

}  // namespace

TEST_CASE("count anchors") {
  CHECK(count_configurations(load_corpus("xor3.vucfm")) == 3);
  CHECK(count_configurations(parse_or_throw("vucfm M level domain { feature P or { feature A; feature B; } }")) == 3);
  CHECK(count_configurations(parse_or_throw("vucfm M level domain { feature A; }")) == 1);
  CHECK(count_configurations(parse_or_throw("vucfm M level domain { }")) == 1);
  CHECK(count_configurations(parse_or_throw(
            "vucfm M level domain { feature X xor { feature L; feature O or { feature A; feature B; } } }")) == 4);
  CHECK(count_configurations(parse_or_throw(
            "vucfm M level domain { feature A or { feature X; feature Y; } feature B xor { feature P; feature Q; } }")) ==
        6);
}

TEST_CASE("use cases choose one version and versions one revision") {
  const auto m = parse_or_throw(
      "vucfm M level domain { usecase U { version V1 { revision R1 {} revision R2 {} } version V2 { revision R1 {} } } }");
  CHECK(count_configurations(m) == 3);
  CHECK(effective_group(m.root.children[0]) == Group::Xor);
  CHECK(effective_group(m.root.children[0].children[0]) == Group::Xor);
  CHECK(effective_group(m.root) == Group::And);
}

TEST_CASE("set corpus count matches the composition oracle") {
  const auto set = load_corpus("set.vucfm");
  const auto oracle = vucfm::testing::configurations_by_composition(set);
  CHECK(count_configurations(set) == oracle.size());
  CHECK(enumerated(set) == oracle);
}

TEST_CASE("enumeration is ordered, limited and deterministic") {
  const auto set = load_corpus("set.vucfm");
  const auto all = enumerated(set);
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  const auto two = enumerated(set, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == all[0]);
  CHECK(two[1] == all[1]);
  CHECK(enumerated(set) == all);
  for (const auto& c : all) CHECK(vucfm::testing::is_valid_configuration(set, c));
}

TEST_CASE("invalid models are refused") {
  const auto cyclic = parse_or_throw("vucfm M level domain { feature A; feature B; M.A is-a M.B; M.B is-a M.A; }");
  CHECK_THROWS_AS(count_configurations(cyclic), InvalidModelError);
  CHECK_THROWS_AS(enumerate_configurations(cyclic, 10), InvalidModelError);
}

TEST_CASE("large spaces overflow or exceed the enumeration cap") {
  // 64 independent two-way or-groups: 3^64 overflows 64 bits.
  std::string text = "vucfm M level domain {";
  for (int i = 0; i < 64; ++i) {
    text += " feature G" + std::to_string(i) + " or { feature A; feature B; }";
  }
  text += " }";
  const auto huge = parse_or_throw(text);
  CHECK_THROWS_AS(count_configurations(huge), std::overflow_error);
  CHECK_THROWS_AS(enumerate_configurations(huge, 1), std::length_error);

  // 3^15 fits, 14348907 > cap.
  std::string mid = "vucfm M level domain {";
  for (int i = 0; i < 15; ++i) mid += " feature G" + std::to_string(i) + " or { feature A; feature B; }";
  mid += " }";
  const auto medium = parse_or_throw(mid);
  CHECK(count_configurations(medium) == 14348907);
  CHECK_THROWS_AS(enumerate_configurations(medium, 1), std::length_error);
}

TEST_CASE("count equals exhaustive enumeration on random models") {
  std::mt19937 rng(53);
  vucfm::testing::RandomModelShape shape;
  shape.max_leaves = 20;
  int subset_checked = 0;
  for (int i = 0; i < 250; ++i) {
    shape.max_nodes = i < 150 ? 14 : 30;
    const auto m = vucfm::testing::random_model(rng, shape);
    REQUIRE(leaves(m.root) <= 20);
    const auto composed = vucfm::testing::configurations_by_composition(m);
    const auto count = count_configurations(m);
    CHECK(count == composed.size());
    const auto listed = enumerated(m);
    CHECK(listed == composed);
    if (feature_paths(m).size() <= 14) {
      CHECK(vucfm::testing::configurations_by_subsets(m) == composed);
      ++subset_checked;
    }
  }
  CHECK(subset_checked >= 100);
}
