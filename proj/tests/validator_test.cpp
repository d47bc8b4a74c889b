#include <doctest.h>

#include <random>

#include "support/files.hpp"
#include "support/oracles.hpp"
#include "support/random_models.hpp"
#include "vucfm/validator.hpp"

using namespace vucfm;
using vucfm::testing::load_corpus;
using vucfm::testing::parse_or_throw;

namespace {

std::vector<std::string> error_codes(const VariabilityModel& m) {
  std::vector<std::string> out;
  for (const auto& d : validate(m)) {
    if (d.severity == Severity::Error) out.push_back(d.code);
  }
  return out;
}

std::vector<Diagnostic> validate_text(const std::string& text) { return validate(parse_or_throw(text)); }

}  // namespace

TEST_CASE("corpus validates cleanly") {
  CHECK(validate(load_corpus("set.vucfm")).empty());
  CHECK(validate(load_corpus("xor3.vucfm")).empty());
}

TEST_CASE("actor as include source is a kind error") {
  const auto d = validate_text(
      "vucfm M level domain { actor User; feature A; feature B;\n"
      "  User include M.A; }");
  REQUIRE(d.size() == 1);
  CHECK(d[0].code == "V005");
  CHECK(d[0].message.find("User include M.A") != std::string::npos);
  CHECK(d[0].position->line == 2);
}

TEST_CASE("two-edge is-a cycle is listed") {
  const auto d = validate_text("vucfm M level domain { feature A; feature B; M.A is-a M.B; M.B is-a M.A; }");
  REQUIRE(d.size() == 1);
  CHECK(d[0].code == "V007");
  CHECK(d[0].message.find("M.A -> M.B -> M.A") != std::string::npos);
}

TEST_CASE("cycle checks are per relation family") {
  // is-a one way and include the other way is not a cycle of either family.
  CHECK(validate_text("vucfm M level domain { feature A; feature B; M.A is-a M.B; M.B include M.A; }").empty());
  CHECK(error_codes(parse_or_throw(
            "vucfm M level domain { feature A; feature B; feature C;"
            " M.A composed-by M.B; M.B composed-by M.C; M.C composed-by M.A; }")) ==
        std::vector<std::string>{"V008"});
  CHECK(error_codes(parse_or_throw(
            "vucfm M level domain { feature A; feature B; M.A include M.B; M.B extend M.A; }")) ==
        std::vector<std::string>{"V009"});
  CHECK(error_codes(parse_or_throw(
            "vucfm M level domain { usecase U { version V1 {"
            " revision R1 { import M.U.V1.R2; } revision R2 { import M.U.V1.R1; } } } }")) ==
        std::vector<std::string>{"V010"});
}

TEST_CASE("endpoint and kind rules") {
  CHECK(error_codes(parse_or_throw("vucfm M level domain { feature A; M.A include M.Z; }")) ==
        std::vector<std::string>{"V003"});
  CHECK(error_codes(parse_or_throw("vucfm M level domain { actor P; feature A; M.A in-interact P; }")) ==
        std::vector<std::string>{"V004"});
  CHECK(error_codes(parse_or_throw("vucfm M level domain { feature A; feature B; M.A inout-interact M.B; }")) ==
        std::vector<std::string>{"V004"});
  CHECK(error_codes(parse_or_throw("vucfm M level domain { feature A; M.A include M.A; }")) ==
        std::vector<std::string>{"V011"});
  CHECK(error_codes(parse_or_throw(
            "vucfm M level domain { feature F; usecase U { version V1 { revision R1 { import M.F; } } } }")) ==
        std::vector<std::string>{"V006"});
}

TEST_CASE("missing versions and revisions in built models") {
  auto m = parse_or_throw("vucfm M level domain { usecase U { version V1 { revision R1 { } } } }");
  m.root.children[0].children[0].children.clear();
  CHECK(error_codes(m) == std::vector<std::string>{"V002"});
  m.root.children[0].children.clear();
  CHECK(error_codes(m) == std::vector<std::string>{"V001"});
}

TEST_CASE("layering and duplicates in built models") {
  auto m = parse_or_throw("vucfm M level domain { feature A; feature B; }");
  m.root.children[1].name = "A";
  CHECK(error_codes(m) == std::vector<std::string>{"V015"});
  m.root.children[1].name = "B";
  m.root.children[1].kind = FeatureKind::Revision;
  CHECK(error_codes(m) == std::vector<std::string>{"V014"});
}

TEST_CASE("specific models must resolve variability") {
  const auto open = validate_text(
      "vucfm S level specific of F { usecase U { version V1 { revision R1 {} revision R2 {} } } }");
  REQUIRE(open.size() == 1);
  CHECK(open[0].code == "V012");
  CHECK(validate_text("vucfm S level specific of F { usecase U { version V1 { revision R1 {} } } }").empty());
  // The same shape is fine at domain level.
  CHECK(validate_text("vucfm S level domain { usecase U { version V1 { revision R1 {} revision R2 {} } } }").empty());
}

TEST_CASE("small or/xor groups only warn") {
  const auto d = validate_text("vucfm M level domain { feature A xor { feature B; } }");
  REQUIRE(d.size() == 1);
  CHECK(d[0].code == "V013");
  CHECK(d[0].severity == Severity::Warning);
  CHECK_FALSE(has_errors(d));
}

TEST_CASE("diagnostics are sorted by position") {
  const auto d = validate_text(
      "vucfm M level domain { feature A; feature B;\n"
      "  M.A include M.Q;\n"
      "  M.A include M.A;\n"
      "  M.B in-interact M.A;\n"
      "}");
  REQUIRE(d.size() == 3);
  CHECK(d[0].position->line == 2);
  CHECK(d[1].position->line == 3);
  CHECK(d[2].position->line == 4);
}

TEST_CASE("level assertion") {
  const auto set = load_corpus("set.vucfm");
  CHECK_FALSE(assert_level(set, LevelKind::Domain));
  const auto wrong = assert_level(set, LevelKind::Specific);
  REQUIRE(wrong);
  CHECK(wrong->code == "V020");
}

TEST_CASE("cyclic components agree with transitive closure") {
  std::mt19937 rng(5);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(0, 2 * n)(rng);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::uniform_int_distribution<std::size_t> node(0, n - 1);
    for (std::size_t i = 0; i < m; ++i) edges.emplace_back(node(rng), node(rng));

    std::set<std::size_t> on_cycle;
    const auto components = cyclic_components(n, edges);
    for (const auto& c : components) {
      CHECK(c.size() >= 2);
      CHECK(std::is_sorted(c.begin(), c.end()));
      on_cycle.insert(c.begin(), c.end());
    }
    CHECK(on_cycle == vucfm::testing::nodes_on_cycles(n, edges));
  }
}

TEST_CASE("acyclic random models validate without errors") {
  std::mt19937 rng(17);
  for (int i = 0; i < 150; ++i) {
    const auto m = vucfm::testing::random_model(rng, {});
    const auto d = validate(m);
    CHECK_MESSAGE(!has_errors(d), (d.empty() ? std::string() : d[0].message));
  }
}
