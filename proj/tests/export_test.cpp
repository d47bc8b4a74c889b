#include <doctest.h>

#include <random>

#include "support/files.hpp"
#include "support/oracles.hpp"
#include "support/random_models.hpp"
#include "vucfm/derivation.hpp"
#include "vucfm/export.hpp"

using namespace vucfm;
using vucfm::testing::load_corpus;
using vucfm::testing::parse_or_throw;

namespace {

FeaturePath path(std::string_view text) { return *FeaturePath::parse(text); }

VariabilityModel r2_stack() {
  const auto family = derive_family(load_corpus("set.vucfm"), path("Set.Stack.V2"));
  REQUIRE(family.ok());
  const auto specific = derive_specific(*family.model, path("Set.Stack.V2.R2"));
  REQUIRE(specific.ok());
  return *specific.model;
}

UseCaseDiagram diagram_of(const VariabilityModel& m) {
  auto r = to_usecase_diagram(m);
  REQUIRE(r.diagram);
  return *r.diagram;
}

std::size_t count_lines_containing(const std::string& text, std::string_view needle) {
  std::size_t n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

const DiagramUseCase* usecase_named(const UseCaseDiagram& d, std::string_view name) {
  for (const auto& u : d.usecases) {
    if (u.name == name) return &u;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("revision two of the static stack yields five use cases") {
  const auto result = to_usecase_diagram(r2_stack());
  REQUIRE(result.diagram);
  CHECK(result.diagnostics.empty());
  const auto& d = *result.diagram;
  REQUIRE(d.actors.size() == 1);
  CHECK(d.actors[0].name == "User");
  std::set<std::string> names;
  for (const auto& u : d.usecases) names.insert(u.name);
  CHECK(names == std::set<std::string>{"Push", "Pop", "IsFull", "IsEmpty", "Top"});
  CHECK(d.usecases.size() == 5);
  CHECK(d.edges.size() == 5);
  for (const auto& e : d.edges) {
    CHECK(e.kind == DiagramEdgeKind::InOut);
    CHECK(e.from == d.actors[0].id);
  }
  CHECK(usecase_named(d, "Top")->group == "ST-Methods");
}

TEST_CASE("dot rendering of the five use cases") {
  const auto d = diagram_of(r2_stack());
  const auto dot = render_dot(d);
  std::string error;
  CHECK_MESSAGE(vucfm::testing::dot_syntax_ok(dot, &error), error);
  CHECK(count_lines_containing(dot, "shape=box") == 1);
  CHECK(count_lines_containing(dot, "shape=ellipse") == 5);
  CHECK(count_lines_containing(dot, " -> ") == 5);
  CHECK(count_lines_containing(dot, "dir=both") == 5);
  CHECK(dot == render_dot(diagram_of(r2_stack())));
  CHECK(dot.rfind("digraph usecase {\n", 0) == 0);
}

TEST_CASE("plantuml rendering of the five use cases") {
  const auto d = diagram_of(r2_stack());
  const auto puml = render_plantuml(d);
  CHECK(puml.rfind("@startuml\n", 0) == 0);
  CHECK(puml.size() >= 8);
  CHECK(puml.substr(puml.size() - 8) == "@enduml\n");
  CHECK(count_lines_containing(puml, "actor \"User\"") == 1);
  CHECK(count_lines_containing(puml, "usecase \"") == 5);
  CHECK(count_lines_containing(puml, " <--> ") == 5);
  CHECK(puml == render_plantuml(diagram_of(r2_stack())));
}

TEST_CASE("outputs match the locked golden files") {
  const auto d = diagram_of(r2_stack());
  CHECK(render_dot(d) == vucfm::testing::read_file(vucfm::testing::golden_path("r2stack.dot")));
  CHECK(render_plantuml(d) == vucfm::testing::read_file(vucfm::testing::golden_path("r2stack.puml")));
}

TEST_CASE("clusters group use cases by parent feature") {
  const auto d = diagram_of(r2_stack());
  const auto dot = render_dot(d, {.group_by_parent = true});
  std::string error;
  CHECK_MESSAGE(vucfm::testing::dot_syntax_ok(dot, &error), error);
  CHECK(dot.find("subgraph \"cluster_ST_Methods\"") != std::string::npos);
  CHECK(render_plantuml(d, {.group_by_parent = true}).find("package \"ST-Methods\" {") != std::string::npos);
  CHECK(render_dot(d).find("subgraph") == std::string::npos);
}

TEST_CASE("no interactions gives an empty diagram with a warning") {
  const auto m = parse_or_throw("vucfm S level specific of F { actor A; usecase U { version V1 { revision R1 { feature X; } } } }");
  const auto r = to_usecase_diagram(m);
  REQUIRE(r.diagram);
  CHECK(r.diagram->usecases.empty());
  CHECK(r.diagram->actors.empty());
  CHECK(r.diagram->edges.empty());
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].code == "X001");
  CHECK(r.diagnostics[0].severity == Severity::Warning);
}

TEST_CASE("empty diagrams render to the bare frame") {
  CHECK(render_dot({}) == "digraph usecase {\n}\n");
  CHECK(render_plantuml({}) == "@startuml\n@enduml\n");
}

TEST_CASE("only specific models are exported") {
  const auto r = to_usecase_diagram(load_corpus("set.vucfm"));
  CHECK_FALSE(r.diagram);
  CHECK(has_code(r.diagnostics, "V020"));
}

TEST_CASE("include between interacting use cases becomes a dashed edge") {
  const auto m = parse_or_throw(
      "vucfm S level specific of F { actor User;\n"
      "  usecase U { version V1 { revision R1 { feature Pop; feature IsEmpty; feature Hidden; } } }\n"
      "  S.U.V1.R1.Pop include S.U.V1.R1.IsEmpty;\n"
      "  S.U.V1.R1.Pop extend S.U.V1.R1.Hidden;\n"
      "  User out-interact S.U.V1.R1.Pop;\n"
      "  User in-interact S.U.V1.R1.IsEmpty;\n"
      "}");
  const auto d = diagram_of(m);
  const auto counts = vucfm::testing::diagram_counts_by_filter(m);
  CHECK(d.usecases.size() == counts.usecases);
  CHECK(d.actors.size() == counts.actors);
  CHECK(d.edges.size() == counts.actor_edges + counts.usecase_edges);
  CHECK(counts.usecase_edges == 1);

  const auto pop = usecase_named(d, "Pop");
  const auto empty = usecase_named(d, "IsEmpty");
  REQUIRE(pop != nullptr);
  REQUIRE(empty != nullptr);
  CHECK(std::find(d.edges.begin(), d.edges.end(), DiagramEdge{pop->id, empty->id, DiagramEdgeKind::Include}) !=
        d.edges.end());

  const auto dot = render_dot(d);
  CHECK(dot.find("\"" + pop->id + "\" -> \"" + empty->id + "\" [style=dashed, label=\"<<include>>\"];") !=
        std::string::npos);
  // out-interact is drawn use case -> actor, in-interact actor -> use case.
  CHECK(dot.find("\"" + pop->id + "\" -> \"User\";") != std::string::npos);
  CHECK(dot.find("\"User\" -> \"" + empty->id + "\";") != std::string::npos);

  const auto puml = render_plantuml(d);
  CHECK(puml.find("..> ") != std::string::npos);
  CHECK(puml.find(": <<include>>") != std::string::npos);
  CHECK(puml.find(" <-- ") != std::string::npos);
  CHECK(puml.find(" --> ") != std::string::npos);
  CHECK(puml.find("<<extend>>") == std::string::npos);
}

TEST_CASE("is-a and inout edges") {
  const auto m = parse_or_throw(
      "vucfm S level specific of F { actor User;\n"
      "  usecase U { version V1 { revision R1 { feature Insert; feature InsertAt; } } }\n"
      "  S.U.V1.R1.InsertAt is-a S.U.V1.R1.Insert;\n"
      "  User inout-interact S.U.V1.R1.Insert;\n"
      "  User inout-interact S.U.V1.R1.InsertAt;\n"
      "}");
  const auto d = diagram_of(m);
  const auto dot = render_dot(d);
  CHECK(dot.find("[arrowhead=empty]") != std::string::npos);
  const auto puml = render_plantuml(d);
  CHECK(puml.find(" --|> ") != std::string::npos);
  CHECK(count_lines_containing(puml, " <--> ") == 2);
}

TEST_CASE("colliding leaf names are disambiguated") {
  const auto m = parse_or_throw(
      "vucfm S level specific of F { actor User;\n"
      "  usecase U { version V1 { revision R1 { feature A { feature Get; } feature B { feature Get; } } } }\n"
      "  User inout-interact S.U.V1.R1.A.Get;\n"
      "  User inout-interact S.U.V1.R1.B.Get;\n"
      "}");
  const auto d = diagram_of(m);
  REQUIRE(d.usecases.size() == 2);
  std::set<std::string> names{d.usecases[0].name, d.usecases[1].name};
  CHECK(names == std::set<std::string>{"Get (A)", "Get (B)"});
  CHECK(d.usecases[0].id != d.usecases[1].id);
}

TEST_CASE("sanitized identifiers") {
  CHECK(sanitize_id("Set.Stack.V2.R2.ST-Methods.Top") == "Set_Stack_V2_R2_ST_Methods_Top");
  CHECK(sanitize_id("abc_9") == "abc_9");
}

TEST_CASE("diagram counts and DOT syntax on random specific models") {
  std::mt19937 rng(61);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 150; ++i) {
    auto domain = vucfm::testing::random_model(rng, {});
    for (const auto& usecase : domain.root.children) {
      if (usecase.kind != FeatureKind::UseCase) continue;
      const auto family = derive_family(domain, FeaturePath({domain.root.name, usecase.name}));
      REQUIRE(family.ok());
      const auto revision = FeaturePath({domain.root.name, usecase.name, usecase.children[0].name,
                                         usecase.children[0].children[0].name});
      const auto specific = derive_specific(*family.model, revision);
      if (!specific.ok()) continue;
      ++checked;
      const auto d = diagram_of(*specific.model);
      const auto counts = vucfm::testing::diagram_counts_by_filter(*specific.model);
      CHECK(d.actors.size() == counts.actors);
      CHECK(d.usecases.size() == counts.usecases);
      CHECK(d.edges.size() == counts.actor_edges + counts.usecase_edges);

      std::set<std::string> ids;
      for (const auto& a : d.actors) ids.insert(a.id);
      for (const auto& u : d.usecases) ids.insert(u.id);
      CHECK(ids.size() == d.actors.size() + d.usecases.size());
      for (const auto& e : d.edges) {
        CHECK(ids.contains(e.from));
        CHECK(ids.contains(e.to));
      }
      for (const bool clusters : {false, true}) {
        const auto dot = render_dot(d, {.group_by_parent = clusters});
        std::string error;
        CHECK_MESSAGE(vucfm::testing::dot_syntax_ok(dot, &error), (error + "\n" + dot));
        CHECK(dot == render_dot(diagram_of(*specific.model), {.group_by_parent = clusters}));
      }
      CHECK(render_plantuml(d) == render_plantuml(diagram_of(*specific.model)));
    }
  }
  CHECK(checked >= 100);
}
