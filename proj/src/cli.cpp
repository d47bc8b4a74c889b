#include "vucfm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "vucfm/analysis.hpp"
#include "vucfm/derivation.hpp"
#include "vucfm/dsl.hpp"
#include "vucfm/export.hpp"
#include "vucfm/validator.hpp"

namespace vucfm::cli {

namespace {

constexpr std::string_view kProgram = "vucfm-kit";

void print(std::ostream& err, const std::string& file, const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) err << format_diagnostic(file, d) << '\n';
}

// Parses and validates `file`; on failure returns the exit status.
std::optional<int> load(const std::string& file, std::ostream& err, VariabilityModel& model) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    err << kProgram << ": cannot read file '" << file << "'\n";
    return kUsageError;
  }
  std::ostringstream text;
  text << in.rdbuf();

  auto parsed = dsl::parse(text.str());
  print(err, file, parsed.diagnostics);
  if (!parsed.ok()) return kParseErrors;

  const auto diagnostics = validate(*parsed.model);
  print(err, file, diagnostics);
  if (has_errors(diagnostics)) return kValidationErrors;
  model = std::move(*parsed.model);
  return std::nullopt;
}

int write_artifact(const std::string& target, const std::string& content, std::ostream& out, std::ostream& err) {
  if (target == "-") {
    out << content;
    return kSuccess;
  }
  std::ofstream file(target, std::ios::binary | std::ios::trunc);
  if (!file || !(file << content)) {
    err << kProgram << ": cannot write file '" << target << "'\n";
    return kUsageError;
  }
  return kSuccess;
}

int derive(const std::string& file, const std::string& path_text, const std::string& output, bool family,
           std::ostream& out, std::ostream& err) {
  const auto path = FeaturePath::parse(path_text);
  if (!path) {
    err << kProgram << ": malformed feature path '" << path_text << "'\n";
    return kUsageError;
  }
  VariabilityModel model;
  if (auto status = load(file, err, model)) return *status;

  const auto result = family ? derive_family(model, *path) : derive_specific(model, *path);
  print(err, file, result.diagnostics);
  if (!result.ok()) return kDerivationError;
  const auto target =
      output.empty() ? path->leaf() + (family ? ".family.vucfm" : ".specific.vucfm") : output;
  return write_artifact(target, dsl::serialize(*result.model), out, err);
}

int export_diagram(const std::string& file, const std::string& format, const std::string& output, bool clusters,
                   std::ostream& out, std::ostream& err) {
  VariabilityModel model;
  if (auto status = load(file, err, model)) return *status;
  const auto result = to_usecase_diagram(model);
  print(err, file, result.diagnostics);
  if (!result.diagram) return kDerivationError;

  const RenderOptions options{clusters};
  const bool dot = format == "dot";
  const auto text = dot ? render_dot(*result.diagram, options) : render_plantuml(*result.diagram, options);
  const auto target = output.empty() ? model.name + (dot ? ".dot" : ".puml") : output;
  return write_artifact(target, text, out, err);
}

int configs(const std::string& file, bool list, std::size_t limit, std::ostream& out, std::ostream& err) {
  VariabilityModel model;
  if (auto status = load(file, err, model)) return *status;
  try {
    if (!list) {
      out << count_configurations(model) << '\n';
      return kSuccess;
    }
    for (const auto& configuration : enumerate_configurations(model, limit)) {
      std::string line;
      for (const auto& p : configuration.selected) {
        if (!line.empty()) line += ',';
        line += p.str();
      }
      out << line << '\n';
    }
  } catch (const std::exception& e) {
    err << kProgram << ": " << e.what() << '\n';
    return kValidationErrors;
  }
  return kSuccess;
}

int list_kind(const std::string& file, const std::string& kind, std::ostream& out, std::ostream& err) {
  VariabilityModel model;
  if (auto status = load(file, err, model)) return *status;
  std::vector<std::string> lines;
  if (kind == "actor") {
    for (const auto& actor : model.actors) lines.push_back(actor.name);
  } else {
    const auto wanted = kind == "usecase"    ? FeatureKind::UseCase
                        : kind == "version"  ? FeatureKind::Version
                        : kind == "revision" ? FeatureKind::Revision
                                             : FeatureKind::Plain;
    for_each_node(model, [&](const FeaturePath& path, const FeatureNode& node) {
      if (node.kind == wanted && path.size() > 1) lines.push_back(path.str());
    });
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& line : lines) out << line << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parse, validate, derive and export variable use case feature models.", std::string(kProgram)};
  app.require_subcommand(1);

  std::string file;
  std::string feature;
  std::string output;
  std::string format;
  std::string kind;
  bool clusters = false;
  bool count = false;
  bool list = false;
  std::size_t limit = 100;

  auto* check = app.add_subcommand("check", "Parse and validate a model file");
  check->add_option("file", file, "Model file (.vucfm)")->required();

  auto* derive_cmd = app.add_subcommand("derive", "Derive a narrower model");
  derive_cmd->require_subcommand(1);
  auto* family = derive_cmd->add_subcommand("family", "Select an applications family from a domain model");
  family->add_option("file", file, "Domain model file")->required();
  family->add_option("--feature", feature, "Use case, version or feature path, e.g. Set.Stack.V2")->required();
  family->add_option("-o,--output", output, "Output file, '-' for standard output");
  auto* specific = derive_cmd->add_subcommand("specific", "Select a specific application from a family model");
  specific->add_option("file", file, "Family model file")->required();
  specific->add_option("--revision", feature, "Revision path, e.g. Set.Stack.V2.R2")->required();
  specific->add_option("-o,--output", output, "Output file, '-' for standard output");

  auto* export_cmd = app.add_subcommand("export", "Render the use case diagram of a specific model");
  export_cmd->add_option("file", file, "Specific model file")->required();
  export_cmd->add_option("--format", format, "dot or puml")->required()->check(CLI::IsMember({"dot", "puml"}));
  export_cmd->add_option("-o,--output", output, "Output file, '-' for standard output");
  export_cmd->add_flag("--clusters", clusters, "Group use cases by their parent feature");

  auto* configs_cmd = app.add_subcommand("configs", "Count or list product configurations");
  configs_cmd->add_option("file", file, "Model file")->required();
  auto* count_flag = configs_cmd->add_flag("--count", count, "Print the number of configurations");
  auto* list_flag = configs_cmd->add_flag("--list", list, "Print configurations, one per line");
  count_flag->excludes(list_flag);
  configs_cmd->add_option("--limit", limit, "Maximum number of listed configurations")
      ->check(CLI::PositiveNumber);

  auto* list_cmd = app.add_subcommand("list", "List model elements of one kind");
  list_cmd->add_option("file", file, "Model file")->required();
  list_cmd->add_option("--kind", kind, "usecase, version, revision, actor or feature")
      ->required()
      ->check(CLI::IsMember({"usecase", "version", "revision", "actor", "feature"}));

  std::vector<const char*> argv{kProgram.data()};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  if (*check) {
    VariabilityModel model;
    if (auto status = load(file, err, model)) return *status;
    out << "OK: " << model.name << " (" << model.level.str() << ")\n";
    return kSuccess;
  }
  if (*family) return derive(file, feature, output, true, out, err);
  if (*specific) return derive(file, feature, output, false, out, err);
  if (*export_cmd) return export_diagram(file, format, output, clusters, out, err);
  if (*configs_cmd && !count && !list) {
    err << kProgram << ": configs needs --count or --list\n";
    return kUsageError;
  }
  if (*configs_cmd) return configs(file, list, limit, out, err);
  if (*list_cmd) return list_kind(file, kind, out, err);
  return kUsageError;
}

}  // namespace vucfm::cli
