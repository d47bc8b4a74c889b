#include <algorithm>
#include <string>
#include <vector>

#include "vucfm/dsl.hpp"

namespace vucfm::dsl {

namespace {

std::string quoted(std::string_view value) {
  std::string out = "\"";
  for (const char c : value) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string attribute_list(const std::vector<Attribute>& attributes) {
  if (attributes.empty()) return "";
  std::string out = " [";
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (i > 0) out += ", ";
    out += attributes[i].name;
    out += '=';
    out += quoted(attributes[i].value);
  }
  out += ']';
  return out;
}

class Writer {
 public:
  explicit Writer(const VariabilityModel& model) : model_(model) {
    for (const auto& relation : model.relations) {
      auto& bucket = relation.kind == RelationKind::Import ? imports_ : relations_;
      bucket.push_back(&relation);
    }
    const auto less = [](const CrossRelation* a, const CrossRelation* b) { return a->edge_less(*b); };
    const auto same = [](const CrossRelation* a, const CrossRelation* b) { return a->same_edge(*b); };
    for (auto* bucket : {&imports_, &relations_}) {
      std::sort(bucket->begin(), bucket->end(), less);
      bucket->erase(std::unique(bucket->begin(), bucket->end(), same), bucket->end());
    }
  }

  std::string run() {
    out_ = "vucfm " + model_.name + " level " + model_.level.str();
    if (model_.root.name != model_.name) out_ += " root " + model_.root.name;
    if (model_.actors.empty() && model_.root.children.empty() && relations_.empty()) {
      out_ += " {}\n";
      return std::move(out_);
    }
    out_ += " {\n";
    for (const auto& actor : model_.actors) {
      line(1, "actor " + actor.name + attribute_list(actor.attributes) + ";");
    }
    const FeaturePath root_path({model_.root.name});
    for (const auto& child : model_.root.children) node(child, root_path.child(child.name), 1);
    for (const auto* relation : relations_) line(1, relation->str() + ";");
    out_ += "}\n";
    return std::move(out_);
  }

 private:
  void line(int depth, const std::string& text) {
    out_.append(static_cast<std::size_t>(depth) * 2, ' ');
    out_ += text;
    out_ += '\n';
  }

  void node(const FeatureNode& n, const FeaturePath& path, int depth) {
    std::string head(to_string(n.kind));
    head += ' ';
    head += n.name;
    head += attribute_list(n.attributes);
    if (n.kind == FeatureKind::Plain && n.group != Group::And) {
      head += ' ';
      head += to_string(n.group);
    }

    std::vector<const CrossRelation*> own_imports;
    if (n.kind == FeatureKind::Revision) {
      for (const auto* r : imports_) {
        if (r->source == path) own_imports.push_back(r);
      }
    }
    if (n.children.empty() && own_imports.empty()) {
      line(depth, head + (n.kind == FeatureKind::Plain ? ";" : " {}"));
      return;
    }
    line(depth, head + " {");
    for (const auto* r : own_imports) line(depth + 1, "import " + r->target.str() + ";");
    for (const auto& child : n.children) node(child, path.child(child.name), depth + 1);
    line(depth, "}");
  }

  const VariabilityModel& model_;
  std::vector<const CrossRelation*> imports_;
  std::vector<const CrossRelation*> relations_;
  std::string out_;
};

}  // namespace

std::string serialize(const VariabilityModel& model) { return Writer(model).run(); }

}  // namespace vucfm::dsl
