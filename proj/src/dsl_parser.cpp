#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <utility>

#include "vucfm/dsl.hpp"

namespace vucfm::dsl {

namespace {

constexpr std::array<std::string_view, 23> kKeywords{
    "vucfm",   "level",       "domain",      "family",       "specific",    "of",
    "root",    "usecase",     "version",     "revision",     "import",      "feature",
    "actor",   "and",         "or",          "xor",          "is-a",        "include",
    "extend",  "composed-by", "in-interact", "out-interact", "inout-interact",
};

enum class Tok { Word, String, Dot, Semi, Comma, Equals, LBrace, RBrace, LBracket, RBracket, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePosition pos;
};

std::string describe(const Token& token) {
  switch (token.kind) {
    case Tok::Word: return "'" + token.text + "'";
    case Tok::String: return "string literal";
    case Tok::Dot: return "'.'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::End: return "end of input";
  }
  return "token";
}

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_word_char(char c) {
  return is_letter(c) || std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
}

class Lexer {
 public:
  Lexer(std::string_view source, std::vector<Diagnostic>& diagnostics)
      : source_(source), diagnostics_(diagnostics) {}

  std::vector<Token> tokenize() {
    std::vector<Token> tokens;
    while (true) {
      skip_trivia();
      if (at_end()) {
        tokens.push_back({Tok::End, "", pos_});
        return tokens;
      }
      const SourcePosition start = pos_;
      const char c = peek();
      if (is_letter(c)) {
        std::string word;
        while (!at_end() && is_word_char(peek())) {
          word += peek();
          advance();
        }
        tokens.push_back({Tok::Word, std::move(word), start});
      } else if (c == '"') {
        tokens.push_back({Tok::String, read_string(), start});
      } else if (auto kind = punctuation(c)) {
        advance();
        tokens.push_back({*kind, std::string(1, c), start});
      } else {
        diagnostics_.push_back(Diagnostic::error("P001", "unexpected character " + quote_char(c), start));
        advance();
      }
    }
  }

 private:
  static std::optional<Tok> punctuation(char c) {
    switch (c) {
      case '.': return Tok::Dot;
      case ';': return Tok::Semi;
      case ',': return Tok::Comma;
      case '=': return Tok::Equals;
      case '{': return Tok::LBrace;
      case '}': return Tok::RBrace;
      case '[': return Tok::LBracket;
      case ']': return Tok::RBracket;
      default: return std::nullopt;
    }
  }

  static std::string quote_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x20 || u >= 0x7f) {
      static constexpr char kHex[] = "0123456789abcdef";
      return std::string("byte 0x") + kHex[u >> 4] + kHex[u & 0xf];
    }
    return std::string("'") + c + "'";
  }

  bool at_end() const { return pos_.offset >= source_.size(); }
  char peek(std::size_t ahead = 0) const {
    const auto at = pos_.offset + ahead;
    return at < source_.size() ? source_[at] : '\0';
  }

  void advance() {
    const char c = source_[pos_.offset++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else if (at_end() || (static_cast<unsigned char>(source_[pos_.offset]) & 0xC0) != 0x80) {
      ++pos_.column;
    }
  }

  void skip_trivia() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        const SourcePosition start = pos_;
        advance();
        advance();
        bool closed = false;
        while (!at_end()) {
          if (peek() == '*' && peek(1) == '/') {
            advance();
            advance();
            closed = true;
            break;
          }
          advance();
        }
        if (!closed) {
          diagnostics_.push_back(Diagnostic::error("P002", "unterminated block comment", start));
        }
      } else {
        return;
      }
    }
  }

  std::string read_string() {
    const SourcePosition start = pos_;
    advance();  // opening quote
    std::string value;
    while (true) {
      if (at_end()) {
        diagnostics_.push_back(Diagnostic::error("P002", "unterminated string literal", start));
        return value;
      }
      const char c = peek();
      if (c == '"') {
        advance();
        return value;
      }
      if (c == '\\') {
        const SourcePosition escape = pos_;
        advance();
        if (at_end()) continue;
        const char e = peek();
        if (e != '\\' && e != '"') {
          diagnostics_.push_back(
              Diagnostic::error("P001", "invalid escape sequence '\\" + std::string(1, e) + "'", escape));
        }
        value += e;
        advance();
        continue;
      }
      if (c == '\r' && peek(1) == '\n') {
        advance();
        continue;
      }
      value += c;
      advance();
    }
  }

  std::string_view source_;
  std::vector<Diagnostic>& diagnostics_;
  SourcePosition pos_;
};

enum class Scope { Model, UseCase, Version, Revision, Feature };

std::string_view scope_name(Scope scope) {
  switch (scope) {
    case Scope::Model: return "the model body";
    case Scope::UseCase: return "a use case";
    case Scope::Version: return "a version";
    case Scope::Revision: return "a revision";
    case Scope::Feature: return "a feature";
  }
  return "";
}

bool element_allowed(Scope scope, std::string_view kw) {
  switch (scope) {
    case Scope::Model: return kw == "usecase" || kw == "actor" || kw == "feature";
    case Scope::UseCase: return kw == "version";
    case Scope::Version: return kw == "revision";
    case Scope::Revision: return kw == "import" || kw == "feature";
    case Scope::Feature: return kw == "feature";
  }
  return false;
}

bool starts_element(std::string_view word) {
  return word == "usecase" || word == "version" || word == "revision" || word == "import" ||
         word == "feature" || word == "actor";
}

// Thrown after the offending diagnostic has been recorded.
struct Abort {};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diagnostics)
      : tokens_(std::move(tokens)), diagnostics_(diagnostics) {}

  VariabilityModel parse_model() {
    try {
      parse_header();
    } catch (const Abort&) {
      // Skip to the body so errors inside it still get reported.
      while (cur().kind != Tok::LBrace && cur().kind != Tok::End) ++index_;
      if (cur().kind == Tok::End) return std::move(model_);
      ++index_;
    }
    if (model_.root.name.empty()) model_.root.name = model_.name.empty() ? "?" : model_.name;
    scope_ = {model_.root.name};
    parse_body(Scope::Model, model_.root);
    if (cur().kind != Tok::End && !eof_reported_) {
      report(cur(), "P001", "unexpected " + describe(cur()) + " after the end of the model");
    }
    check_actor_names();
    return std::move(model_);
  }

 private:
  const Token& cur() const { return tokens_[index_]; }
  const Token& take() {
    const Token& token = tokens_[index_];
    if (token.kind != Tok::End) ++index_;
    return token;
  }

  bool at_word(std::string_view word) const { return cur().kind == Tok::Word && cur().text == word; }

  void report(const Token& at, std::string code, std::string message) {
    diagnostics_.push_back(Diagnostic::error(std::move(code), std::move(message), at.pos));
  }

  [[noreturn]] void fail(const Token& at, std::string code, std::string message) {
    report(at, std::move(code), std::move(message));
    throw Abort{};
  }

  [[noreturn]] void fail_expected(std::string_view what) {
    fail(cur(), "P001", "expected " + std::string(what) + ", found " + describe(cur()));
  }

  void expect(Tok kind, std::string_view what) {
    if (cur().kind != kind) fail_expected(what);
    take();
  }

  void expect_keyword(std::string_view kw) {
    if (!at_word(kw)) fail_expected("'" + std::string(kw) + "'");
    take();
  }

  const Token& expect_ident(std::string_view what) {
    if (cur().kind != Tok::Word) fail_expected(what);
    if (is_keyword(cur().text)) {
      fail(cur(), "P003", "keyword '" + cur().text + "' cannot be used as " + std::string(what));
    }
    return take();
  }

  void parse_header() {
    expect_keyword("vucfm");
    model_.name = expect_ident("a model name").text;
    expect_keyword("level");
    if (at_word("domain")) {
      take();
      model_.level = ModelLevel::domain();
    } else if (at_word("family") || at_word("specific")) {
      const bool family = take().text == "family";
      expect_keyword("of");
      std::string of = expect_ident("a model name").text;
      model_.level = family ? ModelLevel::family(std::move(of)) : ModelLevel::specific(std::move(of));
    } else {
      fail_expected("'domain', 'family' or 'specific'");
    }
    if (at_word("root")) {
      take();
      model_.root.name = expect_ident("a root feature name").text;
    }
    model_.root.kind = FeatureKind::Plain;
    expect(Tok::LBrace, "'{'");
  }

  // Consumes the closing brace. Returns its position, or nullopt at end of input.
  std::optional<SourcePosition> parse_body(Scope scope, FeatureNode& owner) {
    while (true) {
      const Token& token = cur();
      if (token.kind == Tok::RBrace) {
        take();
        return token.pos;
      }
      if (token.kind == Tok::End) {
        if (!eof_reported_) {
          report(token, "P001", "unexpected end of input, expected '}' to close " +
                                    std::string(scope_name(scope)));
          eof_reported_ = true;
        }
        return std::nullopt;
      }
      try {
        parse_element(scope, owner);
      } catch (const Abort&) {
        synchronize();
      }
    }
  }

  // Skips the rest of a broken element: up to and including a ';' or a
  // balanced block, stopping early before a new element keyword.
  void synchronize() {
    const std::size_t start = index_;
    int depth = 0;
    while (true) {
      const Token& token = cur();
      switch (token.kind) {
        case Tok::End: return;
        case Tok::LBrace: ++depth; break;
        case Tok::RBrace:
          if (depth == 0) return;
          if (--depth == 0) {
            take();
            return;
          }
          break;
        case Tok::Semi:
          if (depth == 0) {
            take();
            return;
          }
          break;
        case Tok::Word:
          if (depth == 0 && index_ > start && starts_element(token.text)) return;
          break;
        default: break;
      }
      take();
    }
  }

  void parse_element(Scope scope, FeatureNode& owner) {
    const Token& token = cur();
    if (token.kind == Tok::Word && is_keyword(token.text)) {
      if (!starts_element(token.text)) {
        fail(token, "P003", "keyword '" + token.text + "' cannot be used as a feature name");
      }
      if (!element_allowed(scope, token.text)) {
        fail(token, "P001", "'" + token.text + "' is not allowed inside " + std::string(scope_name(scope)));
      }
      if (token.text == "usecase") {
        parse_usecase(owner);
      } else if (token.text == "version") {
        parse_version(owner);
      } else if (token.text == "revision") {
        parse_revision(owner);
      } else if (token.text == "feature") {
        parse_feature(owner);
      } else if (token.text == "actor") {
        parse_actor();
      } else {
        parse_import();
      }
      return;
    }
    if (token.kind == Tok::Word) {
      parse_relation();
      return;
    }
    if (token.kind == Tok::Dot) fail(token, "P005", "malformed path: unexpected '.'");
    fail(token, "P001", "unexpected " + describe(token) + ", expected an element of " +
                            std::string(scope_name(scope)));
  }

  struct Header {
    FeatureNode node;
    const Token* name_token = nullptr;
  };

  Header parse_node_header(FeatureKind kind, std::string_view what) {
    take();  // kind keyword
    Header header;
    header.name_token = &expect_ident(what);
    header.node.name = header.name_token->text;
    header.node.kind = kind;
    header.node.position = header.name_token->pos;
    if (cur().kind == Tok::LBracket) header.node.attributes = parse_attributes();
    return header;
  }

  // Parses `{ body }` for a tree node and reports missing mandatory children.
  void parse_block(Scope scope, FeatureNode& node, std::string_view required_child) {
    expect(Tok::LBrace, "'{'");
    scope_.push_back(node.name);
    const auto close = parse_body(scope, node);
    scope_.pop_back();
    if (close && !required_child.empty() && node.children.empty()) {
      diagnostics_.push_back(Diagnostic::error(
          "P001",
          "expected '" + std::string(required_child) + "' before '}': '" + current_path(node.name) +
              "' needs at least one " + std::string(required_child),
          *close));
    }
  }

  void parse_usecase(FeatureNode& owner) {
    auto header = parse_node_header(FeatureKind::UseCase, "a use case name");
    parse_block(Scope::UseCase, header.node, "version");
    add_child(owner, std::move(header.node), *header.name_token);
  }

  void parse_version(FeatureNode& owner) {
    auto header = parse_node_header(FeatureKind::Version, "a version name");
    parse_block(Scope::Version, header.node, "revision");
    add_child(owner, std::move(header.node), *header.name_token);
  }

  void parse_revision(FeatureNode& owner) {
    auto header = parse_node_header(FeatureKind::Revision, "a revision name");
    parse_block(Scope::Revision, header.node, "");
    add_child(owner, std::move(header.node), *header.name_token);
  }

  void parse_feature(FeatureNode& owner) {
    auto header = parse_node_header(FeatureKind::Plain, "a feature name");
    if (at_word("and") || at_word("or") || at_word("xor")) {
      const auto& word = take().text;
      header.node.group = word == "and" ? Group::And : word == "or" ? Group::Or : Group::Xor;
    }
    if (cur().kind == Tok::Semi) {
      take();
    } else if (cur().kind == Tok::LBrace) {
      parse_block(Scope::Feature, header.node, "");
    } else {
      fail_expected("'{' or ';'");
    }
    add_child(owner, std::move(header.node), *header.name_token);
  }

  void parse_actor() {
    take();
    const Token& name = expect_ident("an actor name");
    Actor actor{name.text, {}, name.pos};
    if (cur().kind == Tok::LBracket) actor.attributes = parse_attributes();
    expect(Tok::Semi, "';'");
    if (model_.find_actor(actor.name) != nullptr) {
      report(name, "P004", "duplicate actor '" + actor.name + "'");
      return;
    }
    model_.actors.push_back(std::move(actor));
  }

  void parse_import() {
    const Token& kw = take();
    FeaturePath target = parse_path();
    expect(Tok::Semi, "';'");
    model_.relations.push_back(
        CrossRelation{FeaturePath(scope_), RelationKind::Import, std::move(target), kw.pos});
  }

  void parse_relation() {
    const Token& first = cur();
    FeaturePath source = parse_path();
    const Token& kind_token = cur();
    std::optional<RelationKind> kind;
    if (kind_token.kind == Tok::Word) kind = relation_kind_from_keyword(kind_token.text);
    if (!kind || *kind == RelationKind::Import) {
      fail_expected("a relation kind after '" + source.str() + "'");
    }
    take();
    FeaturePath target = parse_path();
    expect(Tok::Semi, "';'");
    model_.relations.push_back(CrossRelation{std::move(source), *kind, std::move(target), first.pos});
  }

  FeaturePath parse_path() {
    std::vector<std::string> segments;
    segments.push_back(expect_ident("a path segment").text);
    while (cur().kind == Tok::Dot) {
      take();
      if (cur().kind != Tok::Word) {
        fail(cur(), "P005",
             "malformed path '" + FeaturePath(segments).str() + ".': expected a name after '.', found " +
                 describe(cur()));
      }
      segments.push_back(expect_ident("a path segment").text);
    }
    return FeaturePath(std::move(segments));
  }

  std::vector<Attribute> parse_attributes() {
    expect(Tok::LBracket, "'['");
    std::vector<Attribute> attributes;
    while (true) {
      const Token& name = expect_ident("an attribute name");
      expect(Tok::Equals, "'='");
      if (cur().kind != Tok::String) fail_expected("a string value");
      std::string value = take().text;
      const bool duplicate = std::any_of(attributes.begin(), attributes.end(),
                                         [&](const Attribute& a) { return a.name == name.text; });
      if (duplicate) {
        report(name, "P004", "duplicate attribute '" + name.text + "'");
      } else {
        attributes.push_back({name.text, std::move(value)});
      }
      if (cur().kind == Tok::Comma) {
        take();
        continue;
      }
      expect(Tok::RBracket, "',' or ']'");
      return attributes;
    }
  }

  void add_child(FeatureNode& owner, FeatureNode child, const Token& name_token) {
    if (owner.find_child(child.name) != nullptr) {
      report(name_token, "P004",
             "duplicate name '" + child.name + "' under '" + FeaturePath(scope_).str() + "'");
      return;
    }
    owner.children.push_back(std::move(child));
  }

  void check_actor_names() {
    for (const auto& actor : model_.actors) {
      if (actor.name == model_.root.name) {
        diagnostics_.push_back(Diagnostic::error(
            "P004", "actor '" + actor.name + "' has the same name as the root feature", actor.position));
      }
    }
  }

  std::string current_path(const std::string& leaf) const {
    return FeaturePath(scope_).child(leaf).str();
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  std::vector<Diagnostic>& diagnostics_;
  VariabilityModel model_;
  std::vector<std::string> scope_;
  bool eof_reported_ = false;
};

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

ParseResult parse(std::string_view text) {
  ParseResult result;
  auto tokens = Lexer(text, result.diagnostics).tokenize();
  Parser parser(std::move(tokens), result.diagnostics);
  auto model = parser.parse_model();
  sort_diagnostics(result.diagnostics);
  if (!has_errors(result.diagnostics)) result.model = std::move(model);
  return result;
}

}  // namespace vucfm::dsl
