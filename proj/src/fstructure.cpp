#include "glue/fstructure.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "glue/error.hpp"
#include "lexer.hpp"

namespace glue {

namespace detail {

struct NodeSet {
  std::vector<std::size_t> members;
};

using NodeValue = std::variant<std::size_t, Symbol, NodeSet>;

struct Node {
  std::string label;
  std::vector<std::pair<std::string, NodeValue>> attributes;
  std::optional<std::size_t> set_owner;
  bool defined = false;  // has had a non-empty body
};

struct AnalysisData {
  std::vector<Node> nodes;
  std::vector<SemStructure> sems;
  std::size_t root = 0;
};

}  // namespace detail

namespace {

using detail::Tok;

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

class FParser {
 public:
  explicit FParser(std::string_view text) : in_(detail::tokenize(text)) {}

  std::shared_ptr<detail::AnalysisData> run() {
    data_ = std::make_shared<detail::AnalysisData>();
    if (!in_.at(Tok::Ident) && !in_.at(Tok::LBracket)) in_.fail("expected an f-structure");
    data_->root = node();
    in_.expect(Tok::End, "end of input after the f-structure");
    for (auto& n : data_->nodes) {
      if (n.label.empty()) n.label = fresh_label();
    }
    for (std::size_t i = 0; i < data_->nodes.size(); ++i) {
      data_->sems.push_back(SemStructure{data_->nodes[i].label, i});
    }
    return data_;
  }

 private:
  std::string fresh_label() {
    for (;;) {
      std::string candidate = "_" + std::to_string(++generated_);
      if (!labels_.count(candidate)) {
        labels_[candidate] = 0;
        return candidate;
      }
    }
  }

  std::size_t node() {
    std::string label;
    detail::Token at = in_.peek();
    if (in_.at(Tok::Ident)) {
      label = in_.next().text;
      in_.expect(Tok::Colon, "':' after f-structure label");
    }
    in_.expect(Tok::LBracket, "'['");

    std::size_t index;
    bool existing = false;
    if (!label.empty()) {
      if (auto it = labels_.find(label); it != labels_.end()) {
        index = it->second;
        existing = true;
      } else {
        index = add(label);
      }
    } else {
      index = add(label);
    }

    if (in_.accept(Tok::RBracket)) return index;  // empty body: fresh empty node or a reference
    if (existing && data_->nodes[index].defined) {
      throw ParseError("duplicate label '" + label + "'", at.line, at.column);
    }
    data_->nodes[index].defined = true;

    std::set<std::string> seen;
    do {
      if (in_.at(Tok::RBracket)) break;  // trailing ';'
      const detail::Token name = in_.peek();
      if (name.kind != Tok::Ident) in_.fail("expected an attribute name");
      in_.next();
      std::string attr = upper(name.text);
      if (!seen.insert(attr).second) {
        throw ParseError("attribute " + attr + " given twice", name.line, name.column);
      }
      detail::NodeValue v = value(index);
      if (attr == "MODS" && !std::holds_alternative<detail::NodeSet>(v)) {
        throw ParseError("MODS must be a set { ... }", name.line, name.column);
      }
      data_->nodes[index].attributes.emplace_back(attr, std::move(v));
    } while (in_.accept(Tok::Semi));
    in_.expect(Tok::RBracket, "']' or ';'");
    return index;
  }

  std::size_t add(const std::string& label) {
    data_->nodes.push_back(detail::Node{label, {}, std::nullopt, false});
    std::size_t index = data_->nodes.size() - 1;
    if (!label.empty()) labels_[label] = index;
    return index;
  }

  detail::NodeValue value(std::size_t owner) {
    const detail::Token& t = in_.peek();
    if (t.kind == Tok::Quoted) return Symbol{in_.next().text, true};
    if (t.kind == Tok::LBracket) return node();
    if (t.kind == Tok::Ident) {
      if (in_.peek(1).kind == Tok::Colon) return node();
      return Symbol{in_.next().text, false};
    }
    if (in_.accept(Tok::LBrace)) {
      detail::NodeSet set;
      while (!in_.at(Tok::RBrace)) {
        if (!in_.at(Tok::Ident) && !in_.at(Tok::LBracket)) in_.fail("expected an f-structure in set");
        std::size_t member = node();
        if (std::find(set.members.begin(), set.members.end(), member) == set.members.end()) {
          set.members.push_back(member);
          data_->nodes[member].set_owner = owner;
        }
        if (!in_.accept(Tok::Semi) && !in_.accept(Tok::Comma)) break;
      }
      in_.expect(Tok::RBrace, "'}' closing set");
      return set;
    }
    in_.fail("unknown attribute value form");
  }

  detail::TokenStream in_;
  std::shared_ptr<detail::AnalysisData> data_;
  std::map<std::string, std::size_t> labels_;
  int generated_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------

const std::string& FStructure::label() const { return data_->nodes[index_].label; }

std::vector<std::string> FStructure::attribute_names() const {
  std::vector<std::string> out;
  for (const auto& [name, v] : data_->nodes[index_].attributes) out.push_back(name);
  return out;
}

std::optional<FValue> FStructure::get(std::string_view attribute) const {
  std::string key = upper(std::string(attribute));
  for (const auto& [name, v] : data_->nodes[index_].attributes) {
    if (name != key) continue;
    if (auto* n = std::get_if<std::size_t>(&v)) return FValue{FStructure(data_, *n)};
    if (auto* s = std::get_if<Symbol>(&v)) return FValue{*s};
    std::vector<FStructure> members;
    for (auto m : std::get<detail::NodeSet>(v).members) members.push_back(FStructure(data_, m));
    std::sort(members.begin(), members.end(),
              [](const FStructure& a, const FStructure& b) { return a.label() < b.label(); });
    return FValue{std::move(members)};
  }
  return std::nullopt;
}

std::optional<std::string> FStructure::pred() const {
  auto v = get("PRED");
  if (!v) return std::nullopt;
  if (auto* s = std::get_if<Symbol>(&*v)) return s->text;
  return std::nullopt;
}

std::optional<std::string> FStructure::spec() const {
  auto v = get("SPEC");
  if (!v) return std::nullopt;
  if (auto* s = std::get_if<Symbol>(&*v)) return s->text;
  return std::nullopt;
}

std::optional<FStructure> FStructure::set_owner() const {
  const auto& owner = data_->nodes[index_].set_owner;
  if (!owner) return std::nullopt;
  return FStructure(data_, *owner);
}

FStructure FStructure::root() const { return FStructure(data_, data_->root); }

std::vector<FStructure> FStructure::nodes() const {
  std::vector<FStructure> out;
  std::vector<bool> seen(data_->nodes.size(), false);
  auto visit = [&](auto&& self, std::size_t i) -> void {
    if (seen[i]) return;
    seen[i] = true;
    FStructure f(data_, i);
    out.push_back(f);
    for (const auto& name : f.attribute_names()) {
      FValue v = *f.get(name);
      if (auto* n = std::get_if<FStructure>(&v)) self(self, n->index_);
      if (auto* set = std::get_if<std::vector<FStructure>>(&v)) {
        for (const auto& m : *set) self(self, m.index_);
      }
    }
  };
  visit(visit, data_->root);
  return out;
}

std::optional<FStructure> FStructure::find(std::string_view label) const {
  for (std::size_t i = 0; i < data_->nodes.size(); ++i) {
    if (data_->nodes[i].label == label) return FStructure(data_, i);
  }
  return std::nullopt;
}

FStructure parse_fstructure(std::string_view text) {
  auto data = FParser(text).run();
  std::size_t root = data->root;
  return FStructure(std::move(data), root);
}

namespace {

void print_node(const FStructure& f, std::set<std::size_t>& printed, std::string& out) {
  out += f.label() + ":[";
  if (!printed.insert(f.id()).second) {
    out += "]";
    return;
  }
  bool first = true;
  for (const auto& name : f.attribute_names()) {
    if (!first) out += "; ";
    first = false;
    out += name + " ";
    FValue v = *f.get(name);
    if (auto* s = std::get_if<Symbol>(&v)) {
      out += s->quoted ? "'" + s->text + "'" : s->text;
    } else if (auto* n = std::get_if<FStructure>(&v)) {
      print_node(*n, printed, out);
    } else {
      const auto& members = std::get<std::vector<FStructure>>(v);
      out += "{";
      for (std::size_t i = 0; i < members.size(); ++i) {
        out += i == 0 ? " " : "; ";
        print_node(members[i], printed, out);
      }
      out += members.empty() ? "}" : " }";
    }
  }
  out += "]";
}

}  // namespace

std::string print_fstructure(const FStructure& root) {
  std::string out;
  std::set<std::size_t> printed;
  print_node(root, printed, out);
  return out;
}

FValue resolve_path(const FStructure& from, const std::vector<std::string>& path) {
  if (path.empty()) throw PathError("empty path");
  FValue current = from;
  std::string walked = "(" + from.label();
  for (const auto& attr : path) {
    auto* node = std::get_if<FStructure>(&current);
    if (!node) throw PathError(walked + ") is not an f-structure, cannot take " + upper(attr));
    auto next = node->get(attr);
    walked += " " + upper(attr);
    if (!next) throw PathError(walked + ") is undefined");
    current = std::move(*next);
  }
  return current;
}

const SemStructure& sigma(const FStructure& node) { return node.data_->sems[node.index_]; }

}  // namespace glue
