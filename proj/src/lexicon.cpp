#include "glue/lexicon.hpp"

#include <cctype>

#include "glue/error.hpp"
#include "formula_parse.hpp"
#include "lexer.hpp"
#include "meaning_parse.hpp"

namespace glue {

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\''; }

struct Item {
  std::string text;
  int line;
};

std::vector<Item> split_items(std::string_view text) {
  std::vector<Item> items;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (blank) {
      if (end == text.size()) break;
      continue;
    }
    if ((line[0] == ' ' || line[0] == '\t') && !items.empty()) {
      items.back().text += "\n" + line;
    } else {
      items.push_back({line, line_no});
    }
    if (end == text.size()) break;
  }
  return items;
}

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  int line;

  int column() const {
    std::size_t start = 0;
    if (i > 0) {
      if (auto nl = s.rfind('\n', i - 1); nl != std::string::npos) start = nl + 1;
    }
    int col = 1;
    for (std::size_t k = start; k < i; ++k) {
      if ((static_cast<unsigned char>(s[k]) & 0xC0) != 0x80) ++col;
    }
    return col;
  }
  int line_here() const {
    int l = line;
    for (std::size_t k = 0; k < i && k < s.size(); ++k) l += s[k] == '\n';
    return l;
  }
  void skip_space() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  std::string word() {
    std::size_t start = i;
    while (i < s.size() && word_char(s[i])) ++i;
    return s.substr(start, i - start);
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_here(), column()); }
};

}  // namespace

Lexicon parse_lexicon(std::string_view text) {
  Lexicon lex;
  std::vector<Item> items = split_items(text);

  std::vector<const Item*> templates;
  for (const auto& item : items) {
    if (item.text.find("::") == std::string::npos) {
      templates.push_back(&item);
      continue;
    }
    Cursor c{item.text, 0, item.line};
    c.skip_space();
    std::string name = c.word();
    if (name.empty()) c.fail("expected a constant name");
    c.skip_space();
    if (item.text.compare(c.i, 2, "::") != 0) c.fail("expected '::'");
    c.i += 2;
    detail::TokenStream in(detail::tokenize(std::string_view(item.text).substr(c.i), c.line_here(), c.column()));
    SemType type = detail::parse_type(in);
    in.expect(detail::Tok::End, "end of declaration");
    if (auto [it, fresh] = lex.signature_.emplace(name, type); !fresh && it->second != type) {
      throw ParseError("constant '" + name + "' declared twice with different types", item.line, 1);
    }
  }

  for (const Item* item : templates) {
    Cursor c{item->text, 0, item->line};
    c.skip_space();
    LexicalEntry entry;
    entry.line = item->line;
    entry.headword = lower(c.word());
    if (entry.headword.empty()) c.fail("expected a headword");
    c.skip_space();
    if (c.i < c.s.size() && c.s[c.i] == '(') {
      ++c.i;
      for (;;) {
        c.skip_space();
        std::string form = lower(c.word());
        if (form.empty()) c.fail("expected a PRED form");
        entry.forms.push_back(form);
        c.skip_space();
        if (c.i < c.s.size() && c.s[c.i] == ',') {
          ++c.i;
          continue;
        }
        break;
      }
      if (c.i >= c.s.size() || c.s[c.i] != ')') c.fail("expected ')' after PRED forms");
      ++c.i;
      c.skip_space();
    }
    if (c.i >= c.s.size() || c.s[c.i] != ':') c.fail("expected ':' after headword");
    ++c.i;

    detail::TokenStream in(detail::tokenize(std::string_view(item->text).substr(c.i), c.line_here(), c.column()));
    try {
      entry.formula = detail::parse_formula(in, lex.signature_, FormulaSyntax::Template);
    } catch (const TypeError& e) {
      throw TypeError("line " + std::to_string(item->line) + " (" + entry.headword + "): " + e.what());
    }
    in.expect(detail::Tok::End, "end of entry");

    if (lex.entries_.count(entry.headword)) {
      throw ParseError("duplicate entry '" + entry.headword + "'", item->line, 1);
    }
    for (const auto& form : entry.forms) {
      if (!lex.forms_.emplace(form, entry.headword).second) {
        throw ParseError("PRED form '" + form + "' belongs to two entries", item->line, 1);
      }
    }
    lex.entries_.emplace(entry.headword, std::move(entry));
  }
  return lex;
}

const LexicalEntry* Lexicon::find(std::string_view word) const {
  std::string key = lower(std::string(word));
  if (auto it = entries_.find(key); it != entries_.end()) return &it->second;
  if (auto it = forms_.find(key); it != forms_.end()) return &entries_.at(it->second);
  return nullptr;
}

std::string lexicon_key(const FStructure& node) {
  auto pred = node.pred();
  if (!pred) return {};
  auto spec = node.spec();
  return lower(spec ? *spec + "-" + *pred : *pred);
}

const LexicalEntry* Lexicon::lookup(const FStructure& node) const {
  std::string key = lexicon_key(node);
  if (key.empty()) return nullptr;
  if (const LexicalEntry* e = find(key)) return e;
  throw MissingEntryError("no lexicon entry for '" + key + "' (f-structure " + node.label() + ")");
}

Formula instantiate(const LexicalEntry& entry, const FStructure& node) {
  auto project = [&](const SemExpr& s) -> SemExpr {
    if (s.kind != SemExpr::Kind::Path) return s;
    if (s.modified) {
      auto owner = node.set_owner();
      if (!owner) {
        throw UninstantiableError(
            "entry '" + entry.headword + "' at " + node.label() + ": (mod ^) is undefined, " + node.label() +
                " is not in a modifier set",
            "MODS");
      }
      return SemExpr::label(sigma(*owner).label);
    }
    if (s.path.empty()) return SemExpr::label(sigma(node).label);
    FValue v = [&] {
      try {
        return resolve_path(node, s.path);
      } catch (const PathError& e) {
        std::string missing;
        std::optional<FValue> cur = FValue{node};
        for (const auto& attr : s.path) {
          auto* n = std::get_if<FStructure>(&*cur);
          if (!n || !(cur = n->get(attr))) {
            missing = attr;
            break;
          }
        }
        throw UninstantiableError("entry '" + entry.headword + "' at " + node.label() + ": " + s.str() +
                                      " does not resolve, " + e.what(),
                                  missing);
      }
    }();
    auto* target = std::get_if<FStructure>(&v);
    if (!target) {
      throw UninstantiableError("entry '" + entry.headword + "' at " + node.label() + ": " + s.str() +
                                    " is not an f-structure",
                                s.path.back());
    }
    return SemExpr::label(sigma(*target).label);
  };
  return map_sem(entry.formula, project);
}

PremiseSet premises(const FStructure& root, const Lexicon& lexicon) {
  PremiseSet out;
  for (const auto& node : root.nodes()) {
    const LexicalEntry* entry = lexicon.lookup(node);
    if (!entry) continue;
    Premise p;
    p.index = static_cast<int>(out.size());
    p.formula = instantiate(*entry, node);
    p.word = entry->headword;
    p.label = node.label();
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace glue
