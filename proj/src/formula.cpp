#include "glue/formula.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <set>
#include <tuple>

#include "glue/error.hpp"
#include "lexer.hpp"
#include "formula_parse.hpp"
#include "meaning_parse.hpp"

namespace glue {

namespace {
constexpr std::string_view kSigma = "_\xCF\x83";
}

std::string SemExpr::str() const {
  switch (kind) {
    case Kind::Label:
      return name + std::string(kSigma);
    case Kind::Variable:
      return name;
    case Kind::Meta:
      return "?" + name;
    case Kind::Path: {
      if (modified) return "(mod ^)";
      if (path.empty()) return "^";
      std::string out = "(^";
      for (const auto& a : path) out += " " + a;
      return out + ")";
    }
  }
  return {};
}

bool operator==(const SemExpr& a, const SemExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SemExpr::Kind::Meta:
      return a.meta == b.meta;
    case SemExpr::Kind::Path:
      return a.modified == b.modified && a.path == b.path;
    default:
      return a.name == b.name;
  }
}

struct Formula::Node {
  Kind kind;
  SemExpr sem;
  std::optional<SemType> type;
  Term meaning;
  bool explicit_type = false;
  Formula left;
  Formula right;
  std::string variable;
  Binder binder = Binder::Meaning;
  SemType variable_type = SemType::e();
};

Formula Formula::atom(SemExpr sem, std::optional<SemType> type, Term meaning, bool explicit_type) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->sem = std::move(sem);
  n->type = std::move(type);
  n->meaning = std::move(meaning);
  n->explicit_type = explicit_type;
  return Formula(std::move(n));
}

Formula Formula::proposition(std::string name) { return atom(SemExpr::label(std::move(name)), std::nullopt, Term()); }

Formula Formula::tensor(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tensor;
  n->left = std::move(left);
  n->right = std::move(right);
  return Formula(std::move(n));
}

Formula Formula::limp(Formula antecedent, Formula consequent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Limp;
  n->left = std::move(antecedent);
  n->right = std::move(consequent);
  return Formula(std::move(n));
}

Formula Formula::forall(std::string variable, Binder binder, SemType type, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Forall;
  n->variable = std::move(variable);
  n->binder = binder;
  n->variable_type = std::move(type);
  n->left = std::move(body);
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const SemExpr& Formula::sem() const { return node_->sem; }
const std::optional<SemType>& Formula::type() const { return node_->type; }
const Term& Formula::meaning() const { return node_->meaning; }
bool Formula::explicit_type() const { return node_->explicit_type; }
bool Formula::is_proposition() const { return node_->kind == Kind::Atom && !node_->meaning.valid(); }
const Formula& Formula::left() const { return node_->left; }
const Formula& Formula::right() const { return node_->right; }
const std::string& Formula::variable() const { return node_->variable; }
Formula::Binder Formula::binder() const { return node_->binder; }
const SemType& Formula::variable_type() const { return node_->variable_type; }
const Formula& Formula::body() const { return node_->left; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.valid() || !b.valid() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom:
      if (a.is_proposition() != b.is_proposition()) return false;
      if (!(a.sem() == b.sem()) || a.type() != b.type()) return false;
      return a.is_proposition() || a.meaning() == b.meaning();
    case Formula::Kind::Tensor:
    case Formula::Kind::Limp:
      return a.left() == b.left() && a.right() == b.right();
    case Formula::Kind::Forall:
      return a.variable() == b.variable() && a.binder() == b.binder() &&
             (a.binder() == Formula::Binder::Sem || a.variable_type() == b.variable_type()) && a.body() == b.body();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string type_subscript(const SemType& t) { return t.is_arrow() ? "_(" + t.str() + ")" : "_" + t.str(); }

// 0: anywhere; 1: antecedent or tensor-left; 2: tensor-right
void print(const Formula& f, int level, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (f.is_proposition()) {
        out += f.sem().name;
        return;
      }
      out += f.sem().str();
      out += f.explicit_type() && f.type() ? " ~>" + type_subscript(*f.type()) + " " : " ~> ";
      out += to_string(f.meaning());
      return;
    case Formula::Kind::Tensor: {
      bool parens = level >= 2;
      if (parens) out += "(";
      print(f.left(), 1, out);
      out += " * ";
      print(f.right(), 2, out);
      if (parens) out += ")";
      return;
    }
    case Formula::Kind::Limp: {
      bool parens = level >= 1;
      if (parens) out += "(";
      print(f.left(), 1, out);
      out += " -o ";
      print(f.right(), 0, out);
      if (parens) out += ")";
      return;
    }
    case Formula::Kind::Forall: {
      bool parens = level >= 1;
      if (parens) out += "(";
      out += "forall ";
      const Formula* cur = &f;
      bool first = true;
      while (cur->kind() == Formula::Kind::Forall) {
        if (!first) out += ", ";
        first = false;
        out += cur->variable();
        if (cur->binder() == Formula::Binder::Meaning) out += ":" + cur->variable_type().str();
        cur = &cur->body();
      }
      out += ". ";
      print(*cur, 0, out);
      if (parens) out += ")";
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

using detail::Tok;
using detail::TokenStream;

class FormulaParser {
 public:
  FormulaParser(TokenStream& in, const Signature& signature, FormulaSyntax syntax)
      : in_(in), signature_(signature), syntax_(syntax) {}

  Formula formula() {
    if (at_keyword("forall")) return quantified();
    Formula lhs = product();
    if (in_.accept(Tok::Limp)) return Formula::limp(lhs, formula());
    return lhs;
  }

 private:
  bool at_keyword(std::string_view word) const { return in_.at(Tok::Ident) && in_.peek().text == word; }

  Formula quantified() {
    in_.next();
    std::vector<std::tuple<std::string, Formula::Binder, SemType>> binders;
    do {
      const detail::Token& name = in_.expect(Tok::Ident, "a variable name after forall");
      if (name.text == "forall") in_.fail("expected a variable name");
      std::string var = name.text;
      if (in_.accept(Tok::Colon)) {
        binders.emplace_back(var, Formula::Binder::Meaning, detail::parse_type(in_));
      } else {
        binders.emplace_back(var, Formula::Binder::Sem, SemType::e());
      }
    } while (in_.accept(Tok::Comma));
    in_.expect(Tok::Dot, "'.' after forall binders");

    std::vector<std::pair<std::string, std::optional<SemType>>> saved_meaning;
    std::vector<std::pair<std::string, bool>> saved_sem;
    for (const auto& [var, binder, type] : binders) {
      if (binder == Formula::Binder::Meaning) {
        auto it = meaning_vars_.find(var);
        saved_meaning.emplace_back(var, it == meaning_vars_.end() ? std::nullopt : std::optional(it->second));
        saved_sem.emplace_back(var, sem_vars_.erase(var) > 0);
        meaning_vars_.insert_or_assign(var, type);
      } else {
        saved_sem.emplace_back(var, !sem_vars_.insert(var).second);
        auto it = meaning_vars_.find(var);
        saved_meaning.emplace_back(var, it == meaning_vars_.end() ? std::nullopt : std::optional(it->second));
        meaning_vars_.erase(var);
      }
    }
    Formula body = formula();
    for (auto it = saved_meaning.rbegin(); it != saved_meaning.rend(); ++it) {
      if (it->second) {
        meaning_vars_.insert_or_assign(it->first, *it->second);
      } else {
        meaning_vars_.erase(it->first);
      }
    }
    for (auto it = saved_sem.rbegin(); it != saved_sem.rend(); ++it) {
      if (it->second) {
        sem_vars_.insert(it->first);
      } else {
        sem_vars_.erase(it->first);
      }
    }
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      body = Formula::forall(std::get<0>(*it), std::get<1>(*it), std::get<2>(*it), body);
    }
    return body;
  }

  Formula product() {
    Formula lhs = factor();
    while (in_.accept(Tok::Star)) lhs = Formula::tensor(lhs, factor());
    return lhs;
  }

  bool at_path() const {
    if (!in_.at(Tok::LParen)) return false;
    if (in_.peek(1).kind == Tok::Caret && in_.peek(2).kind == Tok::Ident) return true;
    return in_.peek(1).kind == Tok::Ident && in_.peek(1).text == "mod" && in_.peek(2).kind == Tok::Caret &&
           in_.peek(3).kind == Tok::RParen;
  }

  Formula factor() {
    if (at_keyword("forall")) return quantified();
    if (in_.at(Tok::LParen) && !at_path()) {
      in_.next();
      Formula inner = formula();
      in_.expect(Tok::RParen, "')'");
      return inner;
    }
    return atom();
  }

  SemExpr path() {
    const detail::Token& where = in_.peek();
    if (syntax_ != FormulaSyntax::Template) {
      throw ParseError("^ paths are only allowed in lexical templates", where.line, where.column);
    }
    if (in_.accept(Tok::Caret)) return SemExpr::up();
    in_.expect(Tok::LParen, "'('");
    if (in_.at(Tok::Ident)) {
      in_.next();  // mod
      in_.expect(Tok::Caret, "'^'");
      in_.expect(Tok::RParen, "')'");
      return SemExpr::mod_up();
    }
    in_.expect(Tok::Caret, "'^'");
    std::vector<std::string> attrs;
    while (in_.at(Tok::Ident)) {
      std::string a = in_.next().text;
      std::transform(a.begin(), a.end(), a.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
      attrs.push_back(std::move(a));
    }
    in_.expect(Tok::RParen, "')' closing path");
    return SemExpr::up(std::move(attrs));
  }

  Formula atom() {
    const detail::Token start = in_.peek();
    SemExpr sem;
    if (in_.at(Tok::Caret) || in_.at(Tok::LParen)) {
      sem = path();
    } else if (in_.at(Tok::Ident)) {
      std::string name = in_.next().text;
      bool sigma_suffix = name.size() > kSigma.size() && name.ends_with(kSigma);
      if (sigma_suffix) name.resize(name.size() - kSigma.size());
      if (!sigma_suffix && sem_vars_.count(name)) {
        sem = SemExpr::variable(name);
      } else if (syntax_ == FormulaSyntax::Closed) {
        if (!sigma_suffix && !in_.at(Tok::Means)) return Formula::proposition(name);
        sem = SemExpr::label(name);
      } else {
        throw ParseError("unbound template variable '" + name + "'", start.line, start.column);
      }
    } else {
      in_.fail("expected an atom");
    }

    in_.expect(Tok::Means, "'~>'");
    std::optional<SemType> type;
    if (in_.at(Tok::Ident) && in_.peek().text.starts_with("_")) {
      const std::string& sub = in_.peek().text;
      if (sub == "_e" || sub == "_t") {
        type = sub == "_e" ? SemType::e() : SemType::t();
        in_.next();
      } else if (sub == "_" && in_.peek(1).kind == Tok::LParen) {
        in_.next();
        in_.next();
        type = detail::parse_type(in_);
        in_.expect(Tok::RParen, "')' closing type subscript");
      }
    }
    const detail::Token meaning_at = in_.peek();
    Term meaning;
    try {
      meaning = detail::parse_term(in_, signature_, meaning_vars_, type);
    } catch (const TypeError& e) {
      if (type) throw TypeError(std::string("ill-typed meaning side: ") + e.what());
      throw;
    }
    SemType actual = typecheck(meaning, meaning_vars_);
    return Formula::atom(std::move(sem), type ? *type : actual, std::move(meaning), type.has_value());
  }

  TokenStream& in_;
  const Signature& signature_;
  FormulaSyntax syntax_;
  TypeEnv meaning_vars_;
  std::set<std::string> sem_vars_;
};

}  // namespace

namespace detail {

Formula parse_formula(TokenStream& in, const Signature& signature, FormulaSyntax syntax) {
  return FormulaParser(in, signature, syntax).formula();
}

}  // namespace detail

Formula parse_formula(std::string_view text, const Signature& signature, FormulaSyntax syntax) {
  detail::TokenStream in(detail::tokenize(text));
  Formula f = detail::parse_formula(in, signature, syntax);
  in.expect(detail::Tok::End, "end of formula");
  return f;
}

// ---------------------------------------------------------------------------
// Structural operations

namespace {

template <typename AtomFn>
Formula rebuild(const Formula& f, const AtomFn& atom_fn) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return atom_fn(f);
    case Formula::Kind::Tensor:
      return Formula::tensor(rebuild(f.left(), atom_fn), rebuild(f.right(), atom_fn));
    case Formula::Kind::Limp:
      return Formula::limp(rebuild(f.left(), atom_fn), rebuild(f.right(), atom_fn));
    case Formula::Kind::Forall:
      return Formula::forall(f.variable(), f.binder(), f.variable_type(), rebuild(f.body(), atom_fn));
  }
  return f;
}

}  // namespace

Formula substitute_meaning(const Formula& f, const std::string& variable, const Term& value) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (f.is_proposition()) return f;
      return Formula::atom(f.sem(), f.type(), substitute(f.meaning(), variable, value), f.explicit_type());
    case Formula::Kind::Tensor:
      return Formula::tensor(substitute_meaning(f.left(), variable, value),
                             substitute_meaning(f.right(), variable, value));
    case Formula::Kind::Limp:
      return Formula::limp(substitute_meaning(f.left(), variable, value),
                           substitute_meaning(f.right(), variable, value));
    case Formula::Kind::Forall:
      if (f.variable() == variable && f.binder() == Formula::Binder::Meaning) return f;
      return Formula::forall(f.variable(), f.binder(), f.variable_type(),
                             substitute_meaning(f.body(), variable, value));
  }
  return f;
}

Formula substitute_sem(const Formula& f, const std::string& variable, const SemExpr& value) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (f.sem().kind == SemExpr::Kind::Variable && f.sem().name == variable) {
        return Formula::atom(value, f.type(), f.meaning(), f.explicit_type());
      }
      return f;
    case Formula::Kind::Tensor:
      return Formula::tensor(substitute_sem(f.left(), variable, value), substitute_sem(f.right(), variable, value));
    case Formula::Kind::Limp:
      return Formula::limp(substitute_sem(f.left(), variable, value), substitute_sem(f.right(), variable, value));
    case Formula::Kind::Forall:
      if (f.variable() == variable && f.binder() == Formula::Binder::Sem) return f;
      return Formula::forall(f.variable(), f.binder(), f.variable_type(), substitute_sem(f.body(), variable, value));
  }
  return f;
}

Formula map_sem(const Formula& f, const std::function<SemExpr(const SemExpr&)>& fn) {
  return rebuild(f, [&](const Formula& a) {
    if (a.is_proposition()) return a;
    return Formula::atom(fn(a.sem()), a.type(), a.meaning(), a.explicit_type());
  });
}

Formula map_meaning(const Formula& f, const std::function<Term(const Term&)>& fn) {
  return rebuild(f, [&](const Formula& a) {
    if (a.is_proposition()) return a;
    return Formula::atom(a.sem(), a.type(), fn(a.meaning()), a.explicit_type());
  });
}

namespace {

bool closed_under(const Formula& f, std::set<std::string>& meaning, std::set<std::string>& sem) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      if (f.is_proposition()) return true;
      const SemExpr& s = f.sem();
      if (s.kind == SemExpr::Kind::Path || s.kind == SemExpr::Kind::Meta) return false;
      if (s.kind == SemExpr::Kind::Variable && !sem.count(s.name)) return false;
      return !contains(f.meaning(), [&](const Term& t) {
        return t.kind() == Term::Kind::Meta || (t.kind() == Term::Kind::Variable && !meaning.count(t.name()));
      });
    }
    case Formula::Kind::Tensor:
    case Formula::Kind::Limp:
      return closed_under(f.left(), meaning, sem) && closed_under(f.right(), meaning, sem);
    case Formula::Kind::Forall: {
      auto& scope = f.binder() == Formula::Binder::Meaning ? meaning : sem;
      bool fresh = scope.insert(f.variable()).second;
      bool ok = closed_under(f.body(), meaning, sem);
      if (fresh) scope.erase(f.variable());
      return ok;
    }
  }
  return false;
}

}  // namespace

bool is_closed(const Formula& f) {
  std::set<std::string> meaning, sem;
  return closed_under(f, meaning, sem);
}

std::string shape(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return "A";
    case Formula::Kind::Tensor:
      return "(" + shape(f.left()) + "*" + shape(f.right()) + ")";
    case Formula::Kind::Limp:
      return "(" + shape(f.left()) + "-o" + shape(f.right()) + ")";
    case Formula::Kind::Forall:
      return "forall(" + shape(f.body()) + ")";
  }
  return {};
}

int size(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return 1;
    case Formula::Kind::Tensor:
    case Formula::Kind::Limp:
      return 1 + size(f.left()) + size(f.right());
    case Formula::Kind::Forall:
      return 1 + size(f.body());
  }
  return 0;
}

std::vector<std::string> labels(const Formula& f) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  auto visit = [&](auto&& self, const Formula& g) -> void {
    switch (g.kind()) {
      case Formula::Kind::Atom:
        if (g.sem().kind == SemExpr::Kind::Label && !g.is_proposition() && seen.insert(g.sem().name).second) {
          out.push_back(g.sem().name);
        }
        return;
      case Formula::Kind::Tensor:
      case Formula::Kind::Limp:
        self(self, g.left());
        self(self, g.right());
        return;
      case Formula::Kind::Forall:
        self(self, g.body());
        return;
    }
  };
  visit(visit, f);
  return out;
}

}  // namespace glue
