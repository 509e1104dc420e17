#include "glue/meaning.hpp"

#include <optional>
#include <set>
#include <sstream>

#include "glue/error.hpp"
#include "meaning_parse.hpp"

namespace glue {

// ---------------------------------------------------------------------------
// SemType

SemType SemType::arrow(SemType from, SemType to) {
  SemType type(Kind::Arrow);
  type.parts_ = std::make_shared<const std::pair<SemType, SemType>>(std::move(from), std::move(to));
  return type;
}

const SemType& SemType::from() const {
  if (!parts_) throw TypeError("type " + str() + " is not a function type");
  return parts_->first;
}

const SemType& SemType::to() const {
  if (!parts_) throw TypeError("type " + str() + " is not a function type");
  return parts_->second;
}

bool operator==(const SemType& a, const SemType& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != SemType::Kind::Arrow) return true;
  return a.parts_ == b.parts_ || (a.from() == b.from() && a.to() == b.to());
}

std::string SemType::str() const {
  switch (kind_) {
    case Kind::Entity:
      return "e";
    case Kind::Truth:
      return "t";
    case Kind::Arrow:
      break;
  }
  std::string lhs = from().str();
  if (from().is_arrow()) lhs = "(" + lhs + ")";
  return lhs + " -> " + to().str();
}

std::ostream& operator<<(std::ostream& os, const SemType& type) { return os << type.str(); }

// ---------------------------------------------------------------------------
// Term construction and access

struct Term::Node {
  Kind kind;
  Tag tag = Tag::Plain;
  std::string name;
  SemType type = SemType::e();
  int index = 0;
  Term first;
  Term second;
};

Term Term::constant(std::string name, SemType type) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Constant, Tag::Plain, std::move(name), std::move(type), -1, {}, {}}));
}

Term Term::hypothesis(std::string name, SemType type, int id) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Constant, Tag::Hypothesis, std::move(name), std::move(type), id, {}, {}}));
}

Term Term::hole(SemType type, int id) {
  return Term(std::make_shared<const Node>(Node{Kind::Constant, Tag::Hole, "?", std::move(type), id, {}, {}}));
}

Term Term::variable(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Variable, Tag::Plain, std::move(name), SemType::e(), 0, {}, {}}));
}

Term Term::meta(int id, SemType type, std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Meta, Tag::Plain, std::move(name), std::move(type), id, {}, {}}));
}

Term Term::bound(int index) {
  return Term(std::make_shared<const Node>(Node{Kind::Bound, Tag::Plain, {}, SemType::e(), index, {}, {}}));
}

Term Term::apply(Term fun, Term arg) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Application, Tag::Plain, {}, SemType::e(), 0, std::move(fun), std::move(arg)}));
}

Term Term::apply(Term fun, const std::vector<Term>& args) {
  for (const auto& a : args) fun = apply(std::move(fun), a);
  return fun;
}

Term Term::lambda(std::string hint, SemType type, Term body) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Abstraction, Tag::Plain, std::move(hint), std::move(type), 0, std::move(body), {}}));
}

Term::Kind Term::kind() const { return node_->kind; }
Term::Tag Term::tag() const { return node_->tag; }
const std::string& Term::name() const { return node_->name; }
const SemType& Term::type() const { return node_->type; }
int Term::index() const { return node_->index; }
const Term& Term::fun() const { return node_->first; }
const Term& Term::arg() const { return node_->second; }
const Term& Term::body() const { return node_->first; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_ || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Constant:
      return a.tag() == b.tag() && a.name() == b.name() && a.index() == b.index() && a.type() == b.type();
    case Term::Kind::Variable:
      return a.name() == b.name();
    case Term::Kind::Meta:
    case Term::Kind::Bound:
      return a.index() == b.index();
    case Term::Kind::Application:
      return a.fun() == b.fun() && a.arg() == b.arg();
    case Term::Kind::Abstraction:
      return a.type() == b.type() && a.body() == b.body();
  }
  return false;
}

// ---------------------------------------------------------------------------
// de Bruijn machinery

namespace {

Term shift(const Term& t, int by, int cutoff) {
  switch (t.kind()) {
    case Term::Kind::Bound:
      return t.index() >= cutoff ? Term::bound(t.index() + by) : t;
    case Term::Kind::Application:
      return Term::apply(shift(t.fun(), by, cutoff), shift(t.arg(), by, cutoff));
    case Term::Kind::Abstraction:
      return Term::lambda(t.name(), t.type(), shift(t.body(), by, cutoff + 1));
    default:
      return t;
  }
}

// Replace index `depth` by `value` (closed relative to depth 0) and close the gap.
Term instantiate_bound(const Term& t, int depth, const Term& value) {
  switch (t.kind()) {
    case Term::Kind::Bound:
      if (t.index() == depth) return shift(value, depth, 0);
      if (t.index() > depth) return Term::bound(t.index() - 1);
      return t;
    case Term::Kind::Application:
      return Term::apply(instantiate_bound(t.fun(), depth, value), instantiate_bound(t.arg(), depth, value));
    case Term::Kind::Abstraction:
      return Term::lambda(t.name(), t.type(), instantiate_bound(t.body(), depth + 1, value));
    default:
      return t;
  }
}

bool mentions_index(const Term& t, int index) {
  switch (t.kind()) {
    case Term::Kind::Bound:
      return t.index() == index;
    case Term::Kind::Application:
      return mentions_index(t.fun(), index) || mentions_index(t.arg(), index);
    case Term::Kind::Abstraction:
      return mentions_index(t.body(), index + 1);
    default:
      return false;
  }
}

bool loose_at_or_above(const Term& t, int depth) {
  switch (t.kind()) {
    case Term::Kind::Bound:
      return t.index() >= depth;
    case Term::Kind::Application:
      return loose_at_or_above(t.fun(), depth) || loose_at_or_above(t.arg(), depth);
    case Term::Kind::Abstraction:
      return loose_at_or_above(t.body(), depth + 1);
    default:
      return false;
  }
}

template <typename Leaf>
Term map_leaves(const Term& t, int depth, const Leaf& leaf) {
  switch (t.kind()) {
    case Term::Kind::Application:
      return Term::apply(map_leaves(t.fun(), depth, leaf), map_leaves(t.arg(), depth, leaf));
    case Term::Kind::Abstraction:
      return Term::lambda(t.name(), t.type(), map_leaves(t.body(), depth + 1, leaf));
    default:
      return leaf(t, depth);
  }
}

}  // namespace

Term Term::abstract(const std::string& name, SemType type, const Term& body) {
  Term inner = map_leaves(shift(body, 1, 0), 0, [&](const Term& leaf, int depth) {
    if (leaf.kind() == Kind::Variable && leaf.name() == name) return bound(depth);
    return leaf;
  });
  return lambda(name, std::move(type), std::move(inner));
}

Term substitute(const Term& term, const std::string& variable, const Term& value) {
  return map_leaves(term, 0, [&](const Term& leaf, int depth) {
    if (leaf.kind() == Term::Kind::Variable && leaf.name() == variable) return shift(value, depth, 0);
    return leaf;
  });
}

Term substitute_metas(const Term& term, const std::map<int, Term>& values) {
  if (values.empty()) return term;
  return map_leaves(term, 0, [&](const Term& leaf, int depth) {
    if (leaf.kind() == Term::Kind::Meta) {
      auto it = values.find(leaf.index());
      if (it != values.end()) return shift(it->second, depth, 0);
    }
    return leaf;
  });
}

Term abstract_constant(const Term& body, const Term& constant, std::string hint) {
  Term inner = map_leaves(shift(body, 1, 0), 0, [&](const Term& leaf, int depth) {
    if (leaf == constant) return Term::bound(depth);
    return leaf;
  });
  return Term::lambda(std::move(hint), constant.type(), std::move(inner));
}

bool contains(const Term& term, const std::function<bool(const Term&)>& pred) {
  if (pred(term)) return true;
  switch (term.kind()) {
    case Term::Kind::Application:
      return contains(term.fun(), pred) || contains(term.arg(), pred);
    case Term::Kind::Abstraction:
      return contains(term.body(), pred);
    default:
      return false;
  }
}

bool has_metas(const Term& term) {
  return contains(term, [](const Term& t) { return t.kind() == Term::Kind::Meta; });
}

bool has_loose_bound(const Term& term) { return loose_at_or_above(term, 0); }

std::pair<Term, std::vector<Term>> spine(const Term& term) {
  std::vector<Term> args;
  Term head = term;
  while (head.kind() == Term::Kind::Application) {
    args.push_back(head.arg());
    head = head.fun();
  }
  return {head, std::vector<Term>(args.rbegin(), args.rend())};
}

// ---------------------------------------------------------------------------
// Typing and normalization

namespace {

SemType type_of(const Term& t, const TypeEnv& env, std::vector<SemType>& context) {
  switch (t.kind()) {
    case Term::Kind::Constant:
    case Term::Kind::Meta:
      return t.type();
    case Term::Kind::Variable: {
      auto it = env.find(t.name());
      if (it == env.end()) throw TypeError("unbound variable '" + t.name() + "'");
      return it->second;
    }
    case Term::Kind::Bound: {
      int i = static_cast<int>(context.size()) - 1 - t.index();
      if (i < 0) throw TypeError("dangling bound variable #" + std::to_string(t.index()));
      return context[i];
    }
    case Term::Kind::Application: {
      SemType fun = type_of(t.fun(), env, context);
      if (!fun.is_arrow()) {
        throw TypeError("ill-typed application: " + to_string(t.fun()) + " has type " + fun.str() +
                        " and cannot be applied");
      }
      SemType arg = type_of(t.arg(), env, context);
      if (arg != fun.from()) {
        throw TypeError("ill-typed application: " + to_string(t.fun()) + " expects " + fun.from().str() +
                        " but " + to_string(t.arg()) + " has type " + arg.str());
      }
      return fun.to();
    }
    case Term::Kind::Abstraction: {
      context.push_back(t.type());
      SemType body = type_of(t.body(), env, context);
      context.pop_back();
      return SemType::arrow(t.type(), body);
    }
  }
  throw TypeError("invalid term");
}

}  // namespace

SemType typecheck(const Term& term, const TypeEnv& env) {
  std::vector<SemType> context;
  return type_of(term, env, context);
}

Term normalize(const Term& term) {
  switch (term.kind()) {
    case Term::Kind::Application: {
      Term fun = normalize(term.fun());
      Term arg = normalize(term.arg());
      if (fun.kind() == Term::Kind::Abstraction) return normalize(instantiate_bound(fun.body(), 0, arg));
      return Term::apply(std::move(fun), std::move(arg));
    }
    case Term::Kind::Abstraction:
      return Term::lambda(term.name(), term.type(), normalize(term.body()));
    default:
      return term;
  }
}

namespace {

// Eta-reduction of a beta-normal term never creates a beta-redex in a
// position that matters: a reduced lambda lands where a lambda already was.
Term eta_short(const Term& term) {
  switch (term.kind()) {
    case Term::Kind::Application:
      return Term::apply(eta_short(term.fun()), eta_short(term.arg()));
    case Term::Kind::Abstraction: {
      Term body = eta_short(term.body());
      if (body.kind() == Term::Kind::Application && body.arg().kind() == Term::Kind::Bound &&
          body.arg().index() == 0 && !mentions_index(body.fun(), 0)) {
        return shift(body.fun(), -1, 0);
      }
      return Term::lambda(term.name(), term.type(), std::move(body));
    }
    default:
      return term;
  }
}

}  // namespace

Term canonical(const Term& term) {
  return eta_short(normalize(term));
}

bool equivalent(const Term& a, const Term& b, const TypeEnv& env) {
  SemType ta = typecheck(a, env);
  SemType tb = typecheck(b, env);
  if (ta != tb) throw TypeError("cannot compare terms of types " + ta.str() + " and " + tb.str());
  return canonical(a) == canonical(b);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool is_atomic(const Term& t) {
  return t.kind() != Term::Kind::Application && t.kind() != Term::Kind::Abstraction;
}

class Printer {
 public:
  explicit Printer(const Term& root) {
    contains(root, [this](const Term& t) {
      if (t.kind() == Term::Kind::Constant || t.kind() == Term::Kind::Variable) reserved_.insert(t.name());
      return false;
    });
  }

  std::string print(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Constant:
      case Term::Kind::Variable:
        return t.name();
      case Term::Kind::Meta:
        return "?" + (t.name().empty() ? std::to_string(t.index()) : t.name());
      case Term::Kind::Bound: {
        int i = static_cast<int>(scope_.size()) - 1 - t.index();
        return i >= 0 ? scope_[i] : "#" + std::to_string(t.index());
      }
      case Term::Kind::Abstraction: {
        std::string name = fresh(t.name().empty() ? "x" : t.name());
        scope_.push_back(name);
        std::string body = print(t.body());
        scope_.pop_back();
        return "\\" + name + ". " + body;
      }
      case Term::Kind::Application:
        break;
    }
    auto [head, args] = spine(t);
    std::string out = print(head);
    if (!is_atomic(head)) out = "(" + out + ")";
    bool all_atomic = true;
    for (const auto& a : args) all_atomic = all_atomic && is_atomic(a);
    out += "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i > 0) out += all_atomic ? "," : ", ";
      out += print(args[i]);
    }
    return out + ")";
  }

 private:
  bool taken(const std::string& name) const {
    if (reserved_.count(name)) return true;
    for (const auto& s : scope_) {
      if (s == name) return true;
    }
    return false;
  }

  std::string fresh(const std::string& hint) const {
    if (!taken(hint)) return hint;
    for (int i = 1;; ++i) {
      std::string candidate = hint + std::to_string(i);
      if (!taken(candidate)) return candidate;
    }
  }

  std::set<std::string> reserved_;
  std::vector<std::string> scope_;
};

}  // namespace

std::string to_string(const Term& term) {
  if (!term.valid()) return "<none>";
  return Printer(term).print(term);
}

std::ostream& operator<<(std::ostream& os, const Term& term) { return os << to_string(term); }

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

namespace {

struct Raw {
  enum class Kind { Ident, Apply, Lambda } kind;
  std::string name;
  std::optional<SemType> annotation;
  std::vector<std::shared_ptr<Raw>> children;  // Apply: fun, args...; Lambda: body
  int line = 0;
  int column = 0;
};

using RawPtr = std::shared_ptr<Raw>;

SemType parse_type_atom(TokenStream& in) {
  if (in.accept(Tok::LParen)) {
    SemType inner = parse_type(in);
    in.expect(Tok::RParen, "')'");
    return inner;
  }
  if (in.at(Tok::Ident) && (in.peek().text == "e" || in.peek().text == "t")) {
    return in.next().text == "e" ? SemType::e() : SemType::t();
  }
  in.fail("expected a type ('e', 't', or '(...)')");
}

RawPtr parse_raw(TokenStream& in);

RawPtr parse_raw_atom(TokenStream& in) {
  const Token& tok = in.peek();
  if (in.accept(Tok::LParen)) {
    RawPtr inner = parse_raw(in);
    in.expect(Tok::RParen, "')'");
    return inner;
  }
  if (tok.kind == Tok::Ident) {
    in.next();
    return std::make_shared<Raw>(Raw{Raw::Kind::Ident, tok.text, std::nullopt, {}, tok.line, tok.column});
  }
  in.fail("expected a meaning term");
}

RawPtr parse_raw(TokenStream& in) {
  const Token start = in.peek();
  if (in.accept(Tok::Lambda)) {
    const Token& name = in.expect(Tok::Ident, "a bound variable name");
    auto lam = std::make_shared<Raw>(Raw{Raw::Kind::Lambda, name.text, std::nullopt, {}, start.line, start.column});
    if (in.accept(Tok::Colon)) lam->annotation = parse_type(in);
    in.expect(Tok::Dot, "'.' after lambda binder");
    lam->children.push_back(parse_raw(in));
    return lam;
  }
  RawPtr term = parse_raw_atom(in);
  while (in.at(Tok::LParen)) {
    const Token open = in.next();
    auto app = std::make_shared<Raw>(Raw{Raw::Kind::Apply, {}, std::nullopt, {term}, open.line, open.column});
    do {
      app->children.push_back(parse_raw(in));
    } while (in.accept(Tok::Comma));
    in.expect(Tok::RParen, "')' closing argument list");
    term = app;
  }
  return term;
}

std::string where(const Raw& raw) { return std::to_string(raw.line) + ":" + std::to_string(raw.column) + ": "; }

class Elaborator {
 public:
  Elaborator(const Signature& signature, const TypeEnv& variables) : signature_(signature), variables_(variables) {}

  std::pair<Term, SemType> run(const Raw& raw, const std::optional<SemType>& expected) {
    auto result = infer(raw, expected);
    if (expected && result.second != *expected) {
      throw TypeError(where(raw) + "expected type " + expected->str() + ", found " + result.second.str());
    }
    return result;
  }

 private:
  std::pair<Term, SemType> infer(const Raw& raw, const std::optional<SemType>& expected) {
    switch (raw.kind) {
      case Raw::Kind::Ident: {
        for (int i = static_cast<int>(scope_.size()) - 1; i >= 0; --i) {
          if (scope_[i].first == raw.name) {
            return {Term::bound(static_cast<int>(scope_.size()) - 1 - i), scope_[i].second};
          }
        }
        if (auto it = variables_.find(raw.name); it != variables_.end()) return {Term::variable(raw.name), it->second};
        if (auto it = signature_.find(raw.name); it != signature_.end()) {
          return {Term::constant(raw.name, it->second), it->second};
        }
        throw ParseError("unbound identifier '" + raw.name + "'", raw.line, raw.column);
      }
      case Raw::Kind::Apply: {
        auto [fun, type] = infer(*raw.children[0], std::nullopt);
        for (std::size_t i = 1; i < raw.children.size(); ++i) {
          if (!type.is_arrow()) {
            throw TypeError(where(raw) + "ill-typed application: " + to_string(fun) + " has type " + type.str() +
                            " and takes no further argument");
          }
          auto [arg, arg_type] = run(*raw.children[i], type.from());
          fun = Term::apply(fun, arg);
          type = type.to();
        }
        return {fun, type};
      }
      case Raw::Kind::Lambda: {
        std::optional<SemType> binder = raw.annotation;
        if (!binder && expected && expected->is_arrow()) binder = expected->from();
        if (!binder) {
          throw TypeError(where(raw) + "cannot infer the type of \\" + raw.name + "; write \\" + raw.name +
                          ":<type>. ...");
        }
        std::optional<SemType> body_expected;
        if (expected && expected->is_arrow()) body_expected = expected->to();
        scope_.emplace_back(raw.name, *binder);
        auto [body, body_type] = run(*raw.children[0], body_expected);
        scope_.pop_back();
        return {Term::lambda(raw.name, *binder, body), SemType::arrow(*binder, body_type)};
      }
    }
    throw TypeError("invalid term");
  }

  const Signature& signature_;
  const TypeEnv& variables_;
  std::vector<std::pair<std::string, SemType>> scope_;
};

}  // namespace

SemType parse_type(TokenStream& in) {
  SemType lhs = parse_type_atom(in);
  if (in.accept(Tok::Arrow)) return SemType::arrow(lhs, parse_type(in));
  return lhs;
}

Term parse_term(TokenStream& in, const Signature& signature, const TypeEnv& variables,
                const std::optional<SemType>& expected) {
  RawPtr raw = parse_raw(in);
  return Elaborator(signature, variables).run(*raw, expected).first;
}

}  // namespace detail

SemType parse_type(std::string_view text) {
  detail::TokenStream in(detail::tokenize(text));
  SemType type = detail::parse_type(in);
  in.expect(detail::Tok::End, "end of type");
  return type;
}

Term parse_term(std::string_view text, const Signature& signature, const TypeEnv& variables,
                const std::optional<SemType>& expected) {
  detail::TokenStream in(detail::tokenize(text));
  Term term = detail::parse_term(in, signature, variables, expected);
  in.expect(detail::Tok::End, "end of term");
  return term;
}

}  // namespace glue
