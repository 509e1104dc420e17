#pragma once

// Simply-typed lambda terms used as the meaning side of glue formulas.
//
// Terms are immutable and nameless: bound variables are de Bruijn indices and
// binders keep their source name only as a printing hint, so structural
// equality (operator==) is alpha-equivalence.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace glue {

class SemType {
 public:
  enum class Kind { Entity, Truth, Arrow };

  static SemType e() { return SemType(Kind::Entity); }
  static SemType t() { return SemType(Kind::Truth); }
  static SemType arrow(SemType from, SemType to);

  Kind kind() const { return kind_; }
  bool is_arrow() const { return kind_ == Kind::Arrow; }
  const SemType& from() const;
  const SemType& to() const;

  friend bool operator==(const SemType& a, const SemType& b);
  friend bool operator!=(const SemType& a, const SemType& b) { return !(a == b); }
  friend bool operator<(const SemType& a, const SemType& b) { return a.str() < b.str(); }

  /// `e`, `t`, `e -> t`, `(e -> t) -> t`
  std::string str() const;

 private:
  explicit SemType(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::shared_ptr<const std::pair<SemType, SemType>> parts_;
};

std::ostream& operator<<(std::ostream& os, const SemType& type);

SemType parse_type(std::string_view text);

using TypeEnv = std::map<std::string, SemType>;
/// Constant name -> type. Constants are declared, never inferred.
using Signature = std::map<std::string, SemType>;

class Term {
 public:
  enum class Kind { Constant, Variable, Meta, Bound, Application, Abstraction };

  /// Constants are plain lexicon constants, fresh hypothesis constants
  /// introduced during proof search, or holes standing for a missing resource.
  enum class Tag { Plain, Hypothesis, Hole };

  Term() = default;

  static Term constant(std::string name, SemType type);
  static Term hypothesis(std::string name, SemType type, int id);
  static Term hole(SemType type, int id);
  static Term variable(std::string name);
  static Term meta(int id, SemType type, std::string name = {});
  static Term bound(int index);
  static Term apply(Term fun, Term arg);
  static Term apply(Term fun, const std::vector<Term>& args);
  /// Raw de Bruijn abstraction; `body` refers to the binder as index 0.
  static Term lambda(std::string hint, SemType type, Term body);
  /// `\name. body` where `name` occurs in `body` as a free Variable.
  static Term abstract(const std::string& name, SemType type, const Term& body);

  bool valid() const { return node_ != nullptr; }
  explicit operator bool() const { return valid(); }

  Kind kind() const;
  Tag tag() const;
  /// Constant/variable/meta name, or the binder hint of an abstraction.
  const std::string& name() const;
  /// Type of a constant, meta, or the bound variable of an abstraction.
  const SemType& type() const;
  /// Bound index, meta id, or hypothesis/hole id.
  int index() const;
  const Term& fun() const;
  const Term& arg() const;
  const Term& body() const;

  bool is_constant() const { return valid() && kind() == Kind::Constant; }
  bool is_hypothesis() const { return is_constant() && tag() == Tag::Hypothesis; }

  /// Alpha-equivalence (binder hints ignored).
  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Term& term);

/// Canonical printed form: `f(a,b)` when every argument is atomic,
/// `f(a, \x. b)` otherwise; binders print as `\x. body`.
std::string to_string(const Term& term);

/// Parse a term. Identifiers resolve innermost-first to lambda binders, then
/// `variables`, then `signature`. Binder types may be omitted where the
/// expected type fixes them.
Term parse_term(std::string_view text, const Signature& signature, const TypeEnv& variables = {},
                const std::optional<SemType>& expected = std::nullopt);

SemType typecheck(const Term& term, const TypeEnv& env = {});

/// Beta normal form. This is the representative that gets printed: binders
/// written in the source (`\v. appoint(u,v)`) are kept as written.
Term normalize(const Term& term);

/// Beta-eta-short normal form: unique per beta-eta class up to alpha, so
/// two terms are equivalent iff their canonical forms are equal.
Term canonical(const Term& term);

/// Alpha-beta-eta equivalence of two terms of the same type.
/// Throws TypeError when the types differ.
bool equivalent(const Term& a, const Term& b, const TypeEnv& env = {});

// Structural helpers used by the glue layer and the prover.

Term substitute(const Term& term, const std::string& variable, const Term& value);
Term substitute_metas(const Term& term, const std::map<int, Term>& values);
/// `\hint. body[constant := #0]`
Term abstract_constant(const Term& body, const Term& constant, std::string hint);
bool contains(const Term& term, const std::function<bool(const Term&)>& pred);
bool has_metas(const Term& term);
bool has_loose_bound(const Term& term);
/// Head of an application spine and its arguments in order.
std::pair<Term, std::vector<Term>> spine(const Term& term);

}  // namespace glue
