#pragma once

// Glue formulas: the tensor fragment of linear logic over typed "means"
// atoms `S ~>_τ M`.
//
// Concrete syntax (ASCII; the Unicode connectives ⊗ ⊸ ⤳ ↑ λ are accepted too):
//
//   forall X:e, Y:e. (^ SUBJ) ~> X * (^ OBJ) ~> Y -o ^ ~> appoint(X,Y)
//   forall H, S:e->t. (forall x:e. ^ ~> x -o H ~>_t S(x)) -o H ~>_t every(person,S)
//
// `*` binds tighter than `-o`, `-o` associates to the right, and a `forall`
// body extends as far right as possible. A binder without a type is a
// semantic-structure variable; a typed binder is a meaning variable. When the
// subscript on `~>` is omitted the type index is the meaning's type.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glue/meaning.hpp"

namespace glue {

/// The semantic-structure side of an atom.
struct SemExpr {
  enum class Kind {
    Label,     // a concrete semantic structure, printed `f_σ`
    Variable,  // bound by an enclosing forall
    Meta,      // proof-search unknown
    Path,      // lexical template: ^, (^ SUBJ ...), (mod ^)
  };

  Kind kind = Kind::Label;
  std::string name;
  int meta = -1;
  bool modified = false;           // (mod ^)
  std::vector<std::string> path;   // attributes after ^

  static SemExpr label(std::string l) { return {Kind::Label, std::move(l), -1, false, {}}; }
  static SemExpr variable(std::string v) { return {Kind::Variable, std::move(v), -1, false, {}}; }
  static SemExpr make_meta(int id, std::string display) { return {Kind::Meta, std::move(display), id, false, {}}; }
  static SemExpr up(std::vector<std::string> attrs = {}) { return {Kind::Path, {}, -1, false, std::move(attrs)}; }
  static SemExpr mod_up() { return {Kind::Path, {}, -1, true, {}}; }

  std::string str() const;
  friend bool operator==(const SemExpr& a, const SemExpr& b);
};

class Formula {
 public:
  enum class Kind { Atom, Tensor, Limp, Forall };
  enum class Binder { Meaning, Sem };

  Formula() = default;

  /// `sem ~>_type meaning`. With an empty meaning and no type the atom is a
  /// bare propositional letter (used for resource-logic checks).
  static Formula atom(SemExpr sem, std::optional<SemType> type, Term meaning, bool explicit_type = false);
  static Formula proposition(std::string name);
  static Formula tensor(Formula left, Formula right);
  static Formula limp(Formula antecedent, Formula consequent);
  static Formula forall(std::string variable, Binder binder, SemType type, Formula body);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;

  // Atom
  const SemExpr& sem() const;
  const std::optional<SemType>& type() const;
  const Term& meaning() const;
  bool explicit_type() const;
  bool is_proposition() const;

  // Tensor (left/right), Limp (left = antecedent, right = consequent)
  const Formula& left() const;
  const Formula& right() const;

  // Forall
  const std::string& variable() const;
  Binder binder() const;
  const SemType& variable_type() const;
  const Formula& body() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

enum class FormulaSyntax {
  /// Lexicon templates: semantic positions are ^-paths or bound variables.
  Template,
  /// Closed formulas over concrete structures: `f_σ` or bare labels, plus
  /// propositional letters.
  Closed,
};

Formula parse_formula(std::string_view text, const Signature& signature,
                      FormulaSyntax syntax = FormulaSyntax::Closed);

// Structural operations.

/// Replace free occurrences of a meaning variable.
Formula substitute_meaning(const Formula& f, const std::string& variable, const Term& value);
/// Replace free occurrences of a semantic-structure variable.
Formula substitute_sem(const Formula& f, const std::string& variable, const SemExpr& value);
/// Rewrite every atom's semantic side (used to resolve template paths).
Formula map_sem(const Formula& f, const std::function<SemExpr(const SemExpr&)>& fn);
/// Rewrite every atom's meaning side.
Formula map_meaning(const Formula& f, const std::function<Term(const Term&)>& fn);

/// True when no free meaning or semantic variable and no path remains.
bool is_closed(const Formula& f);
/// Connective skeleton, e.g. "forall(forall((A*A)-oA))".
std::string shape(const Formula& f);
/// Number of connectives and atoms.
int size(const Formula& f);
/// Semantic-structure labels mentioned in the formula.
std::vector<std::string> labels(const Formula& f);

}  // namespace glue
