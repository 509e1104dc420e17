#pragma once

// Linear-logic proof search over meaning constructors.
//
// The search is goal-directed natural deduction: an atomic goal `f_σ ~>_τ ?`
// is met by choosing an unused resource whose head matches, then proving its
// antecedents from the resources that remain. A nested implication in an
// antecedent is proved hypothetically: its left side is assumed with a fresh
// constant, the right side is derived using that assumption exactly once,
// and the scope variable is solved by pattern unification. Every premise must
// be consumed exactly once.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glue/formula.hpp"
#include "glue/lexicon.hpp"
#include "glue/meaning.hpp"

namespace glue {

struct Goal {
  std::string label;
  SemType type = SemType::t();

  std::string str() const;
};

/// One node of a derivation tree.
struct Step {
  enum class Rule {
    Axiom,       // a premise (or one tensor part of it)
    Hypothesis,  // an assumption made while proving an implication
    Apply,       // implication elimination: children = {function, argument}
    Discharge,   // implication introduction: children = {body}
    Pair,        // tensor introduction: children = {left, right}
    Hole,        // a missing resource (partial derivations only)
  };

  Rule rule = Rule::Axiom;
  int premise = -1;              // Axiom; Apply: premise whose implication is eliminated
  int part = 0;                  // Axiom: tensor part of the premise
  int hypothesis = -1;           // Hypothesis; Apply when the function is a hypothesis
  std::vector<int> discharged;   // Discharge
  std::string assumption;        // Discharge: the assumed formula
  std::vector<std::pair<std::string, std::string>> bindings;  // Apply: "X" -> "Bill"
  std::string conclusion;
  std::vector<std::shared_ptr<const Step>> children;
};

using Trace = std::shared_ptr<const Step>;

struct Reading {
  Term meaning;  // beta-normal
  SemType type = SemType::t();
  /// The first trace derives `meaning` itself; with all_traces every
  /// distinct derivation of an equivalent meaning follows.
  std::vector<Trace> traces;
};

struct ProverOptions {
  bool all_traces = false;
  /// Maximum nesting of atomic goals; default is size(premises).
  std::optional<int> max_depth;
};

/// Every reading of `goal` that uses each premise exactly once, one per
/// beta-eta class, sorted by printed meaning. Throws BoundExceededError if
/// the search would go deeper than the bound.
std::vector<Reading> derive(const std::vector<Formula>& premises, const Goal& goal,
                            const ProverOptions& options = {});
std::vector<Reading> derive(const PremiseSet& premises, const Goal& goal, const ProverOptions& options = {});

/// Linear entailment between propositional formulas: every resource of the
/// antecedent is used exactly once.
bool entails(const Formula& antecedent, const Formula& consequent);

using Substitution = std::map<int, Term>;

/// Most general unifier of a pattern (with Term::meta unknowns) against a
/// closed term. Unknowns may be applied only to distinct hypothesis
/// constants; anything else throws PatternError. Returns nullopt when no
/// unifier exists.
std::optional<Substitution> unify(const Term& pattern, const Term& term);

/// Derivation in the familiar line-by-line style:
///   ⊸E #0 {#1}: X ↦ Bill ⊢ forall Y:e. h_σ ~> Y -o f_σ ~> appoint(Bill,Y)
std::vector<std::string> render_trace(const Trace& trace);

/// Checks that each premise part is used exactly once and each hypothesis is
/// used exactly once inside the step that discharges it. Returns a
/// description of the first violation.
std::optional<std::string> audit(const Trace& trace, const std::vector<Formula>& premises);

int default_bound(const std::vector<Formula>& premises);

// Partial derivations, used to explain failures.

struct Demand {
  std::string label;
  std::optional<SemType> type;
  int demanded_by = -1;  // premise index; -1 for the goal itself

  std::string str() const;
  friend bool operator==(const Demand& a, const Demand& b) {
    return a.label == b.label && a.type == b.type && a.demanded_by == b.demanded_by;
  }
};

struct Partial {
  std::vector<int> consumed;  // premise indices, ascending
  std::vector<Demand> holes;
};

/// Derivations of `goal` that may leave premises unused and may assume
/// missing atoms (holes). Returns those consuming the most premises and,
/// among them, assuming the fewest holes.
std::vector<Partial> maximal_partials(const std::vector<Formula>& premises, const Goal& goal,
                                      const ProverOptions& options = {});

}  // namespace glue
