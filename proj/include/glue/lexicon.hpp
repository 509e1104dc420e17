#pragma once

// Lexicons of meaning-constructor templates and their instantiation against
// an f-structure.
//
// File format, one item per line (`#` starts a comment, a line that begins
// with whitespace continues the previous item):
//
//   appoint :: e -> e -> t
//   bill: ^ ~> Bill
//   appointed (appoint): forall X:e, Y:e. (^ SUBJ) ~> X * (^ OBJ) ~> Y -o ^ ~> appoint(X,Y)
//   every-candidate: forall H, S:e->t. (forall x:e. ^ ~> x -o H ~>_t S(x)) -o H ~>_t every(candidate,S)
//
// `name :: type` declares a meaning constant. An entry is `headword: template`
// with optional PRED forms in parentheses after the headword. A node is looked
// up by its lower-cased PRED, or by `spec-pred` when it carries a SPEC.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "glue/formula.hpp"
#include "glue/fstructure.hpp"
#include "glue/meaning.hpp"

namespace glue {

struct LexicalEntry {
  std::string headword;
  std::vector<std::string> forms;
  Formula formula;
  int line = 0;
};

class Lexicon {
 public:
  const Signature& signature() const { return signature_; }
  const std::map<std::string, LexicalEntry>& entries() const { return entries_; }

  const LexicalEntry* find(std::string_view word) const;
  /// Entry for the word heading `node`; nullptr when the node has no PRED.
  /// Throws MissingEntryError when it has one but no entry matches.
  const LexicalEntry* lookup(const FStructure& node) const;

 private:
  friend Lexicon parse_lexicon(std::string_view text);
  Signature signature_;
  std::map<std::string, LexicalEntry> entries_;
  std::map<std::string, std::string> forms_;
};

Lexicon parse_lexicon(std::string_view text);

/// Lookup key for a node: `pred`, or `spec-pred`, lower-cased.
std::string lexicon_key(const FStructure& node);

/// Resolve every ^-path of the template from `node` and project through
/// sigma. Throws UninstantiableError naming the first missing attribute.
Formula instantiate(const LexicalEntry& entry, const FStructure& node);

struct Premise {
  int index = 0;
  Formula formula;
  std::string word;   // headword of the contributing entry
  std::string label;  // f-structure node it was instantiated at

  std::string provenance() const { return word + "@" + label; }
};

/// One premise per word occurrence, root first in document order; modifiers
/// in MODS sets count as occurrences.
using PremiseSet = std::vector<Premise>;

PremiseSet premises(const FStructure& root, const Lexicon& lexicon);

}  // namespace glue
