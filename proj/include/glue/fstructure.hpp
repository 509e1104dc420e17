#pragma once

// LFG f-structures: labelled attribute-value matrices, their text format,
// path resolution, and the sigma projection onto semantic structures.
//
// Text format:
//
//   f:[PRED 'appoint'; SUBJ g:[PRED 'Bill']; OBJ h:[PRED 'Hillary'];
//      MODS { m:[PRED 'obviously'] }]
//
// Attribute names are case-insensitive and stored upper case. Quoted values
// are semantic forms, bare identifiers are atomic symbols, `{ ...; ... }` is a
// set of f-structures. A node without a label gets a generated `_N` label.
// Writing `g:[]` for a label that is defined elsewhere refers to that node
// (structure sharing).

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace glue {

struct Symbol {
  std::string text;
  bool quoted = false;

  friend bool operator==(const Symbol& a, const Symbol& b) { return a.text == b.text && a.quoted == b.quoted; }
};

/// sigma-projection of one f-structure node, written `f_σ`.
struct SemStructure {
  std::string label;
  std::size_t node = 0;

  std::string str() const { return label + "_\xCF\x83"; }
  friend bool operator==(const SemStructure& a, const SemStructure& b) { return a.label == b.label; }
};

namespace detail {
struct AnalysisData;
}

class FStructure;
using FValue = std::variant<FStructure, Symbol, std::vector<FStructure>>;

/// Handle to one node of a parsed analysis. Cheap to copy; keeps the whole
/// analysis alive.
class FStructure {
 public:
  const std::string& label() const;
  std::size_t id() const { return index_; }

  std::vector<std::string> attribute_names() const;
  std::optional<FValue> get(std::string_view attribute) const;

  /// PRED value, if any.
  std::optional<std::string> pred() const;
  /// SPEC value, if any.
  std::optional<std::string> spec() const;
  /// The node whose set-valued attribute (MODS) contains this node.
  std::optional<FStructure> set_owner() const;

  FStructure root() const;
  /// Every node of the analysis, root first, in depth-first document order.
  std::vector<FStructure> nodes() const;
  std::optional<FStructure> find(std::string_view label) const;

  friend bool operator==(const FStructure& a, const FStructure& b) {
    return a.data_ == b.data_ && a.index_ == b.index_;
  }
  friend bool operator!=(const FStructure& a, const FStructure& b) { return !(a == b); }

 private:
  friend FStructure parse_fstructure(std::string_view text);
  friend const SemStructure& sigma(const FStructure& node);

  FStructure(std::shared_ptr<const detail::AnalysisData> data, std::size_t index)
      : data_(std::move(data)), index_(index) {}

  std::shared_ptr<const detail::AnalysisData> data_;
  std::size_t index_;
};

/// Parse an analysis; returns its root. Throws ParseError.
FStructure parse_fstructure(std::string_view text);

/// Canonical text form. parse_fstructure(print_fstructure(f)) is isomorphic
/// to f with the same labels.
std::string print_fstructure(const FStructure& root);

/// Follow attributes from `from`. Throws PathError for an empty path, a
/// missing attribute, or stepping through a non-f-structure value.
FValue resolve_path(const FStructure& from, const std::vector<std::string>& path);

/// The semantic structure of a node. Returns the same object for the same
/// node every time.
const SemStructure& sigma(const FStructure& node);

}  // namespace glue
