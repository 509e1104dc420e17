#pragma once

// Completeness and coherence failures, explained from the best partial
// derivations: an atom that some premise needs but nothing supplies makes an
// analysis incomplete, a premise that no derivation can use makes it
// incoherent.

#include <string>
#include <vector>

#include "glue/fstructure.hpp"
#include "glue/lexicon.hpp"
#include "glue/prover.hpp"

namespace glue {

enum class Status { Ok, Incomplete, Incoherent, IncompleteIncoherent, Uninstantiable };

std::string to_string(Status status);

struct UnsatisfiedDemand {
  std::string atom;         // "h_σ ~>_e ?", or "(f OBJ)" for an uninstantiable entry
  std::string demanded_by;  // provenance of the premise, or "goal"

  friend bool operator==(const UnsatisfiedDemand&, const UnsatisfiedDemand&) = default;
};

struct LeftoverResource {
  int premise = -1;
  std::string provenance;
  std::string formula;

  friend bool operator==(const LeftoverResource&, const LeftoverResource&) = default;
};

struct Diagnosis {
  Status status = Status::Ok;
  std::vector<Reading> readings;
  std::vector<UnsatisfiedDemand> unsatisfied_demands;
  std::vector<LeftoverResource> leftover_resources;
  std::string message;
};

Goal root_goal(const FStructure& root, SemType type = SemType::t());

/// Throws MissingEntryError when a PRED has no lexicon entry.
Diagnosis diagnose(const FStructure& root, const Lexicon& lexicon, const Goal& goal,
                   const ProverOptions& options = {});
Diagnosis diagnose(const PremiseSet& premises, const Goal& goal, const ProverOptions& options = {});

}  // namespace glue
