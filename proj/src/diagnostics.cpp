#include "glue/diagnostics.hpp"

#include <algorithm>

#include "glue/error.hpp"

namespace glue {

std::string to_string(Status status) {
  switch (status) {
    case Status::Ok:
      return "ok";
    case Status::Incomplete:
      return "incomplete";
    case Status::Incoherent:
      return "incoherent";
    case Status::IncompleteIncoherent:
      return "incomplete+incoherent";
    case Status::Uninstantiable:
      return "uninstantiable";
  }
  return "?";
}

Goal root_goal(const FStructure& root, SemType type) { return Goal{sigma(root).label, type}; }

Diagnosis diagnose(const PremiseSet& premises, const Goal& goal, const ProverOptions& options) {
  Diagnosis d;
  d.readings = derive(premises, goal, options);
  if (!d.readings.empty()) {
    d.status = Status::Ok;
    return d;
  }

  std::vector<Formula> formulas;
  for (const auto& p : premises) formulas.push_back(p.formula);
  ProverOptions partial = options;
  partial.all_traces = false;
  auto best = maximal_partials(formulas, goal, partial);

  for (const auto& part : best) {
    for (const auto& hole : part.holes) {
      UnsatisfiedDemand u{hole.str(), hole.demanded_by < 0 ? "goal" : premises[hole.demanded_by].provenance()};
      if (std::find(d.unsatisfied_demands.begin(), d.unsatisfied_demands.end(), u) == d.unsatisfied_demands.end()) {
        d.unsatisfied_demands.push_back(u);
      }
    }
    for (std::size_t i = 0; i < premises.size(); ++i) {
      if (std::binary_search(part.consumed.begin(), part.consumed.end(), static_cast<int>(i))) continue;
      LeftoverResource l{static_cast<int>(i), premises[i].provenance(), to_string(premises[i].formula)};
      if (std::find(d.leftover_resources.begin(), d.leftover_resources.end(), l) == d.leftover_resources.end()) {
        d.leftover_resources.push_back(l);
      }
    }
  }
  std::sort(d.leftover_resources.begin(), d.leftover_resources.end(),
            [](const LeftoverResource& a, const LeftoverResource& b) { return a.premise < b.premise; });
  std::sort(d.unsatisfied_demands.begin(), d.unsatisfied_demands.end(),
            [](const UnsatisfiedDemand& a, const UnsatisfiedDemand& b) {
              return std::tie(a.demanded_by, a.atom) < std::tie(b.demanded_by, b.atom);
            });

  bool incomplete = !d.unsatisfied_demands.empty();
  bool incoherent = !d.leftover_resources.empty();
  if (incomplete && incoherent) {
    d.status = Status::IncompleteIncoherent;
  } else if (incomplete) {
    d.status = Status::Incomplete;
  } else if (incoherent) {
    d.status = Status::Incoherent;
  } else {
    throw Error("internal: no reading of " + goal.str() + " but a complete partial derivation");
  }
  return d;
}

Diagnosis diagnose(const FStructure& root, const Lexicon& lexicon, const Goal& goal, const ProverOptions& options) {
  Diagnosis failed;
  for (const auto& node : root.nodes()) {
    const LexicalEntry* entry = lexicon.lookup(node);
    if (!entry) continue;
    try {
      instantiate(*entry, node);
    } catch (const UninstantiableError& e) {
      failed.status = Status::Uninstantiable;
      failed.unsatisfied_demands.push_back({"(" + node.label() + " " + e.missing() + ")",
                                            entry->headword + "@" + node.label()});
      if (!failed.message.empty()) failed.message += "; ";
      failed.message += e.what();
    }
  }
  if (failed.status == Status::Uninstantiable) return failed;
  return diagnose(premises(root, lexicon), goal, options);
}

}  // namespace glue
