#pragma once

// Brute-force reading enumerator used as an oracle for the prover.
//
// Premises are compiled into first-order items: semantic variables are
// grounded over a finite label universe, and each nested implication
// `forall x. A ~> x -o B ~> S(x)` becomes a separate hypothesis fact `A ~> c`
// plus an antecedent `B ~> S(c)` that may only be filled by a fact built from
// that hypothesis. The enumerator then combines items in every possible
// order, memoizing on the multiset of items.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "glue/formula.hpp"
#include "glue/meaning.hpp"

namespace oracle {

using glue::Formula;
using glue::SemExpr;
using glue::SemType;
using glue::Term;

struct Atom {
  std::string label;
  std::optional<SemType> type;
  Term pattern;  // invalid for propositions
  std::vector<int> discharges;
  std::vector<Term> constants;
};

struct Item {
  std::vector<Atom> antecedents;
  Atom head;
  std::set<int> hyps;

  std::string key() const {
    auto atom = [](const Atom& a) {
      std::string s = a.label + ":" + (a.type ? a.type->str() : "-") + ":" +
                      (a.pattern.valid() ? glue::to_string(a.pattern) : "");
      for (int d : a.discharges) s += "/" + std::to_string(d);
      return s;
    };
    std::string s;
    for (const auto& a : antecedents) s += atom(a) + " -o ";
    s += atom(head) + " {";
    for (int h : hyps) s += std::to_string(h) + ",";
    return s + "}";
  }
};

inline bool has_variables(const Term& t) {
  return t.valid() && glue::contains(t, [](const Term& x) { return x.kind() == Term::Kind::Variable; });
}

class Enumerator {
 public:
  Enumerator(std::vector<Formula> premises, std::string goal, SemType type)
      : premises_(std::move(premises)), goal_(std::move(goal)), type_(type) {
    std::set<std::string> labels{goal_};
    for (const auto& p : premises_) {
      for (const auto& l : glue::labels(p)) labels.insert(l);
    }
    universe_.assign(labels.begin(), labels.end());
  }

  /// Readings keyed by printed canonical form.
  std::map<std::string, Term> readings() {
    std::vector<std::vector<std::vector<Item>>> choices;
    for (const auto& p : premises_) {
      std::vector<std::vector<Item>> alternatives;
      for (const auto& grounded : ground(p)) alternatives.push_back(compile(grounded));
      choices.push_back(std::move(alternatives));
    }
    std::map<std::string, Term> out;
    std::vector<Item> state;
    product(choices, 0, state, out);
    return out;
  }

 private:
  std::vector<Formula> ground(const Formula& f) {
    if (f.kind() == Formula::Kind::Forall && f.binder() == Formula::Binder::Sem) {
      std::vector<Formula> out;
      for (const auto& label : universe_) {
        for (auto& g : ground(glue::substitute_sem(f.body(), f.variable(), SemExpr::label(label)))) {
          out.push_back(std::move(g));
        }
      }
      return out;
    }
    if (f.kind() == Formula::Kind::Forall) {
      std::vector<Formula> out;
      for (auto& g : ground(f.body())) {
        out.push_back(Formula::forall(f.variable(), f.binder(), f.variable_type(), g));
      }
      return out;
    }
    if (f.kind() == Formula::Kind::Tensor) {
      std::vector<Formula> out;
      for (auto& l : ground(f.left())) {
        for (auto& r : ground(f.right())) out.push_back(Formula::tensor(l, r));
      }
      return out;
    }
    if (f.kind() == Formula::Kind::Limp) {
      std::vector<Formula> out;
      for (auto& l : ground(f.left())) {
        for (auto& r : ground(f.right())) out.push_back(Formula::limp(l, r));
      }
      return out;
    }
    return {f};
  }

  static void flatten(const Formula& f, std::vector<Formula>& out) {
    if (f.kind() == Formula::Kind::Tensor) {
      flatten(f.left(), out);
      flatten(f.right(), out);
    } else {
      out.push_back(f);
    }
  }

  static Atom atom_of(const Formula& f) {
    if (f.kind() != Formula::Kind::Atom) throw std::runtime_error("unsupported: non-atomic position");
    if (f.sem().kind != SemExpr::Kind::Label) throw std::runtime_error("unsupported: ungrounded label");
    return Atom{f.sem().name, f.type(), f.meaning(), {}, {}};
  }

  std::vector<Item> compile(const Formula& premise) {
    std::vector<Formula> parts;
    flatten(premise, parts);
    std::vector<Item> items;
    for (Formula part : parts) {
      while (part.kind() == Formula::Kind::Forall) part = part.body();  // free meaning variables stay named
      Item item;
      while (part.kind() == Formula::Kind::Limp) {
        std::vector<Formula> pieces;
        flatten(part.left(), pieces);
        for (Formula piece : pieces) {
          if (piece.kind() == Formula::Kind::Atom) {
            item.antecedents.push_back(atom_of(piece));
            continue;
          }
          std::vector<Term> constants;
          while (piece.kind() == Formula::Kind::Forall) {
            if (piece.binder() != Formula::Binder::Meaning) throw std::runtime_error("unsupported: nested sem binder");
            Term c = Term::hypothesis(piece.variable(), piece.variable_type(), 1000 + next_hyp_);
            constants.push_back(c);
            piece = glue::substitute_meaning(piece.body(), piece.variable(), c);
          }
          if (piece.kind() != Formula::Kind::Limp) throw std::runtime_error("unsupported: nested antecedent");
          std::vector<Formula> assumed;
          flatten(piece.left(), assumed);
          Atom need = atom_of(piece.right());
          need.constants = constants;
          for (const auto& a : assumed) {
            int id = next_hyp_++;
            items.push_back(Item{{}, atom_of(a), {id}});
            need.discharges.push_back(id);
          }
          item.antecedents.push_back(need);
        }
        part = part.right();
      }
      item.head = atom_of(part);
      items.push_back(std::move(item));
    }
    return items;
  }

  void product(const std::vector<std::vector<std::vector<Item>>>& choices, std::size_t i, std::vector<Item>& state,
               std::map<std::string, Term>& out) {
    if (i == choices.size()) {
      for (auto& [k, v] : search(state)) out.emplace(k, v);
      return;
    }
    for (const auto& alt : choices[i]) {
      std::size_t mark = state.size();
      state.insert(state.end(), alt.begin(), alt.end());
      product(choices, i + 1, state, out);
      state.resize(mark);
    }
  }

  // Matches an antecedent pattern against a closed meaning; on success
  // returns variable bindings.
  static bool match(const Atom& want, const Term& meaning, std::map<std::string, Term>& bind) {
    if (!want.pattern.valid()) return !meaning.valid();
    Term p = glue::normalize(want.pattern);
    if (!has_variables(p)) return glue::canonical(p) == glue::canonical(meaning);
    if (p.kind() == Term::Kind::Variable) {
      bind[p.name()] = meaning;
      return true;
    }
    auto [head, args] = glue::spine(p);
    if (head.kind() != Term::Kind::Variable) throw std::runtime_error("unsupported pattern " + glue::to_string(p));
    for (const auto& a : args) {
      if (!a.is_hypothesis()) throw std::runtime_error("unsupported pattern " + glue::to_string(p));
    }
    Term value = meaning;
    for (auto it = args.rbegin(); it != args.rend(); ++it) value = glue::abstract_constant(value, *it, it->name());
    bind[head.name()] = value;
    return true;
  }

  static Term instantiate(const Term& t, const std::map<std::string, Term>& bind) {
    if (!t.valid()) return t;
    Term out = t;
    for (const auto& [name, value] : bind) out = glue::substitute(out, name, value);
    return out;
  }

  // Every head must feed some other item's antecedent or be the goal, and
  // every antecedent must be fed by some other item's head.
  bool viable(const std::vector<Item>& state) const {
    auto same = [](const Atom& a, const Atom& b) { return a.label == b.label && a.type == b.type; };
    for (std::size_t i = 0; i < state.size(); ++i) {
      bool consumed = state[i].head.label == goal_ && state[i].head.type == type_;
      for (std::size_t j = 0; j < state.size() && !consumed; ++j) {
        if (j == i) continue;
        for (const auto& a : state[j].antecedents) consumed = consumed || same(a, state[i].head);
      }
      if (!consumed) return false;
      for (const auto& a : state[i].antecedents) {
        bool fed = false;
        for (std::size_t j = 0; j < state.size() && !fed; ++j) fed = j != i && same(a, state[j].head);
        if (!fed) return false;
      }
    }
    return true;
  }

  std::map<std::string, Term> search(std::vector<Item> state) {
    std::vector<std::pair<std::string, std::size_t>> order;
    for (std::size_t i = 0; i < state.size(); ++i) order.emplace_back(state[i].key(), i);
    std::sort(order.begin(), order.end());
    std::string key;
    for (const auto& [k, i] : order) key += k + "\n";
    if (auto hit = memo_.find(key); hit != memo_.end()) return hit->second;

    std::map<std::string, Term> out;
    if (!viable(state)) {
      memo_.emplace(key, out);
      return out;
    }
    if (state.size() == 1 && state[0].antecedents.empty() && state[0].hyps.empty()) {
      const Atom& h = state[0].head;
      if (h.label == goal_ && h.type == type_ && h.pattern.valid() && !has_variables(h.pattern)) {
        Term m = glue::normalize(h.pattern);
        if (glue::typecheck(m) == type_) out.emplace(glue::to_string(glue::canonical(m)), m);
      }
    }

    for (std::size_t f = 0; f < state.size(); ++f) {
      const Item& fn = state[f];
      for (std::size_t a = 0; a < fn.antecedents.size(); ++a) {
        const Atom& want = fn.antecedents[a];
        for (std::size_t x = 0; x < state.size(); ++x) {
          if (x == f) continue;
          const Item& arg = state[x];
          if (!arg.antecedents.empty()) continue;
          if (arg.head.label != want.label || arg.head.type != want.type) continue;
          if (arg.head.pattern.valid() && has_variables(arg.head.pattern)) continue;
          bool covers = std::all_of(want.discharges.begin(), want.discharges.end(),
                                    [&](int d) { return arg.hyps.count(d) > 0; });
          if (!covers) continue;
          std::map<std::string, Term> bind;
          Term meaning = arg.head.pattern.valid() ? glue::normalize(arg.head.pattern) : Term();
          if (!match(want, meaning, bind)) continue;
          bool leaks = false;
          for (const auto& [name, value] : bind) {
            for (const auto& c : want.constants) {
              if (glue::contains(value, [&](const Term& t) { return t == c; })) leaks = true;
            }
          }
          if (leaks) continue;

          Item next = fn;
          next.antecedents.erase(next.antecedents.begin() + static_cast<long>(a));
          for (auto& other : next.antecedents) other.pattern = instantiate(other.pattern, bind);
          next.head.pattern = instantiate(next.head.pattern, bind);
          next.hyps.insert(arg.hyps.begin(), arg.hyps.end());
          for (int d : want.discharges) next.hyps.erase(d);

          std::vector<Item> rest;
          for (std::size_t k = 0; k < state.size(); ++k) {
            if (k != f && k != x) rest.push_back(state[k]);
          }
          rest.push_back(std::move(next));
          for (auto& [k, v] : search(std::move(rest))) out.emplace(k, v);
        }
      }
    }
    memo_.emplace(key, out);
    return out;
  }

  std::vector<Formula> premises_;
  std::string goal_;
  SemType type_;
  std::vector<std::string> universe_;
  int next_hyp_ = 0;
  std::map<std::string, std::map<std::string, Term>> memo_;
};

inline std::map<std::string, Term> enumerate(const std::vector<Formula>& premises, const std::string& goal,
                                             SemType type = SemType::t()) {
  return Enumerator(premises, goal, type).readings();
}

}  // namespace oracle
