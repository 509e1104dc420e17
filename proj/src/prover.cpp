#include "glue/prover.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "glue/error.hpp"

namespace glue {

namespace {
const std::string kSigma = "_\xCF\x83";
const std::string kMapsTo = " \xE2\x86\xA6 ";  // ↦
const std::string kTurnstile = "\xE2\x8A\xA2";  // ⊢

std::string subscript(const SemType& t) { return t.is_arrow() ? "_(" + t.str() + ")" : "_" + t.str(); }
}  // namespace

std::string Goal::str() const { return label + kSigma + " ~>" + subscript(type) + " ?"; }

std::string Demand::str() const {
  if (!type) return label;
  return label + kSigma + " ~>" + subscript(*type) + " ?";
}

// ---------------------------------------------------------------------------
// Pattern unification

namespace {

Term lift(const Term& t, int cutoff) {
  switch (t.kind()) {
    case Term::Kind::Bound:
      return t.index() >= cutoff ? Term::bound(t.index() + 1) : t;
    case Term::Kind::Application:
      return Term::apply(lift(t.fun(), cutoff), lift(t.arg(), cutoff));
    case Term::Kind::Abstraction:
      return Term::lambda(t.name(), t.type(), lift(t.body(), cutoff + 1));
    default:
      return t;
  }
}

bool unify_into(const Term& pattern, const Term& term, Substitution& s) {
  Term p = has_metas(pattern) ? normalize(substitute_metas(pattern, s)) : pattern;
  if (!has_metas(p)) return canonical(p) == canonical(term);

  auto [head, args] = spine(p);
  if (head.kind() == Term::Kind::Meta) {
    std::vector<Term> seen;
    for (const Term& a : args) {
      if (!a.is_hypothesis()) {
        throw PatternError("outside the pattern fragment: ?" + head.name() + " is applied to " + to_string(a) +
                           ", which is not a hypothesis constant");
      }
      if (std::find(seen.begin(), seen.end(), a) != seen.end()) {
        throw PatternError("outside the pattern fragment: ?" + head.name() + " is applied to " + to_string(a) +
                           " twice");
      }
      seen.push_back(a);
    }
    if (has_loose_bound(term) || has_metas(term)) return false;
    Term value = term;
    for (auto it = args.rbegin(); it != args.rend(); ++it) value = abstract_constant(value, *it, it->name());
    if (typecheck(value) != head.type()) return false;
    s[head.index()] = value;
    return true;
  }

  if (p.kind() == Term::Kind::Abstraction) {
    Term t = term;
    if (t.kind() != Term::Kind::Abstraction) {
      t = Term::lambda(p.name(), p.type(), Term::apply(lift(t, 0), Term::bound(0)));
    }
    if (t.type() != p.type()) return false;
    return unify_into(p.body(), t.body(), s);
  }
  if (term.kind() == Term::Kind::Abstraction) {
    return unify_into(Term::lambda(term.name(), term.type(), Term::apply(lift(p, 0), Term::bound(0))), term, s);
  }

  auto [term_head, term_args] = spine(term);
  if (!(term_head == head) || term_args.size() != args.size()) return false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!unify_into(args[i], term_args[i], s)) return false;
  }
  return true;
}

}  // namespace

std::optional<Substitution> unify(const Term& pattern, const Term& term) {
  Substitution s;
  if (!unify_into(pattern, term, s)) return std::nullopt;
  return s;
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct Resource {
  Formula formula;
  int premise = -1;
  int part = 0;
  int hypothesis = -1;
  int origin = -1;  // premise held responsible for what this resource demands
};

struct State {
  std::vector<Resource> resources;
  std::vector<char> used;
  Substitution meaning;
  std::map<int, std::string> sem;
  int next_meta = 0;
  int next_hypothesis = 1;
  int next_constant = 0;
  int next_hole = 0;
  std::vector<Demand> holes;
};

using AtomK = std::function<void(State&, const Term&, const Trace&)>;
using GoalK = std::function<void(State&, const Trace&)>;

Trace make(Step s) { return std::make_shared<const Step>(std::move(s)); }

void split_tensor(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Formula::Kind::Tensor) {
    split_tensor(f.left(), out);
    split_tensor(f.right(), out);
  } else {
    out.push_back(f);
  }
}

Term resolve(const Term& t, const State& st) {
  if (!t.valid() || !has_metas(t)) return t;
  return normalize(substitute_metas(t, st.meaning));
}

SemExpr resolve(const SemExpr& s, const State& st) {
  if (s.kind == SemExpr::Kind::Meta) {
    if (auto it = st.sem.find(s.meta); it != st.sem.end()) return SemExpr::label(it->second);
  }
  return s;
}

Formula resolve(const Formula& f, const State& st) {
  Formula g = map_sem(f, [&](const SemExpr& s) { return resolve(s, st); });
  return map_meaning(g, [&](const Term& t) { return resolve(t, st); });
}

std::string render(const Formula& f) { return to_string(map_meaning(f, [](const Term& t) { return normalize(t); })); }

const Formula& spine_head(const Formula& f) {
  const Formula* cur = &f;
  for (;;) {
    switch (cur->kind()) {
      case Formula::Kind::Forall:
        cur = &cur->body();
        break;
      case Formula::Kind::Limp:
        cur = &cur->right();
        break;
      default:
        return *cur;
    }
  }
}

struct Binder {
  std::string name;
  bool sem;
  int meta;
};

// A resource taken apart for one use: quantifiers replaced by unknowns,
// antecedents flattened into parts.
struct Shape {
  std::vector<Binder> binders;
  std::vector<Formula> parts;
  Formula head;
};

Shape decompose(const Formula& f, State& st) {
  Shape shape;
  Formula cur = f;
  for (;;) {
    switch (cur.kind()) {
      case Formula::Kind::Forall: {
        int id = st.next_meta++;
        bool sem = cur.binder() == Formula::Binder::Sem;
        std::string name = cur.variable();
        if (sem) {
          cur = substitute_sem(cur.body(), cur.variable(), SemExpr::make_meta(id, cur.variable()));
        } else {
          cur = substitute_meaning(cur.body(), cur.variable(), Term::meta(id, cur.variable_type(), cur.variable()));
        }
        shape.binders.push_back({name, sem, id});
        break;
      }
      case Formula::Kind::Limp:
        split_tensor(cur.left(), shape.parts);
        cur = cur.right();
        break;
      case Formula::Kind::Tensor:
        throw Error("unsupported resource " + to_string(f) + ": tensor in the consequent of an implication");
      case Formula::Kind::Atom:
        shape.head = cur;
        return shape;
    }
  }
}

// The resource after some of its antecedents have been supplied.
Formula residual(const Formula& original, const Shape& shape, const std::vector<char>& solved, const State& st) {
  std::size_t binder = 0;
  std::size_t part = 0;
  std::function<Formula(const Formula&)> walk = [&](const Formula& f) -> Formula {
    switch (f.kind()) {
      case Formula::Kind::Forall: {
        const Binder& b = shape.binders[binder++];
        if (b.sem) {
          if (auto it = st.sem.find(b.meta); it != st.sem.end()) {
            return walk(substitute_sem(f.body(), f.variable(), SemExpr::label(it->second)));
          }
        } else if (auto it = st.meaning.find(b.meta); it != st.meaning.end()) {
          return walk(substitute_meaning(f.body(), f.variable(), it->second));
        }
        return Formula::forall(f.variable(), f.binder(), f.variable_type(), walk(f.body()));
      }
      case Formula::Kind::Limp: {
        std::vector<Formula> leaves;
        split_tensor(f.left(), leaves);
        std::optional<Formula> kept;
        for (const auto& leaf : leaves) {
          if (!solved[part++]) kept = kept ? Formula::tensor(*kept, leaf) : leaf;
        }
        Formula rest = walk(f.right());
        return kept ? Formula::limp(*kept, rest) : rest;
      }
      default:
        return f;
    }
  };
  return walk(original);
}

std::vector<char> bound_flags(const Shape& shape, const State& st) {
  std::vector<char> out;
  for (const auto& b : shape.binders) out.push_back(b.sem ? st.sem.count(b.meta) > 0 : st.meaning.count(b.meta) > 0);
  return out;
}

class Engine {
 public:
  Engine(std::vector<std::string> universe, int bound, bool all_orders, bool traces, bool holes)
      : universe_(std::move(universe)), bound_(bound), all_orders_(all_orders), traces_(traces), holes_(holes) {}

  void goal(const Formula& g, State st, int depth, int demander, const GoalK& k) {
    switch (g.kind()) {
      case Formula::Kind::Atom: {
        SemExpr sem = resolve(g.sem(), st);
        if (sem.kind == SemExpr::Kind::Meta) {
          for (const auto& label : universe_) {
            State s = st;
            s.sem[sem.meta] = label;
            goal(g, std::move(s), depth, demander, k);
          }
          return;
        }
        if (sem.kind != SemExpr::Kind::Label) throw Error("goal " + to_string(g) + " is not closed");
        const Term& pattern = g.meaning();
        atom(sem.name, g.type(), std::move(st), depth, demander, [&](State& s, const Term& m, const Trace& t) {
          if (!pattern.valid()) {
            k(s, t);
            return;
          }
          State next = s;
          if (!unify_into(resolve(pattern, s), m, next.meaning)) return;
          k(next, t);
        });
        return;
      }
      case Formula::Kind::Tensor:
        goal(g.left(), std::move(st), depth, demander, [&](State& s, const Trace& left) {
          goal(g.right(), s, depth, demander, [&](State& s2, const Trace& right) {
            Trace t;
            if (traces_) {
              Step step;
              step.rule = Step::Rule::Pair;
              step.conclusion = render(resolve(g, s2));
              step.children = {left, right};
              t = make(std::move(step));
            }
            k(s2, t);
          });
        });
        return;
      case Formula::Kind::Limp: {
        Formula assumption = resolve(g.left(), st);
        std::vector<Formula> pieces;
        split_tensor(assumption, pieces);
        std::vector<int> ids;
        std::size_t first = st.resources.size();
        for (const auto& piece : pieces) {
          int h = st.next_hypothesis++;
          ids.push_back(h);
          st.resources.push_back({piece, -1, 0, h, demander});
          st.used.push_back(0);
        }
        std::size_t last = st.resources.size();
        goal(g.right(), std::move(st), depth, demander, [&](State& s, const Trace& body) {
          for (std::size_t i = first; i < last; ++i) {
            if (!s.used[i]) return;
          }
          Trace t;
          if (traces_) {
            Step step;
            step.rule = Step::Rule::Discharge;
            step.discharged = ids;
            step.assumption = render(assumption);
            step.conclusion = render(resolve(g, s));
            step.children = {body};
            t = make(std::move(step));
          }
          k(s, t);
        });
        return;
      }
      case Formula::Kind::Forall: {
        int watermark = st.next_meta;
        Formula body;
        Term constant;
        std::string eigen;
        if (g.binder() == Formula::Binder::Meaning) {
          constant = Term::hypothesis(g.variable(), g.variable_type(), st.next_constant++);
          body = substitute_meaning(g.body(), g.variable(), constant);
        } else {
          eigen = g.variable() + "'" + std::to_string(st.next_constant++);
          body = substitute_sem(g.body(), g.variable(), SemExpr::label(eigen));
        }
        goal(body, std::move(st), depth, demander, [&](State& s, const Trace& t) {
          // the fresh constant must not escape into anything decided outside
          for (const auto& [id, value] : s.meaning) {
            if (id >= watermark) break;
            if (constant.valid() && contains(value, [&](const Term& x) { return x == constant; })) return;
          }
          for (const auto& [id, label] : s.sem) {
            if (id >= watermark) break;
            if (!eigen.empty() && label == eigen) return;
          }
          if (traces_ && t && t->rule == Step::Rule::Discharge && constant.valid()) {
            Step step = *t;
            step.conclusion = "forall " + g.variable() + ":" + g.variable_type().str() + ". " + t->conclusion;
            k(s, make(std::move(step)));
            return;
          }
          k(s, t);
        });
        return;
      }
    }
  }

 private:
  void atom(const std::string& label, const std::optional<SemType>& type, State st, int depth, int demander,
            const AtomK& k) {
    if (depth > bound_) {
      throw BoundExceededError("derivation depth exceeds the bound of " + std::to_string(bound_) + " while proving " +
                               label + kSigma);
    }
    for (std::size_t r = 0; r < st.resources.size(); ++r) {
      if (st.used[r]) continue;
      const Formula& head = spine_head(st.resources[r].formula);
      if (head.kind() != Formula::Kind::Atom) continue;
      if (head.type() != type) continue;
      if (head.sem().kind == SemExpr::Kind::Label && head.sem().name != label) continue;
      use(r, label, st, depth, k);
    }
    if (holes_) {
      State s = std::move(st);
      int id = s.next_hole++;
      s.holes.push_back(Demand{label, type, demander});
      Term m = type ? Term::hole(*type, id) : Term();
      Trace t;
      if (traces_) {
        Step step;
        step.rule = Step::Rule::Hole;
        step.conclusion = s.holes.back().str();
        t = make(std::move(step));
      }
      k(s, m, t);
    }
  }

  struct Application {
    Resource resource;
    Formula original;
    Shape shape;
  };

  void use(std::size_t r, const std::string& label, State st, int depth, const AtomK& k) {
    Application app;
    app.resource = st.resources[r];
    app.original = resolve(app.resource.formula, st);
    st.used[r] = 1;
    app.shape = decompose(app.original, st);

    std::vector<char> before = bound_flags(app.shape, st);
    SemExpr head = resolve(app.shape.head.sem(), st);
    if (head.kind == SemExpr::Kind::Meta) {
      st.sem[head.meta] = label;
    } else if (head.kind != SemExpr::Kind::Label || head.name != label) {
      return;
    }

    Trace leaf;
    if (traces_) {
      Step step;
      step.rule = app.resource.premise >= 0 ? Step::Rule::Axiom : Step::Rule::Hypothesis;
      step.premise = app.resource.premise;
      step.part = app.resource.part;
      step.hypothesis = app.resource.hypothesis;
      step.conclusion = render(app.original);
      leaf = make(std::move(step));
    }

    std::vector<int> order(app.shape.parts.size());
    std::iota(order.begin(), order.end(), 0);
    do {
      chain(app, order, 0, std::vector<char>(order.size(), 0), st, leaf, before, depth, k);
    } while (all_orders_ && std::next_permutation(order.begin(), order.end()));
  }

  void chain(const Application& app, const std::vector<int>& order, std::size_t i, const std::vector<char>& solved,
             State st, const Trace& fn, const std::vector<char>& before, int depth, const AtomK& k) {
    if (i == order.size()) {
      Term m;
      if (app.shape.head.meaning().valid()) {
        m = resolve(app.shape.head.meaning(), st);
        if (has_metas(m)) return;
      }
      k(st, m, fn);
      return;
    }
    const Formula& part = app.shape.parts[order[i]];
    goal(part, std::move(st), depth + 1, app.resource.origin, [&](State& s, const Trace& arg) {
      std::vector<char> now = solved;
      now[order[i]] = 1;
      Trace t;
      if (traces_) {
        Step step;
        step.rule = Step::Rule::Apply;
        step.premise = app.resource.premise;
        step.hypothesis = app.resource.hypothesis;
        for (std::size_t b = 0; b < app.shape.binders.size(); ++b) {
          const Binder& binder = app.shape.binders[b];
          if (before[b]) continue;
          if (binder.sem) {
            if (auto it = s.sem.find(binder.meta); it != s.sem.end()) {
              step.bindings.emplace_back(binder.name, it->second + kSigma);
            }
          } else if (auto it = s.meaning.find(binder.meta); it != s.meaning.end()) {
            step.bindings.emplace_back(binder.name, to_string(normalize(it->second)));
          }
        }
        step.conclusion = render(residual(app.original, app.shape, now, s));
        step.children = {fn, arg};
        t = make(std::move(step));
      }
      chain(app, order, i + 1, now, s, t, bound_flags(app.shape, s), depth, k);
    });
  }

  std::vector<std::string> universe_;
  int bound_;
  bool all_orders_;
  bool traces_;
  bool holes_;
};

State load(const std::vector<Formula>& premises) {
  State st;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (!is_closed(premises[i])) throw Error("premise #" + std::to_string(i) + " is not closed: " + to_string(premises[i]));
    std::vector<Formula> parts;
    split_tensor(premises[i], parts);
    for (std::size_t p = 0; p < parts.size(); ++p) {
      if (spine_head(parts[p]).kind() != Formula::Kind::Atom) {
        throw Error("unsupported premise #" + std::to_string(i) + " " + to_string(premises[i]) +
                    ": tensor in the consequent of an implication");
      }
      st.resources.push_back({parts[p], static_cast<int>(i), static_cast<int>(p), -1, static_cast<int>(i)});
      st.used.push_back(0);
    }
  }
  return st;
}

std::vector<std::string> universe(const std::vector<Formula>& premises, const std::string& goal) {
  std::set<std::string> labels{goal};
  for (const auto& p : premises) {
    for (auto& l : glue::labels(p)) labels.insert(l);
  }
  return {labels.begin(), labels.end()};
}

}  // namespace

int default_bound(const std::vector<Formula>& premises) {
  int total = 0;
  for (const auto& p : premises) total += size(p);
  return total;
}

std::vector<Reading> derive(const std::vector<Formula>& premises, const Goal& goal, const ProverOptions& options) {
  State st = load(premises);
  int bound = options.max_depth ? *options.max_depth : default_bound(premises);
  Engine engine(universe(premises, goal.label), bound, options.all_traces, true, false);

  int answer = st.next_meta++;
  Formula target = Formula::atom(SemExpr::label(goal.label), goal.type, Term::meta(answer, goal.type, "M"), true);

  struct Found {
    Term meaning;
    Trace trace;
  };
  std::vector<Found> found;
  engine.goal(target, std::move(st), 0, -1, [&](State& s, const Trace& t) {
    if (std::find(s.used.begin(), s.used.end(), 0) != s.used.end()) return;
    found.push_back({s.meaning.at(answer), t});
  });

  std::map<std::string, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < found.size(); ++i) classes[to_string(canonical(found[i].meaning))].push_back(i);

  std::vector<Reading> readings;
  for (const auto& [key, members] : classes) {
    std::size_t best = members.front();
    for (std::size_t m : members) {
      if (to_string(found[m].meaning) < to_string(found[best].meaning)) best = m;
    }
    Reading r;
    r.meaning = found[best].meaning;
    r.type = goal.type;
    if (typecheck(r.meaning) != goal.type) {
      throw Error("internal: reading " + to_string(r.meaning) + " does not have type " + goal.type.str());
    }
    r.traces.push_back(found[best].trace);
    if (options.all_traces) {
      std::set<std::vector<std::string>> seen{render_trace(found[best].trace)};
      for (std::size_t m : members) {
        if (seen.insert(render_trace(found[m].trace)).second) r.traces.push_back(found[m].trace);
      }
    }
    readings.push_back(std::move(r));
  }
  std::sort(readings.begin(), readings.end(),
            [](const Reading& a, const Reading& b) { return to_string(a.meaning) < to_string(b.meaning); });
  return readings;
}

std::vector<Reading> derive(const PremiseSet& premises, const Goal& goal, const ProverOptions& options) {
  std::vector<Formula> formulas;
  for (const auto& p : premises) formulas.push_back(p.formula);
  return derive(formulas, goal, options);
}

bool entails(const Formula& antecedent, const Formula& consequent) {
  std::vector<Formula> premises{antecedent};
  State st = load(premises);
  std::set<std::string> labels;
  for (const auto& f : {antecedent, consequent}) {
    for (auto& l : glue::labels(f)) labels.insert(l);
  }
  Engine engine({labels.begin(), labels.end()}, size(antecedent) + size(consequent), false, false, false);
  bool holds = false;
  engine.goal(consequent, std::move(st), 0, -1, [&](State& s, const Trace&) {
    if (std::find(s.used.begin(), s.used.end(), 0) == s.used.end()) holds = true;
  });
  return holds;
}

std::vector<Partial> maximal_partials(const std::vector<Formula>& premises, const Goal& goal,
                                      const ProverOptions& options) {
  State st = load(premises);
  int bound = options.max_depth ? *options.max_depth : default_bound(premises) + 1;
  Engine engine(universe(premises, goal.label), bound, false, false, true);
  int answer = st.next_meta++;
  Formula target = Formula::atom(SemExpr::label(goal.label), goal.type, Term::meta(answer, goal.type, "M"), true);

  std::vector<Partial> best;
  std::set<std::pair<std::vector<int>, std::vector<std::string>>> seen;
  engine.goal(target, std::move(st), 0, -1, [&](State& s, const Trace&) {
    Partial p;
    std::vector<char> whole(premises.size(), 1);
    for (std::size_t r = 0; r < s.resources.size(); ++r) {
      if (s.resources[r].premise >= 0 && !s.used[r]) whole[s.resources[r].premise] = 0;
    }
    for (std::size_t i = 0; i < premises.size(); ++i) {
      if (whole[i]) p.consumed.push_back(static_cast<int>(i));
    }
    p.holes = s.holes;
    if (!best.empty()) {
      const Partial& b = best.front();
      if (p.consumed.size() < b.consumed.size()) return;
      if (p.consumed.size() == b.consumed.size() && p.holes.size() > b.holes.size()) return;
      if (p.consumed.size() > b.consumed.size() || p.holes.size() < b.holes.size()) {
        best.clear();
        seen.clear();
      }
    }
    std::vector<std::string> key;
    for (const auto& h : p.holes) key.push_back(h.str() + "@" + std::to_string(h.demanded_by));
    std::sort(key.begin(), key.end());
    if (seen.emplace(p.consumed, key).second) best.push_back(std::move(p));
  });
  return best;
}

// ---------------------------------------------------------------------------
// Traces

namespace {

std::string hyp(int h) { return "[" + std::to_string(h) + "]"; }

void leaves(const Trace& t, std::vector<std::string>& out, std::set<int>& discharged) {
  switch (t->rule) {
    case Step::Rule::Axiom:
      out.push_back("#" + std::to_string(t->premise));
      return;
    case Step::Rule::Hypothesis:
      out.push_back(hyp(t->hypothesis));
      return;
    case Step::Rule::Hole:
      out.push_back("?");
      return;
    case Step::Rule::Discharge:
      discharged.insert(t->discharged.begin(), t->discharged.end());
      break;
    default:
      break;
  }
  for (const auto& c : t->children) leaves(c, out, discharged);
}

std::string argument_list(const Trace& t) {
  std::vector<std::string> all;
  std::set<int> discharged;
  leaves(t, all, discharged);
  std::string out = "{";
  bool first = true;
  for (const auto& l : all) {
    bool closed = false;
    for (int h : discharged) closed = closed || l == hyp(h);
    if (closed) continue;
    out += (first ? "" : ",") + l;
    first = false;
  }
  return out + "}";
}

void lines(const Trace& t, std::vector<std::string>& out) {
  switch (t->rule) {
    case Step::Rule::Axiom:
    case Step::Rule::Hypothesis:
    case Step::Rule::Hole:
      return;
    case Step::Rule::Apply: {
      lines(t->children[0], out);
      lines(t->children[1], out);
      std::string line = "\xE2\x8A\xB8" "E ";  // ⊸E
      line += t->premise >= 0 ? "#" + std::to_string(t->premise) : hyp(t->hypothesis);
      line += " " + argument_list(t->children[1]);
      for (std::size_t i = 0; i < t->bindings.size(); ++i) {
        line += (i == 0 ? ": " : ", ") + t->bindings[i].first + kMapsTo + t->bindings[i].second;
      }
      out.push_back(line + " " + kTurnstile + " " + t->conclusion);
      return;
    }
    case Step::Rule::Pair:
      lines(t->children[0], out);
      lines(t->children[1], out);
      out.push_back("\xE2\x8A\x97I " + argument_list(t) + " " + kTurnstile + " " + t->conclusion);
      return;
    case Step::Rule::Discharge: {
      std::string ids;
      for (int h : t->discharged) ids += hyp(h);
      out.push_back("assume " + ids + " " + t->assumption);
      lines(t->children[0], out);
      out.push_back("\xE2\x8A\xB8I " + ids + " " + kTurnstile + " " + t->conclusion);
      return;
    }
  }
}

}  // namespace

std::vector<std::string> render_trace(const Trace& trace) {
  std::vector<std::string> out;
  if (!trace) return out;
  lines(trace, out);
  if (out.empty()) out.push_back("#" + std::to_string(trace->premise) + " " + kTurnstile + " " + trace->conclusion);
  return out;
}

std::optional<std::string> audit(const Trace& trace, const std::vector<Formula>& premises) {
  std::map<std::pair<int, int>, int> uses;
  std::map<int, int> hypothesis_uses;
  std::map<int, int> discharges;
  std::optional<std::string> problem;

  std::function<void(const Trace&, std::set<int>&)> walk = [&](const Trace& t, std::set<int>& open) {
    switch (t->rule) {
      case Step::Rule::Axiom:
        ++uses[{t->premise, t->part}];
        return;
      case Step::Rule::Hypothesis:
        ++hypothesis_uses[t->hypothesis];
        if (!open.count(t->hypothesis) && !problem) {
          problem = "hypothesis " + hyp(t->hypothesis) + " is used outside the step that discharges it";
        }
        return;
      case Step::Rule::Hole:
        if (!problem) problem = "derivation contains a hole";
        return;
      case Step::Rule::Discharge: {
        std::set<int> inner = open;
        for (int h : t->discharged) {
          ++discharges[h];
          inner.insert(h);
        }
        for (const auto& c : t->children) walk(c, inner);
        return;
      }
      default:
        for (const auto& c : t->children) walk(c, open);
    }
  };
  if (!trace) return "empty trace";
  std::set<int> open;
  walk(trace, open);
  if (problem) return problem;

  for (std::size_t i = 0; i < premises.size(); ++i) {
    std::vector<Formula> parts;
    split_tensor(premises[i], parts);
    for (std::size_t p = 0; p < parts.size(); ++p) {
      int n = uses[{static_cast<int>(i), static_cast<int>(p)}];
      if (n != 1) return "premise #" + std::to_string(i) + " is used " + std::to_string(n) + " times";
    }
  }
  for (const auto& [key, n] : uses) {
    if (key.first < 0 || key.first >= static_cast<int>(premises.size())) {
      return "trace uses unknown premise #" + std::to_string(key.first);
    }
  }
  for (const auto& [h, n] : discharges) {
    if (n != 1) return "hypothesis " + hyp(h) + " is discharged " + std::to_string(n) + " times";
    if (hypothesis_uses[h] != 1) {
      return "hypothesis " + hyp(h) + " is used " + std::to_string(hypothesis_uses[h]) + " times";
    }
  }
  for (const auto& [h, n] : hypothesis_uses) {
    if (!discharges.count(h)) return "hypothesis " + hyp(h) + " is never discharged";
  }
  return std::nullopt;
}

}  // namespace glue
