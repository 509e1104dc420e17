#pragma once

// Reference lambda calculus for tests: named variables, textbook
// capture-avoiding substitution, and normalization by repeated
// leftmost-outermost single-step beta/eta contraction. Deliberately shares no
// code with the de Bruijn implementation it checks; it only reads library
// terms to convert them.

#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "glue/meaning.hpp"

namespace oracle {

struct Named;
using NamedPtr = std::shared_ptr<const Named>;

struct Named {
  enum class Kind { Con, Var, App, Lam } kind;
  std::string name;  // constant, variable, or binder name
  glue::SemType type = glue::SemType::e();  // constant type or binder type
  NamedPtr left;   // App fun / Lam body
  NamedPtr right;  // App arg
};

inline NamedPtr con(std::string n, glue::SemType ty) {
  return std::make_shared<Named>(Named{Named::Kind::Con, std::move(n), std::move(ty), nullptr, nullptr});
}
inline NamedPtr var(std::string n) {
  return std::make_shared<Named>(Named{Named::Kind::Var, std::move(n), glue::SemType::e(), nullptr, nullptr});
}
inline NamedPtr app(NamedPtr f, NamedPtr a) {
  return std::make_shared<Named>(Named{Named::Kind::App, "", glue::SemType::e(), std::move(f), std::move(a)});
}
inline NamedPtr lam(std::string x, glue::SemType ty, NamedPtr body) {
  return std::make_shared<Named>(Named{Named::Kind::Lam, std::move(x), std::move(ty), std::move(body), nullptr});
}

inline void free_vars(const NamedPtr& t, std::set<std::string>& out, std::set<std::string> bound = {}) {
  switch (t->kind) {
    case Named::Kind::Con:
      return;
    case Named::Kind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case Named::Kind::App:
      free_vars(t->left, out, bound);
      free_vars(t->right, out, bound);
      return;
    case Named::Kind::Lam:
      bound.insert(t->name);
      free_vars(t->left, out, bound);
      return;
  }
}

inline std::set<std::string> free_vars(const NamedPtr& t) {
  std::set<std::string> out;
  free_vars(t, out);
  return out;
}

inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 0;; ++i) {
    std::string n = base + "_" + std::to_string(i);
    if (!avoid.count(n)) return n;
  }
}

/// t[x := s], renaming binders that would capture free variables of s.
inline NamedPtr subst(const NamedPtr& t, const std::string& x, const NamedPtr& s) {
  switch (t->kind) {
    case Named::Kind::Con:
      return t;
    case Named::Kind::Var:
      return t->name == x ? s : t;
    case Named::Kind::App:
      return app(subst(t->left, x, s), subst(t->right, x, s));
    case Named::Kind::Lam: {
      if (t->name == x) return t;
      std::set<std::string> fs = free_vars(s);
      if (!fs.count(t->name)) return lam(t->name, t->type, subst(t->left, x, s));
      std::set<std::string> avoid = fs;
      auto fb = free_vars(t->left);
      avoid.insert(fb.begin(), fb.end());
      avoid.insert(x);
      std::string y = fresh_name(t->name, avoid);
      NamedPtr renamed = subst(t->left, t->name, var(y));
      return lam(y, t->type, subst(renamed, x, s));
    }
  }
  return t;
}

/// One leftmost-outermost beta (or, with `eta`, eta) step, if any redex exists.
inline std::optional<NamedPtr> step(const NamedPtr& t, bool eta) {
  if (t->kind == Named::Kind::App && t->left->kind == Named::Kind::Lam) {
    return subst(t->left->left, t->left->name, t->right);
  }
  if (eta && t->kind == Named::Kind::Lam && t->left->kind == Named::Kind::App &&
      t->left->right->kind == Named::Kind::Var && t->left->right->name == t->name &&
      !free_vars(t->left->left).count(t->name)) {
    return t->left->left;
  }
  switch (t->kind) {
    case Named::Kind::App:
      if (auto f = step(t->left, eta)) return app(*f, t->right);
      if (auto a = step(t->right, eta)) return app(t->left, *a);
      return std::nullopt;
    case Named::Kind::Lam:
      if (auto b = step(t->left, eta)) return lam(t->name, t->type, *b);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

inline NamedPtr reduce(NamedPtr t, bool eta) {
  while (auto next = step(t, eta)) t = *next;
  return t;
}

inline bool alpha_equal(const NamedPtr& a, const NamedPtr& b,
                        std::vector<std::pair<std::string, std::string>>& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Named::Kind::Con:
      return a->name == b->name;
    case Named::Kind::Var:
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == a->name || it->second == b->name) return it->first == a->name && it->second == b->name;
      }
      return a->name == b->name;
    case Named::Kind::App:
      return alpha_equal(a->left, b->left, env) && alpha_equal(a->right, b->right, env);
    case Named::Kind::Lam: {
      if (a->type != b->type) return false;
      env.emplace_back(a->name, b->name);
      bool ok = alpha_equal(a->left, b->left, env);
      env.pop_back();
      return ok;
    }
  }
  return false;
}

inline bool alpha_equal(const NamedPtr& a, const NamedPtr& b) {
  std::vector<std::pair<std::string, std::string>> env;
  return alpha_equal(a, b, env);
}

/// Read a library term into named form, naming every binder uniquely.
inline NamedPtr from_library(const glue::Term& t, std::vector<std::string>& scope, int& counter) {
  using K = glue::Term::Kind;
  switch (t.kind()) {
    case K::Constant:
      return con(t.name(), t.type());
    case K::Variable:
      return var(t.name());
    case K::Bound:
      return var(scope[scope.size() - 1 - t.index()]);
    case K::Application:
      return app(from_library(t.fun(), scope, counter), from_library(t.arg(), scope, counter));
    case K::Abstraction: {
      std::string x = "b" + std::to_string(counter++);
      scope.push_back(x);
      NamedPtr body = from_library(t.body(), scope, counter);
      scope.pop_back();
      return lam(x, t.type(), body);
    }
    case K::Meta:
      break;
  }
  return var("?meta");
}

inline NamedPtr from_library(const glue::Term& t) {
  std::vector<std::string> scope;
  int counter = 0;
  return from_library(t, scope, counter);
}

/// Named -> library, binders by scope lookup.
inline glue::Term to_library(const NamedPtr& t, std::vector<std::string>& scope) {
  switch (t->kind) {
    case Named::Kind::Con:
      return glue::Term::constant(t->name, t->type);
    case Named::Kind::Var:
      for (int i = static_cast<int>(scope.size()) - 1; i >= 0; --i) {
        if (scope[i] == t->name) return glue::Term::bound(static_cast<int>(scope.size()) - 1 - i);
      }
      return glue::Term::variable(t->name);
    case Named::Kind::App:
      return glue::Term::apply(to_library(t->left, scope), to_library(t->right, scope));
    case Named::Kind::Lam: {
      scope.push_back(t->name);
      glue::Term body = to_library(t->left, scope);
      scope.pop_back();
      return glue::Term::lambda(t->name, t->type, body);
    }
  }
  return {};
}

inline glue::Term to_library(const NamedPtr& t) {
  std::vector<std::string> scope;
  return to_library(t, scope);
}

/// Random well-typed named terms over a fixed constant table. Redexes are
/// generated on purpose so normalization has work to do.
class TermGenerator {
 public:
  explicit TermGenerator(unsigned seed) : rng_(seed) {
    using glue::SemType;
    SemType e = SemType::e(), t = SemType::t();
    SemType et = SemType::arrow(e, t);
    constants_ = {
        {"a0", e},
        {"b0", e},
        {"p0", t},
        {"P", et},
        {"Q", et},
        {"R", SemType::arrow(e, et)},
        {"g", SemType::arrow(e, e)},
        {"neg", SemType::arrow(t, t)},
        {"every", SemType::arrow(et, SemType::arrow(et, t))},
        {"some", SemType::arrow(et, t)},
    };
    arg_types_ = {e, t, et};
  }

  const std::vector<std::pair<std::string, glue::SemType>>& constants() const { return constants_; }

  NamedPtr term(const glue::SemType& type, int depth) {
    std::vector<std::pair<std::string, glue::SemType>> scope;
    return gen(type, depth, scope);
  }

  glue::SemType random_type() { return arg_types_[pick(arg_types_.size())]; }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  NamedPtr leaf(const glue::SemType& type, std::vector<std::pair<std::string, glue::SemType>>& scope) {
    std::vector<NamedPtr> options;
    for (const auto& [n, ty] : scope) {
      if (ty == type) options.push_back(var(n));
    }
    for (const auto& [n, ty] : constants_) {
      if (ty == type) options.push_back(con(n, ty));
    }
    if (!options.empty()) return options[pick(options.size())];
    return nullptr;
  }

  NamedPtr gen(const glue::SemType& type, int depth, std::vector<std::pair<std::string, glue::SemType>>& scope) {
    if (depth <= 0) {
      if (auto l = leaf(type, scope)) return l;
      // No constant of this arrow type: eta-long lambda down to a base type.
      return make_lambda(type, 1, scope);
    }
    int choice = static_cast<int>(pick(4));
    if (choice == 0) {
      if (auto l = leaf(type, scope)) return l;
    }
    if (choice == 1 && type.is_arrow()) return make_lambda(type, depth, scope);
    if (choice == 2) {
      // explicit beta-redex
      glue::SemType arg_type = random_type();
      std::string x = "x" + std::to_string(counter_++);
      scope.emplace_back(x, arg_type);
      NamedPtr body = gen(type, depth - 1, scope);
      scope.pop_back();
      return app(lam(x, arg_type, body), gen(arg_type, depth - 1, scope));
    }
    if (type.is_arrow() && pick(2) == 0) return make_lambda(type, depth, scope);
    glue::SemType arg_type = random_type();
    return app(gen(glue::SemType::arrow(arg_type, type), depth - 1, scope), gen(arg_type, depth - 1, scope));
  }

  NamedPtr make_lambda(const glue::SemType& type, int depth,
                       std::vector<std::pair<std::string, glue::SemType>>& scope) {
    std::string x = "x" + std::to_string(counter_++);
    scope.emplace_back(x, type.from());
    NamedPtr body = gen(type.to(), depth - 1, scope);
    scope.pop_back();
    return lam(x, type.from(), body);
  }

  std::mt19937 rng_;
  std::vector<std::pair<std::string, glue::SemType>> constants_;
  std::vector<glue::SemType> arg_types_;
  int counter_ = 0;
};

}  // namespace oracle
