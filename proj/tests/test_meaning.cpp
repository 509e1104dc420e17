#include "doctest.h"

#include "glue/error.hpp"
#include "glue/meaning.hpp"
#include "oracle/named_lambda.hpp"

using namespace glue;

namespace {

SemType E = SemType::e();
SemType T = SemType::t();
SemType ET = SemType::arrow(E, T);

Signature fragment() {
  return {
      {"Bill", E},
      {"Hillary", E},
      {"person", ET},
      {"candidate", ET},
      {"manager", ET},
      {"convince", SemType::arrow(E, ET)},
      {"appoint", SemType::arrow(E, ET)},
      {"every", SemType::arrow(ET, SemType::arrow(ET, T))},
      {"a", SemType::arrow(ET, SemType::arrow(ET, T))},
      {"f", ET},
  };
}

Term parse(const std::string& text, const TypeEnv& vars = {}) { return parse_term(text, fragment(), vars); }

}  // namespace

TEST_CASE("types print right-associatively and parse back") {
  SemType quant = SemType::arrow(ET, T);
  CHECK(quant.str() == "(e -> t) -> t");
  CHECK(SemType::arrow(E, ET).str() == "e -> e -> t");
  CHECK(parse_type("e -> e -> t") == SemType::arrow(E, ET));
  CHECK(parse_type("(e -> t) -> t") == quant);
  CHECK(parse_type("e->t") == ET);
  CHECK_THROWS_AS(parse_type("e ->"), ParseError);
}

TEST_CASE("typecheck") {
  CHECK(typecheck(Term::constant("Bill", E)) == E);
  CHECK(typecheck(parse("every(person, \\z. convince(Bill,z))")) == T);
  // appoint : e -> e -> t applied once leaves e -> t
  CHECK(typecheck(parse("appoint(Bill)")) == ET);

  SUBCASE("ill-typed application") {
    Term bad = Term::apply(Term::constant("Bill", E), Term::constant("Hillary", E));
    CHECK_THROWS_AS(typecheck(bad), TypeError);
    Term wrong_arg = Term::apply(Term::constant("person", ET), Term::constant("person", ET));
    CHECK_THROWS_AS(typecheck(wrong_arg), TypeError);
  }
  SUBCASE("unbound variable") {
    CHECK_THROWS_AS(typecheck(Term::variable("x")), TypeError);
    CHECK(typecheck(Term::variable("x"), {{"x", E}}) == E);
  }
  SUBCASE("parse reports type and scope errors") {
    CHECK_THROWS_AS(parse("Bill(Hillary)"), TypeError);
    CHECK_THROWS_AS(parse("nobody"), ParseError);
    CHECK_THROWS_AS(parse("\\x. person(x)"), TypeError);  // binder type not inferable
    CHECK(typecheck(parse("\\x:e. person(x)")) == ET);
  }
}

TEST_CASE("normalize") {
  CHECK(normalize(parse("(\\z:e. convince(Bill,z))(Hillary)")) == parse("convince(Bill,Hillary)"));

  Term scoped = parse("a(manager, \\v. appoint(u,v))", {{"u", E}});
  CHECK(normalize(scoped) == scoped);
  CHECK(to_string(normalize(scoped)) == "a(manager, \\v. appoint(u,v))");

  // normalize keeps written binders; canonical is eta-short
  CHECK(normalize(parse("\\x:e. f(x)")) == parse("\\x:e. f(x)"));
  CHECK(canonical(parse("\\x:e. f(x)")) == parse("f"));
  CHECK(canonical(scoped) == parse("a(manager, appoint(u))", {{"u", E}}));
  // eta must not fire when the variable occurs in the function part
  Term self = parse("\\x:e. appoint(x,x)");
  CHECK(canonical(self) == self);
}

TEST_CASE("normalize agrees with the substitution oracle on random terms") {
  oracle::TermGenerator gen(20240601);
  for (int i = 0; i < 20; ++i) {
    SemType type = gen.random_type();
    oracle::NamedPtr named = gen.term(type, 1 + i % 6);
    Term term = oracle::to_library(named);
    REQUIRE(typecheck(term) == type);
    INFO("term: " << to_string(term));
    CHECK(oracle::alpha_equal(oracle::from_library(normalize(term)), oracle::reduce(named, false)));
    CHECK(oracle::alpha_equal(oracle::from_library(canonical(term)), oracle::reduce(named, true)));
  }
}

TEST_CASE("equivalent") {
  CHECK(equivalent(parse("\\x:e. f(x)"), parse("f")));
  CHECK(equivalent(parse("appoint(Bill,Hillary)"), parse("appoint(Bill,Hillary)")));
  Term forall_exists = parse("every(candidate, \\u. a(manager, \\v. appoint(u,v)))");
  Term exists_forall = parse("a(manager, \\v. every(candidate, \\u. appoint(u,v)))");
  CHECK_FALSE(equivalent(forall_exists, exists_forall));
  CHECK_THROWS_AS(equivalent(parse("Bill"), parse("f")), TypeError);
  // alpha: binder names are irrelevant
  CHECK(equivalent(parse("every(person, \\z. convince(Bill,z))"), parse("every(person, \\w. convince(Bill,w))")));
}

TEST_CASE("printing") {
  CHECK(to_string(parse("every(candidate, \\u. a(manager, \\v. appoint(u,v)))")) ==
        "every(candidate, \\u. a(manager, \\v. appoint(u,v)))");
  CHECK(to_string(parse("appoint(Bill, Hillary)")) == "appoint(Bill,Hillary)");
  // binder hints that collide with constants are renamed
  Term clash = Term::lambda("a", E, Term::apply(Term::constant("person", ET), Term::bound(0)));
  Term wrapped = Term::apply(Term::apply(parse("every"), clash), parse("f"));
  CHECK(to_string(wrapped) == "every(\\a. person(a), f)");
  Term clash2 = Term::apply(Term::apply(parse("a"), clash), parse("f"));
  CHECK(to_string(clash2) == "a(\\a1. person(a1), f)");
}

TEST_CASE("properties over random well-typed terms") {
  oracle::TermGenerator gen(7);
  Signature sig;
  for (const auto& [n, ty] : gen.constants()) sig.emplace(n, ty);
  std::vector<std::pair<Term, SemType>> sample;
  for (int i = 0; i < 200; ++i) {
    SemType type = gen.random_type();
    sample.emplace_back(oracle::to_library(gen.term(type, 1 + i % 6)), type);
  }
  for (const auto& [term, type] : sample) {
    Term n = normalize(term);
    CHECK(normalize(n) == n);                // idempotent
    CHECK(canonical(canonical(term)) == canonical(term));
    CHECK(typecheck(n) == type);             // type preservation
    CHECK(equivalent(term, term));           // reflexive
    CHECK(equivalent(term, n));
    CHECK(equivalent(n, term));              // symmetric on a related pair
    // print/parse round trip of normal forms
    CHECK(parse_term(to_string(n), sig, {}, type) == n);
  }
  // transitivity: a ~ normalize(a) ~ eta-expansion of a  =>  a ~ expansion
  for (const auto& [term, type] : sample) {
    if (!type.is_arrow()) continue;
    Term expanded = Term::lambda("k", type.from(), Term::apply(term, Term::bound(0)));
    // `term` is closed, so no shifting is needed under the new binder.
    CHECK(equivalent(term, normalize(term)));
    CHECK(equivalent(normalize(term), expanded));
    CHECK(equivalent(term, expanded));
  }
  // pairwise checks on a smaller sample
  for (std::size_t i = 0; i < 40; ++i) {
    for (std::size_t j = 0; j < 40; ++j) {
      if (sample[i].second != sample[j].second) continue;
      CHECK(equivalent(sample[i].first, sample[j].first) == equivalent(sample[j].first, sample[i].first));
    }
  }
}
