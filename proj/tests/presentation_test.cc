#include "nilmult/group_expr.hpp"
#include "nilmult/presentation.hpp"

#include <doctest.h>

using namespace nilmult;

TEST_CASE("presentation files")
{
  const FinitePresentation p = parse_presentation("# dihedral of order 8\ngens: a, b\nrel: a^4\nrel: b^2  # reflection\n"
                                                  "rel: b^-1*a*b*a\nrel: a*a^-1\n");
  CHECK(p.generators == std::vector<GenSym>{"a", "b"});
  CHECK(p.relators.size() == 3);
  CHECK(parse_presentation(to_string(p)) == p);

  CHECK_THROWS_AS(parse_presentation("rel: a^2"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrel: b"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a, a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nfoo: a"), ParseError);
  CHECK_THROWS(load_presentation("/nonexistent/file.pres"));
}

TEST_CASE("action files")
{
  const FinitePresentation a = parse_presentation("gens: a\nrel: a^4");
  const FinitePresentation b = parse_presentation("gens: b\nrel: b^2");
  const ActionSpec act = parse_action("act: b : a -> a^-1", a, b);
  CHECK(action_image(act, "b", "a") == parse_word("a^-1"));
  CHECK(action_image({}, "b", "a") == parse_word("a"));
  CHECK_THROWS_AS(parse_action("act: a : b -> b", a, b), ParseError);
  CHECK_THROWS_AS(parse_action("act: b : a -> b", a, b), ParseError);

  const FinitePresentation g = semidirect_presentation(a, b, act);
  CHECK(g.generators.size() == 2);
  CHECK(g.relators.size() == 3);
}

TEST_CASE("constructed presentations hold in the table models")
{
  for (const char* expr : {"dihedral:5", "Q8", "product:Z3,Z4", "semidirect:Z7,Z3,2", "wreath:Z2,Z3", "wreath:Z3,Z2",
                           "product:(dihedral:4),Z2", "wreath:(product:Z2,Z2),Z2"}) {
    INFO(expr);
    const GroupExpr e = parse_group_expr(expr);
    REQUIRE(e.model);
    for (const auto& r : e.presentation.relators)
      CHECK(e.model->evaluate(r) == e.model->identity());
    CHECK(e.model->generator_names() == e.presentation.generators);
  }
}

TEST_CASE("family sizes")
{
  const FinitePresentation a = parse_presentation("gens: a\nrel: a^2");
  const FinitePresentation b = parse_presentation("gens: b, c\nrel: b^2\nrel: c^2\nrel: [b,c]");
  // tuples over 3 generators with at least one from B
  CHECK(family_Dc(a, b.generators, 1).size() == 2);
  CHECK(family_Dc(a, b.generators, 2).size() == 9 - 1);
  // tuples opening with [a^2, a] are trivial and dropped
  CHECK(commutator_tuples({parse_word("a^2")}, {"a", "b"}, 3).size() == 4);
  CHECK(family_TV(a, Variety::trivial) == a.relators);
  CHECK(wreath_commutation_words(parse_presentation("gens: a\nrel: a^2"), *parse_group_expr("Z3").model).size() == 2);
  CHECK(rename(b, {{"b", "x"}}).generators == std::vector<GenSym>{"x", "c"});
}

TEST_CASE("group expressions")
{
  const GroupExpr d = parse_group_expr("dihedral:4");
  CHECK(d.kind == GroupExpr::Kind::dihedral);
  CHECK(d.is_split());
  CHECK(d.presentation.generators == std::vector<GenSym>{"a", "b"});
  CHECK(d.model->order() == 8);

  const GroupExpr w = parse_group_expr("wreath:(product:Z2,Z2),Z3");
  CHECK(w.presentation.generators == std::vector<GenSym>{"a", "b", "c"});
  CHECK(w.model->order() == 64 * 3);

  CHECK_FALSE(parse_group_expr("freewreath:Z2,Z3").model);
  CHECK_FALSE(parse_group_expr("wreath:Z4,(wreath:Z2,Z4)").model);

  CHECK_THROWS_AS(parse_group_expr("wreath:Z2"), ParseError);
  CHECK_THROWS_AS(parse_group_expr("Zx"), ParseError);
  CHECK_THROWS_AS(parse_group_expr("product:(Z2,Z3"), ParseError);
  CHECK_THROWS_AS(parse_group_expr("semidirect:Z3,Z2"), ParseError);
  CHECK_THROWS_AS(parse_group_expr("semidirect:Z4,Z2,2"), GroupError);
  try {
    parse_group_expr("product:Z2,foo");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 12);
  }
}
