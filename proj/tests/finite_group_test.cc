#include "nilmult/finite_group.hpp"
#include "nilmult/group_expr.hpp"

#include <doctest.h>

using namespace nilmult;

namespace {

const char* const kA4Action = "act: c : a -> b\nact: c : b -> a*b\n";

FiniteGroup model(const char* expr, const char* action = nullptr)
{
  std::optional<std::string> act;
  if (action)
    act = action;
  return *parse_group_expr(expr, act).model;
}

}  // namespace

TEST_CASE("Schur multipliers of small groups from the bar complex")
{
  const std::vector<std::pair<FiniteGroup, const char*>> cases{
      {model("Z1"), "0"},
      {model("Z6"), "0"},
      {model("product:Z2,Z2"), "Z/2"},
      {model("product:Z2,Z4"), "Z/2"},
      {model("product:Z3,Z3"), "Z/3"},
      {model("product:(product:Z2,Z2),Z2"), "Z/2 + Z/2 + Z/2"},
      {model("Q8"), "0"},
      {model("dihedral:4"), "Z/2"},
      {model("dihedral:3"), "0"},
      {model("dihedral:6"), "Z/2"},
      {model("semidirect:Z3,Z4,2"), "0"},
      {model("semidirect:(product:Z2,Z2),Z3", kA4Action), "Z/2"},
  };
  for (const auto& [g, expected] : cases) {
    INFO("order " << g.order());
    const AbelianInvariants bar = schur_multiplier_oracle(g, 24);
    CHECK(to_string(bar) == expected);
    CHECK(schur_multiplier_hopf(g) == bar);
  }
}

TEST_CASE("the bar oracle refuses large groups")
{
  CHECK_THROWS_AS(schur_multiplier_oracle(cyclic(25), 24), CapExceeded);
  // the Hopf oracle has no such limit
  CHECK(to_string(schur_multiplier_hopf(model("wreath:Z2,Z4"))) == to_string(schur_multiplier_hopf(model("wreath:Z2,Z4"))));
  CHECK(schur_multiplier_hopf(cyclic(97)).is_trivial());
}

TEST_CASE("table constructions")
{
  CHECK(model("wreath:Z2,Z2").order() == 8);
  CHECK(model("wreath:Z3,Z3").order() == 81);
  CHECK(are_isomorphic(model("wreath:Z2,Z2"), model("dihedral:4")));
  CHECK_FALSE(are_isomorphic(model("Q8"), model("dihedral:4")));
  CHECK(are_isomorphic(model("semidirect:Z4,Z2,1"), model("product:Z4,Z2")));
  CHECK(to_string(abelianization(model("dihedral:4"))) == "Z/2 + Z/2");
  CHECK(to_string(abelianization(model("semidirect:(product:Z2,Z2),Z3", kA4Action))) == "Z/3");

  const LowerCentralSeries lcs = lower_central_series(model("wreath:Z2,Z4"));
  CHECK(lcs.nilpotent);
  CHECK(lcs.nilpotency_class == 4);
  CHECK_FALSE(is_nilpotent(model("dihedral:3")));
}

TEST_CASE("invalid tables and actions are rejected")
{
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 1}}), GroupError);
  // a -> a^2 is not an automorphism of Z4
  CHECK_THROWS_AS(semidirect(cyclic(4, "a"), cyclic(2, "b"), {{2}}), GroupError);
  // a -> a^2 is an automorphism of Z3 but has order 2, not dividing 3
  CHECK_THROWS_AS(semidirect(cyclic(3, "a"), cyclic(3, "b"), {{2}}), GroupError);
}

TEST_CASE("homomorphisms and words")
{
  const FiniteGroup d = dihedral(4);
  CHECK(d.evaluate(parse_word("a^4")) == d.identity());
  CHECK(d.evaluate(parse_word("b^-1*a*b*a")) == d.identity());
  CHECK(extend_to_hom(cyclic(4), cyclic(2), {1}).has_value());
  CHECK_FALSE(extend_to_hom(cyclic(2), cyclic(4), {1}).has_value());
  const auto words = transversal_words(d);
  CHECK(words.size() == 8);
  CHECK(words.front().is_identity());
  CHECK_THROWS_AS(d.generator("z"), GroupError);
}
