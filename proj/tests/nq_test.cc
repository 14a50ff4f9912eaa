#include "nilmult/finite_group.hpp"
#include "nilmult/group_expr.hpp"
#include "nilmult/nq.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace nilmult;

namespace {

FinitePresentation free_on(std::size_t n)
{
  FinitePresentation p;
  for (std::size_t i = 0; i < n; ++i)
    p.generators.push_back(std::string(1, static_cast<char>('a' + i)));
  return p;
}

}  // namespace

TEST_CASE("free nilpotent quotients have Witt ranks")
{
  for (std::size_t n = 1; n <= 3; ++n) {
    const NilpotentQuotient q = nilpotent_quotient(free_on(n), 5);
    const auto layers = q.layers();
    for (int w = 1; w <= 5; ++w) {
      const long long expected = oracle::witt(static_cast<long long>(n), w);
      if (expected == 0) {
        CHECK(static_cast<int>(layers.size()) < w);
        continue;
      }
      REQUIRE(static_cast<int>(layers.size()) >= w);
      CHECK(layers[w - 1].torsion.empty());
      CHECK(static_cast<long long>(layers[w - 1].free_rank) == expected);
    }
    CHECK_FALSE(certify(q).has_value());
    CHECK(q.order() == 0);
  }
}

TEST_CASE("finite nilpotent groups: order and class agree with table models")
{
  for (const char* expr : {"Z8", "Q8", "dihedral:4", "dihedral:8", "product:Z2,Z4", "wreath:Z2,Z2", "wreath:Z2,Z4",
                           "wreath:Z3,Z3", "semidirect:Z9,Z3,4", "semidirect:Z4,Z4,3"}) {
    INFO(expr);
    const GroupExpr e = parse_group_expr(expr);
    REQUIRE(e.model);
    const LowerCentralSeries lcs = lower_central_series(*e.model);
    REQUIRE(lcs.nilpotent);
    const NilpotentQuotient q = nilpotent_quotient(e.presentation, lcs.nilpotency_class + 2);
    CHECK(q.order() == static_cast<long>(e.model->order()));
    CHECK(q.reached_class() == lcs.nilpotency_class);
    CHECK_FALSE(certify(q).has_value());
    // each layer gamma_w / gamma_{w+1} matches the table group's series
    const auto layers = q.layers();
    for (std::size_t w = 0; w + 1 < lcs.terms.size(); ++w) {
      const Integer ratio = static_cast<long>(lcs.terms[w].size() / lcs.terms[w + 1].size());
      CHECK(layers[w].order() == ratio);
    }
    const ClassDetection d = detect_class(e.presentation);
    CHECK(d.ok());
    CHECK(d.nilpotency_class == lcs.nilpotency_class);
  }
}

TEST_CASE("non-nilpotent groups are refuted")
{
  for (const char* expr : {"dihedral:3", "semidirect:Z7,Z3,2", "dihedral:6", "wreath:Z2,Z3"}) {
    INFO(expr);
    const GroupExpr e = parse_group_expr(expr);
    const ClassDetection d = detect_class(e.presentation);
    CHECK_FALSE(d.ok());
    CHECK_FALSE(d.reason.empty());
    CHECK_FALSE(is_nilpotent(*e.model));
  }
}

TEST_CASE("infinite quotients")
{
  FinitePresentation p = free_on(2);
  p.relators.push_back(parse_word("[a,b]"));
  const NilpotentQuotient q = nilpotent_quotient(p, 3);
  CHECK(q.reached_class() == 1);
  CHECK(to_string(q.layers().front()) == "Z^2");
  // Z x| Z2 by inversion is not nilpotent; refutation is impossible for an
  // infinite quotient, so only the cap remains
  p = parse_presentation("gens: a, b\nrel: b^2\nrel: b^-1*a*b*a");
  CHECK_FALSE(detect_class(p, 4).ok());
}

TEST_CASE("the trivial group")
{
  const FinitePresentation p = parse_presentation("gens: a\nrel: a");
  const NilpotentQuotient q = nilpotent_quotient(p, 3);
  CHECK(q.pres.size() == 0);
  CHECK(q.order() == 1);
  CHECK(detect_class(p).ok());
  CHECK(detect_class(p).nilpotency_class == 0);
}
