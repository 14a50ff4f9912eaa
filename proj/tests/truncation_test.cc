#include "nilmult/group_expr.hpp"
#include "nilmult/nq.hpp"
#include "nilmult/truncation.hpp"

#include <doctest.h>

using namespace nilmult;

TEST_CASE("wreath truncation identity")
{
  const GroupExpr e = parse_group_expr("product:(product:Z2,Z2),Z3");
  for (Variety v : {Variety::trivial, Variety::abelian})
    for (int c = 1; c <= 2; ++c)
      for (int j = c + 1; j <= c + 2; ++j) {
        const ClaimVerdict r = truncation_wreath_check(e.a->presentation, e.b->presentation, v, e.b->model.get(), c, j);
        INFO(c << " " << j << " " << r.witness.at("lhs") << " | " << r.witness.at("rhs"));
        CHECK(r.verdict == Verdict::pass);
      }
}

TEST_CASE("free wreath truncation identity")
{
  for (const char* expr : {"product:Z2,Z3", "product:Z4,Z2", "product:(product:Z2,Z2),Z2"})
    for (int c = 1; c <= 2; ++c)
      for (int j = c + 1; j <= c + 3; ++j) {
        const GroupExpr e = parse_group_expr(expr);
        INFO(expr << " c=" << c << " j=" << j);
        CHECK(truncation_free_wreath_check(e.a->presentation, e.b->presentation, c, j).verdict == Verdict::pass);
      }
}

TEST_CASE("dropping the mixed commutator term breaks the identity")
{
  // F free on a, b modulo gamma_4; R = <a^2, b^2>^F; c = 1
  FinitePresentation free;
  free.generators = {"a", "b"};
  const NilpotentQuotient q = nilpotent_quotient(free, 3);
  const auto g = std::make_shared<const PcGroup>(q.pres);
  auto ev = [&](const char* w) { return evaluate(*g, free.generators, q.images, parse_word(w)); };
  const PcElement a = ev("a"), b = ev("b");
  const PcSubgroup f1 = subgroup(g, {a}), f2 = subgroup(g, {b});

  const PcSubgroup lhs = iterated_commutator(normal_closure(g, {ev("a^2"), ev("b^2")}), 1);
  const PcSubgroup r2 = closure_under(g, {ev("b^2")}, {b});
  const PcSubgroup mixed = normal_closure(g, commutator_subgroup(r2, f1).generators());
  std::vector<PcElement> s = commutator_subgroup(r2, f1).generators();
  s.push_back(ev("a^2"));
  const PcSubgroup tail = join(commutator_subgroup(r2, f2), iterated_commutator(normal_closure(g, s), 1));

  CHECK(join(tail, mixed) == lhs);
  CHECK_FALSE(tail == lhs);
  CHECK_FALSE(lhs.is_subgroup_of(tail));
}

TEST_CASE("commutator product identity")
{
  for (const char* expr : {"dihedral:4", "Q8", "product:Z2,Z4"})
    for (int j = 2; j <= 4; ++j) {
      const GroupExpr e = parse_group_expr(expr);
      const ClaimVerdict v = commutator_product_check(e.presentation, {"a"}, j);
      INFO(expr << " j=" << j);
      CHECK(v.verdict == Verdict::pass);
      CHECK(v.witness.count("N=F") == 1);
    }
}

TEST_CASE("signatures")
{
  FinitePresentation free;
  free.generators = {"a", "b"};
  const NilpotentQuotient q = nilpotent_quotient(free, 5);
  const auto g = std::make_shared<const PcGroup>(q.pres);
  CHECK(signature(trivial_subgroup(g)) == "0 gens:");
  const std::string s = signature(whole_group(g));
  CHECK(s.rfind(std::to_string(g->size()) + " gens: 1^1 2^1", 0) == 0);
  CHECK(s.find("...") != std::string::npos);
}
