#include "nilmult/finite_group.hpp"
#include "nilmult/linalg.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace nilmult;

namespace {

AbelianInvariants inv(std::initializer_list<long> torsion, std::size_t free_rank = 0)
{
  std::vector<Integer> t;
  for (long x : torsion)
    t.push_back(x);
  AbelianInvariants a = AbelianInvariants::from_cyclic_orders(t);
  a.free_rank += free_rank;
  return a;
}

FiniteGroup abelian_model(const std::vector<long>& orders)
{
  FiniteGroup g = cyclic(1, "a");
  std::size_t i = 0;
  for (long n : orders) {
    FiniteGroup c = cyclic(static_cast<std::size_t>(n), "g" + std::to_string(i++));
    g = direct_product(g, c);
  }
  return g;
}

std::vector<long> orders_of(const AbelianInvariants& a)
{
  std::vector<long> out;
  for (const auto& t : a.torsion)
    out.push_back(static_cast<long>(t));
  return out;
}

/// Injective homomorphism X -> Y by search over generator images.
bool embeds_brute(const AbelianInvariants& x, const AbelianInvariants& y)
{
  const FiniteGroup gx = abelian_model(orders_of(x));
  const FiniteGroup gy = abelian_model(orders_of(y));
  const auto& gens = gx.generators();
  std::vector<Elem> images(gens.size(), 0);
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == gens.size()) {
      auto h = extend_to_hom(gx, gy, images);
      if (!h)
        return false;
      std::vector<bool> seen(gy.order(), false);
      for (Elem e : h->image) {
        if (seen[e])
          return false;
        seen[e] = true;
      }
      return true;
    }
    for (Elem e = 0; e < gy.order(); ++e) {
      if (gy.element_order(e) > gx.element_order(gens[k]) || gx.element_order(gens[k]) % gy.element_order(e))
        continue;
      images[k] = e;
      if (search(k + 1))
        return true;
    }
    return false;
  };
  return search(0);
}

}  // namespace

TEST_CASE("invariants print in the documented format")
{
  CHECK(to_string(inv({}, 0)) == "0");
  CHECK(to_string(inv({2, 6}, 2)) == "Z^2 + Z/2 + Z/6");
  CHECK(to_string(inv({4, 6})) == "Z/2 + Z/12");
  CHECK(to_string(inv({1, 1})) == "0");
}

TEST_CASE("Smith normal form on random matrices")
{
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = static_cast<long>(rng() % 19) - 9;
    const SmithForm sf = smith_normal_form(m);
    CHECK(sf.U * m * sf.V == sf.D);
    CHECK(abs(determinant(sf.U)) == 1);
    CHECK(abs(determinant(sf.V)) == 1);
    CHECK(verify_smith_form(m, sf));
    // the product of the diagonal equals the gcd of maximal minors when square
    if (r == c) {
      Integer prod = 1;
      for (std::size_t i = 0; i < r; ++i)
        prod *= sf.D(i, i);
      CHECK(prod == abs(determinant(m)));
    }
  }
}

TEST_CASE("Smith normal form with large entries")
{
  IntMatrix m(2, 2);
  m(0, 0) = Integer("123456789012345678901234567890");
  m(0, 1) = 6;
  m(1, 0) = 10;
  m(1, 1) = 15;
  const SmithForm sf = smith_normal_form(m);
  CHECK(verify_smith_form(m, sf));
}

TEST_CASE("cokernels")
{
  CHECK(cokernel_invariants(IntMatrix{{2, 0}, {0, 3}}) == inv({6}));
  CHECK(cokernel_invariants(IntMatrix{{2, 4}}) == inv({2}, 1));
  CHECK(cokernel_invariants(IntMatrix{{4, 6}, {6, 4}}) == inv({2, 10}));
  std::vector<SparseRow> rows{{{0, Integer(2)}}, {{1, Integer(4)}, {2, Integer(4)}}};
  CHECK(cokernel_invariants(rows, 3) == inv({2, 4}, 1));
}

TEST_CASE("direct factor, subgroup and quotient tests")
{
  CHECK(is_direct_factor(inv({2}), inv({2, 4})));
  CHECK_FALSE(is_direct_factor(inv({2, 2}), inv({2, 4})));
  CHECK(is_direct_factor(inv({3}, 1), inv({6}, 2)));
  CHECK_FALSE(is_direct_factor(inv({}, 2), inv({}, 1)));
  CHECK(embeds_as_subgroup(inv({2, 2}), inv({4, 4})));
  CHECK_FALSE(embeds_as_subgroup(inv({2, 2}), inv({8})));
  CHECK(is_quotient(inv({4}), inv({2, 8})));
  CHECK_THROWS_AS(abelian_tests(inv({}, 1), inv({2})), InfiniteGroupError);
}

TEST_CASE("subgroup embedding agrees with a homomorphism search")
{
  const std::vector<std::vector<long>> groups{{2}, {4}, {2, 2}, {2, 4}, {8}, {3}, {6}, {2, 2, 2}, {4, 4}, {2, 8}, {3, 3}};
  for (const auto& xs : groups)
    for (const auto& ys : groups) {
      AbelianInvariants x, y;
      for (long v : xs)
        x = x + inv({v});
      for (long v : ys)
        y = y + inv({v});
      INFO(to_string(x) << " -> " << to_string(y));
      CHECK(embeds_as_subgroup(x, y) == embeds_brute(x, y));
      CHECK(is_quotient(x, y) == embeds_as_subgroup(x, y));
    }
}

TEST_CASE("primary components and orders")
{
  const AbelianInvariants a = inv({12, 18});
  CHECK(a.order() == 216);
  const auto pc = a.primary_components();
  CHECK(pc.size() == 4);
  CHECK(factorize(360) == std::vector<std::pair<Integer, int>>{{2, 3}, {3, 2}, {5, 1}});
}
