#include "nilmult/group_expr.hpp"
#include "nilmult/nq.hpp"
#include "nilmult/pcgroup.hpp"

#include <doctest.h>

#include <map>
#include <random>
#include <set>

using namespace nilmult;

namespace {

/// Elements of a finite pc group with brute-force subgroup operations.
struct Brute
{
  PcGroupPtr g;
  std::vector<PcElement> elems;
  std::map<std::string, std::size_t> index;

  explicit Brute(PcGroupPtr grp) : g(std::move(grp))
  {
    elems = *enumerate_elements(*g, 100000);
    for (std::size_t i = 0; i < elems.size(); ++i)
      index[to_string(elems[i])] = i;
  }
  std::size_t id(const PcElement& x) const { return index.at(to_string(x)); }

  std::set<std::size_t> closure(const std::vector<PcElement>& gens) const
  {
    std::set<std::size_t> s{id(g->identity())};
    std::vector<std::size_t> frontier{id(g->identity())};
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t i : frontier)
        for (const auto& x : gens) {
          const std::size_t k = id(g->mul(elems[i], x));
          if (s.insert(k).second)
            next.push_back(k);
        }
      frontier = std::move(next);
    }
    return s;
  }
  std::vector<PcElement> members(const std::set<std::size_t>& s) const
  {
    std::vector<PcElement> out;
    for (std::size_t i : s)
      out.push_back(elems[i]);
    return out;
  }
  std::set<std::size_t> normal_closure(const std::vector<PcElement>& gens) const
  {
    std::vector<PcElement> conj;
    for (const auto& x : gens)
      for (const auto& y : elems)
        conj.push_back(g->conj(x, y));
    return closure(conj);
  }
  std::set<std::size_t> commutator(const std::set<std::size_t>& h, const std::set<std::size_t>& k) const
  {
    std::vector<PcElement> cs;
    for (std::size_t i : h)
      for (std::size_t j : k)
        cs.push_back(g->comm(elems[i], elems[j]));
    return closure(cs);
  }
};

std::set<std::size_t> meet(const std::set<std::size_t>& a, const std::set<std::size_t>& b)
{
  std::set<std::size_t> out;
  for (auto x : a)
    if (b.count(x))
      out.insert(x);
  return out;
}

PcGroupPtr pc_of(const char* expr, int cls)
{
  const NilpotentQuotient q = nilpotent_quotient(parse_group_expr(expr).presentation, cls);
  return std::make_shared<const PcGroup>(q.pres);
}

}  // namespace

TEST_CASE("subgroup operations agree with brute force")
{
  std::mt19937 rng(5);
  for (const auto& [expr, cls] : std::vector<std::pair<const char*, int>>{
           {"dihedral:8", 4}, {"wreath:Z2,Z4", 5}, {"Q8", 3}, {"semidirect:Z9,Z3,4", 3}}) {
    INFO(expr);
    const Brute b(pc_of(expr, cls));
    const std::size_t n = b.elems.size();
    CHECK(b.g->order() == static_cast<long>(n));
    auto pick = [&] { return b.elems[rng() % n]; };

    for (int trial = 0; trial < 12; ++trial) {
      const std::vector<PcElement> hs{pick(), pick()};
      const std::vector<PcElement> ks{pick()};
      const PcSubgroup h = subgroup(b.g, hs);
      const PcSubgroup k = subgroup(b.g, ks);
      const auto bh = b.closure(hs);
      const auto bk = b.closure(ks);
      CHECK(h.order() == static_cast<long>(bh.size()));
      for (std::size_t i = 0; i < n; ++i)
        CHECK(h.contains(b.elems[i]) == (bh.count(i) == 1));

      const PcSubgroup nk = normal_closure(b.g, ks);
      const auto bnk = b.normal_closure(ks);
      CHECK(nk.order() == static_cast<long>(bnk.size()));
      CHECK(is_normal(nk));

      CHECK(commutator_subgroup(h, k).order() == static_cast<long>(b.commutator(bh, bk).size()));
      CHECK(join(h, k).order() == static_cast<long>(b.closure({hs[0], hs[1], ks[0]}).size()));
      CHECK(intersect_with_normal(h, nk).order() == static_cast<long>(meet(bh, bnk).size()));

      const PcQuotient q = quotient(nk);
      CHECK(q.group->order() * nk.order() == static_cast<long>(n));
      CHECK(q.project(ks[0]).is_identity());

      // canonical sequences make equality structural
      CHECK(subgroup(b.g, b.members(bh)) == h);
    }

    // lower central series against iterated brute commutators
    std::set<std::size_t> gamma;
    for (std::size_t i = 0; i < n; ++i)
      gamma.insert(i);
    const std::set<std::size_t> all = gamma;
    for (int i = 1; i <= cls + 1; ++i) {
      CHECK(lower_central_subgroup(b.g, i).order() == static_cast<long>(gamma.size()));
      gamma = b.commutator(gamma, all);
    }
  }
}

TEST_CASE("abelian invariants of subgroups")
{
  const PcGroupPtr g = pc_of("product:Z4,Z6", 2);
  CHECK(to_string(abelian_invariants(whole_group(g))) == "Z/2 + Z/12");
  const PcGroupPtr d = pc_of("dihedral:4", 3);
  CHECK(to_string(abelian_invariants(lower_central_subgroup(d, 2))) == "Z/2");
  CHECK_THROWS_AS(abelian_invariants(whole_group(d)), NotAbelianError);
  CHECK(to_string(quotient_invariants(whole_group(d), lower_central_subgroup(d, 2))) == "Z/2 + Z/2");
}

TEST_CASE("infinite groups")
{
  FinitePresentation p;
  p.generators = {"a", "b"};
  const NilpotentQuotient q = nilpotent_quotient(p, 2);
  const auto g = std::make_shared<const PcGroup>(q.pres);
  CHECK(whole_group(g).order() == 0);
  const PcSubgroup h = subgroup(g, {g->pow(g->gen(0), 4)});
  CHECK(h.index() == 0);
  CHECK(h.contains(g->pow(g->gen(0), -8)));
  CHECK_FALSE(h.contains(g->pow(g->gen(0), 2)));
  CHECK(lower_central_subgroup(g, 2).is_subgroup_of(whole_group(g)));
}
