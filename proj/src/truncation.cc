#include "nilmult/truncation.hpp"

#include "nilmult/nq.hpp"

#include <algorithm>
#include <sstream>

namespace nilmult {

PcSubgroup iterated_commutator(const PcSubgroup& h, const std::vector<PcSubgroup>& ks)
{
  PcSubgroup out = h;
  for (const auto& k : ks)
    out = commutator_subgroup(out, k);
  return out;
}

std::string signature(const PcSubgroup& h)
{
  std::ostringstream os;
  os << h.generators().size() << " gens:";
  std::size_t shown = 0;
  for (const auto& t : h.generators()) {
    if (++shown > 12) {
      os << " ...";
      break;
    }
    os << ' ' << t.terms().front().first + 1 << '^' << t.leading_exponent();
  }
  return os.str();
}

namespace {

/// Quotient of the group presented by `p` by gamma_{j+1}, with evaluation.
struct Truncated
{
  NilpotentQuotient q;
  PcGroupPtr g;

  PcElement operator()(const Word& w) const { return evaluate(*g, q.source.generators, q.images, w); }
  std::vector<PcElement> operator()(const std::vector<Word>& ws) const
  {
    std::vector<PcElement> out;
    for (const auto& w : ws)
      out.push_back((*this)(w));
    return out;
  }
  std::vector<PcElement> gens(const std::vector<GenSym>& names) const
  {
    std::vector<PcElement> out;
    for (const auto& n : names)
      out.push_back((*this)(Word::generator(n)));
    return out;
  }
};

Truncated truncate(const FinitePresentation& p, int j)
{
  Truncated t;
  NqEngine engine(p);
  for (int i = 0; i < j; ++i)
    engine.step();
  t.q = engine.result();
  t.g = std::make_shared<const PcGroup>(t.q.pres);
  return t;
}

/// Every sequence of length c over {0, 1} containing at least one 1.
std::vector<std::vector<int>> mixed_patterns(int c)
{
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << c); ++mask) {
    std::vector<int> p;
    for (int i = 0; i < c; ++i)
      p.push_back((mask >> i) & 1u ? 1 : 0);
    out.push_back(std::move(p));
  }
  return out;
}

ClaimVerdict compare(const std::string& claim, const PcSubgroup& lhs, const PcSubgroup& rhs, int c, int j)
{
  ClaimVerdict v{claim, lhs == rhs ? Verdict::pass : Verdict::fail, {}};
  v.witness["c"] = std::to_string(c);
  v.witness["j"] = std::to_string(j);
  v.witness["lhs"] = signature(lhs);
  v.witness["rhs"] = signature(rhs);
  if (lhs != rhs) {
    for (const auto& x : lhs.generators())
      if (!rhs.contains(x)) {
        v.witness["lhs_not_in_rhs"] = to_string(x);
        break;
      }
    for (const auto& x : rhs.generators())
      if (!lhs.contains(x)) {
        v.witness["rhs_not_in_lhs"] = to_string(x);
        break;
      }
  }
  return v;
}

void require_disjoint(const FinitePresentation& a, const FinitePresentation& b)
{
  for (const auto& x : a.generators)
    for (const auto& y : b.generators)
      if (x == y)
        throw std::invalid_argument("generators of A and B must be distinct");
}

}  // namespace

ClaimVerdict truncation_wreath_check(const FinitePresentation& a, const FinitePresentation& b, Variety v,
                                     const FiniteGroup* b_model, int c, int j)
{
  require_disjoint(a, b);
  FinitePresentation free;
  free.generators = a.generators;
  free.generators.insert(free.generators.end(), b.generators.begin(), b.generators.end());
  const Truncated f = truncate(free, j);
  const auto& g = f.g;

  const auto x1 = f.gens(a.generators);
  const auto x2 = f.gens(b.generators);
  const PcSubgroup f1 = subgroup(g, x1);
  const PcSubgroup f2 = subgroup(g, x2);

  // R = <R_A, R_B, extra>^F with extra the coordinate commutation words
  std::vector<Word> r_words = a.relators;
  r_words.insert(r_words.end(), b.relators.begin(), b.relators.end());
  std::vector<Word> rv_words;
  if (v == Variety::abelian) {
    if (!b_model)
      throw std::invalid_argument("standard wreath truncation needs a model of B");
    rv_words = wreath_commutation_words(a, *b_model);
    r_words.insert(r_words.end(), rv_words.begin(), rv_words.end());
  }
  const PcSubgroup lhs = iterated_commutator(normal_closure(g, f(r_words)), c);

  const PcSubgroup r2 = closure_under(g, f(b.relators), x2);
  PcSubgroup rhs = iterated_commutator(r2, std::vector<PcSubgroup>(static_cast<std::size_t>(c), f2));
  for (const auto& pattern : mixed_patterns(c)) {
    std::vector<PcSubgroup> ks;
    for (int i : pattern)
      ks.push_back(i ? f1 : f2);
    rhs = join(rhs, normal_closure(g, iterated_commutator(r2, ks).generators()));
  }
  // S_V = [R_2, F_1]^F R_1^F R_V^F
  std::vector<PcElement> s_gens = commutator_subgroup(r2, f1).generators();
  for (const auto& x : f(a.relators))
    s_gens.push_back(x);
  for (const auto& x : f(rv_words))
    s_gens.push_back(x);
  rhs = join(rhs, iterated_commutator(normal_closure(g, s_gens), c));

  return compare("trunc_41", lhs, rhs, c, j);
}

ClaimVerdict commutator_product_check(const FinitePresentation& p, const std::vector<GenSym>& a_gens, int j)
{
  FinitePresentation free;
  free.generators = p.generators;
  const Truncated f = truncate(free, j);
  const auto& g = f.g;

  std::vector<GenSym> in_a, rest;
  for (const auto& x : p.generators)
    (std::find(a_gens.begin(), a_gens.end(), x) != a_gens.end() ? in_a : rest).push_back(x);
  const PcSubgroup a = subgroup(g, f.gens(in_a));
  const PcSubgroup m1 = normal_closure(g, f(p.relators));
  const PcSubgroup m2 = rest.empty() ? lower_central_subgroup(g, 2) : normal_closure(g, f.gens(rest));

  ClaimVerdict v{"identity_211", Verdict::pass, {}};
  v.witness["j"] = std::to_string(j);
  const std::pair<const char*, PcSubgroup> ns[] = {{"gamma_2", lower_central_subgroup(g, 2)},
                                                   {"F", whole_group(g)}};
  for (const auto& [name, n] : ns) {
    const PcSubgroup lhs = commutator_subgroup(join(join(a, m1), m2), n);
    const PcSubgroup rhs =
        join(join(commutator_subgroup(a, n), commutator_subgroup(m1, n)), commutator_subgroup(m2, n));
    v.witness[std::string("N=") + name] = signature(lhs) + (lhs == rhs ? " (equal)" : " vs " + signature(rhs));
    if (lhs != rhs)
      v.verdict = Verdict::fail;
  }
  return v;
}

ClaimVerdict truncation_free_wreath_check(const FinitePresentation& a, const FinitePresentation& b, int c, int j)
{
  require_disjoint(a, b);
  FinitePresentation k;
  k.generators = a.generators;
  k.generators.insert(k.generators.end(), b.generators.begin(), b.generators.end());
  k.relators = b.relators;
  const Truncated t = truncate(k, j);
  const auto& g = t.g;

  const auto x1 = t.gens(a.generators);
  const PcSubgroup f1 = subgroup(g, x1);
  const PcSubgroup bs = subgroup(g, t.gens(b.generators));

  const PcSubgroup lhs = iterated_commutator(normal_closure(g, t(a.relators)), c);

  const PcSubgroup r1 = closure_under(g, t(a.relators), x1);
  PcSubgroup rhs = iterated_commutator(r1, std::vector<PcSubgroup>(static_cast<std::size_t>(c), f1));
  for (const auto& pattern : mixed_patterns(c)) {
    std::vector<PcSubgroup> ks;
    for (int i : pattern)
      ks.push_back(i ? bs : f1);
    rhs = join(rhs, normal_closure(g, iterated_commutator(r1, ks).generators()));
  }
  return compare("trunc_51", lhs, rhs, c, j);
}

}  // namespace nilmult
