#include "nilmult/pcgroup.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace nilmult {

namespace {

/// Induced generating sequence under construction: one slot per depth.
class SequenceBuilder
{
public:
  SequenceBuilder(const PcGroup& g, std::vector<PcElement> conjugators)
      : g_(g), table_(g.size()), conjugators_(std::move(conjugators))
  {
    for (std::size_t i = 0; i < g.size(); ++i)
      top_weight_ = std::max(top_weight_, g.weight(static_cast<PcGen>(i)));
  }

  void add(PcElement x)
  {
    std::vector<PcElement> pending{std::move(x)};
    while (!pending.empty()) {
      PcElement y = std::move(pending.back());
      pending.pop_back();
      sift_insert(std::move(y), pending);
    }
  }

  void close()
  {
    while (!dirty_.empty()) {
      const std::size_t d = *dirty_.begin();
      dirty_.erase(dirty_.begin());
      if (!table_[d])
        continue;
      const PcElement t = *table_[d];
      const int wt = weight_of(t);
      const Integer& o = g_.relative_order(static_cast<PcGen>(d));
      if (o != 0)
        add(g_.pow(t, o / t.leading_exponent()));
      for (std::size_t e = 0; e < table_.size(); ++e) {
        if (e == d || !table_[e])
          continue;
        if (wt + weight_of(*table_[e]) > top_weight_)
          continue;
        const PcElement u = *table_[e];
        add(g_.comm(t, u));
        if (!table_[d] || *table_[d] != t)
          break;
      }
      if (!table_[d] || *table_[d] != t) {
        dirty_.insert(d);
        continue;
      }
      for (const auto& c : conjugators_)
        if (!c.is_identity() && wt + weight_of(c) <= top_weight_)
          add(g_.comm(t, c));
    }
  }

  std::vector<PcElement> canonical()
  {
    close();
    std::vector<std::size_t> depths;
    for (std::size_t d = 0; d < table_.size(); ++d)
      if (table_[d])
        depths.push_back(d);
    for (std::size_t a = 0; a < depths.size(); ++a) {
      PcElement& t = *table_[depths[a]];
      for (std::size_t b = a + 1; b < depths.size(); ++b) {
        const PcElement& u = *table_[depths[b]];
        Integer q = floor_div(t.exponent(static_cast<PcGen>(depths[b])), u.leading_exponent());
        if (q != 0)
          t = g_.mul(t, g_.pow(u, -q));
      }
    }
    std::vector<PcElement> out;
    for (std::size_t d : depths)
      out.push_back(*table_[d]);
    return out;
  }

private:
  /// x lies in gamma_w for w the least weight in its support
  int weight_of(const PcElement& x) const
  {
    int w = top_weight_ + 1;
    for (const auto& term : x.terms())
      w = std::min(w, g_.weight(term.first));
    return w;
  }

  void place(std::size_t d, PcElement x)
  {
    table_[d] = std::move(x);
    dirty_.insert(d);
  }

  void sift_insert(PcElement x, std::vector<PcElement>& pending)
  {
    while (!x.is_identity()) {
      const std::size_t d = x.terms().front().first;
      const Integer e = x.leading_exponent();
      const Integer& o = g_.relative_order(static_cast<PcGen>(d));
      if (!table_[d]) {
        if (o == 0) {
          place(d, e < 0 ? g_.inv(x) : x);
          return;
        }
        Integer s, t;
        const Integer gcd = ext_gcd(e, o, s, t);
        if (gcd == e) {
          place(d, std::move(x));
          return;
        }
        PcElement y = g_.pow(x, s);
        pending.push_back(g_.mul(x, g_.pow(y, -(e / gcd))));
        place(d, std::move(y));
        return;
      }
      const PcElement t = *table_[d];
      const Integer a = t.leading_exponent();
      if (e % a == 0) {
        x = g_.mul(x, g_.pow(t, -(e / a)));
        continue;
      }
      Integer s, u;
      const Integer gcd = ext_gcd(a, e, s, u);
      PcElement y = g_.mul(g_.pow(t, s), g_.pow(x, u));
      pending.push_back(g_.mul(t, g_.pow(y, -(a / gcd))));
      x = g_.mul(x, g_.pow(y, -(e / gcd)));
      place(d, std::move(y));
    }
  }

  const PcGroup& g_;
  std::vector<std::optional<PcElement>> table_;
  std::vector<PcElement> conjugators_;
  std::set<std::size_t> dirty_;
  int top_weight_ = 0;
};

std::vector<PcElement> canonical_sequence(const PcGroup& g, const std::vector<PcElement>& elements,
                                          const std::vector<PcElement>& conjugators)
{
  SequenceBuilder b(g, conjugators);
  for (const auto& x : elements)
    b.add(x);
  return b.canonical();
}

/// Sifts x through a canonical sequence; returns the remainder.
PcElement sift(const PcGroup& g, const std::vector<PcElement>& seq, PcElement x)
{
  for (const auto& t : seq) {
    if (x.is_identity())
      break;
    const PcGen d = t.terms().front().first;
    const PcGen dx = x.terms().front().first;
    if (dx < d)
      break;
    if (dx > d)
      continue;
    const Integer e = x.leading_exponent();
    if (e % t.leading_exponent() != 0)
      break;
    x = g.mul(x, g.pow(t, -(e / t.leading_exponent())));
  }
  return x;
}

void require_same(const PcSubgroup& a, const PcSubgroup& b)
{
  if (a.group_ptr() != b.group_ptr())
    throw std::invalid_argument("subgroups live in different pc groups");
}

PcElement shift(const PcElement& x, std::ptrdiff_t offset)
{
  PcElement out = x;
  for (auto& [g, e] : out.terms())
    g = static_cast<PcGen>(static_cast<std::ptrdiff_t>(g) + offset);
  return out;
}

}  // namespace

std::vector<PcElement> group_generators(const PcGroup& g)
{
  const std::size_t n = g.size();
  bool weighted = n > 0;
  for (std::size_t i = 0; i < n; ++i)
    if (g.weight(static_cast<PcGen>(i)) < 1 || (i > 0 && g.weight(static_cast<PcGen>(i)) < g.weight(static_cast<PcGen>(i - 1))))
      weighted = false;
  std::vector<PcElement> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!weighted || g.weight(static_cast<PcGen>(i)) == 1)
      out.push_back(PcElement::generator(static_cast<PcGen>(i)));
  return out;
}

PcSubgroup::PcSubgroup(PcGroupPtr g, std::vector<PcElement> canonical)
    : group_(std::move(g)), gens_(std::move(canonical))
{
}

bool PcSubgroup::contains(const PcElement& x) const
{
  return sift(*group_, gens_, x).is_identity();
}

bool PcSubgroup::is_subgroup_of(const PcSubgroup& other) const
{
  require_same(*this, other);
  return std::all_of(gens_.begin(), gens_.end(), [&](const PcElement& x) { return other.contains(x); });
}

Integer PcSubgroup::order() const
{
  Integer n = 1;
  for (const auto& t : gens_) {
    const Integer& o = group_->relative_order(t.terms().front().first);
    if (o == 0)
      return 0;
    n *= o / t.leading_exponent();
  }
  return n;
}

Integer PcSubgroup::index() const
{
  Integer n = 1;
  std::vector<bool> covered(group_->size());
  for (const auto& t : gens_) {
    const PcGen d = t.terms().front().first;
    covered[d] = true;
    n *= t.leading_exponent();
  }
  for (std::size_t d = 0; d < covered.size(); ++d)
    if (!covered[d]) {
      const Integer& o = group_->relative_order(static_cast<PcGen>(d));
      if (o == 0)
        return 0;
      n *= o;
    }
  return n;
}

bool PcSubgroup::operator==(const PcSubgroup& other) const
{
  return group_ == other.group_ && gens_ == other.gens_;
}

PcSubgroup subgroup(const PcGroupPtr& g, const std::vector<PcElement>& elements)
{
  return PcSubgroup(g, canonical_sequence(*g, elements, {}));
}

PcSubgroup normal_closure(const PcGroupPtr& g, const std::vector<PcElement>& elements)
{
  return PcSubgroup(g, canonical_sequence(*g, elements, group_generators(*g)));
}

PcSubgroup closure_under(const PcGroupPtr& g, const std::vector<PcElement>& elements,
                         const std::vector<PcElement>& conjugators)
{
  return PcSubgroup(g, canonical_sequence(*g, elements, conjugators));
}

PcSubgroup whole_group(const PcGroupPtr& g)
{
  std::vector<PcElement> all;
  for (std::size_t i = 0; i < g->size(); ++i)
    all.push_back(PcElement::generator(static_cast<PcGen>(i)));
  return subgroup(g, all);
}

PcSubgroup trivial_subgroup(const PcGroupPtr& g)
{
  return PcSubgroup(g, {});
}

PcSubgroup commutator_subgroup(const PcSubgroup& h, const PcSubgroup& k)
{
  require_same(h, k);
  const PcGroup& g = h.group();
  std::vector<PcElement> comms;
  for (const auto& x : h.generators())
    for (const auto& y : k.generators())
      comms.push_back(g.comm(x, y));
  std::vector<PcElement> conj = h.generators();
  conj.insert(conj.end(), k.generators().begin(), k.generators().end());
  return closure_under(h.group_ptr(), comms, conj);
}

PcSubgroup iterated_commutator(const PcSubgroup& h, int c)
{
  const PcSubgroup all = whole_group(h.group_ptr());
  PcSubgroup out = h;
  for (int i = 0; i < c; ++i)
    out = commutator_subgroup(out, all);
  return out;
}

PcSubgroup lower_central_subgroup(const PcGroupPtr& g, int i)
{
  std::vector<PcElement> gens;
  for (std::size_t d = 0; d < g->size(); ++d)
    if (g->weight(static_cast<PcGen>(d)) >= i)
      gens.push_back(PcElement::generator(static_cast<PcGen>(d)));
  return subgroup(g, gens);
}

PcSubgroup join(const PcSubgroup& h, const PcSubgroup& k)
{
  require_same(h, k);
  std::vector<PcElement> gens = h.generators();
  gens.insert(gens.end(), k.generators().begin(), k.generators().end());
  return subgroup(h.group_ptr(), gens);
}

bool is_normal(const PcSubgroup& n)
{
  const PcGroup& g = n.group();
  for (const auto& t : n.generators())
    for (const auto& x : group_generators(g))
      if (!n.contains(g.conj(t, x)))
        return false;
  return true;
}

PcElement PcQuotient::project(const PcElement& x) const
{
  PcElement r = x;
  for (const auto& t : normal_gens) {
    const PcGen d = t.terms().front().first;
    const Integer q = floor_div(r.exponent(d), t.leading_exponent());
    if (q != 0)
      r = source->mul(r, source->pow(t, -q));
  }
  PcElement out;
  std::size_t k = 0;
  for (const auto& [g, e] : r.terms()) {
    while (k < kept.size() && kept[k] < g)
      ++k;
    if (k < kept.size() && kept[k] == g)
      out.terms().emplace_back(static_cast<PcGen>(k), e);
  }
  return out;
}

PcQuotient quotient(const PcSubgroup& n)
{
  const PcGroup& g = n.group();
  PcQuotient q;
  q.source = n.group_ptr();
  q.normal_gens = n.generators();
  std::vector<Integer> lead(g.size(), 0);
  for (const auto& t : n.generators())
    lead[t.terms().front().first] = t.leading_exponent();
  std::vector<Integer> orders;
  for (std::size_t d = 0; d < g.size(); ++d) {
    if (lead[d] == 1)
      continue;
    q.kept.push_back(static_cast<PcGen>(d));
    orders.push_back(lead[d] != 0 ? lead[d] : g.relative_order(static_cast<PcGen>(d)));
  }
  PcPresentation p;
  for (std::size_t k = 0; k < q.kept.size(); ++k)
    p.add_generator(g.weight(q.kept[k]), orders[k]);
  for (std::size_t k = 0; k < q.kept.size(); ++k) {
    if (orders[k] != 0)
      p.power[k] = q.project(g.gen(q.kept[k], orders[k]));
    for (std::size_t l = 0; l < k; ++l)
      p.conj[k][l] = q.project(g.presentation().conj[q.kept[k]][q.kept[l]]);
  }
  for (int w : p.weight)
    p.nilpotency_class = std::max(p.nilpotency_class, w);
  q.group = std::make_shared<const PcGroup>(std::move(p));
  return q;
}

PcSubgroup intersect_with_normal(const PcSubgroup& s, const PcSubgroup& n)
{
  require_same(s, n);
  const PcQuotient q = quotient(n);
  const PcGroup& g = s.group();
  const PcGroup& qg = *q.group;
  const std::size_t m = qg.size();

  PcPresentation p;
  for (std::size_t i = 0; i < m; ++i)
    p.add_generator(qg.weight(static_cast<PcGen>(i)), qg.relative_order(static_cast<PcGen>(i)));
  for (std::size_t i = 0; i < g.size(); ++i)
    p.add_generator(g.weight(static_cast<PcGen>(i)), g.relative_order(static_cast<PcGen>(i)));
  for (std::size_t i = 0; i < m; ++i) {
    p.power[i] = qg.presentation().power[i];
    for (std::size_t j = 0; j < i; ++j)
      p.conj[i][j] = qg.presentation().conj[i][j];
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    p.power[m + i] = shift(g.presentation().power[i], static_cast<std::ptrdiff_t>(m));
    for (std::size_t j = 0; j < i; ++j)
      p.conj[m + i][m + j] = shift(g.presentation().conj[i][j], static_cast<std::ptrdiff_t>(m));
  }
  const PcGroup prod(std::move(p));
  std::vector<PcElement> graph;
  for (const auto& x : s.generators()) {
    PcElement y = q.project(x);
    const PcElement z = shift(x, static_cast<std::ptrdiff_t>(m));
    y.terms().insert(y.terms().end(), z.terms().begin(), z.terms().end());
    graph.push_back(std::move(y));
  }
  std::vector<PcElement> kernel;
  for (const auto& t : canonical_sequence(prod, graph, {}))
    if (t.terms().front().first >= m)
      kernel.push_back(shift(t, -static_cast<std::ptrdiff_t>(m)));
  return subgroup(s.group_ptr(), kernel);
}

namespace {

AbelianInvariants invariants_of_abelian(const PcGroup& g, const std::vector<PcElement>& seq)
{
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!g.comm(seq[i], seq[j]).is_identity())
        throw NotAbelianError("quotient expected to be abelian is not");
  // coordinates of an element with respect to the sequence
  auto coords = [&](PcElement x) {
    SparseRow row;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      if (x.is_identity())
        break;
      const PcGen d = seq[k].terms().front().first;
      if (x.terms().front().first < d)
        throw std::logic_error("element outside the subgroup");
      if (x.terms().front().first > d)
        continue;
      const Integer q = x.leading_exponent() / seq[k].leading_exponent();
      row.emplace_back(k, q);
      x = g.mul(x, g.pow(seq[k], -q));
    }
    if (!x.is_identity())
      throw std::logic_error("element outside the subgroup");
    return row;
  };
  std::vector<SparseRow> rel;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const Integer& o = g.relative_order(seq[k].terms().front().first);
    if (o == 0)
      continue;
    const Integer m = o / seq[k].leading_exponent();
    SparseRow row = coords(g.pow(seq[k], m));
    for (auto& [c, v] : row)
      v = -v;
    axpy(row, 1, SparseRow{{k, m}});
    rel.push_back(std::move(row));
  }
  return cokernel_invariants(rel, seq.size());
}

}  // namespace

AbelianInvariants abelian_invariants(const PcSubgroup& h)
{
  return invariants_of_abelian(h.group(), h.generators());
}

AbelianInvariants quotient_invariants(const PcSubgroup& h, const PcSubgroup& n)
{
  require_same(h, n);
  if (!n.is_subgroup_of(h))
    throw std::invalid_argument("quotient_invariants: N is not contained in H");
  if (n.is_trivial())
    return abelian_invariants(h);
  const PcQuotient q = quotient(n);
  std::vector<PcElement> images;
  for (const auto& x : h.generators())
    images.push_back(q.project(x));
  const auto seq = canonical_sequence(*q.group, images, {});
  return invariants_of_abelian(*q.group, seq);
}

}  // namespace nilmult
