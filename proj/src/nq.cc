#include "nilmult/nq.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nilmult {

namespace {

struct TailSlot
{
  PcDefinition::Kind kind;
  std::size_t a;  // source generator, power generator, or j
  std::size_t b;  // i for commutators
};

/// Tail exponents of x (generators >= m), after checking the head agrees.
SparseRow tail_difference(const PcElement& lhs, const PcElement& rhs, std::size_t m)
{
  auto split = [m](const PcElement& x) {
    std::vector<PcElement::Term> head;
    SparseRow tail;
    for (const auto& [g, e] : x.terms()) {
      if (g < m)
        head.emplace_back(g, e);
      else
        tail.emplace_back(g - m, e);
    }
    return std::make_pair(std::move(head), std::move(tail));
  };
  auto [hl, tl] = split(lhs);
  auto [hr, tr] = split(rhs);
  if (hl != hr)
    throw std::logic_error("nilpotent quotient: overlap disagrees below the new layer");
  axpy(tl, -1, tr);
  return tl;
}

PcElement append_tail(const PcElement& x, const SparseRow& value, std::size_t offset)
{
  PcElement out = x;
  for (const auto& [col, e] : value)
    out.terms().emplace_back(static_cast<PcGen>(offset + col), e);
  return out;
}

}  // namespace

int NilpotentQuotient::reached_class() const
{
  int c = 0;
  for (int w : pres.weight)
    c = std::max(c, w);
  return c;
}

std::vector<AbelianInvariants> NilpotentQuotient::layers() const
{
  std::vector<AbelianInvariants> out;
  const int top = reached_class();
  for (int w = 1; w <= top; ++w) {
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < pres.size(); ++i)
      if (pres.weight[i] == w)
        gens.push_back(i);
    std::map<std::size_t, std::size_t> col;
    for (std::size_t k = 0; k < gens.size(); ++k)
      col[gens[k]] = k;
    std::vector<SparseRow> rel;
    for (std::size_t i : gens) {
      if (pres.relative_order[i] == 0)
        continue;
      std::map<std::size_t, Integer> row;
      row[col[i]] += pres.relative_order[i];
      for (const auto& [g, e] : pres.power[i].terms())
        if (pres.weight[g] == w)
          row[col[g]] -= e;
      SparseRow r;
      for (const auto& [c, v] : row)
        if (v != 0)
          r.emplace_back(c, v);
      rel.push_back(std::move(r));
    }
    out.push_back(cokernel_invariants(rel, gens.size()));
  }
  return out;
}

Integer NilpotentQuotient::order() const
{
  Integer n = 1;
  for (const auto& o : pres.relative_order) {
    if (o == 0)
      return 0;
    n *= o;
  }
  return n;
}

NqEngine::NqEngine(FinitePresentation p) : source_(std::move(p))
{
  validate(source_);
  images_.assign(source_.generators.size(), PcElement{});
  image_defines_.assign(source_.generators.size(), false);
}

NilpotentQuotient NqEngine::result() const
{
  NilpotentQuotient q;
  q.source = source_;
  q.pres = pres_;
  q.images = images_;
  q.requested_class = class_;
  return q;
}

std::size_t NqEngine::step()
{
  const int c = class_ + 1;
  const std::size_t m = pres_.size();

  // image tails first, then powers, then commutators: later columns are
  // the likelier survivors of elimination
  std::vector<TailSlot> slots;
  for (std::size_t x = 0; x < source_.generators.size(); ++x)
    if (!image_defines_[x])
      slots.push_back({PcDefinition::Kind::image, x, 0});
  for (std::size_t i = 0; i < m; ++i)
    if (pres_.relative_order[i] != 0 && !power_defines_[i])
      slots.push_back({PcDefinition::Kind::power, i, 0});
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (pres_.weight[i] + pres_.weight[j] <= c && !comm_defines_[j][i])
        slots.push_back({PcDefinition::Kind::commutator, j, i});
  const std::size_t t = slots.size();

  PcPresentation ext = pres_;
  ext.definition.clear();
  ext.nilpotency_class = c;
  for (std::size_t s = 0; s < t; ++s)
    ext.add_generator(c, 0);
  std::vector<PcElement> ext_images = images_;
  for (std::size_t s = 0; s < t; ++s) {
    const auto& slot = slots[s];
    switch (slot.kind) {
    case PcDefinition::Kind::image:
      ext_images[slot.a].terms().emplace_back(static_cast<PcGen>(m + s), 1);
      break;
    case PcDefinition::Kind::power:
      ext.power[slot.a].terms().emplace_back(static_cast<PcGen>(m + s), 1);
      break;
    case PcDefinition::Kind::commutator:
      ext.conj[slot.a][slot.b].terms().emplace_back(static_cast<PcGen>(m + s), 1);
      break;
    }
  }
  const PcGroup eg(std::move(ext));
  const auto& ep = eg.presentation();

  LatticeEchelon lattice(t);
  auto relate = [&](const PcElement& lhs, const PcElement& rhs) {
    SparseRow r = tail_difference(lhs, rhs, m);
    if (!r.empty())
      lattice.insert(std::move(r));
  };
  auto gen = [](std::size_t i) { return PcElement::generator(static_cast<PcGen>(i)); };
  auto w = [&](std::size_t i) { return pres_.weight[i]; };

  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < k; ++j) {
      if (w(k) + w(j) + 1 > c)
        continue;
      for (std::size_t i = 0; i < j; ++i)
        if (w(k) + w(j) + w(i) <= c)
          relate(eg.mul(eg.mul(gen(k), gen(j)), gen(i)), eg.mul(gen(k), eg.mul(gen(j), gen(i))));
    }
  for (std::size_t j = 0; j < m; ++j) {
    const Integer& oj = ep.relative_order[j];
    if (oj == 0)
      continue;
    const PcElement almost = PcElement::generator(static_cast<PcGen>(j), oj - 1);
    for (std::size_t i = 0; i < j; ++i)
      if (w(i) + w(j) <= c)
        relate(eg.mul(ep.power[j], gen(i)), eg.mul(almost, eg.mul(gen(j), gen(i))));
    for (std::size_t k = j + 1; k < m; ++k)
      if (w(k) + w(j) <= c)
        relate(eg.mul(gen(k), ep.power[j]), eg.mul(eg.mul(gen(k), gen(j)), almost));
    if (2 * w(j) <= c)
      relate(eg.mul(gen(j), ep.power[j]), eg.mul(ep.power[j], gen(j)));
  }
  for (const auto& r : source_.relators)
    relate(evaluate(eg, source_.generators, ext_images, r), PcElement{});
  lattice.fully_reduce();

  // survivors: columns without a unit pivot
  std::vector<std::size_t> survivor_of(t, SIZE_MAX);
  std::vector<std::size_t> survivors;
  for (std::size_t col = 0; col < t; ++col)
    if (lattice.pivot(col) != 1) {
      survivor_of[col] = survivors.size();
      survivors.push_back(col);
    }
  auto value = [&](SparseRow v) {
    SparseRow r = lattice.reduce(std::move(v));
    SparseRow out;
    for (const auto& [col, e] : r) {
      if (survivor_of[col] == SIZE_MAX)
        throw std::logic_error("nilpotent quotient: reduction left an eliminated tail");
      out.emplace_back(survivor_of[col], e);
    }
    return out;
  };

  PcPresentation next = pres_;
  if (next.definition.size() != m)
    next.definition.resize(m);
  next.nilpotency_class = c;
  for (std::size_t col : survivors) {
    next.add_generator(c, lattice.pivot(col));
    const auto& slot = slots[col];
    next.definition.push_back({slot.kind, slot.a, slot.b});
  }
  for (std::size_t k = 0; k < survivors.size(); ++k) {
    const std::size_t col = survivors[k];
    const Integer d = lattice.pivot(col);
    if (d != 0)
      next.power[m + k] = append_tail(PcElement{}, value(SparseRow{{col, d}}), m);
  }
  for (std::size_t s = 0; s < t; ++s) {
    const auto& slot = slots[s];
    const SparseRow v = value(SparseRow{{s, Integer(1)}});
    switch (slot.kind) {
    case PcDefinition::Kind::image:
      images_[slot.a] = append_tail(images_[slot.a], v, m);
      break;
    case PcDefinition::Kind::power:
      next.power[slot.a] = append_tail(next.power[slot.a], v, m);
      break;
    case PcDefinition::Kind::commutator:
      next.conj[slot.a][slot.b] = append_tail(next.conj[slot.a][slot.b], v, m);
      break;
    }
  }
  for (std::size_t col : survivors) {
    const auto& slot = slots[col];
    switch (slot.kind) {
    case PcDefinition::Kind::image:
      image_defines_[slot.a] = true;
      break;
    case PcDefinition::Kind::power:
      power_defines_[slot.a] = true;
      break;
    case PcDefinition::Kind::commutator:
      comm_defines_[slot.a][slot.b] = true;
      break;
    }
  }
  power_defines_.resize(next.size(), false);
  comm_defines_.resize(next.size());
  for (std::size_t j = 0; j < next.size(); ++j)
    comm_defines_[j].resize(j, false);

  pres_ = std::move(next);
  class_ = c;
  return survivors.size();
}

NilpotentQuotient nilpotent_quotient(const FinitePresentation& p, int cls)
{
  if (cls < 1)
    throw std::invalid_argument("nilpotent quotient class must be >= 1");
  NqEngine engine(p);
  for (int c = 1; c <= cls; ++c)
    if (engine.step() == 0 && c > 1)
      break;
  NilpotentQuotient q = engine.result();
  q.requested_class = cls;
  return q;
}

PcElement evaluate(const PcGroup& g, const std::vector<GenSym>& gens, const std::vector<PcElement>& images,
                   const Word& w)
{
  PcElement out;
  for (const auto& l : w.letters()) {
    auto it = std::find(gens.begin(), gens.end(), l.gen);
    if (it == gens.end())
      throw std::invalid_argument("word uses unknown generator '" + l.gen + "'");
    out = g.mul(out, g.pow(images[static_cast<std::size_t>(it - gens.begin())], l.exp));
  }
  return out;
}

std::optional<std::string> certify(const NilpotentQuotient& q)
{
  const PcGroup g(q.pres);
  auto failures = consistency_failures(g, 1);
  if (!failures.empty())
    return "overlap test " + failures.front().test + " fails: " + to_string(failures.front().lhs) +
           " != " + to_string(failures.front().rhs);
  for (const auto& r : q.source.relators)
    if (!evaluate(g, q.source.generators, q.images, r).is_identity())
      return "relator " + to_string(r) + " does not map to the identity";
  for (std::size_t i = 1; i < q.pres.size(); ++i)
    if (q.pres.weight[i] < q.pres.weight[i - 1])
      return "weights are not nondecreasing";
  return std::nullopt;
}

std::optional<std::vector<PcElement>> enumerate_elements(const PcGroup& g, std::size_t limit)
{
  const Integer n = g.order();
  if (n == 0 || n > limit)
    return std::nullopt;
  std::vector<PcElement> out;
  std::vector<Integer> exps(g.size());
  for (;;) {
    out.push_back(PcElement::from_dense(exps));
    std::size_t k = g.size();
    for (; k > 0; --k) {
      if (++exps[k - 1] < g.relative_order(static_cast<PcGen>(k - 1)))
        break;
      exps[k - 1] = 0;
    }
    if (k == 0)
      break;
  }
  return out;
}

std::optional<AbelianInvariants> kernel_abelianization(const NilpotentQuotient& q, std::size_t limit)
{
  const PcGroup g(q.pres);
  const Integer order = g.order();
  if (order == 0 || order > limit)
    return std::nullopt;
  const std::size_t n = static_cast<std::size_t>(order);
  const std::size_t nx = q.source.generators.size();
  // mixed-radix index of a normal form
  auto index = [&](const PcElement& x) {
    std::size_t idx = 0;
    const auto d = x.dense(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      idx = idx * static_cast<std::size_t>(g.relative_order(static_cast<PcGen>(i))) +
            static_cast<std::size_t>(d[i]);
    return idx;
  };
  const auto elements = *enumerate_elements(g, limit);
  std::vector<std::vector<std::size_t>> act(n, std::vector<std::size_t>(nx));
  for (const auto& e : elements) {
    const std::size_t i = index(e);
    for (std::size_t x = 0; x < nx; ++x)
      act[i][x] = index(g.mul(e, q.images[x]));
  }
  // Schreier tree by breadth-first search; tree edges become relations s = 0
  const std::size_t root = 0;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> queue{root};
  seen[root] = true;
  std::vector<SparseRow> rows;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (std::size_t x = 0; x < nx; ++x) {
      const std::size_t y = act[queue[h]][x];
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
        rows.push_back({{queue[h] * nx + x, Integer(1)}});
      }
    }
  if (queue.size() != n)
    throw std::logic_error("source generators do not generate the quotient");
  std::vector<std::vector<std::size_t>> back(n, std::vector<std::size_t>(nx));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < nx; ++x)
      back[act[i][x]][x] = i;
  for (const auto& r : q.source.relators)
    for (std::size_t start = 0; start < n; ++start) {
      std::map<std::size_t, Integer> acc;
      std::size_t cur = start;
      for (const auto& l : r.letters()) {
        const std::size_t x = static_cast<std::size_t>(
            std::find(q.source.generators.begin(), q.source.generators.end(), l.gen) - q.source.generators.begin());
        if (l.exp > 0) {
          for (Integer k = 0; k < l.exp; ++k) {
            acc[cur * nx + x] += 1;
            cur = act[cur][x];
          }
        } else {
          for (Integer k = 0; k < -l.exp; ++k) {
            cur = back[cur][x];
            acc[cur * nx + x] -= 1;
          }
        }
      }
      SparseRow row;
      for (const auto& [col, v] : acc)
        if (v != 0)
          row.emplace_back(col, v);
      if (!row.empty())
        rows.push_back(std::move(row));
    }
  return cokernel_invariants(rows, n * nx);
}

ClassDetection detect_class(const FinitePresentation& p, int cap, std::size_t refute_limit)
{
  if (cap < 1)
    throw std::invalid_argument("class cap must be >= 1");
  ClassDetection out;
  NqEngine engine(p);
  engine.step();
  for (int c = 2; c <= cap + 1; ++c) {
    NilpotentQuotient before = engine.result();
    if (engine.step() != 0)
      continue;
    const int k = before.reached_class();
    before.requested_class = c - 1;
    if (auto kab = kernel_abelianization(before, refute_limit); kab && !kab->is_trivial()) {
      out.reason = "lower central series stabilises at class " + std::to_string(k) +
                   " with nontrivial kernel abelianisation " + to_string(*kab);
      return out;
    }
    out.status = ClassDetection::Status::nilpotent;
    out.nilpotency_class = k;
    out.reason = "lower central series stabilises at class " + std::to_string(k);
    out.quotient = std::move(before);
    return out;
  }
  out.reason = "no stabilisation up to class " + std::to_string(cap);
  return out;
}

}  // namespace nilmult
