#include "nilmult/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

namespace nilmult {

namespace {

constexpr std::size_t kMaxTableOrder = 4096;

void check_size(std::size_t n)
{
  if (n == 0 || n > kMaxTableOrder)
    throw GroupError("group of order " + std::to_string(n) + " is outside the table-model range");
}

ElementSet sorted(ElementSet s)
{
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<Elem>> table, std::vector<Elem> gens,
                         std::vector<GenSym> names)
    : table_(std::move(table))
{
  const std::size_t n = table_.size();
  check_size(n);
  for (const auto& row : table_) {
    if (row.size() != n)
      throw GroupError("Cayley table is not square");
    for (Elem x : row)
      if (x >= n)
        throw GroupError("Cayley table entry out of range");
  }
  for (Elem x = 0; x < n; ++x)
    if (table_[0][x] != x || table_[x][0] != x)
      throw GroupError("element 0 is not the identity");
  inverse_.assign(n, 0);
  for (Elem x = 0; x < n; ++x) {
    std::vector<bool> seen(n);
    for (Elem y = 0; y < n; ++y) {
      if (seen[table_[x][y]])
        throw GroupError("Cayley table row is not a permutation");
      seen[table_[x][y]] = true;
      if (table_[x][y] == 0)
        inverse_[x] = y;
    }
  }
  set_generators(std::move(gens), std::move(names));
  // Light's test: associativity for a middle factor from a generating set
  std::vector<Elem> middle = gens_;
  if (middle.empty() || subgroup_closure(*this, middle).size() != n)
    middle = all_elements(*this);
  for (Elem y : middle)
    for (Elem x = 0; x < n; ++x)
      for (Elem z = 0; z < n; ++z)
        if (table_[table_[x][y]][z] != table_[x][table_[y][z]])
          throw GroupError("Cayley table is not associative");
}

void FiniteGroup::set_generators(std::vector<Elem> gens, std::vector<GenSym> names)
{
  if (names.empty())
    for (std::size_t i = 0; i < gens.size(); ++i)
      names.push_back("x" + std::to_string(i + 1));
  if (names.size() != gens.size())
    throw GroupError("generator names do not match generators");
  for (Elem g : gens)
    if (g >= order())
      throw GroupError("generator out of range");
  gens_ = std::move(gens);
  names_ = std::move(names);
}

Elem FiniteGroup::generator(const GenSym& name) const
{
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end())
    throw GroupError("unknown generator '" + name + "'");
  return gens_[static_cast<std::size_t>(it - names_.begin())];
}

Elem FiniteGroup::pow(Elem x, const Integer& e) const
{
  const std::size_t ord = element_order(x);
  Integer k = floor_mod(e, Integer(ord));
  Elem out = 0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i)
    out = mul(out, x);
  return out;
}

std::size_t FiniteGroup::element_order(Elem x) const
{
  std::size_t k = 1;
  for (Elem y = x; y != 0; y = mul(y, x))
    ++k;
  return k;
}

Elem FiniteGroup::evaluate(const Word& w) const
{
  Elem out = 0;
  for (const auto& l : w.letters())
    out = mul(out, pow(generator(l.gen), l.exp));
  return out;
}

bool FiniteGroup::is_abelian() const
{
  for (Elem x = 0; x < order(); ++x)
    for (Elem y = 0; y < x; ++y)
      if (mul(x, y) != mul(y, x))
        return false;
  return true;
}

ElementSet subgroup_closure(const FiniteGroup& g, const ElementSet& gens)
{
  std::vector<bool> in(g.order());
  ElementSet out{0};
  in[0] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Elem s : gens) {
      Elem y = g.mul(out[i], s);
      if (!in[y]) {
        in[y] = true;
        out.push_back(y);
      }
    }
  return sorted(out);
}

ElementSet commutator_subgroup(const FiniteGroup& g, const ElementSet& h, const ElementSet& k)
{
  ElementSet comms;
  for (Elem x : h)
    for (Elem y : k)
      comms.push_back(g.comm(x, y));
  return subgroup_closure(g, sorted(comms));
}

ElementSet all_elements(const FiniteGroup& g)
{
  ElementSet out(g.order());
  std::iota(out.begin(), out.end(), Elem{0});
  return out;
}

bool GroupHom::is_homomorphism() const
{
  for (Elem x = 0; x < source->order(); ++x)
    for (Elem y = 0; y < source->order(); ++y)
      if (image[source->mul(x, y)] != target->mul(image[x], image[y]))
        return false;
  return true;
}

bool GroupHom::is_bijective() const
{
  if (source->order() != target->order())
    return false;
  std::vector<bool> hit(target->order());
  for (Elem y : image) {
    if (hit[y])
      return false;
    hit[y] = true;
  }
  return true;
}

std::optional<GroupHom> extend_to_hom(const FiniteGroup& source, const FiniteGroup& target,
                                      const std::vector<Elem>& gen_images)
{
  const auto& gens = source.generators();
  if (gen_images.size() != gens.size())
    throw GroupError("generator image count mismatch");
  constexpr Elem unset = ~Elem{0};
  GroupHom h{&source, &target, std::vector<Elem>(source.order(), unset)};
  h.image[0] = 0;
  std::deque<Elem> queue{0};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Elem y = source.mul(x, gens[i]);
      Elem v = target.mul(h.image[x], gen_images[i]);
      if (h.image[y] == unset) {
        h.image[y] = v;
        queue.push_back(y);
      } else if (h.image[y] != v) {
        return std::nullopt;
      }
    }
  }
  if (std::find(h.image.begin(), h.image.end(), unset) != h.image.end())
    throw GroupError("generators do not generate the source group");
  return h;
}

FiniteGroup cyclic(std::size_t n, const GenSym& name)
{
  check_size(n);
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      t[x][y] = static_cast<Elem>((x + y) % n);
  if (n == 1)
    return FiniteGroup(std::move(t), {0}, {name});
  return FiniteGroup(std::move(t), {1}, {name});
}

FiniteGroup dihedral(std::size_t n, const GenSym& rot, const GenSym& refl)
{
  FiniteGroup r = cyclic(n, rot);
  FiniteGroup s = cyclic(2, refl);
  std::vector<Elem> inv_img{r.inv(r.generators()[0])};
  return semidirect(r, s, {inv_img});
}

FiniteGroup quaternion(const GenSym& i, const GenSym& j)
{
  // elements i^x j^y, x in 0..3, y in 0..1, with j^2 = i^2, j^-1 i j = i^-1
  auto idx = [](int x, int y) { return static_cast<Elem>(((x % 4 + 4) % 4) * 2 + y); };
  std::vector<std::vector<Elem>> t(8, std::vector<Elem>(8));
  for (int x1 = 0; x1 < 4; ++x1)
    for (int y1 = 0; y1 < 2; ++y1)
      for (int x2 = 0; x2 < 4; ++x2)
        for (int y2 = 0; y2 < 2; ++y2) {
          // j^y1 i^x2 = i^{(-1)^y1 x2} j^y1
          int x = x1 + (y1 ? -x2 : x2);
          int y = y1 + y2;
          if (y == 2) {
            x += 2;
            y = 0;
          }
          t[idx(x1, y1)][idx(x2, y2)] = idx(x, y);
        }
  return FiniteGroup(std::move(t), {idx(1, 0), idx(0, 1)}, {i, j});
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b)
{
  const std::size_t na = a.order();
  const std::size_t nb = b.order();
  check_size(na * nb);
  std::vector<std::vector<Elem>> t(na * nb, std::vector<Elem>(na * nb));
  for (std::size_t x = 0; x < na * nb; ++x)
    for (std::size_t y = 0; y < na * nb; ++y)
      t[x][y] = static_cast<Elem>(a.mul(static_cast<Elem>(x / nb), static_cast<Elem>(y / nb)) * nb +
                                  b.mul(static_cast<Elem>(x % nb), static_cast<Elem>(y % nb)));
  std::vector<Elem> gens;
  std::vector<GenSym> names;
  for (std::size_t i = 0; i < a.generators().size(); ++i) {
    gens.push_back(static_cast<Elem>(a.generators()[i] * nb));
    names.push_back(a.generator_names()[i]);
  }
  for (std::size_t i = 0; i < b.generators().size(); ++i) {
    gens.push_back(b.generators()[i]);
    names.push_back(b.generator_names()[i]);
  }
  return FiniteGroup(std::move(t), std::move(gens), std::move(names));
}

FiniteGroup semidirect(const FiniteGroup& a, const FiniteGroup& b,
                       const std::vector<std::vector<Elem>>& action)
{
  const std::size_t na = a.order();
  const std::size_t nb = b.order();
  check_size(na * nb);
  if (action.size() != b.generators().size())
    throw GroupError("action must give one automorphism per generator of B");
  std::vector<std::vector<Elem>> gen_aut;
  for (const auto& imgs : action) {
    auto h = extend_to_hom(a, a, imgs);
    if (!h || !h->is_bijective())
      throw GroupError("action images do not define an automorphism of A");
    gen_aut.push_back(h->image);
  }
  // theta(x g) = theta(g) o theta(x): a right action
  std::vector<std::vector<Elem>> theta(nb);
  theta[0] = all_elements(a);
  std::deque<Elem> queue{0};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < b.generators().size(); ++i) {
      Elem y = b.mul(x, b.generators()[i]);
      std::vector<Elem> m(na);
      for (Elem e = 0; e < na; ++e)
        m[e] = gen_aut[i][theta[x][e]];
      if (theta[y].empty()) {
        theta[y] = std::move(m);
        queue.push_back(y);
      } else if (theta[y] != m) {
        throw GroupError("action does not respect the relations of B");
      }
    }
  }
  for (const auto& m : theta)
    if (m.empty())
      throw GroupError("generators of B do not generate B");
  std::vector<std::vector<Elem>> t(na * nb, std::vector<Elem>(na * nb));
  for (Elem a1 = 0; a1 < na; ++a1)
    for (Elem b1 = 0; b1 < nb; ++b1) {
      const auto& th = theta[b.inv(b1)];
      for (Elem a2 = 0; a2 < na; ++a2)
        for (Elem b2 = 0; b2 < nb; ++b2)
          t[a1 * nb + b1][a2 * nb + b2] = static_cast<Elem>(a.mul(a1, th[a2]) * nb + b.mul(b1, b2));
    }
  std::vector<Elem> gens;
  std::vector<GenSym> names;
  for (std::size_t i = 0; i < a.generators().size(); ++i) {
    gens.push_back(static_cast<Elem>(a.generators()[i] * nb));
    names.push_back(a.generator_names()[i]);
  }
  for (std::size_t i = 0; i < b.generators().size(); ++i) {
    gens.push_back(b.generators()[i]);
    names.push_back(b.generator_names()[i]);
  }
  return FiniteGroup(std::move(t), std::move(gens), std::move(names));
}

FiniteGroup standard_wreath(const FiniteGroup& a, const FiniteGroup& b)
{
  const std::size_t na = a.order();
  const std::size_t nb = b.order();
  std::size_t nbase = 1;
  for (std::size_t i = 0; i < nb; ++i) {
    nbase *= na;
    check_size(nbase);
  }
  const std::size_t n = nbase * nb;
  check_size(n);
  auto decode = [&](std::size_t f) {
    std::vector<Elem> c(nb);
    for (std::size_t i = 0; i < nb; ++i) {
      c[i] = static_cast<Elem>(f % na);
      f /= na;
    }
    return c;
  };
  auto encode = [&](const std::vector<Elem>& c) {
    std::size_t f = 0;
    for (std::size_t i = nb; i-- > 0;)
      f = f * na + c[i];
    return f;
  };
  std::vector<std::vector<Elem>> coords(nbase);
  for (std::size_t f = 0; f < nbase; ++f)
    coords[f] = decode(f);
  // (f1 b1)(f2 b2) = f1 * f2^{b1^-1} * b1 b2 with f^{y}(x) = f(x y^-1)
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  std::vector<Elem> c(nb);
  for (std::size_t f1 = 0; f1 < nbase; ++f1)
    for (Elem b1 = 0; b1 < nb; ++b1)
      for (std::size_t f2 = 0; f2 < nbase; ++f2) {
        for (Elem x = 0; x < nb; ++x)
          c[x] = a.mul(coords[f1][x], coords[f2][b.mul(x, b1)]);
        const std::size_t f = encode(c);
        for (Elem b2 = 0; b2 < nb; ++b2)
          t[f1 * nb + b1][f2 * nb + b2] = static_cast<Elem>(f * nb + b.mul(b1, b2));
      }
  std::vector<Elem> gens;
  std::vector<GenSym> names;
  for (std::size_t i = 0; i < a.generators().size(); ++i) {
    std::vector<Elem> at_one(nb, 0);
    at_one[0] = a.generators()[i];
    gens.push_back(static_cast<Elem>(encode(at_one) * nb));
    names.push_back(a.generator_names()[i]);
  }
  for (std::size_t i = 0; i < b.generators().size(); ++i) {
    gens.push_back(b.generators()[i]);
    names.push_back(b.generator_names()[i]);
  }
  return FiniteGroup(std::move(t), std::move(gens), std::move(names));
}

std::vector<Word> transversal_words(const FiniteGroup& g)
{
  std::vector<std::optional<Word>> words(g.order());
  words[0] = Word{};
  std::deque<Elem> queue{0};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < g.generators().size(); ++i) {
      Elem y = g.mul(x, g.generators()[i]);
      if (!words[y]) {
        words[y] = *words[x] * Word::generator(g.generator_names()[i]);
        queue.push_back(y);
      }
    }
  }
  std::vector<Word> out;
  for (auto& w : words) {
    if (!w)
      throw GroupError("generators do not generate the group");
    out.push_back(std::move(*w));
  }
  return out;
}

LowerCentralSeries lower_central_series(const FiniteGroup& g)
{
  LowerCentralSeries s;
  const ElementSet all = all_elements(g);
  s.terms.push_back(all);
  for (;;) {
    ElementSet next = commutator_subgroup(g, s.terms.back(), all);
    if (next == s.terms.back())
      break;
    s.terms.push_back(std::move(next));
  }
  s.nilpotent = s.terms.back().size() == 1;
  s.nilpotency_class = s.nilpotent ? static_cast<int>(s.terms.size()) - 1 : 0;
  return s;
}

bool is_nilpotent(const FiniteGroup& g)
{
  return lower_central_series(g).nilpotent;
}

AbelianInvariants abelianization(const FiniteGroup& g)
{
  const ElementSet d = commutator_subgroup(g, all_elements(g), all_elements(g));
  std::vector<bool> in_d(g.order());
  for (Elem x : d)
    in_d[x] = true;
  // order of x modulo [G, G] for one representative per coset
  std::vector<bool> covered(g.order());
  std::vector<std::size_t> coset_orders;
  for (Elem x = 0; x < g.order(); ++x) {
    if (covered[x])
      continue;
    for (Elem y : d)
      covered[g.mul(x, y)] = true;
    std::size_t k = 1;
    for (Elem p = x; !in_d[p]; p = g.mul(p, x))
      ++k;
    coset_orders.push_back(k);
  }
  const std::size_t q = coset_orders.size();
  std::vector<Integer> orders;
  for (const auto& [p, e] : factorize(Integer(q))) {
    const std::size_t pp = static_cast<std::size_t>(p);
    std::vector<std::size_t> count;  // count[k] = #{x : x^{p^k} = 1}
    std::size_t pk = 1;
    for (int k = 0; k <= e; ++k) {
      std::size_t c = 0;
      for (std::size_t o : coset_orders)
        if (pk % o == 0)
          ++c;
      count.push_back(c);
      pk *= pp;
    }
    // parts >= k: log_p(count[k] / count[k-1])
    std::vector<int> at_least;
    for (int k = 1; k <= e; ++k) {
      std::size_t ratio = count[static_cast<std::size_t>(k)] / count[static_cast<std::size_t>(k - 1)];
      int l = 0;
      while (ratio > 1) {
        ratio /= pp;
        ++l;
      }
      at_least.push_back(l);
    }
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      const int exactly = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
      Integer pw = 1;
      for (std::size_t i = 0; i <= k; ++i)
        pw *= p;
      for (int i = 0; i < exactly; ++i)
        orders.push_back(pw);
    }
  }
  return AbelianInvariants::from_cyclic_orders(orders);
}

bool are_isomorphic(const FiniteGroup& x, const FiniteGroup& y)
{
  if (x.order() != y.order() || x.is_abelian() != y.is_abelian())
    return false;
  std::vector<Elem> gens = x.generators();
  if (gens.empty() && x.order() > 1) {
    ElementSet span{0};
    for (Elem e = 0; e < x.order() && span.size() < x.order(); ++e)
      if (!std::binary_search(span.begin(), span.end(), e)) {
        gens.push_back(e);
        span = subgroup_closure(x, gens);
      }
  }
  FiniteGroup src = x;
  src.set_generators(gens, {});
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem e = 0; e < y.order(); ++e)
      if (y.element_order(e) == x.element_order(gens[i]))
        candidates[i].push_back(e);
  std::vector<Elem> images(gens.size());
  std::function<bool(std::size_t)> search = [&](std::size_t i) {
    if (i == gens.size()) {
      auto h = extend_to_hom(src, y, images);
      return h && h->is_bijective();
    }
    for (Elem e : candidates[i]) {
      images[i] = e;
      if (search(i + 1))
        return true;
    }
    return false;
  };
  return search(0);
}

AbelianInvariants schur_multiplier_oracle(const FiniteGroup& g, std::size_t cap)
{
  const std::size_t n = g.order();
  if (n > cap)
    throw CapExceeded("group order " + std::to_string(n) + " exceeds the oracle cap " + std::to_string(cap));
  if (n == 1)
    return {};
  const std::size_t m = n - 1;  // nonidentity elements 1..n-1
  auto c1 = [&](Elem g1) { return static_cast<std::size_t>(g1 - 1); };
  auto c2 = [&](Elem g1, Elem g2) { return static_cast<std::size_t>(g1 - 1) * m + (g2 - 1); };

  auto add = [](std::map<std::size_t, Integer>& row, std::size_t col, int v) { row[col] += v; };
  auto to_sparse = [](const std::map<std::size_t, Integer>& row) {
    SparseRow out;
    for (const auto& [c, v] : row)
      if (v != 0)
        out.emplace_back(c, v);
    return out;
  };

  std::vector<SparseRow> d2;
  for (Elem a = 1; a < n; ++a)
    for (Elem b = 1; b < n; ++b) {
      std::map<std::size_t, Integer> row;
      add(row, c1(b), 1);
      if (Elem ab = g.mul(a, b); ab != 0)
        add(row, c1(ab), -1);
      add(row, c1(a), 1);
      d2.push_back(to_sparse(row));
    }
  std::vector<SparseRow> d3;
  for (Elem a = 1; a < n; ++a)
    for (Elem b = 1; b < n; ++b)
      for (Elem c = 1; c < n; ++c) {
        std::map<std::size_t, Integer> row;
        add(row, c2(b, c), 1);
        if (Elem ab = g.mul(a, b); ab != 0)
          add(row, c2(ab, c), -1);
        if (Elem bc = g.mul(b, c); bc != 0)
          add(row, c2(a, bc), 1);
        add(row, c2(a, b), -1);
        SparseRow r = to_sparse(row);
        if (!r.empty())
          d3.push_back(std::move(r));
      }
  const ElementaryDivisors e2 = elementary_divisors(std::move(d2), m);
  const ElementaryDivisors e3 = elementary_divisors(std::move(d3), m * m);
  const std::size_t kernel_rank = m * m - e2.rank;
  std::vector<Integer> orders;
  for (const auto& d : e3.divisors)
    if (d != 1)
      orders.push_back(d);
  for (std::size_t i = e3.rank; i < kernel_rank; ++i)
    orders.push_back(0);
  return AbelianInvariants::from_cyclic_orders(orders);
}

AbelianInvariants schur_multiplier_hopf(const FiniteGroup& g)
{
  const std::size_t n = g.order();
  const std::size_t d = g.generators().size();
  if (subgroup_closure(g, g.generators()).size() != n)
    throw GroupError("named generators do not generate the group");
  if (d == 0)
    return {};
  auto edge = [d](Elem v, std::size_t i) { return static_cast<std::size_t>(v) * d + i; };

  // breadth-first spanning tree of the right Cayley graph
  std::vector<bool> tree(n * d, false);
  std::vector<std::vector<std::size_t>> path(n);  // tree edges from 1 to v
  std::vector<bool> seen(n, false);
  std::deque<Elem> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const Elem v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < d; ++i) {
      const Elem w = g.mul(v, g.generators()[i]);
      if (seen[w])
        continue;
      seen[w] = true;
      tree[edge(v, i)] = true;
      path[w] = path[v];
      path[w].push_back(edge(v, i));
      queue.push_back(w);
    }
  }
  std::vector<std::size_t> column(n * d, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t e = 0; e < n * d; ++e)
    if (!tree[e])
      column[e] = cols++;

  // cycle z_e = p(v) + e - p(v x_i) for each non-tree edge e; left
  // translation by h moves it to another cycle, read off on non-tree edges
  std::vector<SparseRow> rows;
  for (std::size_t e = 0; e < n * d; ++e) {
    if (tree[e])
      continue;
    const Elem v = static_cast<Elem>(e / d);
    const std::size_t i = e % d;
    const Elem w = g.mul(v, g.generators()[i]);
    for (const Elem h : g.generators()) {
      std::map<std::size_t, Integer> acc;
      auto moved = [&](std::size_t f, int sign) {
        const std::size_t t = edge(g.mul(h, static_cast<Elem>(f / d)), f % d);
        if (!tree[t])
          acc[column[t]] += sign;
      };
      for (std::size_t f : path[v])
        moved(f, 1);
      moved(e, 1);
      for (std::size_t f : path[w])
        moved(f, -1);
      acc[column[e]] -= 1;
      SparseRow row;
      for (const auto& [c, x] : acc)
        if (x != 0)
          row.emplace_back(c, x);
      if (!row.empty())
        rows.push_back(std::move(row));
    }
  }
  AbelianInvariants coinvariants = cokernel_invariants(rows, cols);
  if (coinvariants.free_rank != d)
    throw std::logic_error("relation module coinvariants have unexpected rank");
  coinvariants.free_rank = 0;
  return coinvariants;
}

}  // namespace nilmult
