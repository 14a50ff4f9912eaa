#include "nilmult/pc.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nilmult {

namespace {

constexpr int kIterateLimit = 12;

auto lower(std::vector<PcElement::Term>& t, PcGen g)
{
  return std::lower_bound(t.begin(), t.end(), g,
                          [](const PcElement::Term& a, PcGen b) { return a.first < b; });
}

}  // namespace

PcElement PcElement::generator(PcGen g, const Integer& e)
{
  PcElement x;
  if (e != 0)
    x.terms_.emplace_back(g, e);
  return x;
}

PcElement PcElement::from_dense(std::span<const Integer> exps)
{
  PcElement x;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] != 0)
      x.terms_.emplace_back(static_cast<PcGen>(i), exps[i]);
  return x;
}

Integer PcElement::exponent(PcGen g) const
{
  auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                             [](const Term& a, PcGen b) { return a.first < b; });
  return (it != terms_.end() && it->first == g) ? it->second : Integer(0);
}

std::vector<Integer> PcElement::dense(std::size_t n) const
{
  std::vector<Integer> out(n);
  for (const auto& [g, e] : terms_)
    out.at(g) = e;
  return out;
}

std::string to_string(const PcElement& e)
{
  if (e.is_identity())
    return "id";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, x] : e.terms()) {
    if (!first)
      os << '*';
    first = false;
    os << 'g' << (g + 1);
    if (x != 1)
      os << '^' << x;
  }
  return os.str();
}

PcGen PcPresentation::add_generator(int w, const Integer& order)
{
  const PcGen g = static_cast<PcGen>(weight.size());
  weight.push_back(w);
  relative_order.push_back(order);
  power.emplace_back();
  conj.emplace_back();
  for (PcGen i = 0; i < g; ++i)
    conj.back().push_back(PcElement::generator(g));
  return g;
}

void validate(const PcPresentation& p)
{
  const std::size_t n = p.size();
  if (p.relative_order.size() != n || p.power.size() != n || p.conj.size() != n)
    throw std::invalid_argument("pc presentation: inconsistent table sizes");
  for (std::size_t i = 0; i < n; ++i) {
    if (p.relative_order[i] < 0 || p.relative_order[i] == 1)
      throw std::invalid_argument("pc presentation: relative order must be 0 or >= 2");
    for (const auto& [g, e] : p.power[i].terms())
      if (g <= i || g >= n)
        throw std::invalid_argument("pc presentation: power relation of g" + std::to_string(i + 1) +
                                    " leaves the deeper subgroup");
    if (p.relative_order[i] == 0 && !p.power[i].is_identity())
      throw std::invalid_argument("pc presentation: power relation on an infinite generator");
    if (p.conj[i].size() != i)
      throw std::invalid_argument("pc presentation: conjugate table row has wrong length");
    for (std::size_t k = 0; k < i; ++k) {
      const auto& t = p.conj[i][k].terms();
      if (t.empty() || t.front().first != i || t.front().second != 1)
        throw std::invalid_argument("pc presentation: conjugate g" + std::to_string(i + 1) + "^g" +
                                    std::to_string(k + 1) + " must start with g" + std::to_string(i + 1));
      for (const auto& [g, e] : t)
        if (g >= n)
          throw std::invalid_argument("pc presentation: generator index out of range");
    }
  }
}

PcGroup::PcGroup(PcPresentation p) : pres_(std::move(p))
{
  validate(pres_);
  const std::size_t n = pres_.size();
  commute_from_.assign(n, 0);
  for (PcGen l = 0; l < n; ++l) {
    PcGen from = l + 1;
    for (PcGen m = l + 1; m < n; ++m)
      if (pres_.conj[m][l].terms().size() != 1)
        from = m + 1;
    commute_from_[l] = from;
  }
  conj_inv_.assign(n, {});
  for (PcGen j = 0; j < n; ++j)
    conj_inv_[j].resize(j);
  // g_m^{g_l^-1} = g_m * phi^-1(d^-1) where g_m^{g_l} = g_m * d
  for (PcGen l = static_cast<PcGen>(n); l-- > 0;) {
    for (PcGen m = static_cast<PcGen>(n); m-- > l + 1;) {
      if (m >= commute_from_[l]) {
        conj_inv_[m][l] = PcElement::generator(m);
        continue;
      }
      const auto& t = pres_.conj[m][l].terms();
      PcElement d(std::vector<PcElement::Term>(t.begin() + 1, t.end()));
      PcElement z = conj_once(inv(d), l, -1);
      PcElement result = PcElement::generator(m);
      result.terms().insert(result.terms().end(), z.terms().begin(), z.terms().end());
      conj_inv_[m][l] = std::move(result);
    }
  }
}

PcElement PcGroup::gen(PcGen g, const Integer& e) const
{
  PcElement x;
  mul_gen(x, g, e);
  return x;
}

bool PcGroup::is_central(PcGen l) const
{
  if (commute_from_[l] != l + 1)
    return false;
  for (PcGen i = 0; i < l; ++i)
    if (commute_from_[i] <= l)
      continue;
    else
      return false;
  return true;
}

Integer PcGroup::order() const
{
  Integer n = 1;
  for (const auto& o : pres_.relative_order) {
    if (o == 0)
      return 0;
    n *= o;
  }
  return n;
}

PcElement PcGroup::mul(const PcElement& x, const PcElement& y) const
{
  if (y.is_identity())
    return x;
  if (x.is_identity())
    return y;
  if (x.terms().back().first < y.terms().front().first) {
    PcElement out = x;
    out.terms().insert(out.terms().end(), y.terms().begin(), y.terms().end());
    return out;
  }
  PcElement out = x;
  for (const auto& [g, e] : y.terms())
    mul_gen(out, g, e);
  return out;
}

PcElement PcGroup::collect(std::span<const PcElement::Term> word) const
{
  PcElement out;
  for (const auto& [g, e] : word)
    mul_gen(out, g, e);
  return out;
}

void PcGroup::mul_gen(PcElement& x, PcGen l, const Integer& e) const
{
  if (e == 0)
    return;
  auto& t = x.terms();
  auto it = lower(t, l);
  const bool has_l = it != t.end() && it->first == l;
  const std::size_t pos = static_cast<std::size_t>(it - t.begin());
  const std::size_t vpos = pos + (has_l ? 1 : 0);
  Integer s = has_l ? Integer(it->second + e) : e;

  PcElement v;
  if (vpos < t.size()) {
    if (t[vpos].first >= commute_from_[l]) {
      v.terms().assign(std::make_move_iterator(t.begin() + static_cast<std::ptrdiff_t>(vpos)),
                       std::make_move_iterator(t.end()));
    } else {
      PcElement raw(std::vector<PcElement::Term>(
          std::make_move_iterator(t.begin() + static_cast<std::ptrdiff_t>(vpos)),
          std::make_move_iterator(t.end())));
      v = conj_pow(std::move(raw), l, e);
    }
  }
  t.resize(pos);

  const Integer& o = pres_.relative_order[l];
  if (o != 0) {
    Integer q = floor_div(s, o);
    s -= q * o;
    if (q != 0)
      v = mul(pow(pres_.power[l], q), v);
  }
  if (s != 0)
    t.emplace_back(l, std::move(s));
  t.insert(t.end(), std::make_move_iterator(v.terms().begin()),
           std::make_move_iterator(v.terms().end()));
}

PcElement PcGroup::conj_once(const PcElement& v, PcGen l, int sign) const
{
  PcElement out;
  const auto& t = v.terms();
  for (std::size_t k = 0; k < t.size(); ++k) {
    const auto& [m, e] = t[k];
    if (m >= commute_from_[l]) {
      PcElement rest(std::vector<PcElement::Term>(t.begin() + static_cast<std::ptrdiff_t>(k), t.end()));
      return mul(out, rest);
    }
    const PcElement& img = sign > 0 ? pres_.conj[m][l] : conj_inv_[m][l];
    out = mul(out, pow(img, e));
  }
  return out;
}

PcElement PcGroup::apply_images(const PcElement& v, PcGen l, const std::vector<PcElement>& images) const
{
  PcElement out;
  const auto& t = v.terms();
  for (std::size_t k = 0; k < t.size(); ++k) {
    const auto& [m, e] = t[k];
    if (m >= commute_from_[l]) {
      PcElement rest(std::vector<PcElement::Term>(t.begin() + static_cast<std::ptrdiff_t>(k), t.end()));
      return mul(out, rest);
    }
    out = mul(out, pow(images[m - l - 1], e));
  }
  return out;
}

PcElement PcGroup::conj_pow(PcElement v, PcGen l, const Integer& e) const
{
  if (v.is_identity() || e == 0 || v.terms().front().first >= commute_from_[l])
    return v;
  const int sign = e > 0 ? 1 : -1;
  Integer k = abs(e);
  if (k <= kIterateLimit) {
    for (int i = 0; i < static_cast<int>(k); ++i)
      v = conj_once(v, l, sign);
    return v;
  }
  // binary powering of the conjugation automorphism on <g_{l+1}, ...>
  const PcGen top = commute_from_[l];
  std::vector<PcElement> images;
  for (PcGen m = l + 1; m < top; ++m)
    images.push_back(sign > 0 ? pres_.conj[m][l] : conj_inv_[m][l]);
  for (;;) {
    if ((k & 1) != 0)
      v = apply_images(v, l, images);
    k >>= 1;
    if (k == 0)
      break;
    std::vector<PcElement> sq;
    sq.reserve(images.size());
    for (const auto& img : images)
      sq.push_back(apply_images(img, l, images));
    images = std::move(sq);
  }
  return v;
}

PcElement PcGroup::inv(const PcElement& x) const
{
  if (x.is_identity())
    return x;
  const auto& t = x.terms();
  PcElement rest(std::vector<PcElement::Term>(t.begin() + 1, t.end()));
  PcElement out = inv(rest);
  mul_gen(out, t.front().first, -t.front().second);
  return out;
}

PcElement PcGroup::pow(const PcElement& x, const Integer& e) const
{
  if (e == 0 || x.is_identity())
    return {};
  if (e == 1)
    return x;
  if (x.terms().size() == 1) {
    PcElement out;
    mul_gen(out, x.terms().front().first, x.terms().front().second * e);
    return out;
  }
  PcElement base = e < 0 ? inv(x) : x;
  Integer k = abs(e);
  PcElement out;
  while (k > 0) {
    if ((k & 1) != 0)
      out = mul(out, base);
    k >>= 1;
    if (k > 0)
      base = mul(base, base);
  }
  return out;
}

PcElement PcGroup::conj(const PcElement& x, const PcElement& y) const
{
  return mul(inv(y), mul(x, y));
}

PcElement PcGroup::comm(const PcElement& x, const PcElement& y) const
{
  return mul(inv(mul(y, x)), mul(x, y));
}

std::vector<ConsistencyFailure> consistency_failures(const PcGroup& g, std::size_t limit)
{
  std::vector<ConsistencyFailure> out;
  const std::size_t n = g.size();
  const auto& p = g.presentation();
  std::vector<bool> central(n);
  for (PcGen i = 0; i < n; ++i)
    central[i] = g.is_central(i);
  auto gen = [&](PcGen i) { return PcElement::generator(i); };
  auto name = [](const char* kind, std::size_t a, std::size_t b, std::size_t c) {
    std::ostringstream os;
    os << kind << '(' << a + 1;
    if (b)
      os << ',' << b;
    if (c)
      os << ',' << c;
    os << ')';
    return os.str();
  };
  auto record = [&](std::string test, PcElement lhs, PcElement rhs) {
    if (lhs != rhs)
      out.push_back({std::move(test), std::move(lhs), std::move(rhs)});
    return out.size() >= limit;
  };

  for (PcGen k = 0; k < n; ++k) {
    if (central[k])
      continue;
    for (PcGen j = 0; j < k; ++j) {
      if (central[j])
        continue;
      for (PcGen i = 0; i < j; ++i) {
        if (central[i])
          continue;
        PcElement lhs = g.mul(g.mul(gen(k), gen(j)), gen(i));
        PcElement rhs = g.mul(gen(k), g.mul(gen(j), gen(i)));
        if (record(name("assoc", k, j + 1, i + 1), std::move(lhs), std::move(rhs)))
          return out;
      }
    }
  }
  for (PcGen j = 0; j < n; ++j) {
    const Integer& oj = p.relative_order[j];
    if (oj == 0)
      continue;
    PcElement almost = PcElement::generator(j, oj - 1);
    for (PcGen i = 0; i < j; ++i) {
      PcElement lhs = g.mul(p.power[j], gen(i));
      PcElement rhs = g.mul(almost, g.mul(gen(j), gen(i)));
      if (record(name("power-left", j, i + 1, 0), std::move(lhs), std::move(rhs)))
        return out;
    }
    for (PcGen k = j + 1; k < n; ++k) {
      PcElement lhs = g.mul(gen(k), p.power[j]);
      PcElement rhs = g.mul(g.mul(gen(k), gen(j)), almost);
      if (record(name("power-right", k, j + 1, 0), std::move(lhs), std::move(rhs)))
        return out;
    }
    PcElement lhs = g.mul(gen(j), p.power[j]);
    PcElement rhs = g.mul(p.power[j], gen(j));
    if (record(name("power-self", j, 0, 0), std::move(lhs), std::move(rhs)))
      return out;
  }
  return out;
}

bool is_consistent(const PcGroup& g)
{
  return consistency_failures(g, 1).empty();
}

}  // namespace nilmult
