#include "nilmult/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace nilmult {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init)
{
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : init) {
    if (row.size() != cols_)
      throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long v : row)
      data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const
{
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const
{
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
  if (a.cols_ != b.rows_)
    throw std::invalid_argument("IntMatrix: dimension mismatch in product");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0)
        continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        c(i, j) += aik * b(k, j);
    }
  return c;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
  if (a == b)
    return;
  for (std::size_t c = 0; c < cols_; ++c)
    std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
  if (a == b)
    return;
  for (std::size_t r = 0; r < rows_; ++r)
    std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Integer& k)
{
  if (k == 0)
    return;
  for (std::size_t c = 0; c < cols_; ++c)
    if ((*this)(src, c) != 0)
      (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Integer& k)
{
  if (k == 0)
    return;
  for (std::size_t r = 0; r < rows_; ++r)
    if ((*this)(r, src) != 0)
      (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r)
{
  for (std::size_t c = 0; c < cols_; ++c)
    (*this)(r, c) = -(*this)(r, c);
}

Integer determinant(const IntMatrix& m)
{
  if (m.rows() != m.cols())
    throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0)
    return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0)
        ++r;
      if (r == n)
        return 0;
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

struct SmithState
{
  IntMatrix D, U, V;

  void row_add(std::size_t dst, std::size_t src, const Integer& k)
  {
    D.add_row(dst, src, k);
    U.add_row(dst, src, k);
  }
  void col_add(std::size_t dst, std::size_t src, const Integer& k)
  {
    D.add_col(dst, src, k);
    V.add_col(dst, src, k);
  }
  void row_swap(std::size_t a, std::size_t b)
  {
    D.swap_rows(a, b);
    U.swap_rows(a, b);
  }
  void col_swap(std::size_t a, std::size_t b)
  {
    D.swap_cols(a, b);
    V.swap_cols(a, b);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m)
{
  SmithState s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  const std::size_t rows = m.rows(), cols = m.cols();
  auto& D = s.D;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // minimal-magnitude pivot in the trailing block
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (D(i, j) != 0 && (pr == rows || abs(D(i, j)) < abs(D(pr, pc)))) {
          pr = i;
          pc = j;
        }
    if (pr == rows)
      break;
    s.row_swap(t, pr);
    s.col_swap(t, pc);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (D(i, t) != 0) {
          s.row_add(i, t, -(D(i, t) / D(t, t)));
          clean = clean && D(i, t) == 0;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (D(t, j) != 0) {
          s.col_add(j, t, -(D(t, j) / D(t, t)));
          clean = clean && D(t, j) == 0;
        }
      if (!clean) {
        // a remainder is now smaller than the pivot; move it in
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (D(i, t) != 0 && abs(D(i, t)) < abs(D(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D(t, j) != 0 && abs(D(t, j)) < abs(D(bi, bj))) {
            bi = t;
            bj = j;
          }
        s.row_swap(t, bi);
        s.col_swap(t, bj);
        continue;
      }
      // divisibility of the trailing block
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows)
        break;
      s.row_add(t, bad, 1);
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return {std::move(s.U), std::move(s.D), std::move(s.V)};
}

bool verify_smith_form(const IntMatrix& m, const SmithForm& sf)
{
  if (sf.U.rows() != m.rows() || sf.V.rows() != m.cols())
    return false;
  if (!(sf.U * m * sf.V == sf.D))
    return false;
  if (abs(determinant(sf.U)) != 1 || abs(determinant(sf.V)) != 1)
    return false;
  const auto& D = sf.D;
  Integer prev = 1;
  bool zero_seen = false;
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j) {
      if (i != j) {
        if (D(i, j) != 0)
          return false;
        continue;
      }
      const Integer& d = D(i, i);
      if (d < 0)
        return false;
      if (d == 0) {
        zero_seen = true;
        continue;
      }
      if (zero_seen || d % prev != 0)
        return false;
      prev = d;
    }
  return true;
}

// --- abelian invariants -----------------------------------------------------

std::vector<std::pair<Integer, int>> factorize(Integer n)
{
  std::vector<std::pair<Integer, int>> out;
  n = abs(n);
  if (n < 2)
    return out;
  for (Integer p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e)
      out.emplace_back(p, e);
  }
  if (n > 1)
    out.emplace_back(n, 1);
  return out;
}

AbelianInvariants AbelianInvariants::from_cyclic_orders(const std::vector<Integer>& orders)
{
  AbelianInvariants a;
  std::map<Integer, std::vector<int>> by_prime;
  for (const auto& o : orders) {
    Integer m = abs(o);
    if (m == 0) {
      ++a.free_rank;
      continue;
    }
    for (const auto& [p, e] : factorize(m))
      by_prime[p].push_back(e);
  }
  std::size_t t = 0;
  for (auto& [p, es] : by_prime) {
    std::sort(es.begin(), es.end(), std::greater<>());
    t = std::max(t, es.size());
  }
  // d_t gets the largest power of every prime, d_{t-1} the next, ...
  std::vector<Integer> chain(t, Integer(1));
  for (const auto& [p, es] : by_prime)
    for (std::size_t k = 0; k < es.size(); ++k) {
      Integer pk = 1;
      for (int i = 0; i < es[k]; ++i)
        pk *= p;
      chain[t - 1 - k] *= pk;
    }
  a.torsion = std::move(chain);
  return a;
}

Integer AbelianInvariants::order() const
{
  if (free_rank != 0)
    throw InfiniteGroupError("order of an infinite abelian group");
  Integer n = 1;
  for (const auto& d : torsion)
    n *= d;
  return n;
}

std::vector<std::pair<Integer, int>> AbelianInvariants::primary_components() const
{
  std::vector<std::pair<Integer, int>> out;
  for (const auto& d : torsion)
    for (const auto& pe : factorize(d))
      out.push_back(pe);
  std::sort(out.begin(), out.end());
  return out;
}

AbelianInvariants operator+(const AbelianInvariants& a, const AbelianInvariants& b)
{
  std::vector<Integer> orders(a.torsion);
  orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
  orders.insert(orders.end(), a.free_rank + b.free_rank, Integer(0));
  return AbelianInvariants::from_cyclic_orders(orders);
}

std::string to_string(const AbelianInvariants& a)
{
  if (a.is_trivial())
    return "0";
  std::ostringstream os;
  bool first = true;
  if (a.free_rank == 1) {
    os << "Z";
    first = false;
  } else if (a.free_rank > 1) {
    os << "Z^" << a.free_rank;
    first = false;
  }
  for (const auto& d : a.torsion) {
    if (!first)
      os << " + ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

// --- sparse rows ------------------------------------------------------------

void axpy(SparseRow& a, const Integer& k, const SparseRow& b)
{
  if (k == 0 || b.empty())
    return;
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      if (b[j].second != 0)
        out.emplace_back(b[j].first, k * b[j].second);
      ++j;
    } else {
      Integer v = a[i].second + k * b[j].second;
      if (v != 0)
        out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

namespace {

const Integer* entry(const SparseRow& r, std::size_t col)
{
  auto it = std::lower_bound(r.begin(), r.end(), col,
                             [](const auto& p, std::size_t c) { return p.first < c; });
  return (it != r.end() && it->first == col) ? &it->second : nullptr;
}

void scale(SparseRow& r, const Integer& k)
{
  if (k == 0) {
    r.clear();
    return;
  }
  for (auto& [c, v] : r)
    v *= k;
}

}  // namespace

ElementaryDivisors elementary_divisors(std::vector<SparseRow> rows, std::size_t n_cols)
{
  ElementaryDivisors out;
  std::vector<std::set<std::size_t>> col_rows(n_cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : rows[i])
      col_rows.at(c).insert(i);

  auto replace_row = [&](std::size_t i, SparseRow next) {
    for (const auto& [c, v] : rows[i])
      col_rows[c].erase(i);
    rows[i] = std::move(next);
    for (const auto& [c, v] : rows[i])
      col_rows[c].insert(i);
  };

  for (;;) {
    // sparsest column; inside it prefer unit entries on short rows
    std::size_t pc = n_cols;
    for (std::size_t c = 0; c < n_cols; ++c)
      if (!col_rows[c].empty() && (pc == n_cols || col_rows[c].size() < col_rows[pc].size()))
        pc = c;
    if (pc == n_cols)
      break;
    std::size_t pr = *col_rows[pc].begin();
    for (std::size_t i : col_rows[pc]) {
      const Integer& v = *entry(rows[i], pc);
      const Integer& best = *entry(rows[pr], pc);
      bool unit = abs(v) == 1, best_unit = abs(best) == 1;
      if ((unit && !best_unit) || (unit == best_unit && abs(v) < abs(best)) ||
          (unit == best_unit && abs(v) == abs(best) && rows[i].size() < rows[pr].size()))
        pr = i;
    }

    for (;;) {
      const Integer p = *entry(rows[pr], pc);
      // clear the pivot column with row operations
      std::vector<std::size_t> others(col_rows[pc].begin(), col_rows[pc].end());
      std::size_t smaller = rows.size();
      for (std::size_t i : others) {
        if (i == pr)
          continue;
        SparseRow r = rows[i];
        Integer q = *entry(r, pc) / p;
        axpy(r, -q, rows[pr]);
        replace_row(i, std::move(r));
        const Integer* rem = entry(rows[i], pc);
        if (rem && (smaller == rows.size() || abs(*rem) < abs(*entry(rows[smaller], pc))))
          smaller = i;
      }
      if (smaller != rows.size()) {
        pr = smaller;
        continue;
      }
      // pivot row: column operations only touch this row now
      SparseRow r = rows[pr];
      bool remainder = false;
      SparseRow reduced;
      for (auto& [c, v] : r) {
        if (c == pc) {
          reduced.emplace_back(c, v);
          continue;
        }
        Integer rem = v % p;
        if (rem != 0) {
          remainder = true;
          reduced.emplace_back(c, rem);
        }
      }
      replace_row(pr, std::move(reduced));
      if (remainder) {
        // the smallest remainder becomes the new pivot column
        std::size_t next_col = n_cols;
        Integer best = 0;
        for (const auto& [c, v] : rows[pr])
          if (c != pc && (best == 0 || abs(v) < best)) {
            best = abs(v);
            next_col = c;
          }
        pc = next_col;
        continue;
      }
      out.divisors.push_back(abs(p));
      ++out.rank;
      replace_row(pr, {});
      break;
    }
  }
  return out;
}

AbelianInvariants cokernel_invariants(const std::vector<SparseRow>& relations, std::size_t n)
{
  ElementaryDivisors ed = elementary_divisors(relations, n);
  std::vector<Integer> orders = ed.divisors;
  orders.insert(orders.end(), n - ed.rank, Integer(0));
  return AbelianInvariants::from_cyclic_orders(orders);
}

AbelianInvariants cokernel_invariants(const IntMatrix& relations)
{
  std::vector<SparseRow> rows(relations.rows());
  for (std::size_t i = 0; i < relations.rows(); ++i)
    for (std::size_t j = 0; j < relations.cols(); ++j)
      if (relations(i, j) != 0)
        rows[i].emplace_back(j, relations(i, j));
  return cokernel_invariants(rows, relations.cols());
}

// --- lattice echelon ----------------------------------------------------------

void LatticeEchelon::insert(SparseRow v)
{
  while (!v.empty()) {
    const std::size_t p = v.front().first;
    auto it = rows_.find(p);
    if (it == rows_.end()) {
      if (v.front().second < 0)
        scale(v, -1);
      rows_.emplace(p, std::move(v));
      return;
    }
    SparseRow& r = it->second;
    const Integer a = r.front().second;
    const Integer b = v.front().second;
    if (b % a == 0) {
      axpy(v, -(b / a), r);
      continue;
    }
    Integer s, t;
    Integer g = ext_gcd(a, b, s, t);
    SparseRow fresh = r;
    scale(fresh, s);
    axpy(fresh, t, v);
    SparseRow rest = v;
    scale(rest, a / g);
    axpy(rest, -(b / g), r);
    r = std::move(fresh);
    v = std::move(rest);
  }
}

SparseRow LatticeEchelon::reduce(SparseRow v) const
{
  for (const auto& [p, r] : rows_) {
    const Integer* e = entry(v, p);
    if (!e)
      continue;
    Integer q = floor_div(*e, r.front().second);
    if (q != 0)
      axpy(v, -q, r);
  }
  return v;
}

void LatticeEchelon::fully_reduce()
{
  for (auto& [p, r] : rows_) {
    for (const auto& [q, other] : rows_) {
      if (q <= p)
        continue;
      const Integer* e = entry(r, q);
      if (!e)
        continue;
      Integer k = floor_div(*e, other.front().second);
      if (k != 0)
        axpy(r, -k, other);
    }
  }
}

Integer LatticeEchelon::pivot(std::size_t col) const
{
  auto it = rows_.find(col);
  return it == rows_.end() ? Integer(0) : it->second.front().second;
}

// --- comparisons ------------------------------------------------------------

namespace {

std::map<Integer, std::vector<int>> partitions(const AbelianInvariants& a)
{
  std::map<Integer, std::vector<int>> out;
  for (const auto& [p, e] : a.primary_components())
    out[p].push_back(e);
  for (auto& [p, es] : out)
    std::sort(es.begin(), es.end(), std::greater<>());
  return out;
}

}  // namespace

bool is_direct_factor(const AbelianInvariants& x, const AbelianInvariants& y)
{
  if (x.free_rank > y.free_rank)
    return false;
  auto px = x.primary_components();
  auto py = y.primary_components();
  return std::includes(py.begin(), py.end(), px.begin(), px.end());
}

bool embeds_as_subgroup(const AbelianInvariants& x, const AbelianInvariants& y)
{
  if (!x.is_finite() || !y.is_finite())
    throw InfiniteGroupError("embeds_as_subgroup needs finite groups");
  auto px = partitions(x);
  auto py = partitions(y);
  for (const auto& [p, lx] : px) {
    auto it = py.find(p);
    if (it == py.end())
      return false;
    const auto& ly = it->second;
    if (lx.size() > ly.size())
      return false;
    for (std::size_t i = 0; i < lx.size(); ++i)
      if (lx[i] > ly[i])
        return false;
  }
  return true;
}

bool is_quotient(const AbelianInvariants& x, const AbelianInvariants& y)
{
  return embeds_as_subgroup(x, y);
}

AbelianComparison abelian_tests(const AbelianInvariants& x, const AbelianInvariants& y)
{
  AbelianComparison c;
  c.is_direct_factor = is_direct_factor(x, y);
  c.embeds_as_subgroup = embeds_as_subgroup(x, y);
  c.is_quotient = is_quotient(x, y);
  return c;
}

}  // namespace nilmult
