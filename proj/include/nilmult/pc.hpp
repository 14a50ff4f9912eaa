#pragma once

#include "nilmult/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nilmult {

using PcGen = std::uint32_t;

/// Element of a pc group in collected normal form g1^e1 ... gm^em, stored
/// sparsely: sorted by generator, zero exponents omitted, and
/// 0 <= e < o for generators of finite relative order o.
class PcElement
{
public:
  using Term = std::pair<PcGen, Integer>;

  PcElement() = default;
  explicit PcElement(std::vector<Term> terms) : terms_(std::move(terms)) {}

  static PcElement generator(PcGen g, const Integer& e = 1);
  static PcElement from_dense(std::span<const Integer> exps);

  const std::vector<Term>& terms() const { return terms_; }
  std::vector<Term>& terms() { return terms_; }
  bool is_identity() const { return terms_.empty(); }
  /// Index of the first nonzero exponent; `n` when the element is trivial.
  PcGen depth(std::size_t n) const { return terms_.empty() ? static_cast<PcGen>(n) : terms_.front().first; }
  const Integer& leading_exponent() const { return terms_.front().second; }
  Integer exponent(PcGen g) const;
  std::vector<Integer> dense(std::size_t n) const;

  bool operator==(const PcElement&) const = default;

private:
  std::vector<Term> terms_;
};

/// How a generator of a nilpotent quotient was introduced.
struct PcDefinition
{
  enum class Kind { image, commutator, power };
  Kind kind = Kind::image;
  /// image: index of the presentation generator; commutator: (j, i) for
  /// [g_j, g_i]; power: (i, 0) for g_i^{o_i}.
  std::size_t a = 0;
  std::size_t b = 0;
};

/// Raw weighted polycyclic presentation.
///
/// Relations: g_i^{o_i} = power[i] for o_i > 0 and g_j^{g_i} = conj[j][i]
/// for j > i. Every conjugate must have the form g_j * (word in g_{j+1}..)
/// and every power must lie in <g_{i+1}, ...>, as for presentations
/// refining a central series.
struct PcPresentation
{
  std::vector<int> weight;
  std::vector<Integer> relative_order;  // 0 = infinite
  std::vector<PcElement> power;
  std::vector<std::vector<PcElement>> conj;  // conj[j][i], i < j
  std::vector<PcDefinition> definition;      // optional, empty when unknown
  int nilpotency_class = 0;

  std::size_t size() const { return weight.size(); }

  /// Appends a generator with trivial conjugation relations.
  PcGen add_generator(int w, const Integer& order);
};

std::string to_string(const PcElement& e);

/// Collection inside a fixed pc presentation.
///
/// Multiplication is collection from the left, phrased recursively: to
/// append g_l^e to u * g_l^k * v (v deeper than l) we conjugate v by g_l^e
/// and fold the exponent of g_l through its power relation. Conjugates by
/// g_l^-1 are derived once at construction by inverting conjugation by
/// g_l on the deeper subgroup.
class PcGroup
{
public:
  explicit PcGroup(PcPresentation p);

  const PcPresentation& presentation() const { return pres_; }
  std::size_t size() const { return pres_.size(); }
  const Integer& relative_order(PcGen g) const { return pres_.relative_order[g]; }
  int weight(PcGen g) const { return pres_.weight[g]; }

  PcElement identity() const { return {}; }
  PcElement gen(PcGen g, const Integer& e = 1) const;

  PcElement mul(const PcElement& x, const PcElement& y) const;
  PcElement inv(const PcElement& x) const;
  PcElement pow(const PcElement& x, const Integer& e) const;
  /// x^y = y^-1 x y
  PcElement conj(const PcElement& x, const PcElement& y) const;
  /// [x, y] = x^-1 y^-1 x y
  PcElement comm(const PcElement& x, const PcElement& y) const;
  /// Collects an arbitrary word g_{i1}^{e1} g_{i2}^{e2} ... .
  PcElement collect(std::span<const PcElement::Term> word) const;

  /// g_m commutes with g_l whenever m >= commute_from(l).
  PcGen commute_from(PcGen l) const { return commute_from_[l]; }
  /// Every generator commutes with g_l.
  bool is_central(PcGen l) const;

  /// Order of the group, or 0 when infinite.
  Integer order() const;

  /// Conjugate g_j^{g_i^{-1}} as derived at construction.
  const PcElement& conj_inverse(PcGen j, PcGen i) const { return conj_inv_[j][i]; }

private:
  void mul_gen(PcElement& x, PcGen l, const Integer& e) const;
  PcElement conj_pow(PcElement v, PcGen l, const Integer& e) const;
  PcElement conj_once(const PcElement& v, PcGen l, int sign) const;
  PcElement apply_images(const PcElement& v, PcGen l, const std::vector<PcElement>& images) const;

  PcPresentation pres_;
  std::vector<PcGen> commute_from_;
  std::vector<std::vector<PcElement>> conj_inv_;
};

/// One violated overlap test: the two collections of the same word.
struct ConsistencyFailure
{
  std::string test;
  PcElement lhs;
  PcElement rhs;
};

/// Runs the full family of overlap tests: (g_k g_j) g_i = g_k (g_j g_i)
/// for k > j > i and the power overlaps for generators of finite relative
/// order. Triples whose members are central are skipped (they agree
/// trivially).
std::vector<ConsistencyFailure> consistency_failures(const PcGroup& g, std::size_t limit = 1);
bool is_consistent(const PcGroup& g);

/// Checks the structural requirements of PcPresentation; throws
/// std::invalid_argument with a description on violation.
void validate(const PcPresentation& p);

}  // namespace nilmult
