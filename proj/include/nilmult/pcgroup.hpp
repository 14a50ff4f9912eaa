#pragma once

#include "nilmult/linalg.hpp"
#include "nilmult/pc.hpp"

#include <memory>
#include <vector>

namespace nilmult {

using PcGroupPtr = std::shared_ptr<const PcGroup>;

/// Subgroup of a pc group given by its canonical induced generating
/// sequence: strictly increasing depths, positive leading exponents that
/// divide the relative orders, and every exponent at a deeper leading
/// position reduced into [0, leading exponent). Equal subgroups have
/// equal sequences.
class PcSubgroup
{
public:
  PcSubgroup(PcGroupPtr g, std::vector<PcElement> canonical);

  const PcGroupPtr& group_ptr() const { return group_; }
  const PcGroup& group() const { return *group_; }
  const std::vector<PcElement>& generators() const { return gens_; }

  bool contains(const PcElement& x) const;
  bool is_subgroup_of(const PcSubgroup& other) const;
  bool is_trivial() const { return gens_.empty(); }
  /// Order of the subgroup, 0 when infinite.
  Integer order() const;
  /// Index in the whole group, 0 when infinite.
  Integer index() const;

  bool operator==(const PcSubgroup& other) const;

private:
  PcGroupPtr group_;
  std::vector<PcElement> gens_;
};

/// Subgroup generated by the elements.
PcSubgroup subgroup(const PcGroupPtr& g, const std::vector<PcElement>& elements);
/// Smallest normal subgroup containing the elements.
PcSubgroup normal_closure(const PcGroupPtr& g, const std::vector<PcElement>& elements);
/// Smallest subgroup containing the elements and closed under conjugation
/// by each of `conjugators`.
PcSubgroup closure_under(const PcGroupPtr& g, const std::vector<PcElement>& elements,
                         const std::vector<PcElement>& conjugators);
PcSubgroup whole_group(const PcGroupPtr& g);
PcSubgroup trivial_subgroup(const PcGroupPtr& g);

/// [H, K] = <[h, k]> closed under conjugation by H and K.
PcSubgroup commutator_subgroup(const PcSubgroup& h, const PcSubgroup& k);
/// [H, G, ..., G] with c copies of G (left-normed).
PcSubgroup iterated_commutator(const PcSubgroup& h, int c);
/// gamma_i(G), read off the weights of a weighted presentation.
PcSubgroup lower_central_subgroup(const PcGroupPtr& g, int i);
/// <H, K>.
PcSubgroup join(const PcSubgroup& h, const PcSubgroup& k);
bool is_normal(const PcSubgroup& n);

/// Pc presentation of G / N with the projection.
struct PcQuotient
{
  PcGroupPtr source;
  PcGroupPtr group;
  std::vector<PcGen> kept;  // depth in source of each quotient generator
  std::vector<PcElement> normal_gens;

  PcElement project(const PcElement& x) const;
};
PcQuotient quotient(const PcSubgroup& n);

/// S n N for N normal, as the part of the graph {(s N, s)} inside
/// (G / N) x G that projects trivially onto G / N.
PcSubgroup intersect_with_normal(const PcSubgroup& s, const PcSubgroup& n);

/// Thrown when H / N is expected abelian but is not.
class NotAbelianError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Invariants of H / N for N <= H, N normal in G, H / N abelian.
AbelianInvariants quotient_invariants(const PcSubgroup& h, const PcSubgroup& n);
/// Invariants of an abelian subgroup.
AbelianInvariants abelian_invariants(const PcSubgroup& h);

/// Pc generators of the smallest weight: they generate a nilpotent group
/// given by a weighted presentation.
std::vector<PcElement> group_generators(const PcGroup& g);

}  // namespace nilmult
