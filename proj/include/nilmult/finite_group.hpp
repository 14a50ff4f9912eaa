#pragma once

#include "nilmult/linalg.hpp"
#include "nilmult/words.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilmult {

using Elem = std::uint32_t;

class GroupError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Finite group given by its Cayley table. Element 0 is the identity.
/// Optionally carries named generators so that presentation words can be
/// evaluated in it.
class FiniteGroup
{
public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<Elem>>{{0}}) {}
  /// Verifies the group axioms; throws GroupError otherwise.
  explicit FiniteGroup(std::vector<std::vector<Elem>> table, std::vector<Elem> gens = {},
                       std::vector<GenSym> names = {});

  std::size_t order() const { return table_.size(); }
  Elem identity() const { return 0; }
  Elem mul(Elem x, Elem y) const { return table_[x][y]; }
  Elem inv(Elem x) const { return inverse_[x]; }
  Elem pow(Elem x, const Integer& e) const;
  Elem comm(Elem x, Elem y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
  Elem conj(Elem x, Elem y) const { return mul(mul(inv(y), x), y); }
  std::size_t element_order(Elem x) const;

  const std::vector<Elem>& generators() const { return gens_; }
  const std::vector<GenSym>& generator_names() const { return names_; }
  void set_generators(std::vector<Elem> gens, std::vector<GenSym> names);
  /// Generator by name; throws GroupError when absent.
  Elem generator(const GenSym& name) const;

  /// Value of a word whose letters are generator names.
  Elem evaluate(const Word& w) const;

  bool is_abelian() const;

  const std::vector<std::vector<Elem>>& table() const { return table_; }

private:
  std::vector<std::vector<Elem>> table_;
  std::vector<Elem> inverse_;
  std::vector<Elem> gens_;
  std::vector<GenSym> names_;
};

/// Subset of elements, kept sorted.
using ElementSet = std::vector<Elem>;

/// Subgroup generated by a set of elements.
ElementSet subgroup_closure(const FiniteGroup& g, const ElementSet& gens);
/// Subgroup generated by all [h, k], h in H, k in K.
ElementSet commutator_subgroup(const FiniteGroup& g, const ElementSet& h, const ElementSet& k);
ElementSet all_elements(const FiniteGroup& g);

/// Homomorphism given by the image of every source element.
struct GroupHom
{
  const FiniteGroup* source = nullptr;
  const FiniteGroup* target = nullptr;
  std::vector<Elem> image;

  bool is_homomorphism() const;
  bool is_bijective() const;
};

/// Extends an assignment on the generators of `source` to a homomorphism,
/// or returns nothing when the assignment does not extend.
std::optional<GroupHom> extend_to_hom(const FiniteGroup& source, const FiniteGroup& target,
                                      const std::vector<Elem>& gen_images);

FiniteGroup cyclic(std::size_t n, const GenSym& name = "a");
/// Dihedral group of order 2n: rotation `r`, reflection `s`, r^s = r^-1.
FiniteGroup dihedral(std::size_t n, const GenSym& rot = "a", const GenSym& refl = "b");
/// Quaternion group of order 8 with i, j: i^4 = 1, j^2 = i^2, i^j = i^-1.
FiniteGroup quaternion(const GenSym& i = "a", const GenSym& j = "b");
/// Elements (a, b) ordered as a * |B| + b; generators of A then of B.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

/// Semidirect product with A normal: an element is written a*b and
/// b^-1 a b = theta(b)(a). `action[i]` lists the images under
/// theta(B generator i) of the generators of A. Automorphism and relator
/// compatibility are verified; throws GroupError otherwise.
FiniteGroup semidirect(const FiniteGroup& a, const FiniteGroup& b,
                       const std::vector<std::vector<Elem>>& action);

/// Standard wreath product: base = functions B -> A with pointwise
/// multiplication, B acting by right translation. Generators are those
/// of the coordinate copy at the identity of B, followed by those of B.
FiniteGroup standard_wreath(const FiniteGroup& a, const FiniteGroup& b);

/// Shortest-lex words over the generators of a finite group (positive
/// letters only) reaching every element; entry 0 is the identity word.
std::vector<Word> transversal_words(const FiniteGroup& g);

struct LowerCentralSeries
{
  std::vector<ElementSet> terms;  // gamma_1, gamma_2, ... until it stabilises
  bool nilpotent = false;
  int nilpotency_class = 0;  // meaningful when nilpotent
};
LowerCentralSeries lower_central_series(const FiniteGroup& g);
bool is_nilpotent(const FiniteGroup& g);

/// Abelian invariants of G / [G, G].
AbelianInvariants abelianization(const FiniteGroup& g);

/// Exhaustive isomorphism search between generated groups (small orders).
bool are_isomorphic(const FiniteGroup& x, const FiniteGroup& y);

class CapExceeded : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// H_2(G; Z) from the normalised bar complex:
/// ker(d2) / im(d3) with d2[g|h] = [h] - [gh] + [g] and
/// d3[g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h]. Throws CapExceeded
/// when |G| > cap.
AbelianInvariants schur_multiplier_oracle(const FiniteGroup& g, std::size_t cap = 24);

/// H_2(G; Z) by the Hopf formula: R / [R, F] for F free on the named
/// generators is Z^d + M(G), and R^ab is the cycle space of the Cayley
/// graph with G acting by left translation, so M(G) is the torsion of its
/// coinvariants. Works for any table group.
AbelianInvariants schur_multiplier_hopf(const FiniteGroup& g);

}  // namespace nilmult
