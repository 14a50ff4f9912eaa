#pragma once

#include "nilmult/finite_group.hpp"
#include "nilmult/presentation.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace nilmult {

/// Group built from a small expression language:
///
///   Zn                  cyclic of order n
///   Q8                  quaternion group
///   dihedral:n          Z2 x| Zn, inversion (order 2n)
///   product:G,H         direct product
///   semidirect:Zm,Zn,k  Zn x| Zm, the generator of Zn raising a to the k
///   semidirect:G,H      H x| G, action read from an action file
///   wreath:G,H          standard wreath product G wr H
///   freewreath:G,H      free wreath product (isomorphic to G * H)
///
/// Parentheses group nested expressions: `product:(dihedral:4),Z2`.
/// Generators are renamed a, b, c, ... in order: those of the first
/// operand, then those of the second.
struct GroupExpr
{
  enum class Kind { cyclic, quaternion, dihedral, product, semidirect, wreath, free_wreath };

  struct Part
  {
    FinitePresentation presentation;
    std::shared_ptr<const FiniteGroup> model;
  };

  Kind kind = Kind::cyclic;
  std::string text;
  FinitePresentation presentation;
  /// Cayley table model; empty when infinite or too large.
  std::shared_ptr<const FiniteGroup> model;
  /// Operands of the binary constructions (dihedral: rotations, reflection).
  std::optional<Part> a, b;
  /// Conjugation action of b's generators on a's (semidirect kinds).
  ActionSpec action;

  bool is_split() const { return kind == Kind::dihedral || kind == Kind::product || kind == Kind::semidirect; }
  bool is_wreath() const { return kind == Kind::wreath || kind == Kind::free_wreath; }
};

/// `action_text` (the contents of an action file) applies to a top-level
/// `semidirect:G,H`. Throws ParseError on malformed input.
GroupExpr parse_group_expr(std::string_view text, const std::optional<std::string>& action_text = std::nullopt);

}  // namespace nilmult
