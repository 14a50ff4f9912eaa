#pragma once

#include "nilmult/integer.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nilmult {

/// A generator symbol: identifier matching [a-z][a-z0-9_]*.
using GenSym = std::string;

bool is_valid_gensym(std::string_view name);

struct Letter
{
  GenSym gen;
  Integer exp;

  bool operator==(const Letter&) const = default;
};

/// Freely reduced word in a free group over named generators.
///
/// Adjacent letters always carry distinct symbols and exponents are never
/// zero; the empty sequence is the identity.
class Word
{
public:
  Word() = default;

  static Word generator(const GenSym& g, const Integer& exp = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  /// Sum of absolute exponents.
  Integer length() const;

  Word inverse() const;
  Word pow(const Integer& e) const;

  /// Exponent sum of one generator.
  Integer exponent_sum(const GenSym& g) const;

  friend Word operator*(const Word& u, const Word& v);
  bool operator==(const Word&) const = default;

private:
  friend Word free_reduce(std::span<const std::pair<GenSym, Integer>> raw);
  friend Word free_reduce(std::vector<Letter> raw);
  std::vector<Letter> letters_;
};

Word free_reduce(std::span<const std::pair<GenSym, Integer>> raw);
Word free_reduce(std::vector<Letter> raw);

/// u^-1 v^-1 u v, freely reduced.
Word commutator(const Word& u, const Word& v);

/// Left-normed [u, v1, ..., vc] = [[u, v1], v2] ... .
Word left_normed(const Word& u, std::span<const Word> vs);

/// v^-1 u v.
Word conjugate(const Word& u, const Word& v);

/// Generators occurring in the word, in order of first occurrence.
std::vector<GenSym> support(const Word& w);

/// Hall basic commutator over generators 0..n-1. Either a generator
/// (weight 1) or a pair of earlier basis elements given by index.
struct BasicCommutator
{
  int weight = 1;
  int generator = -1;
  std::size_t left = 0;
  std::size_t right = 0;

  bool is_generator() const { return weight == 1; }
};

/// Hall basis up to a given weight.
///
/// Order: weight first, then lexicographic on (left index, right index).
/// A pair [u, v] of weight k is basic when u > v in this order and, when
/// u = [s, t], also t <= v. Pc generator numbering of free nilpotent
/// quotients follows the same order.
struct HallBasis
{
  std::size_t n_generators = 0;
  int max_weight = 0;
  std::vector<BasicCommutator> elements;
  /// Indices into `elements`, one list per weight 1..max_weight.
  std::vector<std::vector<std::size_t>> by_weight;

  std::vector<std::size_t> counts() const;
  Word as_word(std::size_t index, std::span<const GenSym> names) const;
};

HallBasis hall_basis(std::size_t n_generators, int max_weight);

/// Syntax error with a 1-based position.
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses `word := term ('*' term)*`, `term := atom ('^' int)?`,
/// `atom := gen | '1' | '(' word ')' | '[' word (',' word)+ ']'`.
/// Brackets are left-normed. When `known` is given, any other generator
/// name is rejected.
Word parse_word(std::string_view text,
                const std::optional<std::vector<GenSym>>& known = std::nullopt,
                std::size_t line = 1);

std::string to_string(const Word& w);

}  // namespace nilmult
