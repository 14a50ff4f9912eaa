#pragma once

#include "nilmult/finite_group.hpp"
#include "nilmult/words.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace nilmult {

struct FinitePresentation
{
  std::vector<GenSym> generators;
  std::vector<Word> relators;

  bool operator==(const FinitePresentation&) const = default;
};

/// Throws std::invalid_argument on duplicate or malformed generator names
/// or on relators using undeclared generators.
void validate(const FinitePresentation& p);

/// Parses `gens: a, b` followed by `rel: <word>` lines; `#` starts a
/// comment. Relators are freely reduced; identity relators are dropped.
FinitePresentation parse_presentation(std::string_view text);
FinitePresentation load_presentation(const std::string& path);
std::string to_string(const FinitePresentation& p);

/// action[b][a] = image of a under conjugation by b, as a word over the
/// generators of A: b^-1 a b = action[b][a].
using ActionSpec = std::map<GenSym, std::map<GenSym, Word>>;

/// Parses lines `act: b : a -> <word>`. Pairs not mentioned act trivially.
ActionSpec parse_action(std::string_view text, const FinitePresentation& a, const FinitePresentation& b);
ActionSpec load_action(const std::string& path, const FinitePresentation& a, const FinitePresentation& b);
/// Image of a under b, defaulting to a itself.
Word action_image(const ActionSpec& action, const GenSym& b, const GenSym& a);

/// Ambient presentation of K together with normal generators of T.
struct AmbientSubgroupSpec
{
  FinitePresentation ambient;
  std::vector<Word> normal_generators;
};

/// a^-1 * w_{a,b} * [b, a] for every a in gens(A), b in gens(B), in that
/// order (A-generator major). Each is equivalent to b^-1 a b = w_{a,b}.
std::vector<Word> action_relators(const FinitePresentation& a, const FinitePresentation& b,
                                  const ActionSpec& action);

FinitePresentation semidirect_presentation(const FinitePresentation& a, const FinitePresentation& b,
                                           const ActionSpec& action);
FinitePresentation free_product_presentation(const FinitePresentation& a, const FinitePresentation& b);
/// `b_model` carries generators named as in `b`; transversal words are the
/// shortest-lex positive words in those generators.
FinitePresentation standard_wreath_presentation(const FinitePresentation& a, const FinitePresentation& b,
                                                const FiniteGroup& b_model);

/// [x, y^{w_b}] for x, y in gens(A) and b in B \ {1}.
std::vector<Word> wreath_commutation_words(const FinitePresentation& a, const FiniteGroup& b_model);

enum class Variety { trivial, abelian };

std::vector<Word> family_S(const FinitePresentation& a, const FinitePresentation& b, const ActionSpec& action);
std::vector<Word> family_T(const FinitePresentation& a, const FinitePresentation& b, const ActionSpec& action);
std::vector<Word> family_U(const FinitePresentation& a, const FinitePresentation& b, const ActionSpec& action);
/// V trivial: relators(A); V abelian: relators(A) plus the coordinate
/// commutation words (needs `b_model`).
std::vector<Word> family_TV(const FinitePresentation& a, Variety v, const FiniteGroup* b_model = nullptr);
/// Every [r, g1, ..., gc] with r in relators(A), g_i in gens(A) u gens(B)
/// and at least one g_i from gens(B).
std::vector<Word> family_Dc(const FinitePresentation& a, const std::vector<GenSym>& b_gens, int c);

/// K = F(gens A) * B with T = <family_T>^K.
AmbientSubgroupSpec cyclic_B_spec(const FinitePresentation& a, const FinitePresentation& b,
                                  const ActionSpec& action);
/// D = A * B with U = <family_U>^D.
AmbientSubgroupSpec free_product_spec(const FinitePresentation& a, const FinitePresentation& b,
                                      const ActionSpec& action);

/// Renames generators (names absent from the map stay).
FinitePresentation rename(const FinitePresentation& p, const std::map<GenSym, GenSym>& names);
Word rename(const Word& w, const std::map<GenSym, GenSym>& names);

/// Left-normed tuples [w, x1, ..., xc] over all x_i in `gens`.
std::vector<Word> commutator_tuples(const std::vector<Word>& ws, const std::vector<GenSym>& gens, int c);

}  // namespace nilmult
