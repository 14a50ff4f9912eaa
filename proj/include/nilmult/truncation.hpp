#pragma once

#include "nilmult/baer.hpp"
#include "nilmult/pcgroup.hpp"

namespace nilmult {

/// Checks [R, _cF] = [R_2, _cF_2] prod[R_2, F_1, F_2]_c [S_V, _cF] in the
/// free nilpotent quotient F / gamma_{j+1}(F), F = F_1 * F_2 free on the
/// generators of A and B, R the kernel onto the wreath product (standard
/// for V abelian, free for V trivial).
ClaimVerdict truncation_wreath_check(const FinitePresentation& a, const FinitePresentation& b, Variety v,
                                     const FiniteGroup* b_model, int c, int j);

/// Checks [T_V, _cK] = [R_1, _cF_1] D_c in K / gamma_{j+1}(K), K = F_1 * B,
/// T_V the normal closure of the relators of A.
ClaimVerdict truncation_free_wreath_check(const FinitePresentation& a, const FinitePresentation& b, int c, int j);

/// Checks [A M_1 M_2, N] = [A, N][M_1, N][M_2, N] in F / gamma_{j+1}(F),
/// F free on the generators of `g`: A generated by `a_gens`, M_1 the
/// normal closure of the relators, M_2 the normal closure of the other
/// generators (gamma_2 when there are none), N both gamma_2 and F.
ClaimVerdict commutator_product_check(const FinitePresentation& g, const std::vector<GenSym>& a_gens, int j);

/// Iterated [H, K_1, ..., K_n] of subgroups.
PcSubgroup iterated_commutator(const PcSubgroup& h, const std::vector<PcSubgroup>& ks);

/// Short printable description of a canonical sequence (depth^lead ...).
std::string signature(const PcSubgroup& h);

}  // namespace nilmult
