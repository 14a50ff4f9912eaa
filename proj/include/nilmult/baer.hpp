#pragma once

#include "nilmult/finite_group.hpp"
#include "nilmult/linalg.hpp"
#include "nilmult/presentation.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilmult {

struct BaerCertificate
{
  int base_class = 0;   // detected class k of G (or of K / T)
  int cover_class = 0;  // class reached by the cover
  int cover_bound = 0;  // k + c
  int cap = 0;
  int c = 0;
};

enum class BaerMethod { cover, oracle };
std::string to_string(BaerMethod m);

struct BaerResult
{
  AbelianInvariants invariants;
  BaerCertificate certificate;
  BaerMethod method = BaerMethod::cover;

  /// Invariants, method, base class, bound and c; the cap is a run
  /// parameter and is ignored.
  bool operator==(const BaerResult& o) const;
};

class NotNilpotentWithinCap : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// N_cM(G) for the group presented by P, which must be nilpotent of class
/// at most `cap`.
BaerResult baer_quotient(const FinitePresentation& p, int c, int cap = 8);

/// (T n gamma_{c+1}(K)) / [T, _cK] for K the ambient group and T the
/// normal closure of the given words; K / T must be nilpotent within cap.
BaerResult relative_baer_quotient(const AmbientSubgroupSpec& spec, int c, int cap = 8);

/// baer_quotient, falling back to the Hopf formula oracle at c = 1 when
/// the group is not nilpotent and a finite model is supplied.
BaerResult baer_or_oracle(const FinitePresentation& p, int c, int cap, const FiniteGroup* model);

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct ClaimVerdict
{
  std::string claim;
  Verdict verdict = Verdict::inconclusive;
  std::map<std::string, std::string> witness;
};

/// N_cM(P) is a direct factor of N_cM(G) for every retract P of G; each
/// claim is named `prefix` + ":" + the retract's label.
std::vector<ClaimVerdict> retract_checks(const std::string& prefix, const FinitePresentation& g,
                                         const FiniteGroup* model,
                                         const std::vector<std::pair<std::string, FinitePresentation>>& retracts,
                                         int c, int cap);

/// G = B x| A from presentations of A, B and the action.
struct SemidirectInput
{
  FinitePresentation a;
  FinitePresentation b;
  ActionSpec action;
  std::shared_ptr<const FiniteGroup> model;  // optional, enables the oracle
};

/// Direct factors of N_cM(G) (both A and B), the cyclic-B isomorphism
/// with the K / T quotient, the cyclic A and B isomorphism with the D / U
/// quotient, and the epimorphism onto N_cM(B) + (T n gamma)/[T, _cK].
/// Claims that do not apply (B not cyclic, ...) are omitted.
std::vector<ClaimVerdict> semidirect_checks(const SemidirectInput& in, int c, int cap);

/// A wr B, standard (base the direct power) or free (base the free power).
struct WreathInput
{
  FinitePresentation a;
  FinitePresentation b;
  std::shared_ptr<const FiniteGroup> b_model;
  std::shared_ptr<const FiniteGroup> model;  // optional model of the wreath product
};

/// Standard wreath product: N_cM(B) a direct factor, the epimorphism onto
/// N_cM(B) + (T_V n gamma)/[T_V, _cK], and for cyclic B the isomorphism
/// with that quotient.
std::vector<ClaimVerdict> wreath_checks(const WreathInput& in, int c, int cap);

/// Free wreath product: the epimorphism onto N_cM(A) + N_cM(B) + E_c/D_c,
/// N_cM(A) + E_c/D_c computed together as (T_V n gamma)/[T_V, _cK].
/// The free wreath product is A * B, so this is decidable only when one
/// factor is trivial.
std::vector<ClaimVerdict> free_wreath_checks(const WreathInput& in, int c, int cap);

}  // namespace nilmult
