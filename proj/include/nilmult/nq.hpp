#pragma once

#include "nilmult/linalg.hpp"
#include "nilmult/pc.hpp"
#include "nilmult/presentation.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace nilmult {

/// Weighted pc presentation of G / gamma_{j+1}(G) together with the
/// epimorphism from the finitely presented group.
struct NilpotentQuotient
{
  FinitePresentation source;
  PcPresentation pres;
  /// Image of each source generator, in source order.
  std::vector<PcElement> images;
  int requested_class = 0;

  /// Largest weight present (0 for the trivial group).
  int reached_class() const;
  /// Invariants of gamma_w / gamma_{w+1}, w = 1..reached_class.
  std::vector<AbelianInvariants> layers() const;
  /// Product of relative orders, 0 when infinite.
  Integer order() const;
};

/// Class-by-class nilpotent quotient computation.
///
/// Each step extends the current class c-1 quotient by central tails of
/// weight c on every non-defining relation, enforces the weight-restricted
/// overlap tests and the source relators as integer relations among the
/// tails, and keeps the generators surviving Hermite elimination.
class NqEngine
{
public:
  explicit NqEngine(FinitePresentation p);

  /// Extends to the next class; returns the number of new generators.
  std::size_t step();
  int current_class() const { return class_; }
  const PcPresentation& presentation() const { return pres_; }
  const std::vector<PcElement>& images() const { return images_; }
  NilpotentQuotient result() const;

private:
  FinitePresentation source_;
  PcPresentation pres_;
  std::vector<PcElement> images_;
  std::vector<bool> image_defines_;
  std::vector<bool> power_defines_;
  std::vector<std::vector<bool>> comm_defines_;  // [j][i], i < j
  int class_ = 0;
};

NilpotentQuotient nilpotent_quotient(const FinitePresentation& p, int cls);

/// Value of a word over the source generators under the given images.
PcElement evaluate(const PcGroup& g, const std::vector<GenSym>& gens, const std::vector<PcElement>& images,
                   const Word& w);

/// Full certification: overlap consistency plus every relator mapping to
/// the identity. Returns a description of the first defect, or nothing.
std::optional<std::string> certify(const NilpotentQuotient& q);

struct ClassDetection
{
  enum class Status { nilpotent, not_nilpotent_within_cap };
  Status status = Status::not_nilpotent_within_cap;
  int nilpotency_class = 0;
  std::string reason;
  /// Class-k quotient when nilpotent.
  std::optional<NilpotentQuotient> quotient;

  bool ok() const { return status == Status::nilpotent; }
};

/// Lower central quotients up to class cap + 1. Nilpotency of class k is
/// reported when the series stabilises at k <= cap and, for a finite
/// class-k quotient of order at most `refute_limit`, the abelianisation of
/// the kernel (from a Reidemeister-Schreier presentation) is trivial. A
/// nontrivial kernel abelianisation proves the group is not nilpotent.
ClassDetection detect_class(const FinitePresentation& p, int cap = 8, std::size_t refute_limit = 4096);

/// Abelianisation of the kernel of G -> Q for a finite pc quotient Q of
/// order at most `limit`; nothing when Q is infinite or too large.
std::optional<AbelianInvariants> kernel_abelianization(const NilpotentQuotient& q, std::size_t limit);

/// Elements of a finite pc group, in breadth-first order from the
/// identity; nothing when infinite or larger than `limit`.
std::optional<std::vector<PcElement>> enumerate_elements(const PcGroup& g, std::size_t limit);

}  // namespace nilmult
