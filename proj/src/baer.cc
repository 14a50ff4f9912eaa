#include "nilmult/baer.hpp"

#include "nilmult/nq.hpp"
#include "nilmult/pcgroup.hpp"

#include <functional>

namespace nilmult {

std::string to_string(BaerMethod m)
{
  return m == BaerMethod::cover ? "cover" : "oracle";
}

std::string to_string(Verdict v)
{
  switch (v) {
  case Verdict::pass:
    return "pass";
  case Verdict::fail:
    return "fail";
  case Verdict::inconclusive:
    break;
  }
  return "inconclusive";
}

bool BaerResult::operator==(const BaerResult& o) const
{
  return invariants == o.invariants && method == o.method && certificate.base_class == o.certificate.base_class &&
         certificate.cover_bound == o.certificate.cover_bound && certificate.c == o.certificate.c;
}

namespace {

// Let H = F / N with N the normal closure of the [t, x1, ..., xc], so
// N = [T, _cF]. Since N <= T and N <= gamma_{c+1}(F), the modular law gives
//   (T / N) n (gamma_{c+1}(F) / N) = (T n gamma_{c+1}(F)) / N,
// and gamma_{c+1}(H) = gamma_{c+1}(F) / N. So the image of T in H met with
// gamma_{c+1}(H) is the quotient itself. It is central-by-T, hence abelian:
// [T, gamma_{c+1}] <= [T, _{c+1}F] <= N.
//
// H has class at most k + c when the base has class k, because
// gamma_{k+1}(F) <= T and so gamma_{k+c+1}(F) <= [T, _cF].
BaerResult cover_quotient(const FinitePresentation& ambient, const std::vector<Word>& normal, int c, int k,
                          int cap)
{
  FinitePresentation h;
  h.generators = ambient.generators;
  h.relators = ambient.relators;
  for (auto& w : commutator_tuples(normal, ambient.generators, c))
    h.relators.push_back(std::move(w));

  NqEngine engine(h);
  const int bound = k + c;
  bool stable = false;
  for (int i = 1; i <= bound && !stable; ++i)
    stable = engine.step() == 0 && i > 1;
  if (!stable && engine.step() != 0)
    throw std::logic_error("cover exceeds its class bound " + std::to_string(bound));
  const NilpotentQuotient q = engine.result();

  auto g = std::make_shared<const PcGroup>(q.pres);
  std::vector<PcElement> t_images;
  for (const auto& w : normal)
    t_images.push_back(evaluate(*g, h.generators, q.images, w));
  const PcSubgroup t_bar = normal_closure(g, t_images);
  const PcSubgroup gamma = lower_central_subgroup(g, c + 1);
  const PcSubgroup meet = intersect_with_normal(t_bar, gamma);

  BaerResult r;
  try {
    r.invariants = abelian_invariants(meet);
  } catch (const NotAbelianError&) {
    throw std::logic_error("Baer quotient came out non-abelian");
  }
  r.certificate = {k, q.reached_class(), bound, cap, c};
  r.method = BaerMethod::cover;
  return r;
}

int base_class(const FinitePresentation& p, int cap)
{
  const ClassDetection d = detect_class(p, cap);
  if (!d.ok())
    throw NotNilpotentWithinCap(d.reason);
  return d.nilpotency_class;
}

void check_c(int c)
{
  if (c < 1)
    throw std::invalid_argument("c must be >= 1");
}

}  // namespace

BaerResult baer_quotient(const FinitePresentation& p, int c, int cap)
{
  check_c(c);
  validate(p);
  const int k = base_class(p, cap);
  FinitePresentation free;
  free.generators = p.generators;
  return cover_quotient(free, p.relators, c, k, cap);
}

BaerResult relative_baer_quotient(const AmbientSubgroupSpec& spec, int c, int cap)
{
  check_c(c);
  validate(spec.ambient);
  FinitePresentation k_mod_t = spec.ambient;
  for (const auto& w : spec.normal_generators)
    if (!w.is_identity())
      k_mod_t.relators.push_back(w);
  validate(k_mod_t);
  const int k = base_class(k_mod_t, cap);
  return cover_quotient(spec.ambient, spec.normal_generators, c, k, cap);
}

BaerResult baer_or_oracle(const FinitePresentation& p, int c, int cap, const FiniteGroup* model)
{
  try {
    return baer_quotient(p, c, cap);
  } catch (const NotNilpotentWithinCap&) {
    if (c != 1 || !model)
      throw;
  }
  BaerResult r;
  r.invariants = schur_multiplier_hopf(*model);
  r.certificate.c = 1;
  r.certificate.cap = cap;
  r.method = BaerMethod::oracle;
  return r;
}

namespace {

/// A computed value or the reason it could not be computed.
struct Outcome
{
  std::optional<AbelianInvariants> value;
  std::string error;
};

Outcome attempt(const std::function<AbelianInvariants()>& f)
{
  try {
    return {f(), {}};
  } catch (const NotNilpotentWithinCap& e) {
    return {std::nullopt, std::string("not nilpotent within cap: ") + e.what()};
  } catch (const CapExceeded& e) {
    return {std::nullopt, std::string("cap exceeded: ") + e.what()};
  } catch (const std::exception& e) {
    return {std::nullopt, e.what()};
  }
}

Outcome attempt_baer(const FinitePresentation& p, int c, int cap, const FiniteGroup* model)
{
  return attempt([&] { return baer_or_oracle(p, c, cap, model).invariants; });
}

Outcome attempt_relative(const AmbientSubgroupSpec& s, int c, int cap)
{
  return attempt([&] { return relative_baer_quotient(s, c, cap).invariants; });
}

using Named = std::vector<std::pair<std::string, const Outcome*>>;

/// Inconclusive verdict naming the first missing input, or nothing.
std::optional<ClaimVerdict> missing(const std::string& claim, const Named& inputs)
{
  ClaimVerdict v{claim, Verdict::inconclusive, {}};
  bool any = false;
  for (const auto& [name, o] : inputs) {
    if (o->value) {
      v.witness[name] = to_string(*o->value);
    } else {
      v.witness[name + "_error"] = o->error;
      any = true;
    }
  }
  if (!any)
    return std::nullopt;
  return v;
}

ClaimVerdict with_witness(const std::string& claim, bool ok, const Named& inputs)
{
  ClaimVerdict v{claim, ok ? Verdict::pass : Verdict::fail, {}};
  for (const auto& [name, o] : inputs)
    v.witness[name] = to_string(*o->value);
  return v;
}

ClaimVerdict direct_factor(const std::string& claim, const std::string& xn, const Outcome& x, const std::string& yn,
                           const Outcome& y)
{
  const Named in{{xn, &x}, {yn, &y}};
  if (auto m = missing(claim, in))
    return *m;
  return with_witness(claim, is_direct_factor(*x.value, *y.value), in);
}

ClaimVerdict isomorphic(const std::string& claim, const Named& in)
{
  if (auto m = missing(claim, in))
    return *m;
  bool ok = true;
  for (const auto& [name, o] : in)
    ok = ok && *o->value == *in.front().second->value;
  return with_witness(claim, ok, in);
}

/// `parts` summed must be a quotient of `whole` and, both being finite,
/// embed in it.
ClaimVerdict epimorphism(const std::string& claim, const std::string& wn, const Outcome& whole, const Named& parts)
{
  Named in{{wn, &whole}};
  in.insert(in.end(), parts.begin(), parts.end());
  if (auto m = missing(claim, in))
    return *m;
  AbelianInvariants sum;
  for (const auto& [name, o] : parts)
    sum = sum + *o->value;
  ClaimVerdict v = with_witness(claim, false, in);
  v.witness["sum"] = to_string(sum);
  if (!sum.is_finite() || !whole.value->is_finite()) {
    v.verdict = Verdict::inconclusive;
    v.witness["note"] = "infinite side";
    return v;
  }
  const bool q = is_quotient(sum, *whole.value);
  const bool e = embeds_as_subgroup(sum, *whole.value);
  v.witness["is_quotient"] = q ? "true" : "false";
  v.witness["embeds_as_subgroup"] = e ? "true" : "false";
  v.verdict = q && e ? Verdict::pass : Verdict::fail;
  return v;
}

AmbientSubgroupSpec wreath_spec(const FinitePresentation& a, const FinitePresentation& b, Variety v,
                                const FiniteGroup* b_model)
{
  AmbientSubgroupSpec s;
  s.ambient.generators = a.generators;
  for (const auto& g : b.generators)
    s.ambient.generators.push_back(g);
  s.ambient.relators = b.relators;
  s.normal_generators = family_TV(a, v, b_model);
  return s;
}

}  // namespace

std::vector<ClaimVerdict> retract_checks(const std::string& prefix, const FinitePresentation& g,
                                         const FiniteGroup* model,
                                         const std::vector<std::pair<std::string, FinitePresentation>>& retracts,
                                         int c, int cap)
{
  const Outcome mg = attempt_baer(g, c, cap, model);
  std::vector<ClaimVerdict> out;
  for (const auto& [label, p] : retracts) {
    const Outcome mp = attempt_baer(p, c, cap, nullptr);
    out.push_back(direct_factor(prefix + ":" + label, label, mp, "G", mg));
  }
  return out;
}

std::vector<ClaimVerdict> semidirect_checks(const SemidirectInput& in, int c, int cap)
{
  const FinitePresentation g = semidirect_presentation(in.a, in.b, in.action);
  const Outcome mg = attempt_baer(g, c, cap, in.model.get());
  const Outcome ma = attempt_baer(in.a, c, cap, nullptr);
  const Outcome mb = attempt_baer(in.b, c, cap, nullptr);
  const Outcome kt = attempt_relative(cyclic_B_spec(in.a, in.b, in.action), c, cap);

  std::vector<ClaimVerdict> out;
  out.push_back(direct_factor("direct_factor_32:B", "B", mb, "G", mg));
  out.push_back(direct_factor("direct_factor_32:A", "A", ma, "G", mg));
  if (in.b.generators.size() == 1)
    out.push_back(isomorphic("cyclicB_37", {{"G", &mg}, {"K/T", &kt}}));
  if (in.a.generators.size() == 1 && in.b.generators.size() == 1) {
    const Outcome du = attempt_relative(free_product_spec(in.a, in.b, in.action), c, cap);
    out.push_back(isomorphic("cyclicAB_311", {{"G", &mg}, {"D/U", &du}}));
  }
  out.push_back(epimorphism("epi_36", "G", mg, {{"B", &mb}, {"K/T", &kt}}));
  return out;
}

std::vector<ClaimVerdict> wreath_checks(const WreathInput& in, int c, int cap)
{
  if (!in.b_model)
    throw std::invalid_argument("wreath checks need a model of B");
  const FinitePresentation g = standard_wreath_presentation(in.a, in.b, *in.b_model);
  const Outcome mg = attempt_baer(g, c, cap, in.model.get());
  const Outcome mb = attempt_baer(in.b, c, cap, in.b_model.get());
  const Outcome kt = attempt_relative(wreath_spec(in.a, in.b, Variety::abelian, in.b_model.get()), c, cap);

  std::vector<ClaimVerdict> out;
  out.push_back(direct_factor("wreath_42", "B", mb, "G", mg));
  out.push_back(epimorphism("epi_45", "G", mg, {{"B", &mb}, {"K/T_V", &kt}}));
  if (in.b.generators.size() == 1)
    out.push_back(isomorphic("wreath_46", {{"G", &mg}, {"K/T_V", &kt}}));
  return out;
}

std::vector<ClaimVerdict> free_wreath_checks(const WreathInput& in, int c, int cap)
{
  const FinitePresentation g = free_product_presentation(in.a, in.b);
  const Outcome mg = attempt_baer(g, c, cap, nullptr);
  const Outcome mb = attempt_baer(in.b, c, cap, in.b_model.get());
  const Outcome kt = attempt_relative(wreath_spec(in.a, in.b, Variety::trivial, nullptr), c, cap);
  return {epimorphism("epi_53", "G", mg, {{"B", &mb}, {"K/T_V", &kt}})};
}

}  // namespace nilmult
