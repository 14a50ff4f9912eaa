#pragma once

#include "nilmult/baer.hpp"
#include "nilmult/finite_group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nilmult {

/// Check names accepted in scenario files.
const std::vector<std::string>& known_checks();

struct Scenario
{
  std::string id;
  std::string group;                  // group expression
  std::optional<std::string> action;  // contents of the action file
  std::vector<std::string> checks;
  std::vector<int> c{1};
  int cap = 8;
  std::vector<int> trunc;  // truncation classes; empty means c+2 and c+3
};

/// Keyed text: `id:`, `group:`, `action:` (path relative to `base_dir`),
/// `check:` (comma list, repeatable, `all` for every check), `c:`, `cap:`,
/// `trunc:`. Throws ParseError.
Scenario parse_scenario(std::string_view text, const std::string& base_dir = ".");
/// The id defaults to the file stem.
Scenario load_scenario(const std::string& path);

struct ScenarioReport
{
  std::string scenario_id;
  std::vector<ClaimVerdict> checks;
  std::optional<std::string> error;  // set when the scenario could not run
  double elapsed_ms = 0;

  std::size_t count(Verdict v) const;
};

ScenarioReport run_scenario(const Scenario& s);
/// Loads and runs; load errors end up in the report.
ScenarioReport run_scenario_file(const std::string& path);
/// Runs the files on up to `jobs` threads; reports come back in input order.
std::vector<ScenarioReport> run_batch(const std::vector<std::string>& paths, unsigned jobs);

/// JSON object with scenario_id, checks[] {name, status, witness},
/// versions and elapsed_ms.
std::string report_json(const ScenarioReport& r, int indent = 2);
std::string reports_json(const std::vector<ScenarioReport>& rs, int indent = 2);

/// Element of a free product of table groups as reduced syllables
/// (factor index, nonidentity element), adjacent factors distinct.
using Syllables = std::vector<std::pair<std::size_t, Elem>>;

/// a = a_{i1} ... a_{im} c with i1 < ... < im, each a_ij nontrivial and c
/// in the cartesian subgroup (trivial image in every factor).
struct FreeProductNormalForm
{
  Syllables prefix;
  Syllables cartesian;
};

Syllables free_product_reduce(const std::vector<const FiniteGroup*>& factors, const Syllables& s);
Syllables free_product_multiply(const std::vector<const FiniteGroup*>& factors, const Syllables& x,
                                const Syllables& y);
/// Syllables of a word whose letters are generator names of the factors.
Syllables free_product_element(const std::vector<const FiniteGroup*>& factors, const Word& w);
FreeProductNormalForm free_product_normal_form(const std::vector<const FiniteGroup*>& factors, const Syllables& a);
FreeProductNormalForm free_product_normal_form(const std::vector<const FiniteGroup*>& factors, const Word& w);

/// Runs `count` random words through the normal form and checks
/// reconstruction, uniqueness, idempotence and that single-factor words
/// have trivial cartesian part.
ClaimVerdict normal_form_property(const std::vector<const FiniteGroup*>& factors, std::size_t count,
                                  std::uint64_t seed);

/// For every cyclic subgroup H of the finite abelian group Y, Y has a
/// subgroup isomorphic to Y / H, decided by counting elements killed by
/// prime powers in both groups.
ClaimVerdict quotient_embeds_check(const AbelianInvariants& y, std::size_t limit = 4096);

}  // namespace nilmult
