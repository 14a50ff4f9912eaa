#include "nilmult/finite_group.hpp"
#include "nilmult/harness.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace nilmult;

namespace {

const ClaimVerdict* find(const ScenarioReport& r, const std::string& name)
{
  for (const auto& c : r.checks)
    if (c.claim == name)
      return &c;
  return nullptr;
}

std::string strip_elapsed(std::string json)
{
  const auto at = json.find("\"elapsed_ms\"");
  return at == std::string::npos ? json : json.substr(0, at);
}

}  // namespace

TEST_CASE("scenario parsing")
{
  const Scenario s = parse_scenario("id: x\ngroup: dihedral:4  # D4\ncheck: cyclicB_37, oracle_agreement\n"
                                    "check: cyclicB_37\nc: 1, 2\ncap: 6\ntrunc: 3\n");
  CHECK(s.id == "x");
  CHECK(s.group == "dihedral:4");
  CHECK(s.checks == std::vector<std::string>{"cyclicB_37", "oracle_agreement"});
  CHECK(s.c == std::vector<int>{1, 2});
  CHECK(s.cap == 6);
  CHECK(s.trunc == std::vector<int>{3});
  CHECK(parse_scenario("group: Z2\ncheck: all").checks.size() == known_checks().size());

  CHECK_THROWS_AS(parse_scenario("check: all"), ParseError);
  CHECK_THROWS_AS(parse_scenario("group: Z2"), ParseError);
  CHECK_THROWS_AS(parse_scenario("group: Z2\ncheck: bogus"), ParseError);
  CHECK_THROWS_AS(parse_scenario("group: Z2\ncheck: all\nc: 0"), ParseError);
  CHECK_THROWS_AS(parse_scenario("group: Z2\ncheck: all\nc: x"), ParseError);
  CHECK_THROWS_AS(parse_scenario("group: Z2\ncheck: all\naction: /no/such.act"), ParseError);
  CHECK_THROWS_AS(parse_scenario("group: Z2\ncheck: all\ncolour: red"), ParseError);
}

TEST_CASE("trivial group passes every check")
{
  const ScenarioReport r = run_scenario(parse_scenario("id: one\ngroup: Z1\ncheck: all\nc: 1, 2"));
  CHECK_FALSE(r.error);
  CHECK(r.checks.size() > known_checks().size());
  CHECK(r.count(Verdict::pass) == r.checks.size());
}

TEST_CASE("D4 as a semidirect product")
{
  const ScenarioReport r = run_scenario(
      parse_scenario("group: dihedral:4\ncheck: direct_factor_32, cyclicB_37, cyclicAB_311, oracle_agreement\nc: 1"));
  CHECK(r.count(Verdict::pass) == r.checks.size());
  const auto* o = find(r, "oracle_agreement/c=1");
  REQUIRE(o);
  CHECK(o->witness.at("baer") == "Z/2");
  CHECK(find(r, "cyclicB_37/c=1")->witness.at("G") == "Z/2");
}

TEST_CASE("S3: blocked at c = 2, oracle at c = 1")
{
  const ScenarioReport r = run_scenario(parse_scenario("group: dihedral:3\ncheck: cyclicB_37, oracle_agreement\nc: 2"));
  const auto* b = find(r, "cyclicB_37/c=2");
  REQUIRE(b);
  CHECK(b->verdict == Verdict::inconclusive);
  const auto* o = find(r, "oracle_agreement/c=1");
  REQUIRE(o);
  CHECK(o->verdict == Verdict::pass);
  CHECK(o->witness.at("oracle") == "0");
}

TEST_CASE("checks that do not apply are reported, not dropped")
{
  const ScenarioReport r = run_scenario(parse_scenario("group: wreath:Z2,Z2\ncheck: cyclicB_37\nc: 1"));
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].verdict == Verdict::inconclusive);
  CHECK(r.checks[0].witness.at("reason").find("not applicable") == 0);
}

TEST_CASE("every failure carries a witness")
{
  const ScenarioReport r = run_scenario(parse_scenario("group: dihedral:4\ncheck: cyclicAB_311\nc: 2"));
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].verdict == Verdict::fail);
  CHECK_FALSE(r.checks[0].witness.empty());
}

TEST_CASE("reports are deterministic and batches isolated")
{
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "nilmult_harness_test";
  fs::create_directories(dir);
  {
    std::ofstream(dir / "good.scn") << "group: product:Z2,Z2\ncheck: all\nc: 1\n";
    std::ofstream(dir / "bad.scn") << "group: wreath:Z2\ncheck: all\n";
    std::ofstream(dir / "act.scn") << "group: semidirect:Z4,Z2\naction: inv.act\ncheck: oracle_agreement\n";
    std::ofstream(dir / "inv.act") << "act: b : a -> a^-1\n";
  }
  const std::vector<std::string> paths{(dir / "good.scn").string(), (dir / "bad.scn").string(),
                                       (dir / "missing.scn").string(), (dir / "act.scn").string()};
  const auto batch = run_batch(paths, 3);
  REQUIRE(batch.size() == 4);
  CHECK(batch[0].scenario_id == "good");
  CHECK_FALSE(batch[0].error);
  CHECK(batch[1].error);
  CHECK(batch[2].error);
  CHECK(batch[3].count(Verdict::pass) == 1);

  const auto again = run_batch(paths, 1);
  for (std::size_t i = 0; i < paths.size(); ++i)
    CHECK(strip_elapsed(report_json(batch[i])) == strip_elapsed(report_json(again[i])));

  const std::string json = report_json(batch[0]);
  for (const char* key : {"\"scenario_id\"", "\"checks\"", "\"name\"", "\"status\"", "\"witness\"", "\"versions\"",
                          "\"elapsed_ms\""})
    CHECK(json.find(key) != std::string::npos);
  CHECK(reports_json(batch).front() == '[');
  fs::remove_all(dir);
}

TEST_CASE("free product normal form examples")
{
  const FiniteGroup a = cyclic(2, "a"), b = cyclic(3, "b");
  const std::vector<const FiniteGroup*> f{&a, &b};

  const auto nf = free_product_normal_form(f, parse_word("a*b*a*b^2"));
  CHECK(nf.prefix.empty());
  CHECK(nf.cartesian.size() == 4);

  const auto single = free_product_normal_form(f, parse_word("a"));
  CHECK(single.prefix.size() == 1);
  CHECK(single.cartesian.empty());

  const auto id = free_product_normal_form(f, Word());
  CHECK(id.prefix.empty());
  CHECK(id.cartesian.empty());

  const auto mixed = free_product_normal_form(f, parse_word("b*a"));
  REQUIRE(mixed.prefix.size() == 2);
  CHECK(mixed.prefix[0].first == 0);
  CHECK(mixed.prefix[1].first == 1);
  CHECK(free_product_multiply(f, mixed.prefix, mixed.cartesian) == free_product_element(f, parse_word("b*a")));

  CHECK_THROWS_AS(free_product_element(f, parse_word("c")), std::invalid_argument);
}

TEST_CASE("quotients of multipliers embed")
{
  for (const char* y : {"Z/2 + Z/4", "Z/2 + Z/2 + Z/8", "Z/6 + Z/36", "0"}) {
    AbelianInvariants inv;
    if (std::string(y) == "Z/2 + Z/4")
      inv = AbelianInvariants::from_cyclic_orders({2, 4});
    else if (std::string(y) == "Z/2 + Z/2 + Z/8")
      inv = AbelianInvariants::from_cyclic_orders({2, 2, 8});
    else if (std::string(y) == "Z/6 + Z/36")
      inv = AbelianInvariants::from_cyclic_orders({6, 36});
    INFO(y);
    CHECK(quotient_embeds_check(inv).verdict == Verdict::pass);
  }
  CHECK(quotient_embeds_check(AbelianInvariants::from_cyclic_orders({64, 128}), 4096).verdict ==
        Verdict::inconclusive);
}

TEST_CASE("normal form properties on random words")
{
  const FiniteGroup a = cyclic(2, "a"), b3 = cyclic(3, "b"), b4 = cyclic(4, "b");
  for (const FiniteGroup* b : {&b3, &b4}) {
    const ClaimVerdict v = normal_form_property({&a, b}, 1000, 42);
    INFO((v.witness.count("property") ? v.witness.at("property") : std::string()));
    CHECK(v.verdict == Verdict::pass);
    CHECK(std::stoi(v.witness.at("single_factor_words")) > 100);
  }
}
