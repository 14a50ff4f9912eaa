#include "nilmult/words.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace nilmult;

namespace {

Word w(const char* s)
{
  return parse_word(s);
}

}  // namespace

TEST_CASE("free reduction cancels and merges")
{
  CHECK(w("a*a^-1").is_identity());
  CHECK(w("a*b*b^-1*a") == w("a^2"));
  CHECK(w("a^3*a^-3*b") == w("b"));
  CHECK(to_string(w("a*b^-2*b^2*a^-1")) == "1");
  CHECK(w("1").is_identity());
}

TEST_CASE("brackets are left-normed commutators")
{
  CHECK(w("[a,b]") == w("a^-1*b^-1*a*b"));
  CHECK(w("[a,b,a]") == commutator(w("[a,b]"), w("a")));
  const Word vs[] = {w("b"), w("c")};
  CHECK(left_normed(w("a"), vs) == w("[a,b,c]"));
  CHECK(conjugate(w("a"), w("b")) == w("b^-1*a*b"));
}

TEST_CASE("parse errors carry a position")
{
  CHECK_THROWS_AS(w("a*"), ParseError);
  CHECK_THROWS_AS(w("[a]"), ParseError);
  CHECK_THROWS_AS(w("A"), ParseError);
  CHECK_THROWS_AS(parse_word("a*c", std::vector<GenSym>{"a", "b"}), ParseError);
  try {
    w("a*b^x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() >= 4);
  }
}

TEST_CASE("group laws on random words")
{
  std::mt19937 rng(7);
  auto random_word = [&] {
    std::vector<Letter> raw;
    const int len = static_cast<int>(rng() % 9);
    for (int i = 0; i < len; ++i)
      raw.push_back({std::string(1, static_cast<char>('a' + rng() % 3)), static_cast<long long>(rng() % 5) - 2});
    return free_reduce(raw);
  };
  for (int i = 0; i < 300; ++i) {
    const Word x = random_word(), y = random_word(), z = random_word();
    CHECK((x * y) * z == x * (y * z));
    CHECK((x * x.inverse()).is_identity());
    CHECK((x * y).inverse() == y.inverse() * x.inverse());
    CHECK(parse_word(to_string(x)) == x);
    CHECK(x.pow(3) == x * x * x);
    // reduced words never carry adjacent equal symbols or zero exponents
    for (std::size_t k = 0; k < x.letters().size(); ++k) {
      CHECK(x.letters()[k].exp != 0);
      if (k > 0)
        CHECK(x.letters()[k].gen != x.letters()[k - 1].gen);
    }
  }
}

TEST_CASE("Hall basis sizes are the Witt numbers")
{
  for (std::size_t n = 1; n <= 3; ++n) {
    const HallBasis h = hall_basis(n, 5);
    const auto counts = h.counts();
    REQUIRE(counts.size() == 5);
    for (int k = 1; k <= 5; ++k)
      CHECK(static_cast<long long>(counts[k - 1]) == oracle::witt(static_cast<long long>(n), k));
  }
  CHECK(oracle::witt(2, 3) == 2);
  CHECK(oracle::witt(3, 4) == 18);
}

TEST_CASE("gensym validity")
{
  CHECK(is_valid_gensym("a"));
  CHECK(is_valid_gensym("x_1"));
  CHECK_FALSE(is_valid_gensym("1a"));
  CHECK_FALSE(is_valid_gensym(""));
  CHECK_FALSE(is_valid_gensym("B"));
}
