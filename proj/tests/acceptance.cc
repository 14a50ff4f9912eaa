// One line per acceptance criterion. Exit status is 0 when the failing
// criteria are exactly those passed to --expect-fail.

#include "nilmult/baer.hpp"
#include "nilmult/group_expr.hpp"
#include "nilmult/harness.hpp"
#include "nilmult/nq.hpp"
#include "nilmult/truncation.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace nilmult;

namespace {

struct Outcome
{
  bool ok = true;
  std::string detail;
};

/// Collects failures; the first few are kept for the detail text.
struct Tally
{
  int checked = 0;
  int failed = 0;
  int skipped = 0;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what)
  {
    ++checked;
    if (!ok) {
      ++failed;
      if (notes.size() < 4)
        notes.push_back(what);
    }
  }
  Outcome outcome(const std::string& extra = {}) const
  {
    std::ostringstream os;
    os << checked << " checks, " << failed << " failed";
    if (skipped)
      os << ", " << skipped << " inconclusive";
    if (!extra.empty())
      os << ", " << extra;
    for (const auto& n : notes)
      os << "; " << n;
    return {failed == 0 && checked > 0, os.str()};
  }
};

double seconds_since(std::chrono::steady_clock::time_point t)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt_seconds(double s)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

/// Runs `body` and adds a time limit to the verdict.
Outcome timed(double limit, const std::function<Outcome()>& body)
{
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = seconds_since(start);
  o.detail += " (" + fmt_seconds(s) + ", limit " + fmt_seconds(limit) + ")";
  if (s > limit)
    o.ok = false;
  return o;
}

Outcome cyclic_triviality()
{
  Tally t;
  for (int n = 2; n <= 12; ++n)
    for (int c = 1; c <= 4; ++c) {
      const auto p = parse_group_expr("Z" + std::to_string(n)).presentation;
      t.check(baer_quotient(p, c).invariants.is_trivial(), "Z" + std::to_string(n) + " c=" + std::to_string(c));
    }
  return t.outcome();
}

Outcome oracle_agreement()
{
  Tally t;
  for (const char* expr :
       {"Z4", "Z6", "product:Z2,Z2", "product:Z2,Z4", "product:Z3,Z3", "Q8", "dihedral:4", "wreath:Z2,Z2"}) {
    const GroupExpr e = parse_group_expr(expr);
    const AbelianInvariants b = baer_quotient(e.presentation, 1).invariants;
    const AbelianInvariants o = schur_multiplier_oracle(*e.model, 24);
    t.check(b == o, std::string(expr) + ": " + to_string(b) + " vs " + to_string(o));
  }
  return t.outcome();
}

Outcome presentation_independence()
{
  Tally t;
  for (int c = 1; c <= 2; ++c) {
    const BaerResult x = baer_quotient(parse_group_expr("dihedral:4").presentation, c);
    const BaerResult y = baer_quotient(parse_group_expr("wreath:Z2,Z2").presentation, c);
    t.check(x == y, "c=" + std::to_string(c) + ": " + to_string(x.invariants) + " vs " + to_string(y.invariants));
  }
  return t.outcome();
}

Outcome direct_factors(const std::string& corpus)
{
  Tally t;
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus))
    if (entry.path().extension() == ".scn")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  int pairs = 0;
  for (const auto& f : files) {
    Scenario s = load_scenario(f);
    const GroupExpr e = parse_group_expr(s.group, s.action);
    if (!e.is_split())
      continue;
    ++pairs;
    s.checks = {"direct_factor_32"};
    for (const auto& v : run_scenario(s).checks) {
      if (v.verdict == Verdict::inconclusive) {
        ++t.skipped;
        continue;
      }
      std::string note = s.id + " " + v.claim;
      for (const auto& [k, val] : v.witness)
        note += " " + k + "=" + val;
      t.check(v.verdict == Verdict::pass, note);
    }
  }
  return t.outcome(std::to_string(pairs) + " split scenarios");
}

Outcome cyclic_by_cyclic()
{
  Tally t;
  for (const char* expr : {"dihedral:4", "semidirect:Z4,Z4,3", "semidirect:Z8,Z2,5", "product:Z2,Z4", "product:Z2,Z2",
                           "product:Z3,Z3"}) {
    const auto start = std::chrono::steady_clock::now();
    const GroupExpr e = parse_group_expr(expr);
    for (int c = 1; c <= 2; ++c) {
      const auto& a = e.a->presentation;
      const auto& b = e.b->presentation;
      const AbelianInvariants g = baer_quotient(semidirect_presentation(a, b, e.action), c, 6).invariants;
      const AbelianInvariants kt = relative_baer_quotient(cyclic_B_spec(a, b, e.action), c, 6).invariants;
      const AbelianInvariants du = relative_baer_quotient(free_product_spec(a, b, e.action), c, 6).invariants;
      t.check(g == kt && kt == du, std::string(expr) + " c=" + std::to_string(c) + ": G=" + to_string(g) +
                                       " K/T=" + to_string(kt) + " D/U=" + to_string(du));
    }
    t.check(seconds_since(start) < 60, std::string(expr) + " over one minute");
  }
  return t.outcome();
}

Outcome wreath_truncation()
{
  Tally t;
  double worst = 0;
  for (const char* expr : {"product:Z2,Z2", "product:Z4,Z3", "product:(product:Z2,Z2),Z2",
                           "product:(product:Z2,Z2),(product:Z2,Z2)"}) {
    const GroupExpr e = parse_group_expr(expr);
    for (Variety v : {Variety::trivial, Variety::abelian})
      for (int c = 1; c <= 2; ++c)
        for (int j : {c + 2, c + 3}) {
          const auto start = std::chrono::steady_clock::now();
          const ClaimVerdict r =
              truncation_wreath_check(e.a->presentation, e.b->presentation, v, e.b->model.get(), c, j);
          const double s = seconds_since(start);
          worst = std::max(worst, s);
          t.check(r.verdict == Verdict::pass && s < 120,
                  std::string(expr) + " c=" + std::to_string(c) + " j=" + std::to_string(j));
        }
  }
  return t.outcome("slowest " + fmt_seconds(worst));
}

Outcome free_wreath_truncation()
{
  Tally t;
  for (const char* a : {"Z2", "Z4"})
    for (const char* b : {"Z2", "Z3"}) {
      const GroupExpr e = parse_group_expr(std::string("product:") + a + "," + b);
      for (int c = 1; c <= 2; ++c)
        for (int j = c + 1; j <= c + 3; ++j)
          t.check(truncation_free_wreath_check(e.a->presentation, e.b->presentation, c, j).verdict == Verdict::pass,
                  std::string(a) + "," + b + " c=" + std::to_string(c) + " j=" + std::to_string(j));
    }
  return t.outcome();
}

Outcome epimorphisms()
{
  Tally t;
  auto record = [&](const std::string& label, const std::vector<ClaimVerdict>& vs) {
    for (const auto& v : vs) {
      if (v.claim.rfind("epi_", 0) != 0)
        continue;
      if (v.verdict == Verdict::inconclusive) {
        ++t.skipped;
        continue;
      }
      t.check(v.verdict == Verdict::pass && v.witness.at("is_quotient") == "true" &&
                  v.witness.at("embeds_as_subgroup") == "true",
              label + " " + v.claim);
    }
  };
  for (int c = 1; c <= 2; ++c) {
    const std::string cs = " c=" + std::to_string(c);
    for (const char* expr : {"dihedral:4", "dihedral:8", "semidirect:Z4,Z4,3", "semidirect:Z9,Z3,4", "product:Z2,Z4"}) {
      const GroupExpr e = parse_group_expr(expr);
      record(expr + cs, semidirect_checks({e.a->presentation, e.b->presentation, e.action, e.model}, c, 8));
    }
    for (const char* expr : {"wreath:Z2,Z2", "wreath:Z2,Z4", "wreath:Z3,Z3", "wreath:Z4,Z2"}) {
      const GroupExpr e = parse_group_expr(expr);
      record(expr + cs, wreath_checks({e.a->presentation, e.b->presentation, e.b->model, e.model}, c, 8));
    }
    for (const char* expr : {"freewreath:Z4,Z1", "freewreath:Z1,Z3", "freewreath:Z2,Z2"}) {
      const GroupExpr e = parse_group_expr(expr);
      record(expr + cs, free_wreath_checks({e.a->presentation, e.b->presentation, e.b->model, e.model}, c, 8));
    }
  }
  return t.outcome();
}

long long witt(long long n, int k)
{
  auto mobius = [](int m) {
    int r = 1;
    for (int p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        m /= p;
        if (m % p == 0)
          return 0;
        r = -r;
      }
    return m > 1 ? -r : r;
  };
  long long s = 0;
  for (int d = 1; d <= k; ++d)
    if (k % d == 0) {
      long long p = 1;
      for (int i = 0; i < k / d; ++i)
        p *= n;
      s += mobius(d) * p;
    }
  return s / k;
}

Outcome hygiene()
{
  Tally t;
  for (const char* expr : {"Z12", "Q8", "dihedral:8", "wreath:Z2,Z4", "wreath:Z3,Z3", "semidirect:Z4,Z4,3",
                           "product:Q8,Z4", "semidirect:Z9,Z3,4"}) {
    const auto p = parse_group_expr(expr).presentation;
    for (int cls = 1; cls <= 5; ++cls) {
      const NilpotentQuotient q = nilpotent_quotient(p, cls);
      const auto defect = certify(q);
      t.check(!defect, std::string(expr) + " class " + std::to_string(cls) + ": " + defect.value_or(""));
    }
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    FinitePresentation f;
    for (std::size_t i = 0; i < n; ++i)
      f.generators.push_back(std::string(1, static_cast<char>('a' + i)));
    const NilpotentQuotient q = nilpotent_quotient(f, 5);
    t.check(!certify(q), "free rank " + std::to_string(n));
    const auto layers = q.layers();
    for (int w = 1; w <= 5; ++w) {
      const long long got = w <= static_cast<int>(layers.size()) ? static_cast<long long>(layers[w - 1].free_rank) : 0;
      t.check(got == witt(static_cast<long long>(n), w),
              "Witt n=" + std::to_string(n) + " w=" + std::to_string(w) + " got " + std::to_string(got));
    }
  }
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = static_cast<long>(rng() % 41) - 20;
    const SmithForm sf = smith_normal_form(m);
    t.check(verify_smith_form(m, sf) && sf.U * m * sf.V == sf.D && abs(determinant(sf.U)) == 1 &&
                abs(determinant(sf.V)) == 1,
            "SNF trial " + std::to_string(trial));
  }
  return t.outcome();
}

Outcome normal_forms()
{
  Tally t;
  const FiniteGroup a = cyclic(2, "a"), b3 = cyclic(3, "b"), b4 = cyclic(4, "b");
  for (const FiniteGroup* b : {&b3, &b4}) {
    const ClaimVerdict v = normal_form_property({&a, b}, 1000, 1000 + b->order());
    t.check(v.verdict == Verdict::pass,
            "Z2*Z" + std::to_string(b->order()) + (v.witness.count("word") ? " " + v.witness.at("word") : ""));
  }
  return t.outcome("1000 words per product");
}

std::set<int> parse_set(const std::string& s)
{
  std::set<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty())
      out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv)
{
  std::string corpus = "scenarios";
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--scenarios" && i + 1 < argc)
      corpus = argv[++i];
    else if (arg == "--expect-fail" && i + 1 < argc)
      expected = parse_set(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--scenarios DIR] [--expect-fail N,M]\n";
      return 2;
    }
  }

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"cyclic groups have trivial Baer invariants", [] { return timed(10, cyclic_triviality); }},
      {"c = 1 agrees with the bar complex oracle", [] { return timed(120, oracle_agreement); }},
      {"dihedral and wreath presentations of D4 agree", [] { return timed(60, presentation_independence); }},
      {"semidirect factors are direct factors", [&] { return timed(600, [&] { return direct_factors(corpus); }); }},
      {"cyclic-by-cyclic: G = K/T = D/U", [] { return timed(360, cyclic_by_cyclic); }},
      {"wreath truncation identity", [] { return timed(1200, wreath_truncation); }},
      {"free wreath truncation identity", [] { return timed(300, free_wreath_truncation); }},
      {"epimorphism images are quotients and subgroups", [] { return timed(300, epimorphisms); }},
      {"engine hygiene", [] { return timed(300, hygiene); }},
      {"free product normal form", [] { return timed(60, normal_forms); }},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i + 1);
    const Outcome o = criteria[i].second();
    if (!o.ok)
      failed.insert(n);
    std::cout << "criterion " << n << ": " << (o.ok ? "PASS" : "FAIL") << (!o.ok && expected.count(n) ? " (expected)" : "")
              << "  " << criteria[i].first << "  [" << o.detail << "]" << std::endl;
  }
  if (failed != expected) {
    std::cout << "failing set differs from --expect-fail\n";
    return 1;
  }
  return 0;
}
