#include "nilmult/baer.hpp"
#include "nilmult/group_expr.hpp"
#include "nilmult/harness.hpp"
#include "nilmult/nq.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace nilmult;

namespace {

std::string read_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_pc(std::ostream& os, const PcPresentation& p)
{
  os << "pc generators: " << p.size() << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << "  g" << i + 1 << "  weight " << p.weight[i] << "  order "
       << (p.relative_order[i] == 0 ? std::string("inf") : to_string(p.relative_order[i])) << '\n';
  }
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.relative_order[i] != 0)
      os << "  g" << i + 1 << '^' << p.relative_order[i] << " = " << to_string(p.power[i]) << '\n';
  for (std::size_t j = 0; j < p.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const std::string s = to_string(p.conj[j][i]);
      if (s != "g" + std::to_string(j + 1))
        os << "  g" << j + 1 << "^g" << i + 1 << " = " << s << '\n';
    }
}

void print_baer(std::ostream& os, const BaerResult& r)
{
  os << "invariants: " << to_string(r.invariants) << '\n'
     << "method: " << to_string(r.method) << '\n'
     << "base_class: " << r.certificate.base_class << '\n'
     << "cover_class: " << r.certificate.cover_class << '\n'
     << "cover_bound: " << r.certificate.cover_bound << '\n'
     << "cap: " << r.certificate.cap << '\n'
     << "c: " << r.certificate.c << '\n';
}

/// `t: <word>` lines; `#` comments.
std::vector<Word> parse_tgens(const std::string& text, const std::vector<GenSym>& gens)
{
  std::vector<Word> out;
  std::stringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos)
      line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos || line.substr(0, colon).find_first_not_of(" \t") == std::string::npos ||
        line.substr(line.find_first_not_of(" \t"), colon - line.find_first_not_of(" \t")) != "t")
      throw ParseError("expected 't: <word>'", n, 1);
    out.push_back(parse_word(line.substr(colon + 1), gens, n));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"nilmult: nilpotent multipliers of finitely presented groups"};
  app.require_subcommand(1);

  std::string pres_file, ambient_file, tgens_file, group_text, action_file, report_file;
  std::vector<std::string> scenarios;
  int cls = 1, c = 1, cap = 8;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* nq = app.add_subcommand("nq", "nilpotent quotient to a given class");
  nq->add_option("--pres", pres_file, "presentation file")->required()->check(CLI::ExistingFile);
  nq->add_option("--class", cls, "class")->required()->check(CLI::Range(1, 64));

  auto* baer = app.add_subcommand("baer", "c-nilpotent multiplier");
  baer->add_option("--pres", pres_file, "presentation file")->required()->check(CLI::ExistingFile);
  baer->add_option("--c", c, "class of the variety")->required()->check(CLI::Range(1, 16));
  baer->add_option("--cap", cap, "class cap for nilpotency detection")->check(CLI::Range(1, 64));

  auto* rel = app.add_subcommand("baer-rel", "relative multiplier (T n gamma_{c+1}(K)) / [T, _cK]");
  rel->add_option("--ambient", ambient_file, "presentation of K")->required()->check(CLI::ExistingFile);
  rel->add_option("--tgens", tgens_file, "normal generators of T, one 't: <word>' per line")
      ->required()
      ->check(CLI::ExistingFile);
  rel->add_option("--c", c, "class of the variety")->required()->check(CLI::Range(1, 16));
  rel->add_option("--cap", cap, "class cap")->check(CLI::Range(1, 64));

  auto* h2 = app.add_subcommand("oracle-h2", "Schur multiplier of a small finite group");
  h2->add_option("--group", group_text, "group expression")->required();
  h2->add_option("--action", action_file, "action file for semidirect:G,H")->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "run scenario files");
  verify->add_option("--scenario", scenarios, "scenario file(s)")->required()->check(CLI::ExistingFile);
  verify->add_option("--report", report_file, "write the JSON report here");
  verify->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*nq) {
      const FinitePresentation p = load_presentation(pres_file);
      const NilpotentQuotient q = nilpotent_quotient(p, cls);
      std::cout << "class requested: " << cls << "\nclass reached: " << q.reached_class() << '\n';
      print_pc(std::cout, q.pres);
      const auto layers = q.layers();
      for (std::size_t w = 0; w < layers.size(); ++w)
        std::cout << "weight " << w + 1 << ": " << to_string(layers[w]) << '\n';
      const Integer order = q.order();
      std::cout << "order: " << (order == 0 ? std::string("infinite") : to_string(order)) << '\n';
      if (auto defect = certify(q)) {
        std::cerr << "certification failed: " << *defect << '\n';
        return 3;
      }
    } else if (*baer) {
      print_baer(std::cout, baer_quotient(load_presentation(pres_file), c, cap));
    } else if (*rel) {
      AmbientSubgroupSpec spec;
      spec.ambient = load_presentation(ambient_file);
      spec.normal_generators = parse_tgens(read_file(tgens_file), spec.ambient.generators);
      print_baer(std::cout, relative_baer_quotient(spec, c, cap));
    } else if (*h2) {
      std::optional<std::string> action;
      if (!action_file.empty())
        action = read_file(action_file);
      const GroupExpr e = parse_group_expr(group_text, action);
      if (!e.model) {
        std::cerr << "no finite model for '" << group_text << "'\n";
        return 2;
      }
      std::cout << "order: " << e.model->order() << '\n'
                << "H2: " << to_string(schur_multiplier_hopf(*e.model)) << '\n';
    } else if (*verify) {
      const auto reports = run_batch(scenarios, jobs);
      const std::string json = reports.size() == 1 ? report_json(reports.front()) : reports_json(reports);
      if (report_file.empty()) {
        std::cout << json << '\n';
      } else {
        std::ofstream out(report_file);
        if (!out)
          throw std::runtime_error("cannot write " + report_file);
        out << json << '\n';
      }
      int status = 0;
      for (const auto& r : reports) {
        std::cerr << r.scenario_id << ": " << r.count(Verdict::pass) << " pass, " << r.count(Verdict::fail)
                  << " fail, " << r.count(Verdict::inconclusive) << " inconclusive";
        if (r.error) {
          std::cerr << ", error: " << *r.error;
          status = std::max(status, 2);
        }
        std::cerr << '\n';
        if (r.count(Verdict::fail) > 0)
          status = std::max(status, 1);
      }
      return status;
    }
  } catch (const NotNilpotentWithinCap& e) {
    std::cerr << "not nilpotent within cap: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
