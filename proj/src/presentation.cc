#include "nilmult/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nilmult {

namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Line
{
  std::size_t number;
  std::string_view key;
  std::string_view value;
  std::size_t value_column;
};

std::vector<Line> keyed_lines(std::string_view text)
{
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    if (trim(line).empty())
      continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("expected 'key: value'", number, 1);
    out.push_back({number, trim(line.substr(0, colon)), line.substr(colon + 1), colon + 2});
  }
  return out;
}

void append_unique(std::vector<GenSym>& out, const std::vector<GenSym>& more)
{
  for (const auto& g : more) {
    if (std::find(out.begin(), out.end(), g) != out.end())
      throw std::invalid_argument("generator name clash: '" + g + "'");
    out.push_back(g);
  }
}

}  // namespace

void validate(const FinitePresentation& p)
{
  std::set<GenSym> seen;
  for (const auto& g : p.generators) {
    if (!is_valid_gensym(g))
      throw std::invalid_argument("invalid generator name '" + g + "'");
    if (!seen.insert(g).second)
      throw std::invalid_argument("duplicate generator '" + g + "'");
  }
  for (const auto& r : p.relators)
    for (const auto& l : r.letters())
      if (!seen.count(l.gen))
        throw std::invalid_argument("relator uses undeclared generator '" + l.gen + "'");
}

FinitePresentation parse_presentation(std::string_view text)
{
  FinitePresentation p;
  bool have_gens = false;
  for (const auto& line : keyed_lines(text)) {
    if (line.key == "gens") {
      if (have_gens)
        throw ParseError("duplicate 'gens' line", line.number, 1);
      have_gens = true;
      std::string_view rest = line.value;
      while (!trim(rest).empty()) {
        auto comma = rest.find(',');
        std::string name(trim(rest.substr(0, comma)));
        if (!is_valid_gensym(name))
          throw ParseError("invalid generator name '" + name + "'", line.number, line.value_column);
        if (std::find(p.generators.begin(), p.generators.end(), name) != p.generators.end())
          throw ParseError("duplicate generator '" + name + "'", line.number, line.value_column);
        p.generators.push_back(name);
        if (comma == std::string_view::npos)
          break;
        rest = rest.substr(comma + 1);
      }
    } else if (line.key == "rel") {
      if (!have_gens)
        throw ParseError("'rel' before 'gens'", line.number, 1);
      try {
        Word w = parse_word(line.value, p.generators, line.number);
        if (!w.is_identity())
          p.relators.push_back(std::move(w));
      } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(": ") + 2), e.line(),
                         e.column() + line.value_column - 1);
      }
    } else {
      throw ParseError("unknown key '" + std::string(line.key) + "'", line.number, 1);
    }
  }
  if (!have_gens)
    throw ParseError("missing 'gens' line", 1, 1);
  return p;
}

FinitePresentation load_presentation(const std::string& path)
{
  return parse_presentation(read_file(path));
}

std::string to_string(const FinitePresentation& p)
{
  std::ostringstream os;
  os << "gens: ";
  for (std::size_t i = 0; i < p.generators.size(); ++i)
    os << (i ? ", " : "") << p.generators[i];
  os << '\n';
  for (const auto& r : p.relators)
    os << "rel: " << to_string(r) << '\n';
  return os.str();
}

ActionSpec parse_action(std::string_view text, const FinitePresentation& a, const FinitePresentation& b)
{
  ActionSpec spec;
  for (const auto& line : keyed_lines(text)) {
    if (line.key != "act")
      throw ParseError("unknown key '" + std::string(line.key) + "'", line.number, 1);
    std::string_view v = line.value;
    auto colon = v.find(':');
    auto arrow = v.find("->");
    if (colon == std::string_view::npos || arrow == std::string_view::npos || arrow < colon)
      throw ParseError("expected 'act: b : a -> word'", line.number, line.value_column);
    std::string bg(trim(v.substr(0, colon)));
    std::string ag(trim(v.substr(colon + 1, arrow - colon - 1)));
    if (std::find(b.generators.begin(), b.generators.end(), bg) == b.generators.end())
      throw ParseError("unknown acting generator '" + bg + "'", line.number, line.value_column);
    if (std::find(a.generators.begin(), a.generators.end(), ag) == a.generators.end())
      throw ParseError("unknown acted-on generator '" + ag + "'", line.number, line.value_column);
    if (spec[bg].count(ag))
      throw ParseError("duplicate action entry", line.number, line.value_column);
    spec[bg][ag] = parse_word(v.substr(arrow + 2), a.generators, line.number);
  }
  return spec;
}

ActionSpec load_action(const std::string& path, const FinitePresentation& a, const FinitePresentation& b)
{
  return parse_action(read_file(path), a, b);
}

Word action_image(const ActionSpec& action, const GenSym& b, const GenSym& a)
{
  if (auto it = action.find(b); it != action.end())
    if (auto jt = it->second.find(a); jt != it->second.end())
      return jt->second;
  return Word::generator(a);
}

std::vector<Word> action_relators(const FinitePresentation& a, const FinitePresentation& b,
                                  const ActionSpec& action)
{
  std::vector<Word> out;
  for (const auto& ag : a.generators)
    for (const auto& bg : b.generators) {
      Word x = Word::generator(ag);
      Word w = x.inverse() * action_image(action, bg, ag) * commutator(Word::generator(bg), x);
      out.push_back(std::move(w));
    }
  return out;
}

FinitePresentation semidirect_presentation(const FinitePresentation& a, const FinitePresentation& b,
                                           const ActionSpec& action)
{
  FinitePresentation p;
  p.generators = a.generators;
  append_unique(p.generators, b.generators);
  p.relators = a.relators;
  p.relators.insert(p.relators.end(), b.relators.begin(), b.relators.end());
  for (auto& w : action_relators(a, b, action))
    p.relators.push_back(std::move(w));
  validate(p);
  return p;
}

FinitePresentation free_product_presentation(const FinitePresentation& a, const FinitePresentation& b)
{
  FinitePresentation p;
  p.generators = a.generators;
  append_unique(p.generators, b.generators);
  p.relators = a.relators;
  p.relators.insert(p.relators.end(), b.relators.begin(), b.relators.end());
  return p;
}

std::vector<Word> wreath_commutation_words(const FinitePresentation& a, const FiniteGroup& b_model)
{
  const auto words = transversal_words(b_model);
  std::vector<Word> out;
  for (std::size_t k = 1; k < words.size(); ++k)
    for (const auto& x : a.generators)
      for (const auto& y : a.generators)
        out.push_back(commutator(Word::generator(x), conjugate(Word::generator(y), words[k])));
  return out;
}

FinitePresentation standard_wreath_presentation(const FinitePresentation& a, const FinitePresentation& b,
                                                const FiniteGroup& b_model)
{
  if (b_model.generator_names() != b.generators)
    throw std::invalid_argument("model generators do not match the presentation of B");
  for (const auto& r : b.relators)
    if (b_model.evaluate(r) != b_model.identity())
      throw std::invalid_argument("model of B violates relator " + to_string(r));
  FinitePresentation p = free_product_presentation(a, b);
  for (auto& w : wreath_commutation_words(a, b_model))
    p.relators.push_back(std::move(w));
  return p;
}

std::vector<Word> family_S(const FinitePresentation& a, const FinitePresentation& b, const ActionSpec& action)
{
  std::vector<Word> out = action_relators(a, b, action);
  out.insert(out.end(), a.relators.begin(), a.relators.end());
  for (const auto& r : b.relators)
    for (const auto& x : a.generators)
      out.push_back(commutator(r, Word::generator(x)));
  return out;
}

std::vector<Word> family_T(const FinitePresentation& a, const FinitePresentation& b, const ActionSpec& action)
{
  std::vector<Word> out = action_relators(a, b, action);
  out.insert(out.end(), a.relators.begin(), a.relators.end());
  return out;
}

std::vector<Word> family_U(const FinitePresentation& a, const FinitePresentation& b, const ActionSpec& action)
{
  return action_relators(a, b, action);
}

std::vector<Word> family_TV(const FinitePresentation& a, Variety v, const FiniteGroup* b_model)
{
  std::vector<Word> out = a.relators;
  if (v == Variety::abelian) {
    if (!b_model)
      throw std::invalid_argument("abelian variety needs a model of B");
    for (auto& w : wreath_commutation_words(a, *b_model))
      out.push_back(std::move(w));
  }
  return out;
}

std::vector<Word> family_Dc(const FinitePresentation& a, const std::vector<GenSym>& b_gens, int c)
{
  if (c < 1)
    throw std::invalid_argument("family_Dc needs c >= 1");
  std::vector<GenSym> all = a.generators;
  all.insert(all.end(), b_gens.begin(), b_gens.end());
  const std::size_t na = a.generators.size();
  std::vector<Word> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(c), 0);
  for (const auto& r : a.relators) {
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      if (std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return i >= na; })) {
        std::vector<Word> xs;
        for (auto i : idx)
          xs.push_back(Word::generator(all[i]));
        out.push_back(left_normed(r, xs));
      }
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == all.size())
        idx[k++] = 0;
      if (k == idx.size())
        break;
    }
  }
  return out;
}

AmbientSubgroupSpec cyclic_B_spec(const FinitePresentation& a, const FinitePresentation& b,
                                  const ActionSpec& action)
{
  AmbientSubgroupSpec s;
  s.ambient.generators = a.generators;
  append_unique(s.ambient.generators, b.generators);
  s.ambient.relators = b.relators;
  s.normal_generators = family_T(a, b, action);
  return s;
}

AmbientSubgroupSpec free_product_spec(const FinitePresentation& a, const FinitePresentation& b,
                                      const ActionSpec& action)
{
  AmbientSubgroupSpec s;
  s.ambient = free_product_presentation(a, b);
  s.normal_generators = family_U(a, b, action);
  return s;
}

Word rename(const Word& w, const std::map<GenSym, GenSym>& names)
{
  std::vector<Letter> letters;
  for (const auto& l : w.letters()) {
    auto it = names.find(l.gen);
    letters.push_back({it == names.end() ? l.gen : it->second, l.exp});
  }
  return free_reduce(std::move(letters));
}

FinitePresentation rename(const FinitePresentation& p, const std::map<GenSym, GenSym>& names)
{
  FinitePresentation out;
  for (const auto& g : p.generators) {
    auto it = names.find(g);
    out.generators.push_back(it == names.end() ? g : it->second);
  }
  for (const auto& r : p.relators)
    out.relators.push_back(rename(r, names));
  validate(out);
  return out;
}

std::vector<Word> commutator_tuples(const std::vector<Word>& ws, const std::vector<GenSym>& gens, int c)
{
  std::vector<Word> layer = ws;
  for (int i = 0; i < c; ++i) {
    std::vector<Word> next;
    next.reserve(layer.size() * gens.size());
    for (const auto& w : layer)
      for (const auto& g : gens) {
        Word x = commutator(w, Word::generator(g));
        if (!x.is_identity())
          next.push_back(std::move(x));
      }
    layer = std::move(next);
  }
  return layer;
}

}  // namespace nilmult
