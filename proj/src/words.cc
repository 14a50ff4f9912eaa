#include "nilmult/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nilmult {

bool is_valid_gensym(std::string_view name)
{
  if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z'))
    return false;
  return std::all_of(name.begin() + 1, name.end(), [](char ch) {
    return (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '_';
  });
}

Word free_reduce(std::vector<Letter> raw)
{
  Word w;
  auto& out = w.letters_;
  out.reserve(raw.size());
  for (auto& l : raw) {
    if (l.exp == 0)
      continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0)
        out.pop_back();
    } else {
      out.push_back(std::move(l));
    }
  }
  return w;
}

Word free_reduce(std::span<const std::pair<GenSym, Integer>> raw)
{
  std::vector<Letter> letters;
  letters.reserve(raw.size());
  for (const auto& [g, e] : raw)
    letters.push_back({g, e});
  return free_reduce(std::move(letters));
}

Word Word::generator(const GenSym& g, const Integer& exp)
{
  return free_reduce(std::vector<Letter>{{g, exp}});
}

Integer Word::length() const
{
  Integer n = 0;
  for (const auto& l : letters_)
    n += abs(l.exp);
  return n;
}

Word Word::inverse() const
{
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back({it->gen, -it->exp});
  return w;
}

Word Word::pow(const Integer& e) const
{
  if (e == 0 || is_identity())
    return {};
  Word base = e < 0 ? inverse() : *this;
  Integer k = abs(e);
  Word result;
  // square-and-multiply keeps the intermediate words short for large e
  while (k > 0) {
    if ((k & 1) != 0)
      result = result * base;
    k >>= 1;
    if (k > 0)
      base = base * base;
  }
  return result;
}

Integer Word::exponent_sum(const GenSym& g) const
{
  Integer s = 0;
  for (const auto& l : letters_)
    if (l.gen == g)
      s += l.exp;
  return s;
}

Word operator*(const Word& u, const Word& v)
{
  std::vector<Letter> raw;
  raw.reserve(u.letters_.size() + v.letters_.size());
  raw.insert(raw.end(), u.letters_.begin(), u.letters_.end());
  raw.insert(raw.end(), v.letters_.begin(), v.letters_.end());
  return free_reduce(std::move(raw));
}

Word commutator(const Word& u, const Word& v)
{
  return u.inverse() * v.inverse() * u * v;
}

Word left_normed(const Word& u, std::span<const Word> vs)
{
  Word w = u;
  for (const auto& v : vs)
    w = commutator(w, v);
  return w;
}

Word conjugate(const Word& u, const Word& v)
{
  return v.inverse() * u * v;
}

std::vector<GenSym> support(const Word& w)
{
  std::vector<GenSym> out;
  for (const auto& l : w.letters())
    if (std::find(out.begin(), out.end(), l.gen) == out.end())
      out.push_back(l.gen);
  return out;
}

std::vector<std::size_t> HallBasis::counts() const
{
  std::vector<std::size_t> c;
  for (const auto& layer : by_weight)
    c.push_back(layer.size());
  return c;
}

Word HallBasis::as_word(std::size_t index, std::span<const GenSym> names) const
{
  const auto& bc = elements.at(index);
  if (bc.is_generator())
    return Word::generator(names[static_cast<std::size_t>(bc.generator)]);
  return commutator(as_word(bc.left, names), as_word(bc.right, names));
}

HallBasis hall_basis(std::size_t n_generators, int max_weight)
{
  HallBasis hb;
  hb.n_generators = n_generators;
  hb.max_weight = max_weight;
  if (max_weight < 1)
    return hb;
  hb.by_weight.resize(static_cast<std::size_t>(max_weight));
  for (std::size_t i = 0; i < n_generators; ++i) {
    BasicCommutator bc;
    bc.generator = static_cast<int>(i);
    hb.by_weight[0].push_back(hb.elements.size());
    hb.elements.push_back(bc);
  }
  for (int k = 2; k <= max_weight; ++k) {
    const std::size_t limit = hb.elements.size();
    std::vector<BasicCommutator> layer;
    for (std::size_t u = 0; u < limit; ++u) {
      const auto& cu = hb.elements[u];
      for (std::size_t v = 0; v < u; ++v) {
        const auto& cv = hb.elements[v];
        if (cu.weight + cv.weight != k)
          continue;
        if (!cu.is_generator() && cu.right > v)
          continue;
        BasicCommutator bc;
        bc.weight = k;
        bc.left = u;
        bc.right = v;
        layer.push_back(bc);
      }
    }
    for (const auto& bc : layer) {
      hb.by_weight[static_cast<std::size_t>(k - 1)].push_back(hb.elements.size());
      hb.elements.push_back(bc);
    }
  }
  return hb;
}

// --- parsing ---------------------------------------------------------------

namespace {

std::string describe(std::size_t line, std::size_t column, const std::string& what)
{
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << what;
  return os.str();
}

class WordParser
{
public:
  WordParser(std::string_view text, const std::optional<std::vector<GenSym>>& known,
             std::size_t line)
      : text_(text), known_(known), line_(line)
  {
  }

  Word parse()
  {
    Word w = word();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

private:
  [[noreturn]] void fail(const std::string& what) const
  {
    throw ParseError(what, line_, pos_ + 1);
  }

  void skip_ws()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char ch)
  {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch)
  {
    if (!accept(ch))
      fail(std::string("expected '") + ch + "'");
  }

  Word word()
  {
    Word w = term();
    while (accept('*'))
      w = w * term();
    return w;
  }

  Word term()
  {
    Word a = atom();
    if (accept('^'))
      a = a.pow(integer());
    return a;
  }

  Integer integer()
  {
    skip_ws();
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (digits == pos_) {
      pos_ = start;
      fail("expected integer exponent");
    }
    Integer v(std::string(text_.substr(digits, pos_ - digits)));
    return neg ? Integer(-v) : v;
  }

  Word atom()
  {
    skip_ws();
    if (pos_ >= text_.size())
      fail("unexpected end of input");
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Word w = word();
      expect(')');
      return w;
    }
    if (ch == '[') {
      ++pos_;
      Word head = word();
      std::vector<Word> rest;
      while (accept(','))
        rest.push_back(word());
      if (rest.empty())
        fail("commutator needs at least two entries");
      expect(']');
      return left_normed(head, rest);
    }
    if (ch == '1') {
      ++pos_;
      return {};
    }
    if (ch >= 'a' && ch <= 'z') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::islower(static_cast<unsigned char>(text_[pos_])) ||
              std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      GenSym name(text_.substr(start, pos_ - start));
      if (known_ && std::find(known_->begin(), known_->end(), name) == known_->end()) {
        pos_ = start;
        fail("unknown generator '" + name + "'");
      }
      return Word::generator(name);
    }
    fail("unexpected character '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  const std::optional<std::vector<GenSym>>& known_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(describe(line, column, what)), line_(line), column_(column)
{
}

Word parse_word(std::string_view text, const std::optional<std::vector<GenSym>>& known,
                std::size_t line)
{
  return WordParser(text, known, line).parse();
}

std::string to_string(const Word& w)
{
  if (w.is_identity())
    return "1";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty())
      out += '*';
    out += l.gen;
    if (l.exp != 1) {
      out += '^';
      out += l.exp.str();
    }
  }
  return out;
}

}  // namespace nilmult
