#include "nilmult/group_expr.hpp"

#include <cctype>
#include <charconv>

namespace nilmult {

namespace {

constexpr std::size_t kMaxModelOrder = 4096;

GenSym fresh_name(std::size_t i)
{
  if (i < 26)
    return std::string(1, static_cast<char>('a' + i));
  return "g" + std::to_string(i);
}

/// Text with its column offset in the original expression.
struct Span
{
  std::string_view text;
  std::size_t column;
};

[[noreturn]] void fail(const std::string& msg, const Span& s)
{
  throw ParseError(msg + " in '" + std::string(s.text) + "'", 1, s.column);
}

Span trim(Span s)
{
  while (!s.text.empty() && std::isspace(static_cast<unsigned char>(s.text.front()))) {
    s.text.remove_prefix(1);
    ++s.column;
  }
  while (!s.text.empty() && std::isspace(static_cast<unsigned char>(s.text.back())))
    s.text.remove_suffix(1);
  return s;
}

std::vector<Span> split_args(const Span& s)
{
  std::vector<Span> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.text.size(); ++i) {
    if (i == s.text.size() || (s.text[i] == ',' && depth == 0)) {
      out.push_back(trim({s.text.substr(start, i - start), s.column + start}));
      start = i + 1;
    } else if (s.text[i] == '(') {
      ++depth;
    } else if (s.text[i] == ')') {
      if (--depth < 0)
        fail("unbalanced ')'", s);
    }
  }
  if (depth != 0)
    fail("unbalanced '('", s);
  return out;
}

long long parse_int(const Span& s)
{
  long long v = 0;
  const char* first = s.text.data();
  const char* last = first + s.text.size();
  if (*first == '+')
    ++first;
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last || s.text.empty())
    fail("expected an integer", s);
  return v;
}

std::shared_ptr<const FiniteGroup> renamed_model(const std::shared_ptr<const FiniteGroup>& m,
                                                 const std::vector<GenSym>& names)
{
  if (!m)
    return nullptr;
  auto out = std::make_shared<FiniteGroup>(*m);
  out->set_generators(m->generators(), names);
  return out;
}

/// Renames the generators of `e` to fresh names starting at `first`.
GroupExpr::Part relabel(const GroupExpr& e, std::size_t first, std::map<GenSym, GenSym>& names)
{
  std::vector<GenSym> fresh;
  for (std::size_t i = 0; i < e.presentation.generators.size(); ++i) {
    fresh.push_back(fresh_name(first + i));
    names[e.presentation.generators[i]] = fresh.back();
  }
  return {rename(e.presentation, names), renamed_model(e.model, fresh)};
}

GroupExpr parse(Span s, const std::optional<std::string>* action_text);

GroupExpr atom_cyclic(std::size_t n)
{
  GroupExpr e;
  e.kind = GroupExpr::Kind::cyclic;
  e.presentation.generators = {"a"};
  e.presentation.relators = {Word::generator("a").pow(static_cast<long long>(n))};
  e.model = std::make_shared<const FiniteGroup>(cyclic(n, "a"));
  return e;
}

GroupExpr atom_quaternion()
{
  GroupExpr e;
  e.kind = GroupExpr::Kind::quaternion;
  e.presentation = parse_presentation("gens: a, b\nrel: a^4\nrel: a^2*b^-2\nrel: b^-1*a*b*a");
  e.model = std::make_shared<const FiniteGroup>(quaternion("a", "b"));
  return e;
}

std::shared_ptr<const FiniteGroup> semidirect_model(const GroupExpr::Part& a, const GroupExpr::Part& b,
                                                    const ActionSpec& action)
{
  if (!a.model || !b.model || a.model->order() * b.model->order() > kMaxModelOrder)
    return nullptr;
  std::vector<std::vector<Elem>> images;
  for (const auto& bg : b.presentation.generators) {
    std::vector<Elem> row;
    for (const auto& ag : a.presentation.generators)
      row.push_back(a.model->evaluate(action_image(action, bg, ag)));
    images.push_back(std::move(row));
  }
  return std::make_shared<const FiniteGroup>(semidirect(*a.model, *b.model, images));
}

std::shared_ptr<const FiniteGroup> wreath_model(const GroupExpr::Part& a, const GroupExpr::Part& b)
{
  if (!a.model || !b.model)
    return nullptr;
  double size = static_cast<double>(b.model->order());
  for (std::size_t i = 0; i < b.model->order(); ++i)
    size *= static_cast<double>(a.model->order());
  if (size > static_cast<double>(kMaxModelOrder))
    return nullptr;
  return std::make_shared<const FiniteGroup>(standard_wreath(*a.model, *b.model));
}

GroupExpr binary(GroupExpr::Kind kind, const Span& whole, const Span& args_span,
                 const std::optional<std::string>* action_text)
{
  const auto args = split_args(args_span);
  const bool with_k = kind == GroupExpr::Kind::semidirect && args.size() == 3;
  if (args.size() != 2 && !with_k)
    fail("expected two operands", whole);
  const GroupExpr ea = parse(args[0], nullptr);
  const GroupExpr eb = parse(args[1], nullptr);

  GroupExpr e;
  e.kind = kind;
  std::map<GenSym, GenSym> names_a, names_b;
  e.a = relabel(ea, 0, names_a);
  e.b = relabel(eb, ea.presentation.generators.size(), names_b);
  const auto& pa = e.a->presentation;
  const auto& pb = e.b->presentation;

  switch (kind) {
  case GroupExpr::Kind::product:
    e.presentation = semidirect_presentation(pa, pb, {});
    e.model = semidirect_model(*e.a, *e.b, {});
    break;
  case GroupExpr::Kind::semidirect:
    if (with_k) {
      if (pa.generators.size() != 1 || pb.generators.size() != 1)
        fail("semidirect with an exponent needs cyclic operands", whole);
      const long long k = parse_int(args[2]);
      e.action[pb.generators[0]][pa.generators[0]] = Word::generator(pa.generators[0]).pow(k);
    } else {
      if (!action_text || !*action_text)
        fail("semidirect needs an exponent or an action file", whole);
      e.action = parse_action(**action_text, pa, pb);
    }
    e.model = semidirect_model(*e.a, *e.b, e.action);
    e.presentation = semidirect_presentation(pa, pb, e.action);
    break;
  case GroupExpr::Kind::wreath:
    if (!e.b->model)
      fail("wreath product needs a finite top group", whole);
    e.presentation = standard_wreath_presentation(pa, pb, *e.b->model);
    e.model = wreath_model(*e.a, *e.b);
    break;
  case GroupExpr::Kind::free_wreath:
    e.presentation = free_product_presentation(pa, pb);
    if (e.a->model && e.b->model && (e.a->model->order() == 1 || e.b->model->order() == 1))
      e.model = semidirect_model(*e.a, *e.b, {});
    break;
  default:
    break;
  }
  return e;
}

GroupExpr parse(Span s, const std::optional<std::string>* action_text)
{
  s = trim(s);
  if (s.text.empty())
    fail("empty group expression", s);
  if (s.text.front() == '(' && s.text.back() == ')') {
    int depth = 0;
    bool wraps = true;
    for (std::size_t i = 0; i + 1 < s.text.size(); ++i) {
      depth += s.text[i] == '(' ? 1 : s.text[i] == ')' ? -1 : 0;
      if (depth == 0)
        wraps = false;
    }
    if (wraps)
      return parse({s.text.substr(1, s.text.size() - 2), s.column + 1}, action_text);
  }
  if (s.text == "Q8" || s.text == "quaternion")
    return atom_quaternion();
  if (s.text.front() == 'Z' && s.text.find(':') == std::string_view::npos) {
    const long long n = parse_int({s.text.substr(1), s.column + 1});
    if (n < 1 || static_cast<std::size_t>(n) > kMaxModelOrder)
      fail("cyclic order out of range", s);
    return atom_cyclic(static_cast<std::size_t>(n));
  }
  const auto colon = s.text.find(':');
  if (colon == std::string_view::npos)
    fail("unknown group expression", s);
  const std::string_view head = s.text.substr(0, colon);
  const Span rest{s.text.substr(colon + 1), s.column + colon + 1};
  if (head == "dihedral") {
    const long long n = parse_int(trim(rest));
    if (n < 1 || 2 * static_cast<std::size_t>(n) > kMaxModelOrder)
      fail("dihedral degree out of range", s);
    GroupExpr e;
    e.kind = GroupExpr::Kind::dihedral;
    std::map<GenSym, GenSym> na, nb;
    e.a = relabel(atom_cyclic(static_cast<std::size_t>(n)), 0, na);
    e.b = relabel(atom_cyclic(2), 1, nb);
    e.action["b"]["a"] = Word::generator("a").inverse();
    e.presentation = semidirect_presentation(e.a->presentation, e.b->presentation, e.action);
    e.model = semidirect_model(*e.a, *e.b, e.action);
    return e;
  }
  GroupExpr::Kind kind;
  if (head == "product")
    kind = GroupExpr::Kind::product;
  else if (head == "semidirect")
    kind = GroupExpr::Kind::semidirect;
  else if (head == "wreath")
    kind = GroupExpr::Kind::wreath;
  else if (head == "freewreath")
    kind = GroupExpr::Kind::free_wreath;
  else
    fail("unknown construction '" + std::string(head) + "'", s);
  return binary(kind, s, rest, action_text);
}

}  // namespace

GroupExpr parse_group_expr(std::string_view text, const std::optional<std::string>& action_text)
{
  GroupExpr e = parse({text, 1}, &action_text);
  e.text = std::string(text);
  return e;
}

}  // namespace nilmult
