#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "piword/automata.hpp"

// Regex ingestion via Brzozowski derivatives. Regexes are kept in a light
// normal form (flattened sorted alternations, flattened concatenations,
// collapsed stars and constants) so the derivative process reaches finitely
// many states.

namespace piword {

namespace {

struct Re;
using RePtr = std::shared_ptr<Re>;

struct Re {
  enum class Kind { None, Eps, Lit, Cat, Alt, Star };
  Kind kind;
  char lit = 0;
  std::vector<RePtr> kids;
};

RePtr mk(Re::Kind k) {
  auto r = std::make_shared<Re>();
  r->kind = k;
  return r;
}

const RePtr kNone = mk(Re::Kind::None);
const RePtr kEps = mk(Re::Kind::Eps);

// total structural order, used to sort alternations
int cmp(const RePtr& a, const RePtr& b) {
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->kind == Re::Kind::Lit) return a->lit == b->lit ? 0 : (a->lit < b->lit ? -1 : 1);
  if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (int c = cmp(a->kids[i], b->kids[i])) return c;
  return 0;
}

RePtr lit(char c) {
  auto r = mk(Re::Kind::Lit);
  r->lit = c;
  return r;
}

RePtr cat(RePtr a, RePtr b) {
  if (a->kind == Re::Kind::None || b->kind == Re::Kind::None) return kNone;
  if (a->kind == Re::Kind::Eps) return b;
  if (b->kind == Re::Kind::Eps) return a;
  auto r = mk(Re::Kind::Cat);
  if (a->kind == Re::Kind::Cat)
    r->kids = a->kids;
  else
    r->kids.push_back(a);
  if (b->kind == Re::Kind::Cat)
    r->kids.insert(r->kids.end(), b->kids.begin(), b->kids.end());
  else
    r->kids.push_back(b);
  return r;
}

RePtr alt(RePtr a, RePtr b) {
  std::vector<RePtr> kids;
  auto push = [&](const RePtr& x) {
    if (x->kind == Re::Kind::None) return;
    if (x->kind == Re::Kind::Alt)
      kids.insert(kids.end(), x->kids.begin(), x->kids.end());
    else
      kids.push_back(x);
  };
  push(a);
  push(b);
  std::sort(kids.begin(), kids.end(), [](const RePtr& x, const RePtr& y) { return cmp(x, y) < 0; });
  kids.erase(std::unique(kids.begin(), kids.end(),
                         [](const RePtr& x, const RePtr& y) { return cmp(x, y) == 0; }),
             kids.end());
  if (kids.empty()) return kNone;
  if (kids.size() == 1) return kids[0];
  auto r = mk(Re::Kind::Alt);
  r->kids = std::move(kids);
  return r;
}

RePtr star(RePtr a) {
  if (a->kind == Re::Kind::None || a->kind == Re::Kind::Eps) return kEps;
  if (a->kind == Re::Kind::Star) return a;
  auto r = mk(Re::Kind::Star);
  r->kids.push_back(a);
  return r;
}

bool nullable(const RePtr& r) {
  switch (r->kind) {
    case Re::Kind::None:
      return false;
    case Re::Kind::Eps:
    case Re::Kind::Star:
      return true;
    case Re::Kind::Lit:
      return false;
    case Re::Kind::Cat:
      for (const auto& k : r->kids)
        if (!nullable(k)) return false;
      return true;
    case Re::Kind::Alt:
      for (const auto& k : r->kids)
        if (nullable(k)) return true;
      return false;
  }
  return false;
}

RePtr derivative(const RePtr& r, char c) {
  switch (r->kind) {
    case Re::Kind::None:
    case Re::Kind::Eps:
      return kNone;
    case Re::Kind::Lit:
      return r->lit == c ? kEps : kNone;
    case Re::Kind::Star:
      return cat(derivative(r->kids[0], c), r);
    case Re::Kind::Alt: {
      RePtr acc = kNone;
      for (const auto& k : r->kids) acc = alt(acc, derivative(k, c));
      return acc;
    }
    case Re::Kind::Cat: {
      // d(k0 k1..kn) = d(k0) k1..kn  |  [k0 nullable] d(k1..kn)
      RePtr rest = kEps;
      for (std::size_t i = 1; i < r->kids.size(); ++i) rest = cat(rest, r->kids[i]);
      RePtr first = cat(derivative(r->kids[0], c), rest);
      if (nullable(r->kids[0])) return alt(first, derivative(rest, c));
      return first;
    }
  }
  return kNone;
}

struct RegexParser {
  const std::string& text;
  std::size_t pos = 0;
  std::set<char>& letters;

  RegexParser(const std::string& t, std::set<char>& ls) : text(t), letters(ls) {}

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  RePtr parse_alt() {
    RePtr r = parse_cat();
    while (peek() == '|') {
      ++pos;
      r = alt(r, parse_cat());
    }
    return r;
  }

  RePtr parse_cat() {
    RePtr r = kEps;
    while (true) {
      char c = peek();
      if (c == '\0' || c == ')' || c == '|') break;
      r = cat(r, parse_post());
    }
    return r;
  }

  RePtr parse_post() {
    RePtr r = parse_atom();
    while (peek() == '*') {
      ++pos;
      r = star(r);
    }
    return r;
  }

  RePtr parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      RePtr r = parse_alt();
      if (peek() != ')') throw ParseError("expected ')'", pos);
      ++pos;
      return r;
    }
    if (c == '0') {
      ++pos;
      return kNone;
    }
    if (c == '1') {
      ++pos;
      return kEps;
    }
    if (is_surface_letter(c)) {
      ++pos;
      letters.insert(c);
      return lit(c);
    }
    throw ParseError(std::string("unexpected character '") + c + "' in regex", pos);
  }
};

struct ReLess {
  bool operator()(const RePtr& a, const RePtr& b) const { return cmp(a, b) < 0; }
};

}  // namespace

Dfa regex_to_dfa(const std::string& pattern, const std::string& extra_alphabet) {
  std::set<char> letters;
  for (char c : extra_alphabet) {
    if (!is_surface_letter(c))
      throw ParseError(std::string("alphabet letter out of range: '") + c + "'");
    letters.insert(c);
  }
  RegexParser p(pattern, letters);
  RePtr root = p.parse_alt();
  if (p.pos != pattern.size()) throw ParseError("trailing input after regex", p.pos);
  if (letters.empty()) letters.insert('a');

  Dfa d;
  d.alphabet.assign(letters.begin(), letters.end());

  std::map<RePtr, int, ReLess> index;
  std::vector<RePtr> states;
  auto add = [&](const RePtr& r) {
    auto [it, fresh] = index.emplace(r, static_cast<int>(states.size()));
    if (fresh) {
      states.push_back(r);
      if (states.size() > 10000)
        throw ResourceLimitError("regex DFA exceeds state bound 10000");
    }
    return it->second;
  };

  add(root);
  for (std::size_t s = 0; s < states.size(); ++s) {
    std::vector<int> row;
    for (char c : d.alphabet) row.push_back(add(derivative(states[s], c)));
    d.delta.push_back(std::move(row));
    if (nullable(states[s])) d.finals.insert(static_cast<int>(s));
  }
  d.initial = 0;
  for (std::size_t s = 0; s < states.size(); ++s) d.states.push_back("r" + std::to_string(s));
  validate(d);
  return d;
}

}  // namespace piword
