#include "piword/pi_term.hpp"

#include <algorithm>

namespace piword {

bool PiTerm::operator==(const PiTerm& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Leaf:
      return letter == other.letter;
    case Kind::Power:
      return *inner == *other.inner;
    case Kind::Concat: {
      if (parts.size() != other.parts.size()) return false;
      for (std::size_t i = 0; i < parts.size(); ++i)
        if (!(*parts[i] == *other.parts[i])) return false;
      return true;
    }
  }
  return false;
}

PiTermPtr make_letter(Letter c) {
  if (!is_surface_letter(c))
    throw ValidationError(std::string("letter out of range: '") + c + "'");
  auto t = std::make_shared<PiTerm>();
  t->kind = PiTerm::Kind::Leaf;
  t->letter = c;
  return t;
}

PiTermPtr make_concat(std::vector<PiTermPtr> parts) {
  std::vector<PiTermPtr> flat;
  for (auto& p : parts) {
    if (!p) throw ValidationError("null term part");
    if (p->kind == PiTerm::Kind::Concat)
      flat.insert(flat.end(), p->parts.begin(), p->parts.end());
    else
      flat.push_back(p);
  }
  if (flat.empty()) throw ValidationError("empty concatenation: terms are nonempty");
  if (flat.size() == 1) return flat[0];
  auto t = std::make_shared<PiTerm>();
  t->kind = PiTerm::Kind::Concat;
  t->parts = std::move(flat);
  return t;
}

PiTermPtr make_power(PiTermPtr inner) {
  if (!inner) throw ValidationError("null power body");
  auto t = std::make_shared<PiTerm>();
  t->kind = PiTerm::Kind::Power;
  t->inner = std::move(inner);
  return t;
}

namespace {

struct TermParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit TermParser(const std::string& s) : text(s) {}

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n'))
      ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  PiTermPtr parse_term() {
    std::vector<PiTermPtr> factors;
    while (!at_end() && peek() != ')') factors.push_back(parse_factor());
    if (factors.empty()) throw ParseError("empty term", pos);
    return make_concat(std::move(factors));
  }

  PiTermPtr parse_factor() {
    PiTermPtr base;
    char c = peek();
    if (c == '(') {
      ++pos;
      base = parse_term();
      if (peek() != ')') throw ParseError("expected ')'", pos);
      ++pos;
    } else if (is_surface_letter(c)) {
      ++pos;
      base = make_letter(c);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
    while (peek() == '^') {
      ++pos;
      skip_ws();
      if (pos < text.size() && text[pos] == 'w') {
        ++pos;
      } else if (pos + 1 < text.size() && text[pos] == 'p' && text[pos + 1] == 'i') {
        pos += 2;
      } else {
        throw ParseError("expected 'w' or 'pi' after '^'", pos);
      }
      base = make_power(std::move(base));
    }
    return base;
  }
};

void render(const PiTerm& t, std::string& out) {
  switch (t.kind) {
    case PiTerm::Kind::Leaf:
      out += t.letter;
      return;
    case PiTerm::Kind::Concat:
      for (const auto& p : t.parts) render(*p, out);
      return;
    case PiTerm::Kind::Power:
      if (t.inner->kind == PiTerm::Kind::Concat) {
        out += '(';
        render(*t.inner, out);
        out += ')';
      } else {
        render(*t.inner, out);
      }
      out += "^w";
      return;
  }
}

}  // namespace

PiTermPtr parse_pi_term(const std::string& text) {
  TermParser p(text);
  PiTermPtr t = p.parse_term();
  if (!p.at_end()) throw ParseError("trailing input after term", p.pos);
  return t;
}

std::string render_pi_term(const PiTerm& t) {
  std::string out;
  render(t, out);
  return out;
}

std::set<Letter> letters_of(const PiTerm& t) {
  std::set<Letter> out;
  fold_term<int>(
      t,
      [&](Letter c) {
        out.insert(c);
        return 0;
      },
      [](int, int) { return 0; }, [](int) { return 0; });
  return out;
}

std::size_t node_count(const PiTerm& t) {
  switch (t.kind) {
    case PiTerm::Kind::Leaf:
      return 1;
    case PiTerm::Kind::Power:
      return 1 + node_count(*t.inner);
    case PiTerm::Kind::Concat: {
      std::size_t n = 1;
      for (const auto& p : t.parts) n += node_count(*p);
      return n;
    }
  }
  return 0;
}

std::size_t power_nesting_depth(const PiTerm& t) {
  switch (t.kind) {
    case PiTerm::Kind::Leaf:
      return 0;
    case PiTerm::Kind::Power:
      return 1 + power_nesting_depth(*t.inner);
    case PiTerm::Kind::Concat: {
      std::size_t d = 0;
      for (const auto& p : t.parts) d = std::max(d, power_nesting_depth(*p));
      return d;
    }
  }
  return 0;
}

Word finite_instance(const PiTerm& t, unsigned m, std::size_t max_len) {
  if (m < 1) throw ValidationError("power instantiation requires m >= 1");
  auto guard = [max_len](const Word& w) {
    if (w.size() > max_len)
      throw ResourceLimitError("finite instance exceeds length bound " +
                               std::to_string(max_len));
  };
  return fold_term<Word>(
      t, [](Letter c) { return Word(1, c); },
      [&](Word a, Word b) {
        a += b;
        guard(a);
        return a;
      },
      [&](Word w) {
        Word out;
        out.reserve(w.size() * m);
        for (unsigned i = 0; i < m; ++i) out += w;
        guard(out);
        return out;
      });
}

}  // namespace piword
