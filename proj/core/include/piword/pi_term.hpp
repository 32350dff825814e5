#ifndef PIWORD_PI_TERM_HPP
#define PIWORD_PI_TERM_HPP

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "piword/errors.hpp"

namespace piword {

// Letters range over 'a'..'z' at the surface.
using Letter = char;

inline bool is_surface_letter(char c) { return c >= 'a' && c <= 'z'; }

// Finite words are plain strings; positions are 0-based indices internally.
using Word = std::string;

struct PiTerm;
using PiTermPtr = std::shared_ptr<const PiTerm>;

// A term of the free algebra with associative concatenation and a unary
// power operation. Concatenations are kept flat (no Concat directly inside
// another Concat) and terms are never empty.
struct PiTerm {
  enum class Kind { Leaf, Concat, Power };

  Kind kind;
  Letter letter = 0;               // Leaf
  std::vector<PiTermPtr> parts;    // Concat, size >= 2
  PiTermPtr inner;                 // Power

  bool operator==(const PiTerm& other) const;
};

PiTermPtr make_letter(Letter c);
PiTermPtr make_concat(std::vector<PiTermPtr> parts);
PiTermPtr make_power(PiTermPtr inner);

// Grammar: term := factor+ (juxtaposition); factor := (letter | '(' term ')')
// followed by any number of '^w' / '^pi' postfix powers. Whitespace between
// factors is ignored; power binds tighter than concatenation.
PiTermPtr parse_pi_term(const std::string& text);

std::string render_pi_term(const PiTerm& t);
inline std::string render_pi_term(const PiTermPtr& t) { return render_pi_term(*t); }

std::set<Letter> letters_of(const PiTerm& t);

std::size_t node_count(const PiTerm& t);
std::size_t power_nesting_depth(const PiTerm& t);

// Structural fold: the unique morphism from terms into any carrier equipped
// with a binary concat and a unary power, fixing the images of letters.
template <class V, class LeafF, class CatF, class PowF>
V fold_term(const PiTerm& t, LeafF&& leaf, CatF&& cat, PowF&& pow) {
  switch (t.kind) {
    case PiTerm::Kind::Leaf:
      return leaf(t.letter);
    case PiTerm::Kind::Concat: {
      V acc = fold_term<V>(*t.parts[0], leaf, cat, pow);
      for (std::size_t i = 1; i < t.parts.size(); ++i)
        acc = cat(std::move(acc), fold_term<V>(*t.parts[i], leaf, cat, pow));
      return acc;
    }
    case PiTerm::Kind::Power:
      return pow(fold_term<V>(*t.inner, leaf, cat, pow));
  }
  throw ValidationError("corrupt term node");
}

// Instantiates every power as an m-fold repetition, yielding a finite word.
// Throws ResourceLimitError when the result would exceed max_len.
Word finite_instance(const PiTerm& t, unsigned m, std::size_t max_len = 1000000);
inline Word finite_instance(const PiTermPtr& t, unsigned m, std::size_t max_len = 1000000) {
  return finite_instance(*t, m, max_len);
}

}  // namespace piword

#endif  // PIWORD_PI_TERM_HPP
