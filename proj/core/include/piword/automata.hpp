#ifndef PIWORD_AUTOMATA_HPP
#define PIWORD_AUTOMATA_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "piword/monoid.hpp"
#include "piword/pi_term.hpp"

namespace piword {

// Complete deterministic finite automaton. delta[s][k] is the successor of
// state s on alphabet[k].
struct Dfa {
  std::vector<Letter> alphabet;  // sorted, distinct
  std::vector<std::string> states;
  int initial = 0;
  std::set<int> finals;
  std::vector<std::vector<int>> delta;

  int letter_index(Letter c) const;
  int step(int state, Letter c) const { return delta[state][letter_index(c)]; }
};

void validate(const Dfa& d);

bool accepts(const Dfa& d, const Word& w);

// Language-equivalent minimal DFA: unreachable states dropped, equivalent
// states merged, states renamed q0,q1,... in BFS order from the initial
// state (so the result is a canonical representative).
Dfa minimize(const Dfa& d);

// Letter images of a morphism from words over `alphabet` into a monoid.
struct MonoidMorphism {
  std::vector<Letter> alphabet;
  std::map<Letter, int> letter_image;

  int image(const FiniteMonoid& m, const Word& w) const;
};

// Monoid of state transformations generated by the letters, with function
// composition as product and the identity transformation as unit. Elements
// are named by a shortest generating word ("1" for the identity).
std::pair<FiniteMonoid, MonoidMorphism> transition_monoid(const Dfa& d,
                                                          std::size_t max_order = 100000);

// Transition monoid of the minimal DFA.
std::pair<FiniteMonoid, MonoidMorphism> syntactic_monoid(const Dfa& d,
                                                         std::size_t max_order = 100000);

// u and v have the same image in the syntactic monoid, i.e. they are
// interchangeable in every context.
bool syntactic_equivalent(const Dfa& d, const Word& u, const Word& v);

// JSON format: {"alphabet":[...], "states":[...], "initial":str,
// "finals":[...], "delta":{state:{letter:state}}}
std::string dfa_to_json(const Dfa& d);
Dfa dfa_from_json(const std::string& text);
Dfa load_dfa_file(const std::string& path);

// Regex surface: letters a-z, juxtaposition, '|', '*', parentheses,
// '0' for the empty language, '1' for the empty word. The automaton is
// built over the letters occurring in the pattern (plus extra_alphabet);
// patterns without letters default to alphabet {a}.
Dfa regex_to_dfa(const std::string& pattern, const std::string& extra_alphabet = "");

}  // namespace piword

#endif  // PIWORD_AUTOMATA_HPP
