#ifndef PIWORD_MONOID_HPP
#define PIWORD_MONOID_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "piword/pi_term.hpp"

namespace piword {

// A finite monoid given by its multiplication table. Element i is named
// elements[i]; table[i*n+j] is the index of (element i) * (element j).
struct FiniteMonoid {
  std::string name;
  std::vector<std::string> elements;
  int identity = 0;
  std::vector<int> table;

  int size() const { return static_cast<int>(elements.size()); }
  int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * elements.size() + b]; }
};

// Letter-to-element map; the domain is whatever letters the caller assigned.
using Assignment = std::map<Letter, int>;

// Checks shape, the identity law and associativity exhaustively. Throws
// ValidationError naming the first offending element or triple.
void validate(const FiniteMonoid& m);

// Least k >= 1 such that u^k is idempotent for every element u. Computed from
// the cycle structure of the power sequences: the lcm of all cycle lengths,
// raised to the least multiple that clears every pre-period.
unsigned idempotency_exponent(const FiniteMonoid& m);

// The unique idempotent among the powers u, u^2, u^3, ...
int pi_power(const FiniteMonoid& m, int u);

// Image of t under the morphism determined by h, with powers interpreted as
// idempotent powers. Throws ValidationError on letters missing from h.
int eval_term(const FiniteMonoid& m, const PiTerm& t, const Assignment& h);

struct IdentityCheck {
  bool holds = false;
  std::optional<Assignment> witness;  // a violating assignment when !holds
};

// Does every assignment of the letters of s and t into m give equal values?
// Throws ResourceLimitError when |m|^#letters exceeds max_assignments.
IdentityCheck identity_holds(const FiniteMonoid& m, const PiTerm& s, const PiTerm& t,
                             std::size_t max_assignments = 10000000);

// a^w a = a^w; equivalently, no element generates a nontrivial cyclic group.
bool is_aperiodic(const FiniteMonoid& m);

// (abc)^w b (abc)^w = (abc)^w.
bool in_DA(const FiniteMonoid& m, std::size_t max_assignments = 10000000);

}  // namespace piword

#endif  // PIWORD_MONOID_HPP
