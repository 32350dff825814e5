#ifndef PIWORD_MONOID_ENUM_HPP
#define PIWORD_MONOID_ENUM_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "piword/monoid.hpp"

namespace piword {

struct EnumOptions {
  bool aperiodic_only = false;
  bool up_to_iso = true;
  int max_order = 5;  // hard cap on the search; orders beyond this refuse
};

// All monoids of the given order with element 0 as identity, in a fixed
// deterministic order (lexicographic by flattened table). With up_to_iso,
// exactly one representative per isomorphism class is produced: the table
// that is lexicographically minimal among all relabelings fixing 0.
std::vector<FiniteMonoid> enumerate_monoids(int order, const EnumOptions& opts = {});

// Streaming variant; the callback returns false to stop early.
void enumerate_monoids(int order, const EnumOptions& opts,
                       const std::function<bool(const FiniteMonoid&)>& sink);

struct Counterexample {
  FiniteMonoid monoid;
  Assignment witness;
};

struct CounterexampleOptions {
  int max_order = 4;                       // exhaustive search up to this order
  std::span<const FiniteMonoid> fixtures;  // scanned after the enumeration, in order
  std::size_t max_assignments = 10000000;
};

// Searches for an aperiodic monoid violating s = t, first among all
// enumerated aperiodic monoids of order <= max_order, then among the given
// fixtures (non-aperiodic fixtures are skipped). An empty result is not a
// proof that the identity holds.
std::optional<Counterexample> find_counterexample(const PiTerm& s, const PiTerm& t,
                                                  const CounterexampleOptions& opts);

}  // namespace piword

#endif  // PIWORD_MONOID_ENUM_HPP
