#include "piword/monoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace piword {

void validate(const FiniteMonoid& m) {
  const int n = m.size();
  if (n < 1) throw ValidationError("monoid must have at least one element");
  if (m.identity < 0 || m.identity >= n) throw ValidationError("identity index out of range");
  if (m.table.size() != static_cast<std::size_t>(n) * n)
    throw ValidationError("multiplication table has wrong shape");
  for (int v : m.table)
    if (v < 0 || v >= n) throw ValidationError("table entry out of range");
  {
    std::set<std::string> seen(m.elements.begin(), m.elements.end());
    if (static_cast<int>(seen.size()) != n)
      throw ValidationError("element names are not distinct");
  }
  const int e = m.identity;
  for (int x = 0; x < n; ++x) {
    if (m.mul(e, x) != x)
      throw ValidationError("identity law fails: " + m.elements[e] + "*" + m.elements[x] +
                            " != " + m.elements[x]);
    if (m.mul(x, e) != x)
      throw ValidationError("identity law fails: " + m.elements[x] + "*" + m.elements[e] +
                            " != " + m.elements[x]);
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z)))
          throw ValidationError("associativity fails on triple (" + m.elements[x] + "," +
                                m.elements[y] + "," + m.elements[z] + ")");
}

namespace {

// Pre-period and cycle length of the sequence u, u^2, u^3, ...
struct PowerShape {
  unsigned preperiod;  // least p >= 1 with u^p inside the cycle
  unsigned cycle;
};

PowerShape power_shape(const FiniteMonoid& m, int u) {
  std::map<int, unsigned> seen;  // element -> exponent of first occurrence
  int p = u;
  unsigned k = 1;
  while (!seen.count(p)) {
    seen[p] = k;
    p = m.mul(p, u);
    ++k;
  }
  unsigned first = seen[p];
  return {first, k - first};
}

}  // namespace

unsigned idempotency_exponent(const FiniteMonoid& m) {
  unsigned lcm_cycles = 1;
  unsigned max_pre = 1;
  for (int u = 0; u < m.size(); ++u) {
    PowerShape s = power_shape(m, u);
    lcm_cycles = std::lcm(lcm_cycles, s.cycle);
    max_pre = std::max(max_pre, s.preperiod);
  }
  unsigned k = lcm_cycles;
  while (k < max_pre) k += lcm_cycles;
  return k;
}

int pi_power(const FiniteMonoid& m, int u) {
  int p = u;
  for (int steps = 0; steps <= 2 * m.size(); ++steps) {
    if (m.mul(p, p) == p) return p;
    p = m.mul(p, u);
  }
  throw ValidationError("no idempotent power found; table is not a monoid");
}

int eval_term(const FiniteMonoid& m, const PiTerm& t, const Assignment& h) {
  return fold_term<int>(
      t,
      [&](Letter c) {
        auto it = h.find(c);
        if (it == h.end())
          throw ValidationError(std::string("letter '") + c + "' is not assigned");
        if (it->second < 0 || it->second >= m.size())
          throw ValidationError(std::string("assignment of '") + c + "' out of range");
        return it->second;
      },
      [&](int a, int b) { return m.mul(a, b); }, [&](int u) { return pi_power(m, u); });
}

IdentityCheck identity_holds(const FiniteMonoid& m, const PiTerm& s, const PiTerm& t,
                             std::size_t max_assignments) {
  std::set<Letter> ls = letters_of(s);
  std::set<Letter> lt = letters_of(t);
  std::vector<Letter> letters(ls.begin(), ls.end());
  for (Letter c : lt)
    if (!ls.count(c)) letters.push_back(c);
  std::sort(letters.begin(), letters.end());

  const std::size_t n = static_cast<std::size_t>(m.size());
  std::size_t total = 1;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (total > max_assignments / n + 1)
      throw ResourceLimitError("assignment space exceeds bound " +
                               std::to_string(max_assignments));
    total *= n;
  }
  if (total > max_assignments)
    throw ResourceLimitError("assignment space exceeds bound " + std::to_string(max_assignments));

  std::vector<int> digits(letters.size(), 0);
  Assignment h;
  for (std::size_t idx = 0;; ++idx) {
    h.clear();
    for (std::size_t i = 0; i < letters.size(); ++i) h[letters[i]] = digits[i];
    if (eval_term(m, s, h) != eval_term(m, t, h)) return {false, h};
    // next mixed-radix assignment
    std::size_t i = 0;
    while (i < digits.size()) {
      if (++digits[i] < m.size()) break;
      digits[i] = 0;
      ++i;
    }
    if (i == digits.size()) break;
    if (digits.empty()) break;
  }
  return {true, std::nullopt};
}

bool is_aperiodic(const FiniteMonoid& m) {
  auto a = make_letter('a');
  auto lhs = make_concat({make_power(a), a});
  auto rhs = make_power(a);
  return identity_holds(m, *lhs, *rhs).holds;
}

bool in_DA(const FiniteMonoid& m, std::size_t max_assignments) {
  auto abc = make_concat({make_letter('a'), make_letter('b'), make_letter('c')});
  auto p = make_power(abc);
  auto lhs = make_concat({p, make_letter('b'), p});
  return identity_holds(m, *lhs, *p, max_assignments).holds;
}

}  // namespace piword
