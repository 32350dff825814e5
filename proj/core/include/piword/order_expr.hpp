#ifndef PIWORD_ORDER_EXPR_HPP
#define PIWORD_ORDER_EXPR_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "piword/pi_term.hpp"

namespace piword {

struct OrderExpr;
using OrderExprPtr = std::shared_ptr<const OrderExpr>;

// Expression denoting a countable labeled linear order:
//   Fin(w)      a finite word
//   Cat(e...)   concatenation (kept flat, no empty factors)
//   Om(e)       omega-power: e e e ... indexed by the naturals
//   OmStar(e)   omega*-power: ... e e e indexed by the negated naturals
//   Shuf{e...}  dense shuffle of a finite member set (deduplicated, sorted)
struct OrderExpr {
  enum class Kind { Fin, Cat, Om, OmStar, Shuf };

  Kind kind;
  std::string word;                // Fin
  std::vector<OrderExprPtr> kids;  // Cat parts (>= 2) or Shuf members (>= 1)
  std::size_t hash = 0;

  const OrderExprPtr& child() const { return kids[0]; }  // Om / OmStar
};

bool expr_equal(const OrderExpr& a, const OrderExpr& b);
// Total structural order; fixes the printing order of shuffle members and
// the preferred rotation of power bodies.
int expr_cmp(const OrderExpr& a, const OrderExpr& b);

// Structure-preserving builders. They maintain representation invariants
// (flat concatenations, no empty factor, merged adjacent finite words,
// sorted deduplicated shuffle members) but perform no other rewriting.
OrderExprPtr oe_fin(const std::string& w);
OrderExprPtr oe_cat(std::vector<OrderExprPtr> parts);
OrderExprPtr oe_om(OrderExprPtr e);
OrderExprPtr oe_omstar(OrderExprPtr e);
OrderExprPtr oe_shuf(std::vector<OrderExprPtr> members);

bool is_empty_word(const OrderExpr& e);

// Isomorphism-invariant fingerprint, computed structurally.
struct IsoInvariants {
  std::set<Letter> alphabet;
  bool is_empty = false;
  bool is_finite = false;
  bool has_first = false;
  bool has_last = false;
  std::optional<Letter> first_label;
  std::optional<Letter> last_label;

  bool operator==(const IsoInvariants&) const = default;
};

IsoInvariants invariants_of(const OrderExpr& e);
inline IsoInvariants invariants_of(const OrderExprPtr& e) { return invariants_of(*e); }

struct OrderLimits {
  std::size_t max_nodes = 2000000;  // expansion size / rewriting budget
};

// Interprets a term as a countable word: letters become one-position words,
// concatenation is inherited, and each power expands through
//   u^pi  ->  u^om  (u^om* u^om)^eta  u^om*
// whose denotation is the rho-power of u (rho = om + zeta*eta + om*).
OrderExprPtr rho_expand(const PiTerm& t, const OrderLimits& limits = {});
inline OrderExprPtr rho_expand(const PiTermPtr& t, const OrderLimits& limits = {}) {
  return rho_expand(*t, limits);
}

// Canonical representative of the isomorphism class of the denoted word,
// computed by local rewriting to fixpoint (rotation and root normalization
// of omega-powers, seam alignment of om*/om pairs, absorption of shuffle
// separators, dissolution of redundant shuffle members). Idempotent.
OrderExprPtr canonical_form(const OrderExprPtr& e, const OrderLimits& limits = {});

// Isomorphism of the denoted labeled linear orders.
bool iso(const OrderExprPtr& a, const OrderExprPtr& b, const OrderLimits& limits = {});

enum class Verdict { Holds, Fails };

// Does s = t hold in every finite aperiodic monoid? Decided by comparing the
// canonical forms of the rho-interpretations of both terms.
Verdict decide_aperiodic_identity(const PiTerm& s, const PiTerm& t,
                                  const OrderLimits& limits = {});

std::string to_string(const OrderExpr& e);
inline std::string to_string(const OrderExprPtr& e) { return to_string(*e); }

// Tree size counting shared subexpressions with multiplicity.
std::size_t tree_size(const OrderExpr& e);
inline std::size_t tree_size(const OrderExprPtr& e) { return tree_size(*e); }

}  // namespace piword

#endif  // PIWORD_ORDER_EXPR_HPP
