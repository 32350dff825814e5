#include "piword/order_expr.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

// Canonicalization of regular-word expressions.
//
// The rewriting system, applied bottom-up and iterated to fixpoint:
//   - concatenation is kept flat with adjacent finite words merged;
//   - u u^om -> u^om and u^om* u -> u^om*, at single-factor granularity, so
//     x (y x)^om -> (x y)^om and its dual come out of repeated absorption;
//   - omega and omega* bodies are reduced to their primitive root
//     ((x^n)^om -> x^om), and a body rotation that simplifies is pulled out
//     through u^om = p (rot u)^om;
//   - an adjacent pair v^om* v^om (equal bodies) denotes a zeta-block whose
//     chunking window may slide, so the pair is rotated to the least body;
//     unequal bodies are aligned atom by atom while their edges agree;
//   - a shuffle S = sh(X) absorbs neighborhoods of the form S x1 S x2 ... S
//     with x_i in X (S x S = S, S S = S), omega/omega* powers of such
//     patterns collapse to S or S-bordered concatenations, and a shuffle
//     whose members all dissolve over some member shuffle S collapses to S.
//
// Soundness of each rule is a property of countable words; completeness on
// the reachable expression corpus is enforced by the test suites.

namespace piword {

namespace {

std::size_t hash_combine(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t node_hash(OrderExpr::Kind kind, const std::string& word,
                      const std::vector<OrderExprPtr>& kids) {
  std::size_t h = static_cast<std::size_t>(kind) + 1;
  h = hash_combine(h, std::hash<std::string>{}(word));
  for (const auto& k : kids) h = hash_combine(h, k->hash);
  return h;
}

OrderExprPtr make_node(OrderExpr::Kind kind, std::string word, std::vector<OrderExprPtr> kids) {
  auto n = std::make_shared<OrderExpr>();
  n->kind = kind;
  n->word = std::move(word);
  n->kids = std::move(kids);
  n->hash = node_hash(n->kind, n->word, n->kids);
  return n;
}

}  // namespace

bool expr_equal(const OrderExpr& a, const OrderExpr& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.hash != b.hash) return false;
  if (a.word != b.word) return false;
  if (a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!expr_equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

int expr_cmp(const OrderExpr& a, const OrderExpr& b) {
  if (&a == &b) return 0;
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.word.compare(b.word)) return c < 0 ? -1 : 1;
  if (a.kids.size() != b.kids.size()) return a.kids.size() < b.kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (int c = expr_cmp(*a.kids[i], *b.kids[i])) return c;
  return 0;
}

bool is_empty_word(const OrderExpr& e) {
  return e.kind == OrderExpr::Kind::Fin && e.word.empty();
}

OrderExprPtr oe_fin(const std::string& w) {
  for (char c : w)
    if (!is_surface_letter(c))
      throw ValidationError(std::string("letter out of range: '") + c + "'");
  return make_node(OrderExpr::Kind::Fin, w, {});
}

OrderExprPtr oe_cat(std::vector<OrderExprPtr> parts) {
  std::vector<OrderExprPtr> flat;
  for (auto& p : parts) {
    if (!p) throw ValidationError("null order expression");
    if (is_empty_word(*p)) continue;
    if (p->kind == OrderExpr::Kind::Cat)
      flat.insert(flat.end(), p->kids.begin(), p->kids.end());
    else
      flat.push_back(p);
  }
  // merge adjacent finite words
  std::vector<OrderExprPtr> merged;
  for (auto& p : flat) {
    if (!merged.empty() && merged.back()->kind == OrderExpr::Kind::Fin &&
        p->kind == OrderExpr::Kind::Fin)
      merged.back() = oe_fin(merged.back()->word + p->word);
    else
      merged.push_back(p);
  }
  if (merged.empty()) return oe_fin("");
  if (merged.size() == 1) return merged[0];
  return make_node(OrderExpr::Kind::Cat, "", std::move(merged));
}

OrderExprPtr oe_om(OrderExprPtr e) {
  if (!e) throw ValidationError("null order expression");
  if (is_empty_word(*e)) return e;
  return make_node(OrderExpr::Kind::Om, "", {std::move(e)});
}

OrderExprPtr oe_omstar(OrderExprPtr e) {
  if (!e) throw ValidationError("null order expression");
  if (is_empty_word(*e)) return e;
  return make_node(OrderExpr::Kind::OmStar, "", {std::move(e)});
}

OrderExprPtr oe_shuf(std::vector<OrderExprPtr> members) {
  std::vector<OrderExprPtr> kept;
  for (auto& m : members) {
    if (!m) throw ValidationError("null order expression");
    if (!is_empty_word(*m)) kept.push_back(m);
  }
  if (kept.empty()) return oe_fin("");
  std::sort(kept.begin(), kept.end(),
            [](const OrderExprPtr& a, const OrderExprPtr& b) { return expr_cmp(*a, *b) < 0; });
  kept.erase(std::unique(kept.begin(), kept.end(),
                         [](const OrderExprPtr& a, const OrderExprPtr& b) {
                           return expr_equal(*a, *b);
                         }),
             kept.end());
  return make_node(OrderExpr::Kind::Shuf, "", std::move(kept));
}

IsoInvariants invariants_of(const OrderExpr& e) {
  IsoInvariants inv;
  switch (e.kind) {
    case OrderExpr::Kind::Fin: {
      inv.is_empty = e.word.empty();
      inv.is_finite = true;
      inv.has_first = inv.has_last = !e.word.empty();
      if (!e.word.empty()) {
        inv.first_label = e.word.front();
        inv.last_label = e.word.back();
        for (char c : e.word) inv.alphabet.insert(c);
      }
      return inv;
    }
    case OrderExpr::Kind::Cat: {
      std::vector<IsoInvariants> ks;
      for (const auto& k : e.kids) ks.push_back(invariants_of(*k));
      inv.is_empty = true;
      inv.is_finite = true;
      for (const auto& k : ks) {
        inv.is_empty = inv.is_empty && k.is_empty;
        inv.is_finite = inv.is_finite && k.is_finite;
        for (char c : k.alphabet) inv.alphabet.insert(c);
      }
      for (const auto& k : ks)
        if (!k.is_empty) {
          inv.has_first = k.has_first;
          inv.first_label = k.first_label;
          break;
        }
      for (auto it = ks.rbegin(); it != ks.rend(); ++it)
        if (!it->is_empty) {
          inv.has_last = it->has_last;
          inv.last_label = it->last_label;
          break;
        }
      return inv;
    }
    case OrderExpr::Kind::Om: {
      IsoInvariants k = invariants_of(*e.child());
      inv.alphabet = k.alphabet;
      inv.is_empty = k.is_empty;
      inv.is_finite = k.is_empty;
      inv.has_first = k.has_first;
      inv.first_label = k.first_label;
      inv.has_last = false;
      return inv;
    }
    case OrderExpr::Kind::OmStar: {
      IsoInvariants k = invariants_of(*e.child());
      inv.alphabet = k.alphabet;
      inv.is_empty = k.is_empty;
      inv.is_finite = k.is_empty;
      inv.has_last = k.has_last;
      inv.last_label = k.last_label;
      inv.has_first = false;
      return inv;
    }
    case OrderExpr::Kind::Shuf: {
      inv.is_empty = true;
      for (const auto& m : e.kids) {
        IsoInvariants k = invariants_of(*m);
        inv.is_empty = inv.is_empty && k.is_empty;
        for (char c : k.alphabet) inv.alphabet.insert(c);
      }
      inv.is_finite = inv.is_empty;
      inv.has_first = inv.has_last = false;
      return inv;
    }
  }
  throw ValidationError("corrupt order expression");
}

OrderExprPtr rho_expand(const PiTerm& t, const OrderLimits& limits) {
  std::size_t size_budget = limits.max_nodes;
  // The result is a DAG: the body of each power is shared four times. The
  // budget is charged per tree node so that it reflects the written-out
  // expansion size.
  std::unordered_map<const OrderExpr*, std::size_t> sizes;
  std::function<std::size_t(const OrderExprPtr&)> size_of =
      [&](const OrderExprPtr& e) -> std::size_t {
    auto it = sizes.find(e.get());
    if (it != sizes.end()) return it->second;
    std::size_t s = 1;
    for (const auto& k : e->kids) s += size_of(k);
    sizes[e.get()] = s;
    return s;
  };
  std::function<OrderExprPtr(const PiTerm&)> go = [&](const PiTerm& u) -> OrderExprPtr {
    switch (u.kind) {
      case PiTerm::Kind::Leaf:
        return oe_fin(std::string(1, u.letter));
      case PiTerm::Kind::Concat: {
        std::vector<OrderExprPtr> parts;
        for (const auto& p : u.parts) parts.push_back(go(*p));
        return oe_cat(std::move(parts));
      }
      case PiTerm::Kind::Power: {
        OrderExprPtr e = go(*u.inner);
        OrderExprPtr res = oe_cat({oe_om(e), oe_shuf({oe_cat({oe_omstar(e), oe_om(e)})}),
                                   oe_omstar(e)});
        if (size_of(res) > size_budget)
          throw ResourceLimitError("expansion exceeds node budget " +
                                   std::to_string(size_budget));
        return res;
      }
    }
    throw ValidationError("corrupt term node");
  };
  return go(t);
}

namespace {

// One factor of a concatenation viewed at the finest granularity: a single
// letter, or one non-Fin expression.
struct Atom {
  char letter = 0;
  const OrderExpr* expr = nullptr;

  bool operator==(const Atom& o) const { return letter == o.letter && expr == o.expr; }
};

int atom_cmp(const Atom& a, const Atom& b) {
  bool la = a.letter != 0, lb = b.letter != 0;
  if (la != lb) return la ? -1 : 1;  // letters sort before expressions
  if (la) return a.letter == b.letter ? 0 : (a.letter < b.letter ? -1 : 1);
  if (a.expr == b.expr) return 0;
  return expr_cmp(*a.expr, *b.expr);
}

int seq_cmp(const std::vector<Atom>& a, const std::vector<Atom>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (int c = atom_cmp(a[i], b[i])) return c;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

long long floor_mod(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

std::vector<Atom> rotate_left(const std::vector<Atom>& a, std::size_t r) {
  std::vector<Atom> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[(i + r) % a.size()]);
  return out;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const OrderLimits& limits) : budget_(limits.max_nodes) {}

  OrderExprPtr canon(const OrderExprPtr& e) {
    auto it = memo_.find(e.get());
    if (it != memo_.end()) return it->second;
    tick();
    OrderExprPtr out;
    switch (e->kind) {
      case OrderExpr::Kind::Fin:
        out = intern(OrderExpr::Kind::Fin, e->word, {});
        break;
      case OrderExpr::Kind::Cat: {
        std::vector<Atom> atoms;
        for (const auto& k : e->kids) {
          OrderExprPtr c = canon(k);
          explode_into(c, atoms);
        }
        out = finish_atoms(std::move(atoms));
        break;
      }
      case OrderExpr::Kind::Om: {
        OrderExprPtr c = canon(e->child());
        if (is_empty_word(*c))
          out = c;
        else
          out = om_from_atoms(explode(c));
        break;
      }
      case OrderExpr::Kind::OmStar: {
        OrderExprPtr c = canon(e->child());
        if (is_empty_word(*c))
          out = c;
        else
          out = omstar_from_atoms(explode(c));
        break;
      }
      case OrderExpr::Kind::Shuf: {
        std::vector<OrderExprPtr> members;
        for (const auto& m : e->kids) {
          OrderExprPtr c = canon(m);
          if (!is_empty_word(*c)) members.push_back(c);
        }
        if (members.empty())
          out = intern(OrderExpr::Kind::Fin, "", {});
        else
          out = shuf_from_members(std::move(members));
        break;
      }
    }
    memo_.emplace(e.get(), out);
    keep_alive_.push_back(e);  // inputs referenced by raw pointer in memo_
    return out;
  }

 private:
  struct PoolHash {
    std::size_t operator()(const OrderExprPtr& p) const { return p->hash; }
  };
  struct PoolEq {
    // kids of interned nodes are themselves interned, so pointer comparison
    // of kids decides structural equality
    bool operator()(const OrderExprPtr& a, const OrderExprPtr& b) const {
      return a->kind == b->kind && a->word == b->word && a->kids == b->kids;
    }
  };

  std::unordered_set<OrderExprPtr, PoolHash, PoolEq> pool_;
  std::unordered_map<const OrderExpr*, OrderExprPtr> by_raw_;
  std::unordered_map<const OrderExpr*, OrderExprPtr> memo_;
  std::vector<OrderExprPtr> keep_alive_;
  std::size_t budget_;

  void tick() {
    if (budget_ == 0) throw ResourceLimitError("canonicalization budget exhausted");
    --budget_;
  }

  OrderExprPtr intern(OrderExpr::Kind kind, std::string word, std::vector<OrderExprPtr> kids) {
    OrderExprPtr n = make_node(kind, std::move(word), std::move(kids));
    auto it = pool_.find(n);
    if (it != pool_.end()) return *it;
    pool_.insert(n);
    by_raw_.emplace(n.get(), n);
    return n;
  }

  OrderExprPtr eps() { return intern(OrderExpr::Kind::Fin, "", {}); }

  // --- atoms <-> expressions -------------------------------------------

  void explode_into(const OrderExprPtr& e, std::vector<Atom>& out) {
    switch (e->kind) {
      case OrderExpr::Kind::Fin:
        for (char c : e->word) out.push_back(Atom{c, nullptr});
        return;
      case OrderExpr::Kind::Cat:
        for (const auto& k : e->kids) explode_into(k, out);
        return;
      default:
        out.push_back(Atom{0, e.get()});
        return;
    }
  }

  std::vector<Atom> explode(const OrderExprPtr& e) {
    std::vector<Atom> out;
    explode_into(e, out);
    return out;
  }

  OrderExprPtr hold(const OrderExpr* raw) {
    // all expression atoms point into the pool, which owns a shared_ptr
    auto it = by_raw_.find(raw);
    if (it == by_raw_.end()) throw ValidationError("internal: atom not interned");
    return it->second;
  }

  std::vector<OrderExprPtr> rebuild(const std::vector<Atom>& atoms) {
    std::vector<OrderExprPtr> parts;
    std::string run;
    auto flush = [&]() {
      if (!run.empty()) {
        parts.push_back(intern(OrderExpr::Kind::Fin, run, {}));
        run.clear();
      }
    };
    for (const Atom& a : atoms) {
      if (a.letter) {
        run += a.letter;
      } else {
        flush();
        parts.push_back(hold(a.expr));
      }
    }
    flush();
    return parts;
  }

  OrderExprPtr wrap_parts(std::vector<OrderExprPtr> parts) {
    if (parts.empty()) return eps();
    if (parts.size() == 1) return parts[0];
    return intern(OrderExpr::Kind::Cat, "", std::move(parts));
  }

  OrderExprPtr finish_atoms(std::vector<Atom> atoms) {
    atoms = cat_normalize(std::move(atoms));
    return wrap_parts(rebuild(atoms));
  }

  // --- concatenation normalization --------------------------------------

  std::vector<Atom> cat_normalize(std::vector<Atom> atoms) { return normalize(std::move(atoms), true); }

  std::vector<Atom> normalize(std::vector<Atom> atoms, bool speculate) {
    for (;;) {
      tick();
      if (collapse_shuffle_runs(atoms)) continue;
      if (align_seams(atoms)) continue;
      if (absorb_step(atoms)) continue;
      if (speculate && speculative_absorb(atoms)) continue;
      return atoms;
    }
  }

  // S x1 S x2 ... S -> S  for x_i members of S
  bool collapse_shuffle_runs(std::vector<Atom>& atoms) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const Atom& sa = atoms[i];
      if (sa.letter || sa.expr->kind != OrderExpr::Kind::Shuf) continue;
      std::vector<std::vector<Atom>> members;
      for (const auto& m : sa.expr->kids) members.push_back(explode(m));
      std::size_t j = i + 1;
      std::size_t end = i + 1;
      while (j < atoms.size()) {
        if (atoms[j] == sa) {
          ++j;
          end = j;
          continue;
        }
        bool stepped = false;
        for (const auto& ma : members) {
          std::size_t len = ma.size();
          if (j + len < atoms.size() && std::equal(ma.begin(), ma.end(), atoms.begin() + j) &&
              atoms[j + len] == sa) {
            j += len + 1;
            end = j;
            stepped = true;
            break;
          }
        }
        if (!stepped) break;
      }
      if (end > i + 1) {
        atoms.erase(atoms.begin() + i + 1, atoms.begin() + end);
        return true;
      }
    }
    return false;
  }

  // v^om* w^om: the seam between the two tails can slide while the edge
  // atoms agree. Only the full-cycle case (the pair is a zeta-power of a
  // common root, so every alignment is reachable) is rewritten, to the
  // least simultaneous rotation; partial slides are left in place, since
  // rewriting them would destroy periodicity of an enclosing power body.
  bool align_seams(std::vector<Atom>& atoms) {
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
      const Atom& l = atoms[i];
      const Atom& r = atoms[i + 1];
      if (l.letter || r.letter) continue;
      if (l.expr->kind != OrderExpr::Kind::OmStar || r.expr->kind != OrderExpr::Kind::Om)
        continue;
      std::vector<Atom> a1 = explode(l.expr->kids[0]);
      std::vector<Atom> a2 = explode(r.expr->kids[0]);
      const long long n1 = static_cast<long long>(a1.size());
      const long long n2 = static_cast<long long>(a2.size());
      const long long period = std::lcm(n1, n2);
      auto cond = [&](long long s) {
        return a1[floor_mod(s, n1)] == a2[floor_mod(s, n2)];
      };
      bool full = true;
      for (long long s = 0; s < period && full; ++s) full = cond(s);
      if (!full) continue;
      long long best = 0;
      std::vector<Atom> best1 = a1, best2 = a2;
      for (long long s = 1; s < period; ++s) {
        std::vector<Atom> c1 = rotate_left(a1, static_cast<std::size_t>(floor_mod(s, n1)));
        std::vector<Atom> c2 = rotate_left(a2, static_cast<std::size_t>(floor_mod(s, n2)));
        int c = seq_cmp(c1, best1);
        if (c < 0 || (c == 0 && seq_cmp(c2, best2) < 0)) {
          best = s;
          best1 = std::move(c1);
          best2 = std::move(c2);
        }
      }
      if (best != 0) {
        atoms[i] = Atom{0, intern(OrderExpr::Kind::OmStar, "", {wrap_parts(rebuild(best1))}).get()};
        atoms[i + 1] = Atom{0, intern(OrderExpr::Kind::Om, "", {wrap_parts(rebuild(best2))}).get()};
        return true;
      }
    }
    return false;
  }

  // One absorption: x (B)^om -> (rot B)^om when x equals the last body atom,
  // or (B)^om* x -> (rot B)^om* when x equals the first one. When several
  // sites apply, the power with the smallest body wins, so that local
  // material settles before a large power swallows its neighborhood.
  bool absorb_step(std::vector<Atom>& atoms) {
    std::size_t best_i = 0, best_size = 0;
    int best_kind = -1;  // 0 = into om, 1 = into om*
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
      const Atom& l = atoms[i];
      const Atom& r = atoms[i + 1];
      if (!r.letter && r.expr->kind == OrderExpr::Kind::Om) {
        std::vector<Atom> body = explode(r.expr->kids[0]);
        if (!body.empty() && atoms[i] == body.back() &&
            (best_kind < 0 || body.size() < best_size)) {
          best_kind = 0;
          best_i = i;
          best_size = body.size();
        }
      }
      if (!l.letter && l.expr->kind == OrderExpr::Kind::OmStar) {
        std::vector<Atom> body = explode(l.expr->kids[0]);
        if (!body.empty() && atoms[i + 1] == body.front() &&
            (best_kind < 0 || body.size() < best_size)) {
          best_kind = 1;
          best_i = i;
          best_size = body.size();
        }
      }
    }
    if (best_kind < 0) return false;
    std::size_t i = best_i;
    OrderExprPtr replacement;
    if (best_kind == 0) {
      std::vector<Atom> body = explode(atoms[i + 1].expr->kids[0]);
      std::vector<Atom> rotated;
      rotated.push_back(body.back());
      rotated.insert(rotated.end(), body.begin(), body.end() - 1);
      replacement = om_from_atoms(std::move(rotated));
    } else {
      std::vector<Atom> body = explode(atoms[i].expr->kids[0]);
      std::vector<Atom> rotated(body.begin() + 1, body.end());
      rotated.push_back(body.front());
      replacement = omstar_from_atoms(std::move(rotated));
    }
    std::vector<Atom> repl = explode(replacement);
    atoms.erase(atoms.begin() + i, atoms.begin() + i + 2);
    atoms.insert(atoms.begin() + i, repl.begin(), repl.end());
    return true;
  }

  // Last resort: unroll a power a few atoms at a time and keep the result
  // only if the exposed material strictly shrinks the sequence (e.g. a
  // shuffle separator hidden at a body boundary). All unrollings are
  // word-preserving, so committing is sound.
  bool speculative_absorb(std::vector<Atom>& atoms) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const Atom& a = atoms[i];
      if (a.letter) continue;
      if (a.expr->kind == OrderExpr::Kind::Om && i > 0) {
        std::vector<Atom> body = explode(a.expr->kids[0]);
        std::vector<Atom> work(atoms.begin(), atoms.begin() + i);
        for (std::size_t k = 1; k <= body.size(); ++k) {
          std::vector<Atom> trial = work;
          for (std::size_t j = 0; j < k; ++j) trial.push_back(body[j % body.size()]);
          std::vector<Atom> rot = rotate_left(body, k % body.size());
          trial.push_back(Atom{0, intern(OrderExpr::Kind::Om, "", {wrap_parts(rebuild(rot))}).get()});
          trial.insert(trial.end(), atoms.begin() + i + 1, atoms.end());
          trial = normalize(std::move(trial), false);
          if (trial.size() < atoms.size()) {
            atoms = std::move(trial);
            return true;
          }
        }
      }
      if (a.expr && a.expr->kind == OrderExpr::Kind::OmStar && i + 1 < atoms.size()) {
        std::vector<Atom> body = explode(a.expr->kids[0]);
        for (std::size_t k = 1; k <= body.size(); ++k) {
          std::vector<Atom> trial(atoms.begin(), atoms.begin() + i);
          std::vector<Atom> rot = rotate_left(body, body.size() - (k % body.size()));
          trial.push_back(
              Atom{0, intern(OrderExpr::Kind::OmStar, "", {wrap_parts(rebuild(rot))}).get()});
          for (std::size_t j = 0; j < k; ++j)
            trial.push_back(body[(body.size() - k + j) % body.size()]);
          trial.insert(trial.end(), atoms.begin() + i + 1, atoms.end());
          trial = normalize(std::move(trial), false);
          if (trial.size() < atoms.size()) {
            atoms = std::move(trial);
            return true;
          }
        }
      }
    }
    return false;
  }

  // --- omega powers ------------------------------------------------------

  static std::size_t primitive_period(const std::vector<Atom>& a) {
    for (std::size_t d = 1; d <= a.size() / 2; ++d) {
      if (a.size() % d) continue;
      bool ok = true;
      for (std::size_t i = 0; i + d < a.size() && ok; ++i) ok = a[i] == a[i + d];
      if (ok) return d;
    }
    return a.size();
  }

  // Is this body an alternation of one shuffle S and single members of S?
  // `omega` asks for the pattern suitable under an omega power (must start
  // with S; may end with a member because the next copy starts with S);
  // otherwise the omega* variant (must end with S; may start with a member).
  const OrderExpr* shuffle_pattern(const std::vector<Atom>& atoms, bool omega) {
    if (atoms.empty()) return nullptr;
    const Atom& anchor = omega ? atoms.front() : atoms.back();
    if (anchor.letter || anchor.expr->kind != OrderExpr::Kind::Shuf) return nullptr;
    std::vector<std::vector<Atom>> members;
    for (const auto& m : anchor.expr->kids) members.push_back(explode(m));
    // scan left-to-right; for the omega* variant scan the reverse sequence
    std::vector<Atom> seq = atoms;
    if (!omega) {
      std::reverse(seq.begin(), seq.end());
      for (auto& ma : members) std::reverse(ma.begin(), ma.end());
    }
    std::size_t i = 1;  // seq[0] is the anchor S
    while (i < seq.size()) {
      if (seq[i] == anchor) {
        ++i;
        continue;
      }
      bool stepped = false;
      for (const auto& ma : members) {
        std::size_t len = ma.size();
        if (i + len <= seq.size() && std::equal(ma.begin(), ma.end(), seq.begin() + i)) {
          if (i + len == seq.size()) {
            i += len;
            stepped = true;
            break;
          }
          if (seq[i + len] == anchor) {
            i += len + 1;
            stepped = true;
            break;
          }
        }
      }
      if (!stepped) return nullptr;
    }
    return anchor.expr;
  }

  OrderExprPtr om_from_atoms(std::vector<Atom> body) {
    tick();
    if (body.empty()) return eps();
    std::size_t d = primitive_period(body);
    body.resize(d);
    for (std::size_t r = 0; r < d; ++r) {
      std::vector<Atom> rot = rotate_left(body, r);
      std::vector<Atom> cand = normalize(rot, false);
      OrderExprPtr reduced;
      if (const OrderExpr* s = shuffle_pattern(cand, /*omega=*/true))
        reduced = hold(s);
      else if (cand.size() < d)
        reduced = om_from_atoms(std::move(cand));
      if (reduced) {
        std::vector<Atom> out(body.begin(), body.begin() + r);
        explode_into(reduced, out);
        return finish_atoms(std::move(out));
      }
    }
    return intern(OrderExpr::Kind::Om, "", {wrap_parts(rebuild(body))});
  }

  OrderExprPtr omstar_from_atoms(std::vector<Atom> body) {
    tick();
    if (body.empty()) return eps();
    std::size_t d = primitive_period(body);
    body.resize(d);
    for (std::size_t s = 0; s < d; ++s) {
      // (B)^om* = (rot_right_s B)^om* . suffix, suffix = last s atoms
      std::vector<Atom> rot = rotate_left(body, d - s);
      std::vector<Atom> cand = normalize(rot, false);
      OrderExprPtr reduced;
      if (const OrderExpr* sh = shuffle_pattern(cand, /*omega=*/false))
        reduced = hold(sh);
      else if (cand.size() < d)
        reduced = omstar_from_atoms(std::move(cand));
      if (reduced) {
        std::vector<Atom> out = explode(reduced);
        out.insert(out.end(), body.end() - s, body.end());
        return finish_atoms(std::move(out));
      }
    }
    return intern(OrderExpr::Kind::OmStar, "", {wrap_parts(rebuild(body))});
  }

  // --- shuffles ----------------------------------------------------------

  // Does m rewrite, inside a shuffle, to material of S = sh(X)? True when m
  // alternates S and single members of X (no two members adjacent).
  bool dissolves_over(const OrderExprPtr& m, const OrderExpr* s,
                      const std::vector<std::vector<Atom>>& members) {
    if (m.get() == s) return true;
    std::vector<Atom> seq = explode(m);
    Atom sa{0, s};
    std::size_t i = 0;
    bool prev_was_member = false;
    while (i < seq.size()) {
      if (seq[i] == sa) {
        ++i;
        prev_was_member = false;
        continue;
      }
      if (prev_was_member) return false;
      bool stepped = false;
      for (const auto& ma : members) {
        std::size_t len = ma.size();
        if (i + len <= seq.size() && std::equal(ma.begin(), ma.end(), seq.begin() + i)) {
          i += len;
          prev_was_member = true;
          stepped = true;
          break;
        }
      }
      if (!stepped) return false;
    }
    return true;
  }

  OrderExprPtr shuf_from_members(std::vector<OrderExprPtr> members) {
    tick();
    std::sort(members.begin(), members.end(),
              [](const OrderExprPtr& a, const OrderExprPtr& b) { return expr_cmp(*a, *b) < 0; });
    members.erase(std::unique(members.begin(), members.end(),
                              [](const OrderExprPtr& a, const OrderExprPtr& b) {
                                return a.get() == b.get();
                              }),
                  members.end());
    // candidate shuffles over which every member might dissolve
    std::vector<const OrderExpr*> candidates;
    auto consider = [&](const OrderExpr* e) {
      if (e->kind != OrderExpr::Kind::Shuf) return;
      for (const OrderExpr* c : candidates)
        if (c == e) return;
      candidates.push_back(e);
    };
    for (const auto& m : members) {
      consider(m.get());
      for (const Atom& a : explode(m))
        if (!a.letter) consider(a.expr);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const OrderExpr* a, const OrderExpr* b) { return expr_cmp(*a, *b) < 0; });
    for (const OrderExpr* s : candidates) {
      std::vector<std::vector<Atom>> mats;
      for (const auto& x : s->kids) mats.push_back(explode(x));
      bool all = true;
      for (const auto& m : members)
        if (!dissolves_over(m, s, mats)) {
          all = false;
          break;
        }
      if (all) return hold(s);
    }
    return intern(OrderExpr::Kind::Shuf, "", std::move(members));
  }
};

}  // namespace

OrderExprPtr canonical_form(const OrderExprPtr& e, const OrderLimits& limits) {
  if (!e) throw ValidationError("null order expression");
  Canonicalizer c(limits);
  return c.canon(e);
}

bool iso(const OrderExprPtr& a, const OrderExprPtr& b, const OrderLimits& limits) {
  Canonicalizer c(limits);
  OrderExprPtr ca = c.canon(a);
  OrderExprPtr cb = c.canon(b);
  return ca.get() == cb.get() || expr_equal(*ca, *cb);
}

Verdict decide_aperiodic_identity(const PiTerm& s, const PiTerm& t, const OrderLimits& limits) {
  OrderExprPtr es = rho_expand(s, limits);
  OrderExprPtr et = rho_expand(t, limits);
  return iso(es, et, limits) ? Verdict::Holds : Verdict::Fails;
}

namespace {

bool needs_parens_under_power(const OrderExpr& e) {
  switch (e.kind) {
    case OrderExpr::Kind::Fin:
      return e.word.size() > 1;
    case OrderExpr::Kind::Shuf:
      return false;
    default:
      return true;
  }
}

}  // namespace

std::string to_string(const OrderExpr& e) {
  switch (e.kind) {
    case OrderExpr::Kind::Fin:
      return e.word.empty() ? "eps" : e.word;
    case OrderExpr::Kind::Cat: {
      std::string out;
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) out += " . ";
        out += to_string(*e.kids[i]);
      }
      return out;
    }
    case OrderExpr::Kind::Om:
    case OrderExpr::Kind::OmStar: {
      const OrderExpr& k = *e.child();
      std::string inner = to_string(k);
      if (needs_parens_under_power(k)) inner = "(" + inner + ")";
      return inner + (e.kind == OrderExpr::Kind::Om ? "^om" : "^om*");
    }
    case OrderExpr::Kind::Shuf: {
      std::string out = "sh{";
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) out += ", ";
        out += to_string(*e.kids[i]);
      }
      out += "}";
      return out;
    }
  }
  throw ValidationError("corrupt order expression");
}

std::size_t tree_size(const OrderExpr& e) {
  std::size_t s = 1;
  for (const auto& k : e.kids) s += tree_size(*k);
  return s;
}

}  // namespace piword
