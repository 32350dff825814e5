#include "piword/monoid_enum.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace piword {

namespace {

// Backtracking search over partial multiplication tables with element 0
// fixed as identity. Cells are filled row-major over the (order-1)^2 free
// entries; after each placement every associativity triple whose products
// are all determined is rechecked, which prunes most of the space.
class TableSearch {
 public:
  TableSearch(int n, const std::function<bool(const FiniteMonoid&)>& sink, const EnumOptions& o)
      : n_(n), table_(static_cast<std::size_t>(n) * n, -1), sink_(sink), opts_(o) {
    for (int i = 0; i < n_; ++i) {
      set(0, i, i);
      set(i, 0, i);
    }
  }

  bool run() { return fill(1, 1); }

 private:
  int n_;
  std::vector<int> table_;
  const std::function<bool(const FiniteMonoid&)>& sink_;
  const EnumOptions& opts_;
  long emitted_ = 0;

  int get(int i, int j) const { return table_[static_cast<std::size_t>(i) * n_ + j]; }
  void set(int i, int j, int v) { table_[static_cast<std::size_t>(i) * n_ + j] = v; }

  // Associativity triples that involve the newly placed product (i,j).
  bool consistent_after(int i, int j) const {
    for (int z = 0; z < n_; ++z) {
      // (i j) z vs i (j z)
      int jz = get(j, z);
      int ij_z = get(get(i, j), z);
      if (jz >= 0 && ij_z >= 0 && get(i, jz) >= 0 && get(i, jz) != ij_z) return false;
      // (z i) j vs z (i j)
      int zi = get(z, i);
      int z_ij = get(z, get(i, j));
      if (zi >= 0 && z_ij >= 0 && get(zi, j) >= 0 && get(zi, j) != z_ij) return false;
      // (i z) j vs i (z j) when either side routes through (i,j)
      int iz = get(i, z);
      int zj = get(z, j);
      if (iz >= 0 && zj >= 0) {
        int l = get(iz, j);
        int r = get(i, zj);
        if (l >= 0 && r >= 0 && l != r) return false;
      }
    }
    return true;
  }

  bool fill(int i, int j) {
    if (i == n_) return emit();
    int ni = (j == n_ - 1) ? i + 1 : i;
    int nj = (j == n_ - 1) ? 1 : j + 1;
    for (int v = 0; v < n_; ++v) {
      set(i, j, v);
      if (consistent_after(i, j)) {
        if (!fill(ni, nj)) return false;
      }
    }
    set(i, j, -1);
    return true;
  }

  bool is_canonical() const {
    // Minimal relabeling among permutations fixing the identity.
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> inv(n_);
    do {
      for (int i = 0; i < n_; ++i) inv[perm[i]] = i;
      bool smaller = false, larger = false;
      for (int i = 0; i < n_ && !smaller && !larger; ++i) {
        for (int j = 0; j < n_; ++j) {
          int v = perm[get(inv[i], inv[j])];
          int orig = get(i, j);
          if (v < orig) {
            smaller = true;
            break;
          }
          if (v > orig) {
            larger = true;
            break;
          }
        }
      }
      if (smaller) return false;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return true;
  }

  bool emit() {
    FiniteMonoid m;
    m.identity = 0;
    m.elements.reserve(n_);
    m.elements.push_back("1");
    for (int i = 1; i < n_; ++i) m.elements.push_back("e" + std::to_string(i));
    m.table = table_;
    if (opts_.up_to_iso && !is_canonical()) return true;
    if (opts_.aperiodic_only && !is_aperiodic(m)) return true;
    m.name = "M" + std::to_string(n_) + "_" + std::to_string(emitted_++);
    return sink_(m);
  }
};

}  // namespace

void enumerate_monoids(int order, const EnumOptions& opts,
                       const std::function<bool(const FiniteMonoid&)>& sink) {
  if (order < 1) throw ValidationError("monoid order must be positive");
  if (order > opts.max_order)
    throw ResourceLimitError("enumeration bound exceeded: order " + std::to_string(order) +
                             " > " + std::to_string(opts.max_order));
  if (order == 1) {
    FiniteMonoid triv{"M1_0", {"1"}, 0, {0}};
    sink(triv);
    return;
  }
  TableSearch search(order, sink, opts);
  search.run();
}

std::vector<FiniteMonoid> enumerate_monoids(int order, const EnumOptions& opts) {
  std::vector<FiniteMonoid> out;
  enumerate_monoids(order, opts, [&](const FiniteMonoid& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::optional<Counterexample> find_counterexample(const PiTerm& s, const PiTerm& t,
                                                  const CounterexampleOptions& opts) {
  std::optional<Counterexample> found;
  EnumOptions eo;
  eo.aperiodic_only = true;
  eo.up_to_iso = true;
  for (int order = 1; order <= opts.max_order && !found; ++order) {
    enumerate_monoids(order, eo, [&](const FiniteMonoid& m) {
      IdentityCheck c = identity_holds(m, s, t, opts.max_assignments);
      if (!c.holds) {
        found = Counterexample{m, *c.witness};
        return false;
      }
      return true;
    });
  }
  if (found) return found;
  for (const FiniteMonoid& m : opts.fixtures) {
    if (!is_aperiodic(m)) continue;
    IdentityCheck c = identity_holds(m, s, t, opts.max_assignments);
    if (!c.holds) return Counterexample{m, *c.witness};
  }
  return std::nullopt;
}

}  // namespace piword
