#include "piword/automata.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace piword {

int Dfa::letter_index(Letter c) const {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), c);
  if (it == alphabet.end() || *it != c)
    throw ValidationError(std::string("letter '") + c + "' is not in the alphabet");
  return static_cast<int>(it - alphabet.begin());
}

void validate(const Dfa& d) {
  if (d.states.empty()) throw ValidationError("DFA needs at least one state");
  if (!std::is_sorted(d.alphabet.begin(), d.alphabet.end()) ||
      std::adjacent_find(d.alphabet.begin(), d.alphabet.end()) != d.alphabet.end())
    throw ValidationError("alphabet must be sorted and distinct");
  if (d.initial < 0 || d.initial >= static_cast<int>(d.states.size()))
    throw ValidationError("initial state out of range");
  for (int f : d.finals)
    if (f < 0 || f >= static_cast<int>(d.states.size()))
      throw ValidationError("final state out of range");
  if (d.delta.size() != d.states.size()) throw ValidationError("delta must be total");
  for (const auto& row : d.delta) {
    if (row.size() != d.alphabet.size()) throw ValidationError("delta must be total");
    for (int s : row)
      if (s < 0 || s >= static_cast<int>(d.states.size()))
        throw ValidationError("transition target out of range");
  }
}

bool accepts(const Dfa& d, const Word& w) {
  int s = d.initial;
  for (char c : w) s = d.step(s, c);
  return d.finals.count(s) > 0;
}

Dfa minimize(const Dfa& d) {
  validate(d);
  const int n = static_cast<int>(d.states.size());
  const int k = static_cast<int>(d.alphabet.size());

  // reachable states
  std::vector<int> order;
  std::vector<int> idx(n, -1);
  order.push_back(d.initial);
  idx[d.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int a = 0; a < k; ++a) {
      int t = d.delta[order[i]][a];
      if (idx[t] < 0) {
        idx[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }

  // Moore refinement on reachable states
  std::vector<int> cls(n, -1);
  for (int s : order) cls[s] = d.finals.count(s) ? 1 : 0;
  int classes = 2;
  // single-class case: all final or all non-final
  {
    bool all_same = true;
    for (int s : order)
      if (cls[s] != cls[order[0]]) all_same = false;
    if (all_same) {
      for (int s : order) cls[s] = 0;
      classes = 1;
    }
  }
  for (;;) {
    std::map<std::vector<int>, int> sig_to_class;
    std::vector<int> next_cls(n, -1);
    for (int s : order) {
      std::vector<int> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[s]);
      for (int a = 0; a < k; ++a) sig.push_back(cls[d.delta[s][a]]);
      auto [it, fresh] = sig_to_class.emplace(sig, static_cast<int>(sig_to_class.size()));
      (void)fresh;
      next_cls[s] = it->second;
    }
    int next_classes = static_cast<int>(sig_to_class.size());
    bool stable = (next_classes == classes);
    cls.swap(next_cls);
    classes = next_classes;
    if (stable) break;
  }

  // canonical renaming: BFS over classes from the initial state
  std::vector<int> class_name(classes, -1);
  std::vector<int> rep;  // representative original state per new state id
  std::deque<int> queue;
  auto discover = [&](int s) {
    if (class_name[cls[s]] < 0) {
      class_name[cls[s]] = static_cast<int>(rep.size());
      rep.push_back(s);
      queue.push_back(s);
    }
  };
  discover(d.initial);
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int a = 0; a < k; ++a) discover(d.delta[s][a]);
  }

  Dfa out;
  out.alphabet = d.alphabet;
  out.initial = 0;
  for (std::size_t i = 0; i < rep.size(); ++i) {
    out.states.push_back("q" + std::to_string(i));
    std::vector<int> row(k);
    for (int a = 0; a < k; ++a) row[a] = class_name[cls[d.delta[rep[i]][a]]];
    out.delta.push_back(std::move(row));
    if (d.finals.count(rep[i])) out.finals.insert(static_cast<int>(i));
  }
  return out;
}

int MonoidMorphism::image(const FiniteMonoid& m, const Word& w) const {
  int acc = m.identity;
  for (char c : w) {
    auto it = letter_image.find(c);
    if (it == letter_image.end())
      throw ValidationError(std::string("letter '") + c + "' is not in the morphism domain");
    acc = m.mul(acc, it->second);
  }
  return acc;
}

std::pair<FiniteMonoid, MonoidMorphism> transition_monoid(const Dfa& d, std::size_t max_order) {
  validate(d);
  const int n = static_cast<int>(d.states.size());
  const int k = static_cast<int>(d.alphabet.size());

  using Transform = std::vector<int>;
  std::vector<Transform> gens(k, Transform(n));
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < k; ++a) gens[a][s] = d.delta[s][a];

  Transform id(n);
  for (int s = 0; s < n; ++s) id[s] = s;

  std::map<Transform, int> index;
  std::vector<Transform> elems;
  std::vector<std::string> names;
  auto add = [&](const Transform& t, const std::string& name) {
    auto [it, fresh] = index.emplace(t, static_cast<int>(elems.size()));
    if (fresh) {
      elems.push_back(t);
      names.push_back(name);
      if (elems.size() > max_order)
        throw ResourceLimitError("transition monoid exceeds order bound " +
                                 std::to_string(max_order));
    }
    return it->second;
  };

  add(id, "1");
  MonoidMorphism h;
  h.alphabet = d.alphabet;
  for (int a = 0; a < k; ++a) h.letter_image[d.alphabet[a]] = add(gens[a], std::string(1, d.alphabet[a]));

  // BFS closure; names extend by one letter per step, so each element gets a
  // shortest generating word.
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (int a = 0; a < k; ++a) {
      Transform t(n);
      for (int s = 0; s < n; ++s) t[s] = gens[a][elems[i][s]];
      add(t, (i == 0 ? std::string() : names[i]) + d.alphabet[a]);
    }
  }

  FiniteMonoid m;
  m.name = "T(" + std::to_string(n) + " states)";
  m.elements = names;
  m.identity = 0;
  const int order = static_cast<int>(elems.size());
  m.table.resize(static_cast<std::size_t>(order) * order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      Transform t(n);
      for (int s = 0; s < n; ++s) t[s] = elems[j][elems[i][s]];  // first i, then j
      m.table[static_cast<std::size_t>(i) * order + j] = index.at(t);
    }
  return {std::move(m), std::move(h)};
}

std::pair<FiniteMonoid, MonoidMorphism> syntactic_monoid(const Dfa& d, std::size_t max_order) {
  auto r = transition_monoid(minimize(d), max_order);
  r.first.name = "syntactic";
  return r;
}

bool syntactic_equivalent(const Dfa& d, const Word& u, const Word& v) {
  auto [m, h] = syntactic_monoid(d);
  return h.image(m, u) == h.image(m, v);
}

using nlohmann::ordered_json;

std::string dfa_to_json(const Dfa& d) {
  ordered_json j;
  std::vector<std::string> alpha;
  for (char c : d.alphabet) alpha.push_back(std::string(1, c));
  j["alphabet"] = alpha;
  j["states"] = d.states;
  j["initial"] = d.states[d.initial];
  std::vector<std::string> fin;
  for (int f : d.finals) fin.push_back(d.states[f]);
  j["finals"] = fin;
  ordered_json delta = ordered_json::object();
  for (std::size_t s = 0; s < d.states.size(); ++s) {
    ordered_json row = ordered_json::object();
    for (std::size_t a = 0; a < d.alphabet.size(); ++a)
      row[std::string(1, d.alphabet[a])] = d.states[d.delta[s][a]];
    delta[d.states[s]] = row;
  }
  j["delta"] = delta;
  return j.dump(2);
}

Dfa dfa_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid DFA JSON: ") + e.what());
  }
  Dfa d;
  try {
    for (const auto& a : j.at("alphabet")) {
      std::string s = a.get<std::string>();
      if (s.size() != 1 || !is_surface_letter(s[0]))
        throw ParseError("alphabet entries must be single letters a-z");
      d.alphabet.push_back(s[0]);
    }
    std::sort(d.alphabet.begin(), d.alphabet.end());
    d.states = j.at("states").get<std::vector<std::string>>();
    std::map<std::string, int> idx;
    for (int i = 0; i < static_cast<int>(d.states.size()); ++i) idx[d.states[i]] = i;
    std::string init = j.at("initial").get<std::string>();
    if (!idx.count(init)) throw ParseError("initial state '" + init + "' unknown");
    d.initial = idx[init];
    for (const auto& f : j.at("finals")) {
      std::string s = f.get<std::string>();
      if (!idx.count(s)) throw ParseError("final state '" + s + "' unknown");
      d.finals.insert(idx[s]);
    }
    d.delta.assign(d.states.size(), std::vector<int>(d.alphabet.size(), -1));
    auto delta = j.at("delta");
    for (std::size_t s = 0; s < d.states.size(); ++s) {
      if (!delta.contains(d.states[s])) throw ParseError("delta missing state " + d.states[s]);
      auto row = delta.at(d.states[s]);
      for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
        std::string key(1, d.alphabet[a]);
        if (!row.contains(key))
          throw ParseError("delta missing letter " + key + " for state " + d.states[s]);
        std::string target = row.at(key).get<std::string>();
        if (!idx.count(target)) throw ParseError("transition target '" + target + "' unknown");
        d.delta[s][a] = idx[target];
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid DFA JSON: ") + e.what());
  }
  validate(d);
  return d;
}

Dfa load_dfa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open DFA file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return dfa_from_json(ss.str());
}

}  // namespace piword
