#pragma once

// Exhaustive enumeration of edge-set decompositions on small graphs.
//
// The backbone is the transition system: at every vertex, a perfect matching
// of its slots. Slot indices follow the graph's incidence lists; a vertex may
// carry one extra "end slot" (index deg), and the real slot matched to it is
// where an open trail ends. Transition systems without end slots are in
// bijection with decompositions into closed trails; with end slots, with
// decompositions into closed and open trails having prescribed ends.
//
// Budgets are hard errors. Canonical trail form: the lexicographically least
// dart sequence over all rotations (closed trails) and both directions.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cycdec/errors.hpp"
#include "cycdec/field.hpp"
#include "cycdec/graph.hpp"
#include "cycdec/passage.hpp"
#include "cycdec/poly.hpp"

namespace cycdec::oracle {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct Trail {
  bool closed = true;
  std::vector<int> darts;     // canonical
  std::vector<int> vertices;  // closed: tail of each dart; open: tails, then the final head
  std::vector<int> edges;     // ascending

  [[nodiscard]] int length() const { return static_cast<int>(darts.size()); }
  [[nodiscard]] bool contains_edge(int e) const { return std::binary_search(edges.begin(), edges.end(), e); }
  [[nodiscard]] int end1() const { return vertices.front(); }
  [[nodiscard]] int end2() const { return vertices.back(); }

  [[nodiscard]] bool simple() const {
    std::vector<int> v = vertices;
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  }

  /// Number of passages through j (visits that enter and leave j).
  [[nodiscard]] int passes(int j) const {
    if (closed) return static_cast<int>(std::count(vertices.begin(), vertices.end(), j));
    return static_cast<int>(std::count(vertices.begin() + 1, vertices.end() - 1, j));
  }

  friend bool operator==(const Trail& a, const Trail& b) { return a.closed == b.closed && a.darts == b.darts; }
  friend bool operator<(const Trail& a, const Trail& b) {
    if (a.closed != b.closed) return a.closed < b.closed;
    return a.darts < b.darts;
  }
};

struct Decomposition {
  std::vector<Trail> trails;  // sorted

  [[nodiscard]] bool all_simple() const {
    return std::all_of(trails.begin(), trails.end(), [](const Trail& t) { return t.simple(); });
  }
  [[nodiscard]] int cycle_count() const {
    return static_cast<int>(std::count_if(trails.begin(), trails.end(), [](const Trail& t) { return t.closed; }));
  }
  [[nodiscard]] int path_count() const { return static_cast<int>(trails.size()) - cycle_count(); }
  [[nodiscard]] std::vector<int> path_lengths() const {
    std::vector<int> out;
    for (const Trail& t : trails)
      if (!t.closed) out.push_back(t.length());
    std::sort(out.begin(), out.end());
    return out;
  }
  /// Index of the trail containing edge e.
  [[nodiscard]] int trail_of(int e) const {
    for (std::size_t i = 0; i < trails.size(); ++i)
      if (trails[i].contains_edge(e)) return static_cast<int>(i);
    return -1;
  }

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Partner arrays, one per vertex: partner[j][a] is the slot matched with a.
using TransitionSystem = std::vector<std::vector<int>>;

/// All perfect matchings of {0..s-1} as partner arrays (s even; (s-1)!! of them).
inline std::vector<std::vector<int>> perfect_matchings(int s) {
  std::vector<std::vector<int>> out;
  if (s % 2 != 0) return out;
  std::vector<int> partner(static_cast<std::size_t>(s), -1);
  std::function<void()> rec = [&] {
    auto first = std::find(partner.begin(), partner.end(), -1);
    if (first == partner.end()) {
      out.push_back(partner);
      return;
    }
    const auto a = static_cast<int>(first - partner.begin());
    for (int b = a + 1; b < s; ++b) {
      if (partner[static_cast<std::size_t>(b)] != -1) continue;
      partner[static_cast<std::size_t>(a)] = b;
      partner[static_cast<std::size_t>(b)] = a;
      rec();
      partner[static_cast<std::size_t>(a)] = -1;
      partner[static_cast<std::size_t>(b)] = -1;
    }
  };
  rec();
  return out;
}

/// Π_j (slots_j - 1)!!, saturating at UINT64_MAX; 0 if some slot count is odd.
inline std::uint64_t count_systems(std::span<const int> slots) {
  std::uint64_t total = 1;
  for (int s : slots) {
    if (s % 2 != 0) return 0;
    for (int f = s - 1; f > 1; f -= 2) {
      if (total > UINT64_MAX / static_cast<std::uint64_t>(f)) return UINT64_MAX;
      total *= static_cast<std::uint64_t>(f);
    }
  }
  return total;
}

inline std::vector<int> closed_slots(const Graph& g) { return g.degrees(); }

/// Visits every transition system for the given per-vertex slot counts.
template <class Visitor>
void for_each_system(const Graph& g, std::span<const int> slots, Visitor&& visit,
                     std::uint64_t budget = kDefaultBudget) {
  if (static_cast<int>(slots.size()) != g.vertex_count()) throw InputError("slot layout size mismatch");
  const std::uint64_t total = count_systems(slots);
  if (total == 0) return;
  if (total > budget)
    throw BudgetExceeded("enumeration needs " + std::to_string(total) + " transition systems, budget is " +
                         std::to_string(budget));
  std::vector<std::vector<std::vector<int>>> choices;
  for (int s : slots) choices.push_back(perfect_matchings(s));
  std::vector<std::size_t> idx(choices.size(), 0);
  TransitionSystem sys(choices.size());
  for (std::size_t j = 0; j < choices.size(); ++j) sys[j] = choices[j][0];
  for (;;) {
    visit(static_cast<const TransitionSystem&>(sys));
    std::size_t j = 0;
    for (; j < choices.size(); ++j) {
      if (++idx[j] < choices[j].size()) {
        sys[j] = choices[j][idx[j]];
        break;
      }
      idx[j] = 0;
      sys[j] = choices[j][0];
    }
    if (j == choices.size()) return;
  }
}

namespace detail {

inline std::vector<int> reversed_darts(const std::vector<int>& s) {
  std::vector<int> r(s.rbegin(), s.rend());
  for (int& d : r) d = Graph::opposite(d);
  return r;
}

inline Trail make_trail(const Graph& g, std::vector<int> darts, bool closed) {
  if (closed) {
    std::vector<int> best = darts;
    for (const auto& seq : {darts, reversed_darts(darts)}) {
      std::vector<int> rot = seq;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
      }
    }
    darts = std::move(best);
  } else {
    auto rev = reversed_darts(darts);
    if (rev < darts) darts = std::move(rev);
  }
  Trail t;
  t.closed = closed;
  for (int d : darts) {
    t.vertices.push_back(g.tail(d));
    t.edges.push_back(Graph::edge_of(d));
  }
  if (!closed && !darts.empty()) t.vertices.push_back(g.head(darts.back()));
  std::sort(t.edges.begin(), t.edges.end());
  t.darts = std::move(darts);
  return t;
}

}  // namespace detail

/// Trails induced by a transition system (closed and, with end slots, open).
inline Decomposition decompose(const Graph& g, const TransitionSystem& sys) {
  std::vector<char> used(static_cast<std::size_t>(g.edge_count()), 0);
  Decomposition out;
  auto next_dart = [&](int d) -> int {
    const int h = g.head(d);
    const int c = sys[static_cast<std::size_t>(h)][static_cast<std::size_t>(g.slot(d))];
    if (c == g.degree(h)) return -1;  // end slot
    return Graph::opposite(g.incidence(h)[static_cast<std::size_t>(c)]);
  };
  for (int j = 0; j < g.vertex_count(); ++j) {
    const auto& pj = sys[static_cast<std::size_t>(j)];
    if (static_cast<int>(pj.size()) != g.degree(j) + 1) continue;
    const int a = pj[static_cast<std::size_t>(g.degree(j))];
    int d = Graph::opposite(g.incidence(j)[static_cast<std::size_t>(a)]);
    if (used[static_cast<std::size_t>(Graph::edge_of(d))]) continue;
    std::vector<int> darts;
    while (d >= 0) {
      darts.push_back(d);
      used[static_cast<std::size_t>(Graph::edge_of(d))] = 1;
      d = next_dart(d);
    }
    out.trails.push_back(detail::make_trail(g, std::move(darts), false));
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    if (used[static_cast<std::size_t>(e)]) continue;
    const int start = Graph::dart_of(e, 0);
    std::vector<int> darts;
    for (int d = start;;) {
      darts.push_back(d);
      used[static_cast<std::size_t>(Graph::edge_of(d))] = 1;
      d = next_dart(d);
      if (d < 0) throw InternalError("closed trail reached an end slot");
      if (d == start) break;
    }
    out.trails.push_back(detail::make_trail(g, std::move(darts), true));
  }
  std::sort(out.trails.begin(), out.trails.end());
  return out;
}

/// Coefficient ring adapters for the weighted sums below.
struct ElemRing {
  const Field& f;
  using value_type = Elem;
  [[nodiscard]] Elem zero() const { return kZero; }
  [[nodiscard]] Elem one() const { return kOne; }
  [[nodiscard]] Elem lift(Elem c) const { return c; }
  [[nodiscard]] Elem add(Elem a, Elem b) const { return a + b; }
  [[nodiscard]] Elem mul(Elem a, Elem b) const { return f.mul(a, b); }
  [[nodiscard]] Elem sqrt(Elem a) const { return f.sqrt(a); }
};

struct PolyRing {
  const Field& f;
  using value_type = Poly;
  [[nodiscard]] Poly zero() const { return {}; }
  [[nodiscard]] Poly one() const { return Poly::constant(kOne); }
  [[nodiscard]] Poly lift(Elem c) const { return Poly::constant(c); }
  [[nodiscard]] Poly add(const Poly& a, const Poly& b) const { return a + b; }
  [[nodiscard]] Poly mul(const Poly& a, const Poly& b) const { return cycdec::mul(f, a, b); }
  [[nodiscard]] Poly sqrt(const Poly& a) const {
    auto r = try_sqrt(f, a);
    if (!r) throw InputError("path end weights do not multiply to a square polynomial");
    return *r;
  }
};

using Predicate = std::function<bool(const Decomposition&)>;

/// Σ over transition systems (slot layout given by the passage matrix sizes)
/// of (Π matched passage coefficients) · Π_closed (1 + Π w_e)
///   · Π_open (1 + sqrt(w_end1 · w_end2) Π w_e), restricted to `keep`.
template <class Ring>
typename Ring::value_type decomposition_sum(const Ring& ring, const Graph& g, std::span<const PassageMatrix> rs,
                                            std::span<const typename Ring::value_type> edge_w,
                                            std::span<const typename Ring::value_type> vertex_w,
                                            const Predicate& keep = {}, std::uint64_t budget = kDefaultBudget) {
  using V = typename Ring::value_type;
  if (static_cast<int>(rs.size()) != g.vertex_count()) throw InputError("need one passage matrix per vertex");
  if (static_cast<int>(edge_w.size()) != g.edge_count()) throw InputError("need one weight per edge");
  std::vector<int> slots;
  for (int j = 0; j < g.vertex_count(); ++j) {
    const auto s = static_cast<int>(rs[static_cast<std::size_t>(j)].size());
    if (s != g.degree(j) && s != g.degree(j) + 1)
      throw InputError("passage matrix at vertex " + std::to_string(j) + " has incompatible size");
    if (s == g.degree(j) + 1 && static_cast<int>(vertex_w.size()) != g.vertex_count())
      throw InputError("end slots need per-vertex weights");
    slots.push_back(s);
  }
  V total = ring.zero();
  for_each_system(
      g, slots,
      [&](const TransitionSystem& sys) {
        Elem coeff = kOne;
        for (std::size_t j = 0; j < sys.size() && !coeff.is_zero(); ++j)
          for (std::size_t a = 0; a < sys[j].size(); ++a) {
            const auto b = static_cast<std::size_t>(sys[j][a]);
            if (a < b) coeff = ring.f.mul(coeff, rs[j].r(a, b));
          }
        if (coeff.is_zero()) return;
        const Decomposition dec = decompose(g, sys);
        if (keep && !keep(dec)) return;
        V term = ring.lift(coeff);
        for (const Trail& t : dec.trails) {
          V prod = t.closed ? ring.one()
                            : ring.sqrt(ring.mul(vertex_w[static_cast<std::size_t>(t.end1())],
                                                 vertex_w[static_cast<std::size_t>(t.end2())]));
          for (int e : t.edges) prod = ring.mul(prod, edge_w[static_cast<std::size_t>(e)]);
          term = ring.mul(term, ring.add(ring.one(), prod));
        }
        total = ring.add(total, term);
      },
      budget);
  return total;
}

/// The cycle-decomposition value summed over all Eulerian partitions.
template <class Ring>
typename Ring::value_type cycledec_sum(const Ring& ring, const Graph& g, std::span<const PassageMatrix> rs,
                                       std::span<const typename Ring::value_type> edge_w, const Predicate& keep = {}) {
  require_even_degrees(g);
  return decomposition_sum(ring, g, rs, edge_w, std::span<const typename Ring::value_type>{}, keep);
}

/// Keeps decompositions whose every trail passes each vertex j at most q[j] times.
inline Predicate q_simple(std::vector<int> q) {
  return [q = std::move(q)](const Decomposition& d) {
    for (const Trail& t : d.trails)
      for (std::size_t j = 0; j < q.size(); ++j)
        if (t.passes(static_cast<int>(j)) > q[j]) return false;
    return true;
  };
}

inline std::uint64_t count_transition_systems(const Graph& g) { return count_systems(closed_slots(g)); }

/// Every transition system of an even-degree graph with its induced decomposition.
template <class Visitor>
void enum_transition_systems(const Graph& g, Visitor&& visit, std::uint64_t budget = kDefaultBudget) {
  require_even_degrees(g);
  const auto slots = closed_slots(g);
  for_each_system(g, slots, [&](const TransitionSystem& sys) { visit(sys, decompose(g, sys)); }, budget);
}

/// Partitions of E into vertex-simple cycles, each exactly once.
inline std::vector<Decomposition> enum_simple_cycle_decompositions(const Graph& g) {
  if (g.edge_count() > 16) throw BudgetExceeded("simple-cycle enumeration is limited to 16 edges");
  std::vector<Decomposition> out;
  enum_transition_systems(g, [&](const TransitionSystem&, Decomposition d) {
    if (d.all_simple()) out.push_back(std::move(d));
  });
  return out;
}

/// Partitions of a 2h-regular graph into h Hamiltonian cycles.
inline std::vector<Decomposition> enum_hamiltonian_decompositions(const Graph& g) {
  const auto deg = g.regular_degree();
  if (!deg || *deg % 2 != 0) throw InputError("Hamiltonian decompositions need a regular graph of even degree");
  if (g.vertex_count() > 9) throw BudgetExceeded("Hamiltonian enumeration is limited to 9 vertices");
  const int h = *deg / 2;
  std::vector<Decomposition> out;
  enum_transition_systems(g, [&](const TransitionSystem&, Decomposition d) {
    if (static_cast<int>(d.trails.size()) != h) return;
    for (const Trail& t : d.trails)
      if (t.length() != g.vertex_count() || !t.simple()) return;
    out.push_back(std::move(d));
  });
  return out;
}

/// Normal (every vertex an end of exactly one path) or odd-normal (every
/// odd-degree vertex exactly one end, even-degree vertices none) partitions of
/// E into simple cycles and simple paths.
inline std::vector<Decomposition> enum_normal(const Graph& g, bool odd_variant) {
  if (g.edge_count() > 14) throw BudgetExceeded("normal-decomposition enumeration is limited to 14 edges");
  std::vector<int> slots;
  for (int j = 0; j < g.vertex_count(); ++j) {
    const int deg = g.degree(j);
    slots.push_back(odd_variant && deg % 2 == 0 ? deg : deg + 1);
  }
  std::vector<Decomposition> out;
  for_each_system(g, slots, [&](const TransitionSystem& sys) {
    Decomposition d = decompose(g, sys);
    if (d.all_simple()) out.push_back(std::move(d));
  });
  return out;
}

/// Slot-extended primitive passage matrices for normal / odd-normal sums:
/// size deg+1 (all ones off the diagonal) where the vertex carries an end.
inline PassageSet primitive_end_passages(const Graph& g, bool odd_variant) {
  PassageSet out;
  for (int j = 0; j < g.vertex_count(); ++j) {
    const int deg = g.degree(j);
    const bool end = !(odd_variant && deg % 2 == 0);
    out.push_back(primitive_passage(end ? deg + 1 : deg));
  }
  return out;
}

// ---- predicates -----------------------------------------------------------

inline bool meets(const Trail& t, std::span<const int> edges) {
  return std::any_of(edges.begin(), edges.end(), [&](int e) { return t.contains_edge(e); });
}

inline Predicate every_cycle_meets(std::vector<int> f) {
  return [f = std::move(f)](const Decomposition& d) {
    return std::all_of(d.trails.begin(), d.trails.end(), [&](const Trail& t) { return meets(t, f); });
  };
}

/// Each cycle meets F1 ∪ F2 but not both.
inline Predicate cycles_meet_one_side(std::vector<int> f1, std::vector<int> f2) {
  return [f1 = std::move(f1), f2 = std::move(f2)](const Decomposition& d) {
    for (const Trail& t : d.trails) {
      const bool a = meets(t, f1);
      const bool b = meets(t, f2);
      if (a == b) return false;
    }
    return true;
  };
}

/// e lies in one cycle and both g1, g2 in another.
inline Predicate separates_edge_from_pair(int e, int g1, int g2) {
  return [=](const Decomposition& d) {
    const int te = d.trail_of(e);
    const int t1 = d.trail_of(g1);
    return te != t1 && t1 == d.trail_of(g2);
  };
}

inline Predicate edges_in_different_cycles(int e, int g) {
  return [=](const Decomposition& d) { return d.trail_of(e) != d.trail_of(g); };
}

/// Every cycle meets {e, g1, g2} and e shares its cycle with neither g1 nor g2.
inline Predicate e_isolated_from_pair(int e, int g1, int g2) {
  return [=](const Decomposition& d) {
    const int te = d.trail_of(e);
    const std::vector<int> hit{e, g1, g2};
    for (const Trail& t : d.trails)
      if (!meets(t, hit)) return false;
    return te != d.trail_of(g1) && te != d.trail_of(g2);
  };
}

/// No cycles; every path length odd (or every one even).
inline Predicate all_paths_with_parity(bool odd) {
  return [=](const Decomposition& d) {
    if (d.cycle_count() != 0) return false;
    for (int len : d.path_lengths())
      if ((len % 2 != 0) != odd) return false;
    return true;
  };
}

inline Predicate at_most_components(int h) {
  return [=](const Decomposition& d) { return static_cast<int>(d.trails.size()) <= h; };
}

/// Every cycle meets the union of the pairs, none contains a whole pair, and
/// the multigraph on cycles with one edge per pair is connected and bipartite.
inline Predicate pairs_connected_bipartite(std::vector<std::pair<int, int>> pairs) {
  return [pairs = std::move(pairs)](const Decomposition& d) {
    const auto c = d.trails.size();
    std::vector<int> all;
    for (auto [a, b] : pairs) {
      all.push_back(a);
      all.push_back(b);
    }
    for (const Trail& t : d.trails)
      if (!meets(t, all)) return false;
    std::vector<std::vector<int>> adj(c);
    for (auto [a, b] : pairs) {
      const int ta = d.trail_of(a);
      const int tb = d.trail_of(b);
      if (ta == tb) return false;
      adj[static_cast<std::size_t>(ta)].push_back(tb);
      adj[static_cast<std::size_t>(tb)].push_back(ta);
    }
    if (c == 0) return false;
    std::vector<int> side(c, -1);
    std::vector<int> stack{0};
    side[0] = 0;
    std::size_t seen = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u : adj[static_cast<std::size_t>(v)]) {
        auto& su = side[static_cast<std::size_t>(u)];
        if (su < 0) {
          su = 1 - side[static_cast<std::size_t>(v)];
          ++seen;
          stack.push_back(u);
        } else if (su == side[static_cast<std::size_t>(v)]) {
          return false;
        }
      }
    }
    return seen == c;
  };
}

struct ParityCount {
  std::uint64_t count = 0;
  int parity = 0;
};

inline ParityCount oracle_parity(std::span<const Decomposition> decomps, const Predicate& pred = {}) {
  ParityCount pc;
  for (const auto& d : decomps)
    if (!pred || pred(d)) ++pc.count;
  pc.parity = static_cast<int>(pc.count & 1);
  return pc;
}

/// Arguments for name-based predicate construction.
struct PredicateArgs {
  std::vector<int> f;
  std::vector<int> f1;
  std::vector<int> f2;
  int e = -1;
  int g1 = -1;
  int g2 = -1;
  int h = 0;
};

inline Predicate make_predicate(std::string_view name, const PredicateArgs& a) {
  if (name == "all") return [](const Decomposition&) { return true; };
  if (name == "every-cycle-meets-F") return every_cycle_meets(a.f);
  if (name == "no-cycle-meets-both") return cycles_meet_one_side(a.f1, a.f2);
  if (name == "e-separated-from-path") return separates_edge_from_pair(a.e, a.g1, a.g2);
  if (name == "all-paths-odd") return all_paths_with_parity(true);
  if (name == "all-paths-even") return all_paths_with_parity(false);
  if (name == "component-count-at-most-h") return at_most_components(a.h);
  throw InputError("unknown predicate: " + std::string(name));
}

}  // namespace cycdec::oracle
