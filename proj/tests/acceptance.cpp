// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "corpus.hpp"

using namespace cycdec;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Records the first mismatch; further mismatches only bump the counter.
struct Tally {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  [[nodiscard]] Outcome outcome(const std::string& summary) const {
    std::ostringstream os;
    os << summary << "; " << checks << " checks";
    if (failures) os << ", " << failures << " failed, first: " << first;
    return {failures == 0, os.str()};
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<int> max_q(const Graph& g) {
  std::vector<int> q;
  for (int d : g.degrees()) q.push_back(std::max(1, d / 2));
  return q;
}

Poly one_plus_eps() { return Poly::constant(kOne) + Poly::monomial(kOne, 1); }

// 1. det(U^{•2} + Diag(w)) = (oracle cycledec)^2, primitive and seeded-generic.
Outcome determinant_identity() {
  const Field f(16);
  std::mt19937_64 rng(1001);
  Tally t;
  const auto graphs = corpus::even_corpus();
  for (const auto& [name, g] : graphs) {
    const std::vector<std::pair<std::string, PassageSet>> sets{{"primitive", primitive_passages(g)},
                                                               {"generic", generic_passages(f, g, max_q(g), 2024)}};
    for (const auto& [kind, rs] : sets) {
      for (int rep = 0; rep < 25; ++rep) {
        const auto w = corpus::random_weights(f, static_cast<std::size_t>(g.edge_count()), rng);
        const Elem expected = oracle::cycledec_sum(oracle::ElemRing{f}, g, std::span<const PassageMatrix>(rs),
                                                   std::span<const Elem>(w));
        t.expect(cycledec_det(f, g, rs, w) == f.square(expected), name + " " + kind + " rep " + std::to_string(rep));
      }
    }
  }
  return t.outcome(std::to_string(graphs.size()) + " graphs x 25 weight vectors x {primitive, generic} over GF(2^16)");
}

// 2. Hamiltonian decomposition parity.
Outcome hamdec() {
  const Field f(32);
  Tally t;
  const Graph k5 = corpus::complete(5);
  const int engine = hamdec_parity(f, k5).parity;
  const auto count = oracle::enum_hamiltonian_decompositions(k5).size();
  t.expect(engine == 0, "K5 engine parity " + std::to_string(engine));
  t.expect(count == 6, "K5 oracle count " + std::to_string(count));
  const std::vector<corpus::Named> graphs{{"C3", corpus::cycle(3)},
                                          {"C5", corpus::cycle(5)},
                                          {"C7", corpus::cycle(7)},
                                          {"K5", k5},
                                          {"random 4-regular n=5", corpus::random_regular(5, 4, 3)},
                                          {"random 4-regular n=7", corpus::random_regular(7, 4, 12)},
                                          {"random 4-regular n=7 (b)", corpus::random_regular(7, 4, 13)},
                                          {"C7(1,2)", corpus::circulant(7, {1, 2})}};
  for (const auto& [name, g] : graphs) {
    const auto n = oracle::enum_hamiltonian_decompositions(g).size();
    t.expect(hamdec_parity(f, g).parity == static_cast<int>(n % 2), name);
  }
  return t.outcome("K5: engine " + std::to_string(engine) + ", oracle count " + std::to_string(count) + "; " +
                   std::to_string(graphs.size()) + " odd-order regular graphs");
}

// 3. cover over every nonempty F; split cover over 50 random (F1, F2) per graph.
Outcome cover_and_split() {
  const Field f(32);
  std::mt19937_64 rng(1003);
  Tally t;
  std::uint64_t covers = 0;
  std::uint64_t splits = 0;
  for (const auto& [name, g] : corpus::even_corpus()) {
    const auto decomps = oracle::enum_simple_cycle_decompositions(g);
    const int m = g.edge_count();
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      std::vector<int> fs;
      for (int e = 0; e < m; ++e)
        if ((mask >> e) & 1u) fs.push_back(e);
      t.expect(cover_parity(f, g, fs).parity == oracle::oracle_parity(decomps, oracle::every_cycle_meets(fs)).parity,
               name + " cover mask " + std::to_string(mask));
      ++covers;
    }
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<int> f1, f2;
      for (int e = 0; e < m; ++e) {
        const auto r = rng() % 3;
        if (r == 0) f1.push_back(e);
        if (r == 1) f2.push_back(e);
      }
      if (f1.empty() && f2.empty()) f1.push_back(static_cast<int>(rng() % static_cast<unsigned>(m)));
      t.expect(split_cover_parity(f, g, f1, f2).parity ==
                   oracle::oracle_parity(decomps, oracle::cycles_meet_one_side(f1, f2)).parity,
               name + " split rep " + std::to_string(rep));
      ++splits;
    }
  }
  return t.outcome(std::to_string(covers) + " cover sets, " + std::to_string(splits) + " split pairs");
}

// 4. Refined Thomason parity on bipartite 4-regular graphs with path {g1, g2}.
Outcome thomason() {
  const Field f(32);
  std::mt19937_64 rng(1004);
  Tally t;
  std::uint64_t agreement_failures = 0;
  const std::vector<corpus::Named> graphs{{"doubled C4", corpus::doubled_c4()},
                                          {"K4,4", corpus::complete_bipartite(4, 4)},
                                          {"C8(1,3)", corpus::circulant(8, {1, 3})}};
  for (const auto& [name, g] : graphs) {
    const auto hams = oracle::enum_hamiltonian_decompositions(g);
    std::set<std::tuple<int, int, int>> done;
    const int m = g.edge_count();
    while (done.size() < 20) {
      const int e = static_cast<int>(rng() % static_cast<unsigned>(m));
      const int g1 = static_cast<int>(rng() % static_cast<unsigned>(m));
      const int g2 = static_cast<int>(rng() % static_cast<unsigned>(m));
      if (e == g1 || e == g2 || g1 >= g2 || !share_one_endpoint(g, g1, g2)) continue;
      if (!done.insert({e, g1, g2}).second) continue;
      const std::string where = name + " e=" + std::to_string(e) + " g1=" + std::to_string(g1) +
                                " g2=" + std::to_string(g2);
      try {
        const auto r = thomason_refined_parity(f, g, e, g1, g2);
        t.expect(r.parity == oracle::oracle_parity(hams, oracle::separates_edge_from_pair(e, g1, g2)).parity, where);
      } catch (const InternalError&) {
        ++agreement_failures;
        t.expect(false, where + " (three-point disagreement)");
      }
    }
  }
  for (const auto& [name, g] : corpus::four_regular_corpus()) {
    const auto hams = oracle::enum_hamiltonian_decompositions(g);
    for (int e = 0; e < g.edge_count(); ++e)
      for (int h = e + 1; h < g.edge_count(); ++h)
        t.expect(oracle::oracle_parity(hams, oracle::edges_in_different_cycles(e, h)).parity == 0,
                 name + " evenness e=" + std::to_string(e) + " g=" + std::to_string(h));
  }
  return t.outcome("3 graphs x 20 path configurations, three-point agreement failures " +
                   std::to_string(agreement_failures) + "; evenness on " +
                   std::to_string(corpus::four_regular_corpus().size()) + " 4-regular graphs");
}

// 5. q-simple values and existence certificates.
Outcome qsimple() {
  const Field f(32);
  std::mt19937_64 rng(1005);
  Tally t;
  const std::vector<std::pair<Graph, std::vector<int>>> value_cases{{corpus::bowtie(), {2, 1, 1, 1, 1}},
                                                                    {corpus::bowtie(), {1, 1, 1, 1, 1}},
                                                                    {corpus::two_hubs(), {2, 2, 1, 1, 1, 1}},
                                                                    {corpus::two_hubs(), {1, 2, 1, 1, 1, 1}}};
  for (const auto& [g, q] : value_cases) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto w = corpus::random_weights(f, static_cast<std::size_t>(g.edge_count()), rng);
      WeightExpr we;
      for (Elem x : w) we.per_edge.push_back(Poly::constant(x));
      const auto rs = generic_passages(f, g, q, seed);
      const Elem restricted = oracle::cycledec_sum(oracle::ElemRing{f}, g, std::span<const PassageMatrix>(rs),
                                                   std::span<const Elem>(w), oracle::q_simple(q));
      t.expect(qsimple_value(f, g, q, we, seed).coeff(0) == restricted, "value seed " + std::to_string(seed));
    }
  }
  std::uint64_t certified = 0;
  std::uint64_t queries = 0;
  for (const auto& [name, g] : corpus::even_corpus()) {
    std::vector<std::vector<int>> qs{corpus::all_ones_q(g), max_q(g)};
    for (const auto& q : qs) {
      std::vector<std::size_t> best;  // fewest q-simple closed trails
      std::size_t fewest = SIZE_MAX;
      const auto keep = oracle::q_simple(q);
      oracle::enum_transition_systems(g, [&](const oracle::TransitionSystem&, const oracle::Decomposition& d) {
        if (keep(d)) fewest = std::min(fewest, d.trails.size());
      });
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        for (int h = 1; h <= 4; ++h) {
          const auto r = qsimple_existence(f, g, q, h, seed);
          ++queries;
          if (!r.certified) continue;
          ++certified;
          t.expect(fewest <= static_cast<std::size_t>(h), name + " false certificate h=" + std::to_string(h));
        }
      }
    }
  }
  t.expect(certified > 0, "no certificates issued at all");
  return t.outcome("values on bowtie and two-hub graph x 10 seeds; " + std::to_string(certified) + " of " +
                   std::to_string(queries) + " existence queries certified, all confirmed");
}

// 6. Path parities and odd-normal values.
Outcome paths() {
  const Field f(32);
  Tally t;
  const std::vector<corpus::Named> normal{{"P2", corpus::path2()},
                                          {"K1,3", corpus::complete_bipartite(1, 3)},
                                          {"K4", corpus::complete(4)},
                                          {"K3,3", corpus::complete_bipartite(3, 3)}};
  for (const auto& [name, g] : normal) {
    const auto decomps = oracle::enum_normal(g, false);
    for (bool odd : {true, false})
      t.expect(pathdec_parity(f, g, odd ? PathMode::odd_paths : PathMode::even_paths).parity ==
                   oracle::oracle_parity(decomps, oracle::all_paths_with_parity(odd)).parity,
               name + (odd ? " odd" : " even"));
  }
  const std::vector<corpus::Named> odd_graphs{{"triangle+pendant", corpus::triangle_pendant()},
                                              {"random mixed A", corpus::random_mixed(5, 8, 21)},
                                              {"random mixed B", corpus::random_mixed(6, 10, 22)}};
  const oracle::PolyRing ring{f};
  for (const auto& [name, g] : odd_graphs) {
    const auto decomps = oracle::enum_normal(g, true);
    const std::vector<Poly> ew(static_cast<std::size_t>(g.edge_count()), one_plus_eps());
    for (bool even_mode : {false, true}) {
      const std::vector<Poly> vw(static_cast<std::size_t>(g.vertex_count()),
                                 even_mode ? one_plus_eps() : Poly::constant(kOne));
      const Poly engine = oddpathdec_value(f, g, WeightExpr{ew}, vw);
      t.expect(engine == corpus::sum_over(ring, decomps, ew, vw), name + (even_mode ? " even mode" : " odd mode"));
    }
  }
  const Poly tp = oddpathdec_value(f, corpus::triangle_pendant(), WeightExpr{std::vector<Poly>(4, one_plus_eps())},
                                   std::vector<Poly>(4, Poly::constant(kOne)));
  t.expect(tp.coeff(2) == kOne, "triangle+pendant coefficient");
  return t.outcome("pathdec on 4 graphs x {odd, even}; oddpathdec polynomials on 3 graphs");
}

// 7. Cycle polynomial and ham of unitary matrices against brute force.
Outcome unitary() {
  const Field f(16);
  std::mt19937_64 rng(1007);
  Tally t;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 5);
    const Matrix a = corpus::random_unitary(f, n, rng);
    const auto d = corpus::random_weights(f, n, rng);
    const Elem v = cycle_poly_unitary(f, a, d);
    t.expect(v == corpus::cycle_poly_by_subsets(f, a, d), "subsets, matrix " + std::to_string(i));
    t.expect(v == corpus::cycle_poly_by_permutations(f, a, d), "permutations, matrix " + std::to_string(i));
    t.expect(ham_unitary(f, a) == corpus::ham_by_permutations(f, a), "ham, matrix " + std::to_string(i));
  }
  return t.outcome("50 random unitary matrices of sizes 2-6 over GF(2^16)");
}

// 8. Performance smoke test at |E| = 100.
Outcome performance() {
  const Field f(32);
  Tally t;
  const Graph g = corpus::random_regular(50, 4, 1008);
  std::mt19937_64 rng(1008);
  std::vector<int> fs;
  for (int e = 0; e < g.edge_count(); ++e)
    if (rng() % 10 == 0) fs.push_back(e);
  const auto lam = corpus::random_weights(f, static_cast<std::size_t>(g.edge_count()), rng);
  const auto rs = primitive_passages(g);

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<int> parities;
  std::vector<Poly> polys;
  for (int run = 0; run < 3; ++run) {
    parities.push_back(cover_parity(f, g, fs).parity);
    polys.push_back(cycledec_poly(f, g, rs, WeightExpr::one_plus(lam), {1}));
  }
  const double single = seconds_since(t0) / 3;
  const auto t1 = std::chrono::steady_clock::now();
  const Poly threaded = cycledec_poly(f, g, rs, WeightExpr::one_plus(lam), {4});
  const double multi = seconds_since(t1);

  t.expect(parities[0] == parities[1] && parities[1] == parities[2], "cover parity differs across runs");
  t.expect(polys[0] == polys[1] && polys[1] == polys[2], "polynomial differs across runs");
  t.expect(threaded == polys[0], "threaded polynomial differs");
  t.expect(single < 30.0, "single run took " + std::to_string(single) + " s");
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << "|E| = 100, 201-point evaluation: " << single << " s per run (1 thread), " << multi
     << " s (4 threads)";
  return t.outcome(os.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 determinant identity", determinant_identity},
      {"2 Hamiltonian decomposition parity", hamdec},
      {"3 cover and split-cover parity", cover_and_split},
      {"4 refined Thomason parity", thomason},
      {"5 q-simple values and existence", qsimple},
      {"6 path and odd-normal decompositions", paths},
      {"7 unitary cycle polynomial and ham", unitary},
      {"8 performance smoke test", performance}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  criterion %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
