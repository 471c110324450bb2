#pragma once

// Parity queries over decompositions, each a coefficient or value of the
// cycle-decomposition polynomial under a specific weighting.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cycdec/engine.hpp"
#include "cycdec/errors.hpp"
#include "cycdec/field.hpp"
#include "cycdec/graph.hpp"
#include "cycdec/passage.hpp"
#include "cycdec/poly.hpp"

namespace cycdec {

struct QueryOptions {
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct ParityResult {
  int parity = 0;
  Elem value;                       // field value the parity was read from
  std::vector<Elem> samples;        // per-point diagnostics, where applicable
  std::vector<std::string> checks;  // side conditions that were verified
  std::vector<std::string> warnings;
  std::uint64_t seed = 0;
  int k = 0;
};

/// Sorted, deduplicated-checked edge index list.
inline std::vector<int> validate_edge_set(const Graph& g, std::span<const int> edges, const std::string& name) {
  std::vector<int> s(edges.begin(), edges.end());
  std::sort(s.begin(), s.end());
  for (int e : s)
    if (e < 0 || e >= g.edge_count())
      throw InputError(name + " contains edge " + std::to_string(e) + ", outside 0.." +
                       std::to_string(g.edge_count() - 1));
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError(name + " lists an edge twice");
  return s;
}

namespace detail {

inline int bit_of(Elem v, const char* what) {
  if (v == kZero) return 0;
  if (v == kOne) return 1;
  throw InternalError(std::string(what) + " is not in GF(2)");
}

inline ParityResult make_result(const Field& f, std::uint64_t seed) {
  ParityResult r;
  r.k = f.bits();
  r.seed = seed;
  return r;
}

inline std::vector<Elem> ones(std::size_t n) { return std::vector<Elem>(n, kOne); }

}  // namespace detail

/// Coefficient of ε^h in cycledec(G, 1 + λε) for 2h-regular G, primitive passages.
/// With λ ≡ 1 and n odd, this is the parity of the number of Hamiltonian decompositions.
inline ParityResult hamdec_parity(const Field& f, const Graph& g, std::span<const Elem> lambda = {},
                                  QueryOptions opts = {}) {
  const auto deg = g.regular_degree();
  if (!deg || *deg % 2 != 0) throw InputError("hamdec needs a regular graph of even degree");
  const int h = *deg / 2;
  std::vector<Elem> lam(lambda.begin(), lambda.end());
  if (lam.empty()) lam = detail::ones(static_cast<std::size_t>(g.edge_count()));
  if (static_cast<int>(lam.size()) != g.edge_count()) throw InputError("need one λ per edge");
  const bool plain = std::all_of(lam.begin(), lam.end(), [](Elem x) { return x == kOne; });

  ParityResult r = detail::make_result(f, opts.seed);
  r.checks.push_back("regular of degree " + std::to_string(*deg));
  const Poly p = cycledec_poly(f, g, primitive_passages(g), WeightExpr::one_plus(lam), {opts.threads});
  r.value = p.coeff(h);
  if (plain) {
    if (g.vertex_count() % 2 == 0)
      r.warnings.push_back("even vertex count: the coefficient is not the plain decomposition parity");
    r.parity = detail::bit_of(r.value, "hamdec coefficient");
  } else {
    r.warnings.push_back("general λ: parity reports whether the coefficient is nonzero");
    r.parity = r.value.is_zero() ? 0 : 1;
  }
  return r;
}

/// Parity of decompositions into simple cycles that each meet F: cycledec with
/// weight 0 on F and 1 elsewhere.
inline ParityResult cover_parity(const Field& f, const Graph& g, std::span<const int> edges,
                                 QueryOptions opts = {}) {
  const auto fs = validate_edge_set(g, edges, "F");
  if (fs.empty()) throw InputError("F must be nonempty");
  require_even_degrees(g);
  auto w = detail::ones(static_cast<std::size_t>(g.edge_count()));
  for (int e : fs) w[static_cast<std::size_t>(e)] = kZero;
  ParityResult r = detail::make_result(f, opts.seed);
  r.checks.push_back("even degrees");
  r.value = cycledec_eval(f, g, primitive_passages(g), w);
  r.parity = detail::bit_of(r.value, "cover value");
  return r;
}

/// Weights α^{-1} on F1, α on F2, 1 elsewhere.
inline WeightExpr split_weights(const Graph& g, std::span<const int> f1, std::span<const int> f2) {
  WeightExpr w = WeightExpr::constant(g.edge_count(), kOne);
  for (int e : f1) w.per_edge[static_cast<std::size_t>(e)] = Poly::monomial(kOne, -1);
  for (int e : f2) w.per_edge[static_cast<std::size_t>(e)] = Poly::monomial(kOne, 1);
  return w;
}

inline std::pair<std::vector<int>, std::vector<int>> validate_split(const Graph& g, std::span<const int> f1,
                                                                    std::span<const int> f2) {
  auto a = validate_edge_set(g, f1, "F1");
  auto b = validate_edge_set(g, f2, "F2");
  std::vector<int> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (!common.empty()) throw InputError("F1 and F2 overlap at edge " + std::to_string(common.front()));
  if (a.empty() && b.empty()) throw InputError("F1 and F2 are both empty");
  return {std::move(a), std::move(b)};
}

/// Parity of decompositions into simple cycles, each meeting exactly one of F1, F2.
inline ParityResult split_cover_parity(const Field& f, const Graph& g, std::span<const int> f1,
                                       std::span<const int> f2, QueryOptions opts = {}) {
  auto [a, b] = validate_split(g, f1, f2);
  require_even_degrees(g);
  ParityResult r = detail::make_result(f, opts.seed);
  r.checks.push_back("even degrees");
  r.checks.push_back("F1 and F2 disjoint");
  const Poly p = cycledec_poly(f, g, primitive_passages(g), split_weights(g, a, b), {opts.threads});
  r.value = p.coeff(static_cast<int>(b.size()));
  r.parity = detail::bit_of(r.value, "split-cover coefficient");
  return r;
}

struct ThomasonOptions {
  bool require_bipartite = true;
  bool require_path = true;
};

inline bool share_one_endpoint(const Graph& g, int a, int b) {
  const Edge x = g.edge(a);
  const Edge y = g.edge(b);
  const int shared = (x.u == y.u || x.u == y.v) + (x.v == y.u || x.v == y.v);
  return shared == 1;
}

/// For 4-regular G: α/(1+α)³ · cycledec(G, w) with w_e = α^{-1}, w_g1 = w_g2 = α,
/// else 1, evaluated at three α and required to agree. On a bipartite graph
/// with {g1, g2} a path, the bit is the parity of Hamiltonian pairs in which e
/// and the path lie in different cycles.
inline ParityResult thomason_refined_parity(const Field& f, const Graph& g, int e, int g1, int g2,
                                            ThomasonOptions topts = {}, QueryOptions opts = {}) {
  const auto deg = g.regular_degree();
  if (!deg || *deg != 4) throw InputError("not 4-regular: degree check failed");
  for (int x : {e, g1, g2})
    if (x < 0 || x >= g.edge_count()) throw InputError("edge " + std::to_string(x) + " out of range");
  if (e == g1 || e == g2 || g1 == g2) throw InputError("e, g1, g2 must be distinct");
  ParityResult r = detail::make_result(f, opts.seed);
  r.checks.push_back("4-regular");
  if (topts.require_bipartite) {
    if (!g.is_bipartite()) throw InputError("not bipartite: bipartite check failed");
    r.checks.push_back("bipartite");
  }
  if (topts.require_path) {
    if (!share_one_endpoint(g, g1, g2)) throw InputError("g1 and g2 do not form a path of length 2");
    r.checks.push_back("g1,g2 path");
  }
  if (f.group_order() < 4) throw InputError("field too small for three evaluation points");
  const auto rs = primitive_passages(g);
  Elem alpha = kOne;
  std::optional<Elem> agreed;
  for (int i = 0; i < 3; ++i) {
    alpha = f.mul(alpha, f.generator());
    auto w = detail::ones(static_cast<std::size_t>(g.edge_count()));
    w[static_cast<std::size_t>(e)] = f.inv(alpha);
    w[static_cast<std::size_t>(g1)] = alpha;
    w[static_cast<std::size_t>(g2)] = alpha;
    const Elem v = cycledec_eval(f, g, rs, w);
    const Elem one_plus = alpha + kOne;
    const Elem scaled = f.div(f.mul(alpha, v), f.mul(one_plus, f.square(one_plus)));
    r.samples.push_back(scaled);
    if (agreed && *agreed != scaled) throw InternalError("evaluation points disagree; preconditions violated");
    agreed = scaled;
  }
  r.value = *agreed;
  r.parity = detail::bit_of(r.value, "scaled value");
  r.checks.push_back("three-point agreement");
  return r;
}

inline constexpr std::size_t kMaxPairs = 20;

/// XOR over selections F (one edge of each pair, e1 always chosen) of
/// split_cover_parity(G, F, union ∖ F).
inline ParityResult pairs_aggregate_parity(const Field& f, const Graph& g,
                                           std::span<const std::pair<int, int>> pairs, QueryOptions opts = {}) {
  if (pairs.empty()) throw InputError("need at least one pair");
  if (pairs.size() > kMaxPairs)
    throw BudgetExceeded("at most " + std::to_string(kMaxPairs) + " pairs are supported");
  std::vector<int> all;
  for (auto [a, b] : pairs) {
    all.push_back(a);
    all.push_back(b);
  }
  validate_edge_set(g, all, "pairs");
  require_even_degrees(g);
  ParityResult r = detail::make_result(f, opts.seed);
  r.checks.push_back("pairs disjoint");
  const std::uint64_t selections = std::uint64_t{1} << (pairs.size() - 1);
  int acc = 0;
  for (std::uint64_t mask = 0; mask < selections; ++mask) {
    std::vector<int> f1{pairs[0].first};
    std::vector<int> f2{pairs[0].second};
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      const bool swap = ((mask >> (i - 1)) & 1) != 0;
      f1.push_back(swap ? pairs[i].second : pairs[i].first);
      f2.push_back(swap ? pairs[i].first : pairs[i].second);
    }
    acc ^= split_cover_parity(f, g, f1, f2, opts).parity;
  }
  r.parity = acc;
  r.value = acc ? kOne : kZero;
  return r;
}

/// cycledec with seeded generic passage matrices of rank q_j at each vertex.
inline Poly qsimple_value(const Field& f, const Graph& g, std::span<const int> q, const WeightExpr& w,
                          std::uint64_t seed, QueryOptions opts = {}) {
  const auto rs = generic_passages(f, g, q, seed);
  return cycledec_poly(f, g, rs, w, {opts.threads});
}

/// Seeded λ values for the existence test, drawn independently of the passage matrices.
inline std::vector<Elem> seeded_lambda(const Field& f, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Elem> out;
  for (int e = 0; e < m; ++e) out.push_back(f.random(rng));
  return out;
}

struct ExistenceResult {
  bool certified = false;  // false means inconclusive
  Elem coefficient;
  std::uint64_t seed = 0;
  int k = 0;
};

/// A nonzero coefficient of ε^h in qsimple_value(1 + λε) certifies a
/// decomposition into at most h q-simple closed trails.
inline ExistenceResult qsimple_existence(const Field& f, const Graph& g, std::span<const int> q, int h,
                                         std::uint64_t seed, QueryOptions opts = {}) {
  if (h < 0) throw InputError("h must be nonnegative");
  const auto lam = seeded_lambda(f, g.edge_count(), seed);
  const Poly p = qsimple_value(f, g, q, WeightExpr::one_plus(lam), seed, opts);
  ExistenceResult r;
  r.coefficient = p.coeff(h);
  r.certified = !r.coefficient.is_zero();
  r.seed = seed;
  r.k = f.bits();
  return r;
}

enum class PathMode { odd_paths, even_paths };

/// Weights on a doubled graph: copied edges carry the base edge's weight,
/// intercopy edges the weight of their base vertex.
inline WeightExpr doubled_weights(const DoubledGraph& d, const WeightExpr& edge_w, std::span<const Poly> vertex_w) {
  const int m = d.base.edge_count();
  if (static_cast<int>(edge_w.per_edge.size()) != m) throw InputError("need one weight per edge");
  if (static_cast<int>(vertex_w.size()) != d.base.vertex_count()) throw InputError("need one weight per vertex");
  WeightExpr w;
  for (int copy = 0; copy < 2; ++copy) w.per_edge.insert(w.per_edge.end(), edge_w.per_edge.begin(), edge_w.per_edge.end());
  for (int v : d.intercopy_vertex) w.per_edge.push_back(vertex_w[static_cast<std::size_t>(v)]);
  return w;
}

/// sqrt(cycledec(Double(G), ŵ)) with primitive passage matrices.
inline Poly doubled_value(const Field& f, const DoubledGraph& d, const WeightExpr& edge_w,
                          std::span<const Poly> vertex_w, unsigned threads) {
  const Poly full = cycledec_poly(f, d.doubled, primitive_passages(d.doubled), doubled_weights(d, edge_w, vertex_w),
                                  {threads});
  auto root = try_sqrt(f, full);
  if (!root) throw InputError("cycledec of the doubled graph is not a square; vertex weights must be squares");
  return *root;
}

/// Parity of normal decompositions of an all-odd-degree graph of even order
/// into simple paths that are all odd (or all even) in length.
inline ParityResult pathdec_parity(const Field& f, const Graph& g, PathMode mode, QueryOptions opts = {}) {
  std::vector<int> even;
  for (int j = 0; j < g.vertex_count(); ++j)
    if (g.degree(j) % 2 == 0) even.push_back(j);
  if (!even.empty()) throw InputError("even-degree vertices: " + vertex_list(even));
  if (g.vertex_count() % 2 != 0) throw InputError("vertex count must be even");
  ParityResult r = detail::make_result(f, opts.seed);
  r.checks.push_back("all degrees odd");
  r.checks.push_back("even order");
  const DoubledGraph d = make_double(g, Doubling::full);
  const Poly eps = Poly::monomial(kOne, 1);
  const Poly one = Poly::constant(kOne);
  const WeightExpr edge_w{std::vector<Poly>(static_cast<std::size_t>(g.edge_count()), one + eps)};
  const Poly end_w = mode == PathMode::odd_paths ? one : one + eps;
  const std::vector<Poly> vertex_w(static_cast<std::size_t>(g.vertex_count()), end_w);
  const Poly p = doubled_value(f, d, edge_w, vertex_w, opts.threads);
  r.value = p.coeff(g.vertex_count() / 2);
  r.parity = detail::bit_of(r.value, "pathdec coefficient");
  return r;
}

/// Odd-normal cycle-path value: sqrt(cycledec(oddDouble(G), ŵ)).
inline Poly oddpathdec_value(const Field& f, const Graph& g, const WeightExpr& edge_w, std::span<const Poly> vertex_w,
                             QueryOptions opts = {}) {
  return doubled_value(f, make_double(g, Doubling::odd_only), edge_w, vertex_w, opts.threads);
}

}  // namespace cycdec
