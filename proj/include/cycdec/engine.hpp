#pragma once

// The determinant engine.
//
// For an even-degree graph with symmetric unitary zero-diagonal passage
// matrices, det(U^{•2} + Diag(w⃗)) is the square of the cycle-decomposition
// value
//
//   cycledec = Σ_{D ∈ Eulerdec(G)} (Π passage coefficients) Π_{C ∈ D} (1 + Π_{e ∈ C} w_e),
//
// where U is the dart-to-dart transition matrix. cycledec is recovered by the
// Frobenius square root. Weights that depend on one formal variable are handled
// by evaluating at powers of a field generator and interpolating.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cycdec/errors.hpp"
#include "cycdec/field.hpp"
#include "cycdec/graph.hpp"
#include "cycdec/matrix.hpp"
#include "cycdec/passage.hpp"
#include "cycdec/poly.hpp"

namespace cycdec {

/// 2m×2m dart adjacency: u(d1, d2) = R_j(slot of d1, slot of opposite(d2)) when
/// head(d1) = tail(d2) = j, zero otherwise.
struct TransitionMatrix {
  Matrix u;
};

inline void check_passage_sizes(const Graph& g, std::span<const PassageMatrix> rs) {
  if (static_cast<int>(rs.size()) != g.vertex_count())
    throw InputError("expected " + std::to_string(g.vertex_count()) + " passage matrices, got " +
                     std::to_string(rs.size()));
  for (int j = 0; j < g.vertex_count(); ++j) {
    const auto sz = rs[static_cast<std::size_t>(j)].size();
    if (sz != static_cast<std::size_t>(g.degree(j)))
      throw InputError("passage matrix at vertex " + std::to_string(j) + " has size " +
                       std::to_string(sz) + ", degree is " + std::to_string(g.degree(j)));
  }
}

inline TransitionMatrix build_transition(const Graph& g, std::span<const PassageMatrix> rs) {
  check_passage_sizes(g, rs);
  const auto darts = static_cast<std::size_t>(g.dart_count());
  Matrix u(darts, darts);
  for (int d1 = 0; d1 < g.dart_count(); ++d1) {
    const int j = g.head(d1);
    const Matrix& r = rs[static_cast<std::size_t>(j)].r;
    const auto a = static_cast<std::size_t>(g.slot(d1));
    for (int in : g.incidence(j)) {
      const int d2 = Graph::opposite(in);
      u(static_cast<std::size_t>(d1), static_cast<std::size_t>(d2)) = r(a, static_cast<std::size_t>(g.slot(in)));
    }
  }
  return {std::move(u)};
}

/// cycle(A, d) = Σ_π Π a_{i,π(i)} Π_{cycles C of π} (1 + Π_{i∈C} d_i), computed for
/// unitary A as det(A^{•2} + Diag(d)).
inline Elem cycle_poly_unitary(const Field& f, const Matrix& a, std::span<const Elem> d) {
  if (!is_unitary(f, a)) throw InputError("cycle polynomial: matrix is not unitary");
  if (d.size() != a.rows()) throw InputError("cycle polynomial: vector length differs from matrix size");
  Matrix m = entrywise_square(f, a);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) += d[i];
  return det(f, std::move(m));
}

/// Σ over cyclic permutations π (a single n-cycle) of Π a_{i,π(i)}, for unitary A.
inline Elem ham_unitary(const Field& f, const Matrix& a) {
  if (a.rows() == 0) throw InputError("ham of an empty matrix");
  std::vector<Elem> d(a.rows(), kOne);
  d[0] = kZero;
  return cycle_poly_unitary(f, a, d);
}

/// det(U^{•2} + Diag(w⃗)) for per-edge weights.
inline Elem cycledec_det(const Field& f, const Graph& g, std::span<const PassageMatrix> rs,
                         std::span<const Elem> edge_weights) {
  require_even_degrees(g);
  if (static_cast<int>(edge_weights.size()) != g.edge_count())
    throw InputError("expected one weight per edge");
  Matrix m = entrywise_square(f, build_transition(g, rs).u);
  for (int d = 0; d < g.dart_count(); ++d)
    m(static_cast<std::size_t>(d), static_cast<std::size_t>(d)) +=
        edge_weights[static_cast<std::size_t>(Graph::edge_of(d))];
  return det(f, std::move(m));
}

inline Elem cycledec_eval(const Field& f, const Graph& g, std::span<const PassageMatrix> rs,
                          std::span<const Elem> edge_weights) {
  return f.sqrt(cycledec_det(f, g, rs, edge_weights));
}

/// Per-edge weights as Laurent polynomials in a single formal variable.
struct WeightExpr {
  std::vector<Poly> per_edge;

  static WeightExpr constant(int m, Elem c) {
    return {std::vector<Poly>(static_cast<std::size_t>(m), Poly::constant(c))};
  }
  /// w_e = 1 + λ_e t^power.
  static WeightExpr one_plus(std::span<const Elem> lambda, int power = 1) {
    WeightExpr w;
    for (Elem l : lambda) w.per_edge.push_back(Poly::constant(kOne) + Poly::monomial(l, power));
    return w;
  }

  /// Σ_e max(0, -lowest exponent of w_e).
  [[nodiscard]] int negative_span() const {
    int s = 0;
    for (const Poly& p : per_edge) s += std::max(0, -p.low());
    return s;
  }
  /// Σ_e max(0, highest exponent of w_e).
  [[nodiscard]] int positive_span() const {
    int s = 0;
    for (const Poly& p : per_edge) s += std::max(0, p.high());
    return s;
  }
};

struct EvalOptions {
  unsigned threads = 1;
};

/// Deterministic evaluation points g^0, g^1, ..., g^(n-1) for the field generator g.
inline std::vector<Elem> evaluation_points(const Field& f, std::size_t n) {
  if (n > f.group_order())
    throw InputError("field too small: need " + std::to_string(n) + " distinct nonzero points in GF(2^" +
                     std::to_string(f.bits()) + ")");
  std::vector<Elem> xs(n);
  Elem x = kOne;
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x;
    x = f.mul(x, f.generator());
  }
  return xs;
}

namespace detail {

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// cycledec as a Laurent polynomial in the formal variable t.
///
/// With S = negative_span and H = positive_span, t^(2S)·det is a polynomial of
/// degree <= 2(S + H) (only the diagonal carries t), so N = 2(S + H) + 1
/// evaluations determine it. Odd coefficients must vanish; halving exponents,
/// taking coefficient square roots and shifting by -S yields cycledec.
inline Poly cycledec_poly(const Field& f, const Graph& g, std::span<const PassageMatrix> rs,
                          const WeightExpr& w, EvalOptions opts = {}) {
  require_even_degrees(g);
  if (static_cast<int>(w.per_edge.size()) != g.edge_count()) throw InputError("expected one weight per edge");
  const int s = w.negative_span();
  const int h = w.positive_span();
  const auto n_points = static_cast<std::size_t>(2 * (s + h) + 1);
  const auto xs = evaluation_points(f, n_points);
  const Matrix base = entrywise_square(f, build_transition(g, rs).u);

  std::vector<std::pair<Elem, Elem>> samples(n_points);
  detail::parallel_for(n_points, opts.threads, [&](std::size_t i) {
    const Elem x = xs[i];
    Matrix m = base;
    std::vector<Elem> we(w.per_edge.size());
    for (std::size_t e = 0; e < we.size(); ++e) we[e] = evaluate(f, w.per_edge[e], x);
    for (int d = 0; d < g.dart_count(); ++d)
      m(static_cast<std::size_t>(d), static_cast<std::size_t>(d)) += we[static_cast<std::size_t>(Graph::edge_of(d))];
    samples[i] = {x, f.mul(f.pow(x, static_cast<std::uint64_t>(2 * s)), det(f, std::move(m)))};
  });

  const Poly shifted_det = interpolate(f, samples);
  auto root = try_sqrt(f, shifted_det);
  if (!root) throw InternalError("interpolated determinant has a nonzero odd coefficient");
  return root->shifted(-s);
}

}  // namespace cycdec
