#pragma once

// Per-vertex passage-coefficient matrices.
//
// A passage matrix R at vertex j is indexed by j's slots (incidence-list
// order) and must be symmetric, unitary (R·Rᵀ = I) and zero-diagonal. The
// generic construction is R = I + PᵀP for a q×deg matrix P with P·Pᵀ = 0 and
// all column sums 1; rank(R + I) = q then limits how many times a surviving
// closed trail may pass through j.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cycdec/errors.hpp"
#include "cycdec/field.hpp"
#include "cycdec/graph.hpp"
#include "cycdec/matrix.hpp"

namespace cycdec {

enum class PassageOrigin { primitive, from_p, lifted };

struct PassageMatrix {
  Matrix r;
  PassageOrigin origin = PassageOrigin::primitive;
  std::size_t rank_plus_identity = 0;  // rank(R + I)

  [[nodiscard]] std::size_t size() const { return r.rows(); }
};

struct PMatrix {
  Matrix p;  // q × deg
  std::size_t q = 0;
};

using PassageSet = std::vector<PassageMatrix>;

/// Name of the first violated passage invariant, if any.
inline std::optional<std::string> passage_violation(const Field& f, const Matrix& r) {
  if (!r.square()) return "not square";
  if (!is_symmetric(r)) return "not symmetric";
  if (!has_zero_diagonal(r)) return "nonzero diagonal";
  if (!is_unitary(f, r)) return "not unitary";
  return std::nullopt;
}

/// R = J + I: every passage through the vertex has coefficient 1.
inline PassageMatrix primitive_passage(int deg) {
  if (deg < 0 || deg % 2 != 0)
    throw InputError("primitive passage matrix needs an even degree, got " + std::to_string(deg));
  const auto n = static_cast<std::size_t>(deg);
  Matrix r = Matrix::filled(n, n, kOne);
  for (std::size_t i = 0; i < n; ++i) r(i, i) = kZero;
  return {std::move(r), PassageOrigin::primitive, deg > 0 ? 1u : 0u};
}

inline std::optional<std::string> p_violation(const Field& f, const PMatrix& pm) {
  const Matrix& p = pm.p;
  if (p.rows() != pm.q) return "row count differs from q";
  if (multiply(f, p, transpose(p)) != Matrix(p.rows(), p.rows())) return "P·Pᵀ is not zero";
  for (std::size_t c = 0; c < p.cols(); ++c) {
    Elem s = kZero;
    for (std::size_t r = 0; r < p.rows(); ++r) s += p(r, c);
    if (s != kOne) return "column " + std::to_string(c) + " does not sum to 1";
  }
  if (rank(f, p) != pm.q) return "rank(P) differs from q";
  return std::nullopt;
}

inline PassageMatrix passage_from_p(const Field& f, const PMatrix& pm) {
  if (auto why = p_violation(f, pm)) throw InputError("invalid P matrix: " + *why);
  const Matrix ptp = multiply(f, transpose(pm.p), pm.p);
  Matrix r = Matrix::identity(pm.p.cols()) + ptp;
  return {std::move(r), PassageOrigin::from_p, rank(f, ptp)};
}

/// Random q×deg matrix with isotropic rows and unit column sums, spanned by the
/// hyperbolic basis f_i = e_{2i} + e_{2i+1}. Row 0 is 1̄ plus the other rows;
/// resamples until rank q, up to max_attempts times.
template <class Rng>
PMatrix random_isotropic_p(const Field& f, int deg, int q, Rng& rng, int max_attempts = 64) {
  if (deg < 2 || deg % 2 != 0) throw InputError("isotropic P needs an even degree >= 2");
  if (q < 1 || q > deg / 2)
    throw InputError("q = " + std::to_string(q) + " outside 1.." + std::to_string(deg / 2));
  const auto cols = static_cast<std::size_t>(deg);
  const auto rows = static_cast<std::size_t>(q);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Matrix p(rows, cols);
    for (std::size_t r = 1; r < rows; ++r)
      for (std::size_t i = 0; i < cols / 2; ++i) {
        const Elem c = f.random(rng);
        p(r, 2 * i) = c;
        p(r, 2 * i + 1) = c;
      }
    for (std::size_t c = 0; c < cols; ++c) {
      Elem s = kOne;
      for (std::size_t r = 1; r < rows; ++r) s += p(r, c);
      p(0, c) = s;
    }
    if (rank(f, p) == rows) return {std::move(p), rows};
  }
  throw BudgetExceeded("could not sample a rank-" + std::to_string(q) + " isotropic P for degree " +
                       std::to_string(deg) + " in GF(2^" + std::to_string(f.bits()) + ")");
}

/// Primitive matrices at every vertex; all degrees must be even.
inline PassageSet primitive_passages(const Graph& g) {
  PassageSet out;
  out.reserve(static_cast<std::size_t>(g.vertex_count()));
  for (int j = 0; j < g.vertex_count(); ++j) out.push_back(primitive_passage(g.degree(j)));
  return out;
}

/// R_j = I + PᵀP with P sampled at rank q[j], vertex by vertex from one
/// generator seeded with `seed`. Isolated vertices get empty matrices and
/// ignore q; q[j] == 1 yields the primitive matrix without consuming randomness.
inline PassageSet generic_passages(const Field& f, const Graph& g, std::span<const int> q,
                                   std::uint64_t seed) {
  if (static_cast<int>(q.size()) != g.vertex_count())
    throw InputError("need one q value per vertex");
  require_even_degrees(g);
  std::mt19937_64 rng(seed);
  PassageSet out;
  for (int j = 0; j < g.vertex_count(); ++j) {
    const int deg = g.degree(j);
    const int qj = q[static_cast<std::size_t>(j)];
    if (deg == 0) {
      out.push_back(primitive_passage(0));
      continue;
    }
    if (qj < 1 || qj > deg / 2)
      throw InputError("q at vertex " + std::to_string(j) + " is " + std::to_string(qj) +
                       ", outside 1.." + std::to_string(deg / 2));
    if (qj == 1) {
      out.push_back(primitive_passage(deg));
      continue;
    }
    try {
      out.push_back(passage_from_p(f, random_isotropic_p(f, deg, qj, rng)));
    } catch (const BudgetExceeded& e) {
      throw BudgetExceeded(std::string(e.what()) + " (seed " + std::to_string(seed) + ")");
    }
  }
  return out;
}

/// Slot map from a doubled-graph vertex to the base vertex's slots. Copied
/// edges map to the base slot of the same edge; the intercopy edge maps to
/// the endedge slot deg_G(j), placed last.
inline std::vector<std::size_t> doubled_slot_map(const DoubledGraph& d, int doubled_vertex) {
  const int j = d.base_vertex(doubled_vertex);
  std::vector<std::size_t> map;
  for (int dd : d.doubled.incidence(doubled_vertex)) {
    if (auto bd = d.base_dart(dd)) {
      map.push_back(static_cast<std::size_t>(d.base.slot(*bd)));
    } else {
      map.push_back(static_cast<std::size_t>(d.base.degree(j)));
    }
  }
  return map;
}

/// Copies R (indexed by j's base slots plus, when j carries an intercopy edge,
/// a trailing endedge slot) onto j' and j''.
inline std::pair<PassageMatrix, PassageMatrix> lift_passage_to_double(const PassageMatrix& r,
                                                                      const DoubledGraph& d,
                                                                      int base_vertex) {
  const int first = d.first_copy(base_vertex);
  const int second = d.second_copy(base_vertex);
  const auto expected = static_cast<std::size_t>(d.doubled.degree(first));
  if (r.size() != expected)
    throw InputError("passage matrix at vertex " + std::to_string(base_vertex) + " has size " +
                     std::to_string(r.size()) + ", doubled degree is " + std::to_string(expected));
  auto lift = [&](int dv) {
    const auto map = doubled_slot_map(d, dv);
    Matrix out(map.size(), map.size());
    for (std::size_t a = 0; a < map.size(); ++a)
      for (std::size_t b = 0; b < map.size(); ++b) out(a, b) = r.r(map[a], map[b]);
    return PassageMatrix{std::move(out), PassageOrigin::lifted, r.rank_plus_identity};
  };
  return {lift(first), lift(second)};
}

/// Passage matrices for the whole doubled graph from per-base-vertex matrices.
inline PassageSet lift_passages(const DoubledGraph& d, std::span<const PassageMatrix> base) {
  const int n = d.base.vertex_count();
  if (static_cast<int>(base.size()) != n) throw InputError("need one passage matrix per base vertex");
  PassageSet out(static_cast<std::size_t>(2 * n));
  for (int j = 0; j < n; ++j) {
    auto [a, b] = lift_passage_to_double(base[static_cast<std::size_t>(j)], d, j);
    out[static_cast<std::size_t>(d.first_copy(j))] = std::move(a);
    out[static_cast<std::size_t>(d.second_copy(j))] = std::move(b);
  }
  return out;
}

}  // namespace cycdec
