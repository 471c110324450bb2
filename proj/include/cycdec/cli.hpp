#pragma once

// Command-line front end: `compute`, `oracle` and `compare` subcommands over
// the parity queries. Output is one JSON object (or key: value text) per run.
// Exit codes: 0 success / match, 1 compare mismatch, 2 validation error,
// 3 internal error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cycdec/errors.hpp"
#include "cycdec/field.hpp"
#include "cycdec/graph.hpp"
#include "cycdec/oracle.hpp"
#include "cycdec/passage.hpp"
#include "cycdec/poly.hpp"
#include "cycdec/queries.hpp"

namespace cycdec::cli {

using Json = nlohmann::ordered_json;

inline const std::vector<std::string>& query_names() {
  static const std::vector<std::string> names{"hamdec-parity", "cover-parity",  "split-cover",
                                              "thomason",      "pairs-aggregate", "qsimple-value",
                                              "qsimple-exists", "pathdec-parity", "oddpathdec"};
  return names;
}

struct RunConfig {
  std::string subcommand;
  std::string query;
  std::string graph_path;
  std::vector<std::string> sets;
  std::string edges;
  std::string q;
  std::optional<int> h;
  std::string alpha_mode = "odd";
  int field_bits = 32;
  std::uint64_t seed = 1;
  std::string format = "json";
  unsigned threads = 1;
  bool no_elapsed = false;
  bool allow_nonbipartite = false;
  bool allow_nonpath = false;
};

namespace detail {

inline int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("bad integer in " + what + ": \"" + s + "\"");
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

inline std::map<std::string, std::vector<int>> parse_sets(const std::vector<std::string>& sets) {
  std::map<std::string, std::vector<int>> out;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--set expects NAME=idx,idx,...: \"" + s + "\"");
    const std::string name = s.substr(0, eq);
    if (out.count(name)) throw InputError("--set " + name + " given twice");
    std::vector<int> idx;
    for (const auto& t : split(s.substr(eq + 1), ',')) idx.push_back(parse_int(t, "--set " + name));
    out[name] = std::move(idx);
  }
  return out;
}

inline const std::vector<int>& require_set(const std::map<std::string, std::vector<int>>& sets,
                                           const std::string& name) {
  auto it = sets.find(name);
  if (it == sets.end()) throw InputError("missing --set " + name + "=...");
  return it->second;
}

struct ThomasonEdges {
  int e = -1;
  int g1 = -1;
  int g2 = -1;
};

inline ThomasonEdges parse_edges(const std::string& s) {
  if (s.empty()) throw InputError("missing --edges e=...,g1=...,g2=...");
  std::map<std::string, int> kv;
  for (const auto& part : split(s, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw InputError("--edges expects e=..,g1=..,g2=..");
    kv[part.substr(0, eq)] = parse_int(part.substr(eq + 1), "--edges");
  }
  for (const char* key : {"e", "g1", "g2"})
    if (!kv.count(key)) throw InputError(std::string("--edges is missing ") + key);
  if (kv.size() != 3) throw InputError("--edges accepts only e, g1, g2");
  return {kv["e"], kv["g1"], kv["g2"]};
}

/// Unlisted vertices default to q = 1.
inline std::vector<int> parse_q(const std::string& s, const Graph& g) {
  std::vector<int> q(static_cast<std::size_t>(g.vertex_count()), 1);
  for (const auto& part : split(s, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw InputError("--q expects v:q,...");
    const int v = parse_int(part.substr(0, colon), "--q");
    if (v < 0 || v >= g.vertex_count()) throw InputError("--q names vertex " + std::to_string(v) + " out of range");
    q[static_cast<std::size_t>(v)] = parse_int(part.substr(colon + 1), "--q");
  }
  return q;
}

inline Json poly_json(const Poly& p) {
  Json coeffs = Json::array();
  for (auto [e, c] : p.terms()) coeffs.push_back(Json::array({e, Field::hex(c)}));
  return coeffs;
}

inline Json parity_diagnostics(const ParityResult& r) {
  Json d;
  d["value"] = Field::hex(r.value);
  if (!r.samples.empty()) {
    Json s = Json::array();
    for (Elem x : r.samples) s.push_back(Field::hex(x));
    d["samples"] = s;
  }
  d["checks"] = r.checks;
  d["warnings"] = r.warnings;
  return d;
}

inline WeightExpr one_plus_eps(int m) {
  return WeightExpr{std::vector<Poly>(static_cast<std::size_t>(m), Poly::constant(kOne) + Poly::monomial(kOne, 1))};
}

inline std::vector<Poly> end_weights(int n, const std::string& mode) {
  const Poly one = Poly::constant(kOne);
  return std::vector<Poly>(static_cast<std::size_t>(n), mode == "odd" ? one : one + Poly::monomial(kOne, 1));
}

inline std::vector<std::pair<int, int>> parse_pairs(const std::map<std::string, std::vector<int>>& sets) {
  const auto& es = require_set(sets, "E");
  const auto& gs = require_set(sets, "G");
  if (es.size() != gs.size()) throw InputError("--set E and --set G must have the same length");
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < es.size(); ++i) pairs.emplace_back(es[i], gs[i]);
  return pairs;
}

/// One query's inputs, resolved from the run configuration.
struct Context {
  const RunConfig& cfg;
  Graph g;
  Field f;
  std::map<std::string, std::vector<int>> sets;
  QueryOptions opts;
};

/// Engine side: fills the report and returns the comparable summary.
inline Json compute(const Context& c) {
  const auto& q = c.cfg.query;
  Json out;
  auto parity = [&](const ParityResult& r) {
    out["parity"] = r.parity;
    out["diagnostics"] = parity_diagnostics(r);
  };
  if (q == "hamdec-parity") {
    parity(hamdec_parity(c.f, c.g, {}, c.opts));
  } else if (q == "cover-parity") {
    parity(cover_parity(c.f, c.g, require_set(c.sets, "F"), c.opts));
  } else if (q == "split-cover") {
    parity(split_cover_parity(c.f, c.g, require_set(c.sets, "F1"), require_set(c.sets, "F2"), c.opts));
  } else if (q == "thomason") {
    const auto ed = parse_edges(c.cfg.edges);
    parity(thomason_refined_parity(c.f, c.g, ed.e, ed.g1, ed.g2,
                                   {!c.cfg.allow_nonbipartite, !c.cfg.allow_nonpath}, c.opts));
  } else if (q == "pairs-aggregate") {
    const auto pairs = parse_pairs(c.sets);
    parity(pairs_aggregate_parity(c.f, c.g, pairs, c.opts));
  } else if (q == "qsimple-value") {
    const auto qv = parse_q(c.cfg.q, c.g);
    out["value"] = poly_json(qsimple_value(c.f, c.g, qv, one_plus_eps(c.g.edge_count()), c.opts.seed, c.opts));
  } else if (q == "qsimple-exists") {
    if (!c.cfg.h) throw InputError("qsimple-exists needs --h");
    const auto qv = parse_q(c.cfg.q, c.g);
    const auto r = qsimple_existence(c.f, c.g, qv, *c.cfg.h, c.opts.seed, c.opts);
    out["answer"] = r.certified ? "certified-yes" : "inconclusive";
    out["diagnostics"] = Json{{"coefficient", Field::hex(r.coefficient)}};
  } else if (q == "pathdec-parity") {
    parity(pathdec_parity(c.f, c.g, c.cfg.alpha_mode == "odd" ? PathMode::odd_paths : PathMode::even_paths, c.opts));
  } else if (q == "oddpathdec") {
    const Poly p = oddpathdec_value(c.f, c.g, one_plus_eps(c.g.edge_count()),
                                    end_weights(c.g.vertex_count(), c.cfg.alpha_mode), c.opts);
    out["value"] = poly_json(p);
    if (c.cfg.h) out["parity"] = cycdec::detail::bit_of(p.coeff(*c.cfg.h), "requested coefficient");
  } else {
    throw InputError("unknown query: " + q);
  }
  return out;
}

inline Json parity_count(const std::vector<oracle::Decomposition>& decomps, const oracle::Predicate& pred) {
  const auto pc = oracle::oracle_parity(decomps, pred);
  return Json{{"count", pc.count}, {"parity", pc.parity}, {"enumerated", decomps.size()}};
}

/// Oracle side: exhaustive enumeration.
inline Json enumerate(const Context& c) {
  const auto& q = c.cfg.query;
  const Graph& g = c.g;
  if (q == "hamdec-parity") {
    return parity_count(oracle::enum_hamiltonian_decompositions(g), {});
  }
  if (q == "cover-parity") {
    const auto fs = validate_edge_set(g, require_set(c.sets, "F"), "F");
    if (fs.empty()) throw InputError("F must be nonempty");
    return parity_count(oracle::enum_simple_cycle_decompositions(g), oracle::every_cycle_meets(fs));
  }
  if (q == "split-cover") {
    auto [a, b] = validate_split(g, require_set(c.sets, "F1"), require_set(c.sets, "F2"));
    return parity_count(oracle::enum_simple_cycle_decompositions(g), oracle::cycles_meet_one_side(a, b));
  }
  if (q == "thomason") {
    const auto ed = parse_edges(c.cfg.edges);
    // Validation is shared with the engine side.
    thomason_refined_parity(c.f, g, ed.e, ed.g1, ed.g2, {!c.cfg.allow_nonbipartite, !c.cfg.allow_nonpath}, c.opts);
    if (!c.cfg.allow_nonbipartite && !c.cfg.allow_nonpath)
      return parity_count(oracle::enum_hamiltonian_decompositions(g),
                          oracle::separates_edge_from_pair(ed.e, ed.g1, ed.g2));
    return parity_count(oracle::enum_simple_cycle_decompositions(g),
                        oracle::e_isolated_from_pair(ed.e, ed.g1, ed.g2));
  }
  if (q == "pairs-aggregate") {
    const auto pairs = parse_pairs(c.sets);
    std::vector<int> all;
    for (auto [a, b] : pairs) {
      all.push_back(a);
      all.push_back(b);
    }
    validate_edge_set(g, all, "pairs");
    return parity_count(oracle::enum_simple_cycle_decompositions(g), oracle::pairs_connected_bipartite(pairs));
  }
  if (q == "qsimple-value") {
    const auto qv = parse_q(c.cfg.q, g);
    const auto rs = generic_passages(c.f, g, qv, c.opts.seed);
    const oracle::PolyRing ring{c.f};
    const auto w = one_plus_eps(g.edge_count()).per_edge;
    const Poly v = oracle::cycledec_sum(ring, g, std::span<const PassageMatrix>(rs), std::span<const Poly>(w),
                                        oracle::q_simple(qv));
    return Json{{"value", poly_json(v)}, {"enumerated", oracle::count_transition_systems(g)}};
  }
  if (q == "qsimple-exists") {
    if (!c.cfg.h) throw InputError("qsimple-exists needs --h");
    const auto qv = parse_q(c.cfg.q, g);
    generic_passages(c.f, g, qv, c.opts.seed);  // range checks
    std::uint64_t count = 0;
    std::uint64_t total = 0;
    const auto keep = oracle::q_simple(qv);
    oracle::enum_transition_systems(g, [&](const oracle::TransitionSystem&, const oracle::Decomposition& d) {
      ++total;
      if (static_cast<int>(d.trails.size()) <= *c.cfg.h && keep(d)) ++count;
    });
    return Json{{"exists", count > 0}, {"count", count}, {"enumerated", total}};
  }
  if (q == "pathdec-parity") {
    pathdec_parity(c.f, g, PathMode::odd_paths, c.opts);  // shared validation
    return parity_count(oracle::enum_normal(g, false), oracle::all_paths_with_parity(c.cfg.alpha_mode == "odd"));
  }
  if (q == "oddpathdec") {
    const auto decomps = oracle::enum_normal(g, true);
    const oracle::PolyRing ring{c.f};
    const auto ew = one_plus_eps(g.edge_count()).per_edge;
    const auto vw = end_weights(g.vertex_count(), c.cfg.alpha_mode);
    Poly total;
    for (const auto& d : decomps) {
      Poly term = ring.one();
      for (const auto& t : d.trails) {
        Poly prod = t.closed ? ring.one()
                             : ring.sqrt(ring.mul(vw[static_cast<std::size_t>(t.end1())],
                                                  vw[static_cast<std::size_t>(t.end2())]));
        for (int e : t.edges) prod = ring.mul(prod, ew[static_cast<std::size_t>(e)]);
        term = ring.mul(term, ring.add(ring.one(), prod));
      }
      total = total + term;
    }
    Json out{{"value", poly_json(total)}, {"enumerated", decomps.size()}};
    if (c.cfg.h) out["parity"] = cycdec::detail::bit_of(total.coeff(*c.cfg.h), "requested coefficient");
    return out;
  }
  throw InputError("unknown query: " + q);
}

/// Compares engine and oracle summaries; returns (match, merged report).
inline std::pair<bool, Json> compare(const Context& c) {
  const Json eng = compute(c);
  const Json orc = enumerate(c);
  Json out;
  bool match = false;
  const auto& q = c.cfg.query;
  if (q == "qsimple-value" || (q == "oddpathdec" && !eng.contains("parity"))) {
    match = eng["value"] == orc["value"];
    out["match"] = match;
    out["engine"] = eng["value"];
    out["oracle"] = orc["value"];
  } else if (q == "qsimple-exists") {
    const bool certified = eng["answer"] == "certified-yes";
    match = !certified || orc["exists"].get<bool>();
    out["match"] = match;
    out["engine"] = eng["answer"];
    out["oracle_exists"] = orc["exists"];
    out["oracle_count"] = orc["count"];
  } else {
    match = eng["parity"] == orc["parity"];
    out["match"] = match;
    out["engine"] = eng["parity"];
    if (orc.contains("count")) out["oracle_count"] = orc["count"];
    out["oracle_parity"] = orc["parity"];
  }
  return {match, out};
}

inline void emit(std::ostream& os, const Json& j, const std::string& format) {
  if (format == "text") {
    for (auto it = j.begin(); it != j.end(); ++it)
      os << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
  } else {
    os << j.dump() << "\n";
  }
}

inline void add_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--query", cfg.query, "Query name")->required()->check(CLI::IsMember(query_names()));
  sub->add_option("--graph", cfg.graph_path, "Graph JSON file")->required();
  sub->add_option("--set", cfg.sets, "Edge set NAME=idx,idx,... (F, F1, F2, E, G)");
  sub->add_option("--edges", cfg.edges, "Thomason edges e=..,g1=..,g2=..");
  sub->add_option("--q", cfg.q, "Per-vertex q values v:q,... (default 1)");
  sub->add_option("--h", cfg.h, "Coefficient index / component bound");
  sub->add_option("--alpha-mode", cfg.alpha_mode, "Path-length mode")->check(CLI::IsMember({"odd", "even"}));
  sub->add_option("--field-bits", cfg.field_bits, "Field size k of GF(2^k)")->check(CLI::IsMember({8, 16, 32}));
  sub->add_option("--seed", cfg.seed, "Seed for generic passage matrices and λ");
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--threads", cfg.threads, "Threads for point evaluations")->check(CLI::Range(1u, 256u));
  sub->add_flag("--no-elapsed", cfg.no_elapsed, "Omit elapsed_ms (for byte-stable transcripts)");
  sub->add_flag("--allow-nonbipartite", cfg.allow_nonbipartite, "Thomason: skip the bipartite requirement");
  sub->add_flag("--allow-nonpath", cfg.allow_nonpath, "Thomason: skip the g1,g2 path requirement");
}

inline int fail(std::ostream& os, const std::string& format, const std::string& kind, const std::string& reason,
                int code) {
  if (format == "text")
    os << "error: " << kind << ": " << reason << "\n";
  else
    os << Json{{"error", kind}, {"reason", reason}}.dump() << "\n";
  return code;
}

}  // namespace detail

/// Runs one invocation; args exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& os) {
  RunConfig cfg;
  CLI::App app{"Decomposition parity queries over GF(2^k)", "cycdec"};
  app.set_help_flag("--help", "Print help and exit");
  app.require_subcommand(1);
  for (const char* name : {"compute", "oracle", "compare"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "compute"   ? "Run a query through the determinant engine"
                                         : std::string(name) == "oracle" ? "Run a query by exhaustive enumeration"
                                                                          : "Run both and compare");
    sub->set_help_flag("--help", "Print help and exit");
    detail::add_options(sub, cfg);
    sub->callback([&cfg, name] { cfg.subcommand = name; });
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    os << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return detail::fail(os, cfg.format, "validation", e.what(), 2);
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    detail::Context c{cfg, load_graph_file(cfg.graph_path), Field(cfg.field_bits), detail::parse_sets(cfg.sets),
                      QueryOptions{cfg.seed, cfg.threads}};
    Json out;
    out["query"] = cfg.query;
    int code = 0;
    if (cfg.subcommand == "compute") {
      out.update(detail::compute(c));
    } else if (cfg.subcommand == "oracle") {
      out.update(detail::enumerate(c));
    } else {
      auto [match, report] = detail::compare(c);
      out.update(report);
      code = match ? 0 : 1;
    }
    out["seed"] = cfg.seed;
    out["k"] = cfg.field_bits;
    if (!cfg.no_elapsed) {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
      out["elapsed_ms"] = ms.count();
    }
    detail::emit(os, out, cfg.format);
    return code;
  } catch (const InputError& e) {
    return detail::fail(os, cfg.format, "validation", e.what(), 2);
  } catch (const BudgetExceeded& e) {
    return detail::fail(os, cfg.format, "validation", e.what(), 2);
  } catch (const DivisionByZero& e) {
    return detail::fail(os, cfg.format, "validation", e.what(), 2);
  } catch (const std::exception& e) {
    return detail::fail(os, cfg.format, "internal", e.what(), 3);
  }
}

}  // namespace cycdec::cli
