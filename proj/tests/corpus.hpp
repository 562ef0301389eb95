#pragma once

// Shared test utilities: an exhaustive small-diagram corpus, an independently
// written direct-quantifier axiom checker with its own closure fixpoint,
// brute-force layering and resolution oracles, and a fixed exact model over
// the corpus signature. Everything here deliberately avoids the library's
// internal representations (dense relations, incremental sweeps) in favor of
// plain sets and literal quantifier loops, so that agreement between the two
// is meaningful.

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mondiag/diagram.hpp"
#include "mondiag/error.hpp"
#include "mondiag/layering.hpp"
#include "mondiag/matrix_model.hpp"
#include "mondiag/readout.hpp"
#include "mondiag/resolution.hpp"
#include "mondiag/signature.hpp"
#include "mondiag/term.hpp"

namespace corpus {

using namespace mondiag;

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;
using Pair = std::pair<std::size_t, std::size_t>;
using PairSet = std::set<Pair>;

// ---------------------------------------------------------------------------
// Corpus signature: one object, three generators with distinct shapes.
// ---------------------------------------------------------------------------

inline std::shared_ptr<const Signature> corpus_signature() {
  static const std::shared_ptr<const Signature> sig = [] {
    auto s = std::make_shared<Signature>();
    const ObjId a = s->add_object("A");
    s->add_gen("p", ObjectWord{{a}}, ObjectWord{{a}});
    s->add_gen("q", ObjectWord{{a}}, ObjectWord{{a, a}});
    s->add_gen("r", ObjectWord{{a, a}}, ObjectWord{{a}});
    return s;
  }();
  return sig;
}

// Fixed exact model over the corpus signature, dimension 2.
inline const MatrixModel& corpus_model() {
  static const MatrixModel model = [] {
    MatrixModel m;
    m.sig = corpus_signature();
    m.dims = {2};
    const Rational h(1, 2), t(1, 3);
    RationalMatrix p(2, 2), q(4, 2), r(2, 4);
    p.at(0, 0) = 1;  p.at(0, 1) = h;
    p.at(1, 0) = 0;  p.at(1, 1) = -1;
    q.at(0, 0) = 1;  q.at(0, 1) = 0;
    q.at(1, 0) = 0;  q.at(1, 1) = h;
    q.at(2, 0) = t;  q.at(2, 1) = 0;
    q.at(3, 0) = 0;  q.at(3, 1) = 1;
    r.at(0, 0) = 1;  r.at(0, 1) = h;  r.at(0, 2) = 0;  r.at(0, 3) = 1;
    r.at(1, 0) = 0;  r.at(1, 1) = 1;  r.at(1, 2) = t;  r.at(1, 3) = 0;
    m.mats = {p, q, r};
    return m;
  }();
  return model;
}

// ---------------------------------------------------------------------------
// Independent conditional-construction closure on explicit pair sets.
// ---------------------------------------------------------------------------

struct BruteClosure {
  bool consistent = true;
  PairSet rel;  // reflexive-transitively closed fixpoint
};

inline BruteClosure brute_closure(const Edges& edges, PairSet rel) {
  const std::size_t m = edges.size();
  for (std::size_t e = 0; e < m; ++e) rel.insert({e, e});
  bool changed = true;
  while (changed) {
    changed = false;
    // transitive pairs
    {
      const std::vector<Pair> snapshot(rel.begin(), rel.end());
      for (const auto& [a, b] : snapshot)
        for (const auto& [c, d] : snapshot)
          if (b == c && rel.insert({a, d}).second) changed = true;
    }
    // node relation induced by the current edge relation
    PairSet star;
    for (const auto& [a, b] : rel) {
      star.insert({edges[a].first, edges[b].first});
      star.insert({edges[a].second, edges[b].second});
    }
    // forcing: distinct matched endpoints already related
    for (std::size_t e = 0; e < m; ++e)
      for (std::size_t f = 0; f < m; ++f) {
        if (rel.count({e, f})) continue;
        const bool by_src = edges[e].first != edges[f].first &&
                            star.count({edges[e].first, edges[f].first}) > 0;
        const bool by_dst = edges[e].second != edges[f].second &&
                            star.count({edges[e].second, edges[f].second}) > 0;
        if (by_src || by_dst) {
          rel.insert({e, f});
          changed = true;
        }
      }
  }
  BruteClosure out{true, std::move(rel)};
  for (std::size_t e = 0; e < m && out.consistent; ++e)
    for (std::size_t f = 0; f < m && out.consistent; ++f)
      if (e != f && out.rel.count({e, f}) && out.rel.count({f, e})) out.consistent = false;
  return out;
}

// ---------------------------------------------------------------------------
// Direct-quantifier check of the eight axioms, on plain sets.
// ---------------------------------------------------------------------------

// Flags indexed like the library's Condition enum; true = condition holds.
inline std::array<bool, 8> naive_conditions(std::size_t nn, const Edges& edges,
                                            const PairSet& h) {
  std::array<bool, 8> ok;
  ok.fill(true);
  const std::size_t m = edges.size();

  // edge_irreflexive
  for (const auto& [s, t] : edges)
    if (s == t) ok[0] = false;

  // edge_antisymmetric: no pair of mutually reversed edges
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f)
      if (e != f && edges[e].first == edges[f].second && edges[e].second == edges[f].first)
        ok[1] = false;

  // edge_acyclic: some node reaches itself through at least one edge
  {
    PairSet reach;
    for (const auto& ed : edges) reach.insert(ed);
    bool grew = true;
    while (grew) {
      grew = false;
      const std::vector<Pair> snapshot(reach.begin(), reach.end());
      for (const auto& [a, b] : snapshot)
        for (const auto& [c, d] : snapshot)
          if (b == c && reach.insert({a, d}).second) grew = true;
    }
    for (std::size_t v = 0; v < nn; ++v)
      if (reach.count({v, v})) ok[2] = false;
  }

  // edge_weak_totality: every node occurs in some edge
  for (std::size_t v = 0; v < nn; ++v) {
    bool touched = false;
    for (const auto& [s, t] : edges)
      if (s == v || t == v) touched = true;
    if (!touched) ok[3] = false;
  }

  // order_antisymmetric
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f)
      if (e != f && h.count({e, f}) && h.count({f, e})) ok[4] = false;

  // triangle_comparable: distinct edges sharing a source or sharing a target
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f) {
      if (e == f) continue;
      const bool shares =
          edges[e].first == edges[f].first || edges[e].second == edges[f].second;
      if (shares && !h.count({e, f}) && !h.count({f, e})) ok[5] = false;
    }

  // node relation induced by h
  PairSet star;
  for (const auto& [e, f] : h) {
    star.insert({edges[e].first, edges[f].first});
    star.insert({edges[e].second, edges[f].second});
  }

  // minimals_comparable: nodes on an edge with no incoming edge
  for (std::size_t u = 0; u < nn; ++u)
    for (std::size_t v = 0; v < nn; ++v) {
      if (u == v) continue;
      auto minimal = [&](std::size_t w) {
        bool on = false, incoming = false;
        for (const auto& [s, t] : edges) {
          if (s == w || t == w) on = true;
          if (t == w) incoming = true;
        }
        return on && !incoming;
      };
      if (minimal(u) && minimal(v) && !star.count({u, v}) && !star.count({v, u})) ok[6] = false;
    }

  // conditionally_constructed: no pair is force-addable
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f) {
      if (h.count({e, f})) continue;
      const bool by_src = edges[e].first != edges[f].first &&
                          star.count({edges[e].first, edges[f].first}) > 0;
      const bool by_dst = edges[e].second != edges[f].second &&
                          star.count({edges[e].second, edges[f].second}) > 0;
      if (by_src || by_dst) ok[7] = false;
    }

  return ok;
}

// ---------------------------------------------------------------------------
// Bridges between the library structures and the plain-set world.
// ---------------------------------------------------------------------------

inline PairSet stored_h(const Diagram& d) {
  PairSet h;
  for (std::size_t e = 0; e < d.edge_count(); ++e)
    for (std::size_t f = 0; f < d.edge_count(); ++f)
      if (d.h_at(e, f)) h.insert({e, f});
  return h;
}

inline std::array<bool, 8> library_conditions(const Diagram& d) {
  std::array<bool, 8> ok;
  ok.fill(true);
  for (const Violation& v : validate_diagram(d).violations)
    ok[static_cast<std::size_t>(v.cond)] = false;
  return ok;
}

// Raw (unclosed) diagram on nodes n0..n{n-1}, labels cycling p, q, r.
inline Diagram make_raw(std::size_t n, const Edges& edges,
                        const std::vector<Pair>& seeds) {
  DiagramData data;
  data.sig = corpus_signature();
  for (std::size_t i = 0; i < n; ++i)
    data.nodes.emplace_back("n" + std::to_string(i),
                            Factor::gen(static_cast<GenId>(i % 3)));
  for (const auto& [s, t] : edges)
    data.edges.emplace_back("n" + std::to_string(s), "n" + std::to_string(t));
  data.order = seeds;
  return Diagram{std::move(data)};
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration.
// ---------------------------------------------------------------------------

// Every E on n nodes that is irreflexive, antisymmetric, acyclic and weakly
// total. Edges are listed in lexicographic (src, dst) order.
inline std::vector<Edges> all_e_structures(std::size_t n) {
  std::vector<Pair> slots;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      if (s != t) slots.push_back({s, t});

  std::vector<Edges> out;
  const std::size_t total = std::size_t{1} << slots.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    Edges edges;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask & (std::size_t{1} << i)) edges.push_back(slots[i]);

    bool ok = true;
    // antisymmetric
    PairSet present(edges.begin(), edges.end());
    for (const auto& [s, t] : edges)
      if (present.count({t, s})) ok = false;
    if (!ok) continue;
    // acyclic
    {
      PairSet reach = present;
      bool grew = true;
      while (grew) {
        grew = false;
        const std::vector<Pair> snapshot(reach.begin(), reach.end());
        for (const auto& [a, b] : snapshot)
          for (const auto& [c, d] : snapshot)
            if (b == c && reach.insert({a, d}).second) grew = true;
      }
      for (std::size_t v = 0; v < n && ok; ++v)
        if (reach.count({v, v})) ok = false;
    }
    if (!ok) continue;
    // weakly total
    for (std::size_t v = 0; v < n && ok; ++v) {
      bool touched = false;
      for (const auto& [s, t] : edges)
        if (s == v || t == v) touched = true;
      if (!touched) ok = false;
    }
    if (!ok) continue;

    out.push_back(std::move(edges));
  }
  return out;
}

// Every seed pair set of size <= 2 over m edges, diagonal pairs included.
inline std::vector<std::vector<Pair>> seed_sets(std::size_t m) {
  std::vector<Pair> all;
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f) all.push_back({e, f});
  std::vector<std::vector<Pair>> out;
  out.push_back({});
  for (std::size_t i = 0; i < all.size(); ++i) {
    out.push_back({all[i]});
    for (std::size_t j = i + 1; j < all.size(); ++j) out.push_back({all[i], all[j]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// The valid corpus: every closure-consistent, fully valid diagram arising
// from the enumeration, deduplicated by (node count, E, H).
// ---------------------------------------------------------------------------

inline const std::vector<Diagram>& valid_corpus() {
  static const std::vector<Diagram> corpus = [] {
    std::vector<Diagram> out;
    std::set<std::pair<Edges, std::vector<Pair>>> seen;  // (E, closed strict H)
    for (std::size_t n : {std::size_t{0}, std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
      for (const Edges& edges : all_e_structures(n)) {
        for (const auto& seeds : seed_sets(edges.size())) {
          const Diagram raw = make_raw(n, edges, seeds);
          std::optional<Diagram> closed;
          try {
            closed = cc_closure(raw);
          } catch (const Error&) {
          }
          const BruteClosure oracle = brute_closure(edges, PairSet(seeds.begin(), seeds.end()));
          if (closed.has_value() != oracle.consistent)
            throw std::logic_error("closure verdict disagreement while building corpus");
          if (!closed) continue;
          if (!validate_diagram(*closed).ok()) continue;
          std::vector<Pair> key_h;
          for (const auto& pr : stored_h(*closed)) key_h.push_back(pr);
          if (!seen.insert({edges, key_h}).second) continue;
          out.push_back(std::move(*closed));
        }
      }
    }
    return out;
  }();
  return corpus;
}

inline std::optional<LayeredTerm> try_readout(const Diagram& d) {
  try {
    return readout(d);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Indices of iso-class representatives (first of each class).
inline std::vector<std::size_t> iso_reps(std::span<const Diagram> ds) {
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    bool fresh = true;
    for (std::size_t r : reps) {
      if (diagram_iso(ds[r], ds[i])) {
        fresh = false;
        break;
      }
    }
    if (fresh) reps.push_back(i);
  }
  return reps;
}

// ---------------------------------------------------------------------------
// Brute-force oracles.
// ---------------------------------------------------------------------------

// Longest E-chain counted in nodes, by repeated relaxation.
inline std::size_t naive_rank(std::size_t nn, const Edges& edges) {
  if (nn == 0) return 0;
  std::vector<std::size_t> depth(nn, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [s, t] : edges)
      if (depth[t] < depth[s] + 1) {
        depth[t] = depth[s] + 1;
        changed = true;
      }
  }
  std::size_t best = 0;
  for (std::size_t v = 0; v < nn; ++v) best = std::max(best, depth[v]);
  return best;
}

// Longest-chain depth of each node (1-based), for the layer-index law.
inline std::vector<std::size_t> naive_depths(std::size_t nn, const Edges& edges) {
  std::vector<std::size_t> depth(nn, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [s, t] : edges)
      if (depth[t] < depth[s] + 1) {
        depth[t] = depth[s] + 1;
        changed = true;
      }
  }
  return depth;
}

inline Edges edges_of(const Diagram& d) {
  Edges out;
  for (std::size_t e = 0; e < d.edge_count(); ++e) out.push_back(d.edge(e));
  return out;
}

// Every fixpoint reachable by incising unresolved edges in all possible
// orders. `depth` feeds the fresh-name hint so nested incisions never clash.
inline void all_resolutions(const Diagram& d, std::vector<Diagram>& out, std::size_t depth = 0) {
  const std::vector<std::size_t> pending = unresolved_edges(d);
  if (pending.empty()) {
    out.push_back(d);
    return;
  }
  for (std::size_t e : pending) {
    all_resolutions(incise(d, e, depth).first, out, depth + 1);
  }
}

// Total slack of the skip edges: sum over unresolved edges of (gap - 1).
inline std::size_t total_slack(const Diagram& d) {
  const Segmentation seg = segmentation(d);
  std::size_t slack = 0;
  for (std::size_t e : unresolved_edges(d)) {
    const auto [s, t] = d.edge(e);
    slack += (seg.layer_of[t] - seg.layer_of[s]) - 1;
  }
  return slack;
}

// ---------------------------------------------------------------------------
// Exact sparse rational matrices. Layer matrices are Kronecker products of
// tiny factor matrices, so they and all their products stay sparse even when
// their dimensions grow into the thousands; this evaluator makes exact
// equality checks on wide attachments affordable where dense products are
// not. It is written independently of the library's dense evaluator and is
// cross-checked against it on small cases.
// ---------------------------------------------------------------------------

struct SparseMat {
  std::size_t rows = 0, cols = 0;
  std::map<Pair, Rational> nz;  // (row, col) -> nonzero value

  bool operator==(const SparseMat&) const = default;
};

inline SparseMat sparse_of(const RationalMatrix& m) {
  SparseMat s;
  s.rows = m.rows();
  s.cols = m.cols();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) s.nz[{i, j}] = m.at(i, j);
  return s;
}

inline SparseMat sparse_identity(std::size_t n) {
  SparseMat s;
  s.rows = s.cols = n;
  for (std::size_t i = 0; i < n; ++i) s.nz[{i, i}] = 1;
  return s;
}

inline SparseMat sparse_mul(const SparseMat& a, const SparseMat& b) {
  if (a.cols != b.rows) throw std::logic_error("sparse_mul: shape mismatch");
  // b grouped by row for the inner loop
  std::vector<std::vector<std::pair<std::size_t, Rational>>> brows(b.rows);
  for (const auto& [rc, v] : b.nz) brows[rc.first].push_back({rc.second, v});
  SparseMat out;
  out.rows = a.rows;
  out.cols = b.cols;
  for (const auto& [rc, av] : a.nz) {
    const auto [i, k] = rc;
    for (const auto& [j, bv] : brows[k]) {
      Rational& cell = out.nz[{i, j}];
      cell += av * bv;
    }
  }
  for (auto it = out.nz.begin(); it != out.nz.end();)
    it = (it->second == 0) ? out.nz.erase(it) : std::next(it);
  return out;
}

inline SparseMat sparse_kron(const SparseMat& a, const SparseMat& b) {
  SparseMat out;
  out.rows = a.rows * b.rows;
  out.cols = a.cols * b.cols;
  for (const auto& [rc1, v1] : a.nz)
    for (const auto& [rc2, v2] : b.nz)
      out.nz[{rc1.first * b.rows + rc2.first, rc1.second * b.cols + rc2.second}] = v1 * v2;
  return out;
}

inline SparseMat sparse_factor(const MatrixModel& model, const Factor& f) {
  if (f.is_gen()) return sparse_of(model.mat_of(f.gen_id()));
  return sparse_identity(eval_word(model, f.id_word()));
}

inline SparseMat sparse_eval(const MatrixModel& model, const LayeredTerm& t) {
  SparseMat acc = sparse_identity(eval_word(model, t.dom));
  for (const auto& layer : t.layers) {
    SparseMat m = sparse_identity(1);
    for (const Factor& f : layer) m = sparse_kron(m, sparse_factor(model, f));
    acc = sparse_mul(m, acc);
  }
  return acc;
}

}  // namespace corpus
