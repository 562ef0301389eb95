#include "mondiag/diagram.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace mondiag {

void SquareRel::reflexive_close() {
  for (std::size_t i = 0; i < n_; ++i) set(i, i);
}

void SquareRel::transitive_close() {
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t i = 0; i < n_; ++i) {
      if (!at(i, k)) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (at(k, j)) set(i, j);
    }
}

Diagram::Diagram(DiagramData data) : sig_(std::move(data.sig)) {
  if (!sig_) throw usage_error("diagram requires a signature");
  std::unordered_map<std::string, std::size_t> index;
  names_.reserve(data.nodes.size());
  labels_.reserve(data.nodes.size());
  for (auto& [name, label] : data.nodes) {
    if (name.empty()) throw usage_error("empty node name");
    if (index.count(name)) throw usage_error("duplicate node '" + name + "'");
    if (label.is_gen() && label.gen_id() >= sig_->gen_count())
      throw usage_error("node '" + name + "' labeled with unknown generator");
    if (label.is_id())
      for (ObjId o : label.id_word().factors)
        if (o >= sig_->object_count())
          throw usage_error("node '" + name + "' identity word references unknown object");
    index.emplace(name, names_.size());
    names_.push_back(name);
    labels_.push_back(std::move(label));
  }
  edges_.reserve(data.edges.size());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& [s, t] : data.edges) {
    auto si = index.find(s), ti = index.find(t);
    if (si == index.end()) throw usage_error("edge references unknown node '" + s + "'");
    if (ti == index.end()) throw usage_error("edge references unknown node '" + t + "'");
    std::pair<std::size_t, std::size_t> e{si->second, ti->second};
    if (!seen.insert(e).second)
      throw usage_error("duplicate edge " + s + " -> " + t);
    edges_.push_back(e);
  }
  h_ = SquareRel(edges_.size());
  for (auto [a, b] : data.order) {
    if (a >= edges_.size() || b >= edges_.size())
      throw usage_error("order pair references an edge outside the diagram");
    h_.set(a, b);
  }
  h_.reflexive_close();
  h_.transitive_close();
}

std::optional<std::size_t> Diagram::node_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Diagram::edge_index(std::size_t src, std::size_t dst) const {
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].first == src && edges_[e].second == dst) return e;
  return std::nullopt;
}

std::string Diagram::edge_str(std::size_t e) const {
  return names_[edges_[e].first] + " -> " + names_[edges_[e].second];
}

Diagram Diagram::with_h(SquareRel h) const {
  if (h.size() != edges_.size()) throw internal_error("with_h: relation size mismatch");
  Diagram d = *this;
  d.h_ = std::move(h);
  return d;
}

NodeRelation induced_first_order(
    const Diagram& d, std::span<const std::pair<std::size_t, std::size_t>> edge_pairs) {
  NodeRelation r;
  for (auto [e, f] : edge_pairs) {
    if (e >= d.edge_count() || f >= d.edge_count())
      throw usage_error("induced_first_order: pair references an edge outside the diagram");
    auto [es, et] = d.edge(e);
    auto [fs, ft] = d.edge(f);
    r.pairs.insert({es, fs});
    r.pairs.insert({et, ft});
  }
  return r;
}

NodeRelation induced_h(const Diagram& d) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t e = 0; e < d.edge_count(); ++e)
    for (std::size_t f = 0; f < d.edge_count(); ++f)
      if (d.h_at(e, f)) pairs.push_back({e, f});
  return induced_first_order(d, pairs);
}

namespace {

// One conditional-construction sweep over `h`: relate every edge pair whose
// sources, or targets, are distinct and related in the node relation induced
// by `h`. Returns true when a pair was added.
bool cc_step(const Diagram& d, SquareRel& h) {
  std::size_t ne = d.edge_count();
  std::set<std::pair<std::size_t, std::size_t>> star;
  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t f = 0; f < ne; ++f) {
      if (!h.at(e, f)) continue;
      star.insert({d.edge(e).first, d.edge(f).first});
      star.insert({d.edge(e).second, d.edge(f).second});
    }
  bool changed = false;
  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t f = 0; f < ne; ++f) {
      if (h.at(e, f)) continue;
      auto [es, et] = d.edge(e);
      auto [fs, ft] = d.edge(f);
      bool forced = (es != fs && star.count({es, fs})) || (et != ft && star.count({et, ft}));
      if (forced) {
        h.set(e, f);
        changed = true;
      }
    }
  return changed;
}

}  // namespace

Diagram cc_closure(const Diagram& d) {
  SquareRel h = d.h();
  h.reflexive_close();
  h.transitive_close();
  while (cc_step(d, h)) h.transitive_close();
  for (std::size_t e = 0; e < h.size(); ++e)
    for (std::size_t f = e + 1; f < h.size(); ++f)
      if (h.at(e, f) && h.at(f, e))
        throw domain_error("conditional construction relates edges (" + d.edge_str(e) +
                           ") and (" + d.edge_str(f) +
                           ") in both directions; no horizontal order exists");
  return d.with_h(std::move(h));
}

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::edge_irreflexive: return "edge-irreflexive";
    case Condition::edge_antisymmetric: return "edge-antisymmetric";
    case Condition::edge_acyclic: return "edge-acyclic";
    case Condition::edge_weak_totality: return "edge-weak-totality";
    case Condition::order_antisymmetric: return "order-antisymmetric";
    case Condition::triangle_comparable: return "triangle-comparable";
    case Condition::minimals_comparable: return "minimals-comparable";
    case Condition::conditionally_constructed: return "conditionally-constructed";
  }
  return "?";
}

ValidationReport validate_diagram(const Diagram& d) {
  ValidationReport rep;
  auto violate = [&](Condition c, std::string w) {
    rep.violations.push_back({c, std::move(w)});
  };

  std::size_t nn = d.node_count(), ne = d.edge_count();

  for (std::size_t e = 0; e < ne; ++e)
    if (d.edge(e).first == d.edge(e).second)
      violate(Condition::edge_irreflexive, "(" + d.edge_str(e) + ")");

  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t f = e + 1; f < ne; ++f)
      if (d.edge(e).first == d.edge(f).second && d.edge(e).second == d.edge(f).first)
        violate(Condition::edge_antisymmetric, "(" + d.edge_str(e) + ") / (" + d.edge_str(f) + ")");

  // Cycle detection over E via reachability.
  {
    SquareRel reach(nn);
    for (std::size_t e = 0; e < ne; ++e) reach.set(d.edge(e).first, d.edge(e).second);
    reach.transitive_close();
    for (std::size_t v = 0; v < nn; ++v)
      if (reach.at(v, v)) {
        violate(Condition::edge_acyclic, "cycle through node '" + d.node_name(v) + "'");
        break;
      }
  }

  for (std::size_t v = 0; v < nn; ++v) {
    bool touched = false;
    for (std::size_t e = 0; e < ne && !touched; ++e)
      touched = d.edge(e).first == v || d.edge(e).second == v;
    if (!touched)
      violate(Condition::edge_weak_totality, "node '" + d.node_name(v) + "' lies on no edge");
  }

  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t f = e + 1; f < ne; ++f)
      if (d.h_at(e, f) && d.h_at(f, e))
        violate(Condition::order_antisymmetric,
                "(" + d.edge_str(e) + ") <> (" + d.edge_str(f) + ")");

  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t f = e + 1; f < ne; ++f) {
      bool triangle =
          d.edge(e).first == d.edge(f).first || d.edge(e).second == d.edge(f).second;
      if (triangle && !d.h_at(e, f) && !d.h_at(f, e))
        violate(Condition::triangle_comparable,
                "{(" + d.edge_str(e) + "), (" + d.edge_str(f) + ")}");
    }

  NodeRelation star = induced_h(d);

  // E-minimal nodes: on an edge, with no incoming edge.
  {
    std::vector<bool> on_edge(nn, false), has_in(nn, false);
    for (std::size_t e = 0; e < ne; ++e) {
      on_edge[d.edge(e).first] = on_edge[d.edge(e).second] = true;
      has_in[d.edge(e).second] = true;
    }
    for (std::size_t u = 0; u < nn; ++u)
      for (std::size_t v = u + 1; v < nn; ++v) {
        bool u_min = on_edge[u] && !has_in[u], v_min = on_edge[v] && !has_in[v];
        if (u_min && v_min && !star.contains(u, v) && !star.contains(v, u))
          violate(Condition::minimals_comparable,
                  "minimal nodes '" + d.node_name(u) + "' and '" + d.node_name(v) + "'");
      }
  }

  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t f = 0; f < ne; ++f) {
      if (d.h_at(e, f)) continue;
      auto [es, et] = d.edge(e);
      auto [fs, ft] = d.edge(f);
      if ((es != fs && star.contains(es, fs)) || (et != ft && star.contains(et, ft)))
        violate(Condition::conditionally_constructed,
                "(" + d.edge_str(e) + ") should sit below (" + d.edge_str(f) + ")");
    }

  return rep;
}

std::vector<std::pair<std::string, std::string>> NodeBijection::name_pairs(
    const Diagram& a, const Diagram& b) const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(to.size());
  for (std::size_t i = 0; i < to.size(); ++i) out.push_back({a.node_name(i), b.node_name(to[i])});
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Longest-path depth per node when E is acyclic; all zero otherwise.
// Used only to prune the isomorphism search.
std::vector<std::size_t> iso_depths(const Diagram& d) {
  std::size_t nn = d.node_count();
  std::vector<std::size_t> depth(nn, 0);
  SquareRel reach(nn);
  for (std::size_t e = 0; e < d.edge_count(); ++e)
    reach.set(d.edge(e).first, d.edge(e).second);
  reach.transitive_close();
  for (std::size_t v = 0; v < nn; ++v)
    if (reach.at(v, v)) return depth;  // cyclic: no layer structure
  // Repeated relaxation; node counts are tiny.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t e = 0; e < d.edge_count(); ++e) {
      auto [u, v] = d.edge(e);
      if (depth[v] < depth[u] + 1) {
        depth[v] = depth[u] + 1;
        changed = true;
      }
    }
  }
  return depth;
}

struct IsoState {
  const Diagram& a;
  const Diagram& b;
  std::vector<std::size_t> order;           // a-node indices in lex name order
  std::vector<std::size_t> map;             // a index -> b index or npos
  std::vector<bool> used;                   // b side
  std::vector<std::size_t> da, db;          // depths
  std::vector<std::size_t> ain, aout, bin, bout;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool consistent(std::size_t ai, std::size_t bi) const {
    if (!(a.label(ai) == b.label(bi))) return false;
    if (ain[ai] != bin[bi] || aout[ai] != bout[bi] || da[ai] != db[bi]) return false;
    for (std::size_t aj = 0; aj < a.node_count(); ++aj) {
      if (map[aj] == npos) continue;
      if (a.has_edge(ai, aj) != b.has_edge(bi, map[aj])) return false;
      if (a.has_edge(aj, ai) != b.has_edge(map[aj], bi)) return false;
    }
    return true;
  }

  bool extend(std::size_t k) {
    if (k == order.size()) return order_preserved();
    std::size_t ai = order[k];
    // Candidates in lexicographic b-name order.
    std::vector<std::size_t> cands;
    for (std::size_t bi = 0; bi < b.node_count(); ++bi)
      if (!used[bi]) cands.push_back(bi);
    std::sort(cands.begin(), cands.end(),
              [&](std::size_t x, std::size_t y) { return b.node_name(x) < b.node_name(y); });
    for (std::size_t bi : cands) {
      if (!consistent(ai, bi)) continue;
      map[ai] = bi;
      used[bi] = true;
      if (extend(k + 1)) return true;
      map[ai] = npos;
      used[bi] = false;
    }
    return false;
  }

  // With the node bijection complete, checks that the induced edge bijection
  // is an isomorphism for H.
  bool order_preserved() const {
    std::vector<std::size_t> emap(a.edge_count());
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
      auto [u, v] = a.edge(e);
      auto idx = b.edge_index(map[u], map[v]);
      if (!idx) return false;
      emap[e] = *idx;
    }
    for (std::size_t e = 0; e < a.edge_count(); ++e)
      for (std::size_t f = 0; f < a.edge_count(); ++f)
        if (a.h_at(e, f) != b.h_at(emap[e], emap[f])) return false;
    return true;
  }
};

}  // namespace

std::optional<NodeBijection> diagram_iso(const Diagram& a, const Diagram& b) {
  if (!(a.sig() == b.sig())) throw usage_error("diagram_iso: signatures differ");
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return std::nullopt;

  IsoState st{a, b, {}, {}, {}, iso_depths(a), iso_depths(b), {}, {}, {}, {}};
  std::size_t nn = a.node_count();
  st.map.assign(nn, IsoState::npos);
  st.used.assign(nn, false);
  st.ain.assign(nn, 0);
  st.aout.assign(nn, 0);
  st.bin.assign(nn, 0);
  st.bout.assign(nn, 0);
  for (std::size_t e = 0; e < a.edge_count(); ++e) {
    st.aout[a.edge(e).first]++;
    st.ain[a.edge(e).second]++;
    st.bout[b.edge(e).first]++;
    st.bin[b.edge(e).second]++;
  }
  st.order.resize(nn);
  for (std::size_t i = 0; i < nn; ++i) st.order[i] = i;
  std::sort(st.order.begin(), st.order.end(),
            [&](std::size_t x, std::size_t y) { return a.node_name(x) < a.node_name(y); });

  if (!st.extend(0)) return std::nullopt;
  return NodeBijection{std::move(st.map)};
}

}  // namespace mondiag
