#include "mondiag/layering.hpp"

#include <algorithm>

namespace mondiag {

namespace {

void require_acyclic(const Diagram& d) {
  std::size_t nn = d.node_count();
  SquareRel reach(nn);
  for (std::size_t e = 0; e < d.edge_count(); ++e)
    reach.set(d.edge(e).first, d.edge(e).second);
  reach.transitive_close();
  for (std::size_t v = 0; v < nn; ++v)
    if (reach.at(v, v))
      throw usage_error("diagram has a vertical cycle through '" + d.node_name(v) + "'");
}

}  // namespace

std::size_t rank(const Diagram& d) {
  require_acyclic(d);
  // Longest path measured in nodes, by relaxation over the (acyclic) edges.
  std::size_t nn = d.node_count();
  std::vector<std::size_t> h(nn, 1);
  bool changed = nn > 0;
  while (changed) {
    changed = false;
    for (std::size_t e = 0; e < d.edge_count(); ++e) {
      auto [u, v] = d.edge(e);
      if (h[v] < h[u] + 1) {
        h[v] = h[u] + 1;
        changed = true;
      }
    }
  }
  std::size_t r = 0;
  for (std::size_t v = 0; v < nn; ++v) r = std::max(r, h[v]);
  return r;
}

Segmentation segmentation(const Diagram& d) {
  require_acyclic(d);
  std::size_t nn = d.node_count();
  Segmentation seg;
  seg.layer_of.assign(nn, 0);
  seg.position_of.assign(nn, 0);

  // Iterated stripping of E-minimal elements.
  std::vector<bool> removed(nn, false);
  std::size_t left = nn;
  std::size_t k = 0;
  while (left > 0) {
    ++k;
    std::vector<std::size_t> layer;
    for (std::size_t v = 0; v < nn; ++v) {
      if (removed[v]) continue;
      bool minimal = true;
      for (std::size_t e = 0; e < d.edge_count() && minimal; ++e)
        minimal = !(d.edge(e).second == v && !removed[d.edge(e).first]);
      if (minimal) layer.push_back(v);
    }
    if (layer.empty()) throw internal_error("segmentation: no minimal node in nonempty rest");
    for (std::size_t v : layer) {
      removed[v] = true;
      seg.layer_of[v] = k;
    }
    left -= layer.size();
    seg.layers.push_back(std::move(layer));
  }

  // Order each layer by the induced node relation of H. For a diagram
  // satisfying the axioms this is a strict total order; anything else is
  // reported with the offending pair. Nodes are ranked by their number of
  // in-layer predecessors (0..n-1 for a strict total order) rather than
  // sorted with the relation directly, which keeps a malformed relation
  // from derailing the sort before it can be diagnosed.
  NodeRelation star = induced_h(d);
  for (auto& layer : seg.layers) {
    for (std::size_t i = 0; i < layer.size(); ++i)
      for (std::size_t j = i + 1; j < layer.size(); ++j) {
        std::size_t u = layer[i], v = layer[j];
        bool uv = star.contains(u, v), vu = star.contains(v, u);
        if (uv == vu)
          throw domain_error("layer order: nodes '" + d.node_name(u) + "' and '" +
                             d.node_name(v) + "' are " +
                             (uv ? "related in both directions" : "not comparable"));
      }
    std::vector<std::size_t> preds(layer.size(), 0);
    for (std::size_t i = 0; i < layer.size(); ++i)
      for (std::size_t j = 0; j < layer.size(); ++j)
        if (i != j && star.contains(layer[j], layer[i])) ++preds[i];
    std::vector<std::size_t> ordered(layer.size());
    std::vector<bool> slot_taken(layer.size(), false);
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (slot_taken[preds[i]]) {
        std::size_t other = ordered[preds[i]];
        throw domain_error("layer order: nodes '" + d.node_name(other) + "' and '" +
                           d.node_name(layer[i]) + "' sit on a horizontal cycle");
      }
      slot_taken[preds[i]] = true;
      ordered[preds[i]] = layer[i];
    }
    layer = std::move(ordered);
    for (std::size_t i = 0; i < layer.size(); ++i) seg.position_of[layer[i]] = i;
  }
  return seg;
}

std::vector<std::size_t> unresolved_edges(const Diagram& d) {
  Segmentation seg = segmentation(d);
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    auto [u, v] = d.edge(e);
    if (seg.layer_of[v] >= seg.layer_of[u] + 2) out.push_back(e);
  }
  return out;
}

std::vector<std::size_t> layer_order(const Diagram& d, std::size_t k) {
  Segmentation seg = segmentation(d);
  if (k == 0 || k > seg.layers.size())
    throw usage_error("layer index " + std::to_string(k) + " out of range");
  return seg.layers[k - 1];
}

}  // namespace mondiag
