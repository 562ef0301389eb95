#include "mondiag/resolution.hpp"

#include <algorithm>

#include "mondiag/layering.hpp"

namespace mondiag {

namespace {

std::string fresh_node_name(const Diagram& d, const std::string& src, const std::string& dst,
                            std::size_t hint) {
  for (std::size_t k = hint;; ++k) {
    std::string name = src + "%" + dst + "%" + std::to_string(k);
    if (!d.node_index(name)) return name;
  }
}

}  // namespace

std::pair<Diagram, Incision> incise(const Diagram& d, std::size_t edge_index,
                                    std::size_t name_hint) {
  if (edge_index >= d.edge_count()) throw usage_error("incise: edge index out of range");
  {
    Segmentation seg = segmentation(d);
    auto [u, v] = d.edge(edge_index);
    if (seg.layer_of[v] < seg.layer_of[u] + 2)
      throw usage_error("incise: edge " + d.edge_str(edge_index) + " does not skip a layer");
  }

  auto [src, dst] = d.edge(edge_index);
  const std::string& sname = d.node_name(src);
  const std::string& dname = d.node_name(dst);
  std::string fresh = fresh_node_name(d, sname, dname, name_hint);

  DiagramData data;
  data.sig = d.sig_ptr();
  for (std::size_t v = 0; v < d.node_count(); ++v)
    data.nodes.push_back({d.node_name(v), d.label(v)});
  ObjectWord carried = factor_dom_cod(d.sig(), d.label(src)).second;
  data.nodes.push_back({fresh, Factor::id_on(std::move(carried))});

  // Surviving edges keep their relative order; the two replacements go last.
  std::vector<std::size_t> cohesion;  // new edge index -> old edge index
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    if (e == edge_index) continue;
    data.edges.push_back({d.node_name(d.edge(e).first), d.node_name(d.edge(e).second)});
    cohesion.push_back(e);
  }
  data.edges.push_back({sname, fresh});
  cohesion.push_back(edge_index);
  data.edges.push_back({fresh, dname});
  cohesion.push_back(edge_index);

  // Strict pullback of H along the cohesion map.
  for (std::size_t e = 0; e < data.edges.size(); ++e)
    for (std::size_t f = 0; f < data.edges.size(); ++f)
      if (cohesion[e] != cohesion[f] && d.h_at(cohesion[e], cohesion[f]))
        data.order.push_back({e, f});

  Diagram cut(std::move(data));
  Diagram closed = [&] {
    try {
      return cc_closure(cut);
    } catch (const Error&) {
      // Inherent obstruction, not a bug: when the skip edge is ordered
      // strictly between two edges that meet at an intermediate node, the
      // inserted identity node would have to lie on both sides of that node
      // at once, so no consistent order on the cut diagram exists.
      throw domain_error("incise: edge " + d.edge_str(edge_index) +
                         " admits no order-consistent incision");
    }
  }();

  Incision step;
  step.removed = {sname, dname};
  step.inserted_node = fresh;
  step.inserted_edges = {std::pair{sname, fresh}, std::pair{fresh, dname}};
  step.cohesion = std::move(cohesion);
  return {std::move(closed), std::move(step)};
}

std::pair<Diagram, ResolutionTrace> resolve(const Diagram& d) {
  Diagram cur = d;
  ResolutionTrace trace;
  for (;;) {
    Segmentation seg = segmentation(cur);
    std::vector<std::size_t> skips = unresolved_edges(cur);
    if (skips.empty()) break;
    // Least edge by (source layer, source position, target layer, target position).
    auto key = [&](std::size_t e) {
      auto [u, v] = cur.edge(e);
      return std::array<std::size_t, 4>{seg.layer_of[u], seg.position_of[u], seg.layer_of[v],
                                        seg.position_of[v]};
    };
    std::size_t pick = *std::min_element(skips.begin(), skips.end(),
                                         [&](std::size_t a, std::size_t b) {
                                           return key(a) < key(b);
                                         });
    auto [next, step] = incise(cur, pick, trace.steps.size());
    cur = std::move(next);
    trace.steps.push_back(std::move(step));
  }
  return {std::move(cur), std::move(trace)};
}

}  // namespace mondiag
