#include "mondiag/readout.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mondiag/layering.hpp"

namespace mondiag {

namespace {

void require_valid(const Diagram& d, const std::string& who) {
  ValidationReport rep = validate_diagram(d);
  if (rep.ok()) return;
  const Violation& v = rep.violations.front();
  throw domain_error(who + ": invalid diagram: " + std::string(condition_name(v.cond)) + ": " +
                     v.witness);
}

std::vector<std::vector<Factor>> layer_factors(const Diagram& d, const Segmentation& seg) {
  std::vector<std::vector<Factor>> out;
  out.reserve(seg.layers.size());
  for (const auto& layer : seg.layers) {
    std::vector<Factor> row;
    row.reserve(layer.size());
    for (std::size_t v : layer) row.push_back(d.label(v));
    out.push_back(std::move(row));
  }
  return out;
}

WordReport boundary_report(const Signature& sig, const std::vector<std::vector<Factor>>& layers) {
  WordReport rep;
  for (std::size_t k = 0; k + 1 < layers.size(); ++k) {
    ObjectWord below = layer_cod(sig, layers[k]);
    ObjectWord above = layer_dom(sig, layers[k + 1]);
    if (!(below == above)) rep.mismatches.push_back({k + 1, below, above});
  }
  return rep;
}

// Half-open wire span [begin, end) of one factor inside its layer word.
struct Span {
  std::size_t begin = 0, end = 0;
  bool empty() const { return begin == end; }
};

std::vector<Span> layer_spans(const Signature& sig, const std::vector<Factor>& layer,
                              bool use_cod) {
  std::vector<Span> out;
  out.reserve(layer.size());
  std::size_t pos = 0;
  for (const Factor& f : layer) {
    auto [dom, cod] = factor_dom_cod(sig, f);
    std::size_t len = (use_cod ? cod : dom).size();
    out.push_back({pos, pos + len});
    pos += len;
  }
  return out;
}

// Wires one boundary of a layered build: factors whose spans overlap are
// connected, and factors with empty spans (unit boundaries) are tied to the
// slot facing their position, pairing empty producers with empty consumers
// at the same position where possible. The resulting edge set has no
// crossings — whenever two edges have distinct sources and distinct
// targets, the source order agrees with the target order — which is what
// keeps the forced horizontal order of the whole build consistent.
std::vector<std::pair<std::size_t, std::size_t>> boundary_edges(const std::vector<Span>& prod,
                                                                const std::vector<Span>& cons,
                                                                std::size_t total) {
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < prod.size(); ++i)
    for (std::size_t j = 0; j < cons.size(); ++j)
      if (std::max(prod[i].begin, cons[j].begin) < std::min(prod[i].end, cons[j].end))
        edges.insert({i, j});

  auto containing = [total](const std::vector<Span>& side, std::size_t p) {
    std::size_t q = total == 0 ? 0 : std::min(p, total - 1);
    std::size_t last_nonempty = side.size();
    for (std::size_t i = 0; i < side.size(); ++i) {
      if (side[i].empty()) continue;
      last_nonempty = i;
      if (side[i].begin <= q && q < side[i].end) return i;
    }
    return last_nonempty;  // side.size() when every span is empty
  };

  std::map<std::size_t, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> empties;
  for (std::size_t i = 0; i < prod.size(); ++i)
    if (prod[i].empty()) empties[prod[i].begin].first.push_back(i);
  for (std::size_t j = 0; j < cons.size(); ++j)
    if (cons[j].empty()) empties[cons[j].begin].second.push_back(j);

  for (const auto& [p, group] : empties) {
    const auto& [ps, cs] = group;
    if (!ps.empty() && !cs.empty()) {
      for (std::size_t k = 0; k < std::max(ps.size(), cs.size()); ++k)
        edges.insert({ps[std::min(k, ps.size() - 1)], cs[std::min(k, cs.size() - 1)]});
    } else if (!ps.empty()) {
      std::size_t j = containing(cons, p);
      if (j == cons.size()) throw internal_error("layered build: boundary with no targets");
      for (std::size_t i : ps) edges.insert({i, j});
    } else {
      std::size_t i = containing(prod, p);
      if (i == prod.size()) throw internal_error("layered build: boundary with no sources");
      for (std::size_t j : cs) edges.insert({i, j});
    }
  }
  return {edges.begin(), edges.end()};  // set order == (src slot, dst slot) lex
}

// Canonical diagram of a layered term: one node per factor, wire-overlap
// edges across each boundary, and the horizontal order seeded as the full
// (source slot, target slot) lexicographic order within each boundary.
// Every seeded or forced order pair stays inside a single boundary, so the
// closure is consistent by construction.
Diagram term_to_diagram(std::shared_ptr<const Signature> sig, const LayeredTerm& t,
                        const std::vector<std::vector<std::string>>& names) {
  const Signature& s = *sig;
  if (names.size() != t.layers.size())
    throw internal_error("layered build: name grid does not match the layers");
  DiagramData data;
  data.sig = sig;

  std::vector<std::vector<std::size_t>> node_at(t.layers.size());
  for (std::size_t k = 0; k < t.layers.size(); ++k) {
    if (t.layers[k].empty()) throw usage_error("layered build: layer " + std::to_string(k + 1) +
                                               " has no factors");
    if (names[k].size() != t.layers[k].size())
      throw internal_error("layered build: name grid does not match layer " +
                           std::to_string(k + 1));
    for (std::size_t i = 0; i < t.layers[k].size(); ++i) {
      node_at[k].push_back(data.nodes.size());
      data.nodes.emplace_back(names[k][i], t.layers[k][i]);
    }
  }

  for (std::size_t k = 0; k + 1 < t.layers.size(); ++k) {
    std::vector<Span> prod = layer_spans(s, t.layers[k], /*use_cod=*/true);
    std::vector<Span> cons = layer_spans(s, t.layers[k + 1], /*use_cod=*/false);
    std::size_t total = layer_cod(s, t.layers[k]).size();
    std::size_t first = data.edges.size();
    for (auto [i, j] : boundary_edges(prod, cons, total))
      data.edges.emplace_back(data.nodes[node_at[k][i]].first,
                              data.nodes[node_at[k + 1][j]].first);
    for (std::size_t a = first; a < data.edges.size(); ++a)
      for (std::size_t b = a + 1; b < data.edges.size(); ++b) data.order.emplace_back(a, b);
  }

  Diagram built = cc_closure(Diagram(std::move(data)));
  ValidationReport rep = validate_diagram(built);
  if (!rep.ok())
    throw internal_error("layered build produced an invalid diagram: " +
                         std::string(condition_name(rep.violations.front().cond)) + ": " +
                         rep.violations.front().witness);
  return built;
}


}  // namespace

std::vector<std::vector<Factor>> reading(const Diagram& d) {
  auto skips = unresolved_edges(d);
  if (!skips.empty())
    throw usage_error("reading: edge " + d.edge_str(skips.front()) +
                      " skips a layer; resolve the diagram first");
  return layer_factors(d, segmentation(d));
}

WordReport check_validity(const Diagram& d) {
  require_valid(d, "check_validity");
  Diagram res = resolve(d).first;
  return boundary_report(res.sig(), reading(res));
}

LayeredTerm readout(const Diagram& d) {
  require_valid(d, "readout");
  Diagram res = resolve(d).first;
  std::vector<std::vector<Factor>> layers = reading(res);
  WordReport rep = boundary_report(res.sig(), layers);
  if (!rep.ok()) {
    const BoundaryMismatch& m = rep.mismatches.front();
    throw BoundaryError("readout: layers " + std::to_string(m.boundary) + " and " +
                            std::to_string(m.boundary + 1) + " do not meet: '" +
                            res.sig().word_str(m.below_cod) + "' vs '" +
                            res.sig().word_str(m.above_dom) + "'",
                        std::move(rep));
  }
  return make_term(res.sig(), std::move(layers));
}

Diagram attach(std::span<const Diagram> ds) {
  if (ds.empty()) throw usage_error("attach requires at least one diagram");
  auto sig = ds.front().sig_ptr();
  for (const Diagram& d : ds)
    if (!(d.sig() == *sig)) throw usage_error("attach: diagrams use different signatures");
  for (std::size_t i = 0; i < ds.size(); ++i)
    require_valid(ds[i], "attach: component " + std::to_string(i));

  std::vector<Segmentation> segs;
  segs.reserve(ds.size());
  std::size_t height = 0;
  for (const Diagram& d : ds) {
    segs.push_back(segmentation(d));
    height = std::max(height, segs.back().layers.size());
  }

  DiagramData data;
  data.sig = sig;
  // Edge blocks per component; all edges of an earlier component are placed
  // below all edges of a later one.
  std::vector<std::pair<std::size_t, std::size_t>> block;  // [first, last) edge index
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const Diagram& d = ds[i];
    if (d.node_count() == 0) {
      block.emplace_back(data.edges.size(), data.edges.size());
      continue;
    }
    const std::string suffix = "%" + std::to_string(i);
    auto renamed = [&](std::size_t v) { return d.node_name(v) + suffix; };

    std::size_t first_edge = data.edges.size();
    for (std::size_t v = 0; v < d.node_count(); ++v)
      data.nodes.emplace_back(renamed(v), d.label(v));
    for (std::size_t e = 0; e < d.edge_count(); ++e)
      data.edges.emplace_back(renamed(d.edge(e).first), renamed(d.edge(e).second));
    for (std::size_t e = 0; e < d.edge_count(); ++e)
      for (std::size_t f = 0; f < d.edge_count(); ++f)
        if (e != f && d.h_at(e, f)) data.order.emplace_back(first_edge + e, first_edge + f);

    // Components shorter than the tallest get a chain of identity nodes
    // carrying their final output word, so the component keeps producing
    // its word on every higher layer.
    const std::vector<std::size_t>& final_layer = segs[i].layers.back();
    if (segs[i].layers.size() < height) {
      std::vector<ObjectWord> parts;
      for (std::size_t v : final_layer) parts.push_back(factor_dom_cod(*sig, d.label(v)).second);
      ObjectWord w = word_concat(parts);
      std::string prev;
      for (std::size_t k = segs[i].layers.size(); k < height; ++k) {
        std::string pad = "%pad" + suffix + "%" + std::to_string(k + 1);
        data.nodes.emplace_back(pad, Factor::id_on(w));
        if (prev.empty())
          for (std::size_t v : final_layer) data.edges.emplace_back(renamed(v), pad);
        else
          data.edges.emplace_back(prev, pad);
        prev = pad;
      }
    }
    block.emplace_back(first_edge, data.edges.size());
  }
  for (std::size_t i = 0; i < block.size(); ++i)
    for (std::size_t j = i + 1; j < block.size(); ++j)
      for (std::size_t e = block[i].first; e < block[i].second; ++e)
        for (std::size_t f = block[j].first; f < block[j].second; ++f)
          data.order.emplace_back(e, f);

  Diagram out = cc_closure(Diagram(std::move(data)));
  ValidationReport rep = validate_diagram(out);
  if (!rep.ok())
    throw internal_error("attach produced an invalid diagram: " +
                         std::string(condition_name(rep.violations.front().cond)) + ": " +
                         rep.violations.front().witness);
  return out;
}

Diagram compose_vertical(const Diagram& d1, const Diagram& d2) {
  if (!(d1.sig() == d2.sig()))
    throw usage_error("compose_vertical: diagrams use different signatures");
  LayeredTerm r1 = readout(d1);
  LayeredTerm r2 = readout(d2);
  if (!(r1.cod == r2.dom))
    throw domain_error("compose_vertical: not composable: the first diagram produces '" +
                      d1.sig().word_str(r1.cod) + "', the second consumes '" +
                      d2.sig().word_str(r2.dom) + "'");

  // The composite is rebuilt as the canonical diagram of the stacked
  // readouts. Grafting the two diagrams with new vertical edges instead is
  // unsound: whichever nodes the bridge edges touch, the conditional-
  // construction closure propagates the two diagrams' horizontal orders
  // through the bridges, and for as little as a two-wide interface meeting
  // a two-wide first layer it derives both directions of one edge pair and
  // no horizontal order exists. Node names keep their provenance, suffixed
  // %1 / %2 by origin.
  std::vector<std::vector<Factor>> layers = r1.layers;
  layers.insert(layers.end(), r2.layers.begin(), r2.layers.end());
  if (layers.empty()) return Diagram(DiagramData{d1.sig_ptr(), {}, {}, {}});

  std::vector<std::vector<std::string>> names;
  for (std::size_t part = 0; part < 2; ++part) {
    const Diagram& d = part == 0 ? d1 : d2;
    Diagram res = resolve(d).first;
    Segmentation seg = segmentation(res);
    const std::string suffix = "%" + std::to_string(part + 1);
    for (const auto& layer : seg.layers) {
      names.emplace_back();
      for (std::size_t v : layer) names.back().push_back(res.node_name(v) + suffix);
    }
  }
  return term_to_diagram(d1.sig_ptr(), make_term(d1.sig(), std::move(layers)), names);
}

bool readout_functor_check(std::span<const Diagram> ds, const MatrixModel& model) {
  RationalMatrix whole = eval_term(model, readout(attach(ds)));
  RationalMatrix parts = RationalMatrix::identity(1);
  for (const Diagram& d : ds) parts = kron(parts, eval_term(model, readout(d)));
  return whole == parts;
}

}  // namespace mondiag
