#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mondiag/diagram.hpp"

namespace mondiag {

/// Record of one incision: the removed skip edge, the inserted identity
/// node, the two replacement edges, and the cohesion map sending each edge
/// of the new diagram to the edge of the old diagram it came from (the two
/// replacement edges both map to the removed edge).
struct Incision {
  std::pair<std::string, std::string> removed;
  std::string inserted_node;
  std::array<std::pair<std::string, std::string>, 2> inserted_edges;
  std::vector<std::size_t> cohesion;  // new edge index -> old edge index
};

struct ResolutionTrace {
  std::vector<Incision> steps;
  std::size_t resistivity() const { return steps.size(); }
};

/// Cuts one unresolved edge e = (s, t): removes it, inserts a fresh node
/// labeled with the identity on the codomain word of s's label, and wires
/// s -> fresh -> t. H of the result is the strict pullback of H along the
/// cohesion map (edge pairs are related iff their images are strictly
/// related), re-closed; the closure is what relates the two inserted edges
/// to each other. The fresh node is named `<src>%<dst>%<k>` with k the
/// smallest value at or above `name_hint` that avoids a collision.
std::pair<Diagram, Incision> incise(const Diagram& d, std::size_t edge_index,
                                    std::size_t name_hint = 0);

/// Repeatedly incises the least unresolved edge — ordered by (source layer,
/// source position, target layer, target position) — until none remains.
/// The step index seeds the fresh-node suffix, so a double-skipping edge
/// leaves a readable chain of stacked identity nodes.
std::pair<Diagram, ResolutionTrace> resolve(const Diagram& d);

}  // namespace mondiag
