#pragma once

#include <cstddef>
#include <vector>

#include "mondiag/diagram.hpp"

namespace mondiag {

/// Partition of the nodes into layers by iterated removal of E-minimal
/// elements. Layer numbering is 1-based; `layers[k-1]` holds layer k sorted
/// by the total order that the induced node relation of H places on it.
struct Segmentation {
  std::vector<std::vector<std::size_t>> layers;
  std::vector<std::size_t> layer_of;     // node index -> 1-based layer
  std::vector<std::size_t> position_of;  // node index -> 0-based slot in its layer
};

/// Height of the diagram: the length of the longest E-chain, counted in
/// nodes; 0 for the empty diagram. Requires E acyclic.
std::size_t rank(const Diagram& d);

/// Strips E-minimal nodes layer by layer and orders each layer by the
/// induced node relation of H. Requires E acyclic; throws a domain error
/// naming the offending pair when some layer is not totally ordered.
Segmentation segmentation(const Diagram& d);

/// Edges whose endpoints sit more than one layer apart — the obstacle that
/// resolution removes. Returned in ascending edge-index order.
std::vector<std::size_t> unresolved_edges(const Diagram& d);

/// Nodes of layer k (1-based) in their horizontal order.
std::vector<std::size_t> layer_order(const Diagram& d, std::size_t k);

}  // namespace mondiag
