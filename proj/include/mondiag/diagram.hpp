#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mondiag/signature.hpp"

namespace mondiag {

/// Dense square boolean relation, used for the horizontal comparator on
/// edges and for scratch reachability computations.
class SquareRel {
public:
  SquareRel() = default;
  explicit SquareRel(std::size_t n) : n_(n), bits_(n * n, false) {}

  std::size_t size() const { return n_; }
  bool at(std::size_t i, std::size_t j) const { return bits_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, bool v = true) { bits_[i * n_ + j] = v; }

  void reflexive_close();
  void transitive_close();  // Warshall
  bool operator==(const SquareRel&) const = default;

private:
  std::size_t n_ = 0;
  std::vector<bool> bits_;
};

/// Raw material for a diagram: node names with their factor labels, edges as
/// ordered name pairs, and generating pairs of the horizontal order given as
/// indices into `edges`.
struct DiagramData {
  std::shared_ptr<const Signature> sig;
  std::vector<std::pair<std::string, Factor>> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::pair<std::size_t, std::size_t>> order;
};

/// A diagram over a signature: a finite node set with a labeling into
/// factors, a vertical comparator E (ordered node pairs), and a horizontal
/// comparator H on E. H is held as its reflexive-transitive closure of the
/// generating pairs; nothing further is assumed — the axioms (E irreflexive,
/// antisymmetric, acyclic, weakly total; H a partial order; every E-triangle
/// comparable; minimal nodes comparable in the induced node relation;
/// conditional construction) are checked by validate_diagram, not enforced
/// here, so that invalid inputs can be represented and reported.
class Diagram {
public:
  explicit Diagram(DiagramData data);

  const std::shared_ptr<const Signature>& sig_ptr() const { return sig_; }
  const Signature& sig() const { return *sig_; }

  std::size_t node_count() const { return names_.size(); }
  const std::string& node_name(std::size_t i) const { return names_[i]; }
  std::optional<std::size_t> node_index(std::string_view name) const;
  const Factor& label(std::size_t i) const { return labels_[i]; }

  std::size_t edge_count() const { return edges_.size(); }
  std::pair<std::size_t, std::size_t> edge(std::size_t e) const { return edges_[e]; }
  std::optional<std::size_t> edge_index(std::size_t src, std::size_t dst) const;
  bool has_edge(std::size_t src, std::size_t dst) const { return edge_index(src, dst).has_value(); }

  /// H on edge indices, reflexively and transitively closed.
  const SquareRel& h() const { return h_; }
  bool h_at(std::size_t e, std::size_t f) const { return h_.at(e, f); }

  std::string edge_str(std::size_t e) const;

  /// Replaces H wholesale (used by the closure and constructions); the
  /// relation must already be reflexive-transitively closed.
  Diagram with_h(SquareRel h) const;

private:
  std::shared_ptr<const Signature> sig_;
  std::vector<std::string> names_;
  std::vector<Factor> labels_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  SquareRel h_;
};

/// Relation on nodes induced by a relation on edges: sources are related to
/// sources and targets to targets, positionwise.
struct NodeRelation {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  bool contains(std::size_t a, std::size_t b) const { return pairs.count({a, b}) > 0; }
};

/// First-order (node-level) relation induced by a set of edge pairs:
/// for each related edge pair, relates the two sources and the two targets.
/// Pairs must reference edges of the diagram.
NodeRelation induced_first_order(const Diagram& d,
                                 std::span<const std::pair<std::size_t, std::size_t>> edge_pairs);

/// Induced node relation of the diagram's stored H.
NodeRelation induced_h(const Diagram& d);

/// Least extension of H that is reflexive, transitive and conditionally
/// constructed: whenever the sources of two edges, or the targets of two
/// edges, are related as *distinct* nodes in the induced node relation, the
/// edges themselves become related, and the relation is re-closed, to a
/// fixpoint. Pairs of equal nodes never force comparability (every shared
/// endpoint would otherwise relate the surrounding edges both ways).
/// Throws a domain error when the fixpoint relates two distinct edges in
/// both directions — such a diagram admits no horizontal partial order.
Diagram cc_closure(const Diagram& d);

enum class Condition {
  edge_irreflexive,
  edge_antisymmetric,
  edge_acyclic,
  edge_weak_totality,
  order_antisymmetric,
  triangle_comparable,
  minimals_comparable,
  conditionally_constructed,
};

const char* condition_name(Condition c);

struct Violation {
  Condition cond;
  std::string witness;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every diagram axiom on the stored structure and reports each
/// violated condition with a witness. An empty report means the diagram is
/// a monoidal diagram in the sense used throughout this library.
ValidationReport validate_diagram(const Diagram& d);

/// Node bijection witnessing a diagram isomorphism, as d1 index -> d2 index.
struct NodeBijection {
  std::vector<std::size_t> to;
  std::vector<std::pair<std::string, std::string>> name_pairs(const Diagram& a,
                                                              const Diagram& b) const;
};

/// Label- and order-preserving isomorphism search: a node bijection that
/// carries E onto E, whose induced edge bijection carries H onto H, and that
/// preserves the factor labeling. Deterministic: nodes are matched in
/// lexicographic name order, candidates tried in lexicographic name order.
/// Both diagrams must be over equal signatures.
std::optional<NodeBijection> diagram_iso(const Diagram& a, const Diagram& b);

}  // namespace mondiag
