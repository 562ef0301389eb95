#pragma once

#include <span>
#include <string>
#include <vector>

#include "mondiag/diagram.hpp"
#include "mondiag/matrix_model.hpp"
#include "mondiag/resolution.hpp"
#include "mondiag/term.hpp"

namespace mondiag {

/// Factor sequences of a diagram, one per layer, each in the layer's
/// horizontal order. The diagram must already be resolved: every edge has
/// to connect adjacent layers, or a usage error directs the caller to
/// resolve first.
std::vector<std::vector<Factor>> reading(const Diagram& d);

/// One boundary where consecutive layers fail to meet: the output word of
/// layer `boundary` differs from the input word of layer `boundary + 1`.
struct BoundaryMismatch {
  std::size_t boundary;  // 1-based index of the lower layer
  ObjectWord below_cod;
  ObjectWord above_dom;
};

struct WordReport {
  std::vector<BoundaryMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Structural validation, resolution, and the word-level boundary check in
/// one pass: resolves the diagram and lists every consecutive-layer word
/// mismatch of the resulting reading. Empty report = the diagram denotes a
/// well-typed layered term. Structural axiom violations are reported as a
/// usage error naming the first broken condition.
WordReport check_validity(const Diagram& d);

/// Raised by readout when the boundary words fail to meet; carries the
/// mismatch report.
class BoundaryError : public Error {
public:
  BoundaryError(std::string msg, WordReport report)
      : Error(Kind::domain, std::move(msg)), report_(std::move(report)) {}
  const WordReport& report() const { return report_; }

private:
  WordReport report_;
};

/// The layered term a diagram denotes: resolves internally, reads the
/// layers off, and composes them with layer 1 applied first. Deterministic
/// and invariant under node renaming. Throws BoundaryError when the words
/// between two consecutive layers disagree.
LayeredTerm readout(const Diagram& d);

/// Ordered tensor of diagrams: disjoint union with component-indexed node
/// names, every edge of an earlier component placed below every edge of a
/// later one, and the horizontal order re-closed. Components shorter than
/// the tallest are extended with a chain of identity nodes carrying their
/// final output word, so the tensor of the readouts survives layer-wise.
/// All inputs must be valid diagrams over one signature; components with no
/// nodes are skipped (they denote the identity on the unit).
Diagram attach(std::span<const Diagram> ds);

/// Sequential composition: the canonical diagram of the two readouts
/// stacked, with node names keeping their component provenance (suffixed %1
/// and %2). Requires cod(readout(d1)) == dom(readout(d2)).
Diagram compose_vertical(const Diagram& d1, const Diagram& d2);

/// Exact monoidality check of the readout against a model: evaluates the
/// readout of attach(ds) and compares with the ordered Kronecker product of
/// the component readouts' evaluations.
bool readout_functor_check(std::span<const Diagram> ds, const MatrixModel& model);

}  // namespace mondiag
