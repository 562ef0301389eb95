#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mondiag/matrix_model.hpp"
#include "mondiag/signature.hpp"
#include "mondiag/term.hpp"

namespace mondiag {

/// An integer composition: a sequence of naturals (zeroes permitted)
/// together with their sum.
struct Partition {
  std::vector<std::size_t> parts;
  std::size_t total = 0;

  bool operator==(const Partition&) const = default;
};

/// All length-`gamma` sequences of naturals summing to `alpha`, in
/// lexicographic order. Empty when gamma == 0 and alpha > 0.
std::vector<Partition> enumerate_partitions(std::size_t alpha, std::size_t gamma);

/// A partition refined once more: `outer` splits some total into parts, and
/// `inners[i]` splits `outer.parts[i]` again.
struct DoublePartition {
  Partition outer;
  std::vector<Partition> inners;
};

/// Concatenation of the inner partitions — the induced flat partition of
/// the outer total. Throws a usage error when the double partition is
/// malformed (length or per-index totals off).
Partition flatten(const DoublePartition& dp);

/// n-ary tensor of words: the left fold of concatenation from the unit.
ObjectWord derived_tensor(std::span<const ObjectWord> words);

/// n-ary tensor of layered terms: every term is padded to the common layer
/// count with identity layers on its output word, appended at the top, and
/// the padded layers are then concatenated slot-wise. The empty sequence
/// gives the identity on the unit word.
LayeredTerm derived_tensor(const Signature& sig, std::span<const LayeredTerm> terms);

/// Either kind of tensor argument; the mixed-sequence entry point rejects a
/// sequence that mentions both kinds.
using TensorArg = std::variant<ObjectWord, LayeredTerm>;

/// Dispatches to the word or term overload. All arguments must be the same
/// kind (usage error otherwise); the empty sequence yields the unit word.
TensorArg derived_tensor(const Signature& sig, std::span<const TensorArg> args);

struct CoherenceReport {
  std::size_t cases = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

/// Sweeps every composition of every beta <= max_alpha into gamma <=
/// max_alpha parts, and every once-refined double composition (inner
/// lengths capped at part + 1 and max_alpha — longer inners only append
/// zero parts), assigning words from a fixed pool over the signature's
/// objects to the beta slots. For each case the grouped tensor, the
/// doubly-grouped tensor, and the flattened tensor are compared against
/// the direct n-ary tensor; any inequality is reported.
CoherenceReport check_coherence(const Signature& sig, std::size_t max_alpha);

struct InterchangeReport {
  std::size_t trials = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Draws `trials` pseudo-random quadruples (f, g, h, j) with g after f and
/// j after h from the model's generators and small identities, and checks
/// kron(M(g)·M(f), M(j)·M(h)) == eval of the two-layer term [f,h],[g,j]
/// with exact rational equality. Deterministic for a given seed.
InterchangeReport check_interchange(const MatrixModel& model, std::size_t trials,
                                    std::uint64_t seed);

/// Built-in two-object model — X of dimension 2, Y of dimension 3 — with six
/// generators carrying fixed fractional matrices. The default target of the
/// interchange check when no model file is supplied.
MatrixModel default_interchange_model();

}  // namespace mondiag
