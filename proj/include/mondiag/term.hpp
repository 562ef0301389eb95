#pragma once

#include <string>
#include <vector>

#include "mondiag/signature.hpp"

namespace mondiag {

/// A canonical layered expression over a signature: a domain word, a stack
/// of layers — each a left-to-right sequence of factors — and a codomain
/// word. Coherent by construction: each layer's input word equals the
/// previous layer's output word; a zero-layer term is the identity on its
/// (equal) boundary words.
struct LayeredTerm {
  ObjectWord dom;
  std::vector<std::vector<Factor>> layers;
  ObjectWord cod;

  bool operator==(const LayeredTerm&) const = default;
};

/// Input word of one layer: the concatenated domains of its factors.
ObjectWord layer_dom(const Signature& sig, const std::vector<Factor>& layer);
/// Output word of one layer: the concatenated codomains of its factors.
ObjectWord layer_cod(const Signature& sig, const std::vector<Factor>& layer);

/// Builds a term from its layers, deriving the boundary words and checking
/// coherence between consecutive layers (usage error on a mismatch). The
/// zero-layer form needs the boundary word spelled out explicitly.
LayeredTerm make_term(const Signature& sig, std::vector<std::vector<Factor>> layers);
LayeredTerm make_identity_term(ObjectWord boundary);

/// One line per layer: `f ⊗ id[A B] ⊗ g`.
std::string layer_str(const Signature& sig, const std::vector<Factor>& layer);

}  // namespace mondiag
