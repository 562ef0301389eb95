#include "mondiag/term.hpp"

namespace mondiag {

ObjectWord layer_dom(const Signature& sig, const std::vector<Factor>& layer) {
  std::vector<ObjectWord> parts;
  parts.reserve(layer.size());
  for (const Factor& f : layer) parts.push_back(factor_dom_cod(sig, f).first);
  return word_concat(parts);
}

ObjectWord layer_cod(const Signature& sig, const std::vector<Factor>& layer) {
  std::vector<ObjectWord> parts;
  parts.reserve(layer.size());
  for (const Factor& f : layer) parts.push_back(factor_dom_cod(sig, f).second);
  return word_concat(parts);
}

LayeredTerm make_term(const Signature& sig, std::vector<std::vector<Factor>> layers) {
  if (layers.empty()) return make_identity_term(ObjectWord{});
  for (std::size_t k = 0; k + 1 < layers.size(); ++k) {
    ObjectWord out = layer_cod(sig, layers[k]);
    ObjectWord in = layer_dom(sig, layers[k + 1]);
    if (!(out == in))
      throw usage_error("incoherent layers " + std::to_string(k + 1) + "/" +
                        std::to_string(k + 2) + ": '" + sig.word_str(out) + "' vs '" +
                        sig.word_str(in) + "'");
  }
  LayeredTerm t;
  t.dom = layer_dom(sig, layers.front());
  t.cod = layer_cod(sig, layers.back());
  t.layers = std::move(layers);
  return t;
}

LayeredTerm make_identity_term(ObjectWord boundary) {
  LayeredTerm t;
  t.dom = boundary;
  t.cod = std::move(boundary);
  return t;
}

std::string layer_str(const Signature& sig, const std::vector<Factor>& layer) {
  std::string out;
  for (std::size_t i = 0; i < layer.size(); ++i) {
    if (i) out += " ⊗ ";
    out += factor_str(sig, layer[i]);
  }
  return out;
}

}  // namespace mondiag
