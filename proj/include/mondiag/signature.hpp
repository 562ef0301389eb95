#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "mondiag/error.hpp"

namespace mondiag {

using ObjId = std::uint32_t;
using GenId = std::uint32_t;

/// A word over the object generators of a signature. The empty word is the
/// monoidal unit; concatenation is the tensor on objects.
struct ObjectWord {
  std::vector<ObjId> factors;

  ObjectWord() = default;
  explicit ObjectWord(std::vector<ObjId> f) : factors(std::move(f)) {}

  bool empty() const { return factors.empty(); }
  std::size_t size() const { return factors.size(); }
  bool operator==(const ObjectWord&) const = default;
};

/// Named morphism generator with domain and codomain words.
struct MorGen {
  std::string name;
  ObjectWord dom;
  ObjectWord cod;
};

/// A finite presentation of a strict monoidal signature: object generator
/// names plus morphism generators between object words. Immutable once
/// populated; diagrams and models hold shared references to it.
class Signature {
public:
  ObjId add_object(const std::string& name);
  GenId add_gen(const std::string& name, ObjectWord dom, ObjectWord cod);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t gen_count() const { return gens_.size(); }

  const std::string& object_name(ObjId id) const;
  const MorGen& gen(GenId id) const;

  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<GenId> find_gen(std::string_view name) const;

  /// Renders a word in the text format: names separated by spaces, or the
  /// literal "1" for the empty word.
  std::string word_str(const ObjectWord& w) const;

  bool operator==(const Signature& other) const;

private:
  std::vector<std::string> objects_;
  std::vector<MorGen> gens_;
  std::unordered_map<std::string, ObjId> object_ids_;
  std::unordered_map<std::string, GenId> gen_ids_;
};

/// One slot of a layered term: either a morphism generator or an identity
/// on an object word.
class Factor {
public:
  static Factor gen(GenId id) { return Factor(id); }
  static Factor id_on(ObjectWord w) { return Factor(std::move(w)); }

  bool is_gen() const { return std::holds_alternative<GenId>(v_); }
  bool is_id() const { return !is_gen(); }
  GenId gen_id() const { return std::get<GenId>(v_); }
  const ObjectWord& id_word() const { return std::get<ObjectWord>(v_); }

  bool operator==(const Factor&) const = default;

private:
  explicit Factor(GenId id) : v_(id) {}
  explicit Factor(ObjectWord w) : v_(std::move(w)) {}
  std::variant<GenId, ObjectWord> v_;
};

/// Concatenation of finitely many words; the empty sequence gives the unit.
ObjectWord word_concat(std::span<const ObjectWord> words);
ObjectWord word_concat(const ObjectWord& a, const ObjectWord& b);

/// Domain and codomain of a factor. Identities are endo on their word.
std::pair<ObjectWord, ObjectWord> factor_dom_cod(const Signature& sig, const Factor& f);

/// Renders a factor: the generator name, or `id[<word>]` for identities.
std::string factor_str(const Signature& sig, const Factor& f);

/// True when `name` is a well-formed signature identifier: ASCII letters,
/// digits and underscore, starting with a letter.
bool valid_identifier(std::string_view name);

/// Parses the signature text format:
///
///   # comment
///   object A
///   gen f : A -> A A
///   gen k : B -> 1
///
/// Words are whitespace-separated object names; the literal `1` denotes the
/// empty word. Errors carry the offending line number.
Signature parse_signature(std::string_view text);

/// Reads and parses a signature file; errors mention the path.
std::shared_ptr<const Signature> parse_signature_file(const std::string& path);

}  // namespace mondiag
