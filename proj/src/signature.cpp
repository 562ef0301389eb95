#include "mondiag/signature.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace mondiag {

ObjId Signature::add_object(const std::string& name) {
  if (!valid_identifier(name)) throw usage_error("bad object name '" + name + "'");
  if (object_ids_.count(name)) throw usage_error("duplicate object '" + name + "'");
  ObjId id = static_cast<ObjId>(objects_.size());
  objects_.push_back(name);
  object_ids_.emplace(name, id);
  return id;
}

GenId Signature::add_gen(const std::string& name, ObjectWord dom, ObjectWord cod) {
  if (!valid_identifier(name)) throw usage_error("bad generator name '" + name + "'");
  if (gen_ids_.count(name)) throw usage_error("duplicate generator '" + name + "'");
  for (ObjId o : dom.factors)
    if (o >= objects_.size()) throw usage_error("generator domain references unknown object");
  for (ObjId o : cod.factors)
    if (o >= objects_.size()) throw usage_error("generator codomain references unknown object");
  GenId id = static_cast<GenId>(gens_.size());
  gens_.push_back(MorGen{name, std::move(dom), std::move(cod)});
  gen_ids_.emplace(name, id);
  return id;
}

const std::string& Signature::object_name(ObjId id) const {
  if (id >= objects_.size()) throw usage_error("object id out of range");
  return objects_[id];
}

const MorGen& Signature::gen(GenId id) const {
  if (id >= gens_.size()) throw usage_error("generator id out of range");
  return gens_[id];
}

std::optional<ObjId> Signature::find_object(std::string_view name) const {
  auto it = object_ids_.find(std::string(name));
  if (it == object_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<GenId> Signature::find_gen(std::string_view name) const {
  auto it = gen_ids_.find(std::string(name));
  if (it == gen_ids_.end()) return std::nullopt;
  return it->second;
}

std::string Signature::word_str(const ObjectWord& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.factors.size(); ++i) {
    if (i) out += ' ';
    out += object_name(w.factors[i]);
  }
  return out;
}

bool Signature::operator==(const Signature& other) const {
  if (objects_ != other.objects_) return false;
  if (gens_.size() != other.gens_.size()) return false;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name != other.gens_[i].name || gens_[i].dom != other.gens_[i].dom ||
        gens_[i].cod != other.gens_[i].cod)
      return false;
  }
  return true;
}

ObjectWord word_concat(std::span<const ObjectWord> words) {
  ObjectWord out;
  std::size_t n = 0;
  for (const auto& w : words) n += w.size();
  out.factors.reserve(n);
  for (const auto& w : words)
    out.factors.insert(out.factors.end(), w.factors.begin(), w.factors.end());
  return out;
}

ObjectWord word_concat(const ObjectWord& a, const ObjectWord& b) {
  const ObjectWord ws[2] = {a, b};
  return word_concat(std::span<const ObjectWord>(ws, 2));
}

std::pair<ObjectWord, ObjectWord> factor_dom_cod(const Signature& sig, const Factor& f) {
  if (f.is_gen()) {
    const MorGen& g = sig.gen(f.gen_id());
    return {g.dom, g.cod};
  }
  return {f.id_word(), f.id_word()};
}

std::string factor_str(const Signature& sig, const Factor& f) {
  if (f.is_gen()) return sig.gen(f.gen_id()).name;
  return "id[" + sig.word_str(f.id_word()) + "]";
}

bool valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

namespace {

// Strips a '#' comment and splits the rest on whitespace.
std::vector<std::string> tokenize(std::string_view line) {
  std::string body(line.substr(0, line.find('#')));
  std::istringstream ss(body);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

// Parses a word given as a token range; `1` alone denotes the empty word.
ObjectWord parse_word(const Signature& sig, std::span<const std::string> toks, std::size_t line) {
  if (toks.empty()) throw parse_error(line, "empty word (use '1' for the unit)");
  if (toks.size() == 1 && toks[0] == "1") return ObjectWord{};
  ObjectWord w;
  for (const auto& t : toks) {
    if (t == "1") throw parse_error(line, "'1' cannot appear inside a word");
    auto id = sig.find_object(t);
    if (!id) throw parse_error(line, "unknown object '" + t + "'");
    w.factors.push_back(*id);
  }
  return w;
}

}  // namespace

Signature parse_signature(std::string_view text) {
  Signature sig;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] == "object") {
      if (toks.size() != 2) throw parse_error(lineno, "expected: object <Name>");
      if (!valid_identifier(toks[1]))
        throw parse_error(lineno, "bad object name '" + toks[1] + "'");
      if (sig.find_object(toks[1])) throw parse_error(lineno, "duplicate object '" + toks[1] + "'");
      sig.add_object(toks[1]);
    } else if (toks[0] == "gen") {
      // gen <name> : <word> -> <word>
      if (toks.size() < 6 || toks[2] != ":")
        throw parse_error(lineno, "expected: gen <name> : <word> -> <word>");
      auto arrow = std::find(toks.begin() + 3, toks.end(), "->");
      if (arrow == toks.end() || arrow == toks.begin() + 3 || arrow + 1 == toks.end())
        throw parse_error(lineno, "expected: gen <name> : <word> -> <word>");
      if (!valid_identifier(toks[1]))
        throw parse_error(lineno, "bad generator name '" + toks[1] + "'");
      if (sig.find_gen(toks[1]) || sig.find_object(toks[1]))
        throw parse_error(lineno, "duplicate name '" + toks[1] + "'");
      std::size_t ai = static_cast<std::size_t>(arrow - toks.begin());
      ObjectWord dom = parse_word(sig, std::span(toks).subspan(3, ai - 3), lineno);
      ObjectWord cod = parse_word(sig, std::span(toks).subspan(ai + 1), lineno);
      sig.add_gen(toks[1], std::move(dom), std::move(cod));
    } else {
      throw parse_error(lineno, "unknown directive '" + toks[0] + "'");
    }
  }
  return sig;
}

std::shared_ptr<const Signature> parse_signature_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open signature file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return std::make_shared<const Signature>(parse_signature(buf.str()));
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

}  // namespace mondiag
