#include "mondiag/diagram_io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "mondiag/error.hpp"
#include "mondiag/layering.hpp"

namespace mondiag {

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

ObjectWord parse_word_tokens(const Signature& sig, std::span<const std::string> toks,
                             std::size_t line) {
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

std::string dot_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

bool valid_node_id(std::string_view name) {
  if (name.empty()) return false;
  const char first = name[0];
  if (!std::isalpha(static_cast<unsigned char>(first)) && first != '%') return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '%') return false;
  }
  return true;
}

Diagram parse_diagram_text(std::string_view text, std::shared_ptr<const Signature> sig,
                           bool apply_closure) {
  if (!sig) throw usage_error("diagram parser needs a signature");
  DiagramData data;
  data.sig = sig;

  std::set<std::string> node_ids;
  std::map<std::string, std::size_t> edge_ids;
  std::set<std::pair<std::string, std::string>> edge_pairs;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;

    if (toks[0] == "use") {
      throw parse_error(lineno, "'use' is only available when parsing a diagram file");
    } else if (toks[0] == "node") {
      if (toks.size() < 3) throw parse_error(lineno, "expected: node <id> <gen | id@<word>>");
      const std::string& id = toks[1];
      if (!valid_node_id(id)) throw parse_error(lineno, "bad node id '" + id + "'");
      if (!node_ids.insert(id).second) throw parse_error(lineno, "duplicate node id '" + id + "'");
      if (toks[2].rfind("id@", 0) == 0) {
        std::vector<std::string> word_toks;
        if (toks[2].size() > 3) word_toks.push_back(toks[2].substr(3));
        word_toks.insert(word_toks.end(), toks.begin() + 3, toks.end());
        if (word_toks.empty()) {
          throw parse_error(lineno, "expected a word after 'id@' (use id@1 for the unit)");
        }
        data.nodes.emplace_back(id, Factor::id_on(parse_word_tokens(*sig, word_toks, lineno)));
      } else {
        if (toks.size() != 3) throw parse_error(lineno, "expected: node <id> <gen | id@<word>>");
        auto g = sig->find_gen(toks[2]);
        if (!g) throw parse_error(lineno, "unknown generator '" + toks[2] + "'");
        data.nodes.emplace_back(id, Factor::gen(*g));
      }
    } else if (toks[0] == "edge") {
      if (toks.size() != 4) throw parse_error(lineno, "expected: edge <id> <src> <dst>");
      const std::string& eid = toks[1];
      if (!valid_node_id(eid)) throw parse_error(lineno, "bad edge id '" + eid + "'");
      if (edge_ids.count(eid)) throw parse_error(lineno, "duplicate edge id '" + eid + "'");
      for (std::size_t k = 2; k <= 3; ++k) {
        if (!node_ids.count(toks[k])) throw parse_error(lineno, "unknown node '" + toks[k] + "'");
      }
      if (!edge_pairs.insert({toks[2], toks[3]}).second) {
        throw parse_error(lineno, "duplicate edge " + toks[2] + " -> " + toks[3]);
      }
      edge_ids.emplace(eid, data.edges.size());
      data.edges.emplace_back(toks[2], toks[3]);
    } else if (toks[0] == "ord") {
      if (toks.size() != 4 || toks[2] != "<") {
        throw parse_error(lineno, "expected: ord <edge> < <edge>");
      }
      auto lookup = [&](const std::string& eid) {
        auto it = edge_ids.find(eid);
        if (it == edge_ids.end()) throw parse_error(lineno, "unknown edge '" + eid + "'");
        return it->second;
      };
      const std::size_t lhs = lookup(toks[1]);
      const std::size_t rhs = lookup(toks[3]);
      data.order.emplace_back(lhs, rhs);
    } else {
      throw parse_error(lineno, "unknown directive '" + toks[0] + "'");
    }
  }

  Diagram d{std::move(data)};
  if (apply_closure) return cc_closure(d);
  return d;
}

Diagram parse_diagram_file(const std::string& path, bool raw) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open diagram file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  // The first directive must be `use <signature-path>`; it is consumed here
  // and blanked out so that body line numbers stay true.
  std::vector<std::string> lines;
  {
    std::istringstream ls(text);
    std::string l;
    while (std::getline(ls, l)) lines.push_back(l);
  }
  std::shared_ptr<const Signature> sig;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto toks = tokenize(lines[i]);
    if (toks.empty()) continue;
    if (toks[0] != "use" || toks.size() != 2) {
      throw parse_error(i + 1, path + ": expected 'use <signature-path>' before other directives");
    }
    const std::filesystem::path sig_path = std::filesystem::path(path).parent_path() / toks[1];
    sig = parse_signature_file(sig_path.string());
    lines[i].clear();
    break;
  }
  if (!sig) throw parse_error(path + ": missing 'use <signature-path>' line");

  std::string body;
  for (const std::string& l : lines) {
    body += l;
    body += '\n';
  }
  try {
    return parse_diagram_text(body, std::move(sig), !raw);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string print_diagram(const Diagram& d) {
  const Signature& sig = d.sig();
  std::ostringstream os;
  for (std::size_t i = 0; i < d.node_count(); ++i) {
    const Factor& f = d.label(i);
    os << "node " << d.node_name(i) << ' ';
    if (f.is_gen()) {
      os << sig.gen(f.gen_id()).name;
    } else {
      os << "id@" << sig.word_str(f.id_word());
    }
    os << '\n';
  }
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const auto [s, t] = d.edge(e);
    os << "edge e" << e + 1 << ' ' << d.node_name(s) << ' ' << d.node_name(t) << '\n';
  }
  // Transitive reduction of the strict order: drop every pair with a strict
  // midpoint. Closing the printed pairs reproduces the stored relation.
  const std::size_t n = d.edge_count();
  auto strict = [&](std::size_t i, std::size_t j) { return i != j && d.h_at(i, j); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!strict(i, j)) continue;
      bool reducible = false;
      for (std::size_t k = 0; k < n && !reducible; ++k) {
        if (k != i && k != j && strict(i, k) && strict(k, j)) reducible = true;
      }
      if (!reducible) os << "ord e" << i + 1 << " < e" << j + 1 << '\n';
    }
  }
  return os.str();
}

std::string render_dot(const Diagram& d) {
  const ValidationReport rep = validate_diagram(d);
  if (!rep.ok()) {
    throw domain_error(std::string("render: invalid diagram: ") +
                       condition_name(rep.violations[0].cond) + ": " + rep.violations[0].witness);
  }
  const Segmentation seg = segmentation(d);
  const Signature& sig = d.sig();

  std::ostringstream os;
  os << "digraph diagram {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box];\n";
  for (std::size_t k = 0; k < seg.layers.size(); ++k) {
    os << "  { rank=same;  // layer " << k + 1 << '\n';
    const auto& layer = seg.layers[k];
    for (std::size_t i : layer) {
      os << "    \"" << dot_escape(d.node_name(i)) << "\" [label=\""
         << dot_escape(d.node_name(i) + ": " + factor_str(sig, d.label(i))) << "\"];\n";
    }
    for (std::size_t p = 1; p < layer.size(); ++p) {
      os << "    \"" << dot_escape(d.node_name(layer[p - 1])) << "\" -> \""
         << dot_escape(d.node_name(layer[p])) << "\" [style=invis];\n";
    }
    os << "  }\n";
  }
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const auto [s, t] = d.edge(e);
    os << "  \"" << dot_escape(d.node_name(s)) << "\" -> \"" << dot_escape(d.node_name(t))
       << "\";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace mondiag
