#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "mondiag/diagram.hpp"

namespace mondiag {

/// True when `name` is a well-formed node or edge identifier in the diagram
/// text format: letters, digits, underscore and percent, not starting with a
/// digit or underscore. The percent sign is allowed so that printed diagrams
/// containing machine-generated names (resolution and padding nodes) parse
/// back.
bool valid_node_id(std::string_view name);

/// Parses the diagram text format against a given signature:
///
///   # comment
///   node a f
///   node n id@A B
///   edge e1 a n
///   ord e1 < e2
///
/// Words after `id@` are whitespace-separated object names (`id@1` is the
/// identity on the unit). `ord` pairs reference edge identifiers declared by
/// `edge` lines. A `use` line is rejected here — it only makes sense when
/// parsing from a file. The result's order relation is run through the
/// conditional-construction closure unless `apply_closure` is false; the
/// result is *not* validated.
Diagram parse_diagram_text(std::string_view text, std::shared_ptr<const Signature> sig,
                           bool apply_closure = true);

/// Reads a diagram file. The file must name its signature before any other
/// directive with `use <path>`, resolved relative to the file's directory.
/// `raw` skips the closure, exposing the order relation exactly as written.
Diagram parse_diagram_file(const std::string& path, bool raw = false);

/// Renders a diagram in the text format (without a `use` line): nodes in
/// stored order, edges named e1..eN in stored order, and `ord` lines listing
/// the transitive reduction of the strict order — the minimal generating set,
/// so parsing the output reproduces the same closed relation.
std::string print_diagram(const Diagram& d);

/// DOT rendering of a valid diagram (domain error otherwise): one same-rank
/// block per layer with nodes in horizontal order, vertical edges drawn
/// upward, and invisible intra-layer edges hinting the left-to-right
/// placement. Byte-deterministic for a given diagram.
std::string render_dot(const Diagram& d);

}  // namespace mondiag
