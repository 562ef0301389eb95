#include <cstddef>
#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mondiag/diagram.hpp"
#include "mondiag/diagram_io.hpp"
#include "mondiag/error.hpp"
#include "mondiag/layering.hpp"
#include "mondiag/matrix_model.hpp"
#include "mondiag/readout.hpp"
#include "mondiag/resolution.hpp"
#include "mondiag/signature.hpp"
#include "mondiag/term.hpp"
#include "mondiag/unbiased.hpp"

namespace {

using namespace mondiag;

/// Throws the standard domain error for a structurally invalid diagram,
/// naming the first violated condition.
void ensure_valid(const Diagram& d) {
  const ValidationReport rep = validate_diagram(d);
  if (!rep.ok()) {
    throw domain_error(std::string("invalid diagram: ") +
                       condition_name(rep.violations.front().cond) + ": " +
                       rep.violations.front().witness);
  }
}

std::string join_names(const Diagram& d, const std::vector<std::size_t>& nodes, char sep) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += sep;
    out += d.node_name(nodes[i]);
  }
  return out;
}

int cmd_validate(const std::string& path, bool raw, bool porcelain) {
  const Diagram d = parse_diagram_file(path, raw);
  const ValidationReport rep = validate_diagram(d);
  if (rep.ok()) {
    std::cout << "valid\n";
    return 0;
  }
  for (const Violation& v : rep.violations) {
    if (porcelain) {
      std::cout << "violation\t" << condition_name(v.cond) << '\t' << v.witness << '\n';
    } else {
      std::cout << "invalid: " << condition_name(v.cond) << ": " << v.witness << '\n';
    }
  }
  return 1;
}

int cmd_segment(const std::string& path, bool porcelain) {
  const Diagram d = parse_diagram_file(path);
  ensure_valid(d);
  const Segmentation seg = segmentation(d);
  if (porcelain) {
    std::cout << "rank\t" << seg.layers.size() << '\n';
    for (std::size_t k = 0; k < seg.layers.size(); ++k) {
      std::cout << "layer\t" << k + 1 << '\t' << join_names(d, seg.layers[k], '\t') << '\n';
    }
  } else {
    std::cout << "rank " << seg.layers.size() << '\n';
    for (std::size_t k = 0; k < seg.layers.size(); ++k) {
      std::cout << "layer " << k + 1 << ": " << join_names(d, seg.layers[k], ' ') << '\n';
    }
  }
  return 0;
}

int cmd_resolve(const std::string& path, bool print, bool porcelain) {
  const Diagram d = parse_diagram_file(path);
  ensure_valid(d);
  const auto [res, trace] = resolve(d);
  if (porcelain) {
    std::cout << "resistivity\t" << trace.resistivity() << '\n';
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
      const Incision& s = trace.steps[k];
      std::cout << "step\t" << k + 1 << '\t' << s.removed.first << '\t' << s.removed.second
                << '\t' << s.inserted_node << '\n';
    }
  } else {
    std::cout << "resistivity " << trace.resistivity() << '\n';
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
      const Incision& s = trace.steps[k];
      std::cout << "step " << k + 1 << ": cut " << s.removed.first << " -> " << s.removed.second
                << ", inserted " << s.inserted_node << '\n';
    }
  }
  if (print) {
    std::cout << print_diagram(res);
  }
  return 0;
}

int cmd_readout(const std::string& path, bool porcelain) {
  const Diagram d = parse_diagram_file(path);
  const LayeredTerm t = readout(d);
  const Signature& sig = d.sig();
  if (porcelain) {
    std::cout << "dom\t" << sig.word_str(t.dom) << '\n';
    for (std::size_t k = 0; k < t.layers.size(); ++k) {
      std::cout << "layer\t" << k + 1;
      for (const Factor& f : t.layers[k]) std::cout << '\t' << factor_str(sig, f);
      std::cout << '\n';
    }
    std::cout << "cod\t" << sig.word_str(t.cod) << '\n';
  } else {
    std::cout << "dom: " << sig.word_str(t.dom) << '\n';
    for (std::size_t k = 0; k < t.layers.size(); ++k) {
      std::cout << "layer " << k + 1 << ": " << layer_str(sig, t.layers[k]) << '\n';
    }
    std::cout << "cod: " << sig.word_str(t.cod) << '\n';
  }
  return 0;
}

int cmd_eval(const std::string& path, const std::string& model_path, bool porcelain) {
  const Diagram d = parse_diagram_file(path);
  const MatrixModel model = parse_model_file(model_path, d.sig_ptr());
  const LayeredTerm t = readout(d);
  const RationalMatrix m = eval_term(model, t);
  if (porcelain) {
    std::cout << "shape\t" << m.rows() << '\t' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
      std::cout << "row";
      for (std::size_t c = 0; c < m.cols(); ++c) std::cout << '\t' << m.at(r, c);
      std::cout << '\n';
    }
  } else {
    std::cout << "dom: " << d.sig().word_str(t.dom) << '\n';
    std::cout << "cod: " << d.sig().word_str(t.cod) << '\n';
    std::cout << "shape: " << m.rows() << " x " << m.cols() << '\n';
    std::cout << m.str();
  }
  return 0;
}

int cmd_iso(const std::string& path1, const std::string& path2, bool porcelain) {
  const Diagram a = parse_diagram_file(path1);
  const Diagram b = parse_diagram_file(path2);
  const auto bij = diagram_iso(a, b);
  if (!bij) {
    std::cout << (porcelain ? "none\n" : "not isomorphic\n");
    return 1;
  }
  for (const auto& [from, to] : bij->name_pairs(a, b)) {
    if (porcelain) {
      std::cout << "map\t" << from << '\t' << to << '\n';
    } else {
      std::cout << from << " -> " << to << '\n';
    }
  }
  return 0;
}

int cmd_attach(const std::vector<std::string>& paths) {
  std::vector<Diagram> ds;
  ds.reserve(paths.size());
  for (const std::string& p : paths) ds.push_back(parse_diagram_file(p));
  const Diagram res = attach(ds);
  std::cout << print_diagram(res);
  return 0;
}

int cmd_compose(const std::string& path1, const std::string& path2) {
  const Diagram d1 = parse_diagram_file(path1);
  const Diagram d2 = parse_diagram_file(path2);
  const Diagram res = compose_vertical(d1, d2);
  std::cout << print_diagram(res);
  return 0;
}

int cmd_check_coherence(std::size_t max_alpha, bool porcelain) {
  Signature sig;
  sig.add_object("X");
  sig.add_object("Y");
  const CoherenceReport rep = check_coherence(sig, max_alpha);
  if (porcelain) {
    std::cout << "cases\t" << rep.cases << '\n';
    for (const std::string& c : rep.counterexamples) std::cout << "counterexample\t" << c << '\n';
    if (rep.ok()) std::cout << "ok\n";
  } else {
    std::cout << "cases " << rep.cases << '\n';
    for (const std::string& c : rep.counterexamples) std::cout << "counterexample: " << c << '\n';
    if (rep.ok()) std::cout << "coherent\n";
  }
  return rep.ok() ? 0 : 1;
}

int cmd_check_interchange(const std::string& sig_path, const std::string& model_path,
                          std::size_t trials, std::uint64_t seed, bool porcelain) {
  MatrixModel model;
  if (sig_path.empty() && model_path.empty()) {
    model = default_interchange_model();
  } else if (sig_path.empty() || model_path.empty()) {
    throw usage_error("check-interchange needs both --sig and --model, or neither");
  } else {
    model = parse_model_file(model_path, parse_signature_file(sig_path));
  }
  const InterchangeReport rep = check_interchange(model, trials, seed);
  if (porcelain) {
    std::cout << "trials\t" << rep.trials << '\n';
    for (const std::string& f : rep.failures) std::cout << "failure\t" << f << '\n';
    if (rep.ok()) std::cout << "ok\n";
  } else {
    std::cout << "trials " << rep.trials << '\n';
    for (const std::string& f : rep.failures) std::cout << "failure: " << f << '\n';
    if (rep.ok()) std::cout << "interchange holds\n";
  }
  return rep.ok() ? 0 : 1;
}

int cmd_render(const std::string& path) {
  const Diagram d = parse_diagram_file(path);
  std::cout << render_dot(d);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monoidal diagram toolkit: validation, layering, readout and exact evaluation"};
  app.require_subcommand(1);

  int rc = 0;

  // validate
  std::string v_path;
  bool v_raw = false;
  bool v_porcelain = false;
  auto* validate = app.add_subcommand("validate", "check the diagram axioms");
  validate->add_option("diagram", v_path, "diagram file")->required();
  validate->add_flag("--raw", v_raw, "skip the order closure, check the order as written");
  validate->add_flag("--porcelain", v_porcelain, "tab-separated machine output");
  validate->callback([&] { rc = cmd_validate(v_path, v_raw, v_porcelain); });

  // segment
  std::string s_path;
  bool s_porcelain = false;
  auto* segment = app.add_subcommand("segment", "print the layer decomposition");
  segment->add_option("diagram", s_path, "diagram file")->required();
  segment->add_flag("--porcelain", s_porcelain, "tab-separated machine output");
  segment->callback([&] { rc = cmd_segment(s_path, s_porcelain); });

  // resolve
  std::string r_path;
  bool r_print = false;
  bool r_porcelain = false;
  auto* resolve_cmd = app.add_subcommand("resolve", "incise identity nodes until no edge skips a layer");
  resolve_cmd->add_option("diagram", r_path, "diagram file")->required();
  resolve_cmd->add_flag("--print", r_print, "also print the resolved diagram");
  resolve_cmd->add_flag("--porcelain", r_porcelain, "tab-separated machine output");
  resolve_cmd->callback([&] { rc = cmd_resolve(r_path, r_print, r_porcelain); });

  // readout
  std::string ro_path;
  bool ro_porcelain = false;
  auto* readout_cmd = app.add_subcommand("readout", "print the layered term of the diagram");
  readout_cmd->add_option("diagram", ro_path, "diagram file")->required();
  readout_cmd->add_flag("--porcelain", ro_porcelain, "tab-separated machine output");
  readout_cmd->callback([&] { rc = cmd_readout(ro_path, ro_porcelain); });

  // eval
  std::string e_path;
  std::string e_model;
  bool e_porcelain = false;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate the readout in a rational matrix model");
  eval_cmd->add_option("diagram", e_path, "diagram file")->required();
  eval_cmd->add_option("--model", e_model, "model file")->required();
  eval_cmd->add_flag("--porcelain", e_porcelain, "tab-separated machine output");
  eval_cmd->callback([&] { rc = cmd_eval(e_path, e_model, e_porcelain); });

  // iso
  std::string i_path1;
  std::string i_path2;
  bool i_porcelain = false;
  auto* iso_cmd = app.add_subcommand("iso", "search for a label- and order-preserving isomorphism");
  iso_cmd->add_option("first", i_path1, "diagram file")->required();
  iso_cmd->add_option("second", i_path2, "diagram file")->required();
  iso_cmd->add_flag("--porcelain", i_porcelain, "tab-separated machine output");
  iso_cmd->callback([&] { rc = cmd_iso(i_path1, i_path2, i_porcelain); });

  // attach
  std::vector<std::string> a_paths;
  auto* attach_cmd = app.add_subcommand("attach", "tensor diagrams side by side; prints the result");
  attach_cmd->add_option("diagrams", a_paths, "diagram files, left to right")
      ->required()
      ->expected(-1);
  attach_cmd->callback([&] { rc = cmd_attach(a_paths); });

  // compose
  std::string c_path1;
  std::string c_path2;
  auto* compose_cmd =
      app.add_subcommand("compose", "stack two diagrams vertically; prints the result");
  compose_cmd->add_option("first", c_path1, "diagram applied first")->required();
  compose_cmd->add_option("second", c_path2, "diagram applied second")->required();
  compose_cmd->callback([&] { rc = cmd_compose(c_path1, c_path2); });

  // check-coherence
  std::size_t cc_max_alpha = 6;
  bool cc_porcelain = false;
  auto* coh_cmd = app.add_subcommand(
      "check-coherence", "sweep grouped against direct tensors over a built-in two-object signature");
  coh_cmd->add_option("--max-alpha", cc_max_alpha, "bound on arity and part count (default 6)");
  coh_cmd->add_flag("--porcelain", cc_porcelain, "tab-separated machine output");
  coh_cmd->callback([&] { rc = cmd_check_coherence(cc_max_alpha, cc_porcelain); });

  // check-interchange
  std::string ci_sig;
  std::string ci_model;
  std::size_t ci_trials = 200;
  std::uint64_t ci_seed = 1;
  bool ci_porcelain = false;
  auto* int_cmd = app.add_subcommand(
      "check-interchange", "random exact test of compose-then-tensor against tensor-then-compose");
  int_cmd->add_option("--sig", ci_sig, "signature file (default: built-in two-object model)");
  int_cmd->add_option("--model", ci_model, "model file (default: built-in two-object model)");
  int_cmd->add_option("--trials", ci_trials, "number of random quadruples (default 200)");
  int_cmd->add_option("--seed", ci_seed, "random seed (default 1)");
  int_cmd->add_flag("--porcelain", ci_porcelain, "tab-separated machine output");
  int_cmd->callback(
      [&] { rc = cmd_check_interchange(ci_sig, ci_model, ci_trials, ci_seed, ci_porcelain); });

  // render
  std::string d_path;
  auto* render_cmd = app.add_subcommand("render", "emit a DOT drawing of a valid diagram");
  render_cmd->add_option("diagram", d_path, "diagram file")->required();
  render_cmd->callback([&] { rc = cmd_render(d_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == Error::Kind::domain ? 1 : 2;
  }
  return rc;
}
