#include <memory>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "doctest.h"
#include "mondiag/diagram_io.hpp"
#include "mondiag/error.hpp"
#include "mondiag/matrix_model.hpp"
#include "mondiag/readout.hpp"
#include "mondiag/term.hpp"

using namespace mondiag;

namespace {

std::string fixture(const std::string& name) { return std::string(MONDIAG_DATA_DIR) + "/" + name; }

std::shared_ptr<const Signature> shared_sig() {
  static const auto sig = parse_signature_file(fixture("test.sig"));
  return sig;
}

const MatrixModel& shared_model() {
  static const MatrixModel m = parse_model_file(fixture("test.model"), shared_sig());
  return m;
}

Factor gen_named(const std::string& name) { return Factor::gen(*shared_sig()->find_gen(name)); }

// A straight chain of the named generators, one node per entry.
Diagram chain_of(const std::vector<std::string>& gens) {
  DiagramData data;
  data.sig = shared_sig();
  for (std::size_t i = 0; i < gens.size(); ++i)
    data.nodes.push_back({"n" + std::to_string(i), gen_named(gens[i])});
  for (std::size_t i = 0; i + 1 < gens.size(); ++i)
    data.edges.push_back({"n" + std::to_string(i), "n" + std::to_string(i + 1)});
  return cc_closure(Diagram{std::move(data)});
}

}  // namespace

TEST_CASE("the reading lists layer factors in horizontal order") {
  const Diagram d = parse_diagram_file(fixture("fgh.dgm"));
  const auto layers = reading(d);
  REQUIRE(layers.size() == 2);
  CHECK(layers[0] == std::vector<Factor>{gen_named("f")});
  CHECK(layers[1] == std::vector<Factor>{gen_named("g"), gen_named("h")});

  // Unresolved diagrams are refused with a pointer to resolve.
  const Diagram skip = parse_diagram_file(fixture("skip.dgm"));
  try {
    reading(skip);
    FAIL("expected a usage error");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::usage);
    CHECK(std::string(e.what()).find("resolve") != std::string::npos);
  }
}

TEST_CASE("readout of the splitter example is the two-layer term") {
  const Diagram d = parse_diagram_file(fixture("fgh.dgm"));
  const LayeredTerm t = readout(d);
  CHECK(t == make_term(*shared_sig(), {{gen_named("f")}, {gen_named("g"), gen_named("h")}}));
  CHECK(readout(d) == t);  // deterministic

  // Renaming nodes changes nothing.
  DiagramData data;
  data.sig = shared_sig();
  data.nodes.push_back({"zz", gen_named("f")});
  data.nodes.push_back({"aa", gen_named("g")});
  data.nodes.push_back({"qq", gen_named("h")});
  data.edges.push_back({"zz", "aa"});
  data.edges.push_back({"zz", "qq"});
  data.order.push_back({0, 1});
  const Diagram renamed = cc_closure(Diagram{std::move(data)});
  CHECK(readout(renamed) == t);
}

TEST_CASE("readout of identity chains and of the empty diagram") {
  const Diagram ident = parse_diagram_file(fixture("ident-chain.dgm"));
  const Factor id_a = Factor::id_on(ObjectWord{{*shared_sig()->find_object("A")}});
  CHECK(readout(ident) == make_term(*shared_sig(), {{id_a}, {id_a}}));

  const Diagram empty{DiagramData{shared_sig(), {}, {}, {}}};
  CHECK(readout(empty) == make_identity_term(ObjectWord{}));
}

TEST_CASE("boundary mismatches are located and reported") {
  // A splitter feeding a single consumer: A A meets A between layers 1 and 2.
  const Diagram d = chain_of({"f", "g"});
  REQUIRE(validate_diagram(d).ok());
  const WordReport rep = check_validity(d);
  REQUIRE(rep.mismatches.size() == 1);
  CHECK(rep.mismatches[0].boundary == 1);
  CHECK(rep.mismatches[0].below_cod == ObjectWord{{0, 0}});
  CHECK(rep.mismatches[0].above_dom == ObjectWord{{0}});

  try {
    readout(d);
    FAIL("expected a boundary error");
  } catch (const BoundaryError& e) {
    CHECK(e.kind() == Error::Kind::domain);
    REQUIRE(e.report().mismatches.size() == 1);
    CHECK(e.report().mismatches[0].boundary == 1);
  }

  // The resolved three-layer example merges two wires into one consumer.
  const Diagram skip = parse_diagram_file(fixture("skip.dgm"));
  const WordReport skiprep = check_validity(skip);
  REQUIRE(skiprep.mismatches.size() == 1);
  CHECK(skiprep.mismatches[0].boundary == 2);

  // A clean diagram gets a clean report.
  CHECK(check_validity(parse_diagram_file(fixture("fgh.dgm"))).ok());
}

TEST_CASE("attach tensors components left to right") {
  const Diagram fgh = parse_diagram_file(fixture("fgh.dgm"));
  const Diagram uv = parse_diagram_file(fixture("u-then-v.dgm"));
  const std::vector<Diagram> ds{fgh, uv};
  const Diagram side = attach(ds);
  REQUIRE(validate_diagram(side).ok());

  const LayeredTerm t = readout(side);
  CHECK(t == make_term(*shared_sig(), {{gen_named("f"), gen_named("u")},
                                       {gen_named("g"), gen_named("h"), gen_named("v")}}));

  // Kronecker of the component evaluations, in order.
  const auto& m = shared_model();
  CHECK(eval_term(m, t) == kron(eval_term(m, readout(fgh)), eval_term(m, readout(uv))));
  CHECK(readout_functor_check(ds, m));

  // Attaching in the other order gives the mirrored term.
  const std::vector<Diagram> sw{uv, fgh};
  CHECK(readout(attach(sw)) ==
        make_term(*shared_sig(), {{gen_named("u"), gen_named("f")},
                                  {gen_named("v"), gen_named("g"), gen_named("h")}}));
}

TEST_CASE("attach pads shorter components with identity layers") {
  const Diagram fgh = parse_diagram_file(fixture("fgh.dgm"));  // 2 layers
  const Diagram uuu = chain_of({"u", "u", "u"});               // 3 layers
  const std::vector<Diagram> ds{fgh, uuu};
  const Diagram side = attach(ds);

  const ObjId B = *shared_sig()->find_object("B");
  const LayeredTerm t = readout(side);
  REQUIRE(t.layers.size() == 3);
  CHECK(t.layers[0] == std::vector<Factor>{gen_named("f"), gen_named("u")});
  CHECK(t.layers[1] == std::vector<Factor>{gen_named("g"), gen_named("h"), gen_named("u")});
  CHECK(t.layers[2] == std::vector<Factor>{Factor::id_on(ObjectWord{{B, B}}), gen_named("u")});

  const auto& m = shared_model();
  CHECK(eval_term(m, t) == kron(eval_term(m, readout(fgh)), eval_term(m, readout(uuu))));
  CHECK(readout_functor_check(ds, m));

  // Nodeless components drop out.
  const Diagram empty{DiagramData{shared_sig(), {}, {}, {}}};
  const std::vector<Diagram> with_empty{fgh, empty};
  CHECK(readout(attach(with_empty)) == readout(fgh));
  // With no arguments there is no signature to build over.
  const std::vector<Diagram> none{};
  CHECK_THROWS_AS(attach(none), Error);
}

TEST_CASE("vertical composition stacks readouts and keeps provenance") {
  const Diagram fgh = parse_diagram_file(fixture("fgh.dgm"));
  const Diagram ss = chain_of({"s", "s"});
  const Diagram comp = compose_vertical(fgh, ss);
  CHECK(validate_diagram(comp).ok());

  const LayeredTerm t = readout(comp);
  CHECK(t == make_term(*shared_sig(), {{gen_named("f")},
                                       {gen_named("g"), gen_named("h")},
                                       {gen_named("s")},
                                       {gen_named("s")}}));

  // Exact sequential semantics.
  const auto& m = shared_model();
  CHECK(eval_term(m, t) == eval_term(m, readout(ss)) * eval_term(m, readout(fgh)));

  // Nodes remember which side they came from.
  CHECK(comp.node_index("nf%1").has_value());
  CHECK(comp.node_index("n0%2").has_value());

  // Composing with identity layers leaves the evaluation alone.
  const Diagram uv = parse_diagram_file(fixture("u-then-v.dgm"));
  const Diagram ident = parse_diagram_file(fixture("ident-chain.dgm"));
  const Diagram uv_id = compose_vertical(uv, ident);
  CHECK(eval_term(m, readout(uv_id)) == eval_term(m, readout(uv)));

  // Mismatched interface words are refused.
  try {
    compose_vertical(uv, ss);
    FAIL("expected a composability error");
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::domain);
  }
}

TEST_CASE("unit-boundary wires compose and tensor correctly") {
  // g then k consumes A and produces nothing; e then u produces A from nothing.
  const Diagram sink = chain_of({"g", "k"});
  const Diagram source = chain_of({"e", "u"});
  const auto& m = shared_model();

  const LayeredTerm tsink = readout(sink);
  CHECK(tsink.cod == ObjectWord{});
  const LayeredTerm tsource = readout(source);
  CHECK(tsource.dom == ObjectWord{});
  const RationalMatrix msink = eval_term(m, tsink);    // 1x2
  const RationalMatrix msource = eval_term(m, tsource);  // 2x1
  CHECK(msink.rows() == 1);
  CHECK(msource.cols() == 1);

  // Sequential composition across the unit interface: a rank-one square.
  const Diagram through = compose_vertical(sink, source);
  CHECK(validate_diagram(through).ok());
  const RationalMatrix mthrough = eval_term(m, readout(through));
  CHECK(mthrough == msource * msink);

  // Side-by-side, the unit contributes nothing to the boundary words.
  const std::vector<Diagram> ds{sink, source};
  const Diagram side = attach(ds);
  const LayeredTerm tside = readout(side);
  CHECK(tside.dom == ObjectWord{{*shared_sig()->find_object("A")}});
  CHECK(tside.cod == ObjectWord{{*shared_sig()->find_object("A")}});
  CHECK(eval_term(m, tside) == kron(msink, msource));
  CHECK(readout_functor_check(ds, m));
}

TEST_CASE("functor law holds across the readable corpus sample") {
  // Attach every readable corpus diagram to the splitter example and check
  // monoidality exactly; iso-representatives keep it quick.
  const auto& model = corpus::corpus_model();
  std::vector<Diagram> readable;
  for (const Diagram& d : corpus::valid_corpus())
    if (corpus::try_readout(d)) readable.push_back(d);
  const std::vector<std::size_t> reps = corpus::iso_reps(readable);
  CHECK(reps.size() == 70);
  for (std::size_t i = 0; i + 1 < reps.size(); i += 7) {
    const std::vector<Diagram> pair{readable[reps[i]], readable[reps[i + 1]]};
    CHECK(readout_functor_check(pair, model));
  }
}
