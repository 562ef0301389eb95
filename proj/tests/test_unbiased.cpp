#include <cstddef>
#include <vector>

#include "doctest.h"
#include "mondiag/error.hpp"
#include "mondiag/signature.hpp"
#include "mondiag/term.hpp"
#include "mondiag/unbiased.hpp"

using namespace mondiag;

namespace {

// Binomial coefficient, exact in size_t for the small arguments used here.
std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Partition make_partition(std::vector<std::size_t> parts) {
  Partition p;
  p.total = 0;
  for (std::size_t x : parts) p.total += x;
  p.parts = std::move(parts);
  return p;
}

std::shared_ptr<const Signature> small_sig() {
  static const auto sig = std::make_shared<const Signature>(parse_signature(
      "object A\n"
      "object B\n"
      "gen f : A -> A A\n"
      "gen u : A -> A\n"));
  return sig;
}

}  // namespace

TEST_CASE("compositions are enumerated lexicographically") {
  const auto p32 = enumerate_partitions(3, 2);
  REQUIRE(p32.size() == 4);
  CHECK(p32[0].parts == std::vector<std::size_t>{0, 3});
  CHECK(p32[1].parts == std::vector<std::size_t>{1, 2});
  CHECK(p32[2].parts == std::vector<std::size_t>{2, 1});
  CHECK(p32[3].parts == std::vector<std::size_t>{3, 0});
  for (const Partition& p : p32) CHECK(p.total == 3);

  // Length zero: only the empty sum, and only when the total is zero.
  const auto p00 = enumerate_partitions(0, 0);
  REQUIRE(p00.size() == 1);
  CHECK(p00[0].parts.empty());
  CHECK(p00[0].total == 0);
  CHECK(enumerate_partitions(5, 0).empty());

  const auto p51 = enumerate_partitions(5, 1);
  REQUIRE(p51.size() == 1);
  CHECK(p51[0].parts == std::vector<std::size_t>{5});

  // Zero into gamma parts: exactly one all-zero composition.
  CHECK(enumerate_partitions(0, 3).size() == 1);
}

TEST_CASE("composition counts follow the stars-and-bars formula") {
  for (std::size_t alpha = 0; alpha <= 8; ++alpha)
    for (std::size_t gamma = 0; gamma <= 8; ++gamma) {
      const std::size_t expect =
          gamma == 0 ? (alpha == 0 ? 1 : 0) : choose(alpha + gamma - 1, gamma - 1);
      CHECK(enumerate_partitions(alpha, gamma).size() == expect);
    }
}

TEST_CASE("flatten concatenates inner refinements") {
  DoublePartition dp;
  dp.outer = make_partition({2, 0, 3});
  dp.inners = {make_partition({1, 1}), make_partition({}), make_partition({0, 3})};
  const Partition flat = flatten(dp);
  CHECK(flat.parts == std::vector<std::size_t>{1, 1, 0, 3});
  CHECK(flat.total == 5);

  // Wrong inner count.
  DoublePartition bad1;
  bad1.outer = make_partition({2, 1});
  bad1.inners = {make_partition({2})};
  CHECK_THROWS_AS(flatten(bad1), Error);

  // Inner total disagrees with its outer part.
  DoublePartition bad2;
  bad2.outer = make_partition({2, 1});
  bad2.inners = {make_partition({1, 0}), make_partition({1})};
  CHECK_THROWS_AS(flatten(bad2), Error);
}

TEST_CASE("derived tensor of words is iterated concatenation") {
  const auto sig = small_sig();
  const ObjId A = *sig->find_object("A"), B = *sig->find_object("B");
  const std::vector<ObjectWord> words{ObjectWord{{A}}, ObjectWord{}, ObjectWord{{B, A}}};
  CHECK(derived_tensor(words) == ObjectWord{{A, B, A}});
  CHECK(derived_tensor(std::span<const ObjectWord>{}) == ObjectWord{});
}

TEST_CASE("derived tensor of terms pads heights with identity layers on top") {
  const auto sig = small_sig();
  const ObjId A = *sig->find_object("A");
  const Factor f = Factor::gen(*sig->find_gen("f")), u = Factor::gen(*sig->find_gen("u"));

  // One two-layer term beside a one-layer term.
  const LayeredTerm tall = make_term(*sig, {{f}, {u, u}});
  const LayeredTerm shortt = make_term(*sig, {{u}});
  const std::vector<LayeredTerm> ts{tall, shortt};
  const LayeredTerm both = derived_tensor(*sig, ts);
  REQUIRE(both.layers.size() == 2);
  CHECK(both.dom == ObjectWord{{A, A}});
  CHECK(both.cod == ObjectWord{{A, A, A}});
  CHECK(both.layers[0] == std::vector<Factor>{f, u});
  // The short term contributes its padding identity in the second layer.
  CHECK(both.layers[1] == std::vector<Factor>{u, u, Factor::id_on(ObjectWord{{A}})});

  // Zero-layer terms tensor to a zero-layer term on the concatenated word.
  const std::vector<LayeredTerm> ids{make_identity_term(ObjectWord{{A}}),
                                     make_identity_term(ObjectWord{{A, A}})};
  const LayeredTerm id3 = derived_tensor(*sig, ids);
  CHECK(id3 == make_identity_term(ObjectWord{{A, A, A}}));

  const std::vector<LayeredTerm> none{};
  CHECK(derived_tensor(*sig, none) == make_identity_term(ObjectWord{}));
}

TEST_CASE("the mixed-kind tensor entry point dispatches and rejects") {
  const auto sig = small_sig();
  const ObjId A = *sig->find_object("A");
  const Factor u = Factor::gen(*sig->find_gen("u"));

  const std::vector<TensorArg> words{ObjectWord{{A}}, ObjectWord{{A}}};
  const TensorArg w = derived_tensor(*sig, words);
  REQUIRE(std::holds_alternative<ObjectWord>(w));
  CHECK(std::get<ObjectWord>(w) == ObjectWord{{A, A}});

  const std::vector<TensorArg> terms{make_term(*sig, {{u}}), make_term(*sig, {{u}})};
  const TensorArg t = derived_tensor(*sig, terms);
  REQUIRE(std::holds_alternative<LayeredTerm>(t));
  CHECK(std::get<LayeredTerm>(t).layers.size() == 1);

  const std::vector<TensorArg> mixed{ObjectWord{{A}}, make_term(*sig, {{u}})};
  CHECK_THROWS_AS(derived_tensor(*sig, mixed), Error);

  const std::vector<TensorArg> empty{};
  const TensorArg unit = derived_tensor(*sig, empty);
  REQUIRE(std::holds_alternative<ObjectWord>(unit));
  CHECK(std::get<ObjectWord>(unit).empty());
}

TEST_CASE("grouping laws hold on a small exhaustive sweep") {
  const CoherenceReport rep = check_coherence(*small_sig(), 4);
  CHECK(rep.ok());
  CHECK(rep.cases > 1000);
  for (const std::string& c : rep.counterexamples) MESSAGE(c);
}

TEST_CASE("random interchange trials hold exactly and reproduce by seed") {
  const MatrixModel model = default_interchange_model();
  const InterchangeReport a = check_interchange(model, 64, 12345);
  CHECK(a.trials == 64);
  CHECK(a.ok());
  for (const std::string& f : a.failures) MESSAGE(f);

  // Same seed, same outcome; the check is deterministic.
  const InterchangeReport b = check_interchange(model, 64, 12345);
  CHECK(b.trials == a.trials);
  CHECK(b.failures == a.failures);

  const InterchangeReport c = check_interchange(model, 16, 999);
  CHECK(c.trials == 16);
  CHECK(c.ok());
}

TEST_CASE("the built-in interchange model is complete and well-shaped") {
  const MatrixModel model = default_interchange_model();
  REQUIRE(model.sig != nullptr);
  CHECK(model.sig->object_count() == 2);
  CHECK(model.sig->gen_count() == 6);
  for (ObjId o = 0; o < model.sig->object_count(); ++o) CHECK(model.dim_of(o) >= 2);
  for (GenId g = 0; g < model.sig->gen_count(); ++g) {
    const auto [dw, cw] = factor_dom_cod(*model.sig, Factor::gen(g));
    CHECK(model.mat_of(g).rows() == eval_word(model, cw));
    CHECK(model.mat_of(g).cols() == eval_word(model, dw));
  }
}
