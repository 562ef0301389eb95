#include "mondiag/unbiased.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <utility>

#include "mondiag/error.hpp"

namespace mondiag {

namespace {

std::string partition_str(const Partition& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    if (i > 0) os << ',';
    os << p.parts[i];
  }
  os << ')';
  return os.str();
}

}  // namespace

std::vector<Partition> enumerate_partitions(std::size_t alpha, std::size_t gamma) {
  std::vector<Partition> out;
  std::vector<std::size_t> cur;
  cur.reserve(gamma);
  auto rec = [&](auto&& self, std::size_t slot, std::size_t remaining) -> void {
    if (slot == gamma) {
      if (remaining == 0) out.push_back(Partition{cur, alpha});
      return;
    }
    if (slot + 1 == gamma) {
      cur.push_back(remaining);
      out.push_back(Partition{cur, alpha});
      cur.pop_back();
      return;
    }
    for (std::size_t v = 0; v <= remaining; ++v) {
      cur.push_back(v);
      self(self, slot + 1, remaining - v);
      cur.pop_back();
    }
  };
  rec(rec, 0, alpha);
  return out;
}

Partition flatten(const DoublePartition& dp) {
  if (dp.inners.size() != dp.outer.parts.size()) {
    throw usage_error("flatten: expected one inner partition per outer part");
  }
  Partition flat;
  flat.total = dp.outer.total;
  std::size_t sum = 0;
  for (std::size_t i = 0; i < dp.inners.size(); ++i) {
    if (dp.inners[i].total != dp.outer.parts[i]) {
      throw usage_error("flatten: inner partition " + std::to_string(i) +
                        " does not total its outer part");
    }
    sum += dp.inners[i].total;
    flat.parts.insert(flat.parts.end(), dp.inners[i].parts.begin(), dp.inners[i].parts.end());
  }
  if (sum != dp.outer.total) {
    throw usage_error("flatten: outer parts do not sum to the outer total");
  }
  return flat;
}

ObjectWord derived_tensor(std::span<const ObjectWord> words) { return word_concat(words); }

LayeredTerm derived_tensor(const Signature& sig, std::span<const LayeredTerm> terms) {
  std::size_t height = 0;
  for (const LayeredTerm& t : terms) height = std::max(height, t.layers.size());
  if (height == 0) {
    ObjectWord boundary;
    for (const LayeredTerm& t : terms) {
      boundary = word_concat(boundary, t.dom);
    }
    return make_identity_term(std::move(boundary));
  }
  std::vector<std::vector<Factor>> layers(height);
  for (const LayeredTerm& t : terms) {
    for (std::size_t k = 0; k < height; ++k) {
      if (k < t.layers.size()) {
        layers[k].insert(layers[k].end(), t.layers[k].begin(), t.layers[k].end());
      } else {
        layers[k].push_back(Factor::id_on(t.cod));
      }
    }
  }
  return make_term(sig, std::move(layers));
}

TensorArg derived_tensor(const Signature& sig, std::span<const TensorArg> args) {
  bool any_word = false;
  bool any_term = false;
  for (const TensorArg& a : args) {
    (std::holds_alternative<ObjectWord>(a) ? any_word : any_term) = true;
  }
  if (any_word && any_term) {
    throw usage_error("derived tensor: arguments mix object words and layered terms");
  }
  if (any_term) {
    std::vector<LayeredTerm> terms;
    terms.reserve(args.size());
    for (const TensorArg& a : args) terms.push_back(std::get<LayeredTerm>(a));
    return derived_tensor(sig, terms);
  }
  std::vector<ObjectWord> words;
  words.reserve(args.size());
  for (const TensorArg& a : args) words.push_back(std::get<ObjectWord>(a));
  return derived_tensor(words);
}

CoherenceReport check_coherence(const Signature& sig, std::size_t max_alpha) {
  CoherenceReport rep;

  // Fixed word pool cycled through the tensor slots: single objects, the
  // two-object words in both orders, and the unit.
  std::vector<ObjectWord> pool;
  for (std::size_t i = 0; i < sig.object_count() && i < 2; ++i) {
    pool.push_back(ObjectWord{{static_cast<ObjId>(i)}});
  }
  if (sig.object_count() >= 2) {
    pool.push_back(ObjectWord{{static_cast<ObjId>(0), static_cast<ObjId>(1)}});
    pool.push_back(ObjectWord{{static_cast<ObjId>(1), static_cast<ObjId>(0)}});
  }
  pool.push_back(ObjectWord{});

  for (std::size_t beta = 0; beta <= max_alpha; ++beta) {
    std::vector<ObjectWord> words;
    words.reserve(beta);
    for (std::size_t i = 0; i < beta; ++i) words.push_back(pool[i % pool.size()]);
    const ObjectWord direct = derived_tensor(words);

    // Tensor of any contiguous slot range, cached: seg[off][len].
    std::vector<std::vector<ObjectWord>> seg(beta + 1);
    for (std::size_t off = 0; off <= beta; ++off) {
      seg[off].resize(beta - off + 1);
      for (std::size_t len = 1; off + len <= beta; ++len) {
        seg[off][len] = word_concat(seg[off][len - 1], words[off + len - 1]);
      }
    }

    for (std::size_t gamma = 0; gamma <= max_alpha; ++gamma) {
      for (const Partition& p : enumerate_partitions(beta, gamma)) {
        // One regrouping: tensor the blocks, then tensor the results.
        std::vector<ObjectWord> blocks;
        std::vector<std::size_t> offsets;
        blocks.reserve(gamma);
        offsets.reserve(gamma);
        {
          std::size_t off = 0;
          for (std::size_t part : p.parts) {
            offsets.push_back(off);
            blocks.push_back(seg[off][part]);
            off += part;
          }
        }
        const ObjectWord grouped = derived_tensor(blocks);
        ++rep.cases;
        if (!(grouped == direct)) {
          rep.counterexamples.push_back("beta=" + std::to_string(beta) +
                                        " gamma=" + std::to_string(gamma) +
                                        " parts=" + partition_str(p) +
                                        ": grouped tensor differs from the direct tensor");
        }

        // Every refinement of p: an inner partition for each part, inner
        // lengths capped at part+1 and at max_alpha.
        std::vector<std::vector<Partition>> choices(p.parts.size());
        for (std::size_t i = 0; i < p.parts.size(); ++i) {
          const std::size_t cap = std::min(p.parts[i] + 1, max_alpha);
          for (std::size_t delta = 0; delta <= cap; ++delta) {
            auto inner = enumerate_partitions(p.parts[i], delta);
            choices[i].insert(choices[i].end(), inner.begin(), inner.end());
          }
        }

        std::vector<std::size_t> pick(p.parts.size(), 0);
        bool exhausted = false;
        for (std::size_t i = 0; i < p.parts.size() && !exhausted; ++i) {
          if (choices[i].empty()) exhausted = true;  // cannot happen: delta=part+1 always has entries
        }
        while (!exhausted) {
          DoublePartition dp;
          dp.outer = p;
          dp.inners.reserve(pick.size());
          for (std::size_t i = 0; i < pick.size(); ++i) dp.inners.push_back(choices[i][pick[i]]);

          // Doubly grouped: tensor the sub-blocks, tensor each block's
          // results, then tensor the block words.
          std::vector<ObjectWord> outer_blocks;
          outer_blocks.reserve(dp.inners.size());
          for (std::size_t i = 0; i < dp.inners.size(); ++i) {
            std::vector<ObjectWord> sub;
            sub.reserve(dp.inners[i].parts.size());
            std::size_t off = offsets[i];
            for (std::size_t q : dp.inners[i].parts) {
              sub.push_back(seg[off][q]);
              off += q;
            }
            outer_blocks.push_back(derived_tensor(sub));
          }
          const ObjectWord doubly = derived_tensor(outer_blocks);
          ++rep.cases;
          if (!(doubly == direct)) {
            rep.counterexamples.push_back("beta=" + std::to_string(beta) +
                                          " gamma=" + std::to_string(gamma) +
                                          " parts=" + partition_str(p) +
                                          ": doubly grouped tensor differs from the direct tensor");
          }

          // Flattened: the induced single regrouping must agree too.
          const Partition flat = flatten(dp);
          std::vector<ObjectWord> flat_blocks;
          flat_blocks.reserve(flat.parts.size());
          {
            std::size_t off = 0;
            for (std::size_t q : flat.parts) {
              flat_blocks.push_back(seg[off][q]);
              off += q;
            }
          }
          const ObjectWord flattened = derived_tensor(flat_blocks);
          ++rep.cases;
          if (!(flattened == direct)) {
            rep.counterexamples.push_back("beta=" + std::to_string(beta) +
                                          " gamma=" + std::to_string(gamma) +
                                          " parts=" + partition_str(p) + " flat=" +
                                          partition_str(flat) +
                                          ": flattened tensor differs from the direct tensor");
          }

          // Next refinement combination (odometer order).
          std::size_t pos = pick.size();
          while (pos > 0) {
            --pos;
            if (++pick[pos] < choices[pos].size()) break;
            pick[pos] = 0;
            if (pos == 0) exhausted = true;
          }
          if (pick.empty()) exhausted = true;
        }
      }
    }
  }
  return rep;
}

MatrixModel default_interchange_model() {
  auto sig = std::make_shared<Signature>();
  const ObjId x = sig->add_object("X");
  const ObjId y = sig->add_object("Y");
  sig->add_gen("a", ObjectWord{{x}}, ObjectWord{{x}});
  sig->add_gen("b", ObjectWord{{x}}, ObjectWord{{y}});
  sig->add_gen("c", ObjectWord{{y}}, ObjectWord{{x}});
  sig->add_gen("d", ObjectWord{{y}}, ObjectWord{{y}});
  sig->add_gen("m", ObjectWord{{x, x}}, ObjectWord{{y}});
  sig->add_gen("w", ObjectWord{{y}}, ObjectWord{{x, x}});

  MatrixModel model;
  model.sig = sig;
  model.dims = {2, 3};

  auto fill = [](std::size_t rows, std::size_t cols,
                 std::initializer_list<Rational> entries) {
    RationalMatrix m(rows, cols);
    std::size_t i = 0;
    for (const Rational& v : entries) {
      m.at(i / cols, i % cols) = v;
      ++i;
    }
    return m;
  };
  const Rational half(1, 2), third(1, 3);
  model.mats.push_back(fill(2, 2, {1, half, 0, -1}));
  model.mats.push_back(fill(3, 2, {1, 0, 0, third, 2, 1}));
  model.mats.push_back(fill(2, 3, {1, 0, half, 0, 1, 0}));
  model.mats.push_back(fill(3, 3, {1, 1, 0, 0, half, 0, 1, 0, 2}));
  model.mats.push_back(fill(3, 4, {1, 0, 0, half, 0, 1, 0, 0, 0, 0, 1, -1}));
  model.mats.push_back(fill(4, 3, {1, 0, 0, 0, half, 0, 0, 0, 1, third, 0, 1}));
  return model;
}

InterchangeReport check_interchange(const MatrixModel& model, std::size_t trials,
                                    std::uint64_t seed) {
  const Signature& sig = *model.sig;
  InterchangeReport rep;
  rep.trials = trials;

  // Candidate factors: every generator plus small identities.
  std::vector<Factor> candidates;
  for (GenId g = 0; g < sig.gen_count(); ++g) candidates.push_back(Factor::gen(g));
  candidates.push_back(Factor::id_on(ObjectWord{}));
  for (ObjId o = 0; o < sig.object_count(); ++o) {
    candidates.push_back(Factor::id_on(ObjectWord{{o}}));
  }

  // Pool of composable pairs (f then g).
  std::vector<std::pair<Factor, Factor>> pairs;
  for (const Factor& f : candidates) {
    const ObjectWord f_cod = factor_dom_cod(sig, f).second;
    for (const Factor& g : candidates) {
      if (factor_dom_cod(sig, g).first == f_cod) pairs.emplace_back(f, g);
    }
  }
  if (pairs.empty()) {
    throw usage_error("interchange check: the signature admits no composable pairs");
  }

  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto& [f, g] = pairs[rng() % pairs.size()];
    const auto& [h, j] = pairs[rng() % pairs.size()];

    const RationalMatrix lhs =
        kron(eval_factor(model, g) * eval_factor(model, f),
             eval_factor(model, j) * eval_factor(model, h));
    const LayeredTerm term = make_term(sig, {{f, h}, {g, j}});
    const RationalMatrix rhs = eval_term(model, term);

    if (!(lhs == rhs)) {
      rep.failures.push_back(
          "trial " + std::to_string(t) + ": composing then tensoring differs from " +
          "tensoring then composing for f=" + factor_str(sig, f) + ", g=" + factor_str(sig, g) +
          ", h=" + factor_str(sig, h) + ", j=" + factor_str(sig, j));
    }
  }
  return rep;
}

}  // namespace mondiag
