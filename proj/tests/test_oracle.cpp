#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "altlab/errors.hpp"
#include "altlab/oracle.hpp"
#include "test_util.hpp"

using namespace altlab;
using namespace altlab::test;

namespace {

GameConfig cfg(int level, int rounds) { return GameConfig{level, rounds, 1'000'000}; }

std::string rep(const std::string& w, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += w;
  return out;
}

}  // namespace

TEST_CASE("ef_leq base cases") {
  for (const std::string w : {"", "a", "ab", "babb"})
    for (int i : {1, 2, 3})
      for (int k : {0, 1, 2}) CHECK(ef_leq(w, w, cfg(i, k)));

  CHECK(ef_leq("bb", "bab", cfg(1, 1)));
  CHECK_FALSE(ef_leq("bb", "bab", cfg(2, 2)));   // Spoiler switches and plays the a
  CHECK_FALSE(ef_leq("bb", "bab", cfg(2, 1)));
  CHECK(ef_leq("", "bab", cfg(1, 3)));
  CHECK_FALSE(ef_leq("", "bab", cfg(2, 1)));      // the empty word satisfies "no position"
  CHECK_FALSE(ef_leq("ab", "ba", cfg(1, 2)));
}

TEST_CASE("ef_leq budget") {
  CHECK_THROWS_AS(ef_leq(std::string(2000, 'a'), std::string(2000, 'a'), cfg(1, 1)),
                  ResourceCapError);
}

TEST_CASE("sigma1_leq documented examples") {
  for (int k : {1, 2, 3, 5}) CHECK(sigma1_leq(rep("b", k), rep("ab", k), k));
  CHECK_FALSE(sigma1_leq("ab", "ba", 2));
  CHECK(sigma1_leq("ab", "ba", 1));
  for (const std::string w2 : {"", "a", "bba"})
    for (int k : {0, 1, 4}) CHECK(sigma1_leq("", w2, k));
}

TEST_CASE("sigma1_leq equals the level-1 game on all short pairs") {
  auto words = all_words(make_alphabet("ab"), 4);
  for (int k : {0, 1, 2, 3})
    for (const auto& w : words)
      for (const auto& w2 : words) {
        CAPTURE(w, w2, k);
        CHECK(sigma1_leq(w, w2, k) == ef_leq(w, w2, cfg(1, k)));
      }
}

TEST_CASE("the game preorder is reflexive, transitive, and monotone in level and rank") {
  auto words = all_words(make_alphabet("ab"), 3);
  for (int i : {1, 2})
    for (int k : {1, 2}) {
      std::vector<std::vector<char>> leq(words.size(), std::vector<char>(words.size()));
      std::vector<std::vector<char>> leq_k1(words.size(), std::vector<char>(words.size()));
      std::vector<std::vector<char>> leq_i1(words.size(), std::vector<char>(words.size()));
      for (std::size_t x = 0; x < words.size(); ++x)
        for (std::size_t y = 0; y < words.size(); ++y) {
          leq[x][y] = ef_leq(words[x], words[y], cfg(i, k));
          leq_k1[x][y] = ef_leq(words[x], words[y], cfg(i, k + 1));
          leq_i1[x][y] = ef_leq(words[x], words[y], cfg(i + 1, k));
        }
      for (std::size_t x = 0; x < words.size(); ++x) {
        CHECK(leq[x][x]);
        for (std::size_t y = 0; y < words.size(); ++y) {
          if (leq_k1[x][y]) CHECK(leq[x][y]);  // higher rank refines
          if (leq_i1[x][y]) CHECK(leq[x][y]);  // higher level refines
          if (!leq[x][y]) continue;
          for (std::size_t z = 0; z < words.size(); ++z)
            if (leq[y][z]) CHECK(leq[x][z]);
        }
      }
    }
}

TEST_CASE("the game preorder is a precongruence") {
  auto words = all_words(make_alphabet("ab"), 3);
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int i : {1, 2})
    for (int k : {1, 2}) {
      int found = 0;
      for (int trial = 0; trial < 4000 && found < 60; ++trial) {
        const auto &w1 = words[pick(rng)], &w2 = words[pick(rng)];
        const auto &v1 = words[pick(rng)], &v2 = words[pick(rng)];
        if (!ef_leq(w1, w2, cfg(i, k)) || !ef_leq(v1, v2, cfg(i, k))) continue;
        ++found;
        CAPTURE(w1, w2, v1, v2, i, k);
        CHECK(ef_leq(w1 + v1, w2 + v2, cfg(i, k)));
      }
      CHECK(found >= 40);
    }
}

TEST_CASE("large powers of a word are equivalent at every level") {
  // Exponents at least 2^k - 1 are indistinguishable at rank k.
  for (const std::string v : {"a", "ab", "ba"})
    for (int k : {1, 2})
      for (int i : {1, 2, 3}) {
        int lo = (1 << k) - 1;
        for (int k1 : {lo, lo + 1, lo + 3})
          for (int k2 : {lo, lo + 2}) {
            CAPTURE(v, i, k, k1, k2);
            CHECK(ef_leq(rep(v, k1), rep(v, k2), cfg(i, k)));
            CHECK(ef_leq(rep(v, k2), rep(v, k1), cfg(i, k)));
          }
      }
}

TEST_CASE("pumping a related word into a power raises one level") {
  // From u <= v at level i, powers of v absorb u one level up.
  auto words = all_words(make_alphabet("ab"), 2);
  for (int k : {1, 2}) {
    const int p = 1 << k;
    for (const auto& v : words) {
      if (v.empty()) continue;
      for (const auto& u : words) {
        if (!ef_leq(u, v, cfg(1, k))) continue;
        CAPTURE(u, v, k);
        CHECK(ef_leq(rep(v, 2 * p), rep(v, p) + u + rep(v, p), cfg(2, k)));
      }
    }
  }
}

TEST_CASE("brute chains at length 1 are the bounded images") {
  RecognizedLanguage l = contains_a();
  ContentMorphism beta(l.morphism);
  BruteChainsResult res = brute_chains(beta, 2, 1, 1, 3);
  Element one = element_named(l, "_");
  Element z = element_named(l, "a");
  CHECK(res.chains == std::vector<Chain>{{one}, {z}});
  CHECK(res.note.find("under-approximates") != std::string::npos);
}

TEST_CASE("brute chains on contains-a at level 2") {
  RecognizedLanguage l = contains_a();
  ContentMorphism beta(l.morphism);
  Element one = element_named(l, "_");
  Element z = element_named(l, "a");
  BruteChainsResult res = brute_chains(beta, 2, 2, 2, 6);
  auto has = [&](const Chain& c) {
    return std::binary_search(res.chains.begin(), res.chains.end(), c);
  };
  CHECK(has({one, one}));
  CHECK(has({z, z}));
  CHECK_FALSE(has({z, one}));  // "some position carries an a" persists
}

TEST_CASE("brute chains on contains-a at level 1 include the strict pair") {
  RecognizedLanguage l = contains_a();
  ContentMorphism beta(l.morphism);
  Element one = element_named(l, "_");
  Element z = element_named(l, "a");
  BruteChainsResult res = brute_chains(beta, 1, 1, 2, 4);
  CHECK(std::binary_search(res.chains.begin(), res.chains.end(), Chain{one, z}));
}

TEST_CASE("witness bundles from initial and product derivations") {
  RecognizedLanguage l = contains_a();
  ContentMorphism beta(l.morphism);
  Element one = element_named(l, "_");

  auto initial = std::make_shared<Derivation>();
  initial->kind = Derivation::Kind::Initial;
  initial->monoid = l.morphism.target;
  initial->element = one;
  initial->content = alpha_set_from_string("b", l.morphism.alphabet);
  initial->witness = "b";
  initial->derived = make_chain_set({Chain{one, one}});

  WitnessBundle bundle = witness_from_derivation(*initial, {one, one}, 1);
  CHECK(bundle.words == std::vector<std::string>{"b", "b"});
  CHECK(verify_bundle(bundle, beta).ok);

  Element z = element_named(l, "a");
  auto initial_a = std::make_shared<Derivation>();
  initial_a->kind = Derivation::Kind::Initial;
  initial_a->monoid = l.morphism.target;
  initial_a->element = z;
  initial_a->content = alpha_set_from_string("a", l.morphism.alphabet);
  initial_a->witness = "a";
  initial_a->derived = make_chain_set({Chain{z, z}});

  Derivation product;
  product.kind = Derivation::Kind::Product;
  product.monoid = l.morphism.target;
  product.left = initial;
  product.right = initial_a;
  product.left_set = initial->derived;
  product.right_set = initial_a->derived;
  product.derived = chain_set_product(*l.morphism.target, initial->derived, initial_a->derived);

  WitnessBundle pb = witness_from_derivation(product, {z, z}, 1);
  CHECK(pb.words == std::vector<std::string>{"ba", "ba"});
  CHECK(verify_bundle(pb, beta).ok);
}

TEST_CASE("witness bundle from an operation derivation") {
  // Context set {(1,1)} realized by "b", tail chain (1) for B={b}:
  // w1 = b^(2h), w2 = b^h b b^h with h = 4 at rank 1.
  RecognizedLanguage l = contains_a();
  ContentMorphism beta(l.morphism);
  Element one = element_named(l, "_");
  AlphaSet b_only = alpha_set_from_string("b", l.morphism.alphabet);

  auto family1 = saturate(beta, 1);

  auto context = std::make_shared<Derivation>();
  context->kind = Derivation::Kind::Initial;
  context->monoid = l.morphism.target;
  context->element = one;
  context->content = b_only;
  context->witness = "b";
  context->derived = make_chain_set({Chain{one, one}});

  Derivation op;
  op.kind = Derivation::Kind::Operation;
  op.monoid = l.morphism.target;
  op.context = context;
  op.context_set = context->derived;
  op.context_exponent = 1;
  op.lower = family1;
  op.content = b_only;
  op.derived = make_chain_set({Chain{one, one}});

  WitnessBundle bundle = witness_from_derivation(op, {one, one}, 1);
  REQUIRE(bundle.words.size() == 2);
  CHECK(bundle.words[0] == rep("b", 8));
  CHECK(bundle.words[1] == rep("b", 9));
  CHECK(ef_leq(bundle.words[0], bundle.words[1], cfg(2, 1)));
  CHECK(verify_bundle(bundle, beta).ok);
  REQUIRE(!bundle.notes.empty());
  CHECK(bundle.notes[0].find("first-found") != std::string::npos);
}

TEST_CASE("verify_bundle flags tampered bundles") {
  RecognizedLanguage l = contains_a();
  ContentMorphism beta(l.morphism);
  Element one = element_named(l, "_");

  WitnessBundle bundle;
  bundle.chain = {one, one};
  bundle.rank = 1;
  bundle.content = alpha_set_from_string("b", l.morphism.alphabet);
  bundle.words = {"b", "b"};
  CHECK(verify_bundle(bundle, beta).ok);

  WitnessBundle tampered = bundle;
  tampered.words[1] = "a";
  VerifyResult res = verify_bundle(tampered, beta);
  CHECK_FALSE(res.ok);
  CHECK(res.diagnosis.find("image mismatch") != std::string::npos);

  // Reversing a strict chain fails the adjacency check.
  RecognizedLanguage par = parity();
  ContentMorphism beta_par(par.morphism);
  WitnessBundle reversed;
  reversed.chain = {element_named(par, "a"), par.morphism.target->unit};
  reversed.rank = 1;
  reversed.content = alpha_set_from_string("a", par.morphism.alphabet);
  reversed.words = {rep("a", 17), rep("a", 16)};
  VerifyResult res2 = verify_bundle(reversed, beta_par);
  CHECK(res2.ok);  // a^17 and a^16 are still rank-1 related
  WitnessBundle reversed2 = reversed;
  reversed2.rank = 2;
  reversed2.words = {"aa", "a"};
  reversed2.chain = {par.morphism.target->unit, element_named(par, "a")};
  VerifyResult res3 = verify_bundle(reversed2, beta_par);
  CHECK_FALSE(res3.ok);
  CHECK(res3.diagnosis.find("ef_leq failed") != std::string::npos);
}

TEST_CASE("witness rank cap") {
  RecognizedLanguage l = contains_a();
  Element one = element_named(l, "_");
  Derivation initial;
  initial.kind = Derivation::Kind::Initial;
  initial.monoid = l.morphism.target;
  initial.element = one;
  initial.content = alpha_set_from_string("b", l.morphism.alphabet);
  initial.witness = "b";
  initial.derived = make_chain_set({Chain{one, one}});
  CHECK_THROWS_AS(witness_from_derivation(initial, {one, one}, 3), ResourceCapError);
  CHECK_THROWS_AS(witness_from_derivation(initial, {element_named(l, "a"), one}, 1), InputError);
}
