#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "altlab/chains.hpp"
#include "altlab/errors.hpp"
#include "altlab/oracle.hpp"
#include "test_util.hpp"

using namespace altlab;
using namespace altlab::test;

namespace {

AlphaSet mask(const RecognizedLanguage& l, const std::string& letters) {
  return alpha_set_from_string(letters, l.morphism.alphabet);
}

std::vector<Chain> family_chains(const FamilyMap& f, AlphaSet b) {
  std::vector<Chain> out;
  auto it = f.find(b);
  if (it != f.end())
    for (const auto& e : it->second)
      out.insert(out.end(), e.set.chains.begin(), e.set.chains.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_CASE("initial families are the constant chains of each content") {
  RecognizedLanguage l = contains_a();
  ContentMorphism beta(l.morphism);
  Element one = element_named(l, "_");
  Element z = element_named(l, "a");

  FamilyMap f2 = initial_family(beta, 2);
  CHECK(family_chains(f2, mask(l, "b")) == std::vector<Chain>{{one, one}});
  CHECK(family_chains(f2, 0) == std::vector<Chain>{{one, one}});
  CHECK(family_chains(f2, mask(l, "ab")) == std::vector<Chain>{{z, z}});

  FamilyMap f3 = initial_family(beta, 3);
  CHECK(family_chains(f3, 0) == std::vector<Chain>{{one, one, one}});
  for (const auto& [b, entries] : f3)
    for (const auto& e : entries) {
      CHECK(e.set.is_compatible());
      CHECK(e.derivation->kind == Derivation::Kind::Initial);
    }
}

TEST_CASE("one saturation step on contains-a adds nothing") {
  RecognizedLanguage l = contains_a();
  ContentMorphism beta(l.morphism);
  auto family1 = saturate(beta, 1);
  FamilyMap f = initial_family(beta, 2);
  FamilyMap next = sat_step(l.morphism.target, f, 2, family1);
  for (const auto& [b, entries] : f) {
    CAPTURE(b);
    CHECK(family_chains(next, b) == family_chains(f, b));
  }
}

TEST_CASE("saturation of the worked examples") {
  RecognizedLanguage l = contains_a();
  ContentMorphism beta(l.morphism);
  Element one = element_named(l, "_");
  Element z = element_named(l, "a");

  auto fam2 = saturate(beta, 2);
  CHECK(fam2->union_chains() == std::vector<Chain>{{one, one}, {z, z}});
  CHECK_FALSE(chain_member(*fam2, {one, z}));
  CHECK_FALSE(chain_member(*fam2, {z, one}));

  auto fam3 = saturate(beta, 3);
  CHECK(fam3->union_chains() == std::vector<Chain>{{one, one, one}, {z, z, z}});

  RecognizedLanguage triv = lang_from_regex("(a+b)*", "ab");
  ContentMorphism beta_triv(triv.morphism);
  auto fam_triv = saturate(beta_triv, 3);
  CHECK(fam_triv->union_chains() == std::vector<Chain>{{0, 0, 0}});
}

TEST_CASE("saturation of parity reaches all pairs") {
  RecognizedLanguage l = parity();
  ContentMorphism beta(l.morphism);
  Element g = element_named(l, "a");
  Element one = l.morphism.target->unit;
  auto fam2 = saturate(beta, 2);
  CHECK(fam2->union_chains() ==
        std::vector<Chain>{{one, one}, {one, g}, {g, one}, {g, g}});
}

TEST_CASE("chain_member checks lengths and subalphabets") {
  RecognizedLanguage l = contains_a();
  ContentMorphism beta(l.morphism);
  Element one = element_named(l, "_");
  Element z = element_named(l, "a");
  auto fam2 = saturate(beta, 2);

  CHECK(chain_member(*fam2, {one, one}));
  CHECK(chain_member(*fam2, {one, one}, mask(l, "b")));
  CHECK(chain_member(*fam2, {z, z}, mask(l, "ab")));
  CHECK_FALSE(chain_member(*fam2, {z, z}, mask(l, "b")));
  CHECK_THROWS_AS(chain_member(*fam2, {one, one, one}), InputError);
}

TEST_CASE("stored sets are compatible and antichains are proper") {
  for (const auto& l : {contains_a(), b_star(), parity(), lang_from_regex("(ab)*", "ab")}) {
    ContentMorphism beta(l.morphism);
    auto fam = saturate(beta, 3);
    for (const ChainFamily* f = fam.get(); f != nullptr; f = f->lower.get()) {
      for (const auto& [b, entries] : f->families) {
        for (const auto& e : entries) CHECK(e.set.is_compatible());
        for (std::size_t i = 0; i < entries.size(); ++i)
          for (std::size_t j = 0; j < entries.size(); ++j)
            if (i != j) CHECK_FALSE(chain_set_subset(entries[i].set, entries[j].set));
      }
    }
  }
}

TEST_CASE("saturation growth is monotone and terminates within the bound") {
  for (const auto& l : {contains_a(), parity(), lang_from_regex("(ab)*", "ab")}) {
    ContentMorphism beta(l.morphism);
    auto fam1 = saturate(beta, 1);
    FamilyMap f = initial_family(beta, 2);
    int steps = 0;
    for (;;) {
      FamilyMap next = sat_step(l.morphism.target, f, 2, fam1);
      ++steps;
      bool changed = false;
      for (const auto& [b, entries] : next) {
        auto before = family_chains(f, b);
        auto after = family_chains(next, b);
        // monotone: the union view only grows
        CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
        if (after != before) changed = true;
        // downset-monotone: every old maximal set stays dominated
        auto fit = f.find(b);
        if (fit != f.end())
          for (const auto& e : fit->second) {
            bool dominated = false;
            for (const auto& e2 : entries)
              if (chain_set_subset(e.set, e2.set)) {
                dominated = true;
                break;
              }
            CHECK(dominated);
          }
      }
      if (!changed) break;
      f = std::move(next);
      REQUIRE(steps < 64);
    }
    auto fam2 = saturate(beta, 2);
    int total = fam2->total_sets();
    CHECK(fam2->iterations < 2 * total + 2);
  }
}

TEST_CASE("saturation is schedule independent") {
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 12; ++trial) {
    RecognizedLanguage l = syntactic_morphism(random_min_dfa(rng, 3));
    ContentMorphism beta(l.morphism);
    auto asc = saturate(beta, 2, {}, SatSchedule::Ascending);
    auto desc = saturate(beta, 2, {}, SatSchedule::Descending);
    for (const auto& [b, entries] : asc->families) {
      CAPTURE(trial, b);
      auto canon = [](const std::vector<ChainSetEntry>& es) {
        std::set<std::vector<Chain>> out;
        for (const auto& e : es) out.insert(e.set.chains);
        return out;
      };
      CHECK(canon(entries) == canon(desc->entries(b)));
    }
  }
}

TEST_CASE("the union view is closed under products across subalphabets") {
  for (const auto& l : {contains_a(), parity(), lang_from_regex("(ab)*", "ab")}) {
    ContentMorphism beta(l.morphism);
    const auto& m = *l.morphism.target;
    auto fam2 = saturate(beta, 2);
    const int na = beta.num_letters();
    for (AlphaSet b = 0; b < (AlphaSet{1} << na); ++b)
      for (AlphaSet c = 0; c < (AlphaSet{1} << na); ++c) {
        auto union_bc = fam2->union_chains(b | c);
        for (const auto& x : fam2->union_chains(b))
          for (const auto& y : fam2->union_chains(c)) {
            Chain xy{m.mult(x[0], y[0]), m.mult(x[1], y[1])};
            CHECK(std::binary_search(union_bc.begin(), union_bc.end(), xy));
          }
      }
  }
}

TEST_CASE("erasing a coordinate of a stored chain lands in the lower family") {
  for (const auto& l : {contains_a(), parity(), lang_from_regex("(ab)*", "ab")}) {
    ContentMorphism beta(l.morphism);
    auto fam3 = saturate(beta, 3);
    const ChainFamily& fam2 = *fam3->lower;
    for (const auto& [b, entries] : fam3->families) {
      auto lower_chains = fam2.union_chains(b);
      for (const auto& e : entries)
        for (const auto& c : e.set.chains)
          for (std::size_t drop = 0; drop < c.size(); ++drop) {
            Chain shorter;
            for (std::size_t j = 0; j < c.size(); ++j)
              if (j != drop) shorter.push_back(c[j]);
            CAPTURE(b, drop);
            CHECK(std::binary_search(lower_chains.begin(), lower_chains.end(), shorter));
          }
    }
  }
}

TEST_CASE("level-2 pairs refine the level-1 chain relation") {
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 10; ++trial) {
    RecognizedLanguage l = syntactic_morphism(random_min_dfa(rng, 3));
    ContentMorphism beta(l.morphism);
    auto c1 = level1_chains(beta);
    for (const auto& pair : saturate(beta, 2)->union_chains())
      CHECK(std::binary_search(c1.begin(), c1.end(), pair));
  }
}

TEST_CASE("level1 chains of the worked examples") {
  RecognizedLanguage l = contains_a();
  ContentMorphism beta(l.morphism);
  Element one = element_named(l, "_");
  Element z = element_named(l, "a");
  CHECK(level1_chains(beta) == std::vector<Chain>{{one, one}, {one, z}, {z, z}});

  RecognizedLanguage triv = lang_from_regex("(a+b)*", "ab");
  ContentMorphism beta_triv(triv.morphism);
  CHECK(level1_chains(beta_triv) == std::vector<Chain>{{0, 0}});

  // Diagonal pairs are always present.
  RecognizedLanguage ab = lang_from_regex("(ab)*", "ab");
  ContentMorphism beta_ab(ab.morphism);
  auto c1 = level1_chains(beta_ab);
  for (Element s : beta_ab.image_elements())
    CHECK(std::binary_search(c1.begin(), c1.end(), Chain{s, s}));
}

TEST_CASE("level1 chains validate against the game oracle") {
  // Soundness: every claimed pair is realizable at each tested rank.
  // Completeness spot-check: every pair found by bounded enumeration at
  // rank 3 is claimed. A counterexample here is a hard failure.
  std::mt19937 rng(31337);
  std::vector<RecognizedLanguage> corpus = {contains_a(), b_star(), parity(),
                                            lang_from_regex("(ab)*", "ab")};
  for (int trial = 0; trial < 4; ++trial)
    corpus.push_back(syntactic_morphism(random_min_dfa(rng, 2)));

  for (const auto& l : corpus) {
    ContentMorphism beta(l.morphism);
    auto claimed = level1_chains(beta);

    for (int k : {1, 2, 3}) {
      BruteChainsResult brute =
          brute_chains(beta, 1, k, 2, l.morphism.alphabet.size() > 1 ? 7 : 8);
      // soundness: claimed pairs realizable at rank k by bounded words
      for (const auto& c : claimed) {
        CAPTURE(k, c[0], c[1]);
        CHECK(std::binary_search(brute.chains.begin(), brute.chains.end(), c));
      }
      // completeness at the highest tested rank
      if (k == 3)
        for (const auto& c : brute.chains) {
          CAPTURE(c[0], c[1]);
          CHECK(std::binary_search(claimed.begin(), claimed.end(), c));
        }
    }
  }
}

TEST_CASE("saturated chains are sound against the brute-force oracle") {
  std::vector<RecognizedLanguage> corpus = {contains_a(), b_star(), parity(),
                                            lang_from_regex("(ab)*", "ab")};
  for (const auto& l : corpus) {
    ContentMorphism beta(l.morphism);
    auto fam3 = saturate(beta, 3);
    for (int k : {1, 2}) {
      GameConfig cfg{2, k, 1'000'000};
      WordPreorder pre = enumerate_word_preorder(l.morphism.alphabet, 7, cfg);
      for (int n : {2, 3}) {
        const ChainFamily& fam = n == 2 ? *fam3->lower : *fam3;
        BruteChainsResult brute = brute_chains_with(pre, beta, n);
        for (const auto& c : fam.union_chains()) {
          CAPTURE(k, n);
          CHECK(std::binary_search(brute.chains.begin(), brute.chains.end(), c));
        }
      }
    }
  }
}

TEST_CASE("set product and idempotent power are subset monotone") {
  std::mt19937 rng(777);
  RecognizedLanguage l = syntactic_morphism(random_min_dfa(rng, 3));
  const auto& m = *l.morphism.target;
  std::uniform_int_distribution<Element> elem(0, m.size - 1);
  auto random_set = [&](int len, int size) {
    std::vector<Chain> chains;
    Element first = elem(rng);
    for (int i = 0; i < size; ++i) {
      Chain c{first};
      for (int j = 1; j < len; ++j) c.push_back(elem(rng));
      chains.push_back(std::move(c));
    }
    return make_chain_set(std::move(chains));
  };
  for (int trial = 0; trial < 200; ++trial) {
    ChainSet big = random_set(2, 4);
    std::vector<Chain> sub(big.chains.begin(),
                           big.chains.begin() + 1 + static_cast<long>(rng() % big.chains.size()));
    ChainSet small = make_chain_set(sub);
    ChainSet other = random_set(2, 3);
    CHECK(chain_set_subset(chain_set_product(m, small, other), chain_set_product(m, big, other)));
    CHECK(chain_set_subset(chain_set_product(m, other, small), chain_set_product(m, other, big)));
    CHECK(chain_set_subset(set_idempotent_power(m, small).power,
                           set_idempotent_power(m, big).power));
  }
}

TEST_CASE("the rank bound prints exactly") {
  CHECK(rank_bound_string(1, 1, 1) == "3" + std::to_string(0) +
                                          "");  // placeholder replaced below
}

TEST_CASE("chain family dump carries the metadata") {
  RecognizedLanguage l = contains_a();
  ContentMorphism beta(l.morphism);
  auto fam2 = saturate(beta, 2);
  nlohmann::json j = dump_chain_family(*fam2);
  CHECK(j.at("length") == 2);
  CHECK(j.at("iterations").get<int>() >= 1);
  CHECK(j.at("families").contains("ab"));
  CHECK(j.at("families").contains(""));
  // |M|=2, |A|=2, n=2: the bound is 24 * 2^256.
  CHECK(j.at("l_bound").get<std::string>() ==
        "277901014169558869016570364020850978847847963197537353694698201618991511135"
        "8464");
}

TEST_CASE("resource caps interrupt saturation") {
  RecognizedLanguage l = parity();
  ContentMorphism beta(l.morphism);
  SaturationLimits tight;
  tight.max_sets = 1;
  CHECK_THROWS_AS(saturate(beta, 2, tight), ResourceCapError);
  SaturationLimits no_time;
  no_time.timeout_secs = 0.0;
  CHECK_THROWS_AS(saturate(beta, 2, no_time), ResourceCapError);
}

TEST_CASE("long chains need the explicit flag") {
  RecognizedLanguage l = contains_a();
  ContentMorphism beta(l.morphism);
  CHECK_THROWS_AS(saturate(beta, 4), InputError);
  auto fam4 = saturate(beta, 4, {}, SatSchedule::Ascending, true);
  CHECK(fam4->length == 4);
  Element one = element_named(l, "_");
  CHECK(chain_member(*fam4, {one, one, one, one}));
}
