#ifndef ALTLAB_ORACLE_HPP
#define ALTLAB_ORACLE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "altlab/chains.hpp"
#include "altlab/monoid.hpp"

namespace altlab {

// Parameters of the k-round game with alternation counter: Spoiler may
// switch the active word only while the counter is below level-1.
struct GameConfig {
  int level = 2;
  int rounds = 2;
  long long budget = 1'000'000;  // max |w|*|w2| and node-expansion budget per round depth
};

// True iff every level/rank sentence satisfied by w is satisfied by w2,
// decided by memoized search of the game. Throws ResourceCapError when the
// budget is exceeded.
bool ef_leq(std::string_view w, std::string_view w2, const GameConfig& cfg);

// Fast path for level 1: every subword of w of length <= k is a subword
// of w2. Must agree with ef_leq at level 1 (standing test).
bool sigma1_leq(std::string_view w, std::string_view w2, int k);

// The preorder restricted to all words of length <= max_len over the
// alphabet, as an explicit matrix. Word order is length-lexicographic.
struct WordPreorder {
  std::vector<std::string> words;
  std::vector<char> leq;  // row-major over word indices
  bool word_leq(int i, int j) const {
    return leq[static_cast<std::size_t>(i) * words.size() + j] != 0;
  }
};
WordPreorder enumerate_word_preorder(const std::vector<char>& alphabet,
                                     int max_len, const GameConfig& cfg);

// All chains of length n realizable by witness words of length <= max_len
// ordered by the level/rank preorder. Under-approximates the unbounded
// rank-k chains (bounded words) and over-approximates the limit chains
// (finite k); the note records both directions.
struct BruteChainsResult {
  std::vector<Chain> chains;
  int level = 2;
  int rank = 0;
  int length = 2;
  int max_len = 8;
  std::string note;
};
BruteChainsResult brute_chains(const ContentMorphism& beta, int level, int rank,
                               int n, int max_len,
                               long long budget = 1'000'000);
// Same, reusing a precomputed preorder (the matrix only depends on the
// alphabet, level, rank and length bound, not on the morphism).
BruteChainsResult brute_chains_with(const WordPreorder& pre,
                                    const ContentMorphism& beta, int n);

// Words realizing a chain at a given rank, built structurally from a
// derivation. words[j] has image chain[j] and content `content`, and
// adjacent words are related by the level-2 rank-k preorder.
struct WitnessBundle {
  Chain chain;
  int rank = 1;
  AlphaSet content = 0;
  std::vector<std::string> words;
  std::vector<std::string> notes;
};

inline constexpr int kDefaultWitnessRankCap = 2;

// Builds the bundle for a chain of the set derived by `d`. Throws
// InputError if the chain is not in the derived set, ResourceCapError if
// the rank exceeds the cap (word lengths explode with the rank).
WitnessBundle witness_from_derivation(const Derivation& d, const Chain& chain,
                                      int rank,
                                      int rank_cap = kDefaultWitnessRankCap);

// Re-checks images, contents and all adjacent game relations of a bundle.
struct VerifyResult {
  bool ok = false;
  std::string diagnosis;
};
VerifyResult verify_bundle(const WitnessBundle& bundle, const ContentMorphism& beta,
                           long long budget = 1'000'000);

}  // namespace altlab

#endif
