#ifndef ALTLAB_CHAINS_HPP
#define ALTLAB_CHAINS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "altlab/monoid.hpp"

namespace altlab {

// A word over the alphabet M, written (s1,...,sn).
using Chain = std::vector<Element>;

// Set of chains of uniform length, kept sorted and deduplicated. Sets
// produced by the saturation are compatible: all chains share the same
// first element.
struct ChainSet {
  std::vector<Chain> chains;

  bool empty() const { return chains.empty(); }
  int length() const { return chains.empty() ? 0 : static_cast<int>(chains.front().size()); }
  Element first_element() const { return chains.front().front(); }
  bool contains(const Chain& c) const;
  bool is_compatible() const;

  bool operator==(const ChainSet&) const = default;
  bool operator<(const ChainSet& o) const { return chains < o.chains; }
};

ChainSet make_chain_set(std::vector<Chain> chains);
// Componentwise set product {st : s in a, t in b}.
ChainSet chain_set_product(const FiniteMonoid& m, const ChainSet& a, const ChainSet& b);
bool chain_set_subset(const ChainSet& a, const ChainSet& b);
// Prefixes the unit to every chain: {(1_M, s1, ..., sn)}.
ChainSet prefix_unit(const FiniteMonoid& m, const ChainSet& tails);

// The unique idempotent among the powers of a set, with the exponent that
// reaches it. Powers of a set are monotone in the set, so taking each
// set's own idempotent power keeps antichain pruning exact.
struct SetPower {
  ChainSet power;
  long long exponent = 1;
};
SetPower set_idempotent_power(const FiniteMonoid& m, const ChainSet& t,
                              long long cap = 1 << 20);

struct ChainFamily;

// How a stored set was produced; consumed by the witness builder.
struct Derivation {
  enum class Kind { Initial, Product, Operation };
  Kind kind;

  std::shared_ptr<const FiniteMonoid> monoid;
  ChainSet derived;  // the set this node produces

  // Initial: the singleton {(s,...,s)} for a word with content B.
  Element element = 0;
  AlphaSet content = 0;
  std::string witness;

  // Product: derived = left_set * right_set.
  std::shared_ptr<const Derivation> left, right;
  ChainSet left_set, right_set;

  // Operation: derived = T^e * (1_M, Cs_{n-1}[B]) * T^e.
  std::shared_ptr<const Derivation> context;  // derivation of T
  ChainSet context_set;                       // T
  long long context_exponent = 1;             // e with T^e idempotent
  std::shared_ptr<const ChainFamily> lower;   // length n-1 family
};
using DerivationPtr = std::shared_ptr<const Derivation>;

struct ChainSetEntry {
  ChainSet set;
  DerivationPtr derivation;
};

// Map from subalphabet to the antichain of subset-maximal compatible sets.
using FamilyMap = std::map<AlphaSet, std::vector<ChainSetEntry>>;

struct SaturationLimits {
  int max_sets = 20000;        // total maximal sets across all B
  double timeout_secs = 300.0;
};

enum class SatSchedule { Ascending, Descending };

// Saturated family for one level/length. The stored antichains represent
// the downset fC_{2,n}[alpha,B]; union_chains is the Cs view.
struct ChainFamily {
  int level = 2;
  int length = 1;
  std::vector<char> alphabet;
  FamilyMap families;
  std::shared_ptr<const ChainFamily> lower;  // null for length 1
  int iterations = 0;
  std::string l_bound;  // rank bound, exact decimal (or power form)

  std::vector<Chain> union_chains(std::optional<AlphaSet> b = std::nullopt) const;
  const std::vector<ChainSetEntry>& entries(AlphaSet b) const;
  // First stored entry whose set contains the chain, in fixed order.
  const ChainSetEntry* find_entry(const Chain& c, std::optional<AlphaSet> b = std::nullopt) const;
  int total_sets() const;
};

// Inserts a set into an antichain of maximal sets. Returns true if the
// represented downset grew. An existing superset keeps its derivation.
bool antichain_insert(std::vector<ChainSetEntry>& antichain, ChainSet s, DerivationPtr d);

// B -> { {(s,...,s)} : s image of a word with content B }.
FamilyMap initial_family(const ContentMorphism& beta, int n);

// One application of the saturation operator: fT_B U fM_B U fO_B per B,
// reduced to maximal sets. `lower` is the saturated family of length n-1.
FamilyMap sat_step(const std::shared_ptr<const FiniteMonoid>& m, const FamilyMap& f,
                   int n, std::shared_ptr<const ChainFamily> lower,
                   SatSchedule schedule = SatSchedule::Ascending);

// Saturates lengths 1..n and returns the length-n family (lower lengths
// reachable through `lower`). n in {1,2,3} unless `allow_long` is set.
std::shared_ptr<const ChainFamily> saturate(
    const ContentMorphism& beta, int n,
    const SaturationLimits& limits = {},
    SatSchedule schedule = SatSchedule::Ascending,
    bool allow_long = false);

// Membership of a chain in the stored family (for one B or for any B).
// Throws InputError on length mismatch.
bool chain_member(const ChainFamily& family, const Chain& chain,
                  std::optional<AlphaSet> b = std::nullopt);

// The level-1 chain relation C_1[alpha] as length-2 chains: product
// closure of the diagonal together with all (t, s) where t is the image
// of a word over B and s lies in the cyclic part of an image of a word of
// content B.
std::vector<Chain> level1_chains(const ContentMorphism& beta);

// Rank bound reported with a saturated family, as an exact integer string:
// 3 * |M| * |A| * n * 2^(2^(2*|M|^n)). Decimal when representable at desk
// scale, otherwise the exact power form "C*2^(2^E)".
std::string rank_bound_string(int monoid_size, int num_letters, int n);

nlohmann::json dump_chain_family(const ChainFamily& family,
                                 std::optional<AlphaSet> b = std::nullopt);

std::string derivation_to_string(const Derivation& d, const std::vector<char>& alphabet);

}  // namespace altlab

#endif
