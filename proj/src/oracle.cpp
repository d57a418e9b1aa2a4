#include "altlab/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "altlab/errors.hpp"

namespace altlab {

namespace {

// Pebble configuration: strictly monotone partial matching between
// positions of w and w2 with equal labels, stored sorted.
using Pair = std::pair<int, int>;
using Config = std::vector<Pair>;

struct GameSolver {
  std::string_view w, w2;
  int level;
  long long budget;
  long long expansions = 0;
  std::map<std::tuple<Config, int, int, int>, bool> memo;

  bool valid_extend(const Config& cfg, int x, int y) const {
    if (w[x] != w2[y]) return false;
    for (auto [a, b] : cfg) {
      if ((x < a) != (y < b)) return false;
      if ((x > a) != (y > b)) return false;
    }
    return true;
  }

  static Config extended(Config cfg, int x, int y) {
    Pair p{x, y};
    auto it = std::lower_bound(cfg.begin(), cfg.end(), p);
    if (it != cfg.end() && *it == p) return cfg;
    cfg.insert(it, p);
    return cfg;
  }

  // True iff Duplicator survives `rounds` more rounds. `active` is 0 when
  // the active word is w, 1 when it is w2; `c` is the alternation counter.
  bool duplicator_wins(const Config& cfg, int active, int c, int rounds) {
    if (rounds == 0) return true;
    auto key = std::make_tuple(cfg, active, c, rounds);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    if (++expansions > budget * (rounds + 1))
      throw ResourceCapError("ef game budget exceeded");

    bool result = true;
    for (int choice = 0; choice < 2 && result; ++choice) {
      bool switching = (choice != active);
      if (switching && c >= level - 1) continue;
      int next_c = switching ? c + 1 : c;
      std::string_view spoiler_word = (choice == 0) ? w : w2;
      std::string_view dup_word = (choice == 0) ? w2 : w;
      for (int x = 0; x < static_cast<int>(spoiler_word.size()) && result; ++x) {
        bool answered = false;
        for (int y = 0; y < static_cast<int>(dup_word.size()) && !answered; ++y) {
          int px = (choice == 0) ? x : y;
          int py = (choice == 0) ? y : x;
          if (!valid_extend(cfg, px, py)) continue;
          if (duplicator_wins(extended(cfg, px, py), choice, next_c, rounds - 1))
            answered = true;
        }
        if (!answered) result = false;
      }
    }
    memo.emplace(std::move(key), result);
    return result;
  }
};

}  // namespace

bool ef_leq(std::string_view w, std::string_view w2, const GameConfig& cfg) {
  if (cfg.level < 1) throw InputError("game level must be at least 1");
  if (cfg.rounds < 0) throw InputError("game rounds must be non-negative");
  long long prod = static_cast<long long>(w.size()) * static_cast<long long>(w2.size());
  if (prod > cfg.budget) throw ResourceCapError("word pair exceeds the ef game budget");
  GameSolver solver{w, w2, cfg.level, cfg.budget, 0, {}};
  return solver.duplicator_wins({}, 0, 0, cfg.rounds);
}

namespace {

void collect_subwords(std::string_view w, int k, std::set<std::string>& out) {
  // All scattered subwords of w of length <= k.
  std::set<std::string> cur{""};
  out.insert("");
  for (int round = 0; round < k; ++round) {
    std::set<std::string> next;
    for (const auto& s : cur) {
      // extend s by one letter occurring after its leftmost embedding
      std::size_t pos = 0;
      bool ok = true;
      for (char c : s) {
        pos = w.find(c, pos);
        if (pos == std::string_view::npos) {
          ok = false;
          break;
        }
        ++pos;
      }
      if (!ok) continue;
      for (std::size_t i = pos; i < w.size(); ++i) next.insert(std::string(s) + w[i]);
    }
    for (const auto& s : next) out.insert(s);
    cur = std::move(next);
    if (cur.empty()) break;
  }
}

bool is_subword(std::string_view x, std::string_view w) {
  std::size_t pos = 0;
  for (char c : x) {
    pos = w.find(c, pos);
    if (pos == std::string_view::npos) return false;
    ++pos;
  }
  return true;
}

}  // namespace

bool sigma1_leq(std::string_view w, std::string_view w2, int k) {
  if (k < 0) throw InputError("rank must be non-negative");
  std::set<std::string> subs;
  collect_subwords(w, k, subs);
  for (const auto& s : subs)
    if (!is_subword(s, w2)) return false;
  return true;
}

namespace {

std::vector<std::string> words_up_to(const std::vector<char>& alphabet, int max_len) {
  std::vector<std::string> out{""};
  std::size_t level_start = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_start; i < level_end; ++i)
      for (char c : alphabet) out.push_back(out[i] + c);
    level_start = level_end;
  }
  return out;
}

}  // namespace

WordPreorder enumerate_word_preorder(const std::vector<char>& alphabet, int max_len,
                                     const GameConfig& cfg) {
  WordPreorder pre;
  pre.words = words_up_to(alphabet, max_len);
  const std::size_t n = pre.words.size();
  pre.leq.assign(n * n, 0);

  // For level >= 2 and rank >= 1 the relation refines content equality;
  // skip the game on mismatched contents.
  bool content_gate = cfg.level >= 2 && cfg.rounds >= 1;
  std::vector<AlphaSet> contents(n);
  for (std::size_t i = 0; i < n; ++i) contents[i] = content_of(pre.words[i], alphabet);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        pre.leq[i * n + j] = 1;
        continue;
      }
      if (content_gate && contents[i] != contents[j]) continue;
      pre.leq[i * n + j] = ef_leq(pre.words[i], pre.words[j], cfg) ? 1 : 0;
    }
  return pre;
}

BruteChainsResult brute_chains_with(const WordPreorder& pre, const ContentMorphism& beta,
                                    int n) {
  if (n < 1) throw InputError("chain length must be at least 1");
  const std::size_t count = pre.words.size();
  std::vector<Element> image(count);
  for (std::size_t i = 0; i < count; ++i) image[i] = beta.alpha().eval(pre.words[i]);

  std::set<Chain> chains;
  if (n == 1) {
    for (std::size_t i = 0; i < count; ++i) chains.insert(Chain{image[i]});
  } else {
    // Per middle word: elements reachable downward/upward through the
    // preorder, combined around it.
    std::vector<std::vector<Element>> below(count), above(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::set<Element> lo, hi;
      for (std::size_t j = 0; j < count; ++j) {
        if (pre.word_leq(static_cast<int>(j), static_cast<int>(i))) lo.insert(image[j]);
        if (pre.word_leq(static_cast<int>(i), static_cast<int>(j))) hi.insert(image[j]);
      }
      below[i].assign(lo.begin(), lo.end());
      above[i].assign(hi.begin(), hi.end());
    }
    if (n == 2) {
      for (std::size_t i = 0; i < count; ++i)
        for (Element t : above[i]) chains.insert(Chain{image[i], t});
    } else if (n == 3) {
      for (std::size_t i = 0; i < count; ++i)
        for (Element s : below[i])
          for (Element t : above[i]) chains.insert(Chain{s, image[i], t});
    } else {
      throw InputError("brute chains support length <= 3");
    }
  }

  BruteChainsResult out;
  out.chains.assign(chains.begin(), chains.end());
  out.length = n;
  out.max_len = pre.words.empty() ? 0 : static_cast<int>(pre.words.back().size());
  out.note =
      "bounded-word enumeration: under-approximates the rank-k chain sets "
      "(witnesses limited to the length bound) and over-approximates the "
      "limit chain sets (single finite rank)";
  return out;
}

BruteChainsResult brute_chains(const ContentMorphism& beta, int level, int rank, int n,
                               int max_len, long long budget) {
  GameConfig cfg{level, rank, budget};
  WordPreorder pre = enumerate_word_preorder(beta.alpha().alphabet, max_len, cfg);
  BruteChainsResult out = brute_chains_with(pre, beta, n);
  out.level = level;
  out.rank = rank;
  return out;
}

namespace {

constexpr std::size_t kMaxWitnessLength = std::size_t{1} << 22;

std::string repeat(const std::string& w, long long times) {
  if (w.size() * static_cast<std::size_t>(times) > kMaxWitnessLength)
    throw ResourceCapError("witness word would exceed the length cap");
  std::string out;
  out.reserve(w.size() * static_cast<std::size_t>(times));
  for (long long i = 0; i < times; ++i) out += w;
  return out;
}

// First word of the realization of a derived set at a given rank: the
// common word all chains of a compatible set start from. It does not
// depend on which chain of the set is extracted.
std::string first_word(const Derivation& d, int rank) {
  switch (d.kind) {
    case Derivation::Kind::Initial:
      return d.witness;
    case Derivation::Kind::Product:
      return first_word(*d.left, rank) + first_word(*d.right, rank);
    case Derivation::Kind::Operation: {
      long long h = d.context_exponent * (1LL << (2 * rank));
      return repeat(first_word(*d.context, rank), 2 * h);
    }
  }
  throw InternalInconsistencyError("unreachable derivation kind");
}

// Powers T^1..T^e of a set.
std::vector<ChainSet> set_powers(const FiniteMonoid& m, const ChainSet& t, long long e) {
  std::vector<ChainSet> out{t};
  for (long long i = 2; i <= e; ++i) out.push_back(chain_set_product(m, out.back(), t));
  return out;
}

// Splits x into `count` factors drawn from `factor`, using the precomputed
// power sets T^1..T^{count-1} to prune. First decomposition in enumeration
// order.
bool decompose_product(const FiniteMonoid& m, const std::vector<ChainSet>& powers,
                       const ChainSet& factor, const Chain& x, long long count,
                       std::vector<Chain>& out) {
  if (count == 1) {
    if (!factor.contains(x)) return false;
    out.push_back(x);
    return true;
  }
  const ChainSet& rest_set = powers[static_cast<std::size_t>(count) - 2];
  for (const auto& f : factor.chains) {
    for (const auto& rest : rest_set.chains) {
      bool match = true;
      for (std::size_t j = 0; j < x.size(); ++j)
        if (m.mult(f[j], rest[j]) != x[j]) {
          match = false;
          break;
        }
      if (!match) continue;
      out.push_back(f);
      if (decompose_product(m, powers, factor, rest, count - 1, out)) return true;
      out.pop_back();
    }
  }
  return false;
}

struct BundleBuilder {
  int rank;

  WitnessBundle build(const Derivation& d, const Chain& chain) {
    if (!d.derived.contains(chain))
      throw InputError("chain does not belong to the set derived by this derivation");
    const std::size_t n = chain.size();
    WitnessBundle bundle;
    bundle.chain = chain;
    bundle.rank = rank;

    switch (d.kind) {
      case Derivation::Kind::Initial: {
        bundle.content = d.content;
        bundle.words.assign(n, d.witness);
        return bundle;
      }

      case Derivation::Kind::Product: {
        const FiniteMonoid& m = *d.monoid;
        for (const auto& cl : d.left_set.chains) {
          for (const auto& cr : d.right_set.chains) {
            bool match = true;
            for (std::size_t j = 0; j < n; ++j)
              if (m.mult(cl[j], cr[j]) != chain[j]) {
                match = false;
                break;
              }
            if (!match) continue;
            WitnessBundle bl = build(*d.left, cl);
            WitnessBundle br = build(*d.right, cr);
            bundle.content = bl.content | br.content;
            bundle.words.resize(n);
            for (std::size_t j = 0; j < n; ++j) {
              if (bl.words[j].size() + br.words[j].size() > kMaxWitnessLength)
                throw ResourceCapError("witness word would exceed the length cap");
              bundle.words[j] = bl.words[j] + br.words[j];
            }
            merge_notes(bundle, bl);
            merge_notes(bundle, br);
            return bundle;
          }
        }
        throw InternalInconsistencyError("stored product set has no factorization");
      }

      case Derivation::Kind::Operation: {
        const FiniteMonoid& m = *d.monoid;
        const ChainSet& t = d.context_set;
        const long long e = d.context_exponent;
        const long long h = e * (1LL << (2 * rank));
        if (h > 4096) throw ResourceCapError("witness exponent too large for the budget");

        std::vector<ChainSet> powers = set_powers(m, t, h);
        const ChainSet& idem = powers[static_cast<std::size_t>(e) - 1];

        // chain = t' * (1_M, tail) * t'' with t', t'' in T^e = T^h and a
        // tail chain of the lower family for the same subalphabet.
        std::vector<Chain> tails = d.lower->union_chains(d.content);
        const Chain* chosen_tail = nullptr;
        Chain tp, tpp;
        for (const auto& a : idem.chains) {
          for (const auto& b : idem.chains) {
            for (const auto& tail : tails) {
              bool match = m.mult3(a[0], m.unit, b[0]) == chain[0];
              for (std::size_t j = 1; j < n && match; ++j)
                match = m.mult3(a[j], tail[j - 1], b[j]) == chain[j];
              if (match) {
                tp = a;
                tpp = b;
                chosen_tail = &tail;
                break;
              }
            }
            if (chosen_tail) break;
          }
          if (chosen_tail) break;
        }
        if (!chosen_tail)
          throw InternalInconsistencyError("stored operation set has no decomposition");

        std::vector<Chain> factors_left, factors_right;
        if (!decompose_product(m, powers, t, tp, h, factors_left) ||
            !decompose_product(m, powers, t, tpp, h, factors_right))
          throw InternalInconsistencyError("idempotent power chain has no factorization");

        const std::string u = first_word(*d.context, rank);
        bundle.content = d.content;
        bundle.words.resize(n);
        bundle.words[0] = repeat(u, 2 * h);

        // Bundles for the factor chains of T, cached per distinct chain.
        std::map<Chain, WitnessBundle> factor_bundles;
        auto factor_words = [&](const Chain& f) -> const WitnessBundle& {
          auto it = factor_bundles.find(f);
          if (it == factor_bundles.end())
            it = factor_bundles.emplace(f, build(*d.context, f)).first;
          return it->second;
        };

        const ChainSetEntry* tail_entry = d.lower->find_entry(*chosen_tail, d.content);
        if (!tail_entry)
          throw InternalInconsistencyError("lower family lost the tail chain");
        WitnessBundle tail_bundle = build(*tail_entry->derivation, *chosen_tail);

        for (std::size_t j = 1; j < n; ++j) {
          std::string wj;
          for (const auto& f : factors_left) wj += factor_words(f).words[j];
          wj += tail_bundle.words[j - 1];
          for (const auto& f : factors_right) wj += factor_words(f).words[j];
          if (wj.size() > kMaxWitnessLength)
            throw ResourceCapError("witness word would exceed the length cap");
          bundle.words[j] = std::move(wj);
        }
        merge_notes(bundle, tail_bundle);
        bundle.notes.push_back("first-found decomposition through T^h*(1,Cs)*T^h");
        return bundle;
      }
    }
    throw InternalInconsistencyError("unreachable derivation kind");
  }

  static void merge_notes(WitnessBundle& into, const WitnessBundle& from) {
    for (const auto& note : from.notes)
      if (std::find(into.notes.begin(), into.notes.end(), note) == into.notes.end())
        into.notes.push_back(note);
  }
};

}  // namespace

WitnessBundle witness_from_derivation(const Derivation& d, const Chain& chain, int rank,
                                      int rank_cap) {
  if (rank < 0) throw InputError("rank must be non-negative");
  if (rank > rank_cap)
    throw ResourceCapError("witness rank " + std::to_string(rank) +
                           " exceeds the cap (word lengths explode with the rank)");
  BundleBuilder builder{rank};
  return builder.build(d, chain);
}

VerifyResult verify_bundle(const WitnessBundle& bundle, const ContentMorphism& beta,
                           long long budget) {
  const auto& alpha = beta.alpha();
  if (bundle.words.size() != bundle.chain.size())
    return {false, "word count does not match chain length"};
  for (std::size_t j = 0; j < bundle.words.size(); ++j) {
    if (alpha.eval(bundle.words[j]) != bundle.chain[j])
      return {false, "image mismatch at j=" + std::to_string(j)};
    if (content_of(bundle.words[j], alpha.alphabet) != bundle.content)
      return {false, "content mismatch at j=" + std::to_string(j)};
  }
  GameConfig cfg{2, bundle.rank, budget};
  for (std::size_t j = 0; j + 1 < bundle.words.size(); ++j)
    if (!ef_leq(bundle.words[j], bundle.words[j + 1], cfg))
      return {false, "ef_leq failed at j=" + std::to_string(j)};
  return {true, ""};
}

}  // namespace altlab
