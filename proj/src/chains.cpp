#include "altlab/chains.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "altlab/errors.hpp"

namespace altlab {

bool ChainSet::contains(const Chain& c) const {
  return std::binary_search(chains.begin(), chains.end(), c);
}

bool ChainSet::is_compatible() const {
  if (chains.empty()) return false;
  Element first = chains.front().front();
  for (const auto& c : chains)
    if (c.front() != first) return false;
  return true;
}

ChainSet make_chain_set(std::vector<Chain> chains) {
  std::sort(chains.begin(), chains.end());
  chains.erase(std::unique(chains.begin(), chains.end()), chains.end());
  return ChainSet{std::move(chains)};
}

ChainSet chain_set_product(const FiniteMonoid& m, const ChainSet& a, const ChainSet& b) {
  std::vector<Chain> out;
  out.reserve(a.chains.size() * b.chains.size());
  for (const auto& ca : a.chains)
    for (const auto& cb : b.chains) {
      Chain c(ca.size());
      for (std::size_t j = 0; j < ca.size(); ++j) c[j] = m.mult(ca[j], cb[j]);
      out.push_back(std::move(c));
    }
  return make_chain_set(std::move(out));
}

bool chain_set_subset(const ChainSet& a, const ChainSet& b) {
  return std::includes(b.chains.begin(), b.chains.end(), a.chains.begin(), a.chains.end());
}

ChainSet prefix_unit(const FiniteMonoid& m, const ChainSet& tails) {
  std::vector<Chain> out;
  out.reserve(tails.chains.size());
  for (const auto& t : tails.chains) {
    Chain c;
    c.reserve(t.size() + 1);
    c.push_back(m.unit);
    c.insert(c.end(), t.begin(), t.end());
    out.push_back(std::move(c));
  }
  return make_chain_set(std::move(out));
}

SetPower set_idempotent_power(const FiniteMonoid& m, const ChainSet& t, long long cap) {
  std::map<std::vector<Chain>, long long> seen;
  std::vector<ChainSet> powers;
  powers.push_back(t);
  seen.emplace(t.chains, 1);
  for (long long e = 2;; ++e) {
    if (e > cap) throw ResourceCapError("set power cycle longer than cap");
    ChainSet next = chain_set_product(m, powers.back(), t);
    auto it = seen.find(next.chains);
    if (it != seen.end()) {
      long long index = it->second;
      long long period = e - index;
      long long target = ((index + period - 1) / period) * period;
      return SetPower{powers[static_cast<std::size_t>(target) - 1], target};
    }
    seen.emplace(next.chains, e);
    powers.push_back(std::move(next));
  }
}

const std::vector<ChainSetEntry>& ChainFamily::entries(AlphaSet b) const {
  static const std::vector<ChainSetEntry> kEmpty;
  auto it = families.find(b);
  return it == families.end() ? kEmpty : it->second;
}

std::vector<Chain> ChainFamily::union_chains(std::optional<AlphaSet> b) const {
  std::vector<Chain> out;
  for (const auto& [set_b, entries] : families) {
    if (b && *b != set_b) continue;
    for (const auto& e : entries)
      out.insert(out.end(), e.set.chains.begin(), e.set.chains.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const ChainSetEntry* ChainFamily::find_entry(const Chain& c, std::optional<AlphaSet> b) const {
  for (const auto& [set_b, entries] : families) {
    if (b && *b != set_b) continue;
    for (const auto& e : entries)
      if (e.set.contains(c)) return &e;
  }
  return nullptr;
}

int ChainFamily::total_sets() const {
  int n = 0;
  for (const auto& [b, entries] : families) n += static_cast<int>(entries.size());
  return n;
}

bool antichain_insert(std::vector<ChainSetEntry>& antichain, ChainSet s, DerivationPtr d) {
  if (s.empty()) return false;
  for (const auto& e : antichain)
    if (chain_set_subset(s, e.set)) return false;
  std::erase_if(antichain, [&](const ChainSetEntry& e) { return chain_set_subset(e.set, s); });
  antichain.push_back(ChainSetEntry{std::move(s), std::move(d)});
  return true;
}

FamilyMap initial_family(const ContentMorphism& beta, int n) {
  if (n < 1) throw InputError("chain length must be at least 1");
  FamilyMap out;
  for (AlphaSet b : subsets_ascending(beta.num_letters())) {
    auto& antichain = out[b];
    for (Element s : beta.image_with_content(b)) {
      auto node = std::make_shared<Derivation>();
      node->kind = Derivation::Kind::Initial;
      node->monoid = beta.alpha().target;
      node->element = s;
      node->content = b;
      node->witness = *beta.witness_word(s, b);
      node->derived = make_chain_set({Chain(static_cast<std::size_t>(n), s)});
      ChainSet derived = node->derived;
      antichain_insert(antichain, std::move(derived), std::move(node));
    }
  }
  return out;
}

namespace {

std::vector<AlphaSet> schedule_order(int num_letters, SatSchedule schedule) {
  auto order = subsets_ascending(num_letters);
  if (schedule == SatSchedule::Descending) std::reverse(order.begin(), order.end());
  return order;
}

}  // namespace

FamilyMap sat_step(const std::shared_ptr<const FiniteMonoid>& monoid, const FamilyMap& f,
                   int n, std::shared_ptr<const ChainFamily> lower, SatSchedule schedule) {
  if (n < 2) throw InputError("sat_step needs length >= 2");
  const FiniteMonoid& m = *monoid;
  const int num_letters = static_cast<int>(lower->alphabet.size());
  FamilyMap out = f;
  for (AlphaSet b : schedule_order(num_letters, schedule)) {
    auto& antichain = out[b];

    // Multiplication: products over all covers C u D = B.
    for (const auto& [c, entries_c] : f) {
      if ((c | b) != b) continue;
      for (const auto& [d, entries_d] : f) {
        if ((c | d) != b) continue;
        for (const auto& sc : entries_c)
          for (const auto& sd : entries_d) {
            ChainSet prod = chain_set_product(m, sc.set, sd.set);
            auto node = std::make_shared<Derivation>();
            node->kind = Derivation::Kind::Product;
            node->monoid = monoid;
            node->left = sc.derivation;
            node->right = sd.derivation;
            node->left_set = sc.set;
            node->right_set = sd.set;
            node->derived = prod;
            antichain_insert(antichain, std::move(prod), std::move(node));
          }
      }
    }

    // Operation: T^e * (1_M, tails) * T^e for every stored T.
    auto itb = f.find(b);
    if (itb != f.end()) {
      ChainSet tails = make_chain_set(lower->union_chains(b));
      if (!tails.empty()) {
        ChainSet mid = prefix_unit(m, tails);
        for (const auto& entry : itb->second) {
          SetPower p = set_idempotent_power(m, entry.set);
          ChainSet r = chain_set_product(m, chain_set_product(m, p.power, mid), p.power);
          auto node = std::make_shared<Derivation>();
          node->kind = Derivation::Kind::Operation;
          node->monoid = monoid;
          node->context = entry.derivation;
          node->context_set = entry.set;
          node->context_exponent = p.exponent;
          node->lower = lower;
          node->content = b;
          node->derived = r;
          antichain_insert(antichain, std::move(r), std::move(node));
        }
      }
    }
  }
  return out;
}

namespace {

bool families_equal(const FamilyMap& a, const FamilyMap& b) {
  auto canon = [](const FamilyMap& f) {
    std::map<AlphaSet, std::set<std::vector<Chain>>> out;
    for (const auto& [k, entries] : f) {
      auto& sets = out[k];
      for (const auto& e : entries) sets.insert(e.set.chains);
    }
    return out;
  };
  return canon(a) == canon(b);
}

int count_sets(const FamilyMap& f) {
  int n = 0;
  for (const auto& [b, entries] : f) n += static_cast<int>(entries.size());
  return n;
}

}  // namespace

std::shared_ptr<const ChainFamily> saturate(const ContentMorphism& beta, int n,
                                            const SaturationLimits& limits,
                                            SatSchedule schedule, bool allow_long) {
  if (n < 1) throw InputError("chain length must be at least 1");
  if (n > 3 && !allow_long)
    throw InputError("chain length above 3 requires the long-chain flag");

  const auto& m = beta.monoid();
  const auto start = std::chrono::steady_clock::now();
  auto check_limits = [&](int sets) {
    if (sets > limits.max_sets)
      throw ResourceCapError("saturation exceeded " + std::to_string(limits.max_sets) +
                             " maximal sets");
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    if (elapsed.count() > limits.timeout_secs)
      throw ResourceCapError("saturation exceeded the time budget");
  };

  std::shared_ptr<ChainFamily> lower;
  for (int len = 1; len <= n; ++len) {
    auto fam = std::make_shared<ChainFamily>();
    fam->level = 2;
    fam->length = len;
    fam->alphabet = beta.alpha().alphabet;
    fam->lower = lower;
    fam->l_bound = rank_bound_string(m.size, beta.num_letters(), len);

    FamilyMap f = initial_family(beta, len);
    int iterations = 0;
    if (len >= 2) {
      for (;;) {
        FamilyMap next = sat_step(beta.alpha().target, f, len, lower, schedule);
        ++iterations;
        check_limits(count_sets(next));
        if (families_equal(next, f)) break;
        f = std::move(next);
      }
    }
    fam->families = std::move(f);
    fam->iterations = iterations;
    lower = fam;
    log_trace("saturated length " + std::to_string(len) + " in " + std::to_string(iterations) +
              " passes, " + std::to_string(lower->total_sets()) + " maximal sets");
  }
  return lower;
}

bool chain_member(const ChainFamily& family, const Chain& chain, std::optional<AlphaSet> b) {
  if (static_cast<int>(chain.size()) != family.length)
    throw InputError("chain length does not match the family length");
  return family.find_entry(chain, b) != nullptr;
}

std::vector<Chain> level1_chains(const ContentMorphism& beta) {
  const auto& m = beta.monoid();
  std::set<Chain> pairs;

  for (Element s : beta.image_elements()) pairs.insert(Chain{s, s});

  const int na = beta.num_letters();
  for (AlphaSet b = 0; b < (AlphaSet{1} << na); ++b) {
    // alpha(B*): submonoid generated by the letter images of B.
    std::vector<Element> sub{m.unit};
    std::set<Element> seen{m.unit};
    for (std::size_t i = 0; i < sub.size(); ++i)
      for (int a = 0; a < na; ++a)
        if (b & (AlphaSet{1} << a)) {
          Element e = m.mult(sub[i], beta.alpha().letter_image[a]);
          if (seen.insert(e).second) sub.push_back(e);
        }
    for (Element r : beta.image_with_content(b))
      for (Element s : cyclic_part(m, r))
        for (Element t : sub) pairs.insert(Chain{t, s});
  }

  // Close under componentwise products.
  std::vector<Chain> worklist(pairs.begin(), pairs.end());
  while (!worklist.empty()) {
    std::vector<Chain> fresh;
    for (const auto& p : worklist)
      for (const auto& q : pairs) {
        Chain pq{m.mult(p[0], q[0]), m.mult(p[1], q[1])};
        Chain qp{m.mult(q[0], p[0]), m.mult(q[1], p[1])};
        if (!pairs.count(pq)) fresh.push_back(pq);
        if (!pairs.count(qp)) fresh.push_back(qp);
      }
    for (const auto& c : fresh) pairs.insert(c);
    worklist = std::move(fresh);
  }
  return std::vector<Chain>(pairs.begin(), pairs.end());
}

std::string rank_bound_string(int monoid_size, int num_letters, int n) {
  namespace mp = boost::multiprecision;
  mp::cpp_int coeff = 3;
  coeff *= monoid_size;
  coeff *= num_letters;
  coeff *= n;
  // inner exponent: 2 * |M|^n
  mp::cpp_int inner = 2;
  for (int i = 0; i < n; ++i) inner *= monoid_size;
  if (inner <= 20) {
    mp::cpp_int tower = mp::cpp_int(1) << static_cast<unsigned>(1u << inner.convert_to<unsigned>());
    mp::cpp_int bound = coeff * tower;
    return bound.str();
  }
  return coeff.str() + "*2^(2^" + inner.str() + ")";
}

nlohmann::json dump_chain_family(const ChainFamily& family, std::optional<AlphaSet> b) {
  nlohmann::json j;
  j["level"] = family.level;
  j["length"] = family.length;
  j["iterations"] = family.iterations;
  j["l_bound"] = family.l_bound;
  nlohmann::json fams = nlohmann::json::object();
  for (const auto& [set_b, entries] : family.families) {
    if (b && *b != set_b) continue;
    std::vector<std::vector<Chain>> sets;
    for (const auto& e : entries) sets.push_back(e.set.chains);
    std::sort(sets.begin(), sets.end());
    fams[alpha_set_to_string(set_b, family.alphabet)] = sets;
  }
  j["families"] = fams;
  return j;
}

namespace {

void render_derivation(const Derivation& d, const std::vector<char>& alphabet,
                       std::string& out) {
  switch (d.kind) {
    case Derivation::Kind::Initial:
      out += "initial(e" + std::to_string(d.element) + ", {" +
             alpha_set_to_string(d.content, alphabet) + "}, \"" + d.witness + "\")";
      break;
    case Derivation::Kind::Product:
      out += "product(";
      render_derivation(*d.left, alphabet, out);
      out += ", ";
      render_derivation(*d.right, alphabet, out);
      out += ")";
      break;
    case Derivation::Kind::Operation:
      out += "operation(";
      render_derivation(*d.context, alphabet, out);
      out += "^" + std::to_string(d.context_exponent) + ", {" +
             alpha_set_to_string(d.content, alphabet) + "})";
      break;
  }
}

}  // namespace

std::string derivation_to_string(const Derivation& d, const std::vector<char>& alphabet) {
  std::string out;
  render_derivation(d, alphabet, out);
  return out;
}

}  // namespace altlab
