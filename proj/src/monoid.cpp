#include "altlab/monoid.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include <nlohmann/json.hpp>

#include "altlab/errors.hpp"

namespace altlab {

std::string FiniteMonoid::name_of(Element e) const {
  if (e >= 0 && static_cast<std::size_t>(e) < names.size() && !names[e].empty())
    return names[e];
  return "e" + std::to_string(e);
}

void FiniteMonoid::validate() const {
  if (size <= 0 || table.size() != static_cast<std::size_t>(size) * size)
    throw InternalInconsistencyError("monoid table has wrong shape");
  for (Element x = 0; x < size; ++x) {
    if (mult(unit, x) != x || mult(x, unit) != x)
      throw InternalInconsistencyError("unit law fails at element " + std::to_string(x));
  }
  for (Element x = 0; x < size; ++x)
    for (Element y = 0; y < size; ++y)
      for (Element z = 0; z < size; ++z)
        if (mult(mult(x, y), z) != mult(x, mult(y, z)))
          throw InternalInconsistencyError("associativity fails");
}

void OrderRelation::validate(const FiniteMonoid& m) const {
  if (size != m.size || table.size() != static_cast<std::size_t>(size) * size)
    throw InternalInconsistencyError("order table has wrong shape");
  for (Element s = 0; s < size; ++s) {
    if (!leq(s, s)) throw InternalInconsistencyError("order not reflexive");
    for (Element t = 0; t < size; ++t) {
      if (s != t && leq(s, t) && leq(t, s))
        throw InternalInconsistencyError("order not antisymmetric");
      for (Element u = 0; u < size; ++u)
        if (leq(s, t) && leq(t, u) && !leq(s, u))
          throw InternalInconsistencyError("order not transitive");
    }
  }
  for (Element s = 0; s < size; ++s)
    for (Element t = 0; t < size; ++t) {
      if (!leq(s, t)) continue;
      for (Element s2 = 0; s2 < size; ++s2)
        for (Element t2 = 0; t2 < size; ++t2)
          if (leq(s2, t2) && !leq(m.mult(s, s2), m.mult(t, t2)))
            throw InternalInconsistencyError("order not compatible with multiplication");
    }
}

Element Morphism::image_of_letter(char c) const {
  return letter_image[letter_index(alphabet, c)];
}

Element Morphism::eval(std::string_view word) const {
  Element e = target->unit;
  for (char c : word) e = target->mult(e, image_of_letter(c));
  return e;
}

std::vector<Element> RecognizedLanguage::accepting_elements() const {
  std::vector<Element> out;
  for (Element e = 0; e < morphism.target->size; ++e)
    if (accepting[e]) out.push_back(e);
  return out;
}

ContentMorphism::ContentMorphism(Morphism alpha) : alpha_(std::move(alpha)) {
  const auto& m = *alpha_.target;
  const int na = static_cast<int>(alpha_.alphabet.size());
  const std::size_t masks = std::size_t{1} << na;
  reachable_.assign(static_cast<std::size_t>(m.size) * masks, 0);
  witness_.assign(static_cast<std::size_t>(m.size) * masks, std::string());

  auto at = [&](Element e, AlphaSet b) { return static_cast<std::size_t>(e) * masks + b; };

  // Breadth-first in length-lexicographic order: the first word reaching a
  // (element, content) pair is its shortest witness.
  std::deque<std::pair<Element, AlphaSet>> queue;
  reachable_[at(m.unit, 0)] = 1;
  queue.emplace_back(m.unit, 0);
  while (!queue.empty()) {
    auto [e, b] = queue.front();
    queue.pop_front();
    const std::string& w = witness_[at(e, b)];
    for (int a = 0; a < na; ++a) {
      Element e2 = m.mult(e, alpha_.letter_image[a]);
      AlphaSet b2 = b | (AlphaSet{1} << a);
      if (!reachable_[at(e2, b2)]) {
        reachable_[at(e2, b2)] = 1;
        witness_[at(e2, b2)] = w + alpha_.alphabet[a];
        queue.emplace_back(e2, b2);
      }
    }
  }
}

std::vector<Element> ContentMorphism::image_with_content(AlphaSet b) const {
  const std::size_t masks = std::size_t{1} << num_letters();
  std::vector<Element> out;
  for (Element e = 0; e < monoid().size; ++e)
    if (reachable_[static_cast<std::size_t>(e) * masks + b]) out.push_back(e);
  return out;
}

std::optional<std::string> ContentMorphism::witness_word(Element s, AlphaSet b) const {
  const std::size_t masks = std::size_t{1} << num_letters();
  if (!reachable_[static_cast<std::size_t>(s) * masks + b]) return std::nullopt;
  return witness_[static_cast<std::size_t>(s) * masks + b];
}

std::vector<Element> ContentMorphism::image_elements() const {
  const std::size_t masks = std::size_t{1} << num_letters();
  std::vector<Element> out;
  for (Element e = 0; e < monoid().size; ++e)
    for (AlphaSet b = 0; b < masks; ++b)
      if (reachable_[static_cast<std::size_t>(e) * masks + b]) {
        out.push_back(e);
        break;
      }
  return out;
}

namespace {

// Generated monoid of state transformations, with shortest witness words.
struct GeneratedMonoid {
  std::vector<std::vector<int>> transforms;
  std::vector<std::string> names;
  std::map<std::vector<int>, int> ids;
};

GeneratedMonoid generate_transition_monoid(const Dfa& dfa, int cap) {
  GeneratedMonoid g;
  const int na = static_cast<int>(dfa.alphabet.size());
  std::vector<std::vector<int>> letter_tf(na, std::vector<int>(dfa.num_states));
  for (int a = 0; a < na; ++a)
    for (int q = 0; q < dfa.num_states; ++q) letter_tf[a][q] = dfa.step(q, a);

  std::vector<int> identity(dfa.num_states);
  std::iota(identity.begin(), identity.end(), 0);
  g.ids.emplace(identity, 0);
  g.transforms.push_back(identity);
  g.names.push_back("_");

  for (std::size_t i = 0; i < g.transforms.size(); ++i) {
    for (int a = 0; a < na; ++a) {
      std::vector<int> next(dfa.num_states);
      for (int q = 0; q < dfa.num_states; ++q) next[q] = letter_tf[a][g.transforms[i][q]];
      auto [it, inserted] = g.ids.emplace(std::move(next), static_cast<int>(g.transforms.size()));
      if (inserted) {
        g.transforms.push_back(it->first);
        std::string name = g.names[i] == "_" ? std::string() : g.names[i];
        name.push_back(dfa.alphabet[a]);
        g.names.push_back(std::move(name));
        if (static_cast<int>(g.transforms.size()) > cap)
          throw ResourceCapError("syntactic monoid exceeds cap of " + std::to_string(cap) +
                                 " elements");
      }
    }
  }
  return g;
}

OrderRelation syntactic_order(const FiniteMonoid& m, const std::vector<char>& accepting) {
  OrderRelation ord;
  ord.size = m.size;
  ord.table.assign(static_cast<std::size_t>(m.size) * m.size, 0);
  for (Element s = 0; s < m.size; ++s)
    for (Element t = 0; t < m.size; ++t) {
      bool le = true;
      for (Element x = 0; x < m.size && le; ++x)
        for (Element y = 0; y < m.size; ++y)
          if (accepting[m.mult3(x, s, y)] && !accepting[m.mult3(x, t, y)]) {
            le = false;
            break;
          }
      ord.table[static_cast<std::size_t>(s) * m.size + t] = le ? 1 : 0;
    }
  return ord;
}

}  // namespace

RecognizedLanguage syntactic_morphism(const Dfa& dfa, int cap) {
  if (dfa.num_states <= 0) throw InputError("automaton has no states");
  {
    Dfa min = minimize_dfa(dfa);
    if (min.num_states != dfa.num_states)
      throw InputError("syntactic_morphism requires a minimal complete DFA");
  }

  GeneratedMonoid g = generate_transition_monoid(dfa, cap);
  const int size = static_cast<int>(g.transforms.size());

  auto m = std::make_shared<FiniteMonoid>();
  m->size = size;
  m->unit = 0;
  m->names = g.names;
  m->table.assign(static_cast<std::size_t>(size) * size, 0);
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y) {
      std::vector<int> comp(dfa.num_states);
      for (int q = 0; q < dfa.num_states; ++q) comp[q] = g.transforms[y][g.transforms[x][q]];
      m->table[static_cast<std::size_t>(x) * size + y] = g.ids.at(comp);
    }

  RecognizedLanguage lang;
  lang.morphism.target = m;
  lang.morphism.alphabet = dfa.alphabet;
  lang.morphism.letter_image.resize(dfa.alphabet.size());
  for (std::size_t a = 0; a < dfa.alphabet.size(); ++a) {
    std::vector<int> tf(dfa.num_states);
    for (int q = 0; q < dfa.num_states; ++q) tf[q] = dfa.step(q, static_cast<int>(a));
    lang.morphism.letter_image[a] = g.ids.at(tf);
  }
  lang.accepting.assign(size, 0);
  for (int x = 0; x < size; ++x)
    lang.accepting[x] = dfa.is_final[g.transforms[x][dfa.initial]] ? 1 : 0;
  lang.order = syntactic_order(*m, lang.accepting);
  return lang;
}

ProductRecognition product_morphism(const RecognizedLanguage& l1,
                                    const RecognizedLanguage& l2, int cap) {
  if (l1.morphism.alphabet != l2.morphism.alphabet)
    throw InputError("alphabet mismatch between the two languages");
  const auto& m1 = *l1.morphism.target;
  const auto& m2 = *l2.morphism.target;
  const int na = static_cast<int>(l1.morphism.alphabet.size());

  std::map<std::pair<Element, Element>, int> ids;
  std::vector<std::pair<Element, Element>> pairs;
  std::vector<std::string> names;
  ids.emplace(std::make_pair(m1.unit, m2.unit), 0);
  pairs.emplace_back(m1.unit, m2.unit);
  names.emplace_back("_");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (int a = 0; a < na; ++a) {
      std::pair<Element, Element> next{m1.mult(pairs[i].first, l1.morphism.letter_image[a]),
                                       m2.mult(pairs[i].second, l2.morphism.letter_image[a])};
      auto [it, inserted] = ids.emplace(next, static_cast<int>(pairs.size()));
      if (inserted) {
        pairs.push_back(next);
        std::string name = names[i] == "_" ? std::string() : names[i];
        name.push_back(l1.morphism.alphabet[a]);
        names.push_back(std::move(name));
        if (static_cast<int>(pairs.size()) > cap)
          throw ResourceCapError("product monoid exceeds cap of " + std::to_string(cap) +
                                 " elements");
      }
    }
  }

  const int size = static_cast<int>(pairs.size());
  auto m = std::make_shared<FiniteMonoid>();
  m->size = size;
  m->unit = 0;
  m->names = names;
  m->table.assign(static_cast<std::size_t>(size) * size, 0);
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y)
      m->table[static_cast<std::size_t>(x) * size + y] =
          ids.at({m1.mult(pairs[x].first, pairs[y].first),
                  m2.mult(pairs[x].second, pairs[y].second)});

  ProductRecognition out;
  out.morphism.target = m;
  out.morphism.alphabet = l1.morphism.alphabet;
  out.morphism.letter_image.resize(na);
  for (int a = 0; a < na; ++a)
    out.morphism.letter_image[a] =
        ids.at({l1.morphism.letter_image[a], l2.morphism.letter_image[a]});
  for (int x = 0; x < size; ++x) {
    if (l1.accepting[pairs[x].first]) out.accepting1.push_back(x);
    if (l2.accepting[pairs[x].second]) out.accepting2.push_back(x);
  }
  return out;
}

namespace {

// Index (first exponent entering the cycle) and period of the cyclic
// subsemigroup of s.
std::pair<long long, long long> cycle_shape(const FiniteMonoid& m, Element s) {
  std::vector<int> seen_at(m.size, -1);
  Element cur = s;
  long long exp = 1;
  while (seen_at[cur] < 0) {
    seen_at[cur] = static_cast<int>(exp);
    cur = m.mult(cur, s);
    ++exp;
  }
  long long index = seen_at[cur];
  long long period = exp - index;
  return {index, period};
}

Element power(const FiniteMonoid& m, Element s, long long e) {
  Element acc = m.unit;
  Element base = s;
  while (e > 0) {
    if (e & 1) acc = m.mult(acc, base);
    base = m.mult(base, base);
    e >>= 1;
  }
  return acc;
}

}  // namespace

Element omega_power(const FiniteMonoid& m, Element s) {
  auto [index, period] = cycle_shape(m, s);
  long long e = ((index + period - 1) / period) * period;
  return power(m, s, e);
}

long long monoid_exponent(const FiniteMonoid& m) {
  long long lcm_period = 1;
  long long max_index = 1;
  for (Element s = 0; s < m.size; ++s) {
    auto [index, period] = cycle_shape(m, s);
    lcm_period = std::lcm(lcm_period, period);
    max_index = std::max(max_index, index);
  }
  return ((max_index + lcm_period - 1) / lcm_period) * lcm_period;
}

std::vector<Element> cyclic_part(const FiniteMonoid& m, Element s) {
  auto [index, period] = cycle_shape(m, s);
  std::vector<Element> out;
  Element cur = power(m, s, index);
  for (long long j = 0; j < period; ++j) {
    out.push_back(cur);
    cur = m.mult(cur, s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RecognizedLanguage complement(const RecognizedLanguage& l) {
  RecognizedLanguage out = l;
  for (auto& f : out.accepting) f = f ? 0 : 1;
  if (out.order) {
    OrderRelation flipped = *out.order;
    for (Element s = 0; s < flipped.size; ++s)
      for (Element t = 0; t < flipped.size; ++t)
        flipped.table[static_cast<std::size_t>(s) * flipped.size + t] =
            l.order->leq(t, s) ? 1 : 0;
    out.order = flipped;
  }
  return out;
}

nlohmann::json dump_monoid(const RecognizedLanguage& l) {
  const auto& m = *l.morphism.target;
  nlohmann::json j;
  j["size"] = m.size;
  j["unit"] = m.unit;
  j["mult"] = m.table;
  nlohmann::json letters = nlohmann::json::object();
  for (std::size_t a = 0; a < l.morphism.alphabet.size(); ++a)
    letters[std::string(1, l.morphism.alphabet[a])] = l.morphism.letter_image[a];
  j["letters"] = letters;
  j["accepting"] = l.accepting_elements();
  nlohmann::json order = nlohmann::json::array();
  if (l.order) {
    for (Element s = 0; s < m.size; ++s)
      for (Element t = 0; t < m.size; ++t)
        if (l.order->leq(s, t)) order.push_back(nlohmann::json::array({s, t}));
  }
  j["order"] = order;
  std::vector<std::string> names;
  for (Element e = 0; e < m.size; ++e) names.push_back(m.name_of(e));
  j["names"] = names;
  return j;
}

RecognizedLanguage load_monoid(const nlohmann::json& j) {
  try {
    auto m = std::make_shared<FiniteMonoid>();
    m->size = j.at("size").get<int>();
    m->unit = j.at("unit").get<Element>();
    m->table = j.at("mult").get<std::vector<Element>>();
    if (j.contains("names")) m->names = j.at("names").get<std::vector<std::string>>();
    if (m->size <= 0 || m->table.size() != static_cast<std::size_t>(m->size) * m->size)
      throw InputError("monoid dump: mult table has wrong shape");
    for (Element e : m->table)
      if (e < 0 || e >= m->size) throw InputError("monoid dump: element id out of range");
    m->validate();

    RecognizedLanguage lang;
    lang.morphism.target = m;
    for (auto& [letter, image] : j.at("letters").items()) {
      if (letter.size() != 1) throw InputError("monoid dump: letters must be single characters");
      lang.morphism.alphabet.push_back(letter[0]);
      lang.morphism.letter_image.push_back(image.get<Element>());
    }
    lang.accepting.assign(m->size, 0);
    for (Element e : j.at("accepting").get<std::vector<Element>>()) {
      if (e < 0 || e >= m->size) throw InputError("monoid dump: accepting id out of range");
      lang.accepting[e] = 1;
    }
    if (j.contains("order") && !j.at("order").empty()) {
      OrderRelation ord;
      ord.size = m->size;
      ord.table.assign(static_cast<std::size_t>(m->size) * m->size, 0);
      for (const auto& pair : j.at("order")) {
        Element s = pair.at(0).get<Element>(), t = pair.at(1).get<Element>();
        if (s < 0 || s >= m->size || t < 0 || t >= m->size)
          throw InputError("monoid dump: order id out of range");
        ord.table[static_cast<std::size_t>(s) * m->size + t] = 1;
      }
      ord.validate(*m);
      lang.order = ord;
    }
    return lang;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("monoid dump: ") + e.what());
  } catch (const InternalInconsistencyError& e) {
    throw InputError(std::string("monoid dump: ") + e.what());
  }
}

}  // namespace altlab
