#ifndef ALTLAB_MONOID_HPP
#define ALTLAB_MONOID_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "altlab/alphabet.hpp"
#include "altlab/dfa.hpp"

namespace altlab {

using Element = int;

inline constexpr int kDefaultMonoidCap = 64;

// Finite monoid with a total multiplication table. Elements are ids
// 0..size-1; `names` holds a shortest representative word per element
// ("_" for the unit / empty word) when the monoid was built from a
// morphism.
struct FiniteMonoid {
  int size = 0;
  Element unit = 0;
  std::vector<Element> table;  // row-major size*size
  std::vector<std::string> names;

  Element mult(Element a, Element b) const {
    return table[static_cast<std::size_t>(a) * size + b];
  }
  Element mult3(Element a, Element b, Element c) const {
    return mult(mult(a, b), c);
  }
  std::string name_of(Element e) const;

  // Exhaustive associativity and unit-law check; throws
  // InternalInconsistencyError on failure. Intended for size <= 64.
  void validate() const;
};

// Partial order on a monoid's elements, compatible with multiplication.
struct OrderRelation {
  int size = 0;
  std::vector<char> table;  // row-major; table[s*size+t] iff s <= t

  bool leq(Element s, Element t) const {
    return table[static_cast<std::size_t>(s) * size + t] != 0;
  }
  // Reflexivity, antisymmetry, transitivity, and compatibility with the
  // given multiplication; throws InternalInconsistencyError on failure.
  void validate(const FiniteMonoid& m) const;
};

// Monoid morphism A* -> M given by letter images.
struct Morphism {
  std::shared_ptr<const FiniteMonoid> target;
  std::vector<char> alphabet;
  std::vector<Element> letter_image;  // aligned with alphabet

  Element image_of_letter(char c) const;
  Element eval(std::string_view word) const;
};

// A language given algebraically: morphism plus accepting set, with the
// syntactic order when the language was built as syntactic.
struct RecognizedLanguage {
  Morphism morphism;
  std::vector<char> accepting;  // indexed by element
  std::optional<OrderRelation> order;

  bool accepts_element(Element e) const { return accepting[static_cast<std::size_t>(e)] != 0; }
  bool accepts(std::string_view word) const { return accepts_element(morphism.eval(word)); }
  std::vector<Element> accepting_elements() const;
};

// The morphism w -> (alpha(w), content(w)). Precomputes, for every
// (element, subalphabet) pair, reachability and a shortest witness word
// (ties broken length-lexicographically in alphabet order).
class ContentMorphism {
public:
  explicit ContentMorphism(Morphism alpha);

  const Morphism& alpha() const { return alpha_; }
  const FiniteMonoid& monoid() const { return *alpha_.target; }
  int num_letters() const { return static_cast<int>(alpha_.alphabet.size()); }

  // { alpha(w) : content(w) = B }, sorted.
  std::vector<Element> image_with_content(AlphaSet b) const;

  // Shortest word with image s and content exactly B, if any.
  std::optional<std::string> witness_word(Element s, AlphaSet b) const;

  // All elements reachable as images of words (the generated submonoid),
  // sorted.
  std::vector<Element> image_elements() const;

private:
  Morphism alpha_;
  // index: element * 2^|A| + mask
  std::vector<char> reachable_;
  std::vector<std::string> witness_;
};

// Transition monoid of a minimal complete DFA (= the syntactic ordered
// monoid), with accepting set and syntactic order. Throws InputError if the
// DFA is not minimal/complete, ResourceCapError past `cap` elements.
RecognizedLanguage syntactic_morphism(const Dfa& dfa, int cap = kDefaultMonoidCap);

// Morphism into the submonoid of M1 x M2 generated by the paired letter
// images, with the preimages of the two accepting sets.
struct ProductRecognition {
  Morphism morphism;
  std::vector<Element> accepting1;
  std::vector<Element> accepting2;
};
ProductRecognition product_morphism(const RecognizedLanguage& l1,
                                    const RecognizedLanguage& l2,
                                    int cap = kDefaultMonoidCap);

// The unique idempotent in {s, s^2, ...}.
Element omega_power(const FiniteMonoid& m, Element s);

// Smallest e >= 1 such that s^e is idempotent for every s.
long long monoid_exponent(const FiniteMonoid& m);

// {s^j : j >= index(s)}, the periodic part of the cyclic subsemigroup,
// sorted.
std::vector<Element> cyclic_part(const FiniteMonoid& m, Element s);

// Same minimal machine with complemented accepting set: monoid unchanged,
// accepting set complemented, order transposed.
RecognizedLanguage complement(const RecognizedLanguage& l);

// Dump/load of the monoid text format (JSON): size, unit, mult (row-major),
// order (list of pairs), letters, accepting, names.
nlohmann::json dump_monoid(const RecognizedLanguage& l);
RecognizedLanguage load_monoid(const nlohmann::json& j);

}  // namespace altlab

#endif
