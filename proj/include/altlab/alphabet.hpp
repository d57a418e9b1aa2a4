#ifndef ALTLAB_ALPHABET_HPP
#define ALTLAB_ALPHABET_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "altlab/errors.hpp"

namespace altlab {

inline constexpr int kMaxAlphabet = 16;

// Subset of the declared alphabet, one bit per letter index.
using AlphaSet = std::uint32_t;

// Validates and normalizes a declared alphabet: non-empty, at most 16
// distinct printable letters, none of the reserved regex symbols.
std::vector<char> make_alphabet(std::string_view letters);

int letter_index(const std::vector<char>& alphabet, char c);

AlphaSet content_of(std::string_view word, const std::vector<char>& alphabet);

std::string alpha_set_to_string(AlphaSet set, const std::vector<char>& alphabet);

AlphaSet alpha_set_from_string(std::string_view letters,
                               const std::vector<char>& alphabet);

// All subsets of an alphabet of the given size, smallest first
// (by popcount, then numeric value). This is the fixed iteration order
// used everywhere a map over subsets is walked.
std::vector<AlphaSet> subsets_ascending(int num_letters);

}  // namespace altlab

#endif
