#ifndef ALTLAB_REGEX_HPP
#define ALTLAB_REGEX_HPP

#include <string>
#include <string_view>
#include <vector>

#include "altlab/alphabet.hpp"

namespace altlab {

// Regular expression over a declared finite alphabet.
//
// Grammar: `+` union, juxtaposition concatenation, `*` star, `()` grouping,
// `_` the empty word, `#` the empty language. Letters are single characters
// from the declared alphabet. ASCII spaces and tabs are ignored.
struct RegexAst {
  enum class Kind { EmptyLang, EmptyWord, Letter, Union, Concat, Star };

  struct Node {
    Kind kind;
    char letter = '\0';       // Kind::Letter only
    int left = -1;            // Union/Concat: both; Star: left only
    int right = -1;
  };

  std::vector<char> alphabet;
  std::vector<Node> nodes;
  int root = -1;

  const Node& at(int id) const { return nodes[static_cast<std::size_t>(id)]; }
};

RegexAst parse_regex(std::string_view text, const std::vector<char>& alphabet);

// Renders the AST back to the grammar (fully parenthesized); used by
// diagnostics and tests.
std::string regex_to_string(const RegexAst& ast);

}  // namespace altlab

#endif
