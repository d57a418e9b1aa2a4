#ifndef ALTLAB_DFA_HPP
#define ALTLAB_DFA_HPP

#include <string>
#include <string_view>
#include <vector>

#include "altlab/alphabet.hpp"
#include "altlab/regex.hpp"

namespace altlab {

// Complete deterministic finite automaton. The transition map is total;
// parsers add a sink state when the input machine is partial.
struct Dfa {
  std::vector<char> alphabet;
  int num_states = 0;
  int initial = 0;
  std::vector<char> is_final;  // indexed by state
  std::vector<int> delta;      // row-major: delta[state * |alphabet| + letter]

  int step(int state, int letter) const {
    return delta[static_cast<std::size_t>(state) * alphabet.size() +
                 static_cast<std::size_t>(letter)];
  }
  std::vector<int> final_states() const;
};

bool dfa_accepts(const Dfa& dfa, std::string_view word);

// Subset construction on a Thompson automaton for the AST, then
// minimization. The result is the minimal complete DFA of the language.
Dfa regex_to_min_dfa(const RegexAst& ast);

// Reachable-state pruning followed by partition refinement. State ids of
// the result are canonical (breadth-first from the initial state, letters
// in alphabet order), so equal languages give byte-identical machines.
Dfa minimize_dfa(const Dfa& dfa);

// Parses the line-oriented DFA text format:
//   alphabet: a b
//   states: 3
//   initial: 0
//   final: 1
//   trans: 0 a 1
// `#` starts a comment. Validates ids, completes with a sink if partial,
// does NOT minimize.
Dfa parse_automaton(const std::string& text);

// Same state graph, complemented accepting set.
Dfa complement_finals(const Dfa& dfa);

}  // namespace altlab

#endif
