#include "altlab/dfa.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "altlab/errors.hpp"

namespace altlab {

std::vector<int> Dfa::final_states() const {
  std::vector<int> out;
  for (int q = 0; q < num_states; ++q)
    if (is_final[q]) out.push_back(q);
  return out;
}

bool dfa_accepts(const Dfa& dfa, std::string_view word) {
  int q = dfa.initial;
  for (char c : word) q = dfa.step(q, letter_index(dfa.alphabet, c));
  return dfa.is_final[q] != 0;
}

namespace {

// Thompson automaton with epsilon moves; single accept state per fragment.
struct Nfa {
  struct State {
    std::vector<int> eps;
    std::vector<std::pair<int, int>> moves;  // (letter, target)
  };
  std::vector<State> states;

  int fresh() {
    states.emplace_back();
    return static_cast<int>(states.size()) - 1;
  }
};

struct Fragment {
  int start, accept;
};

Fragment build_nfa(Nfa& nfa, const RegexAst& ast, int id) {
  const auto& node = ast.at(id);
  switch (node.kind) {
    case RegexAst::Kind::EmptyLang: {
      int s = nfa.fresh(), t = nfa.fresh();
      return {s, t};  // no path
    }
    case RegexAst::Kind::EmptyWord: {
      int s = nfa.fresh(), t = nfa.fresh();
      nfa.states[s].eps.push_back(t);
      return {s, t};
    }
    case RegexAst::Kind::Letter: {
      int s = nfa.fresh(), t = nfa.fresh();
      nfa.states[s].moves.emplace_back(letter_index(ast.alphabet, node.letter), t);
      return {s, t};
    }
    case RegexAst::Kind::Union: {
      Fragment a = build_nfa(nfa, ast, node.left);
      Fragment b = build_nfa(nfa, ast, node.right);
      int s = nfa.fresh(), t = nfa.fresh();
      nfa.states[s].eps = {a.start, b.start};
      nfa.states[a.accept].eps.push_back(t);
      nfa.states[b.accept].eps.push_back(t);
      return {s, t};
    }
    case RegexAst::Kind::Concat: {
      Fragment a = build_nfa(nfa, ast, node.left);
      Fragment b = build_nfa(nfa, ast, node.right);
      nfa.states[a.accept].eps.push_back(b.start);
      return {a.start, b.accept};
    }
    case RegexAst::Kind::Star: {
      Fragment a = build_nfa(nfa, ast, node.left);
      int s = nfa.fresh(), t = nfa.fresh();
      nfa.states[s].eps = {a.start, t};
      nfa.states[a.accept].eps.push_back(a.start);
      nfa.states[a.accept].eps.push_back(t);
      return {s, t};
    }
  }
  throw InternalInconsistencyError("unreachable regex node kind");
}

std::vector<int> eps_closure(const Nfa& nfa, std::vector<int> set) {
  std::vector<char> seen(nfa.states.size(), 0);
  std::vector<int> stack = set;
  for (int s : set) seen[s] = 1;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int t : nfa.states[s].eps) {
      if (!seen[t]) {
        seen[t] = 1;
        set.push_back(t);
        stack.push_back(t);
      }
    }
  }
  std::sort(set.begin(), set.end());
  return set;
}

Dfa subset_construction(const Nfa& nfa, int start, int accept,
                        const std::vector<char>& alphabet) {
  const int na = static_cast<int>(alphabet.size());
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> subsets;
  auto intern = [&](std::vector<int> s) {
    auto [it, inserted] = ids.emplace(std::move(s), static_cast<int>(subsets.size()));
    if (inserted) subsets.push_back(it->first);
    return it->second;
  };

  Dfa dfa;
  dfa.alphabet = alphabet;
  int init = intern(eps_closure(nfa, {start}));
  dfa.initial = init;
  for (std::size_t q = 0; q < subsets.size(); ++q) {
    for (int a = 0; a < na; ++a) {
      std::vector<int> next;
      for (int s : subsets[q])
        for (auto [letter, t] : nfa.states[s].moves)
          if (letter == a) next.push_back(t);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      dfa.delta.push_back(intern(eps_closure(nfa, std::move(next))));
    }
  }
  dfa.num_states = static_cast<int>(subsets.size());
  dfa.is_final.assign(dfa.num_states, 0);
  for (int q = 0; q < dfa.num_states; ++q)
    dfa.is_final[q] = std::binary_search(subsets[q].begin(), subsets[q].end(), accept) ? 1 : 0;
  return dfa;
}

}  // namespace

Dfa regex_to_min_dfa(const RegexAst& ast) {
  Nfa nfa;
  Fragment frag = build_nfa(nfa, ast, ast.root);
  Dfa dfa = subset_construction(nfa, frag.start, frag.accept, ast.alphabet);
  return minimize_dfa(dfa);
}

Dfa minimize_dfa(const Dfa& dfa) {
  const int na = static_cast<int>(dfa.alphabet.size());

  // Reachable states only.
  std::vector<int> order;
  std::vector<int> idx(dfa.num_states, -1);
  order.push_back(dfa.initial);
  idx[dfa.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int a = 0; a < na; ++a) {
      int t = dfa.step(order[i], a);
      if (idx[t] < 0) {
        idx[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }

  const int n = static_cast<int>(order.size());
  std::vector<int> cls(n);
  for (int q = 0; q < n; ++q) cls[q] = dfa.is_final[order[q]] ? 1 : 0;

  // Moore refinement until the partition is stable.
  int count = 2;
  for (;;) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> next(n);
    for (int q = 0; q < n; ++q) {
      std::vector<int> sig;
      sig.reserve(na + 1);
      sig.push_back(cls[q]);
      for (int a = 0; a < na; ++a) sig.push_back(cls[idx[dfa.step(order[q], a)]]);
      auto [it, ins] = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size()));
      (void)ins;
      next[q] = it->second;
    }
    int new_count = static_cast<int>(sig_ids.size());
    cls = std::move(next);
    if (new_count == count) break;
    count = new_count;
  }

  // Canonical renumbering: BFS over classes from the initial class.
  std::vector<int> canon(count, -1);
  std::vector<int> rep;  // representative original (reachable-index) state per canonical class
  auto visit = [&](int c, int q) {
    if (canon[c] < 0) {
      canon[c] = static_cast<int>(rep.size());
      rep.push_back(q);
    }
  };
  visit(cls[0], 0);
  for (std::size_t i = 0; i < rep.size(); ++i)
    for (int a = 0; a < na; ++a) {
      int t = idx[dfa.step(order[rep[i]], a)];
      visit(cls[t], t);
    }

  Dfa out;
  out.alphabet = dfa.alphabet;
  out.num_states = count;
  out.initial = canon[cls[0]];
  out.is_final.assign(count, 0);
  out.delta.assign(static_cast<std::size_t>(count) * na, 0);
  for (int c = 0; c < count; ++c) {
    int q = rep[c];
    out.is_final[c] = dfa.is_final[order[q]];
    for (int a = 0; a < na; ++a)
      out.delta[static_cast<std::size_t>(c) * na + a] = canon[cls[idx[dfa.step(order[q], a)]]];
  }
  return out;
}

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_state_id(const std::string& tok, int num_states, const char* where) {
  std::size_t used = 0;
  int v;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw InputError(std::string("invalid state id '") + tok + "' in " + where);
  }
  if (used != tok.size())
    throw InputError(std::string("invalid state id '") + tok + "' in " + where);
  if (v < 0 || v >= num_states)
    throw InputError("dangling state id " + tok + " in " + where);
  return v;
}

}  // namespace

Dfa parse_automaton(const std::string& text) {
  std::vector<char> alphabet;
  int num_states = -1;
  bool saw_alphabet = false, saw_states = false, saw_final = false;
  std::string initial_tok;
  std::vector<std::string> final_toks;
  std::vector<std::array<std::string, 3>> trans_toks;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = strip_comment(raw);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    auto rest = std::vector<std::string>(toks.begin() + 1, toks.end());
    if (head == "alphabet:") {
      if (saw_alphabet) throw InputError("duplicate section: alphabet");
      saw_alphabet = true;
      std::string letters;
      for (const auto& t : rest) {
        if (t.size() != 1) throw InputError("alphabet letters must be single characters");
        letters.push_back(t[0]);
      }
      alphabet = make_alphabet(letters);
    } else if (head == "states:") {
      if (saw_states) throw InputError("duplicate section: states");
      saw_states = true;
      if (rest.size() != 1) throw InputError("states: expects a single count");
      try {
        num_states = std::stoi(rest[0]);
      } catch (const std::exception&) {
        throw InputError("states: count must be a number");
      }
      if (num_states <= 0) throw InputError("states: count must be positive");
    } else if (head == "initial:") {
      if (!initial_tok.empty()) throw InputError("duplicate section: initial");
      if (rest.size() != 1) throw InputError("initial: expects a single state id");
      initial_tok = rest[0];
    } else if (head == "final:") {
      if (saw_final) throw InputError("duplicate section: final");
      saw_final = true;
      final_toks = rest;
    } else if (head == "trans:") {
      if (rest.size() != 3) throw InputError("trans: expects 'state letter state'");
      trans_toks.push_back({rest[0], rest[1], rest[2]});
    } else {
      throw InputError("unknown section '" + head + "'");
    }
  }

  if (!saw_alphabet) throw InputError("missing section: alphabet");
  if (!saw_states) throw InputError("missing section: states");
  if (initial_tok.empty()) throw InputError("missing section: initial");
  if (!saw_final) throw InputError("missing section: final");

  const int na = static_cast<int>(alphabet.size());
  const int initial = parse_state_id(initial_tok, num_states, "initial:");
  std::vector<int> delta(static_cast<std::size_t>(num_states) * na, -1);
  std::vector<char> is_final(num_states, 0);

  for (const auto& t : trans_toks) {
    int from = parse_state_id(t[0], num_states, "trans:");
    if (t[1].size() != 1) throw InputError("transition letter must be a single character");
    int a = letter_index(alphabet, t[1][0]);
    int to = parse_state_id(t[2], num_states, "trans:");
    auto& slot = delta[static_cast<std::size_t>(from) * na + a];
    if (slot >= 0)
      throw InputError("duplicate transition for state " + t[0] + " on letter " + t[1]);
    slot = to;
  }
  for (const auto& t : final_toks) is_final[parse_state_id(t, num_states, "final:")] = 1;

  // Complete with a sink if any transition is missing.
  bool partial = std::find(delta.begin(), delta.end(), -1) != delta.end();
  Dfa dfa;
  dfa.alphabet = alphabet;
  dfa.num_states = partial ? num_states + 1 : num_states;
  dfa.initial = initial;
  dfa.is_final.assign(dfa.num_states, 0);
  for (int q = 0; q < num_states; ++q) dfa.is_final[q] = is_final[q];
  dfa.delta.assign(static_cast<std::size_t>(dfa.num_states) * na, num_states);
  for (int q = 0; q < num_states; ++q)
    for (int a = 0; a < na; ++a) {
      int t = delta[static_cast<std::size_t>(q) * na + a];
      dfa.delta[static_cast<std::size_t>(q) * na + a] = t < 0 ? num_states : t;
    }
  return dfa;
}

Dfa complement_finals(const Dfa& dfa) {
  Dfa out = dfa;
  for (auto& f : out.is_final) f = f ? 0 : 1;
  return out;
}

}  // namespace altlab
