#include "altlab/regex.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <iostream>

#include "altlab/errors.hpp"

namespace altlab {

LogLevel log_level() {
  const char* v = std::getenv("ALTLAB_LOG");
  if (v == nullptr) return LogLevel::Quiet;
  std::string s(v);
  if (s == "trace") return LogLevel::Trace;
  if (s == "info") return LogLevel::Info;
  return LogLevel::Quiet;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::cerr << "[altlab] " << msg << "\n";
}

void log_trace(const std::string& msg) {
  if (log_level() >= LogLevel::Trace) std::cerr << "[altlab] " << msg << "\n";
}

std::vector<char> make_alphabet(std::string_view letters) {
  if (letters.empty()) throw InputError("alphabet must be non-empty");
  if (letters.size() > kMaxAlphabet)
    throw InputError("alphabet has more than 16 letters");
  std::vector<char> out;
  for (char c : letters) {
    if (!std::isprint(static_cast<unsigned char>(c)) || std::isspace(static_cast<unsigned char>(c)))
      throw InputError("alphabet letters must be printable non-space characters");
    if (c == '+' || c == '*' || c == '(' || c == ')' || c == '_' || c == '#')
      throw InputError(std::string("alphabet letter '") + c + "' collides with a regex symbol");
    for (char prev : out)
      if (prev == c) throw InputError(std::string("duplicate alphabet letter '") + c + "'");
    out.push_back(c);
  }
  return out;
}

int letter_index(const std::vector<char>& alphabet, char c) {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == c) return static_cast<int>(i);
  throw InputError(std::string("letter '") + c + "' outside declared alphabet");
}

AlphaSet content_of(std::string_view word, const std::vector<char>& alphabet) {
  AlphaSet set = 0;
  for (char c : word) set |= AlphaSet{1} << letter_index(alphabet, c);
  return set;
}

std::string alpha_set_to_string(AlphaSet set, const std::vector<char>& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (set & (AlphaSet{1} << i)) out.push_back(alphabet[i]);
  return out;
}

AlphaSet alpha_set_from_string(std::string_view letters, const std::vector<char>& alphabet) {
  AlphaSet set = 0;
  for (char c : letters) set |= AlphaSet{1} << letter_index(alphabet, c);
  return set;
}

std::vector<AlphaSet> subsets_ascending(int num_letters) {
  std::vector<AlphaSet> out;
  out.reserve(std::size_t{1} << num_letters);
  for (AlphaSet s = 0; s < (AlphaSet{1} << num_letters); ++s) out.push_back(s);
  std::stable_sort(out.begin(), out.end(), [](AlphaSet a, AlphaSet b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

namespace {

// Recursive-descent parser for: expr := term ('+' term)*
//                               term := factor+
//                               factor := atom '*'*
//                               atom := letter | '_' | '#' | '(' expr ')'
class RegexParser {
public:
  RegexParser(std::string_view text, const std::vector<char>& alphabet)
      : text_(text), ast_{alphabet, {}, -1} {}

  RegexAst parse() {
    ast_.root = parse_expr();
    skip_space();
    if (pos_ < text_.size())
      throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    return std::move(ast_);
  }

private:
  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() { return text_[pos_]; }

  int add(RegexAst::Node n) {
    ast_.nodes.push_back(n);
    return static_cast<int>(ast_.nodes.size()) - 1;
  }

  bool starts_atom() {
    if (at_end()) return false;
    char c = peek();
    if (c == '+' || c == '*' || c == ')') return false;
    return true;
  }

  int parse_expr() {
    int node = parse_term();
    while (!at_end() && peek() == '+') {
      ++pos_;
      int rhs = parse_term();
      node = add({RegexAst::Kind::Union, '\0', node, rhs});
    }
    return node;
  }

  int parse_term() {
    int node = parse_factor();
    while (starts_atom()) {
      int rhs = parse_factor();
      node = add({RegexAst::Kind::Concat, '\0', node, rhs});
    }
    return node;
  }

  int parse_factor() {
    int node = parse_atom();
    while (!at_end() && peek() == '*') {
      ++pos_;
      node = add({RegexAst::Kind::Star, '\0', node, -1});
    }
    return node;
  }

  int parse_atom() {
    if (at_end()) throw ParseError("unexpected end of input, expected expression", pos_);
    char c = peek();
    if (c == '(') {
      ++pos_;
      int node = parse_expr();
      if (at_end() || peek() != ')')
        throw ParseError("unbalanced parenthesis, expected ')'", pos_);
      ++pos_;
      return node;
    }
    if (c == '_') {
      ++pos_;
      return add({RegexAst::Kind::EmptyWord, '\0', -1, -1});
    }
    if (c == '#') {
      ++pos_;
      return add({RegexAst::Kind::EmptyLang, '\0', -1, -1});
    }
    for (char letter : ast_.alphabet) {
      if (letter == c) {
        ++pos_;
        return add({RegexAst::Kind::Letter, c, -1, -1});
      }
    }
    throw ParseError(std::string("letter '") + c + "' outside declared alphabet", pos_);
  }

  std::string_view text_;
  RegexAst ast_;
  std::size_t pos_ = 0;
};

void render(const RegexAst& ast, int id, std::string& out) {
  const auto& n = ast.at(id);
  switch (n.kind) {
    case RegexAst::Kind::EmptyLang: out.push_back('#'); break;
    case RegexAst::Kind::EmptyWord: out.push_back('_'); break;
    case RegexAst::Kind::Letter: out.push_back(n.letter); break;
    case RegexAst::Kind::Union:
      out.push_back('(');
      render(ast, n.left, out);
      out.push_back('+');
      render(ast, n.right, out);
      out.push_back(')');
      break;
    case RegexAst::Kind::Concat:
      out.push_back('(');
      render(ast, n.left, out);
      render(ast, n.right, out);
      out.push_back(')');
      break;
    case RegexAst::Kind::Star:
      out.push_back('(');
      render(ast, n.left, out);
      out.push_back(')');
      out.push_back('*');
      break;
  }
}

}  // namespace

RegexAst parse_regex(std::string_view text, const std::vector<char>& alphabet) {
  if (alphabet.empty()) throw InputError("alphabet must be non-empty");
  if (alphabet.size() > kMaxAlphabet) throw InputError("alphabet has more than 16 letters");
  return RegexParser(text, alphabet).parse();
}

std::string regex_to_string(const RegexAst& ast) {
  std::string out;
  if (ast.root >= 0) render(ast, ast.root, out);
  return out;
}

}  // namespace altlab
