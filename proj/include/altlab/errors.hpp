#ifndef ALTLAB_ERRORS_HPP
#define ALTLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace altlab {

// Bad user input: malformed regex/automaton text, mismatched alphabets,
// unknown chains, out-of-range ids. CLI exit code 2.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Syntax error in regex or automaton text, with a byte offset into the input.
class ParseError : public InputError {
public:
  ParseError(const std::string& what, std::size_t offset)
      : InputError(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

// A configured cap was hit (monoid size, number of maximal sets, game
// budget, wall clock). CLI exit code 3.
class ResourceCapError : public std::runtime_error {
public:
  explicit ResourceCapError(const std::string& what)
      : std::runtime_error(what) {}
};

// A self-check failed; this signals an implementation bug, not a
// recoverable input condition. CLI exit code 4.
class InternalInconsistencyError : public std::logic_error {
public:
  explicit InternalInconsistencyError(const std::string& what)
      : std::logic_error(what) {}
};

// Diagnostics level, controlled by the ALTLAB_LOG environment variable
// (quiet, info, trace). Messages go to stderr.
enum class LogLevel { Quiet = 0, Info = 1, Trace = 2 };

LogLevel log_level();
void log_info(const std::string& msg);
void log_trace(const std::string& msg);

}  // namespace altlab

#endif
