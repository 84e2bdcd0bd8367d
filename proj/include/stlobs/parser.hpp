#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stlobs/formula.hpp"

namespace stlobs {

/// Failure to turn text into a well-formed formula.
class ParseError : public std::runtime_error {
 public:
  enum class Code {
    syntax,           // unexpected token / character
    unknown_signal,   // identifier not among the declared signals
    bad_interval,     // a >= b, negative or non-integer bound
    nested_temporal,  // temporal operator inside a temporal operand
  };

  ParseError(Code code, std::size_t position, std::string message);

  Code code() const { return code_; }
  /// Zero-based byte offset into the formula text.
  std::size_t position() const { return position_; }
  const std::string& detail() const { return detail_; }

 private:
  Code code_;
  std::size_t position_;
  std::string detail_;
};

std::string_view to_string(ParseError::Code code);

/// Parses the concrete syntax documented in docs/grammar.md.
///
/// Precedence, loosest first: `->` (right associative), `|`, `&`,
/// `U[a,b]` (non-associative), then the prefix operators `!`, `G[a,b]` and
/// `F[a,b]`. Every identifier must be one of `signals`.
Formula parse(std::string_view text, const std::vector<std::string>& signals);

/// True for words the grammar reserves (`true`, `and`, ...); such names
/// cannot be declared as signals.
bool is_reserved_word(std::string_view name);

}  // namespace stlobs
