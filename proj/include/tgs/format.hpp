#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "tgs/semiring.hpp"

namespace tgs {

/// Reads a structure file.
///
///     # comment
///     order 6
///     gamma 1
///     axioms commutativity=swap12 zero_absorption=all-slots ...
///     add
///     <order rows of order labels>
///     ternary
///     <order*gamma*order*gamma*order labels, flat index order>
///
/// `ternary1` may replace `ternary`: a one-parameter table of
/// order*gamma*order*order labels indexed ((a*g + gamma)*n + b)*n + c; it is
/// loaded with beta pinned to label 0 and repeated for every other beta.
/// Whitespace and line breaks inside a table are free-form.
GammaSemiring parse_structure(std::string_view text);

/// Canonical rendering: fixed key order, one add row per line, one line of
/// `order` entries per (a, alpha, b, beta) prefix of the ternary table.
std::string serialize_structure(const GammaSemiring& s);

/// FNV-1a over order, gamma, axiom config and both flat tables; 16 hex digits.
std::string structure_hash(const GammaSemiring& s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

namespace detail {

/// Whitespace tokenizer with `#` comments and line tracking.
class TokenStream {
 public:
  explicit TokenStream(std::string_view text);

  bool at_end() const noexcept { return pos_ >= tokens_.size(); }
  const std::string& peek() const;
  std::size_t line() const;
  std::string next(std::string_view what);
  std::uint64_t next_uint(std::string_view what);
  /// Remaining tokens on the current token's line.
  std::vector<std::string> rest_of_line();
  [[noreturn]] void fail(const std::string& message) const;

 private:
  struct Token {
    std::string text;
    std::size_t line;
  };
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

}  // namespace tgs
