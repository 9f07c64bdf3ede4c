#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cooperkit/formula.hpp"

namespace cooperkit {

// Thrown for malformed input. `position()` is a 0-based byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar (high to low precedence):
//   prefix  ~ <>
//   & cap                       left assoc
//   | cup cvee                  left assoc
//   -> => >>                    right assoc
//   <->                         left assoc
// Atoms: variables [a-z][a-zA-Z0-9_]*, constants HALF ONE ZERO, parentheses.
//
// Primitive connectives must belong to `sig` (declared arity must match);
// derived connectives are kept as macro nodes.
Formula parse(std::string_view text, const Signature& sig = Signature::ol());

// Comma separated list; empty or blank text yields the empty list.
std::vector<Formula> parseList(std::string_view text, const Signature& sig = Signature::ol());

}  // namespace cooperkit
