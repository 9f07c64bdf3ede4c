#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "cooperkit/formula.hpp"

namespace cooperkit {

// Which logic a formula is read in. Only OL (bivalent valuations on
// variables) can define the constants ONE and ZERO.
enum class Logic { SOL, OL };

class MacroError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Reserved variables used inside constant macros. They are not valid
// surface identifiers, so they never clash with user variables.
inline constexpr const char* kHalfVar = "_c0";
inline constexpr const char* kOneVar = "_c1";

// Derived connective -> defining template over the variables x, y.
class MacroTable {
 public:
  struct Macro {
    int arity;
    Formula body;
  };

  // ◊x := ¬x→x; x⇒y := ¬x∨y; x⊃y := ◊x⇒y; x⊔y := ¬◊¬(x∨y) ∧ ((x→y)→◊y);
  // x⊓y := ¬(¬x⊔¬y); x⋎y := (x⇒y)⇒((y⇒x)⇒x); x↔y := (x→y)∧(y→x);
  // HALF := c→(¬c→c); ONE := c∨¬c; ZERO := ¬ONE.
  static const MacroTable& builtin();

  MacroTable() = default;
  // Throws MacroError if the definitions are cyclic or reference unknown macros.
  void define(Conn c, Formula body);
  const Macro* find(Conn c) const;
  void validate() const;

 private:
  std::map<Conn, Macro> macros_;
};

// Expands every derived connective until only neg/and/or/imp remain.
// Template variables are substituted simultaneously, so no capture occurs.
Formula expandDerived(const Formula& f, Logic logic = Logic::SOL,
                      const MacroTable& macros = MacroTable::builtin());

// Rewrites primitives missing from `target` using De Morgan duality
// (x∨y = ¬(¬x∧¬y), x∧y = ¬(¬x∨¬y)). Input must be macro free. Throws
// SignatureError if neither route is available.
Formula lowerTo(const Formula& f, const Signature& target);

// True if every connective of f (after no expansion) belongs to sig.
bool usesOnly(const Formula& f, const Signature& sig);

}  // namespace cooperkit
