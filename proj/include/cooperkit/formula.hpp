#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cooperkit {

// Connectives known to the toolkit. The first four are the primitive OL
// connectives; the rest are derived and expand by macro (see macros.hpp).
// Half/One/Zero are nullary.
enum class Conn : std::uint8_t {
  Neg,
  And,
  Or,
  Imp,
  Dia,   // <>   diamond
  DImp,  // =>
  Hook,  // >>
  Cup,   // cup
  Cap,   // cap
  CVee,  // cvee
  Iff,   // <->
  Half,
  One,
  Zero,
};

inline constexpr int kConnCount = 14;

int defaultArity(Conn c);
bool isPrimitive(Conn c);
// Short identifier used by --sig and in JSON dumps ("neg", "imp", ...).
std::string_view connName(Conn c);
std::optional<Conn> connFromName(std::string_view name);

class SignatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Finite set of connectives with declared arities. Names are unique.
class Signature {
 public:
  struct Entry {
    Conn conn;
    int arity;
  };

  Signature() = default;
  explicit Signature(std::vector<Entry> entries);

  // {neg, or, and, imp}
  static Signature ol();
  // Comma separated connective names, e.g. "neg,imp".
  static Signature parse(std::string_view csv);

  bool contains(Conn c) const;
  std::optional<int> arityOf(Conn c) const;
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::string toString() const;

 private:
  std::vector<Entry> entries_;
};

class Formula;
using Substitution = std::map<std::string, Formula>;

// Immutable formula tree with shared structure. Copies are cheap.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula app(Conn c, std::vector<Formula> args);

  bool isVar() const { return node_->isVar; }
  const std::string& name() const { return node_->name; }
  Conn conn() const { return node_->conn; }
  std::span<const Formula> args() const { return node_->args; }
  const Formula& arg(std::size_t i) const { return node_->args.at(i); }

  std::size_t hash() const { return node_->hash; }
  int height() const { return node_->height; }
  std::size_t size() const { return node_->size; }

  // True when every connective is one of neg/and/or/imp.
  bool isPrimitive() const { return node_->primitiveOnly; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    bool isVar = false;
    bool primitiveOnly = true;
    Conn conn = Conn::Neg;
    std::string name;
    std::vector<Formula> args;
    std::size_t hash = 0;
    std::size_t size = 1;
    int height = 0;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

using FormulaSet = std::set<Formula>;

// Builders for the primitive connectives.
Formula neg(Formula a);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula imp(Formula a, Formula b);
Formula mk(Conn c, Formula a);
Formula mk(Conn c, Formula a, Formula b);

FormulaSet subformulas(const Formula& f);
FormulaSet subformulas(std::span<const Formula> fs);
std::set<std::string> variables(const Formula& f);
std::set<std::string> variables(std::span<const Formula> fs);
// Connectives occurring anywhere in f.
std::set<Conn> connectives(const Formula& f);

// Homomorphic extension; variables missing from sigma are fixed.
Formula substitute(const Substitution& sigma, const Formula& f);
// Pointwise composition: (outer . inner)(p) = outer(inner(p)).
Substitution compose(const Substitution& outer, const Substitution& inner);

// ASCII rendering accepted back by parse().
std::string render(const Formula& f);
std::string render(std::span<const Formula> fs, std::string_view sep = ", ");

// All formulas over `vars` with height <= depth, each once, level by level
// (height 0 first) and within a level in signature order.
std::vector<Formula> enumerateFormulas(const Signature& sig, std::span<const std::string> vars,
                                       int depth);

// Structural first-order matching: extends `sigma` so that
// substitute(sigma, pattern) == target. Variables in `rigid` may only map to
// themselves. Returns false (sigma unspecified) on failure.
bool match(const Formula& pattern, const Formula& target, Substitution& sigma,
           const std::set<std::string>& rigid = {});

}  // namespace cooperkit
