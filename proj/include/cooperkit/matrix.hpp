#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cooperkit/formula.hpp"
#include "cooperkit/truth_value.hpp"

namespace cooperkit {

// k-ary operation on the three-element carrier, stored row-major with the
// first argument most significant (index = sum a_i * 3^(k-1-i)).
class Table {
 public:
  Table() = default;
  Table(int arity, std::vector<TruthValue> cells);

  int arity() const { return arity_; }
  TruthValue at(std::span<const TruthValue> args) const;
  TruthValue operator()(TruthValue a) const;
  TruthValue operator()(TruthValue a, TruthValue b) const;
  const std::vector<TruthValue>& cells() const { return cells_; }
  void set(std::span<const TruthValue> args, TruthValue v);

  friend bool operator==(const Table&, const Table&) = default;

 private:
  int arity_ = 0;
  std::vector<TruthValue> cells_;
};

class MatrixError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EnumerationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Three-valued logical matrix: tables for the connectives of a signature
// plus a designated subset.
class Matrix {
 public:
  Matrix(Signature sig, std::map<Conn, Table> tables, std::array<bool, 3> designated);

  // The OL-matrix over `sig`: primitives from Cooper's tables, derived
  // connectives from their defining terms, designated {1/2, 1}.
  // ONE/ZERO are rejected (not term-definable from the tables).
  static Matrix ol(const Signature& sig = Signature::ol());

  const Signature& signature() const { return sig_; }
  bool hasTable(Conn c) const { return tables_.count(c) != 0; }
  const Table& table(Conn c) const;
  bool isDesignated(TruthValue v) const { return designated_[index(v)]; }
  const std::array<bool, 3>& designated() const { return designated_; }

  // Copy with one table replaced (used to probe failure modes).
  Matrix withTable(Conn c, Table t) const;

 private:
  Signature sig_;
  std::map<Conn, Table> tables_;
  std::array<bool, 3> designated_;
};

enum class ValuationMode { All, Bivalent };

struct Valuation {
  std::map<std::string, TruthValue> values;
  ValuationMode mode = ValuationMode::All;

  TruthValue at(const std::string& var) const;
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

struct EnumerationLimits {
  // Exhaustive enumeration refuses inputs with more variables than this.
  int maxVars = 12;
};

// Homomorphic extension of v. Throws MatrixError on an unbound variable or a
// connective without a table.
TruthValue eval(const Matrix& m, const Valuation& v, const Formula& f);

struct TruthTable {
  std::vector<std::string> vars;
  ValuationMode mode = ValuationMode::All;
  // Rows in enumeration order (first variable most significant, 0 < 1/2 < 1).
  std::vector<std::pair<std::vector<TruthValue>, TruthValue>> rows;
};

TruthTable truthTableOf(const Matrix& m, const Formula& f, ValuationMode mode = ValuationMode::All,
                        EnumerationLimits limits = {});

struct ConsequenceVerdict {
  bool holds = false;
  std::optional<Valuation> countermodel;
};

// Phi |> Psi: no valuation of the given mode designates all of Phi and none
// of Psi. The reported countermodel is the first in enumeration order.
ConsequenceVerdict entailsMC(const Matrix& m, std::span<const Formula> premises,
                             std::span<const Formula> conclusions,
                             ValuationMode mode = ValuationMode::All, EnumerationLimits limits = {});

ConsequenceVerdict entailsSC(const Matrix& m, std::span<const Formula> premises,
                             const Formula& conclusion, ValuationMode mode = ValuationMode::All,
                             EnumerationLimits limits = {});

// Monadicity check for a set of one-variable formulas.
struct SeparatorReport {
  struct Pair {
    TruthValue first;
    TruthValue second;
    std::optional<Formula> separator;
  };
  bool ok = false;
  // Unordered pairs, written larger value first: (1/2,0), (1,0), (1,1/2).
  std::vector<Pair> pairs;
};

SeparatorReport isSeparatorSet(const Matrix& m, std::span<const Formula> separators);

// Pointwise criteria over all nine value pairs, with x bound to the
// alphabetically first variable of the template:
//   disjunction:  D(x (+) y)  <=>  D(x) or D(y)
//   implication:  D(x => y)   <=>  (D(x) implies D(y))
// These are sufficient (not necessary) for the quantified properties.
bool isSemanticDisjunction(const Matrix& m, const Formula& binaryTemplate);
bool isSemanticImplication(const Matrix& m, const Formula& binaryTemplate);

// Evaluates a two-variable template as a 3x3 table (x = first variable).
Table binaryTableOf(const Matrix& m, const Formula& binaryTemplate);

}  // namespace cooperkit
