#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cooperkit/formula.hpp"
#include "cooperkit/matrix.hpp"
#include "cooperkit/truth_value.hpp"

namespace cooperkit {

using Element = std::uint8_t;

// Operation table over {0..n-1}, row-major, first argument most significant.
struct Operation {
  int arity = 0;
  std::vector<Element> cells;

  Element at(std::span<const Element> args, std::size_t n) const;
};

class AlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Finite algebra whose operation symbols are connectives. Constants are
// nullary operations.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::vector<std::string> labels, std::map<Conn, Operation> ops);

  // The three-element algebra on {0, 1/2, 1} in the language {neg, and, or,
  // imp}; element i is valueAt(i).
  static FiniteAlgebra o3();
  static FiniteAlgebra fromMatrix(const Matrix& m);
  // O3 with ONE (c = 1) or ZERO (c = 0) as an extra constant.
  static FiniteAlgebra o3WithConstant(TruthValue c);
  // Two-element Boolean algebra {0, 1} in the same language.
  static FiniteAlgebra booleanAlgebra();

  std::size_t size() const { return labels_.size(); }
  const std::string& label(Element e) const { return labels_.at(e); }
  std::optional<Element> elementOf(std::string_view label) const;
  const std::map<Conn, Operation>& operations() const { return ops_; }
  bool hasOp(Conn c) const { return ops_.count(c) != 0; }
  const Operation& op(Conn c) const;

  FiniteAlgebra withOperation(Conn c, Operation op) const;
  // Restriction to a closed subset given as a bitmask.
  FiniteAlgebra subalgebra(std::uint32_t mask) const;

 private:
  std::vector<std::string> labels_;
  std::map<Conn, Operation> ops_;
};

using Assignment = std::map<std::string, Element>;

// Term semantics. Connectives without an operation are unfolded through
// their defining templates.
Element evalTerm(const FiniteAlgebra& alg, const Assignment& a, const Formula& term);

// Calls f on every assignment of `vars` (first variable most significant);
// stops early when f returns false.
void forEachAssignment(std::size_t n, const std::vector<std::string>& vars,
                       const std::function<bool(const Assignment&)>& f);

struct Equation {
  Formula lhs;
  Formula rhs;
};

struct QuasiEquation {
  std::vector<Equation> premises;
  Equation conclusion;
};

struct IdentityResult {
  bool holds = true;
  std::optional<Assignment> witness;
};

IdentityResult identityHolds(const FiniteAlgebra& alg, const Equation& eq);
IdentityResult quasiIdentityHolds(const FiniteAlgebra& alg, const QuasiEquation& q);

// Non-empty subsets closed under every operation, as sorted bitmasks.
std::vector<std::uint32_t> subuniverses(const FiniteAlgebra& alg);

// Partition given as a block index per element, blocks numbered in order of
// first occurrence.
using Partition = std::vector<int>;
std::vector<Partition> congruences(const FiniteAlgebra& alg);

// Operation-preserving bijections, as images of 0..n-1.
std::vector<std::vector<Element>> automorphisms(const FiniteAlgebra& alg);

std::string describeSubset(const FiniteAlgebra& alg, std::uint32_t mask);
std::string describePartition(const FiniteAlgebra& alg, const Partition& p);
std::string describeAssignment(const FiniteAlgebra& alg, const Assignment& a);

// One named check with its verdict and the evidence behind it.
struct CheckReport {
  std::string check;
  bool passed = false;
  std::string summary;
  std::vector<std::string> witnesses;
};

// p(x,y,y) = x and p(x,x,y) = y for every x, y (term over x, y, z).
CheckReport maltsevCheck(const FiniteAlgebra& alg, const Formula& term);
// Same identities for an arbitrary ternary operation.
CheckReport maltsevOperationCheck(const FiniteAlgebra& alg, const Operation& op);

// p(x,y,z) := (((x=>y) cap (z=>z)) => z) cap (((z=>y) cap (x=>x)) => x)
Formula maltsevTerm();

// t(x,y,z) = z if x = y, else x.
Operation discriminatorOperation(std::size_t n);

// Semilattice orders of and/or and the cap/cup lattice, plus the failure of
// absorption for and/or.
std::vector<CheckReport> orderStructureChecks(const FiniteAlgebra& alg);

// Unary-equation translation x |-> lhs(x) = rhs(x).
struct Tau {
  Formula lhs;
  Formula rhs;
};

// x |-> x = (x => x) and the two-formula rho {x => y, y => x}.
Tau defaultTau();
std::vector<Formula> defaultRho();
// x |-> x = (x -> x) with {x->y, y->x, ~x->~y, ~y->~x}.
Tau implicationTau();
std::vector<Formula> implicationRho();

// Designation lemma, ALG4 and a sampled ALG1 for (tau, rho). With
// expectAlg4 = false the ALG4 report passes when ALG4 fails, listing the
// witnessing pairs.
std::vector<CheckReport> algebraizabilityCheck(const Matrix& m, const Tau& tau,
                                               std::span<const Formula> rho,
                                               const std::string& label, bool expectAlg4 = true);

std::vector<CheckReport> holSoundnessCheck(const FiniteAlgebra& alg,
                                           const std::vector<bool>& designated);
std::vector<CheckReport> quasiEqPresentationCheck(const FiniteAlgebra& alg);

// Subuniverses, congruences, automorphisms and Maltsev term of O3 with the
// constant added; also that O3 itself has the proper subuniverse {1/2}.
std::vector<CheckReport> primalityEvidence(TruthValue addedConstant);

// Derived tables against the reference tables, and x & ONE as the J3
// possibility operator.
std::vector<CheckReport> derivedTablesCheck(const FiniteAlgebra& alg);

// Congruences, subuniverses and automorphisms of O3.
std::vector<CheckReport> structureChecks(const FiniteAlgebra& alg);

struct DiscriminatorSearch {
  bool found = false;
  std::optional<Formula> term;
  int depth = 0;
  std::size_t explored = 0;  // distinct term operations seen
};

// Two breadth-first searches over term operations, each deduplicated by
// value tables and bounded by maxDepth and `cap`: first a binary equality
// indicator e(x,y), then a selector f(u,x,z) with f(e(a,a),x,z) = z and
// f(e(a,b),x,z) = x. The result is f(e(x,y),x,z), re-checked on all triples.
DiscriminatorSearch discriminatorTermSearch(const FiniteAlgebra& alg, int maxDepth = 6,
                                            std::size_t cap = 200000);

// Named groups: all, designation, alg4, alg1, maltsev, orders, structure,
// hol, quasieq, tables, primality, discriminator.
std::vector<CheckReport> runAlgebraSuite(const std::string& which);
std::vector<std::string> algebraSuiteNames();

}  // namespace cooperkit
