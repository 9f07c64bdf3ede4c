#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cooperkit/formula.hpp"
#include "cooperkit/macros.hpp"
#include "cooperkit/matrix.hpp"
#include "cooperkit/mc_calculus.hpp"

namespace cooperkit {

// Single-conclusion rule Phi / psi [Pi]. Axioms have no premises.
struct SCRule {
  std::string name;
  std::vector<Formula> premises;
  Formula conclusion;
  std::set<std::string> fixedVars;
  // Variable introduced by a translation (p0), if any.
  std::optional<std::string> freshVar;

  bool isAxiom() const { return premises.empty(); }
  std::set<std::string> vars() const;
  std::string toString() const;
};

class SCCalculus {
 public:
  SCCalculus(Signature sig, std::vector<SCRule> rules, Logic logic = Logic::SOL);

  const Signature& signature() const { return sig_; }
  const std::vector<SCRule>& rules() const { return rules_; }
  Logic logic() const { return logic_; }
  const SCRule* find(std::string_view name) const;

  // Expands derived connectives and rewrites primitives outside the
  // signature, giving the form in which rules are matched.
  Formula normalize(const Formula& f) const;

 private:
  Signature sig_;
  std::vector<SCRule> rules_;
  Logic logic_;
};

// A linear derivation. Steps without a justification are hypotheses.
struct SCStep {
  struct Justification {
    std::string rule;
    // May be partial or empty; missing bindings are inferred by matching.
    Substitution sigma;
    // Indices of earlier steps, in any order.
    std::vector<std::size_t> premises;
  };

  Formula formula;
  std::optional<Justification> by;
};

struct SCDerivation {
  std::vector<SCStep> steps;
};

struct SCCheck {
  bool ok = true;
  // Offending step, or -1 for whole-derivation problems.
  long step = -1;
  std::string violation;
};

// Binary connective template over the variables x and y, e.g. binaryOp(CVee).
Formula binaryOp(Conn c);
Formula applyBinary(const Formula& op, const Formula& a, const Formula& b);

// First of r, s, ..., z, p0, p1, ... not in `used`.
std::string freshVariable(const std::set<std::string>& used);

// Right fold psi1 (+) (psi2 (+) ...). Requires a non-empty list.
Formula foldRight(const Formula& op, std::span<const Formula> fs);

// {phi1..phim} => {psi1..psin} with the nested encoding and fresh p0.
Formula implicationEncoding(const Formula& op, std::span<const Formula> antecedent,
                            std::span<const Formula> succedent, const std::string& p0);

// Structural rules for (+) followed by one translated rule per MC rule.
SCCalculus oplusTranslate(const MCCalculus& calculus, const Formula& op, Logic logic = Logic::SOL);

// Modus ponens, K and S for the implication, then one axiom per MC rule.
SCCalculus impTranslate(const MCCalculus& calculus, const Formula& op, Logic logic = Logic::SOL);

enum class SCRoute { Auto, Vee, Imp };

// The single-conclusion calculus of a fragment. Auto takes the implication
// route when -> is available and the cvee route otherwise. OL calculi add
// explosion rules for the variables in `pool`.
SCCalculus scFragmentCalculus(const Signature& sig, Logic flavor, SCRoute route = SCRoute::Auto,
                              const std::set<std::string>& pool = {"p", "q", "r"});

// The schemes HOL1..HOL10 as formulas over p, q, r; <-> stays a macro node.
std::vector<Formula> holAxioms();

// HOL1..HOL10 over {neg, and, imp} with modus ponens.
SCCalculus holCalculus();

SCCheck scCheckDerivation(const SCCalculus& calculus, const SCDerivation& derivation,
                          std::span<const Formula> gamma, const Formula& goal);

// Formulas the bounded prover may conclude: normalized subformulas of the
// query and their negations, then `levels` rounds of closing under `op`
// with one argument from the base.
FormulaSet scUniverse(const SCCalculus& calculus, std::span<const Formula> gamma,
                      const Formula& goal, const std::optional<Formula>& op, int levels);

struct SCProveResult {
  enum class Status { Proved, Unknown };
  Status status = Status::Unknown;
  std::optional<SCDerivation> derivation;
  std::size_t derived = 0;  // formulas known when the search stopped
};

// Forward chaining restricted to `universe`. Unknown is not a refutation.
SCProveResult scProveBounded(const SCCalculus& calculus, std::span<const Formula> gamma,
                             const Formula& goal, const FormulaSet& universe,
                             std::size_t maxSteps = 10000);

// True iff the rule, after normalization, is a valid |- statement.
bool scRuleIsSound(const SCCalculus& calculus, const SCRule& rule, const Matrix& m,
                   ValuationMode mode);

// Names of the rules that carry K, S and modus ponens in a calculus.
struct DeductionRules {
  std::string k = "HOL1";
  std::string s = "HOL2";
  std::string mp = "MP";
};

// Turns a checked derivation of psi from gamma + {phi} into one of
// phi -> psi from gamma, with -> as the implication. Throws CalculusError
// if a step uses a rule with premises other than modus ponens.
SCDerivation deductionTransform(const SCCalculus& calculus, const SCDerivation& derivation,
                                const Formula& phi, const DeductionRules& names = {});

}  // namespace cooperkit
