#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cooperkit/formula.hpp"
#include "cooperkit/matrix.hpp"

namespace cooperkit {

// Multiple-conclusion rule Phi / Psi [Pi]. A non-empty fixedVars makes it an
// identity-instance rule: legal substitutions map those variables to
// themselves.
struct MCRule {
  std::string name;
  std::vector<Formula> antecedent;
  std::vector<Formula> succedent;
  std::set<std::string> fixedVars;

  std::set<std::string> vars() const;
  std::string toString() const;
};

class CalculusError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MCCalculus {
 public:
  MCCalculus(Signature sig, std::vector<MCRule> rules);

  const Signature& signature() const { return sig_; }
  const std::vector<MCRule>& rules() const { return rules_; }
  const MCRule* find(std::string_view name) const;

 private:
  Signature sig_;
  std::vector<MCRule> rules_;
};

// Union of the per-connective rule groups for the connectives of `sig`
// (groups for neg, imp, or, and; 3 + 6 + 11 + 8 rules). Requires neg.
MCCalculus solRules(const Signature& sig);

// solRules plus one explosion rule  p, ~p / (empty) [p]  per pool variable.
MCCalculus olRules(const Signature& sig, const std::set<std::string>& pool);

// Name of the identity-instance explosion rule for variable p.
std::string explosionRuleName(const std::string& var);

// Subformulas of the query, closed under one outer negation.
struct AnalyticUniverse {
  FormulaSet base;
  FormulaSet extended;

  static AnalyticUniverse of(std::span<const Formula> gamma, std::span<const Formula> pi);
};

struct RuleInstance {
  Substitution sigma;
  std::vector<Formula> antecedent;
  std::vector<Formula> succedent;
};

// Every legal instance of `rule` whose formulas all lie in
// universe.extended, in lexicographic substitution order.
std::vector<RuleInstance> instancesWithin(const MCRule& rule, const AnalyticUniverse& universe);

// Proof tree with accumulated labels. A node is a STAR node or carries a
// label; internal nodes record the applied rule and substitution.
struct ProofNode {
  struct Step {
    std::string rule;
    Substitution sigma;
  };

  bool star = false;
  FormulaSet label;
  std::optional<Step> step;
  std::vector<ProofNode> children;

  std::size_t nodeCount() const;
  // Rule names in pre-order.
  std::vector<std::string> ruleNames() const;
};

struct ProofCheck {
  bool ok = true;
  // Child indices from the root, e.g. "0/1"; "" is the root.
  std::string path;
  std::string violation;
};

ProofCheck checkProofTree(const MCCalculus& calculus, const ProofNode& tree,
                          std::span<const Formula> gamma, std::span<const Formula> pi);

struct ProveOptions {
  // After a successful decision, search for a smallest tree when the
  // extended universe has at most this many formulas.
  std::size_t minimizeUpTo = 14;
};

struct ProveResult {
  bool proved = false;
  std::optional<ProofNode> tree;
  std::size_t universeSize = 0;
  std::size_t instanceCount = 0;
};

// Decides Gamma |> Pi in the calculus using only formulas of the analytic
// universe. For OL-calculi the explosion rules must already cover the
// variables of the query (see olRulesFor).
ProveResult proveAnalytic(const MCCalculus& calculus, std::span<const Formula> gamma,
                          std::span<const Formula> pi, const ProveOptions& options = {});

// olRules with the pool taken from the variables of gamma and pi.
MCCalculus olRulesFor(const Signature& sig, std::span<const Formula> gamma,
                      std::span<const Formula> pi);

// A rule is sound iff its schema holds as a |> statement in the mode.
bool ruleIsSound(const MCRule& rule, const Matrix& m, ValuationMode mode);

}  // namespace cooperkit
