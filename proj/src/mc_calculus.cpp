#include "cooperkit/mc_calculus.hpp"

#include <algorithm>
#include <map>

#include "cooperkit/macros.hpp"
#include "cooperkit/parser.hpp"

namespace cooperkit {

namespace {

MCRule rule(std::string name, std::string_view ant, std::string_view succ) {
  return MCRule{std::move(name), parseList(ant), parseList(succ), {}};
}

std::vector<MCRule> negRules() {
  return {
      rule("rneg1", "p", "~~p"),
      rule("rneg2", "~~p", "p"),
      rule("rneg3", "", "p, ~p"),
  };
}

std::vector<MCRule> impRules() {
  return {
      rule("rimp1", "p, p -> q", "q"),
      rule("rimp2", "q", "p -> q"),
      rule("rimp3", "", "p, p -> q"),
      rule("rimp4", "p, ~(p -> q)", "~q"),
      rule("rimp5", "~q", "~(p -> q)"),
      rule("rimp6", "", "p, ~(p -> q)"),
  };
}

std::vector<MCRule> orRules() {
  return {
      rule("ror1", "", "~p, p | q"),
      rule("ror2", "", "~q, p | q"),
      rule("ror3", "~(p | q)", "~p"),
      rule("ror4", "~(p | q)", "~q"),
      rule("ror5", "~(p | q), p | q", "p"),
      rule("ror6", "~(p | q), p | q", "q"),
      rule("ror7", "~p, ~q", "~(p | q)"),
      rule("ror8", "~p, p | q", "q"),
      rule("ror9", "~q, p | q", "p"),
      rule("ror10", "p | q", "p, q"),
      rule("ror11", "p, q", "p | q"),
  };
}

std::vector<MCRule> andRules() {
  return {
      rule("rand1", "p & q", "p"),
      rule("rand2", "p & q", "q"),
      rule("rand3", "p, q", "p & q"),
      rule("rand4", "p & q, ~(p & q)", "~p"),
      rule("rand5", "p & q, ~(p & q)", "~q"),
      rule("rand6", "~p, ~q", "~(p & q)"),
      rule("rand7", "p", "p & q, ~q"),
      rule("rand8", "q", "p & q, ~p"),
  };
}

}  // namespace

std::set<std::string> MCRule::vars() const {
  auto out = variables(antecedent);
  for (const auto& v : variables(succedent)) out.insert(v);
  return out;
}

std::string MCRule::toString() const {
  std::string out = name + ": " + render(antecedent) + " / " + render(succedent);
  if (!fixedVars.empty()) {
    out += " [";
    bool first = true;
    for (const auto& v : fixedVars) {
      if (!first) out += ", ";
      out += v;
      first = false;
    }
    out += "]";
  }
  return out;
}

MCCalculus::MCCalculus(Signature sig, std::vector<MCRule> rules)
    : sig_(std::move(sig)), rules_(std::move(rules)) {
  for (const auto& r : rules_) {
    const auto vs = r.vars();
    for (const auto& v : r.fixedVars)
      if (!vs.count(v)) throw CalculusError("fixed variable '" + v + "' does not occur in " + r.name);
    for (const auto& f : r.antecedent)
      if (!usesOnly(f, sig_)) throw CalculusError("rule " + r.name + " leaves the signature");
    for (const auto& f : r.succedent)
      if (!usesOnly(f, sig_)) throw CalculusError("rule " + r.name + " leaves the signature");
  }
}

const MCRule* MCCalculus::find(std::string_view name) const {
  for (const auto& r : rules_)
    if (r.name == name) return &r;
  return nullptr;
}

MCCalculus solRules(const Signature& sig) {
  if (!sig.contains(Conn::Neg))
    throw CalculusError("the analytic calculi require negation in the signature");
  std::vector<MCRule> rules;
  auto append = [&](std::vector<MCRule> group) {
    for (auto& r : group) rules.push_back(std::move(r));
  };
  for (const auto& e : sig.entries()) {
    switch (e.conn) {
      case Conn::Neg: append(negRules()); break;
      case Conn::Imp: append(impRules()); break;
      case Conn::Or: append(orRules()); break;
      case Conn::And: append(andRules()); break;
      default:
        throw CalculusError("no rule group for connective '" + std::string(connName(e.conn)) + "'");
    }
  }
  // Keep the group order fixed (neg, imp, or, and) regardless of how the
  // signature lists its connectives.
  auto groupOf = [](const MCRule& r) {
    if (r.name.rfind("rneg", 0) == 0) return 0;
    if (r.name.rfind("rimp", 0) == 0) return 1;
    if (r.name.rfind("ror", 0) == 0) return 2;
    return 3;
  };
  std::stable_sort(rules.begin(), rules.end(),
                   [&](const MCRule& a, const MCRule& b) { return groupOf(a) < groupOf(b); });
  return MCCalculus(sig, std::move(rules));
}

std::string explosionRuleName(const std::string& var) { return "rexpl[" + var + "]"; }

MCCalculus olRules(const Signature& sig, const std::set<std::string>& pool) {
  auto base = solRules(sig);
  std::vector<MCRule> rules = base.rules();
  for (const auto& v : pool) {
    const auto p = Formula::var(v);
    rules.push_back(MCRule{explosionRuleName(v), {p, neg(p)}, {}, {v}});
  }
  return MCCalculus(sig, std::move(rules));
}

MCCalculus olRulesFor(const Signature& sig, std::span<const Formula> gamma,
                      std::span<const Formula> pi) {
  auto pool = variables(gamma);
  for (const auto& v : variables(pi)) pool.insert(v);
  return olRules(sig, pool);
}

AnalyticUniverse AnalyticUniverse::of(std::span<const Formula> gamma, std::span<const Formula> pi) {
  AnalyticUniverse u;
  u.base = subformulas(gamma);
  for (const auto& f : subformulas(pi)) u.base.insert(f);
  u.extended = u.base;
  for (const auto& f : u.base) u.extended.insert(neg(f));
  return u;
}

std::vector<RuleInstance> instancesWithin(const MCRule& r, const AnalyticUniverse& universe) {
  std::vector<Formula> patterns(r.antecedent);
  patterns.insert(patterns.end(), r.succedent.begin(), r.succedent.end());
  // Most constrained patterns first.
  std::stable_sort(patterns.begin(), patterns.end(),
                   [](const Formula& a, const Formula& b) { return a.size() > b.size(); });

  const std::vector<Formula> pool(universe.extended.begin(), universe.extended.end());
  std::vector<RuleInstance> out;
  Substitution sigma;

  auto legal = [&](const Substitution& s) {
    for (const auto& v : r.fixedVars) {
      auto it = s.find(v);
      if (it != s.end() && !(it->second == Formula::var(v))) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t k, const Substitution& current) -> void {
    if (k == patterns.size()) {
      if (!legal(current)) return;
      RuleInstance inst;
      inst.sigma = current;
      for (const auto& a : r.antecedent) inst.antecedent.push_back(substitute(current, a));
      for (const auto& s : r.succedent) inst.succedent.push_back(substitute(current, s));
      out.push_back(std::move(inst));
      return;
    }
    // Already determined by earlier bindings: just check membership.
    bool bound = true;
    for (const auto& v : variables(patterns[k]))
      if (!current.count(v)) bound = false;
    if (bound) {
      if (universe.extended.count(substitute(current, patterns[k]))) self(self, k + 1, current);
      return;
    }
    for (const auto& target : pool) {
      Substitution next = current;
      if (match(patterns[k], target, next, r.fixedVars)) self(self, k + 1, next);
    }
  };
  search(search, 0, sigma);

  // Lexicographic order on the images of the rule variables.
  const auto vars = r.vars();
  std::map<Formula, std::size_t> rank;
  for (std::size_t i = 0; i < pool.size(); ++i) rank.emplace(pool[i], i);
  auto key = [&](const RuleInstance& inst) {
    std::vector<std::size_t> k;
    for (const auto& v : vars) {
      auto it = inst.sigma.find(v);
      k.push_back(it == inst.sigma.end() ? 0 : rank.at(it->second));
    }
    return k;
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const RuleInstance& a, const RuleInstance& b) { return key(a) < key(b); });
  return out;
}

std::size_t ProofNode::nodeCount() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.nodeCount();
  return n;
}

std::vector<std::string> ProofNode::ruleNames() const {
  std::vector<std::string> out;
  auto walk = [&](auto&& self, const ProofNode& n) -> void {
    if (n.step) out.push_back(n.step->rule);
    for (const auto& c : n.children) self(self, c);
  };
  walk(walk, *this);
  return out;
}

namespace {

ProofCheck violation(const std::string& path, std::string what) { return {false, path, std::move(what)}; }

ProofCheck checkNode(const MCCalculus& calculus, const ProofNode& n, const FormulaSet& pi,
                     const std::string& path) {
  auto childPath = [&](std::size_t i) {
    return path.empty() ? std::to_string(i) : path + "/" + std::to_string(i);
  };
  if (n.star) {
    if (!n.children.empty() || n.step) return violation(path, "star node must be a leaf");
    return {};
  }
  if (n.children.empty()) {
    if (n.step) return violation(path, "leaf records a rule application");
    for (const auto& f : n.label)
      if (pi.count(f)) return {};
    return violation(path, "leaf label does not meet the goal set");
  }
  if (!n.step) return violation(path, "internal node without rule application");
  const MCRule* r = calculus.find(n.step->rule);
  if (!r) return violation(path, "unknown rule '" + n.step->rule + "'");
  for (const auto& v : r->fixedVars) {
    auto it = n.step->sigma.find(v);
    if (it != n.step->sigma.end() && !(it->second == Formula::var(v)))
      return violation(path, "substitution moves fixed variable '" + v + "' of " + r->name);
  }
  for (const auto& a : r->antecedent) {
    const auto inst = substitute(n.step->sigma, a);
    if (!n.label.count(inst))
      return violation(path, "antecedent " + render(inst) + " of " + r->name + " not in label");
  }
  FormulaSet succ;
  for (const auto& s : r->succedent) succ.insert(substitute(n.step->sigma, s));
  if (succ.empty()) {
    if (n.children.size() != 1 || !n.children[0].star)
      return violation(path, r->name + " has empty succedent: expected a single star child");
    return checkNode(calculus, n.children[0], pi, childPath(0));
  }
  if (n.children.size() != succ.size())
    return violation(path, r->name + " expects " + std::to_string(succ.size()) + " children, found " +
                               std::to_string(n.children.size()));
  FormulaSet introduced;
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    const auto& c = n.children[i];
    if (c.star) return violation(childPath(i), "unexpected star child");
    // child label = parent label + exactly one succedent formula
    std::optional<Formula> added;
    for (const auto& f : succ) {
      FormulaSet expected = n.label;
      expected.insert(f);
      if (expected == c.label && !introduced.count(f)) {
        added = f;
        break;
      }
    }
    if (!added)
      return violation(childPath(i), "child label is not parent label plus one succedent formula");
    introduced.insert(*added);
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    auto res = checkNode(calculus, n.children[i], pi, childPath(i));
    if (!res.ok) return res;
  }
  return {};
}

}  // namespace

ProofCheck checkProofTree(const MCCalculus& calculus, const ProofNode& tree,
                          std::span<const Formula> gamma, std::span<const Formula> pi) {
  if (tree.star) return violation("", "root cannot be a star node");
  for (const auto& g : gamma)
    if (!tree.label.count(g)) return violation("", "root label misses premise " + render(g));
  const FormulaSet goal(pi.begin(), pi.end());
  return checkNode(calculus, tree, goal, "");
}

bool ruleIsSound(const MCRule& r, const Matrix& m, ValuationMode mode) {
  return entailsMC(m, r.antecedent, r.succedent, mode).holds;
}

}  // namespace cooperkit
