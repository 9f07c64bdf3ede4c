#include "cooperkit/sc_calculus.hpp"

#include <algorithm>
#include <map>

#include "cooperkit/parser.hpp"

namespace cooperkit {

std::set<std::string> SCRule::vars() const {
  auto out = variables(premises);
  for (const auto& v : variables(conclusion)) out.insert(v);
  return out;
}

std::string SCRule::toString() const {
  std::string out = name + ": " + render(premises) + " / " + render(conclusion);
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

SCCalculus::SCCalculus(Signature sig, std::vector<SCRule> rules, Logic logic)
    : sig_(std::move(sig)), rules_(std::move(rules)), logic_(logic) {
  for (const auto& r : rules_) {
    const auto vs = r.vars();
    for (const auto& v : r.fixedVars)
      if (!vs.count(v)) throw CalculusError("fixed variable '" + v + "' does not occur in " + r.name);
  }
}

const SCRule* SCCalculus::find(std::string_view name) const {
  for (const auto& r : rules_)
    if (r.name == name) return &r;
  return nullptr;
}

Formula SCCalculus::normalize(const Formula& f) const {
  return lowerTo(expandDerived(f, logic_), sig_);
}

Formula binaryOp(Conn c) { return mk(c, Formula::var("x"), Formula::var("y")); }

Formula applyBinary(const Formula& op, const Formula& a, const Formula& b) {
  return substitute({{"x", a}, {"y", b}}, op);
}

std::string freshVariable(const std::set<std::string>& used) {
  for (char c = 'r'; c <= 'z'; ++c)
    if (!used.count(std::string(1, c))) return std::string(1, c);
  for (int i = 0;; ++i) {
    auto v = "p" + std::to_string(i);
    if (!used.count(v)) return v;
  }
}

Formula foldRight(const Formula& op, std::span<const Formula> fs) {
  if (fs.empty()) throw CalculusError("cannot fold an empty list");
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = applyBinary(op, fs[i], acc);
  return acc;
}

Formula implicationEncoding(const Formula& op, std::span<const Formula> antecedent,
                            std::span<const Formula> succedent, const std::string& p0) {
  const auto fresh = Formula::var(p0);
  Formula acc = fresh;
  for (std::size_t i = succedent.size(); i-- > 0;)
    acc = applyBinary(op, applyBinary(op, succedent[i], fresh), acc);
  for (std::size_t i = antecedent.size(); i-- > 0;) acc = applyBinary(op, antecedent[i], acc);
  return acc;
}

namespace {

Formula tmpl(std::string_view text) { return parse(text, Signature::ol()); }

SCRule scRule(std::string name, std::vector<Formula> premises, Formula conclusion,
              std::set<std::string> fixed = {}, std::optional<std::string> fresh = {}) {
  return SCRule{std::move(name), std::move(premises), std::move(conclusion), std::move(fixed),
                std::move(fresh)};
}

// Parses a schema written with cvee and puts `op` in its place.
Formula withOp(const Formula& op, std::string_view schema) {
  const Formula s = tmpl(schema);
  auto rewrite = [&](auto&& self, const Formula& f) -> Formula {
    if (f.isVar()) return f;
    std::vector<Formula> args;
    for (const auto& a : f.args()) args.push_back(self(self, a));
    if (f.conn() == Conn::CVee) return applyBinary(op, args[0], args[1]);
    return Formula::app(f.conn(), std::move(args));
  };
  return rewrite(rewrite, s);
}

}  // namespace

SCCalculus oplusTranslate(const MCCalculus& calculus, const Formula& op, Logic logic) {
  std::vector<SCRule> rules;
  rules.push_back(scRule("contr", {withOp(op, "p cvee p")}, tmpl("p")));
  rules.push_back(scRule("weak", {tmpl("p")}, withOp(op, "p cvee q")));
  rules.push_back(scRule("comm", {withOp(op, "p cvee q")}, withOp(op, "q cvee p")));
  rules.push_back(scRule("assoc", {withOp(op, "p cvee (q cvee r)")}, withOp(op, "(p cvee q) cvee r")));
  for (const auto& r : calculus.rules()) {
    if (r.antecedent.empty()) {
      if (r.succedent.empty()) throw CalculusError("rule " + r.name + " has no formulas");
      rules.push_back(scRule(r.name, {}, foldRight(op, r.succedent), r.fixedVars));
      continue;
    }
    const auto p0 = freshVariable(r.vars());
    const auto fresh = Formula::var(p0);
    std::vector<Formula> premises;
    for (const auto& a : r.antecedent) premises.push_back(applyBinary(op, a, fresh));
    Formula conclusion =
        r.succedent.empty() ? fresh : applyBinary(op, foldRight(op, r.succedent), fresh);
    rules.push_back(scRule(r.name, std::move(premises), std::move(conclusion), r.fixedVars, p0));
  }
  return SCCalculus(calculus.signature(), std::move(rules), logic);
}

SCCalculus impTranslate(const MCCalculus& calculus, const Formula& op, Logic logic) {
  std::vector<SCRule> rules;
  rules.push_back(scRule("MP", {tmpl("p"), withOp(op, "p cvee q")}, tmpl("q")));
  rules.push_back(scRule("K", {}, withOp(op, "p cvee (q cvee p)")));
  rules.push_back(scRule("S", {}, withOp(op, "(p cvee (q cvee r)) cvee ((p cvee q) cvee (p cvee r))")));
  for (const auto& r : calculus.rules()) {
    const auto p0 = freshVariable(r.vars());
    rules.push_back(scRule(r.name, {}, implicationEncoding(op, r.antecedent, r.succedent, p0),
                           r.fixedVars, p0));
  }
  return SCCalculus(calculus.signature(), std::move(rules), logic);
}

SCCalculus scFragmentCalculus(const Signature& sig, Logic flavor, SCRoute route,
                              const std::set<std::string>& pool) {
  if (!sig.contains(Conn::Neg))
    throw CalculusError("single-conclusion fragments require negation in the signature");
  const bool hasImp = sig.contains(Conn::Imp);
  const bool hasLattice = sig.contains(Conn::Or) || sig.contains(Conn::And);
  if (route == SCRoute::Auto) {
    if (hasImp) route = SCRoute::Imp;
    else if (hasLattice) route = SCRoute::Vee;
    else throw CalculusError("signature needs imp, or, or and alongside neg");
  }
  if (route == SCRoute::Imp && !hasImp)
    throw CalculusError("the implication route needs imp in the signature");
  if (route == SCRoute::Vee && !hasLattice)
    throw CalculusError("the cvee route needs or or and in the signature");

  const MCCalculus mc = flavor == Logic::OL ? olRules(sig, pool) : solRules(sig);
  if (route == SCRoute::Imp) return impTranslate(mc, binaryOp(Conn::Imp), flavor);
  return oplusTranslate(mc, binaryOp(Conn::CVee), flavor);
}

std::vector<Formula> holAxioms() {
  static const char* kAxioms[] = {
      "p -> (q -> p)",
      "(p -> (q -> r)) -> ((p -> q) -> (p -> r))",
      "((p -> q) -> p) -> p",
      "(p & q) -> p",
      "(p & q) -> q",
      "(p -> q) -> ((p -> r) -> (p -> (q & r)))",
      "~~p <-> p",
      "(p -> ~p) -> ~p",
      "((p -> ~q) & (q -> ~p)) <-> ~(p & q)",
      "~(p -> q) <-> (p -> ~q)",
  };
  std::vector<Formula> out;
  for (const char* a : kAxioms) out.push_back(tmpl(a));
  return out;
}

SCCalculus holCalculus() {
  std::vector<SCRule> rules;
  const auto axioms = holAxioms();
  for (std::size_t i = 0; i < axioms.size(); ++i)
    rules.push_back(scRule("HOL" + std::to_string(i + 1), {}, axioms[i]));
  rules.push_back(scRule("MP", {tmpl("p"), tmpl("p -> q")}, tmpl("q")));
  return SCCalculus(Signature({{Conn::Neg, 1}, {Conn::And, 2}, {Conn::Imp, 2}}), std::move(rules));
}

// ---------------------------------------------------------------------------
// Derivation checking

namespace {

struct NormalRule {
  const SCRule* rule;
  std::vector<Formula> premises;
  Formula conclusion;
};

NormalRule normalRule(const SCCalculus& calc, const SCRule& r) {
  NormalRule n{&r, {}, calc.normalize(r.conclusion)};
  for (const auto& p : r.premises) n.premises.push_back(calc.normalize(p));
  return n;
}

// Extends sigma so that the rule concludes `target` from exactly the
// formulas in `available` (each premise pattern matched by one of them and
// every available formula used). Returns nullopt if impossible.
std::optional<Substitution> inferSigma(const NormalRule& r, const Formula& target,
                                       const std::vector<Formula>& available, Substitution sigma) {
  if (!match(r.conclusion, target, sigma, r.rule->fixedVars)) return std::nullopt;
  std::vector<bool> used(available.size(), false);
  std::optional<Substitution> found;
  auto search = [&](auto&& self, std::size_t k, const Substitution& cur) -> void {
    if (found) return;
    if (k == r.premises.size()) {
      for (std::size_t i = 0; i < available.size(); ++i) {
        if (used[i]) continue;
        // Duplicated indices or repeated formulas are fine as long as each
        // available formula is some premise instance.
        bool covered = false;
        for (const auto& p : r.premises)
          if (substitute(cur, p) == available[i]) covered = true;
        if (!covered) return;
      }
      found = cur;
      return;
    }
    for (std::size_t i = 0; i < available.size(); ++i) {
      Substitution next = cur;
      if (!match(r.premises[k], available[i], next, r.rule->fixedVars)) continue;
      const bool was = used[i];
      used[i] = true;
      self(self, k + 1, next);
      used[i] = was;
      if (found) return;
    }
  };
  search(search, 0, sigma);
  return found;
}

Substitution normalizeSigma(const SCCalculus& calc, const Substitution& sigma) {
  Substitution out;
  for (const auto& [v, f] : sigma) out.emplace(v, calc.normalize(f));
  return out;
}

Substitution restrictTo(const Substitution& sigma, const std::set<std::string>& vars) {
  Substitution out;
  for (const auto& [v, f] : sigma)
    if (vars.count(v)) out.emplace(v, f);
  return out;
}

}  // namespace

SCCheck scCheckDerivation(const SCCalculus& calculus, const SCDerivation& derivation,
                          std::span<const Formula> gamma, const Formula& goal) {
  if (derivation.steps.empty()) return {false, -1, "empty derivation"};
  FormulaSet hyps;
  for (const auto& g : gamma) hyps.insert(calculus.normalize(g));
  std::vector<Formula> normal;
  for (std::size_t i = 0; i < derivation.steps.size(); ++i) {
    const auto& step = derivation.steps[i];
    const long at = static_cast<long>(i);
    try {
      normal.push_back(calculus.normalize(step.formula));
    } catch (const std::exception& e) {
      return {false, at, e.what()};
    }
    const Formula f = normal.back();
    if (!step.by) {
      if (!hyps.count(f)) return {false, at, render(step.formula) + " is not a hypothesis"};
      continue;
    }
    const SCRule* r = calculus.find(step.by->rule);
    if (!r) return {false, at, "unknown rule '" + step.by->rule + "'"};
    std::vector<Formula> available;
    for (auto k : step.by->premises) {
      if (k >= i) return {false, at, "premise index " + std::to_string(k) + " is not earlier"};
      available.push_back(normal[k]);
    }
    if (r->premises.empty() && !available.empty())
      return {false, at, r->name + " is an axiom but premises were cited"};
    if (!r->premises.empty() && available.empty())
      return {false, at, r->name + " needs premises"};
    for (const auto& v : r->fixedVars) {
      auto it = step.by->sigma.find(v);
      if (it != step.by->sigma.end() && !(it->second == Formula::var(v)))
        return {false, at, "substitution moves fixed variable '" + v + "' of " + r->name};
    }
    Substitution sigma;
    try {
      sigma = normalizeSigma(calculus, step.by->sigma);
    } catch (const std::exception& e) {
      return {false, at, e.what()};
    }
    if (!inferSigma(normalRule(calculus, *r), f, available, sigma))
      return {false, at, "not an instance of " + r->name + " from the cited premises"};
  }
  if (!(normal.back() == calculus.normalize(goal)))
    return {false, static_cast<long>(normal.size() - 1), "last formula is not the goal"};
  return {};
}

// ---------------------------------------------------------------------------
// Bounded forward search

FormulaSet scUniverse(const SCCalculus& calculus, std::span<const Formula> gamma,
                      const Formula& goal, const std::optional<Formula>& op, int levels) {
  std::vector<Formula> query;
  for (const auto& g : gamma) query.push_back(calculus.normalize(g));
  query.push_back(calculus.normalize(goal));
  FormulaSet base = subformulas(query);
  FormulaSet withNeg = base;
  if (calculus.signature().contains(Conn::Neg))
    for (const auto& f : base) withNeg.insert(neg(f));
  FormulaSet out = withNeg;
  if (!op) return out;
  const Formula nop = calculus.normalize(*op);
  FormulaSet frontier = withNeg;
  for (int l = 0; l < levels; ++l) {
    FormulaSet next;
    for (const auto& a : frontier)
      for (const auto& b : withNeg) {
        next.insert(applyBinary(nop, a, b));
        next.insert(applyBinary(nop, b, a));
      }
    for (const auto& f : next) out.insert(f);
    frontier = std::move(next);
  }
  return out;
}

SCProveResult scProveBounded(const SCCalculus& calculus, std::span<const Formula> gamma,
                             const Formula& goal, const FormulaSet& universe, std::size_t maxSteps) {
  struct Entry {
    Formula formula;
    std::optional<SCStep::Justification> by;
  };
  std::vector<Entry> steps;
  std::map<Formula, std::size_t> known;
  auto add = [&](const Formula& f, std::optional<SCStep::Justification> by) {
    if (known.count(f)) return;
    known.emplace(f, steps.size());
    steps.push_back({f, std::move(by)});
  };
  for (const auto& g : gamma) add(calculus.normalize(g), std::nullopt);
  const Formula target = calculus.normalize(goal);

  std::vector<NormalRule> rules;
  for (const auto& r : calculus.rules()) rules.push_back(normalRule(calculus, r));
  // Axioms first; within a rule, larger premise patterns first so that
  // matching binds the most variables early.
  for (auto& r : rules)
    std::stable_sort(r.premises.begin(), r.premises.end(),
                     [](const Formula& a, const Formula& b) { return a.size() > b.size(); });

  SCProveResult result;
  bool changed = true;
  while (!known.count(target) && changed && steps.size() < maxSteps) {
    changed = false;
    for (const auto& r : rules) {
      for (const auto& u : universe) {
        if (known.count(u)) continue;
        Substitution sigma;
        if (!match(r.conclusion, u, sigma, r.rule->fixedVars)) continue;
        std::optional<std::vector<std::size_t>> premIdx;
        std::vector<std::size_t> chosen;
        auto search = [&](auto&& self, std::size_t k, const Substitution& cur) -> void {
          if (premIdx) return;
          if (k == r.premises.size()) {
            sigma = cur;
            premIdx = chosen;
            return;
          }
          // Fully bound patterns are looked up directly.
          bool bound = true;
          for (const auto& v : variables(r.premises[k]))
            if (!cur.count(v)) bound = false;
          if (bound) {
            auto it = known.find(substitute(cur, r.premises[k]));
            if (it == known.end()) return;
            chosen.push_back(it->second);
            self(self, k + 1, cur);
            chosen.pop_back();
            return;
          }
          for (const auto& [f, idx] : known) {
            Substitution next = cur;
            if (!match(r.premises[k], f, next, r.rule->fixedVars)) continue;
            chosen.push_back(idx);
            self(self, k + 1, next);
            chosen.pop_back();
            if (premIdx) return;
          }
        };
        search(search, 0, sigma);
        if (!premIdx) continue;
        add(u, SCStep::Justification{r.rule->name, restrictTo(sigma, r.rule->vars()), *premIdx});
        changed = true;
        if (known.count(target) || steps.size() >= maxSteps) break;
      }
      if (known.count(target) || steps.size() >= maxSteps) break;
    }
  }
  result.derived = steps.size();
  auto it = known.find(target);
  if (it == known.end()) return result;

  // Keep only the steps the goal depends on, in original order.
  std::vector<bool> needed(steps.size(), false);
  std::vector<std::size_t> stack{it->second};
  while (!stack.empty()) {
    auto k = stack.back();
    stack.pop_back();
    if (needed[k]) continue;
    needed[k] = true;
    if (steps[k].by)
      for (auto p : steps[k].by->premises) stack.push_back(p);
  }
  std::vector<std::size_t> renumber(steps.size(), 0);
  SCDerivation d;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (!needed[k]) continue;
    renumber[k] = d.steps.size();
    SCStep s{steps[k].formula, steps[k].by};
    if (s.by)
      for (auto& p : s.by->premises) p = renumber[p];
    d.steps.push_back(std::move(s));
  }
  result.status = SCProveResult::Status::Proved;
  result.derivation = std::move(d);
  return result;
}

bool scRuleIsSound(const SCCalculus& calculus, const SCRule& rule, const Matrix& m,
                   ValuationMode mode) {
  const auto n = normalRule(calculus, rule);
  return entailsSC(m, n.premises, n.conclusion, mode).holds;
}

// ---------------------------------------------------------------------------
// Deduction theorem

SCDerivation deductionTransform(const SCCalculus& calculus, const SCDerivation& derivation,
                                const Formula& phi, const DeductionRules& names) {
  const SCRule* k = calculus.find(names.k);
  const SCRule* s = calculus.find(names.s);
  const SCRule* mp = calculus.find(names.mp);
  if (!k || !s || !mp) throw CalculusError("calculus lacks the K, S or modus ponens rule");
  const auto nk = normalRule(calculus, *k);
  const auto ns = normalRule(calculus, *s);
  const auto nmp = normalRule(calculus, *mp);
  const Formula a = calculus.normalize(phi);

  SCDerivation out;
  auto justify = [&](const NormalRule& r, const Formula& f,
                     std::vector<std::size_t> premises) -> std::size_t {
    std::vector<Formula> available;
    for (auto p : premises) available.push_back(out.steps[p].formula);
    auto sigma = inferSigma(r, f, available, {});
    if (!sigma) throw CalculusError("cannot justify " + render(f) + " by " + r.rule->name);
    out.steps.push_back({f, SCStep::Justification{r.rule->name, restrictTo(*sigma, r.rule->vars()),
                                                  std::move(premises)}});
    return out.steps.size() - 1;
  };
  auto mpStep = [&](std::size_t minor, std::size_t major) {
    const auto& m = out.steps[major].formula;
    return justify(nmp, m.arg(1), {minor, major});
  };
  // Indices of phi -> chi for each original step.
  std::vector<std::size_t> implied;
  for (std::size_t i = 0; i < derivation.steps.size(); ++i) {
    const auto& step = derivation.steps[i];
    const Formula chi = calculus.normalize(step.formula);
    if (!step.by && chi == a) {
      // phi -> phi from K and S.
      const auto aa = imp(a, a);
      const auto s1 = justify(nk, imp(a, imp(aa, a)), {});
      const auto s2 = justify(ns, imp(imp(a, imp(aa, a)), imp(imp(a, aa), aa)), {});
      const auto s3 = mpStep(s1, s2);
      const auto s4 = justify(nk, imp(a, aa), {});
      implied.push_back(mpStep(s4, s3));
      continue;
    }
    if (!step.by || step.by->premises.empty()) {
      std::size_t base;
      if (!step.by) {
        out.steps.push_back({chi, std::nullopt});
        base = out.steps.size() - 1;
      } else {
        const SCRule* r = calculus.find(step.by->rule);
        if (!r) throw CalculusError("unknown rule '" + step.by->rule + "'");
        base = justify(normalRule(calculus, *r), chi, {});
      }
      const auto kStep = justify(nk, imp(chi, imp(a, chi)), {});
      implied.push_back(mpStep(base, kStep));
      continue;
    }
    if (step.by->rule != names.mp || step.by->premises.size() != 2)
      throw CalculusError("step " + std::to_string(i) + " uses " + step.by->rule +
                          ", which the deduction transform cannot lift");
    auto i0 = step.by->premises[0], i1 = step.by->premises[1];
    const Formula f0 = calculus.normalize(derivation.steps[i0].formula);
    const Formula f1 = calculus.normalize(derivation.steps[i1].formula);
    // Identify the minor premise alpha and the major premise alpha -> chi.
    std::size_t minor = i0, major = i1;
    if (!(f1 == imp(f0, chi))) {
      if (!(f0 == imp(f1, chi))) throw CalculusError("step " + std::to_string(i) + " is not modus ponens");
      std::swap(minor, major);
    }
    const Formula alpha = calculus.normalize(derivation.steps[minor].formula);
    const auto sStep =
        justify(ns, imp(imp(a, imp(alpha, chi)), imp(imp(a, alpha), imp(a, chi))), {});
    const auto t = mpStep(implied[major], sStep);
    implied.push_back(mpStep(implied[minor], t));
  }
  return out;
}

}  // namespace cooperkit
