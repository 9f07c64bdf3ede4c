#include "cooperkit/frontend.hpp"

#include <algorithm>
#include <sstream>

#include "cooperkit/algebra.hpp"
#include "cooperkit/macros.hpp"
#include "cooperkit/matrix.hpp"
#include "cooperkit/mc_calculus.hpp"
#include "cooperkit/parser.hpp"
#include "cooperkit/sc_calculus.hpp"
#include "cooperkit/serialize.hpp"

namespace cooperkit::frontend {

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Logic logicOf(const std::string& s) {
  if (s == "sol") return Logic::SOL;
  if (s == "ol") return Logic::OL;
  throw UsageError("--logic must be sol or ol, got '" + s + "'");
}

ValuationMode modeOf(Logic l) { return l == Logic::OL ? ValuationMode::Bivalent : ValuationMode::All; }

void requireFormat(Format fmt, std::initializer_list<Format> allowed, const char* command) {
  if (std::find(allowed.begin(), allowed.end(), fmt) == allowed.end())
    throw UsageError(std::string("unsupported --format for ") + command);
}

// Parses a comma separated set and expands derived connectives.
std::vector<Formula> expandedList(const std::string& text, Logic logic) {
  std::vector<Formula> out;
  for (const auto& f : parseList(text)) out.push_back(expandDerived(f, logic));
  return out;
}

Signature signatureOf(const std::string& csv) {
  const auto sig = Signature::parse(csv);
  for (const auto& e : sig.entries())
    if (!isPrimitive(e.conn))
      throw UsageError("--sig takes primitive connectives only (neg, and, or, imp)");
  if (!sig.contains(Conn::Neg)) throw UsageError("--sig must contain neg");
  return sig;
}

Json renderAll(std::span<const Formula> fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(render(f));
  return out;
}

// Removes columns of reserved variables and the duplicate rows they cause.
TruthTable withoutReserved(TruthTable t) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < t.vars.size(); ++i)
    if (!t.vars[i].starts_with("_")) keep.push_back(i);
  if (keep.size() == t.vars.size()) return t;
  TruthTable out{{}, t.mode, {}};
  for (auto i : keep) out.vars.push_back(t.vars[i]);
  std::set<std::vector<TruthValue>> seen;
  for (const auto& [vals, v] : t.rows) {
    std::vector<TruthValue> row;
    for (auto i : keep) row.push_back(vals[i]);
    if (seen.insert(row).second) out.rows.emplace_back(row, v);
  }
  return out;
}

std::string describeValuation(const Valuation& v) {
  std::string out;
  for (const auto& [var, val] : v.values) {
    if (var.starts_with("_")) continue;
    if (!out.empty()) out += ", ";
    out += var + "=" + std::string(toString(val));
  }
  return out.empty() ? "(no variables)" : out;
}

Result proveMC(bool ol, const Signature& sig, const std::string& gammaText, const std::string& piText,
               Format fmt) {
  const Logic logic = ol ? Logic::OL : Logic::SOL;
  std::vector<Formula> gamma, pi;
  for (const auto& f : expandedList(gammaText, logic)) gamma.push_back(lowerTo(f, sig));
  for (const auto& f : expandedList(piText, logic)) pi.push_back(lowerTo(f, sig));
  const MCCalculus calc = ol ? olRulesFor(sig, gamma, pi) : solRules(sig);
  const auto res = proveAnalytic(calc, gamma, pi);
  if (res.proved) {
    const auto check = checkProofTree(calc, *res.tree, gamma, pi);
    if (!check.ok)
      throw std::logic_error("internal proof check failed at '" + check.path + "': " + check.violation);
  }
  const int status = res.proved ? kOk : kFail;
  if (fmt == Format::Dot) {
    if (!res.proved) return {status, "// UNPROVABLE\n"};
    return {status, proofTreeToDot(*res.tree)};
  }
  if (fmt == Format::Text) {
    if (!res.proved) return {status, "UNPROVABLE\n"};
    return {status, "PROVED\n" + proofTreeToText(*res.tree)};
  }
  Json j{{"calculus", ol ? "mc-ol" : "mc-sol"},
         {"signature", sig.toString()},
         {"gamma", renderAll(gamma)},
         {"pi", renderAll(pi)},
         {"status", res.proved ? "PROVED" : "UNPROVABLE"},
         {"universe", res.universeSize},
         {"instances", res.instanceCount}};
  j["tree"] = res.proved ? proofTreeToJson(*res.tree) : Json(nullptr);
  return {status, dump(j)};
}

SCCalculus scCalculusNamed(const std::string& name, const Signature& sig) {
  if (name == "sc-vee") return scFragmentCalculus(sig, Logic::SOL, SCRoute::Vee);
  if (name == "sc-imp") return scFragmentCalculus(sig, Logic::SOL, SCRoute::Imp);
  if (name == "hol") return holCalculus();
  throw UsageError("unknown calculus '" + name + "'");
}

Result proveSC(const std::string& name, const Signature& sig, const std::string& gammaText,
               const std::string& piText, Format fmt) {
  requireFormat(fmt, {Format::Json, Format::Text}, "prove with a single-conclusion calculus");
  const auto calc = scCalculusNamed(name, sig);
  const auto gamma = parseList(gammaText);
  const auto pi = parseList(piText);
  if (pi.size() != 1) throw UsageError("single-conclusion calculi need exactly one goal formula");
  const Formula op = binaryOp(name == "sc-vee" ? Conn::CVee : Conn::Imp);
  const auto universe = scUniverse(calc, gamma, pi[0], op, 1);
  const auto res = scProveBounded(calc, gamma, pi[0], universe);
  const bool proved = res.status == SCProveResult::Status::Proved;
  if (proved) {
    const auto check = scCheckDerivation(calc, *res.derivation, gamma, pi[0]);
    if (!check.ok) throw std::logic_error("internal derivation check failed: " + check.violation);
  }
  const int status = proved ? kOk : kFail;
  if (fmt == Format::Text)
    return {status, proved ? "PROVED\n" + derivationToText(*res.derivation)
                           : "UNKNOWN (bounded search gave up; not a refutation)\n"};
  Json j{{"calculus", name},
         {"gamma", renderAll(gamma)},
         {"goal", render(pi[0])},
         {"status", proved ? "PROVED" : "UNKNOWN"},
         {"universe", universe.size()},
         {"derived", res.derived}};
  j["derivation"] = proved ? derivationToJson(*res.derivation) : Json(nullptr);
  return {status, dump(j)};
}

Result listMC(const std::string& name, const MCCalculus& calc, Format fmt) {
  requireFormat(fmt, {Format::Json, Format::Text}, "calculus");
  if (fmt == Format::Text) {
    std::string out;
    for (const auto& r : calc.rules()) out += r.toString() + "\n";
    return {kOk, out};
  }
  Json rules = Json::array();
  for (const auto& r : calc.rules()) rules.push_back(mcRuleToJson(r));
  return {kOk, dump({{"name", name}, {"signature", calc.signature().toString()}, {"rules", rules}})};
}

Result listSC(const std::string& name, const SCCalculus& calc, Format fmt) {
  requireFormat(fmt, {Format::Json, Format::Text}, "calculus");
  if (fmt == Format::Text) {
    std::string out;
    for (const auto& r : calc.rules()) out += r.toString() + "\n";
    return {kOk, out};
  }
  Json rules = Json::array();
  for (const auto& r : calc.rules()) rules.push_back(scRuleToJson(r));
  return {kOk, dump({{"name", name}, {"signature", calc.signature().toString()}, {"rules", rules}})};
}

}  // namespace

Format parseFormat(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "text") return Format::Text;
  if (s == "dot") return Format::Dot;
  throw UsageError("--format must be json, text or dot, got '" + s + "'");
}

Result parseCommand(const std::string& formula, Format fmt) {
  requireFormat(fmt, {Format::Json, Format::Text}, "parse");
  const auto f = parse(formula);
  if (fmt == Format::Text) return {kOk, render(f) + "\n"};
  return {kOk, dump({{"input", formula}, {"rendered", render(f)}, {"ast", formulaToJson(f)}})};
}

Result tableCommand(const std::string& formula, const std::string& logic, Format fmt,
                    const Settings& s) {
  requireFormat(fmt, {Format::Json, Format::Text}, "table");
  const Logic l = logicOf(logic);
  const auto f = parse(formula);
  const auto t = withoutReserved(
      truthTableOf(Matrix::ol(), expandDerived(f, l), modeOf(l), EnumerationLimits{s.maxVars}));
  if (fmt == Format::Text) return {kOk, truthTableToText(t, render(f))};
  Json j = truthTableToJson(t);
  j["formula"] = render(f);
  return {kOk, dump(j)};
}

Result entailsCommand(const std::string& logic, const std::string& mode, const std::string& premises,
                      const std::string& conclusions, Format fmt, const Settings& s) {
  requireFormat(fmt, {Format::Json, Format::Text}, "entails");
  const Logic l = logicOf(logic);
  if (mode != "mc" && mode != "sc") throw UsageError("--mode must be mc or sc, got '" + mode + "'");
  const auto phi = expandedList(premises, l);
  const auto psi = expandedList(conclusions, l);
  const EnumerationLimits limits{s.maxVars};
  ConsequenceVerdict v;
  if (mode == "sc") {
    if (psi.size() != 1) throw UsageError("--mode sc needs exactly one conclusion");
    v = entailsSC(Matrix::ol(), phi, psi[0], modeOf(l), limits);
  } else {
    v = entailsMC(Matrix::ol(), phi, psi, modeOf(l), limits);
  }
  const int status = v.holds ? kOk : kFail;
  if (fmt == Format::Text)
    return {status, v.holds ? "HOLDS\n" : "FAILS countermodel: " + describeValuation(*v.countermodel) + "\n"};
  Json j{{"logic", logic},
         {"mode", mode},
         {"premises", renderAll(parseList(premises))},
         {"conclusions", renderAll(parseList(conclusions))},
         {"holds", v.holds}};
  j["countermodel"] = v.countermodel ? valuationToJson(*v.countermodel) : Json(nullptr);
  return {status, dump(j)};
}

Result proveCommand(const std::string& calculus, const std::string& sig, const std::string& gamma,
                    const std::string& pi, Format fmt, const Settings&) {
  if (calculus == "mc-sol" || calculus == "mc-ol")
    return proveMC(calculus == "mc-ol", signatureOf(sig), gamma, pi, fmt);
  if (calculus == "sc-vee" || calculus == "sc-imp" || calculus == "hol")
    return proveSC(calculus, signatureOf(sig), gamma, pi, fmt);
  throw UsageError("--calculus must be mc-sol, mc-ol, sc-vee, sc-imp or hol, got '" + calculus + "'");
}

Result calculusCommand(const std::string& name, const std::string& sig, Format fmt) {
  const auto s = signatureOf(sig);
  if (name == "mc-sol") return listMC(name, solRules(s), fmt);
  if (name == "mc-ol") return listMC(name, olRules(s, {"p", "q", "r"}), fmt);
  if (name == "sc-vee" || name == "sc-imp" || name == "hol") return listSC(name, scCalculusNamed(name, s), fmt);
  throw UsageError("--name must be mc-sol, mc-ol, sc-vee, sc-imp or hol, got '" + name + "'");
}

Result translateCommand(const std::string& from, const std::string& via, const std::string& sig,
                        Format fmt) {
  if (from != "mc-sol" && from != "mc-ol") throw UsageError("--from must be mc-sol or mc-ol");
  if (via != "vee" && via != "imp") throw UsageError("--via must be vee or imp");
  const Logic flavor = from == "mc-ol" ? Logic::OL : Logic::SOL;
  const auto calc = scFragmentCalculus(signatureOf(sig), flavor, via == "vee" ? SCRoute::Vee : SCRoute::Imp);
  return listSC(from + " via " + via, calc, fmt);
}

Result algebraCommand(const std::string& check, Format fmt) {
  requireFormat(fmt, {Format::Json, Format::Text}, "algebra");
  const auto names = algebraSuiteNames();
  if (std::find(names.begin(), names.end(), check) == names.end()) {
    std::string all;
    for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
    throw UsageError("--check must be one of " + all);
  }
  const auto reports = runAlgebraSuite(check);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  if (fmt == Format::Text) {
    std::string out;
    for (const auto& r : reports) out += reportToText(r);
    return {ok ? kOk : kFail, out};
  }
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(reportToJson(r));
  return {ok ? kOk : kFail, dump({{"check", check}, {"status", ok ? "pass" : "fail"}, {"reports", arr}})};
}

}  // namespace cooperkit::frontend
