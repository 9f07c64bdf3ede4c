#include "cooperkit/serialize.hpp"

#include <algorithm>
#include <sstream>

namespace cooperkit {

Json formulaToJson(const Formula& f) {
  if (f.isVar()) return {{"var", f.name()}};
  Json j{{"conn", std::string(connName(f.conn()))}};
  if (!f.args().empty()) {
    Json args = Json::array();
    for (const auto& a : f.args()) args.push_back(formulaToJson(a));
    j["args"] = std::move(args);
  }
  return j;
}

Formula formulaFromJson(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("formula JSON must be an object");
  if (j.contains("var")) return Formula::var(j.at("var").get<std::string>());
  const auto name = j.at("conn").get<std::string>();
  const auto c = connFromName(name);
  if (!c) throw std::invalid_argument("unknown connective '" + name + "'");
  std::vector<Formula> args;
  if (j.contains("args"))
    for (const auto& a : j.at("args")) args.push_back(formulaFromJson(a));
  if (static_cast<int>(args.size()) != defaultArity(*c))
    throw std::invalid_argument("wrong number of arguments for '" + name + "'");
  return Formula::app(*c, std::move(args));
}

Json valuationToJson(const Valuation& v) {
  Json j = Json::object();
  for (const auto& [var, val] : v.values)
    if (!var.starts_with("_")) j[var] = std::string(toString(val));
  return j;
}

namespace {

Json labelJson(const FormulaSet& label) {
  Json out = Json::array();
  for (const auto& f : label) out.push_back(render(f));
  return out;
}

Json substJson(const Substitution& s) {
  Json out = Json::object();
  for (const auto& [v, f] : s) out[v] = render(f);
  return out;
}

std::string dotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string stepText(const ProofNode::Step& s) {
  std::string out = s.rule;
  if (!s.sigma.empty()) {
    out += " {";
    bool first = true;
    for (const auto& [v, f] : s.sigma) {
      if (!first) out += ", ";
      out += v + ":=" + render(f);
      first = false;
    }
    out += "}";
  }
  return out;
}

// Formulas of `label` not already in `parent`.
std::vector<Formula> added(const FormulaSet& label, const FormulaSet* parent) {
  std::vector<Formula> out;
  for (const auto& f : label)
    if (!parent || !parent->count(f)) out.push_back(f);
  return out;
}

}  // namespace

Json proofTreeToJson(const ProofNode& tree) {
  Json j;
  if (tree.star) j["label"] = "star";
  else j["label"] = labelJson(tree.label);
  if (tree.step) j["rule"] = {{"name", tree.step->rule}, {"subst", substJson(tree.step->sigma)}};
  else j["rule"] = nullptr;
  Json kids = Json::array();
  for (const auto& c : tree.children) kids.push_back(proofTreeToJson(c));
  j["children"] = std::move(kids);
  return j;
}

std::string proofTreeToDot(const ProofNode& tree) {
  std::ostringstream out;
  out << "digraph proof {\n  node [shape=plaintext];\n  edge [arrowhead=none];\n";
  int next = 0;
  auto walk = [&](auto&& self, const ProofNode& n, const FormulaSet* parent) -> int {
    const int id = next++;
    std::string text;
    if (n.star) text = "*";
    else {
      const auto fs = added(n.label, parent);
      text = fs.empty() ? (parent ? "" : "(empty)") : render(fs);
    }
    out << "  n" << id << " [label=\"" << dotEscape(text) << "\"];\n";
    for (const auto& c : n.children) {
      const int cid = self(self, c, n.star ? parent : &n.label);
      out << "  n" << id << " -> n" << cid;
      if (n.step) out << " [label=\"" << dotEscape(n.step->rule) << "\"]";
      out << ";\n";
    }
    return id;
  };
  walk(walk, tree, nullptr);
  out << "}\n";
  return out.str();
}

std::string proofTreeToText(const ProofNode& tree) {
  std::ostringstream out;
  auto walk = [&](auto&& self, const ProofNode& n, const FormulaSet* parent, int depth) -> void {
    out << std::string(static_cast<std::size_t>(depth) * 2, ' ');
    if (n.star) {
      out << "*";
    } else {
      const auto fs = added(n.label, parent);
      out << (parent ? "+ " : "") << "{" << render(fs) << "}";
    }
    if (n.step) out << "  by " << stepText(*n.step);
    out << "\n";
    for (const auto& c : n.children) self(self, c, n.star ? parent : &n.label, depth + 1);
  };
  walk(walk, tree, nullptr, 0);
  return out.str();
}

Json mcRuleToJson(const MCRule& r) {
  Json ant = Json::array(), suc = Json::array();
  for (const auto& f : r.antecedent) ant.push_back(render(f));
  for (const auto& f : r.succedent) suc.push_back(render(f));
  return {{"name", r.name},
          {"antecedent", ant},
          {"succedent", suc},
          {"fixed", std::vector<std::string>(r.fixedVars.begin(), r.fixedVars.end())}};
}

Json scRuleToJson(const SCRule& r) {
  Json prem = Json::array();
  for (const auto& f : r.premises) prem.push_back(render(f));
  Json j{{"name", r.name},
         {"premises", prem},
         {"conclusion", render(r.conclusion)},
         {"fixed", std::vector<std::string>(r.fixedVars.begin(), r.fixedVars.end())}};
  j["fresh"] = r.freshVar ? Json(*r.freshVar) : Json(nullptr);
  return j;
}

Json derivationToJson(const SCDerivation& d) {
  Json out = Json::array();
  for (const auto& s : d.steps) {
    Json j{{"formula", render(s.formula)}};
    if (s.by) {
      j["rule"] = s.by->rule;
      j["subst"] = substJson(s.by->sigma);
      j["premises"] = s.by->premises;
    } else {
      j["rule"] = nullptr;
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::string derivationToText(const SCDerivation& d) {
  std::ostringstream out;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& s = d.steps[i];
    out << i + 1 << ". " << render(s.formula) << "    ";
    if (!s.by) {
      out << "hyp";
    } else {
      out << s.by->rule;
      if (!s.by->premises.empty()) {
        out << " ";
        for (std::size_t k = 0; k < s.by->premises.size(); ++k)
          out << (k ? "," : "") << s.by->premises[k] + 1;
      }
    }
    out << "\n";
  }
  return out.str();
}

Json reportToJson(const CheckReport& r) {
  return {{"check", r.check}, {"status", r.passed ? "pass" : "fail"}, {"summary", r.summary},
          {"witnesses", r.witnesses}};
}

std::string reportToText(const CheckReport& r) {
  std::string out = std::string(r.passed ? "PASS " : "FAIL ") + r.check + ": " + r.summary + "\n";
  for (const auto& w : r.witnesses) out += "    " + w + "\n";
  return out;
}

namespace {

int displayRank(TruthValue v) {
  for (std::size_t i = 0; i < kDisplayOrder.size(); ++i)
    if (kDisplayOrder[i] == v) return static_cast<int>(i);
  return 3;
}

std::vector<std::size_t> displayRows(const TruthTable& t) {
  std::vector<std::size_t> order(t.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = t.rows[a].first;
    const auto& rb = t.rows[b].first;
    for (std::size_t k = 0; k < ra.size(); ++k)
      if (ra[k] != rb[k]) return displayRank(ra[k]) < displayRank(rb[k]);
    return false;
  });
  return order;
}

}  // namespace

Json truthTableToJson(const TruthTable& t) {
  Json rows = Json::array();
  for (auto i : displayRows(t)) {
    Json vals = Json::object();
    for (std::size_t k = 0; k < t.vars.size(); ++k) vals[t.vars[k]] = std::string(toString(t.rows[i].first[k]));
    rows.push_back({{"values", vals}, {"value", std::string(toString(t.rows[i].second))}});
  }
  return {{"vars", t.vars},
          {"mode", t.mode == ValuationMode::All ? "all" : "bivalent"},
          {"rows", rows}};
}

std::string truthTableToText(const TruthTable& t, const std::string& formula) {
  std::vector<std::size_t> widths;
  std::ostringstream out;
  for (const auto& v : t.vars) {
    widths.push_back(std::max<std::size_t>(v.size(), 3));
    out << v << std::string(widths.back() - v.size() + 1, ' ');
  }
  out << "| " << formula << "\n";
  for (auto i : displayRows(t)) {
    for (std::size_t k = 0; k < t.vars.size(); ++k) {
      const std::string s(toString(t.rows[i].first[k]));
      out << s << std::string(widths[k] - s.size() + 1, ' ');
    }
    out << "| " << toString(t.rows[i].second) << "\n";
  }
  return out.str();
}

std::string connectiveTableToText(const Table& t, std::string_view symbol) {
  std::ostringstream out;
  auto cell = [](TruthValue v) {
    std::string s(toString(v));
    return s + std::string(4 - s.size(), ' ');
  };
  if (t.arity() == 1) {
    out << "  " << symbol << "\n";
    for (auto v : kDisplayOrder) out << cell(v) << cell(t(v)) << "\n";
    return out.str();
  }
  out << std::string(symbol) << std::string(symbol.size() < 4 ? 4 - symbol.size() : 1, ' ');
  for (auto v : kDisplayOrder) out << cell(v);
  out << "\n";
  for (auto a : kDisplayOrder) {
    out << cell(a);
    for (auto b : kDisplayOrder) out << cell(t(a, b));
    out << "\n";
  }
  return out.str();
}

}  // namespace cooperkit
