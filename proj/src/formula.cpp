#include "cooperkit/formula.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cooperkit {

namespace {

struct ConnInfo {
  Conn conn;
  std::string_view name;
  int arity;
};

constexpr ConnInfo kConnTable[kConnCount] = {
    {Conn::Neg, "neg", 1},   {Conn::And, "and", 2},   {Conn::Or, "or", 2},
    {Conn::Imp, "imp", 2},   {Conn::Dia, "dia", 1},   {Conn::DImp, "dimp", 2},
    {Conn::Hook, "hook", 2}, {Conn::Cup, "cup", 2},   {Conn::Cap, "cap", 2},
    {Conn::CVee, "cvee", 2}, {Conn::Iff, "iff", 2},   {Conn::Half, "half", 0},
    {Conn::One, "one", 0},   {Conn::Zero, "zero", 0},
};

std::size_t mixHash(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

int defaultArity(Conn c) { return kConnTable[static_cast<int>(c)].arity; }

bool isPrimitive(Conn c) {
  return c == Conn::Neg || c == Conn::And || c == Conn::Or || c == Conn::Imp;
}

std::string_view connName(Conn c) { return kConnTable[static_cast<int>(c)].name; }

std::optional<Conn> connFromName(std::string_view name) {
  for (const auto& info : kConnTable)
    if (info.name == name) return info.conn;
  // Accept a few spellings used on the command line.
  if (name == "not") return Conn::Neg;
  if (name == "vee") return Conn::Or;
  if (name == "wedge") return Conn::And;
  if (name == "to") return Conn::Imp;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::vector<Entry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].arity < 0) throw SignatureError("negative arity");
    for (std::size_t j = 0; j < i; ++j)
      if (entries_[j].conn == entries_[i].conn)
        throw SignatureError("duplicate connective '" + std::string(connName(entries_[i].conn)) +
                             "' in signature");
  }
}

Signature Signature::ol() {
  return Signature({{Conn::Neg, 1}, {Conn::Or, 2}, {Conn::And, 2}, {Conn::Imp, 2}});
}

Signature Signature::parse(std::string_view csv) {
  std::vector<Entry> entries;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto end = csv.find(',', start);
    if (end == std::string_view::npos) end = csv.size();
    auto tok = csv.substr(start, end - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty()) {
      auto c = connFromName(tok);
      if (!c) throw SignatureError("unknown connective '" + std::string(tok) + "'");
      entries.push_back({*c, defaultArity(*c)});
    }
    start = end + 1;
  }
  return Signature(std::move(entries));
}

bool Signature::contains(Conn c) const { return arityOf(c).has_value(); }

std::optional<int> Signature::arityOf(Conn c) const {
  for (const auto& e : entries_)
    if (e.conn == c) return e.arity;
  return std::nullopt;
}

std::string Signature::toString() const {
  std::string out;
  for (const auto& e : entries_) {
    if (!out.empty()) out += ',';
    out += connName(e.conn);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->isVar = true;
  n->hash = std::hash<std::string>{}(name);
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::app(Conn c, std::vector<Formula> args) {
  if (static_cast<int>(args.size()) != defaultArity(c))
    throw std::invalid_argument("arity mismatch for '" + std::string(connName(c)) + "'");
  auto n = std::make_shared<Node>();
  n->conn = c;
  n->primitiveOnly = cooperkit::isPrimitive(c);
  std::size_t h = 0x51ed27 + static_cast<std::size_t>(c);
  for (const auto& a : args) {
    h = mixHash(h, a.hash());
    n->size += a.size();
    n->height = std::max(n->height, a.height() + 1);
    n->primitiveOnly = n->primitiveOnly && a.isPrimitive();
  }
  n->hash = h;
  n->args = std::move(args);
  return Formula(std::move(n));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (a.isVar() != b.isVar()) return a.isVar() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.isVar()) return a.name() <=> b.name();
  if (auto c = a.conn() <=> b.conn(); c != 0) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

Formula neg(Formula a) { return Formula::app(Conn::Neg, {std::move(a)}); }
Formula conj(Formula a, Formula b) { return Formula::app(Conn::And, {std::move(a), std::move(b)}); }
Formula disj(Formula a, Formula b) { return Formula::app(Conn::Or, {std::move(a), std::move(b)}); }
Formula imp(Formula a, Formula b) { return Formula::app(Conn::Imp, {std::move(a), std::move(b)}); }
Formula mk(Conn c, Formula a) { return Formula::app(c, {std::move(a)}); }
Formula mk(Conn c, Formula a, Formula b) { return Formula::app(c, {std::move(a), std::move(b)}); }

namespace {

void collectSubformulas(const Formula& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  for (const auto& a : f.args()) collectSubformulas(a, out);
}

void collectVariables(const Formula& f, std::set<std::string>& out) {
  if (f.isVar()) {
    out.insert(f.name());
    return;
  }
  for (const auto& a : f.args()) collectVariables(a, out);
}

}  // namespace

FormulaSet subformulas(const Formula& f) {
  FormulaSet out;
  collectSubformulas(f, out);
  return out;
}

FormulaSet subformulas(std::span<const Formula> fs) {
  FormulaSet out;
  for (const auto& f : fs) collectSubformulas(f, out);
  return out;
}

std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  collectVariables(f, out);
  return out;
}

std::set<std::string> variables(std::span<const Formula> fs) {
  std::set<std::string> out;
  for (const auto& f : fs) collectVariables(f, out);
  return out;
}

std::set<Conn> connectives(const Formula& f) {
  std::set<Conn> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.isVar()) return;
    out.insert(g.conn());
    for (const auto& a : g.args()) walk(a);
  };
  walk(f);
  return out;
}

Formula substitute(const Substitution& sigma, const Formula& f) {
  if (sigma.empty()) return f;
  if (f.isVar()) {
    auto it = sigma.find(f.name());
    return it == sigma.end() ? f : it->second;
  }
  std::vector<Formula> args;
  args.reserve(f.args().size());
  bool changed = false;
  for (const auto& a : f.args()) {
    args.push_back(substitute(sigma, a));
    changed = changed || !(args.back() == a);
  }
  return changed ? Formula::app(f.conn(), std::move(args)) : f;
}

Substitution compose(const Substitution& outer, const Substitution& inner) {
  Substitution out;
  for (const auto& [v, g] : inner) out.emplace(v, substitute(outer, g));
  for (const auto& [v, g] : outer)
    if (!inner.count(v)) out.emplace(v, g);
  return out;
}

// ---------------------------------------------------------------------------
// Rendering. Precedence levels mirror the parser:
//   1 <->   2 -> => >> (right)   3 | cup cvee   4 & cap   5 prefix

namespace {

int precedence(Conn c) {
  switch (c) {
    case Conn::Iff: return 1;
    case Conn::Imp:
    case Conn::DImp:
    case Conn::Hook: return 2;
    case Conn::Or:
    case Conn::Cup:
    case Conn::CVee: return 3;
    case Conn::And:
    case Conn::Cap: return 4;
    default: return 5;
  }
}

bool rightAssoc(Conn c) { return precedence(c) == 2; }

std::string_view symbol(Conn c) {
  switch (c) {
    case Conn::Neg: return "~";
    case Conn::Dia: return "<>";
    case Conn::And: return "&";
    case Conn::Or: return "|";
    case Conn::Imp: return "->";
    case Conn::DImp: return "=>";
    case Conn::Hook: return ">>";
    case Conn::Cup: return "cup";
    case Conn::Cap: return "cap";
    case Conn::CVee: return "cvee";
    case Conn::Iff: return "<->";
    case Conn::Half: return "HALF";
    case Conn::One: return "ONE";
    case Conn::Zero: return "ZERO";
  }
  return "?";
}

int nodePrecedence(const Formula& f) {
  if (f.isVar() || f.args().empty()) return 6;
  return precedence(f.conn());
}

void renderInto(const Formula& f, std::string& out) {
  if (f.isVar()) {
    out += f.name();
    return;
  }
  const auto c = f.conn();
  const int arity = static_cast<int>(f.args().size());
  if (arity == 0) {
    out += symbol(c);
    return;
  }
  auto child = [&](const Formula& g, bool parens) {
    if (parens) out += '(';
    renderInto(g, out);
    if (parens) out += ')';
  };
  if (arity == 1) {
    out += symbol(c);
    child(f.arg(0), nodePrecedence(f.arg(0)) < 5);
    return;
  }
  const int p = precedence(c);
  const int lp = nodePrecedence(f.arg(0));
  const int rp = nodePrecedence(f.arg(1));
  // Different operators sharing a precedence level are parenthesized for
  // readability, e.g. (p | q) cvee r.
  auto mixed = [&](const Formula& g) { return !g.isVar() && g.conn() != c; };
  const Formula& l = f.arg(0);
  const Formula& r = f.arg(1);
  child(l, rightAssoc(c) ? lp <= p : lp < p || (lp == p && mixed(l)));
  out += ' ';
  out += symbol(c);
  out += ' ';
  child(r, rightAssoc(c) ? rp < p || (rp == p && mixed(r)) : rp <= p);
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  renderInto(f, out);
  return out;
}

std::string render(std::span<const Formula> fs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += sep;
    renderInto(fs[i], out);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Formula> enumerateFormulas(const Signature& sig, std::span<const std::string> vars,
                                       int depth) {
  std::vector<Formula> all;
  if (depth < 0) return all;
  // levelStart[h] = index in `all` of the first formula of height h.
  std::vector<std::size_t> levelStart{0};
  for (const auto& v : vars) all.push_back(Formula::var(v));
  for (const auto& e : sig.entries())
    if (e.arity == 0) all.push_back(Formula::app(e.conn, {}));
  for (int h = 1; h <= depth; ++h) {
    const std::size_t prevBegin = levelStart.back();
    const std::size_t prevEnd = all.size();
    levelStart.push_back(prevEnd);
    for (const auto& e : sig.entries()) {
      if (e.arity == 1) {
        for (std::size_t i = prevBegin; i < prevEnd; ++i) all.push_back(Formula::app(e.conn, {all[i]}));
      } else if (e.arity == 2) {
        // Pairs with at least one component of height exactly h-1.
        for (std::size_t i = 0; i < prevEnd; ++i)
          for (std::size_t j = 0; j < prevEnd; ++j) {
            if (i < prevBegin && j < prevBegin) continue;
            all.push_back(Formula::app(e.conn, {all[i], all[j]}));
          }
      } else if (e.arity > 2) {
        throw SignatureError("enumerateFormulas supports arity <= 2");
      }
    }
  }
  return all;
}

bool match(const Formula& pattern, const Formula& target, Substitution& sigma,
           const std::set<std::string>& rigid) {
  if (pattern.isVar()) {
    if (rigid.count(pattern.name())) return target.isVar() && target.name() == pattern.name();
    auto [it, inserted] = sigma.emplace(pattern.name(), target);
    return inserted || it->second == target;
  }
  if (target.isVar() || target.conn() != pattern.conn()) return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match(pattern.args()[i], target.args()[i], sigma, rigid)) return false;
  return true;
}

}  // namespace cooperkit
