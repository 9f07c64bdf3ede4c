#include "cooperkit/macros.hpp"

#include <functional>
#include <set>

#include "cooperkit/parser.hpp"

namespace cooperkit {

namespace {

Formula tmpl(std::string_view text) {
  // Templates are written in surface syntax over x and y.
  return parse(text, Signature::ol());
}

MacroTable makeBuiltin() {
  MacroTable t;
  t.define(Conn::Dia, tmpl("~x -> x"));
  t.define(Conn::DImp, tmpl("~x | y"));
  t.define(Conn::Hook, tmpl("<>x => y"));
  t.define(Conn::Cup, tmpl("~<>~(x | y) & ((x -> y) -> <>y)"));
  t.define(Conn::Cap, tmpl("~(~x cup ~y)"));
  t.define(Conn::CVee, tmpl("(x => y) => ((y => x) => x)"));
  t.define(Conn::Iff, tmpl("(x -> y) & (y -> x)"));
  const auto c0 = Formula::var(kHalfVar);
  const auto c1 = Formula::var(kOneVar);
  t.define(Conn::Half, imp(c0, imp(neg(c0), c0)));
  t.define(Conn::One, disj(c1, neg(c1)));
  t.define(Conn::Zero, neg(Formula::app(Conn::One, {})));
  t.validate();
  return t;
}

}  // namespace

const MacroTable& MacroTable::builtin() {
  static const MacroTable table = makeBuiltin();
  return table;
}

void MacroTable::define(Conn c, Formula body) {
  if (isPrimitive(c)) throw MacroError("cannot redefine primitive '" + std::string(connName(c)) + "'");
  macros_.insert_or_assign(c, Macro{defaultArity(c), std::move(body)});
}

const MacroTable::Macro* MacroTable::find(Conn c) const {
  auto it = macros_.find(c);
  return it == macros_.end() ? nullptr : &it->second;
}

void MacroTable::validate() const {
  // 0 = unvisited, 1 = on stack, 2 = done
  std::map<Conn, int> state;
  std::function<void(Conn)> visit = [&](Conn c) {
    auto& s = state[c];
    if (s == 2) return;
    if (s == 1) throw MacroError("cyclic macro definition through '" + std::string(connName(c)) + "'");
    s = 1;
    const Macro* m = find(c);
    if (!m) throw MacroError("undefined macro '" + std::string(connName(c)) + "'");
    for (Conn d : connectives(m->body))
      if (!isPrimitive(d)) visit(d);
    state[c] = 2;
  };
  for (const auto& [c, m] : macros_) visit(c);
}

Formula expandDerived(const Formula& f, Logic logic, const MacroTable& macros) {
  if (f.isPrimitive()) return f;
  std::vector<Formula> args;
  args.reserve(f.args().size());
  for (const auto& a : f.args()) args.push_back(expandDerived(a, logic, macros));
  const Conn c = f.conn();
  if (isPrimitive(c)) return Formula::app(c, std::move(args));
  if ((c == Conn::One || c == Conn::Zero) && logic == Logic::SOL)
    throw MacroError(std::string(c == Conn::One ? "ONE" : "ZERO") +
                     " is not term-definable in sOL (use --logic ol)");
  const auto* m = macros.find(c);
  if (!m) throw MacroError("undefined macro '" + std::string(connName(c)) + "'");
  Substitution sigma;
  if (!args.empty()) sigma.emplace("x", args[0]);
  if (args.size() > 1) sigma.emplace("y", args[1]);
  // The body may itself use macros; expand after instantiation.
  return expandDerived(substitute(sigma, m->body), logic, macros);
}

Formula lowerTo(const Formula& f, const Signature& target) {
  if (f.isVar()) return f;
  std::vector<Formula> args;
  for (const auto& a : f.args()) args.push_back(lowerTo(a, target));
  const Conn c = f.conn();
  if (!isPrimitive(c)) throw MacroError("lowerTo expects a macro-free formula");
  if (target.contains(c)) return Formula::app(c, std::move(args));
  if (c == Conn::Or && target.contains(Conn::And) && target.contains(Conn::Neg))
    return neg(conj(neg(args[0]), neg(args[1])));
  if (c == Conn::And && target.contains(Conn::Or) && target.contains(Conn::Neg))
    return neg(disj(neg(args[0]), neg(args[1])));
  throw SignatureError("connective '" + std::string(connName(c)) + "' not expressible over " +
                       target.toString());
}

bool usesOnly(const Formula& f, const Signature& sig) {
  for (Conn c : connectives(f))
    if (!sig.contains(c)) return false;
  return true;
}

}  // namespace cooperkit
