// Reference semantics used only by the tests. Tables are typed in by hand
// and derived connectives are composed directly, so nothing here goes
// through Matrix or the macro table.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cooperkit/formula.hpp"

namespace oracle {

// Values 0, 1 (for 1/2), 2 (for 1).
using V = int;
constexpr V F = 0, H = 1, T = 2;

inline V neg(V a) {
  static const V t[3] = {T, H, F};
  return t[a];
}
inline V conj(V a, V b) {
  static const V t[3][3] = {{F, F, F}, {F, H, T}, {F, T, T}};
  return t[a][b];
}
inline V disj(V a, V b) {
  static const V t[3][3] = {{F, F, T}, {F, H, T}, {T, T, T}};
  return t[a][b];
}
inline V imp(V a, V b) {
  static const V t[3][3] = {{H, H, H}, {F, H, T}, {F, H, T}};
  return t[a][b];
}
inline V dia(V a) { return imp(neg(a), a); }
inline V dimp(V a, V b) { return disj(neg(a), b); }
inline V hook(V a, V b) { return dimp(dia(a), b); }
inline V cup(V a, V b) { return conj(neg(dia(neg(disj(a, b)))), imp(imp(a, b), dia(b))); }
inline V cap(V a, V b) { return neg(cup(neg(a), neg(b))); }
inline V cvee(V a, V b) { return dimp(dimp(a, b), dimp(dimp(b, a), a)); }
inline V iff(V a, V b) { return conj(imp(a, b), imp(b, a)); }

inline bool designated(V v) { return v != F; }

using Env = std::map<std::string, V>;

inline V eval(const cooperkit::Formula& f, const Env& env) {
  using cooperkit::Conn;
  if (f.isVar()) return env.at(f.name());
  auto a = [&](std::size_t i) { return eval(f.arg(i), env); };
  switch (f.conn()) {
    case Conn::Neg: return neg(a(0));
    case Conn::And: return conj(a(0), a(1));
    case Conn::Or: return disj(a(0), a(1));
    case Conn::Imp: return imp(a(0), a(1));
    case Conn::Dia: return dia(a(0));
    case Conn::DImp: return dimp(a(0), a(1));
    case Conn::Hook: return hook(a(0), a(1));
    case Conn::Cup: return cup(a(0), a(1));
    case Conn::Cap: return cap(a(0), a(1));
    case Conn::CVee: return cvee(a(0), a(1));
    case Conn::Iff: return iff(a(0), a(1));
    case Conn::Half: return H;
    case Conn::One: return T;
    case Conn::Zero: return F;
  }
  return F;
}

inline void collectVars(const cooperkit::Formula& f, std::set<std::string>& out) {
  if (f.isVar()) {
    out.insert(f.name());
    return;
  }
  for (const auto& g : f.args()) collectVars(g, out);
}

// Calls fn on every environment over the variables of fs; classical values
// only when `bivalent`. Stops when fn returns false.
template <class Fn>
void forEachEnv(const std::vector<cooperkit::Formula>& fs, bool bivalent, Fn&& fn) {
  std::set<std::string> vs;
  for (const auto& f : fs) collectVars(f, vs);
  std::vector<std::string> vars(vs.begin(), vs.end());
  const std::vector<V> vals = bivalent ? std::vector<V>{F, T} : std::vector<V>{F, H, T};
  std::vector<std::size_t> idx(vars.size(), 0);
  Env env;
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = vals[idx[i]];
    if (!fn(env)) return;
    std::size_t i = vars.size();
    while (i > 0 && ++idx[i - 1] == vals.size()) idx[--i] = 0;
    if (i == 0) return;
  }
}

// Multiple-conclusion consequence by brute force.
inline bool entailsMC(const std::vector<cooperkit::Formula>& phi, const std::vector<cooperkit::Formula>& psi,
                      bool bivalent) {
  std::vector<cooperkit::Formula> all(phi);
  all.insert(all.end(), psi.begin(), psi.end());
  bool holds = true;
  forEachEnv(all, bivalent, [&](const Env& env) {
    for (const auto& f : phi)
      if (!designated(eval(f, env))) return true;
    for (const auto& f : psi)
      if (designated(eval(f, env))) return true;
    holds = false;
    return false;
  });
  return holds;
}

}  // namespace oracle
