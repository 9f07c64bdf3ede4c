#include "cooperkit/matrix.hpp"

#include <algorithm>
#include <unordered_map>

#include "cooperkit/macros.hpp"

namespace cooperkit {

namespace {

constexpr TruthValue Z = TruthValue::Zero;
constexpr TruthValue H = TruthValue::Half;
constexpr TruthValue O = TruthValue::One;

int power3(int k) {
  int r = 1;
  while (k-- > 0) r *= 3;
  return r;
}

// Cooper's tables, indexed in carrier order 0, 1/2, 1.
Table olNeg() { return Table(1, {O, H, Z}); }
Table olAnd() {
  return Table(2, {Z, Z, Z,  //
                   Z, H, O,  //
                   Z, O, O});
}
Table olOr() {
  return Table(2, {Z, Z, O,  //
                   Z, H, O,  //
                   O, O, O});
}
Table olImp() {
  return Table(2, {H, H, H,  //
                   Z, H, O,  //
                   Z, H, O});
}

// Evaluator for a fixed list of formulas: subformulas are flattened into a
// topologically ordered DAG over variable slots.
class Compiled {
 public:
  Compiled(const Matrix& m, std::span<const Formula> roots) {
    for (const auto& r : roots) roots_.push_back(add(m, r));
  }

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t varCount() const { return vars_.size(); }

  void evaluate(std::span<const TruthValue> assignment) {
    values_.resize(nodes_.size());
    TruthValue buf[8];
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& n = nodes_[i];
      if (n.table == nullptr) {
        values_[i] = assignment[n.var];
        continue;
      }
      for (std::size_t k = 0; k < n.children.size(); ++k) buf[k] = values_[n.children[k]];
      values_[i] = n.table->at(std::span<const TruthValue>(buf, n.children.size()));
    }
  }

  TruthValue root(std::size_t i) const { return values_[roots_[i]]; }

 private:
  struct Node {
    const Table* table = nullptr;
    std::size_t var = 0;
    std::vector<std::size_t> children;
  };

  std::size_t add(const Matrix& m, const Formula& f) {
    if (auto it = index_.find(f); it != index_.end()) return it->second;
    Node n;
    if (f.isVar()) {
      auto vit = std::find(vars_.begin(), vars_.end(), f.name());
      n.var = static_cast<std::size_t>(vit - vars_.begin());
      if (vit == vars_.end()) vars_.push_back(f.name());
    } else {
      if (f.args().size() > 8) throw MatrixError("arity above 8 unsupported");
      n.table = &m.table(f.conn());
      for (const auto& a : f.args()) n.children.push_back(add(m, a));
    }
    nodes_.push_back(std::move(n));
    index_.emplace(f, nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  std::vector<Node> nodes_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
  std::vector<std::string> vars_;
  std::vector<std::size_t> roots_;
  std::vector<TruthValue> values_;
};

// Visits every assignment to `n` slots in lexicographic order. The visitor
// returns false to stop early.
template <typename Visit>
void forEachAssignment(std::size_t n, ValuationMode mode, Visit&& visit) {
  const auto domain = mode == ValuationMode::All ? std::span<const TruthValue>(kAllValues)
                                                 : std::span<const TruthValue>(kClassicalValues);
  std::vector<std::size_t> digits(n, 0);
  std::vector<TruthValue> a(n, domain[0]);
  while (true) {
    if (!visit(std::span<const TruthValue>(a))) return;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++digits[i] < domain.size()) {
        a[i] = domain[digits[i]];
        break;
      }
      digits[i] = 0;
      a[i] = domain[0];
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

void checkLimit(std::size_t n, const EnumerationLimits& limits) {
  if (static_cast<int>(n) > limits.maxVars)
    throw EnumerationLimitError("input has " + std::to_string(n) + " variables; limit is " +
                                std::to_string(limits.maxVars));
}

}  // namespace

// ---------------------------------------------------------------------------

Table::Table(int arity, std::vector<TruthValue> cells) : arity_(arity), cells_(std::move(cells)) {
  if (arity < 0 || static_cast<int>(cells_.size()) != power3(arity))
    throw MatrixError("table size does not match arity");
}

TruthValue Table::at(std::span<const TruthValue> args) const {
  std::size_t idx = 0;
  for (auto a : args) idx = idx * 3 + static_cast<std::size_t>(index(a));
  return cells_[idx];
}

TruthValue Table::operator()(TruthValue a) const { return cells_[static_cast<std::size_t>(index(a))]; }

TruthValue Table::operator()(TruthValue a, TruthValue b) const {
  return cells_[static_cast<std::size_t>(index(a) * 3 + index(b))];
}

void Table::set(std::span<const TruthValue> args, TruthValue v) {
  std::size_t idx = 0;
  for (auto a : args) idx = idx * 3 + static_cast<std::size_t>(index(a));
  cells_.at(idx) = v;
}

Matrix::Matrix(Signature sig, std::map<Conn, Table> tables, std::array<bool, 3> designated)
    : sig_(std::move(sig)), tables_(std::move(tables)), designated_(designated) {
  for (const auto& e : sig_.entries()) {
    auto it = tables_.find(e.conn);
    if (it == tables_.end())
      throw MatrixError("no table for connective '" + std::string(connName(e.conn)) + "'");
    if (it->second.arity() != e.arity)
      throw MatrixError("table arity mismatch for '" + std::string(connName(e.conn)) + "'");
  }
}

Matrix Matrix::ol(const Signature& sig) {
  std::map<Conn, Table> prim{
      {Conn::Neg, olNeg()}, {Conn::And, olAnd()}, {Conn::Or, olOr()}, {Conn::Imp, olImp()}};
  const Matrix full(Signature::ol(), prim, {false, true, true});
  std::map<Conn, Table> tables;
  for (const auto& e : sig.entries()) {
    if (isPrimitive(e.conn)) {
      if (e.arity != defaultArity(e.conn))
        throw MatrixError("OL connective '" + std::string(connName(e.conn)) + "' has arity " +
                          std::to_string(defaultArity(e.conn)));
      tables.emplace(e.conn, prim.at(e.conn));
      continue;
    }
    if (e.conn == Conn::One || e.conn == Conn::Zero)
      throw MatrixError("constant '" + std::string(connName(e.conn)) +
                        "' is not term-definable in the OL-matrix");
    // Derived: evaluate the defining term pointwise.
    std::vector<Formula> args;
    static const char* names[] = {"x", "y"};
    for (int i = 0; i < e.arity; ++i) args.push_back(Formula::var(names[i]));
    const Formula body = expandDerived(Formula::app(e.conn, args), Logic::SOL);
    std::vector<TruthValue> cells;
    forEachAssignment(static_cast<std::size_t>(e.arity), ValuationMode::All,
                      [&](std::span<const TruthValue> a) {
                        Valuation v;
                        for (int i = 0; i < e.arity; ++i) v.values[names[i]] = a[i];
                        // HALF's reserved variable is free: any value gives 1/2.
                        v.values[kHalfVar] = TruthValue::Zero;
                        cells.push_back(eval(full, v, body));
                        return true;
                      });
    tables.emplace(e.conn, Table(e.arity, std::move(cells)));
  }
  return Matrix(sig, std::move(tables), {false, true, true});
}

const Table& Matrix::table(Conn c) const {
  auto it = tables_.find(c);
  if (it == tables_.end())
    throw MatrixError("matrix has no table for '" + std::string(connName(c)) + "'");
  return it->second;
}

Matrix Matrix::withTable(Conn c, Table t) const {
  auto tables = tables_;
  tables[c] = std::move(t);
  return Matrix(sig_, std::move(tables), designated_);
}

TruthValue Valuation::at(const std::string& var) const {
  auto it = values.find(var);
  if (it == values.end()) throw MatrixError("unbound variable '" + var + "'");
  return it->second;
}

TruthValue eval(const Matrix& m, const Valuation& v, const Formula& f) {
  if (f.isVar()) return v.at(f.name());
  TruthValue buf[8];
  const auto n = f.args().size();
  for (std::size_t i = 0; i < n; ++i) buf[i] = eval(m, v, f.args()[i]);
  return m.table(f.conn()).at(std::span<const TruthValue>(buf, n));
}

TruthTable truthTableOf(const Matrix& m, const Formula& f, ValuationMode mode,
                        EnumerationLimits limits) {
  const auto vs = variables(f);
  checkLimit(vs.size(), limits);
  TruthTable out;
  out.vars.assign(vs.begin(), vs.end());
  out.mode = mode;
  forEachAssignment(out.vars.size(), mode, [&](std::span<const TruthValue> a) {
    Valuation v;
    for (std::size_t i = 0; i < a.size(); ++i) v.values[out.vars[i]] = a[i];
    out.rows.emplace_back(std::vector<TruthValue>(a.begin(), a.end()), eval(m, v, f));
    return true;
  });
  return out;
}

ConsequenceVerdict entailsMC(const Matrix& m, std::span<const Formula> premises,
                             std::span<const Formula> conclusions, ValuationMode mode,
                             EnumerationLimits limits) {
  std::vector<Formula> all(premises.begin(), premises.end());
  all.insert(all.end(), conclusions.begin(), conclusions.end());
  const auto names = variables(all);
  checkLimit(names.size(), limits);

  // Slots ordered alphabetically so enumeration order is lexicographic.
  std::vector<std::string> sorted(names.begin(), names.end());
  Compiled compiled(m, all);
  std::vector<std::size_t> slotOf(compiled.varCount());
  for (std::size_t i = 0; i < compiled.varCount(); ++i)
    slotOf[i] = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), compiled.vars()[i]) - sorted.begin());

  ConsequenceVerdict verdict{true, std::nullopt};
  std::vector<TruthValue> local(compiled.varCount());
  forEachAssignment(sorted.size(), mode, [&](std::span<const TruthValue> a) {
    for (std::size_t i = 0; i < local.size(); ++i) local[i] = a[slotOf[i]];
    compiled.evaluate(local);
    for (std::size_t i = 0; i < premises.size(); ++i)
      if (!m.isDesignated(compiled.root(i))) return true;
    for (std::size_t i = 0; i < conclusions.size(); ++i)
      if (m.isDesignated(compiled.root(premises.size() + i))) return true;
    Valuation cm;
    cm.mode = mode;
    for (std::size_t i = 0; i < sorted.size(); ++i) cm.values[sorted[i]] = a[i];
    verdict = {false, std::move(cm)};
    return false;
  });
  return verdict;
}

ConsequenceVerdict entailsSC(const Matrix& m, std::span<const Formula> premises,
                             const Formula& conclusion, ValuationMode mode,
                             EnumerationLimits limits) {
  return entailsMC(m, premises, std::span<const Formula>(&conclusion, 1), mode, limits);
}

SeparatorReport isSeparatorSet(const Matrix& m, std::span<const Formula> separators) {
  for (const auto& s : separators)
    if (variables(s).size() != 1)
      throw MatrixError("separator '" + render(s) + "' must have exactly one variable");
  SeparatorReport report;
  report.ok = true;
  const std::pair<TruthValue, TruthValue> pairs[] = {
      {TruthValue::Half, TruthValue::Zero},
      {TruthValue::One, TruthValue::Zero},
      {TruthValue::One, TruthValue::Half},
  };
  for (auto [x, y] : pairs) {
    SeparatorReport::Pair entry{x, y, std::nullopt};
    for (const auto& s : separators) {
      const auto var = *variables(s).begin();
      Valuation vx, vy;
      vx.values[var] = x;
      vy.values[var] = y;
      if (m.isDesignated(eval(m, vx, s)) != m.isDesignated(eval(m, vy, s))) {
        entry.separator = s;
        break;
      }
    }
    report.ok = report.ok && entry.separator.has_value();
    report.pairs.push_back(std::move(entry));
  }
  return report;
}

Table binaryTableOf(const Matrix& m, const Formula& binaryTemplate) {
  const auto vs = variables(binaryTemplate);
  if (vs.size() != 2) throw MatrixError("template must have exactly two variables");
  const auto& x = *vs.begin();
  const auto& y = *std::next(vs.begin());
  std::vector<TruthValue> cells;
  for (auto a : kAllValues)
    for (auto b : kAllValues) {
      Valuation v;
      v.values[x] = a;
      v.values[y] = b;
      cells.push_back(eval(m, v, binaryTemplate));
    }
  return Table(2, std::move(cells));
}

bool isSemanticDisjunction(const Matrix& m, const Formula& binaryTemplate) {
  const Table t = binaryTableOf(m, binaryTemplate);
  for (auto a : kAllValues)
    for (auto b : kAllValues)
      if (m.isDesignated(t(a, b)) != (m.isDesignated(a) || m.isDesignated(b))) return false;
  return true;
}

bool isSemanticImplication(const Matrix& m, const Formula& binaryTemplate) {
  const Table t = binaryTableOf(m, binaryTemplate);
  for (auto a : kAllValues)
    for (auto b : kAllValues)
      if (m.isDesignated(t(a, b)) != (!m.isDesignated(a) || m.isDesignated(b))) return false;
  return true;
}

}  // namespace cooperkit
