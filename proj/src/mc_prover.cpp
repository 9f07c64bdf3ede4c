// Analytic proof search for multiple-conclusion calculi.
//
// Labels are subsets of the analytic universe, stored as bitsets. The search
// expands a label by the first applicable instance whose succedent is
// disjoint from it (single-succedent instances before branching ones). Any
// proof of a label is also a proof of every superset, so a saturated label
// that meets no goal and admits no progressing instance refutes every label
// below it, the root included. This makes the first-choice search exact.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <unordered_map>

#include "cooperkit/mc_calculus.hpp"

namespace cooperkit {

namespace {

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  bool subsetOf(const Bits& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }
  Bits with(std::size_t i) const {
    Bits b = *this;
    b.set(i);
    return b;
  }

  std::size_t hash() const {
    std::size_t h = 0;
    for (auto w : words_) h = h * 0x100000001b3ULL ^ static_cast<std::size_t>(w);
    return h;
  }
  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

struct Instance {
  std::size_t rule;
  Substitution sigma;
  Bits antecedent;
  std::vector<std::size_t> succedent;  // distinct, in rule order
};

struct SearchNode {
  Bits label;
  bool star = false;
  long instance = -1;  // -1: leaf closed by the goal set
  std::vector<std::shared_ptr<const SearchNode>> children;
};

using NodePtr = std::shared_ptr<const SearchNode>;

class Prover {
 public:
  Prover(const MCCalculus& calculus, std::span<const Formula> gamma, std::span<const Formula> pi)
      : calculus_(calculus) {
    const auto universe = AnalyticUniverse::of(gamma, pi);
    formulas_.assign(universe.extended.begin(), universe.extended.end());
    for (std::size_t i = 0; i < formulas_.size(); ++i) index_.emplace(formulas_[i], i);

    root_ = Bits(formulas_.size());
    for (const auto& g : gamma) root_.set(index_.at(g));
    goal_ = Bits(formulas_.size());
    for (const auto& p : pi) goal_.set(index_.at(p));

    const auto& rules = calculus.rules();
    for (std::size_t r = 0; r < rules.size(); ++r) {
      for (auto& inst : instancesWithin(rules[r], universe)) {
        Instance in{r, std::move(inst.sigma), Bits(formulas_.size()), {}};
        for (const auto& a : inst.antecedent) in.antecedent.set(index_.at(a));
        for (const auto& s : inst.succedent) {
          const auto i = index_.at(s);
          if (std::find(in.succedent.begin(), in.succedent.end(), i) == in.succedent.end())
            in.succedent.push_back(i);
        }
        instances_.push_back(std::move(in));
      }
    }
  }

  std::size_t universeSize() const { return formulas_.size(); }
  std::size_t instanceCount() const { return instances_.size(); }

  NodePtr decide() {
    open_ = false;
    auto n = expand(root_);
    return open_ ? nullptr : n;
  }

  NodePtr smallest() {
    costs_.clear();
    cost(root_);
    return rebuild(root_);
  }

  ProofNode toProofNode(const NodePtr& n) const {
    ProofNode out;
    out.star = n->star;
    if (n->star) return out;
    for (std::size_t i = 0; i < formulas_.size(); ++i)
      if (n->label.test(i)) out.label.insert(formulas_[i]);
    if (n->instance >= 0) {
      const auto& inst = instances_[static_cast<std::size_t>(n->instance)];
      out.step = ProofNode::Step{calculus_.rules()[inst.rule].name, inst.sigma};
    }
    for (const auto& c : n->children) out.children.push_back(toProofNode(c));
    return out;
  }

 private:
  bool progressing(const Instance& in, const Bits& label) const {
    if (!in.antecedent.subsetOf(label)) return false;
    for (auto s : in.succedent)
      if (label.test(s)) return false;
    return true;
  }

  NodePtr node(const Bits& label, long inst, std::vector<NodePtr> children) {
    auto n = std::make_shared<SearchNode>();
    n->label = label;
    n->instance = inst;
    n->children = std::move(children);
    return n;
  }

  NodePtr starNode() {
    auto n = std::make_shared<SearchNode>();
    n->star = true;
    return n;
  }

  NodePtr expand(const Bits& label) {
    if (open_) return nullptr;
    if (label.intersects(goal_)) return node(label, -1, {});
    if (auto it = memo_.find(label); it != memo_.end()) return it->second;

    long forced = -1, branching = -1;
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      if (!progressing(instances_[i], label)) continue;
      if (instances_[i].succedent.size() <= 1) {
        forced = static_cast<long>(i);
        break;
      }
      if (branching < 0) branching = static_cast<long>(i);
    }
    const long chosen = forced >= 0 ? forced : branching;
    if (chosen < 0) {
      open_ = true;
      return nullptr;
    }
    const auto& in = instances_[static_cast<std::size_t>(chosen)];
    std::vector<NodePtr> children;
    if (in.succedent.empty()) {
      children.push_back(starNode());
    } else {
      for (auto s : in.succedent) {
        auto c = expand(label.with(s));
        if (!c) return nullptr;
        children.push_back(std::move(c));
      }
    }
    auto n = node(label, chosen, std::move(children));
    memo_.emplace(label, n);
    return n;
  }

  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max() / 4;

  // Size of the smallest proof of `label` (number of nodes, stars included).
  std::uint64_t cost(const Bits& label) {
    if (label.intersects(goal_)) return 1;
    if (auto it = costs_.find(label); it != costs_.end()) return it->second.first;
    costs_.emplace(label, std::make_pair(kInf, -1L));
    std::uint64_t best = kInf;
    long bestInst = -1;
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      const auto& in = instances_[i];
      if (!progressing(in, label)) continue;
      std::uint64_t c = 1;
      if (in.succedent.empty()) {
        c += 1;
      } else {
        for (auto s : in.succedent) {
          c += cost(label.with(s));
          if (c >= best) break;
        }
      }
      if (c < best) {
        best = c;
        bestInst = static_cast<long>(i);
      }
    }
    costs_[label] = {best, bestInst};
    return best;
  }

  NodePtr rebuild(const Bits& label) {
    if (label.intersects(goal_)) return node(label, -1, {});
    const long inst = costs_.at(label).second;
    const auto& in = instances_[static_cast<std::size_t>(inst)];
    std::vector<NodePtr> children;
    if (in.succedent.empty()) {
      children.push_back(starNode());
    } else {
      for (auto s : in.succedent) children.push_back(rebuild(label.with(s)));
    }
    return node(label, inst, std::move(children));
  }

  const MCCalculus& calculus_;
  std::vector<Formula> formulas_;
  std::map<Formula, std::size_t> index_;
  std::vector<Instance> instances_;
  Bits root_, goal_;
  bool open_ = false;
  std::unordered_map<Bits, NodePtr, BitsHash> memo_;
  std::unordered_map<Bits, std::pair<std::uint64_t, long>, BitsHash> costs_;
};

}  // namespace

ProveResult proveAnalytic(const MCCalculus& calculus, std::span<const Formula> gamma,
                          std::span<const Formula> pi, const ProveOptions& options) {
  Prover prover(calculus, gamma, pi);
  ProveResult result;
  result.universeSize = prover.universeSize();
  result.instanceCount = prover.instanceCount();
  auto tree = prover.decide();
  if (!tree) return result;
  if (prover.universeSize() <= options.minimizeUpTo) tree = prover.smallest();
  result.proved = true;
  result.tree = prover.toProofNode(tree);
  return result;
}

}  // namespace cooperkit
