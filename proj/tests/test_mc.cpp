#include <doctest.h>

#include <random>

#include "cooperkit/mc_calculus.hpp"
#include "cooperkit/parser.hpp"
#include "oracle.hpp"

using namespace cooperkit;

namespace {

std::vector<Formula> list(const char* s) { return parseList(s); }

// All formulas occurring in labels of the tree.
void collect(const ProofNode& n, FormulaSet& out) {
  out.insert(n.label.begin(), n.label.end());
  for (const auto& c : n.children) collect(c, out);
}

std::vector<std::string> names(const MCCalculus& c) {
  std::vector<std::string> out;
  for (const auto& r : c.rules()) out.push_back(r.name);
  return out;
}

}  // namespace

TEST_CASE("rule groups") {
  CHECK(solRules(Signature::parse("neg")).rules().size() == 3);
  CHECK(solRules(Signature::parse("neg,imp")).rules().size() == 9);
  CHECK(solRules(Signature::ol()).rules().size() == 28);
  CHECK_THROWS_AS(solRules(Signature::parse("imp")), CalculusError);
  const auto n = names(solRules(Signature::parse("neg,and")));
  CHECK(n == std::vector<std::string>{"rneg1", "rneg2", "rneg3", "rand1", "rand2", "rand3", "rand4",
                                      "rand5", "rand6", "rand7", "rand8"});

  const auto ol = olRules(Signature::ol(), {"p", "q"});
  CHECK(ol.rules().size() == 30);
  const auto* x = ol.find(explosionRuleName("p"));
  REQUIRE(x);
  CHECK(x->succedent.empty());
  CHECK(x->fixedVars == std::set<std::string>{"p"});
  CHECK(olRules(Signature::ol(), {}).rules().size() == 28);
}

TEST_CASE("rule soundness") {
  const auto m = Matrix::ol();
  const auto sol = solRules(Signature::ol());
  for (const auto& r : sol.rules()) CHECK_MESSAGE(ruleIsSound(r, m, ValuationMode::All), r.name);
  const auto ol = olRules(Signature::ol(), {"p"});
  const auto* x = ol.find(explosionRuleName("p"));
  CHECK(ruleIsSound(*x, m, ValuationMode::Bivalent));
  CHECK_FALSE(ruleIsSound(*x, m, ValuationMode::All));
  CHECK_FALSE(ruleIsSound(MCRule{"bogus", list("p"), list("~p"), {}}, m, ValuationMode::All));
}

TEST_CASE("instances within a universe") {
  const auto sol = solRules(Signature::ol());
  {
    const auto u = AnalyticUniverse::of({}, list("q"));
    const auto inst = instancesWithin(*sol.find("rneg3"), u);
    REQUIRE(inst.size() == 1);
    CHECK(inst[0].sigma.at("p") == parse("q"));
  }
  {
    const auto u = AnalyticUniverse::of({}, list("a -> b"));
    const auto inst = instancesWithin(*sol.find("rimp2"), u);
    REQUIRE(inst.size() == 1);
    CHECK(inst[0].sigma.at("p") == parse("a"));
    CHECK(inst[0].sigma.at("q") == parse("b"));
  }
  {
    const auto ol = olRules(Signature::ol(), {"p"});
    const auto u = AnalyticUniverse::of(list("p"), list("q"));
    const auto inst = instancesWithin(*ol.find(explosionRuleName("p")), u);
    REQUIRE(inst.size() == 1);
    CHECK(inst[0].antecedent == list("p, ~p"));
  }
  const auto u = AnalyticUniverse::of(list("~(p -> q)"), {});
  CHECK(u.base.size() == 4);
  // ~(p -> q) is already in the base.
  CHECK(u.extended.size() == 7);
}

TEST_CASE("Aristotle's thesis: proof shape and checking") {
  const auto sol = solRules(Signature::ol());
  const auto pi = list("~(~q -> q)");
  const auto r = proveAnalytic(sol, {}, pi);
  REQUIRE(r.proved);
  CHECK(r.tree->ruleNames() == std::vector<std::string>{"rimp6", "rimp5"});
  CHECK(r.tree->nodeCount() == 4);
  CHECK(r.tree->step->sigma.at("p") == parse("~q"));
  CHECK(r.tree->step->sigma.at("q") == parse("q"));
  CHECK(checkProofTree(sol, *r.tree, {}, pi).ok);

  auto bad = *r.tree;
  bad.step->rule = "rimp4";
  const auto c = checkProofTree(sol, bad, {}, pi);
  CHECK_FALSE(c.ok);
  CHECK(c.path == "");

  auto badChild = *r.tree;
  badChild.children[0].step->rule = "rimp4";
  const auto c2 = checkProofTree(sol, badChild, {}, pi);
  CHECK_FALSE(c2.ok);
  CHECK(c2.path == "0");

  auto leafless = *r.tree;
  leafless.children.pop_back();
  CHECK_FALSE(checkProofTree(sol, leafless, {}, pi).ok);

  auto wrongRoot = *r.tree;
  wrongRoot.label.insert(parse("q"));
  CHECK_FALSE(checkProofTree(sol, wrongRoot, {}, pi).ok);
}

TEST_CASE("Boethius' thesis: proof shape") {
  const auto sol = solRules(Signature::ol());
  const auto pi = list("(p -> q) -> ~(p -> ~q)");
  const auto r = proveAnalytic(sol, {}, pi);
  REQUIRE(r.proved);
  CHECK(r.tree->ruleNames() ==
        std::vector<std::string>{"rimp3", "rimp6", "rimp1", "rneg1", "rimp5", "rimp2", "rimp2"});
  CHECK(checkProofTree(sol, *r.tree, {}, pi).ok);
}

TEST_CASE("explosion needs the identity-instance rules") {
  const auto g = list("p, ~p");
  const auto pi = list("q");
  CHECK_FALSE(proveAnalytic(solRules(Signature::ol()), g, pi).proved);
  const auto ol = olRulesFor(Signature::ol(), g, pi);
  const auto r = proveAnalytic(ol, g, pi);
  REQUIRE(r.proved);
  CHECK(checkProofTree(ol, *r.tree, g, pi).ok);

  const auto g2 = list("p | (q -> r)");
  const auto pi2 = list("p | r");
  CHECK_FALSE(proveAnalytic(solRules(Signature::ol()), g2, pi2).proved);
  const auto ol2 = olRulesFor(Signature::ol(), g2, pi2);
  CHECK(proveAnalytic(ol2, g2, pi2).proved);
}

TEST_CASE("identity-instance rules reject non-identity substitutions") {
  const auto ol = olRules(Signature::ol(), {"p"});
  ProofNode root;
  root.label = {parse("~r"), parse("~~r")};
  root.step = ProofNode::Step{explosionRuleName("p"), {{"p", parse("~r")}}};
  ProofNode star;
  star.star = true;
  root.children.push_back(star);
  const auto g = list("~r, ~~r");
  CHECK_FALSE(checkProofTree(ol, root, g, list("q")).ok);
}

TEST_CASE("prover agrees with the reference semantics on a sample") {
  const std::vector<std::string> pq{"p", "q"};
  const auto fs = enumerateFormulas(Signature::ol(), pq, 2);
  const auto sol = solRules(Signature::ol());
  std::mt19937 rng(5);
  ProveOptions fast;
  fast.minimizeUpTo = 0;
  for (int i = 0; i < 400; ++i) {
    std::vector<Formula> g{fs[rng() % fs.size()]}, pi{fs[rng() % fs.size()]};
    if (rng() % 2) g.push_back(fs[rng() % fs.size()]);
    const auto r = proveAnalytic(sol, g, pi, fast);
    REQUIRE(r.proved == oracle::entailsMC(g, pi, false));
    const auto ol = olRulesFor(Signature::ol(), g, pi);
    const auto r2 = proveAnalytic(ol, g, pi, fast);
    REQUIRE(r2.proved == oracle::entailsMC(g, pi, true));
    if (r.proved) {
      REQUIRE(checkProofTree(sol, *r.tree, g, pi).ok);
      // Analyticity: every formula used lies in the extended universe or
      // the query.
      const auto u = AnalyticUniverse::of(g, pi);
      FormulaSet used;
      collect(*r.tree, used);
      for (const auto& f : used) REQUIRE(u.extended.count(f));
    }
    if (r2.proved) REQUIRE(checkProofTree(ol, *r2.tree, g, pi).ok);
  }
}

TEST_CASE("fragments") {
  const auto sig = Signature::parse("neg,imp");
  const auto calc = solRules(sig);
  CHECK(proveAnalytic(calc, {}, list("~(~q -> q)")).proved);
  CHECK_FALSE(proveAnalytic(calc, {}, list("q -> ~q")).proved);
  const auto sigOr = Signature::parse("neg,or");
  CHECK(proveAnalytic(solRules(sigOr), list("p"), list("p | q, ~q")).proved);
}

TEST_CASE("monotonicity and determinism") {
  const auto sol = solRules(Signature::ol());
  const std::vector<std::string> pq{"p", "q"};
  const auto fs = enumerateFormulas(Signature::ol(), pq, 1);
  std::mt19937 rng(9);
  ProveOptions fast;
  fast.minimizeUpTo = 0;
  int provedCount = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<Formula> g{fs[rng() % fs.size()]}, pi{fs[rng() % fs.size()]};
    const auto r = proveAnalytic(sol, g, pi, fast);
    if (!r.proved) continue;
    ++provedCount;
    auto g2 = g;
    g2.push_back(fs[rng() % fs.size()]);
    auto pi2 = pi;
    pi2.push_back(fs[rng() % fs.size()]);
    REQUIRE(proveAnalytic(sol, g2, pi2, fast).proved);
  }
  CHECK(provedCount > 0);

  const auto pi = list("(p -> q) -> ~(p -> ~q)");
  const auto a = proveAnalytic(sol, {}, pi);
  const auto b = proveAnalytic(sol, {}, pi);
  CHECK(a.tree->ruleNames() == b.tree->ruleNames());
  CHECK(a.tree->nodeCount() == b.tree->nodeCount());
}
