#include <doctest.h>

#include <random>

#include "cooperkit/formula.hpp"
#include "cooperkit/macros.hpp"
#include "cooperkit/parser.hpp"

using namespace cooperkit;

namespace {
Formula v(const char* n) { return Formula::var(n); }
}  // namespace

TEST_CASE("parser follows the declared precedence and associativity") {
  CHECK(parse("~(~q -> q)") == neg(imp(neg(v("q")), v("q"))));
  CHECK(parse("p -> q -> r") == imp(v("p"), imp(v("q"), v("r"))));
  CHECK(parse("p & q | r") == disj(conj(v("p"), v("q")), v("r")));
  CHECK(parse("p | q | r") == disj(disj(v("p"), v("q")), v("r")));
  CHECK(parse("p cap q cup r") == mk(Conn::Cup, mk(Conn::Cap, v("p"), v("q")), v("r")));
  CHECK(parse("p => q >> r") == mk(Conn::DImp, v("p"), mk(Conn::Hook, v("q"), v("r"))));
  CHECK(parse("<>~p") == mk(Conn::Dia, neg(v("p"))));
  CHECK(parse("p <-> q -> r") == mk(Conn::Iff, v("p"), imp(v("q"), v("r"))));
  CHECK(parse("HALF").conn() == Conn::Half);
  CHECK(parse("p1_x").name() == "p1_x");
}

TEST_CASE("parser reports errors with a position") {
  CHECK_THROWS_AS(parse("p ->"), ParseError);
  CHECK_THROWS_AS(parse("(p"), ParseError);
  CHECK_THROWS_AS(parse("p q"), ParseError);
  CHECK_THROWS_AS(parse("P"), ParseError);
  CHECK_THROWS_AS(parse("cap"), ParseError);
  try {
    parse("p & $");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("primitive connectives outside the signature are rejected") {
  CHECK_THROWS(parse("p & q", Signature::parse("neg,imp")));
  CHECK_NOTHROW(parse("~p -> q", Signature::parse("neg,imp")));
}

TEST_CASE("signatures") {
  CHECK(Signature::ol().entries().size() == 4);
  CHECK(Signature::parse("neg,imp").contains(Conn::Imp));
  CHECK_FALSE(Signature::parse("neg,imp").contains(Conn::Or));
  CHECK_THROWS_AS(Signature::parse("neg,neg"), SignatureError);
  CHECK_THROWS_AS(Signature::parse("neg,bogus"), SignatureError);
}

TEST_CASE("subformulas, variables, substitution") {
  const auto f = parse("~(p -> q)");
  CHECK(subformulas(f) == FormulaSet{f, parse("p -> q"), v("p"), v("q")});
  CHECK(variables(parse("p | (q -> r)")) == std::set<std::string>{"p", "q", "r"});
  CHECK(substitute({{"p", neg(v("r"))}}, parse("p -> p")) == parse("~r -> ~r"));
  CHECK(substitute({}, f) == f);
}

TEST_CASE("enumerateFormulas counts and uniqueness") {
  const std::vector<std::string> p{"p"};
  CHECK(enumerateFormulas(Signature::parse("neg"), p, 0) == std::vector<Formula>{v("p")});
  CHECK(enumerateFormulas(Signature::parse("neg"), p, 2) ==
        std::vector<Formula>{v("p"), neg(v("p")), neg(neg(v("p")))});
  CHECK(enumerateFormulas(Signature::ol(), p, 1).size() == 5);
  const std::vector<std::string> pq{"p", "q"};
  const auto d1 = enumerateFormulas(Signature::ol(), pq, 1);
  CHECK(d1.size() == 2 + 2 + 3 * 4);
  const auto d2 = enumerateFormulas(Signature::ol(), pq, 2);
  // height exactly 2: negations of height-1 plus binary pairs with at least
  // one height-1 argument.
  const std::size_t h1 = d1.size() - 2;
  CHECK(d2.size() == d1.size() + h1 + 3 * (d1.size() * d1.size() - 4));
  CHECK(FormulaSet(d2.begin(), d2.end()).size() == d2.size());
  for (const auto& f : d2) CHECK(f.height() <= 2);
}

TEST_CASE("render/parse round trip on enumerated formulas") {
  const std::vector<std::string> pq{"p", "q"};
  const auto fs = enumerateFormulas(Signature::ol(), pq, 2);
  for (const auto& f : fs) REQUIRE(parse(render(f)) == f);

  // Depth 3 over one variable, plus a random sample with derived connectives.
  const std::vector<std::string> p{"p"};
  for (const auto& f : enumerateFormulas(Signature::ol(), p, 3)) REQUIRE(parse(render(f)) == f);

  std::mt19937 rng(7);
  const Conn binaries[] = {Conn::And, Conn::Or, Conn::Imp, Conn::DImp, Conn::Hook,
                           Conn::Cup, Conn::Cap, Conn::CVee, Conn::Iff};
  auto gen = [&](auto&& self, int depth) -> Formula {
    const int k = depth == 0 ? 0 : static_cast<int>(rng() % 4);
    if (k == 0) return v(rng() % 2 ? "p" : "q");
    if (k == 1) return rng() % 2 ? neg(self(self, depth - 1)) : mk(Conn::Dia, self(self, depth - 1));
    return mk(binaries[rng() % 9], self(self, depth - 1), self(self, depth - 1));
  };
  for (int i = 0; i < 2000; ++i) {
    const auto f = gen(gen, 4);
    REQUIRE_MESSAGE(parse(render(f)) == f, render(f));
  }
}

TEST_CASE("mixed connectives at equal precedence keep their parentheses") {
  const auto f = mk(Conn::CVee, disj(v("p"), v("q")), v("r"));
  CHECK(render(f) == "(p | q) cvee r");
  CHECK(parse(render(f)) == f);
}

TEST_CASE("substitution composes") {
  std::mt19937 rng(11);
  const std::vector<std::string> pq{"p", "q"};
  const auto fs = enumerateFormulas(Signature::ol(), pq, 1);
  for (int i = 0; i < 300; ++i) {
    const Substitution s{{"p", fs[rng() % fs.size()]}, {"q", fs[rng() % fs.size()]}};
    const Substitution t{{"p", fs[rng() % fs.size()]}};
    const auto& f = fs[rng() % fs.size()];
    CHECK(substitute(compose(s, t), f) == substitute(s, substitute(t, f)));
  }
}

TEST_CASE("matching") {
  Substitution s;
  CHECK(match(parse("p -> q"), parse("~r -> (a & b)"), s));
  CHECK(s.at("p") == parse("~r"));
  CHECK(s.at("q") == parse("a & b"));
  Substitution s2;
  CHECK_FALSE(match(parse("p -> p"), parse("a -> b"), s2));
  Substitution s3;
  CHECK_FALSE(match(parse("p"), parse("~p"), s3, {"p"}));
}

TEST_CASE("macro expansion") {
  CHECK(expandDerived(parse("<>p")) == parse("~p -> p"));
  CHECK(expandDerived(parse("p => q")) == parse("~p | q"));
  CHECK(expandDerived(parse("p cvee q")) == parse("~(~p | q) | (~(~q | p) | p)"));
  CHECK(expandDerived(parse("p cvee q")) == expandDerived(parse("(p => q) => ((q => p) => p)")));
  const auto half = expandDerived(parse("HALF"));
  CHECK(render(half) == std::string(kHalfVar) + " -> ~" + kHalfVar + " -> " + kHalfVar);
  CHECK_THROWS_AS(expandDerived(parse("ONE")), MacroError);
  CHECK_THROWS_AS(expandDerived(parse("ZERO")), MacroError);
  CHECK(render(expandDerived(parse("ONE"), Logic::OL)) == "_c1 | ~_c1");
  CHECK(render(expandDerived(parse("ZERO"), Logic::OL)) == "~(_c1 | ~_c1)");
  // Template variables never capture object variables.
  CHECK(expandDerived(parse("x => y")) == parse("~x | y"));
  CHECK(expandDerived(parse("y => x")) == parse("~y | x"));
}

TEST_CASE("expandDerived is idempotent and yields primitives only") {
  const std::vector<std::string> pq{"p", "q"};
  Signature all({{Conn::Neg, 1}, {Conn::Imp, 2}, {Conn::Dia, 1}, {Conn::CVee, 2}, {Conn::Cup, 2},
                 {Conn::Cap, 2}, {Conn::Hook, 2}});
  for (const auto& f : enumerateFormulas(all, pq, 2)) {
    const auto e = expandDerived(f);
    CHECK(e.isPrimitive());
    CHECK(expandDerived(e) == e);
  }
}

TEST_CASE("cyclic macro tables are rejected") {
  MacroTable t;
  t.define(Conn::Dia, mk(Conn::DImp, v("x"), v("x")));
  t.define(Conn::DImp, disj(mk(Conn::Dia, v("x")), v("y")));
  CHECK_THROWS_AS(t.validate(), MacroError);
  MacroTable u;
  u.define(Conn::Dia, mk(Conn::DImp, v("x"), v("x")));
  CHECK_THROWS_AS(u.validate(), MacroError);
}

TEST_CASE("lowering to a smaller signature") {
  const auto f = parse("p | q");
  const auto g = lowerTo(f, Signature::parse("neg,and"));
  CHECK(g == parse("~(~p & ~q)"));
  CHECK_THROWS_AS(lowerTo(f, Signature::parse("neg,imp")), SignatureError);
}
