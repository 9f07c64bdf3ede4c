#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "cooperkit/algebra.hpp"
#include "cooperkit/formula.hpp"
#include "cooperkit/matrix.hpp"
#include "cooperkit/mc_calculus.hpp"
#include "cooperkit/sc_calculus.hpp"

namespace cooperkit {

using Json = nlohmann::ordered_json;

// {"var": "p"} or {"conn": "imp", "args": [...]}; constants have no args.
Json formulaToJson(const Formula& f);
Formula formulaFromJson(const Json& j);

// {var: "0" | "1/2" | "1"}. Reserved variables introduced by constant
// macros (leading underscore) are left out.
Json valuationToJson(const Valuation& v);

// {"label": [...] | "star", "rule": {"name", "subst"} | null, "children"}.
Json proofTreeToJson(const ProofNode& tree);

// Graphviz digraph; each node shows the formulas it adds to its parent's
// label (the root shows its whole label), STAR nodes show "*".
std::string proofTreeToDot(const ProofNode& tree);

// Indented text rendering, one node per line.
std::string proofTreeToText(const ProofNode& tree);

Json mcRuleToJson(const MCRule& r);
Json scRuleToJson(const SCRule& r);

// [{"formula", "rule" | null, "subst", "premises"}] in step order.
Json derivationToJson(const SCDerivation& d);
std::string derivationToText(const SCDerivation& d);

// {"check", "status": "pass" | "fail", "summary", "witnesses"}.
Json reportToJson(const CheckReport& r);
std::string reportToText(const CheckReport& r);

// Truth table rows reordered so every variable runs through 1/2, 1, 0.
Json truthTableToJson(const TruthTable& t);
std::string truthTableToText(const TruthTable& t, const std::string& formula);

// Binary or unary connective table as a grid in the order 1/2, 1, 0.
std::string connectiveTableToText(const Table& t, std::string_view symbol);

}  // namespace cooperkit
