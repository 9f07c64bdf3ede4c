// Command-line front end over the C interface.
//
// Exit status: 0 holds/proved/passed, 1 fails/unprovable/failed, 2 usage or
// input error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "cooperkit/cooperkit.h"

namespace {

constexpr const char* kAllSig = "neg,or,and,imp";

struct Options {
  std::string format = "json";
  std::string logic = "sol";
  std::string mode = "mc";
  std::string calculus = "mc-sol";
  std::string sig = kAllSig;
  std::string name = "mc-sol";
  std::string from = "mc-sol";
  std::string via = "vee";
  std::string check = "all";
  std::string formula;
  std::string first;
  std::string second;
};

int maxVarsFromEnv(ck_session* s) {
  const char* env = std::getenv("COOPERKIT_MAX_VARS");
  if (!env || !*env) return CK_OK;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0 || v > 64) {
    std::cerr << "error: COOPERKIT_MAX_VARS must be an integer in 0..64\n";
    return CK_ERROR;
  }
  return ck_set_max_vars(s, static_cast<int>(v));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-valued logic toolkit: tables, entailment, proofs, calculi, algebra checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ck_version()));
  Options o;

  auto formatOpt = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text", "dot"}));
  };

  auto* parse = app.add_subcommand("parse", "Parse a formula and print its syntax tree");
  parse->add_option("formula", o.formula, "Formula")->required();
  formatOpt(parse);

  auto* table = app.add_subcommand("table", "Truth table of a formula");
  table->add_option("formula", o.formula, "Formula")->required();
  table->add_option("--logic", o.logic, "sol (all valuations) or ol (classical variables)");
  formatOpt(table);

  auto* entails = app.add_subcommand("entails", "Semantic consequence with countermodel");
  entails->add_option("premises", o.first, "Comma separated premises (\"\" for none)")->required();
  entails->add_option("conclusions", o.second, "Comma separated conclusions")->required();
  entails->add_option("--logic", o.logic, "sol or ol");
  entails->add_option("--mode", o.mode, "mc (set of conclusions) or sc (one conclusion)");
  formatOpt(entails);

  auto* prove = app.add_subcommand("prove", "Search for a proof");
  prove->add_option("gamma", o.first, "Comma separated premises (\"\" for none)")->required();
  prove->add_option("pi", o.second, "Comma separated conclusions")->required();
  prove->add_option("--calculus", o.calculus, "mc-sol, mc-ol, sc-vee, sc-imp or hol");
  prove->add_option("--sig", o.sig, "Primitive connectives, e.g. neg,imp");
  formatOpt(prove);

  auto* calculus = app.add_subcommand("calculus", "List the rules of a calculus");
  calculus->add_option("--name", o.name, "mc-sol, mc-ol, sc-vee, sc-imp or hol");
  calculus->add_option("--sig", o.sig, "Primitive connectives, e.g. neg,imp");
  formatOpt(calculus);

  auto* translate = app.add_subcommand("translate", "Single-conclusion translation of a calculus");
  translate->add_option("--from", o.from, "mc-sol or mc-ol");
  translate->add_option("--via", o.via, "vee or imp");
  translate->add_option("--sig", o.sig, "Primitive connectives, e.g. neg,imp");
  formatOpt(translate);

  auto* algebra = app.add_subcommand("algebra", "Run algebraic checks on the three-element algebra");
  algebra->add_option("--check", o.check, "Check group (all, maltsev, alg4, hol, orders, ...)");
  formatOpt(algebra);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return CK_ERROR;
  }

  std::unique_ptr<ck_session, decltype(&ck_session_free)> session(ck_session_new(), ck_session_free);
  if (!session) {
    std::cerr << "error: out of memory\n";
    return CK_ERROR;
  }
  ck_session* s = session.get();
  if (maxVarsFromEnv(s) != CK_OK) return CK_ERROR;

  const char* fmt = o.format.c_str();
  int rc = CK_ERROR;
  if (parse->parsed()) rc = ck_parse(s, o.formula.c_str(), fmt);
  else if (table->parsed()) rc = ck_table(s, o.formula.c_str(), o.logic.c_str(), fmt);
  else if (entails->parsed())
    rc = ck_entails(s, o.logic.c_str(), o.mode.c_str(), o.first.c_str(), o.second.c_str(), fmt);
  else if (prove->parsed())
    rc = ck_prove(s, o.calculus.c_str(), o.sig.c_str(), o.first.c_str(), o.second.c_str(), fmt);
  else if (calculus->parsed()) rc = ck_calculus(s, o.name.c_str(), o.sig.c_str(), fmt);
  else if (translate->parsed()) rc = ck_translate(s, o.from.c_str(), o.via.c_str(), o.sig.c_str(), fmt);
  else if (algebra->parsed()) rc = ck_algebra(s, o.check.c_str(), fmt);

  std::fputs(ck_last_output(s), stdout);
  if (rc == CK_ERROR) std::cerr << "error: " << ck_last_error(s) << "\n";
  return rc;
}
