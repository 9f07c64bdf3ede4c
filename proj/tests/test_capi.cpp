// Exercises the shared library through its C interface only.
#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "cooperkit/cooperkit.h"

namespace {

struct Session {
  ck_session* s = ck_session_new();
  ~Session() { ck_session_free(s); }
  nlohmann::json json() const { return nlohmann::json::parse(ck_last_output(s)); }
  std::string out() const { return ck_last_output(s); }
  std::string err() const { return ck_last_error(s); }
};

}  // namespace

TEST_CASE("session lifecycle and version") {
  CHECK(std::string(ck_version()) == "1.0.0");
  ck_session_free(nullptr);
  Session a;
  REQUIRE(a.s);
  CHECK(a.out().empty());
  CHECK(a.err().empty());
  CHECK(ck_parse(nullptr, "p", nullptr) == CK_ERROR);
  CHECK(ck_set_max_vars(a.s, -1) == CK_ERROR);
  CHECK(ck_set_max_vars(a.s, 4) == CK_OK);
}

TEST_CASE("parse") {
  Session a;
  REQUIRE(ck_parse(a.s, "~(p -> q)", nullptr) == CK_OK);
  const auto j = a.json()["ast"];
  CHECK(a.json()["rendered"] == "~(p -> q)");
  CHECK(j["conn"] == "neg");
  CHECK(j["args"][0]["conn"] == "imp");
  CHECK(j["args"][0]["args"][1]["var"] == "q");
  REQUIRE(ck_parse(a.s, "~(p -> q)", "text") == CK_OK);
  CHECK(a.out().find("~(p -> q)") != std::string::npos);

  CHECK(ck_parse(a.s, "p ->", nullptr) == CK_ERROR);
  CHECK_FALSE(a.err().empty());
  CHECK(ck_parse(a.s, nullptr, nullptr) == CK_ERROR);
  CHECK(ck_parse(a.s, "p", "yaml") == CK_ERROR);
  // A later success clears the previous error.
  CHECK(ck_parse(a.s, "p", nullptr) == CK_OK);
  CHECK(a.err().empty());
}

TEST_CASE("table") {
  Session a;
  REQUIRE(ck_table(a.s, "p | q", "sol", nullptr) == CK_OK);
  const auto j = a.json();
  CHECK(j["rows"].size() == 9);
  REQUIRE(ck_table(a.s, "p | ~p", "ol", nullptr) == CK_OK);
  CHECK(a.json()["rows"].size() == 2);
  CHECK(ck_table(a.s, "ONE", "sol", nullptr) == CK_ERROR);
  CHECK(ck_table(a.s, "ONE", "ol", nullptr) == CK_OK);
  CHECK(ck_table(a.s, "p", "bogus", nullptr) == CK_ERROR);

  ck_set_max_vars(a.s, 2);
  CHECK(ck_table(a.s, "a & b & c", "sol", nullptr) == CK_ERROR);
  CHECK(ck_table(a.s, "a & b", "sol", nullptr) == CK_OK);
}

TEST_CASE("entails") {
  Session a;
  REQUIRE(ck_entails(a.s, "sol", "mc", "p, ~p", "q", nullptr) == CK_FAIL);
  auto j = a.json();
  CHECK(j["holds"] == false);
  CHECK(j["countermodel"]["p"] == "1/2");
  CHECK(j["countermodel"]["q"] == "0");
  CHECK(ck_entails(a.s, "ol", "mc", "p, ~p", "q", nullptr) == CK_OK);
  CHECK(a.json()["holds"] == true);
  CHECK(ck_entails(a.s, "sol", "mc", "", "(p -> q) -> ~(p -> ~q)", nullptr) == CK_OK);
  CHECK(ck_entails(a.s, "ol", "sc", "p | (q -> r)", "p | r", nullptr) == CK_OK);
  CHECK(ck_entails(a.s, "sol", "sc", "p | (q -> r)", "p | r", nullptr) == CK_FAIL);
  j = a.json();
  CHECK(j["countermodel"] == nlohmann::json{{"p", "1/2"}, {"q", "0"}, {"r", "0"}});
  CHECK(ck_entails(a.s, "sol", "sc", "p", "p, q", nullptr) == CK_ERROR);
  CHECK(ck_entails(a.s, "sol", "xx", "p", "p", nullptr) == CK_ERROR);
}

TEST_CASE("prove") {
  Session a;
  REQUIRE(ck_prove(a.s, "mc-sol", nullptr, "", "~(~q -> q)", nullptr) == CK_OK);
  auto j = a.json();
  CHECK(j["status"] == "PROVED");
  CHECK(j["tree"]["rule"]["name"] == "rimp6");
  CHECK(j["tree"]["children"][0]["rule"]["name"] == "rimp5");

  REQUIRE(ck_prove(a.s, "mc-sol", "neg,imp", "", "~(~q -> q)", "dot") == CK_OK);
  CHECK(a.out().rfind("digraph", 0) == 0);
  CHECK(a.out().find("rimp6") != std::string::npos);

  CHECK(ck_prove(a.s, "mc-sol", nullptr, "p, ~p", "q", nullptr) == CK_FAIL);
  CHECK(ck_prove(a.s, "mc-ol", nullptr, "p, ~p", "q", nullptr) == CK_OK);
  CHECK(ck_prove(a.s, "mc-sol", "neg,imp", "", "p | q", nullptr) == CK_ERROR);
  CHECK(ck_prove(a.s, "mc-sol", "imp", "", "p", nullptr) == CK_ERROR);
  CHECK(ck_prove(a.s, "mc-sol", "neg,cvee", "", "p", nullptr) == CK_ERROR);
  CHECK(ck_prove(a.s, "nope", nullptr, "", "p", nullptr) == CK_ERROR);

  REQUIRE(ck_prove(a.s, "sc-vee", nullptr, "q cvee r", "(p -> q) cvee r", nullptr) == CK_OK);
  CHECK(ck_prove(a.s, "sc-vee", nullptr, "", "q", nullptr) == CK_FAIL);
  CHECK(ck_prove(a.s, "sc-vee", nullptr, "", "p, q", nullptr) == CK_ERROR);
}

TEST_CASE("calculus, translate, algebra") {
  Session a;
  REQUIRE(ck_calculus(a.s, "mc-sol", "neg,imp", nullptr) == CK_OK);
  CHECK(a.json()["rules"].size() == 9);
  REQUIRE(ck_calculus(a.s, "hol", nullptr, nullptr) == CK_OK);
  CHECK(a.json()["rules"].size() == 11);
  CHECK(ck_calculus(a.s, "zz", nullptr, nullptr) == CK_ERROR);

  REQUIRE(ck_translate(a.s, "mc-sol", "vee", nullptr, "text") == CK_OK);
  CHECK(a.out().find("ror10: (p | q) cvee r / p cvee q cvee r") != std::string::npos);
  REQUIRE(ck_translate(a.s, "mc-sol", "imp", nullptr, nullptr) == CK_OK);
  CHECK(a.json()["rules"][0]["name"] == "MP");
  CHECK(ck_translate(a.s, "mc-sol", "imp", "neg,or", nullptr) == CK_ERROR);

  REQUIRE(ck_algebra(a.s, "maltsev", nullptr) == CK_OK);
  CHECK(a.json()["status"] == "pass");
  CHECK(ck_algebra(a.s, "nonsense", nullptr) == CK_ERROR);
}

TEST_CASE("sessions are independent") {
  Session a, b;
  ck_parse(a.s, "p", "text");
  ck_parse(b.s, "q ->", nullptr);
  CHECK(a.err().empty());
  CHECK_FALSE(b.err().empty());
  CHECK(a.out().find('p') != std::string::npos);
}
