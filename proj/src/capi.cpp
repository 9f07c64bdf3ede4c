#include "cooperkit/cooperkit.h"

#include <string>

#include "cooperkit/frontend.hpp"

namespace fe = cooperkit::frontend;

struct ck_session {
  fe::Settings settings;
  std::string output;
  std::string error;
};

namespace {

std::string str(const char* s, const char* fallback = "") { return s ? s : fallback; }

template <class F>
int run(ck_session* s, F&& f) {
  if (!s) return CK_ERROR;
  s->output.clear();
  auto r = fe::guarded([&] { return f(); }, s->error);
  s->output = std::move(r.output);
  return r.status;
}

fe::Format format(const char* f) { return fe::parseFormat(str(f, "json")); }

constexpr const char* kDefaultSig = "neg,or,and,imp";

}  // namespace

extern "C" {

ck_session* ck_session_new(void) { return new (std::nothrow) ck_session(); }

void ck_session_free(ck_session* s) { delete s; }

int ck_set_max_vars(ck_session* s, int max_vars) {
  if (!s) return CK_ERROR;
  if (max_vars < 0) {
    s->error = "max_vars must be non-negative";
    return CK_ERROR;
  }
  s->settings.maxVars = max_vars;
  return CK_OK;
}

int ck_parse(ck_session* s, const char* formula, const char* fmt) {
  return run(s, [&] { return fe::parseCommand(str(formula), format(fmt)); });
}

int ck_table(ck_session* s, const char* formula, const char* logic, const char* fmt) {
  return run(s, [&] { return fe::tableCommand(str(formula), str(logic, "sol"), format(fmt), s->settings); });
}

int ck_entails(ck_session* s, const char* logic, const char* mode, const char* premises,
               const char* conclusions, const char* fmt) {
  return run(s, [&] {
    return fe::entailsCommand(str(logic, "sol"), str(mode, "mc"), str(premises), str(conclusions),
                              format(fmt), s->settings);
  });
}

int ck_prove(ck_session* s, const char* calculus, const char* sig, const char* gamma, const char* pi,
             const char* fmt) {
  return run(s, [&] {
    return fe::proveCommand(str(calculus, "mc-sol"), str(sig, kDefaultSig), str(gamma), str(pi),
                            format(fmt), s->settings);
  });
}

int ck_calculus(ck_session* s, const char* name, const char* sig, const char* fmt) {
  return run(s, [&] { return fe::calculusCommand(str(name, "mc-sol"), str(sig, kDefaultSig), format(fmt)); });
}

int ck_translate(ck_session* s, const char* from, const char* via, const char* sig, const char* fmt) {
  return run(s, [&] {
    return fe::translateCommand(str(from, "mc-sol"), str(via, "vee"), str(sig, kDefaultSig), format(fmt));
  });
}

int ck_algebra(ck_session* s, const char* check, const char* fmt) {
  return run(s, [&] { return fe::algebraCommand(str(check, "all"), format(fmt)); });
}

const char* ck_last_output(const ck_session* s) { return s ? s->output.c_str() : ""; }

const char* ck_last_error(const ck_session* s) { return s ? s->error.c_str() : "no session"; }

const char* ck_version(void) { return "1.0.0"; }

}  // extern "C"
