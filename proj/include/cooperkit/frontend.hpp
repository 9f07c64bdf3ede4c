#pragma once

#include <stdexcept>
#include <string>

namespace cooperkit::frontend {

enum class Format { Json, Text, Dot };

// Exit status shared by the C API and the CLI.
enum Status : int { kOk = 0, kFail = 1, kError = 2 };

struct Result {
  int status = kOk;
  std::string output;
};

// Bad flag values, malformed formulas and precondition failures.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Format parseFormat(const std::string& s);

struct Settings {
  int maxVars = 12;
};

// Each command validates its arguments first and throws UsageError (or a
// library error) on invalid input. Formula sets are comma separated; the
// empty string is the empty set.
Result parseCommand(const std::string& formula, Format fmt);
Result tableCommand(const std::string& formula, const std::string& logic, Format fmt,
                    const Settings& s);
Result entailsCommand(const std::string& logic, const std::string& mode, const std::string& premises,
                      const std::string& conclusions, Format fmt, const Settings& s);
// calculus: mc-sol, mc-ol, sc-vee, sc-imp or hol. The single-conclusion
// calculi use bounded search and report UNKNOWN when it gives up.
Result proveCommand(const std::string& calculus, const std::string& sig, const std::string& gamma,
                    const std::string& pi, Format fmt, const Settings& s);
Result calculusCommand(const std::string& name, const std::string& sig, Format fmt);
Result translateCommand(const std::string& from, const std::string& via, const std::string& sig,
                        Format fmt);
Result algebraCommand(const std::string& check, Format fmt);

// Runs f, mapping exceptions to status kError with the message in `error`.
template <class F>
Result guarded(F&& f, std::string& error) {
  try {
    error.clear();
    return f();
  } catch (const std::exception& e) {
    error = e.what();
    return {kError, ""};
  }
}

}  // namespace cooperkit::frontend
