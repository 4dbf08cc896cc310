#pragma once

#include <stdexcept>
#include <string>

namespace branchdec {

// Caller broke a documented precondition (bad arguments, wrong universe, ...).
struct UsageError : std::invalid_argument {
  explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Input data failed validation (parse errors, axiom violations, malformed
// decomposition files).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numeric minimization could not be certified exact and the instance is too
// large for the enumeration fallback.  Never downgraded to a silent answer.
struct UnresolvedMinimization : std::runtime_error {
  explicit UnresolvedMinimization(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal invariant failed.  Always fatal; indicates a bug.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

namespace detail {
[[noreturn]] void throwInternal(const char* file, int line, const std::string& msg);
void usageCheck(bool cond, const std::string& msg);
}  // namespace detail

// Invariant checks stay on in release builds; the algorithms lean on them.
#define BD_REQUIRE(cond, msg)                                       \
  do {                                                              \
    if (!(cond)) ::branchdec::detail::throwInternal(__FILE__, __LINE__, (msg)); \
  } while (0)

#define BD_USAGE(cond, msg) ::branchdec::detail::usageCheck((cond), (msg))

}  // namespace branchdec
