#pragma once

#include <stdexcept>
#include <string>

namespace hsd {

// All library failures are thrown as Error. Inconsistent linear systems are
// not errors (linsolve returns a certificate); everything else that violates
// a documented precondition or an internal invariant throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

} // namespace hsd
