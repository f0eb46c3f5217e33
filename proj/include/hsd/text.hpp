#pragma once

#include <string>

#include "hsd/ratfn.hpp"

namespace hsd {

// ASCII syntax for F_p(t): sums of monomials like "t^3+2*t+1", fractions as
// "num/den" with '/' binding like '*', parentheses and unary minus allowed.
// The variable letter defaults to 't'; parse errors name the offending
// position.
RatFn parse_ratfn(const std::string& text, std::uint64_t p, char var = 't');

std::string to_string(const Poly& f, char var = 't');
std::string to_string(const RatFn& r, char var = 't');

} // namespace hsd
