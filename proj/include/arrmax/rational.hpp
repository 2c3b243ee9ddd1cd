// Exact rational coordinates. Every predicate in the library runs on these;
// no floating point is ever consulted for a decision.

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace arrmax {

using Rat = mpq_class;

// Canonical fraction n/d (d may be negative or zero-checked by GMP).
Rat rat(long n, long d = 1);

int sign(const Rat& q);

// Accepts "p/q", plain integers, and finite decimals ("0.5" -> 1/2).
std::optional<Rat> parse_rat(std::string_view s);

// "p/q", or just "p" when the denominator is 1.
std::string rat_str(const Rat& q);

// Display-only approximation; never fed back into predicates.
double approx(const Rat& q);

}  // namespace arrmax
