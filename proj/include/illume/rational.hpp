#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace illume {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rat>;
using DVec = std::vector<double>;

// Parses "p", "-p", "p/q" with optional whitespace trimmed by the caller.
// Throws std::invalid_argument on malformed input or zero denominator.
Rat parse_rat(const std::string& s);

// "p" when the denominator is 1, otherwise "p/q" with q > 0.
std::string format_rat(const Rat& r);

int sign_of(const Rat& r);
Rat abs_rat(const Rat& r);
double to_double(const Rat& r);

Int binomial(unsigned n, unsigned k);
Int pow_int(const Int& base, unsigned e);
Rat pow_rat(const Rat& base, unsigned e);

// Whitespace-separated rationals; empty input gives an empty vector.
RatVec parse_rat_vec(const std::string& line);
std::string format_rat_vec(const RatVec& v, char sep = ' ');

Rat dot(const RatVec& a, const RatVec& b);
RatVec abs_sorted_desc(const RatVec& x);
Rat linf_norm(const RatVec& x);
bool is_zero_vec(const RatVec& x);
bool lex_less(const RatVec& a, const RatVec& b);

DVec to_dvec(const RatVec& x);

}  // namespace illume
