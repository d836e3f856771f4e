#pragma once

#include "illume/rational.hpp"

#include <string>
#include <vector>

namespace illume {

enum class Family { DualOrbit, Lp };

// A 1-symmetric convex body, i.e. the unit ball of a norm invariant under
// coordinate permutations and sign flips.
//
// DualOrbit stores the norm as max_j <w_j, sort_desc(|x|)> over a finite list
// of weight rows; rows are kept sorted nonincreasing, nonnegative, and scaled
// so that max_j w_j[0] == 1 (equivalently the basis vector e_1 has norm 1,
// which also forces || . || >= || . ||_inf). This family is piecewise linear
// and everything downstream of it is evaluated in exact rational arithmetic.
//
// Lp stores a finite exponent p > 1. p == 1 and p == inf are canonicalized to
// DualOrbit on construction, so an Lp body is always smooth off the origin.
struct SymBody {
  int n = 0;
  Family family = Family::DualOrbit;
  std::vector<RatVec> weights;
  Rat p = 0;
  std::string label;  // display-only shorthand name; not serialized

  bool is_pl() const { return family == Family::DualOrbit; }
};

bool operator==(const SymBody& a, const SymBody& b);

SymBody make_dual_orbit(int n, std::vector<RatVec> rows);
SymBody make_cube(int n);
SymBody make_ell1(int n);
SymBody make_topk(int n, int k);
SymBody make_cube_cap_l1(int n, const Rat& r);
SymBody make_lp(int n, const Rat& p);
SymBody make_lp_inf(int n);

// Accepts a JSON record such as
//   {"family":"dual_orbit","n":3,"weights":[["1","1","0"]]}
//   {"family":"topk","n":5,"k":2}
//   {"family":"lp","n":4,"p":"3/2"}
// or a shorthand string: cube:3, ell1:4, topk(2):5, cube_cap_l1(3/2):3,
// lp(3/2):4, lp(inf):3. Throws std::invalid_argument with a specific message
// on malformed or invariant-violating input.
SymBody parse_body(const std::string& text);

// Canonical JSON (sorted keys, no whitespace, rationals as "p/q" strings,
// shorthands expanded). parse_body(serialize_body(b)) == b.
std::string serialize_body(const SymBody& b);

// SHA-256 hex digest of serialize_body(b); certificates pin this.
std::string body_digest(const SymBody& b);

// Exact gauge value; DualOrbit only (throws for Lp).
Rat gauge(const SymBody& b, const RatVec& x);

// Floating gauge for either family.
double gauge_d(const SymBody& b, const DVec& x);

// ||e_1 + ... + e_n||_B / ||e_1||_B; the denominator is 1 by normalization.
// Exact for DualOrbit (throws for Lp); the _d variant covers both families.
Rat distance_to_cube(const SymBody& b);
double distance_to_cube_d(const SymBody& b);

// Exact set equality with [-1,1]^n (distance == 1). Redundant-row
// representations of the cube are detected as cubes.
bool is_cube(const SymBody& b);

}  // namespace illume
