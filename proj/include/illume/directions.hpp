#pragma once

#include "illume/bodies.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace illume {

enum class DirLabel { T, T1, T2, CubeCorners, Custom, Random };

struct DirectionSet {
  DirLabel label = DirLabel::Custom;
  int n = 0;
  std::vector<RatVec> dirs;

  std::size_t size() const { return dirs.size(); }
};

// Deterministic families, emitted in lexicographic order (entry order
// -1 < 0 < 1) so certificates are reproducible:
//   T           {-1,1}^(n-1) x {0}                  2^(n-1) vectors
//   T1          sign vectors with a -1 among the first n-1 coordinates,
//               plus e_1+...+e_(n-1)                2^n - 1  vectors
//   T2          T plus +-e_n                        2^(n-1) + 2 vectors
//   CubeCorners {-1,1}^n                            2^n vectors
DirectionSet gen_direction_set(DirLabel label, int n);

const char* dir_label_name(DirLabel label);
std::optional<DirLabel> dir_label_from_name(std::string_view name);

// ||e_1 + e_2||_B > 1. Exact for dual_orbit; true for every finite-p lp body.
bool pair_condition(const SymBody& b);

enum class Strategy { Cube, NearT1, NearT2, Far };

// Cube when distance == 1; NearT2 / NearT1 by the pair condition when
// 1 < distance < 2; Far when distance >= 2. Distance comparisons are exact
// (integer power comparison for lp).
Strategy select_strategy(const SymBody& b);

const char* strategy_name(Strategy s);

enum class NormImplicationOutcome { Illuminated, BoundHolds, Violation };

struct NormImplicationResult {
  NormImplicationOutcome outcome;
  Rat value;  // ||sum of e_i over supp(y)||_B when not illuminated, else 0
  Rat bound;  // 2 / ||x||_inf
};

// For boundary x and admissible y (entries in {-1,0,1}, supp(y) >= supp(x),
// y_i = -sign(x_i) on supp(x)): either y illuminates x, or the norm of the
// support indicator of y is at least 2/||x||_inf. Violation is returned,
// never thrown, so audits can count it; inadmissible input throws.
NormImplicationResult norm_implication_check(const SymBody& b, const RatVec& x,
                                             const RatVec& y);

// Direction file format: one vector per line, entries space-separated
// rationals, '#' starts a comment line. parse checks consistent lengths.
DirectionSet parse_directions(const std::string& text);
std::string format_directions(const DirectionSet& d);

}  // namespace illume
