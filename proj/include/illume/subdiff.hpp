#pragma once

#include "illume/bodies.hpp"

#include <functional>
#include <vector>

namespace illume {

// Coordinates grouped by |x_i|, levels strictly decreasing, zeros split off.
// blocks[0] is the set of coordinates attaining ||x||_inf.
struct BlockDecomposition {
  std::vector<std::vector<int>> blocks;  // indices ascending within each block
  std::vector<Rat> values;               // |x| level per block, strictly decreasing
  std::vector<int> zero_block;
  std::vector<int> sign;  // per coordinate: -1, 0, +1
};

BlockDecomposition block_decompose(const RatVec& x);

// One-sided derivative t -> gauge(x + t y) at t = 0+, for x != 0. For a
// dual-orbit body this is the max over active rows of the block-wise
// rearrangement pairing (exact); equivalently max{<y,v>} over the
// subdifferential at x.
Rat directional_derivative(const SymBody& b, const RatVec& x, const RatVec& y);

// Smooth Lp path: <y, grad ||x||_p>.
double directional_derivative_d(const SymBody& b, const DVec& x, const DVec& y);

// A step t_safe > 0 such that gauge(x + t y) == gauge(x) + t * derivative for
// every rational 0 < t <= t_safe (no sign flip, no block crossing, no
// activation change below it). Dual-orbit only.
Rat derivative_safe_step(const SymBody& b, const RatVec& x, const RatVec& y);

struct Illumination {
  bool illuminated = false;
  Rat value;  // the directional derivative
};

// Requires gauge(x) == 1 exactly; throws otherwise. y illuminates x iff the
// derivative is strictly negative, iff <y,v> < 0 for every outer normal v
// at x.
Illumination illuminates_point(const SymBody& b, const RatVec& x, const RatVec& y);

struct IlluminationD {
  bool illuminated = false;
  double value = 0;
};

// Lp variant: requires |gauge(x) - 1| <= boundary_tol, illuminated means
// derivative < -margin.
IlluminationD illuminates_point_d(const SymBody& b, const DVec& x, const DVec& y,
                                  double margin, double boundary_tol);

struct SubgradientWitness {
  RatVec v;
  int row = -1;  // index of the active weight row that produced v
};

struct SubgradientFamily {
  std::vector<SubgradientWitness> items;
  bool truncated = false;
};

// Generators of the subdifferential of the gauge at x (dual-orbit only):
// for each active row, every within-block assignment of the row segment and
// every sign choice on the zero block. Deduplicated; the convex hull of the
// returned vectors is the full subdifferential when truncated is false.
SubgradientFamily extreme_subgradients(const SymBody& b, const RatVec& x,
                                       std::size_t limit = 4096);

// Streaming form (not deduplicated). cb returns false to stop early; the
// return value tells whether enumeration ran to completion.
bool for_each_subgradient(const SymBody& b, const RatVec& x,
                          const std::function<bool(const SubgradientWitness&)>& cb);

// x (any nonzero multiple of a boundary point) is a vertex iff the
// subdifferential spans R^n; equivalently the normal cone at x is
// full-dimensional. Dual-orbit only.
bool is_vertex(const SymBody& b, const RatVec& x);

// Point state reused across many directions (certification scans evaluate
// every direction against the same point).
struct PreparedPoint {
  RatVec x;
  BlockDecomposition bd;
  std::vector<int> active;  // active weight rows at x
};

PreparedPoint prepare_point(const SymBody& b, const RatVec& x);
Rat derivative_prepared(const SymBody& b, const PreparedPoint& p, const RatVec& y);

// Incremental exact rank of a growing family of rational vectors.
struct RankTracker {
  std::vector<RatVec> pivots;
  std::vector<int> pivot_cols;

  int rank() const { return static_cast<int>(pivots.size()); }
  // true if v was independent of the current family
  bool add(RatVec v);
};

}  // namespace illume
