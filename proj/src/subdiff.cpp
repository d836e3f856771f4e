#include "illume/subdiff.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

namespace illume {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

void require_pl(const SymBody& b, const char* what) {
  if (!b.is_pl()) bad(std::string(what) + " requires a dual_orbit body; use the _d variant for lp");
}

void require_point(const SymBody& b, const RatVec& x, const char* what) {
  if (static_cast<int>(x.size()) != b.n) bad(std::string(what) + ": vector length mismatch");
  if (is_zero_vec(x)) bad(std::string(what) + ": undefined at x = 0");
}

std::vector<int> active_rows(const SymBody& b, const RatVec& xs_desc, const Rat& g) {
  std::vector<int> out;
  for (std::size_t j = 0; j < b.weights.size(); ++j)
    if (dot(b.weights[j], xs_desc) == g) out.push_back(static_cast<int>(j));
  return out;
}

// Max of sum(assigned_row_entry * vals) over assignments within one segment:
// both sides sorted nonincreasing and paired up (rearrangement inequality).
Rat paired_segment(const RatVec& row, std::size_t off, std::vector<Rat> vals) {
  std::sort(vals.begin(), vals.end(), [](const Rat& a, const Rat& b) { return a > b; });
  Rat out = 0;
  for (std::size_t p = 0; p < vals.size(); ++p) out += vals[p] * row[off + p];
  return out;
}

Rat row_derivative(const RatVec& row, const BlockDecomposition& bd, const RatVec& y) {
  Rat total = 0;
  std::size_t off = 0;
  for (std::size_t t = 0; t < bd.blocks.size(); ++t) {
    std::vector<Rat> vals;
    vals.reserve(bd.blocks[t].size());
    for (int i : bd.blocks[t]) vals.push_back(bd.sign[i] * y[i]);
    total += paired_segment(row, off, std::move(vals));
    off += bd.blocks[t].size();
  }
  if (!bd.zero_block.empty()) {
    std::vector<Rat> vals;
    vals.reserve(bd.zero_block.size());
    for (int i : bd.zero_block) vals.push_back(abs_rat(y[i]));
    total += paired_segment(row, off, std::move(vals));
  }
  return total;
}

}  // namespace

BlockDecomposition block_decompose(const RatVec& x) {
  BlockDecomposition bd;
  bd.sign.resize(x.size());
  std::vector<std::pair<Rat, int>> items;
  for (std::size_t i = 0; i < x.size(); ++i) {
    bd.sign[i] = sign_of(x[i]);
    if (bd.sign[i] == 0)
      bd.zero_block.push_back(static_cast<int>(i));
    else
      items.emplace_back(abs_rat(x[i]), static_cast<int>(i));
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (const auto& [val, idx] : items) {
    if (bd.values.empty() || bd.values.back() != val) {
      bd.values.push_back(val);
      bd.blocks.emplace_back();
    }
    bd.blocks.back().push_back(idx);
  }
  return bd;
}

Rat directional_derivative(const SymBody& b, const RatVec& x, const RatVec& y) {
  require_pl(b, "directional_derivative");
  require_point(b, x, "directional_derivative");
  if (static_cast<int>(y.size()) != b.n) bad("directional_derivative: direction length mismatch");
  const RatVec xs = abs_sorted_desc(x);
  const Rat g = gauge(b, x);
  const BlockDecomposition bd = block_decompose(x);
  std::optional<Rat> best;
  for (int j : active_rows(b, xs, g)) {
    Rat d = row_derivative(b.weights[j], bd, y);
    if (!best || d > *best) best = d;
  }
  return *best;
}

double directional_derivative_d(const SymBody& b, const DVec& x, const DVec& y) {
  if (b.is_pl()) bad("directional_derivative_d is the smooth lp path; dual_orbit is exact-only");
  if (static_cast<int>(x.size()) != b.n || static_cast<int>(y.size()) != b.n)
    bad("directional_derivative_d: length mismatch");
  const double g = gauge_d(b, x);
  if (g == 0) bad("directional_derivative_d: undefined at x = 0");
  const double pd = to_double(b.p);
  const double denom = std::pow(g, pd - 1.0);
  double out = 0;
  for (int i = 0; i < b.n; ++i) {
    if (x[i] == 0) continue;
    const double s = x[i] > 0 ? 1.0 : -1.0;
    out += s * std::pow(std::fabs(x[i]), pd - 1.0) * y[i];
  }
  return out / denom;
}

Rat derivative_safe_step(const SymBody& b, const RatVec& x, const RatVec& y) {
  require_pl(b, "derivative_safe_step");
  require_point(b, x, "derivative_safe_step");
  const Rat maxy = linf_norm(y);
  if (maxy == 0) return 1;
  const BlockDecomposition bd = block_decompose(x);
  std::optional<Rat> t;
  auto consider = [&t](const Rat& cand) {
    if (!t || cand < *t) t = cand;
  };
  // coordinate sign flips
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0 && y[i] != 0) consider(abs_rat(x[i]) / abs_rat(y[i]));
  // block levels must not cross (including the drop to the zero level)
  for (std::size_t tIdx = 0; tIdx < bd.values.size(); ++tIdx) {
    const Rat lower = (tIdx + 1 < bd.values.size()) ? bd.values[tIdx + 1] : Rat(0);
    if (tIdx + 1 == bd.values.size() && bd.zero_block.empty()) break;
    consider((bd.values[tIdx] - lower) / (2 * maxy));
  }
  // inactive rows must stay inactive
  const RatVec xs = abs_sorted_desc(x);
  const Rat g = gauge(b, x);
  Rat max_row_sum = 0;
  for (const auto& row : b.weights) {
    Rat s = 0;
    for (const auto& w : row) s += w;
    if (s > max_row_sum) max_row_sum = s;
  }
  const Rat rate = 2 * maxy * max_row_sum;
  for (const auto& row : b.weights) {
    const Rat margin = g - dot(row, xs);
    if (margin > 0) consider(margin / (rate + 1));
  }
  return t ? *t / 2 : Rat(1);
}

PreparedPoint prepare_point(const SymBody& b, const RatVec& x) {
  require_pl(b, "prepare_point");
  require_point(b, x, "prepare_point");
  PreparedPoint p;
  p.x = x;
  p.bd = block_decompose(x);
  p.active = active_rows(b, abs_sorted_desc(x), gauge(b, x));
  return p;
}

Rat derivative_prepared(const SymBody& b, const PreparedPoint& p, const RatVec& y) {
  std::optional<Rat> best;
  for (int j : p.active) {
    Rat d = row_derivative(b.weights[j], p.bd, y);
    if (!best || d > *best) best = d;
  }
  return *best;
}

Illumination illuminates_point(const SymBody& b, const RatVec& x, const RatVec& y) {
  require_pl(b, "illuminates_point");
  require_point(b, x, "illuminates_point");
  if (gauge(b, x) != 1) bad("illuminates_point: x is not on the unit sphere of the body");
  Illumination out;
  out.value = directional_derivative(b, x, y);
  out.illuminated = out.value < 0;
  return out;
}

IlluminationD illuminates_point_d(const SymBody& b, const DVec& x, const DVec& y,
                                  double margin, double boundary_tol) {
  const double g = gauge_d(b, x);
  if (std::fabs(g - 1.0) > boundary_tol)
    bad("illuminates_point_d: x is not on the unit sphere within tolerance");
  IlluminationD out;
  out.value = b.is_pl() ? to_double(directional_derivative(
                              b, RatVec(x.begin(), x.end()), RatVec(y.begin(), y.end())))
                        : directional_derivative_d(b, x, y);
  out.illuminated = out.value < -margin;
  return out;
}

bool for_each_subgradient(const SymBody& b, const RatVec& x,
                          const std::function<bool(const SubgradientWitness&)>& cb) {
  require_pl(b, "for_each_subgradient");
  require_point(b, x, "for_each_subgradient");
  const RatVec xs = abs_sorted_desc(x);
  const Rat g = gauge(b, x);
  const BlockDecomposition bd = block_decompose(x);
  const std::size_t nblocks = bd.blocks.size();

  bool stopped = false;
  for (int j : active_rows(b, xs, g)) {
    const RatVec& row = b.weights[j];
    std::vector<std::size_t> offsets(nblocks + 1);
    std::size_t off = 0;
    for (std::size_t t = 0; t < nblocks; ++t) {
      offsets[t] = off;
      off += bd.blocks[t].size();
    }
    offsets[nblocks] = off;  // zero segment starts here

    SubgradientWitness w;
    w.v.assign(b.n, Rat(0));
    w.row = j;

    // Depth-first product over blocks; each block runs over the distinct
    // permutations of its row segment.
    std::function<void(std::size_t)> rec = [&](std::size_t bi) {
      if (stopped) return;
      if (bi < nblocks) {
        RatVec seg(row.begin() + offsets[bi], row.begin() + offsets[bi] + bd.blocks[bi].size());
        std::sort(seg.begin(), seg.end());
        do {
          for (std::size_t p = 0; p < seg.size(); ++p) {
            const int i = bd.blocks[bi][p];
            w.v[i] = bd.sign[i] * seg[p];
          }
          rec(bi + 1);
          if (stopped) return;
        } while (std::next_permutation(seg.begin(), seg.end()));
        return;
      }
      if (bd.zero_block.empty()) {
        if (!cb(w)) stopped = true;
        return;
      }
      RatVec seg(row.begin() + offsets[nblocks], row.end());
      std::sort(seg.begin(), seg.end());
      do {
        std::size_t c = 0;  // zero-block coords holding a nonzero weight get both signs
        for (const auto& wv : seg)
          if (wv != 0) ++c;
        for (std::uint64_t mask = 0;; ++mask) {
          for (std::size_t p = 0, fi = 0; p < seg.size(); ++p) {
            const int i = bd.zero_block[p];
            if (seg[p] == 0) {
              w.v[i] = 0;
            } else {
              w.v[i] = ((mask >> fi) & 1u) ? Rat(-seg[p]) : seg[p];
              ++fi;
            }
          }
          if (!cb(w)) {
            stopped = true;
            return;
          }
          if (c == 0 || mask + 1 == (std::uint64_t(1) << c)) break;
        }
        if (stopped) return;
      } while (std::next_permutation(seg.begin(), seg.end()));
    };
    rec(0);
    if (stopped) break;
  }
  return !stopped;
}

SubgradientFamily extreme_subgradients(const SymBody& b, const RatVec& x, std::size_t limit) {
  SubgradientFamily out;
  std::set<RatVec> seen;
  out.truncated = !for_each_subgradient(b, x, [&](const SubgradientWitness& w) {
    if (seen.count(w.v)) return true;
    if (seen.size() >= limit) return false;  // one more distinct item exists
    seen.insert(w.v);
    out.items.push_back(w);
    return true;
  });
  return out;
}

bool RankTracker::add(RatVec v) {
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    const int c = pivot_cols[k];
    if (v[c] == 0) continue;
    const Rat f = v[c] / pivots[k][c];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * pivots[k][i];
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) {
      pivot_cols.push_back(static_cast<int>(i));
      pivots.push_back(std::move(v));
      return true;
    }
  }
  return false;
}

bool is_vertex(const SymBody& b, const RatVec& x) {
  require_pl(b, "is_vertex");
  require_point(b, x, "is_vertex");
  RankTracker rank;
  for_each_subgradient(b, x, [&](const SubgradientWitness& w) {
    rank.add(w.v);
    return rank.rank() < b.n;
  });
  return rank.rank() == b.n;
}

}  // namespace illume
