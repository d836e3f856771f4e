#pragma once

#include "illume/rational.hpp"
#include "illume/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace illume {

// One random trial: a uniform (2k-1)-subset S of [n] and an independent
// uniform sign vector X on all n coordinates. The emitted direction is the
// coordinate projection of X onto S.
struct Trial {
  std::vector<int> support;  // sorted ascending, size 2k-1, 0-based
  std::vector<int> signs;    // size n, entries +-1
};

RatVec trial_direction(const Trial& t, int n);

struct RandomSetRealization {
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::uint32_t round = 0;
  std::vector<Trial> trials;
};

// floor(2^n / n^2); 0 for n <= 3, which the adaptive driver bumps to 1.
std::int64_t default_trial_count(int n);

// Draw order is pinned: the support comes first (partial Fisher-Yates over
// [n], 2k-1 swaps), then n sign bits in coordinate order.
Trial sample_trial(int n, int k, SplitMix64& rng);

// Trial `index` of round `round` uses the substream derive_seed(seed, k,
// round, index), so realizations are reproducible under any parallel schedule.
Trial make_trial(int n, int k, std::uint64_t seed, std::uint32_t round, std::uint64_t index);

// count < 0 selects default_trial_count(n).
RandomSetRealization build_rk(int n, int k, std::int64_t count, std::uint64_t seed,
                              std::uint32_t round = 0);

// Text dump: header "n k L seed" (round appended when nonzero), then one
// trial per line as "S:i1,i2,...;X:+-+..." with 1-based support indices.
std::string dump_realization(const RandomSetRealization& r);
RandomSetRealization parse_realization(const std::string& text);

// A sign pattern: k-subset plus a sign per support coordinate.
struct Pattern {
  std::vector<int> support;  // sorted ascending
  std::vector<int> signs;    // parallel to support, +-1
};

std::uint64_t pattern_count(int n, int k);  // C(n,k) * 2^k
std::uint64_t pattern_index(int n, int k, const Pattern& p);
Pattern pattern_from_index(int n, int k, std::uint64_t idx);

// S covers supp(y) and X agrees with y there.
bool trial_covers(const Trial& t, const Pattern& p);

struct CoverageResult {
  bool covered = false;
  std::uint64_t total_patterns = 0;
  std::uint64_t missing_count = 0;
  std::vector<Pattern> missing;  // truncated to the cap
};

// The coverage event E_k: every pattern of support size k is covered by some
// trial. Exhaustive for pattern spaces up to 2^31; throws beyond.
CoverageResult check_ek(const RandomSetRealization& r, std::size_t missing_cap = 1024,
                        bool parallel = true);

// Probability that one trial covers a fixed pattern of support size k:
// 2^-k * C(n-k, k-1) / C(n, 2k-1). Exact.
Rat trial_success_prob(int n, int k);

struct BoundChainRow {
  int n = 0, k = 0;
  Rat q;            // exact trial probability
  Rat stirling;     // 2^k/(2n^2) * (1-k/n)^(n-k) * (k/n)^k, exact
  Rat final_bound;  // (2/3)^n / (2n^2), exact
  double log_q = 0, log_stirling = 0, log_final = 0;
  bool holds_exact = false;
  bool holds_float = false;  // float comparison with 1e-12 relative slack
};

BoundChainRow bound_chain(int n, int k);

struct ThresholdRow {
  int n = 0, k = 0;
  double log_lhs = 0;  // log of (1-q)^floor(2^n/n^2)
  double log_rhs = 0;  // log of 2^-k e^-2n / C(n,k)
  bool holds = false;
};

struct ThresholdScan {
  int n_min = 0, n_max = 0;
  std::vector<ThresholdRow> rows;
  std::vector<int> union_fail;  // n where ceil(n/2)*L < 2^(n-1) fails
  int minimal_n0 = -1;          // smallest n0 with all checks passing on [n0, n_max]
};

// Log-space scan of the per-pattern failure inequality and the union-size
// condition. Reports where the inequalities start holding; there is no
// asserted ground-truth constant.
ThresholdScan estimate_threshold_n(int n_min, int n_max);

// Per-pattern hit counts over `trials` seeded trials.
std::vector<std::uint64_t> mc_pattern_hits(int n, int k, std::uint64_t trials,
                                           std::uint64_t seed, bool parallel = true);

}  // namespace illume
