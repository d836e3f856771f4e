#pragma once

#include "illume/bodies.hpp"
#include "illume/randomized.hpp"
#include "illume/subdiff.hpp"

#include <cstdint>
#include <vector>

namespace illume {

// The compute-heavy inner loops live here as serial/parallel pairs. The
// parallel versions use OpenMP but are written so the result is bit-identical
// to the serial reference for any thread count or schedule: work items are
// independent, outputs are indexed by work item, and reductions are over
// exact integers or idempotent bit-ors. The serial versions are kept both as
// the reference for equality tests and as the fallback when OpenMP is off.
bool parallel_available();
int hardware_threads();

// threads <= 0 keeps the runtime default; no-op without OpenMP.
void set_thread_count(int threads);

// Per point: the first direction (in the given order) whose one-sided
// derivative is strictly negative, with that exact derivative; uncovered
// points report witness -1 and the minimum derivative seen.
struct ExactScan {
  int witness = -1;
  Rat value;
};

std::vector<ExactScan> scan_witnesses_serial(const SymBody& b,
                                             const std::vector<RatVec>& points,
                                             const std::vector<RatVec>& dirs);
std::vector<ExactScan> scan_witnesses_parallel(const SymBody& b,
                                               const std::vector<RatVec>& points,
                                               const std::vector<RatVec>& dirs);
std::vector<ExactScan> scan_witnesses(const SymBody& b, const std::vector<RatVec>& points,
                                      const std::vector<RatVec>& dirs, bool parallel);

// Same scan for the smooth float path; negative means value < -margin.
struct FloatScan {
  int witness = -1;
  double value = 0;
};

std::vector<FloatScan> scan_witnesses_d_serial(const SymBody& b,
                                               const std::vector<DVec>& points,
                                               const std::vector<DVec>& dirs, double margin);
std::vector<FloatScan> scan_witnesses_d_parallel(const SymBody& b,
                                                 const std::vector<DVec>& points,
                                                 const std::vector<DVec>& dirs, double margin);
std::vector<FloatScan> scan_witnesses_d(const SymBody& b, const std::vector<DVec>& points,
                                        const std::vector<DVec>& dirs, double margin,
                                        bool parallel);

// Bitmap over pattern indices (pattern_index order), one bit per pattern,
// set when some trial covers it.
std::vector<std::uint64_t> coverage_bitmap_serial(int n, int k, const std::vector<Trial>& trials);
std::vector<std::uint64_t> coverage_bitmap_parallel(int n, int k,
                                                    const std::vector<Trial>& trials);

// Hit counts per pattern over `trials` trials regenerated from substreams
// (round 0), without materializing the realization.
std::vector<std::uint64_t> mc_hits_serial(int n, int k, std::uint64_t trials,
                                          std::uint64_t seed);
std::vector<std::uint64_t> mc_hits_parallel(int n, int k, std::uint64_t trials,
                                            std::uint64_t seed);

}  // namespace illume
