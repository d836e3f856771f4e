#include "illume/kernels.hpp"

#include <cstddef>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace illume {

namespace {

// C(c, i) for c < n, i <= k; every entry is bounded by C(n, k), which
// pattern_count has already checked against the index range.
std::vector<std::vector<std::uint64_t>> binom_table(int n, int k) {
  std::vector<std::vector<std::uint64_t>> C(static_cast<std::size_t>(n),
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(k) + 1, 0));
  for (int c = 0; c < n; ++c) {
    C[c][0] = 1;
    for (int i = 1; i <= k && i <= c; ++i)
      C[c][i] = C[c - 1][i - 1] + (i <= c - 1 ? C[c - 1][i] : 0);
  }
  return C;
}

// Enumerates the pattern indices covered by one trial: every k-subset of the
// trial support with the trial's signs on it.
template <class F>
void for_each_covered(const Trial& t, int k,
                      const std::vector<std::vector<std::uint64_t>>& C, F&& emit) {
  const int m = static_cast<int>(t.support.size());
  std::vector<int> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    std::uint64_t rank = 0;
    std::uint64_t signs = 0;
    for (int i = 0; i < k; ++i) {
      const int coord = t.support[static_cast<std::size_t>(c[i])];
      rank += C[coord][i + 1];
      if (t.signs[coord] < 0) signs |= (std::uint64_t(1) << i);
    }
    emit(rank * (std::uint64_t(1) << k) + signs);
    int i = k - 1;
    while (i >= 0 && c[i] == m - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

ExactScan scan_one(const SymBody& b, const PreparedPoint& p, const std::vector<RatVec>& dirs) {
  ExactScan out;
  bool first = true;
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    const Rat d = derivative_prepared(b, p, dirs[j]);
    if (d < 0) {
      out.witness = static_cast<int>(j);
      out.value = d;
      return out;
    }
    if (first || d < out.value) {
      out.value = d;
      first = false;
    }
  }
  return out;
}

FloatScan scan_one_d(const SymBody& b, const DVec& x, const std::vector<DVec>& dirs,
                     double margin) {
  FloatScan out;
  bool first = true;
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    const double d = directional_derivative_d(b, x, dirs[j]);
    if (d < -margin) {
      out.witness = static_cast<int>(j);
      out.value = d;
      return out;
    }
    if (first || d < out.value) {
      out.value = d;
      first = false;
    }
  }
  return out;
}

}  // namespace

bool parallel_available() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

std::vector<ExactScan> scan_witnesses_serial(const SymBody& b,
                                             const std::vector<RatVec>& points,
                                             const std::vector<RatVec>& dirs) {
  std::vector<ExactScan> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    out[i] = scan_one(b, prepare_point(b, points[i]), dirs);
  return out;
}

std::vector<ExactScan> scan_witnesses_parallel(const SymBody& b,
                                               const std::vector<RatVec>& points,
                                               const std::vector<RatVec>& dirs) {
  std::vector<ExactScan> out(points.size());
  const std::int64_t count = static_cast<std::int64_t>(points.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] =
        scan_one(b, prepare_point(b, points[static_cast<std::size_t>(i)]), dirs);
  return out;
}

std::vector<ExactScan> scan_witnesses(const SymBody& b, const std::vector<RatVec>& points,
                                      const std::vector<RatVec>& dirs, bool parallel) {
  return parallel ? scan_witnesses_parallel(b, points, dirs)
                  : scan_witnesses_serial(b, points, dirs);
}

std::vector<FloatScan> scan_witnesses_d_serial(const SymBody& b,
                                               const std::vector<DVec>& points,
                                               const std::vector<DVec>& dirs, double margin) {
  std::vector<FloatScan> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    out[i] = scan_one_d(b, points[i], dirs, margin);
  return out;
}

std::vector<FloatScan> scan_witnesses_d_parallel(const SymBody& b,
                                                 const std::vector<DVec>& points,
                                                 const std::vector<DVec>& dirs, double margin) {
  std::vector<FloatScan> out(points.size());
  const std::int64_t count = static_cast<std::int64_t>(points.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = scan_one_d(b, points[static_cast<std::size_t>(i)], dirs, margin);
  return out;
}

std::vector<FloatScan> scan_witnesses_d(const SymBody& b, const std::vector<DVec>& points,
                                        const std::vector<DVec>& dirs, double margin,
                                        bool parallel) {
  return parallel ? scan_witnesses_d_parallel(b, points, dirs, margin)
                  : scan_witnesses_d_serial(b, points, dirs, margin);
}

std::vector<std::uint64_t> coverage_bitmap_serial(int n, int k, const std::vector<Trial>& trials) {
  const std::uint64_t total = pattern_count(n, k);
  std::vector<std::uint64_t> bitmap((total + 63) / 64, 0);
  const auto C = binom_table(n, k);
  for (const auto& t : trials)
    for_each_covered(t, k, C, [&](std::uint64_t idx) {
      bitmap[idx >> 6] |= (std::uint64_t(1) << (idx & 63));
    });
  return bitmap;
}

std::vector<std::uint64_t> coverage_bitmap_parallel(int n, int k,
                                                    const std::vector<Trial>& trials) {
  const std::uint64_t total = pattern_count(n, k);
  std::vector<std::uint64_t> bitmap((total + 63) / 64, 0);
  const auto C = binom_table(n, k);
  auto* words = bitmap.data();
  const std::int64_t count = static_cast<std::int64_t>(trials.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
  for (std::int64_t i = 0; i < count; ++i)
    for_each_covered(trials[static_cast<std::size_t>(i)], k, C, [&](std::uint64_t idx) {
      const std::uint64_t bit = std::uint64_t(1) << (idx & 63);
#ifdef _OPENMP
#pragma omp atomic update
#endif
      words[idx >> 6] |= bit;
    });
  return bitmap;
}

std::vector<std::uint64_t> mc_hits_serial(int n, int k, std::uint64_t trials,
                                          std::uint64_t seed) {
  const std::uint64_t total = pattern_count(n, k);
  std::vector<std::uint64_t> hits(total, 0);
  const auto C = binom_table(n, k);
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Trial t = make_trial(n, k, seed, 0, i);
    for_each_covered(t, k, C, [&](std::uint64_t idx) { ++hits[idx]; });
  }
  return hits;
}

std::vector<std::uint64_t> mc_hits_parallel(int n, int k, std::uint64_t trials,
                                            std::uint64_t seed) {
  const std::uint64_t total = pattern_count(n, k);
  std::vector<std::uint64_t> hits(total, 0);
  const auto C = binom_table(n, k);
  const std::int64_t count = static_cast<std::int64_t>(trials);
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<std::uint64_t> local(total, 0);
#ifdef _OPENMP
#pragma omp for schedule(static) nowait
#endif
    for (std::int64_t i = 0; i < count; ++i) {
      const Trial t = make_trial(n, k, seed, 0, static_cast<std::uint64_t>(i));
      for_each_covered(t, k, C, [&](std::uint64_t idx) { ++local[idx]; });
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    {
      for (std::uint64_t j = 0; j < total; ++j) hits[j] += local[j];
    }
  }
  return hits;
}

}  // namespace illume
