#include "illume/kernels.hpp"

#include "illume/certify.hpp"
#include "illume/directions.hpp"

#include "doctest.h"

#include <cstdint>
#include <vector>

using namespace illume;

namespace {

bool same_exact(const std::vector<ExactScan>& a, const std::vector<ExactScan>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].witness != b[i].witness || a[i].value != b[i].value) return false;
  return true;
}

bool same_float(const std::vector<FloatScan>& a, const std::vector<FloatScan>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].witness != b[i].witness || a[i].value != b[i].value) return false;
  return true;
}

std::uint64_t popcount_all(const std::vector<std::uint64_t>& bits) {
  std::uint64_t c = 0;
  for (std::uint64_t w : bits) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
  return c;
}

}  // namespace

TEST_CASE("thread plumbing") {
  CHECK(hardware_threads() >= 1);
#ifdef _OPENMP
  CHECK(parallel_available());
#else
  CHECK_FALSE(parallel_available());
#endif
}

TEST_CASE("exact witness scan: parallel equals serial") {
  SymBody b = make_cube_cap_l1(5, Rat(2));
  std::vector<RatVec> points = enumerate_vertices(b);
  REQUIRE_FALSE(points.empty());
  DirectionSet dirs = gen_direction_set(DirLabel::T1, 5);
  auto s = scan_witnesses_serial(b, points, dirs.dirs);
  auto p = scan_witnesses_parallel(b, points, dirs.dirs);
  CHECK(same_exact(s, p));
  CHECK(same_exact(s, scan_witnesses(b, points, dirs.dirs, true)));
  CHECK(same_exact(s, scan_witnesses(b, points, dirs.dirs, false)));
  // witnesses are first-in-order and strictly negative
  for (const auto& r : s) {
    if (r.witness >= 0) {
      CHECK(r.value < 0);
      REQUIRE(r.witness < static_cast<int>(dirs.size()));
    }
  }
}

TEST_CASE("float witness scan: parallel equals serial") {
  SymBody b = make_lp(4, Rat(2));
  std::vector<DVec> points = sample_boundary_points_d(b, 64, 7);
  DirectionSet t1 = gen_direction_set(DirLabel::T1, 4);
  std::vector<DVec> dirs;
  for (const auto& v : t1.dirs) dirs.push_back(to_dvec(v));
  auto s = scan_witnesses_d_serial(b, points, dirs, 1e-9);
  auto p = scan_witnesses_d_parallel(b, points, dirs, 1e-9);
  CHECK(same_float(s, p));
  CHECK(same_float(s, scan_witnesses_d(b, points, dirs, 1e-9, true)));
}

TEST_CASE("coverage bitmap: parallel equals serial and matches check_ek") {
  RandomSetRealization r = build_rk(8, 2, 40, 17);
  auto s = coverage_bitmap_serial(8, 2, r.trials);
  auto p = coverage_bitmap_parallel(8, 2, r.trials);
  CHECK(s == p);
  const std::uint64_t total = pattern_count(8, 2);
  CoverageResult ek = check_ek(r);
  CHECK(total - popcount_all(s) == ek.missing_count);
}

TEST_CASE("mc hit kernels: parallel equals serial") {
  auto s = mc_hits_serial(6, 2, 20000, 555);
  auto p = mc_hits_parallel(6, 2, 20000, 555);
  CHECK(s == p);
  REQUIRE(s.size() == pattern_count(6, 2));
}

TEST_CASE("results are invariant under the thread count") {
  SymBody b = make_cube_cap_l1(4, Rat(2));
  std::vector<RatVec> points = enumerate_vertices(b);
  DirectionSet dirs = gen_direction_set(DirLabel::T1, 4);
  auto base = scan_witnesses_serial(b, points, dirs.dirs);
  for (int threads : {1, 2, 4}) {
    set_thread_count(threads);
    CHECK(same_exact(base, scan_witnesses_parallel(b, points, dirs.dirs)));
    CHECK(mc_hits_parallel(6, 2, 5000, 99) == mc_hits_serial(6, 2, 5000, 99));
  }
  set_thread_count(0);
}
