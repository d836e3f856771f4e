#include "illume/certify.hpp"
#include "illume/directions.hpp"
#include "illume/kernels.hpp"
#include "illume/randomized.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace illume;

namespace {

double time_ms(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-28s %10.1f %10.1f %8.2fx %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, equal ? "identical" : "DIFFER");
}

}  // namespace

int main() {
  std::printf("kernel benchmark: serial reference vs OpenMP (%d hardware threads, OpenMP %s)\n",
              hardware_threads(), parallel_available() ? "on" : "off");
  std::printf("%-28s %10s %10s %9s %s\n", "kernel", "serial/ms", "parallel/ms", "speedup",
              "outputs");

  {
    const SymBody b = make_cube_cap_l1(8, Rat(2));
    const auto points = enumerate_vertices(b);
    const auto dirs = gen_direction_set(DirLabel::T1, 8).dirs;
    std::vector<ExactScan> s, p;
    const double ts = time_ms([&] { s = scan_witnesses_serial(b, points, dirs); });
    const double tp = time_ms([&] { p = scan_witnesses_parallel(b, points, dirs); });
    bool eq = s.size() == p.size();
    for (std::size_t i = 0; eq && i < s.size(); ++i)
      eq = s[i].witness == p[i].witness && s[i].value == p[i].value;
    row("exact witness scan", ts, tp, eq);
  }

  {
    const SymBody b = make_lp(8, Rat(2));
    const auto points = sample_boundary_points_d(b, 2000, 42);
    std::vector<DVec> dirs;
    for (const auto& v : gen_direction_set(DirLabel::T1, 8).dirs) dirs.push_back(to_dvec(v));
    std::vector<FloatScan> s, p;
    const double ts = time_ms([&] { s = scan_witnesses_d_serial(b, points, dirs, 1e-9); });
    const double tp = time_ms([&] { p = scan_witnesses_d_parallel(b, points, dirs, 1e-9); });
    bool eq = s.size() == p.size();
    for (std::size_t i = 0; eq && i < s.size(); ++i)
      eq = s[i].witness == p[i].witness && s[i].value == p[i].value;
    row("float witness scan", ts, tp, eq);
  }

  {
    const RandomSetRealization r = build_rk(12, 4, 20000, 42);
    std::vector<std::uint64_t> s, p;
    const double ts = time_ms([&] { s = coverage_bitmap_serial(12, 4, r.trials); });
    const double tp = time_ms([&] { p = coverage_bitmap_parallel(12, 4, r.trials); });
    row("coverage bitmap", ts, tp, s == p);
  }

  {
    std::vector<std::uint64_t> s, p;
    const double ts = time_ms([&] { s = mc_hits_serial(12, 5, 200000, 42); });
    const double tp = time_ms([&] { p = mc_hits_parallel(12, 5, 200000, 42); });
    row("mc pattern hits", ts, tp, s == p);
  }

  return 0;
}
