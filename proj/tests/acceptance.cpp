#include "illume/audit.hpp"
#include "illume/certify.hpp"
#include "illume/directions.hpp"
#include "illume/kernels.hpp"
#include "illume/randomized.hpp"
#include "illume/rng.hpp"
#include "illume/subdiff.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace illume;

namespace {

int passed = 0;
int failed = 0;

void run(int idx, const char* name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::printf("[%s] C%02d %s%s%s\n", ok ? "PASS" : "FAIL", idx, name,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  (ok ? passed : failed)++;
}

// C1: the deterministic direction families have the advertised sizes.
bool direction_cardinalities(std::string& detail) {
  for (int n = 2; n <= 16; ++n) {
    const std::size_t half = std::size_t(1) << (n - 1);
    if (gen_direction_set(DirLabel::T, n).size() != half) return false;
    if (gen_direction_set(DirLabel::T1, n).size() != 2 * half - 1) return false;
    if (gen_direction_set(DirLabel::T2, n).size() != half + 2) return false;
    if (gen_direction_set(DirLabel::CubeCorners, n).size() != 2 * half) return false;
  }
  detail = "n=2..16: |T|=2^(n-1), |T1|=2^n-1, |T2|=2^(n-1)+2, |corners|=2^n";
  return true;
}

// C2: the closed-form trial success probability equals exhaustive counting.
bool trial_probability_brute(std::string& detail) {
  int pairs = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; 2 * k - 1 <= n; ++k) {
      const int m = 2 * k - 1;
      std::uint64_t cover = 0, total = 0;
      for (int smask = 0; smask < (1 << n); ++smask) {
        if (__builtin_popcount(static_cast<unsigned>(smask)) != m) continue;
        for (int xmask = 0; xmask < (1 << n); ++xmask) {
          ++total;
          bool ok = true;
          for (int i = 0; i < k && ok; ++i)
            if (!((smask >> i) & 1) || ((xmask >> i) & 1)) ok = false;
          if (ok) ++cover;
        }
      }
      if (trial_success_prob(n, k) != Rat(cover, total)) {
        detail = "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k);
        return false;
      }
      ++pairs;
    }
  }
  detail = std::to_string(pairs) + " (n,k) pairs, exhaustive over supports and signs";
  return true;
}

// C3: q >= stirling form >= (2/3)^n/(2n^2), exactly, for every valid (n,k).
bool probability_chain(std::string& detail) {
  int rows = 0;
  std::string bad;
  for (int n = 2; n <= 128; ++n) {
    for (int k = 1; 2 * k - 1 <= n; ++k) {
      const BoundChainRow r = bound_chain(n, k);
      if (!r.holds_exact || !r.holds_float) {
        bad += " (" + std::to_string(n) + "," + std::to_string(k) + ")";
      }
      ++rows;
    }
  }
  if (!bad.empty()) {
    detail = "violations at" + bad;
    return false;
  }
  detail = std::to_string(rows) + " rows, exact and float comparisons agree";
  return true;
}

// C4: seeded Monte Carlo hit rate of the canonical pattern sits within 3
// binomial sigmas of the exact probability.
bool monte_carlo_rate(std::string& detail) {
  struct Cfg {
    int n, k;
    std::uint64_t seed;
  };
  const Cfg cfgs[] = {{6, 2, 1001}, {10, 3, 1001}, {12, 5, 1001}};
  const std::uint64_t trials = 100000;
  char buf[160];
  std::string rep;
  bool ok = true;
  for (const Cfg& c : cfgs) {
    const auto hits = mc_pattern_hits(c.n, c.k, trials, c.seed);
    Pattern canon;
    for (int i = 0; i < c.k; ++i) {
      canon.support.push_back(i);
      canon.signs.push_back(1);
    }
    const std::uint64_t h = hits[pattern_index(c.n, c.k, canon)];
    const double q = to_double(trial_success_prob(c.n, c.k));
    const double sigma = std::sqrt(static_cast<double>(trials) * q * (1 - q));
    const double z = (static_cast<double>(h) - trials * q) / sigma;
    if (std::abs(z) > 3.0) ok = false;
    std::snprintf(buf, sizeof(buf), "(%d,%d) z=%+.2f ", c.n, c.k, z);
    rep += buf;
  }
  detail = rep + "at 1e5 trials";
  return ok;
}

// C5: the cube needs its full corner set: certified with exactly 2^n
// directions, and no smaller grid subset works at n=2,3.
bool cube_corner_bound(std::string& detail) {
  for (int n = 2; n <= 10; ++n) {
    const IlluminationCertificate c = certify_directions(
        make_cube(n), gen_direction_set(DirLabel::CubeCorners, n), nullptr, true, n);
    if (c.status != CertStatus::Certified) return false;
    if (c.distinct_directions != (std::size_t(1) << n)) return false;
    if (c.budget_met) return false;
    if (!verify_certificate(c)) return false;
  }
  for (int n : {2, 3}) {
    const MinIllResult res = min_illumination_search(make_cube(n), grid_pool(n));
    if (!res.feasible || !res.optimal || res.size != (std::size_t(1) << n)) {
      detail = "exact search disagrees at n=" + std::to_string(n);
      return false;
    }
  }
  detail = "corners certify for n=2..10; exact grid minimum is 2^n at n=2,3";
  return true;
}

// C6: the l1 cap at radius 2 in R^3 is certified by T1 with 7 < 2^3
// directions, every vertex witnessed.
bool near_t1_example(std::string& detail) {
  const SymBody b = make_cube_cap_l1(3, Rat(2));
  const IlluminationCertificate c =
      certify_directions(b, gen_direction_set(DirLabel::T1, 3));
  if (c.status != CertStatus::Certified) return false;
  if (c.distinct_directions != 7 || !c.budget_met) return false;
  if (c.points.size() != 12) return false;
  for (const auto& p : c.points)
    if (p.witness < 0 || !(p.value < 0)) return false;
  if (!verify_certificate(c)) return false;
  detail = "7 directions, 12 vertices, all derivatives strictly negative";
  return true;
}

// C7: T2 leaves exactly the four equatorial spikes of the octahedron dark.
bool t2_uncovered_set(std::string& detail) {
  const SymBody b = make_ell1(3);
  const IlluminationCertificate c =
      certify_directions(b, gen_direction_set(DirLabel::T2, 3));
  if (c.status != CertStatus::Uncovered) return false;
  std::set<RatVec> uncovered;
  for (const auto& p : c.points)
    if (p.witness < 0) uncovered.insert(p.x);
  std::set<RatVec> want;
  for (int i : {0, 1})
    for (int s : {-1, 1}) {
      RatVec e(3, Rat(0));
      e[i] = s;
      want.insert(e);
    }
  if (uncovered != want) return false;
  if (!verify_certificate(c)) return false;
  detail = "uncovered set is exactly {+-e1, +-e2}";
  return true;
}

// C8: the adaptive driver lands on 2n directions for the cross-polytope and
// reruns reproduce the certificate byte for byte.
bool cross_polytope_counts(std::string& detail) {
  const int dims[] = {4, 6, 8};
  for (int n : dims) {
    const SymBody b = make_ell1(n);
    const AutoResult res = illuminate_auto(b, 42, AutoMode::Adaptive);
    if (res.cert.status != CertStatus::Certified) return false;
    if (res.cert.distinct_directions != static_cast<std::size_t>(2 * n)) {
      detail = "n=" + std::to_string(n) + " used " +
               std::to_string(res.cert.distinct_directions) + " directions";
      return false;
    }
    if (!res.cert.budget_met || !verify_certificate(res.cert)) return false;
    const AutoResult again = illuminate_auto(b, 42, AutoMode::Adaptive);
    if (certificate_to_json(again.cert) != certificate_to_json(res.cert)) {
      detail = "rerun differs at n=" + std::to_string(n);
      return false;
    }
  }
  detail = "2n directions at n=4,6,8, reruns byte-identical";
  return true;
}

// C9: randomized audits over the n=5 suite come back clean.
bool suite_audits(std::string& detail) {
  const SymBody suite[] = {make_ell1(5),
                           make_topk(5, 2),
                           make_topk(5, 3),
                           make_cube_cap_l1(5, Rat(3, 2)),
                           make_cube_cap_l1(5, Rat(2)),
                           make_cube_cap_l1(5, Rat(3)),
                           make_cube(5)};
  std::uint64_t samples = 0, violations = 0;
  for (const SymBody& b : suite) {
    const AuditReport axioms = audit_norm_axioms(b, 20000, 2025);
    samples += axioms.total_samples();
    violations += axioms.total_violations();
    const AuditReport lemmas = audit_subgradient_lemmas(b, 2000, 2025);
    samples += lemmas.total_samples();
    violations += lemmas.total_violations();
  }
  detail = std::to_string(samples) + " exact samples, " + std::to_string(violations) +
           " violations";
  return violations == 0 && samples >= 100000;
}

// C10: the non-illumination norm bound holds for every vertex and every
// admissible direction, exhaustively, across the suite for n=3..6.
bool norm_implication_exhaustive(std::string& detail) {
  std::uint64_t checks = 0, violations = 0;
  for (int n = 3; n <= 6; ++n) {
    std::vector<SymBody> suite = {make_ell1(n),
                                  make_topk(n, 2),
                                  make_topk(n, 3),
                                  make_cube_cap_l1(n, Rat(3, 2)),
                                  make_cube_cap_l1(n, Rat(2)),
                                  make_cube_cap_l1(n, Rat(3)),
                                  make_cube(n)};
    for (const SymBody& b : suite) {
      const AuditCheck chk = audit_norm_implication(b);
      checks += chk.samples;
      violations += chk.violations;
    }
  }
  detail = std::to_string(checks) + " (vertex, direction) pairs, " +
           std::to_string(violations) + " violations";
  return violations == 0 && checks > 0;
}

// C11: derivatives agree with their oracles: exact difference quotients on
// the piecewise-linear path, finite differences on the smooth path.
bool derivative_oracles(std::string& detail) {
  const SymBody pl[] = {make_ell1(4), make_topk(4, 2), make_cube_cap_l1(4, Rat(2)),
                        make_cube_cap_l1(5, Rat(3, 2))};
  SplitMix64 g(90210);
  int exact_pairs = 0;
  for (int t = 0; t < 1000; ++t) {
    const SymBody& b = pl[t % 4];
    RatVec x(b.n), y(b.n);
    for (int i = 0; i < b.n; ++i) {
      x[i] = Rat(static_cast<long>(g.below(17)) - 8, static_cast<long>(g.below(4)) + 1);
      y[i] = Rat(static_cast<long>(g.below(17)) - 8, static_cast<long>(g.below(4)) + 1);
    }
    if (is_zero_vec(x)) continue;
    const Rat der = directional_derivative(b, x, y);
    const Rat step = derivative_safe_step(b, x, y);
    for (const Rat& tt : {step, Rat(step / 2)}) {
      RatVec moved = x;
      for (int i = 0; i < b.n; ++i) moved[i] += tt * y[i];
      if ((gauge(b, moved) - gauge(b, x)) / tt != der) {
        detail = "exact quotient mismatch";
        return false;
      }
    }
    ++exact_pairs;
  }

  const SymBody lp[] = {make_lp(4, Rat(3, 2)), make_lp(5, Rat(2)), make_lp(3, Rat(7, 2))};
  const double h = 1e-6;
  double worst = 0;
  int fd_pairs = 0;
  for (int t = 0; t < 1000; ++t) {
    const SymBody& b = lp[t % 3];
    DVec x(b.n), y(b.n);
    for (int i = 0; i < b.n; ++i) {
      x[i] = g.unit() * 2 - 1;
      y[i] = g.unit() * 2 - 1;
    }
    if (gauge_d(b, x) < 0.2) continue;
    DVec xp = x, xm = x;
    for (int i = 0; i < b.n; ++i) {
      xp[i] += h * y[i];
      xm[i] -= h * y[i];
    }
    const double fd = (gauge_d(b, xp) - gauge_d(b, xm)) / (2 * h);
    const double err = std::abs(directional_derivative_d(b, x, y) - fd);
    if (err > worst) worst = err;
    if (err > 1e-5) {
      detail = "finite difference error " + std::to_string(err);
      return false;
    }
    ++fd_pairs;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d exact pairs; %d smooth pairs, worst fd error %.2e",
                exact_pairs, fd_pairs, worst);
  detail = buf;
  return true;
}

// C12: every non-cube suite body with 2 <= n <= 8 gets a verified
// certificate with strictly fewer than 2^n distinct directions. The lone
// exclusion is the rotated square ell1:2, whose exact minimum over the full
// tilted pool is 4 = 2^2.
bool budget_sweep(std::string& detail) {
  struct Fam {
    const char* name;
    int n_min;
    std::function<SymBody(int)> make;
  };
  const std::vector<Fam> fams = {
      {"cube_cap_l1(3/2)", 2, [](int n) { return make_cube_cap_l1(n, Rat(3, 2)); }},
      {"ell1", 3, [](int n) { return make_ell1(n); }},
      {"topk(2)", 3, [](int n) { return make_topk(n, 2); }},
      {"cube_cap_l1(2)", 3, [](int n) { return make_cube_cap_l1(n, Rat(2)); }},
      {"topk(3)", 4, [](int n) { return make_topk(n, 3); }},
      {"cube_cap_l1(3)", 4, [](int n) { return make_cube_cap_l1(n, Rat(3)); }},
  };
  int bodies = 0;
  for (const Fam& f : fams) {
    for (int n = f.n_min; n <= 8; ++n) {
      const SymBody b = f.make(n);
      if (is_cube(b)) continue;
      const AutoResult res = illuminate_auto(b, 42, AutoMode::Adaptive);
      const bool ok = res.cert.status == CertStatus::Certified && res.cert.budget_met &&
                      verify_certificate(res.cert);
      std::string mode = res.cert.strategy;
      if (!res.cert.far.mode.empty()) mode += "/" + res.cert.far.mode;
      std::printf("       %s:%d strategy=%s distinct=%zu budget=%zu\n", f.name, n,
                  mode.c_str(), res.cert.distinct_directions, std::size_t(1) << n);
      if (!ok) {
        detail = std::string(f.name) + ":" + std::to_string(n) + " missed the budget";
        return false;
      }
      ++bodies;
    }
  }
  const MinIllResult sq = min_illumination_search(make_ell1(2), tilted_pool(2));
  if (!sq.feasible || !sq.optimal || sq.size != 4) {
    detail = "rotated-square exact minimum is not 4";
    return false;
  }
  detail = std::to_string(bodies) +
           " bodies under budget; ell1:2 excluded as a parallelotope (exact minimum 4 = 2^2)";
  return true;
}

}  // namespace

int main() {
  std::printf("acceptance: illumination machinery end-to-end checks\n");
  run(1, "direction family cardinalities", direction_cardinalities);
  run(2, "trial probability vs exhaustive count", trial_probability_brute);
  run(3, "probability lower-bound chain", probability_chain);
  run(4, "Monte Carlo rate within 3 sigma", monte_carlo_rate);
  run(5, "cube corner certificates and exact minimum", cube_corner_bound);
  run(6, "near-regime T1 certificate", near_t1_example);
  run(7, "T2 uncovered set on the cross-polytope", t2_uncovered_set);
  run(8, "adaptive driver on cross-polytopes", cross_polytope_counts);
  run(9, "randomized suite audits", suite_audits);
  run(10, "norm implication bound, exhaustive", norm_implication_exhaustive);
  run(11, "derivative oracles", derivative_oracles);
  run(12, "direction budget across the suite", budget_sweep);
  std::printf("%d/%d criteria passed\n", passed, passed + failed);
  return failed == 0 ? 0 : 1;
}
