#include "illume/certify.hpp"

#include "illume/kernels.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

namespace illume {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

void require_pl(const SymBody& b, const char* what) {
  if (!b.is_pl()) bad(std::string(what) + " requires a dual_orbit body");
}

// Exact Gaussian elimination; nullopt when singular.
std::optional<RatVec> solve_square(std::vector<RatVec> A, RatVec rhs) {
  const int m = static_cast<int>(rhs.size());
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int r = col; r < m; ++r)
      if (A[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = col + 1; r < m; ++r) {
      if (A[r][col] == 0) continue;
      const Rat f = A[r][col] / A[col][col];
      for (int c2 = col; c2 < m; ++c2) A[r][c2] -= f * A[col][c2];
      rhs[r] -= f * rhs[col];
    }
  }
  RatVec x(rhs.size());
  for (int r = m - 1; r >= 0; --r) {
    Rat acc = rhs[r];
    for (int c2 = r + 1; c2 < m; ++c2) acc -= A[r][c2] * x[c2];
    x[r] = acc / A[r][r];
  }
  return x;
}

std::size_t distinct_count(const std::vector<RatVec>& dirs) {
  return std::set<RatVec>(dirs.begin(), dirs.end()).size();
}

bool within_budget(std::size_t distinct, int n) {
  return Int(distinct) < pow_int(Int(2), static_cast<unsigned>(n));
}

void fill_base(IlluminationCertificate& c, const SymBody& b) {
  c.body_digest = body_digest(b);
  c.body_spec = serialize_body(b);
  c.n = b.n;
}

void check_directions(const SymBody& b, const DirectionSet& dirs) {
  if (dirs.dirs.empty()) bad("empty direction list");
  if (dirs.n != b.n) bad("direction set dimension mismatch");
  for (const auto& d : dirs.dirs) {
    if (static_cast<int>(d.size()) != b.n) bad("direction has wrong length");
    if (is_zero_vec(d)) bad("zero direction");
  }
}

}  // namespace

std::string cert_status_name(CertStatus s) {
  switch (s) {
    case CertStatus::Certified: return "certified";
    case CertStatus::Uncovered: return "uncovered";
    case CertStatus::SampledOnly: return "sampled_only";
    case CertStatus::SampledUncovered: return "sampled_uncovered";
  }
  return "?";
}

CertStatus cert_status_from_name(const std::string& name) {
  if (name == "certified") return CertStatus::Certified;
  if (name == "uncovered") return CertStatus::Uncovered;
  if (name == "sampled_only") return CertStatus::SampledOnly;
  if (name == "sampled_uncovered") return CertStatus::SampledUncovered;
  bad("unknown certificate status: " + name);
}

std::vector<RatVec> enumerate_vertices(const SymBody& b, int cap, std::size_t max_vertices) {
  require_pl(b, "enumerate_vertices");
  const int n = b.n;
  if (n > cap) bad("dimension exceeds the vertex enumeration cap");
  const int rows = static_cast<int>(b.weights.size());

  std::set<RatVec> reps;
  // Candidate canonical points: choose block sizes m_1..m_t (sum <= n), pick
  // t active rows, solve for the block values, keep solutions that are
  // strictly decreasing, on the boundary, and full-rank vertices.
  std::vector<int> parts;
  auto try_rows = [&]() {
    const int t = static_cast<int>(parts.size());
    if (t > rows) return;
    std::vector<int> offs(static_cast<std::size_t>(t) + 1, 0);
    for (int i = 0; i < t; ++i) offs[i + 1] = offs[i] + parts[i];
    std::vector<int> pick(static_cast<std::size_t>(t));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::vector<RatVec> A(static_cast<std::size_t>(t), RatVec(static_cast<std::size_t>(t), 0));
      for (int r = 0; r < t; ++r)
        for (int c2 = 0; c2 < t; ++c2)
          for (int i = offs[c2]; i < offs[c2 + 1]; ++i)
            A[r][c2] += b.weights[static_cast<std::size_t>(pick[r])][static_cast<std::size_t>(i)];
      if (auto sol = solve_square(std::move(A), RatVec(static_cast<std::size_t>(t), 1))) {
        bool ok = (*sol)[static_cast<std::size_t>(t) - 1] > 0;
        for (int i = 0; ok && i + 1 < t; ++i) ok = (*sol)[i] > (*sol)[i + 1];
        if (ok) {
          RatVec x(static_cast<std::size_t>(n), 0);
          for (int c2 = 0; c2 < t; ++c2)
            for (int i = offs[c2]; i < offs[c2 + 1]; ++i) x[i] = (*sol)[c2];
          if (gauge(b, x) == 1 && is_vertex(b, x)) reps.insert(std::move(x));
        }
      }
      int i = t - 1;
      while (i >= 0 && pick[i] == rows - t + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
    }
  };
  std::function<void(int)> recurse = [&](int used) {
    if (!parts.empty()) try_rows();
    for (int m = 1; used + m <= n; ++m) {
      parts.push_back(m);
      recurse(used + m);
      parts.pop_back();
    }
  };
  recurse(0);
  if (reps.empty()) throw std::logic_error("no vertices found");

  std::vector<RatVec> out;
  for (const auto& rep : reps) {
    RatVec vals = rep;
    std::sort(vals.begin(), vals.end());
    do {
      std::vector<int> nz;
      for (int i = 0; i < n; ++i)
        if (vals[static_cast<std::size_t>(i)] != 0) nz.push_back(i);
      if (nz.size() >= 20 || out.size() + (std::uint64_t(1) << nz.size()) > max_vertices)
        bad("vertex count exceeds the cap");
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << nz.size()); ++mask) {
        RatVec v = vals;
        for (std::size_t s = 0; s < nz.size(); ++s)
          if ((mask >> s) & 1u) v[static_cast<std::size_t>(nz[s])] = -v[static_cast<std::size_t>(nz[s])];
        out.push_back(std::move(v));
      }
    } while (std::next_permutation(vals.begin(), vals.end()));
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IlluminationCertificate certify_directions(const SymBody& b, const DirectionSet& dirs,
                                           const std::vector<RatVec>* points, bool parallel,
                                           int vertex_cap) {
  require_pl(b, "certify_directions");
  check_directions(b, dirs);
  IlluminationCertificate c;
  fill_base(c, b);
  c.strategy = "direct";
  c.direction_label = dir_label_name(dirs.label);
  c.directions = dirs.dirs;
  c.distinct_directions = distinct_count(c.directions);
  c.budget_met = within_budget(c.distinct_directions, b.n);
  c.exhaustive = points == nullptr;
  const std::vector<RatVec> pts = points ? *points : enumerate_vertices(b, vertex_cap);
  for (const auto& x : pts)
    if (gauge(b, x) != 1) bad("point is not on the boundary: " + format_rat_vec(x));
  const auto scans = scan_witnesses(b, pts, c.directions, parallel);
  bool all = true;
  c.points.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    c.points[i].x = pts[i];
    c.points[i].witness = scans[i].witness;
    c.points[i].value = scans[i].value;
    all = all && scans[i].witness >= 0;
  }
  c.status = all ? CertStatus::Certified : CertStatus::Uncovered;
  return c;
}

std::vector<RatVec> sample_boundary_points(const SymBody& b, std::size_t count,
                                           std::uint64_t seed) {
  require_pl(b, "sample_boundary_points");
  SplitMix64 rng(derive_seed(seed, 1001));
  std::vector<RatVec> out;
  out.reserve(count);
  while (out.size() < count) {
    RatVec x(static_cast<std::size_t>(b.n));
    for (auto& xi : x) {
      const std::int64_t num = static_cast<std::int64_t>(rng.below(4001)) - 2000;
      xi = Rat(num, static_cast<std::int64_t>(rng.below(64)) + 1);
    }
    if (is_zero_vec(x)) continue;
    const Rat g = gauge(b, x);
    for (auto& xi : x) xi /= g;
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<DVec> sample_boundary_points_d(const SymBody& b, std::size_t count,
                                           std::uint64_t seed) {
  if (b.is_pl()) bad("sample_boundary_points_d is for smooth bodies");
  std::vector<DVec> out;
  out.reserve(static_cast<std::size_t>(b.n) + count);
  for (int k = 1; k <= b.n; ++k) {
    DVec v(static_cast<std::size_t>(b.n), 0.0);
    for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = 1.0;
    const double g = gauge_d(b, v);
    for (auto& vi : v) vi /= g;
    out.push_back(std::move(v));
  }
  SplitMix64 rng(derive_seed(seed, 1002));
  while (out.size() < static_cast<std::size_t>(b.n) + count) {
    DVec v(static_cast<std::size_t>(b.n));
    double big = 0;
    for (auto& vi : v) {
      vi = rng.sign() * rng.unit();
      big = std::max(big, std::abs(vi));
    }
    if (big < 1e-9) continue;
    const double g = gauge_d(b, v);
    for (auto& vi : v) vi /= g;
    out.push_back(std::move(v));
  }
  return out;
}

IlluminationCertificate certify_directions_sampled(const SymBody& b, const DirectionSet& dirs,
                                                   std::size_t samples, std::uint64_t seed,
                                                   double margin, bool parallel) {
  if (b.is_pl()) bad("sampled audits are for smooth bodies; dual_orbit bodies certify exactly");
  check_directions(b, dirs);
  IlluminationCertificate c;
  fill_base(c, b);
  c.strategy = "direct";
  c.direction_label = dir_label_name(dirs.label);
  c.directions = dirs.dirs;
  c.distinct_directions = distinct_count(c.directions);
  c.budget_met = within_budget(c.distinct_directions, b.n);
  c.exhaustive = false;
  c.margin = margin;
  const auto pts = sample_boundary_points_d(b, samples, seed);
  std::vector<DVec> dirs_d;
  dirs_d.reserve(c.directions.size());
  for (const auto& d : c.directions) dirs_d.push_back(to_dvec(d));
  const auto scans = scan_witnesses_d(b, pts, dirs_d, margin, parallel);
  bool all = true;
  c.points.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    c.points[i].xd = pts[i];
    c.points[i].witness = scans[i].witness;
    c.points[i].value_d = scans[i].value;
    all = all && scans[i].witness >= 0;
  }
  c.status = all ? CertStatus::SampledOnly : CertStatus::SampledUncovered;
  return c;
}

namespace {

IlluminationCertificate certify_any(const SymBody& b, const DirectionSet& ds,
                                    std::uint64_t seed, const AutoOptions& opt) {
  return b.is_pl() ? certify_directions(b, ds, nullptr, opt.parallel, opt.vertex_cap)
                   : certify_directions_sampled(b, ds, opt.lp_samples, seed, opt.lp_margin,
                                                opt.parallel);
}

bool cert_good(const IlluminationCertificate& c) {
  return c.status == CertStatus::Certified || c.status == CertStatus::SampledOnly;
}

// Cover search over tilted_pool for small n, used when the pruned far set
// misses the 2^n budget. Returns nothing when the pool cannot do better.
std::optional<AutoResult> refine_far(const SymBody& b, const FarInfo& far,
                                     const AutoOptions& opt) {
  if (!b.is_pl() || b.n > opt.refine_dim_cap) return std::nullopt;
  const DirectionSet pool = tilted_pool(b.n);
  MinIllResult mi = min_illumination_search(b, pool, opt.vertex_cap,
                                            pool.dirs.size() * (std::size_t(1) << 20),
                                            opt.refine_node_cap);
  if (!mi.feasible || Int(mi.size) >= pow_int(Int(2), b.n)) return std::nullopt;
  AutoResult out;
  out.dirs.label = DirLabel::Custom;
  out.dirs.n = b.n;
  for (const int j : mi.chosen) out.dirs.dirs.push_back(pool.dirs[static_cast<std::size_t>(j)]);
  out.cert = std::move(mi.cert);
  out.cert.strategy = strategy_name(Strategy::Far);
  out.cert.far = far;
  out.cert.far.mode = "adaptive+refine";
  out.cert.far.pool_size = pool.dirs.size();
  return out;
}

AutoResult far_run(const SymBody& b, std::uint64_t seed, AutoMode mode,
                   const AutoOptions& opt) {
  const int n = b.n;
  const int kmax = (n + 1) / 2;
  std::int64_t base = default_trial_count(n);
  if (mode == AutoMode::Adaptive && base == 0) base = 1;
  const int rounds = mode == AutoMode::Adaptive ? std::max(1, opt.max_rounds) : 1;

  AutoResult res;
  for (int r = 0; r < rounds; ++r) {
    const std::int64_t L = base << r;
    std::vector<RandomSetRealization> reals;
    reals.reserve(static_cast<std::size_t>(kmax));
    for (int k = 1; k <= kmax; ++k)
      reals.push_back(build_rk(n, k, L, seed, static_cast<std::uint32_t>(r)));

    const DirectionSet tset = gen_direction_set(DirLabel::T, n);
    std::set<RatVec> pool(tset.dirs.begin(), tset.dirs.end());
    for (const auto& real : reals)
      for (const auto& t : real.trials) pool.insert(trial_direction(t, n));
    DirectionSet ds;
    ds.label = DirLabel::Random;
    ds.n = n;
    ds.dirs.assign(pool.begin(), pool.end());

    IlluminationCertificate c = certify_any(b, ds, seed, opt);
    c.strategy = strategy_name(Strategy::Far);
    c.far.used = true;
    c.far.mode = mode == AutoMode::Adaptive ? "adaptive" : "faithful";
    c.far.seed = seed;
    c.far.rounds = static_cast<std::uint32_t>(r) + 1;
    c.far.pool_size = c.distinct_directions;
    const bool last_round = cert_good(c) || r + 1 == rounds;
    for (int k = 1; k <= kmax; ++k) {
      c.far.count_per_k.emplace_back(k, L);
      if (last_round && n <= 20 && pattern_count(n, k) <= (std::uint64_t(1) << 31))
        c.far.ek_status.emplace_back(k, check_ek(reals[static_cast<std::size_t>(k) - 1], 16,
                                                 opt.parallel)
                                            .covered);
    }

    if (cert_good(c) && mode == AutoMode::Adaptive) {
      // Keep only the directions that actually witnessed a point; the
      // T-union-R_k pool routinely overshoots the 2^n budget at small n.
      std::set<RatVec> used;
      for (const auto& p : c.points) used.insert(c.directions[static_cast<std::size_t>(p.witness)]);
      DirectionSet pruned;
      pruned.label = DirLabel::Random;
      pruned.n = n;
      pruned.dirs.assign(used.begin(), used.end());
      IlluminationCertificate c2 = certify_any(b, pruned, seed, opt);
      c2.strategy = c.strategy;
      c2.far = c.far;
      if (!c2.budget_met) {
        if (auto refined = refine_far(b, c.far, opt)) return *refined;
      }
      res.dirs = std::move(pruned);
      res.cert = std::move(c2);
      return res;
    }
    if (cert_good(c) || mode == AutoMode::Faithful || r + 1 == rounds) {
      if (mode == AutoMode::Adaptive && !cert_good(c)) {
        if (auto refined = refine_far(b, c.far, opt)) return *refined;
      }
      res.dirs = std::move(ds);
      res.cert = std::move(c);
      return res;
    }
  }
  throw std::logic_error("far_run fell through");
}

}  // namespace

AutoResult illuminate_auto(const SymBody& b, std::uint64_t seed, AutoMode mode,
                           const AutoOptions& opt) {
  const Strategy s = select_strategy(b);
  if (s == Strategy::Cube) {
    AutoResult res;
    res.dirs = gen_direction_set(DirLabel::CubeCorners, b.n);
    res.cert = certify_directions(b, res.dirs, nullptr, opt.parallel, opt.vertex_cap);
    res.cert.strategy = strategy_name(Strategy::Cube);
    return res;
  }
  std::vector<Strategy> stages;
  if (s == Strategy::NearT2) stages = {Strategy::NearT2, Strategy::NearT1, Strategy::Far};
  else if (s == Strategy::NearT1) stages = {Strategy::NearT1, Strategy::Far};
  else stages = {Strategy::Far};

  for (const Strategy stage : stages) {
    if (stage == Strategy::Far) return far_run(b, seed, mode, opt);
    AutoResult res;
    res.dirs = gen_direction_set(stage == Strategy::NearT2 ? DirLabel::T2 : DirLabel::T1, b.n);
    res.cert = certify_any(b, res.dirs, seed, opt);
    res.cert.strategy = strategy_name(stage);
    // T2 has exactly 2^n members at n = 2, so a good certificate can still
    // miss the budget there; escalation handles that like a failure.
    if (cert_good(res.cert) && res.cert.budget_met) return res;
  }
  throw std::logic_error("illuminate_auto fell through");
}

DirectionSet grid_pool(int n) {
  if (n < 2 || n > 12) bad("grid_pool supports 2 <= n <= 12");
  DirectionSet out;
  out.label = DirLabel::Custom;
  out.n = n;
  std::vector<int> digit(static_cast<std::size_t>(n), 0);  // 0,1,2 -> -1,0,1
  while (true) {
    RatVec v(static_cast<std::size_t>(n));
    bool zero = true;
    for (int i = 0; i < n; ++i) {
      v[static_cast<std::size_t>(i)] = digit[static_cast<std::size_t>(i)] - 1;
      zero = zero && digit[static_cast<std::size_t>(i)] == 1;
    }
    if (!zero) out.dirs.push_back(std::move(v));
    int i = n - 1;
    while (i >= 0 && digit[static_cast<std::size_t>(i)] == 2) digit[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++digit[static_cast<std::size_t>(i)];
  }
  return out;
}

DirectionSet tilted_pool(int n) {
  if (n < 2 || n > 8) bad("tilted_pool supports 2 <= n <= 8");
  const std::size_t un = static_cast<std::size_t>(n);
  std::set<RatVec> seen;
  const DirectionSet grid = grid_pool(n);
  seen.insert(grid.dirs.begin(), grid.dirs.end());

  const Rat half(1, 2), three_q(3, 4);
  auto add_scaled = [&](int heavy, const std::vector<int>& rest, const Rat& scale) {
    // heavy coordinate +-1, rest coordinates +-scale, all sign patterns
    const std::size_t m = rest.size();
    for (std::uint32_t mask = 0; mask < (1u << (m + 1)); ++mask) {
      RatVec v(un, Rat(0));
      v[static_cast<std::size_t>(heavy)] = (mask & 1u) ? Rat(-1) : Rat(1);
      for (std::size_t t = 0; t < m; ++t)
        v[static_cast<std::size_t>(rest[t])] = ((mask >> (t + 1)) & 1u) ? -scale : scale;
      seen.insert(std::move(v));
    }
  };

  for (int i = 0; i < n; ++i) {
    std::vector<int> others;
    for (int j = 0; j < n; ++j)
      if (j != i) others.push_back(j);
    for (std::size_t a = 0; a < others.size(); ++a) {
      add_scaled(i, {others[a]}, half);
      for (std::size_t c = a + 1; c < others.size(); ++c) {
        add_scaled(i, {others[a], others[c]}, half);
        add_scaled(i, {others[a], others[c]}, three_q);
      }
    }
    add_scaled(i, others, three_q);
  }

  DirectionSet out;
  out.label = DirLabel::Custom;
  out.n = n;
  out.dirs.assign(seen.begin(), seen.end());
  return out;
}

MinIllResult min_illumination_search(const SymBody& b, const DirectionSet& pool, int vertex_cap,
                                     std::size_t max_pairs, std::size_t max_nodes) {
  require_pl(b, "min_illumination_search");
  check_directions(b, pool);
  MinIllResult res;
  res.vertices = enumerate_vertices(b, vertex_cap);
  const std::size_t N = res.vertices.size();
  const std::size_t M = pool.dirs.size();
  if (N * M > max_pairs) bad("vertex/pool product exceeds the search cap");

  const std::size_t words = (N + 63) / 64;
  std::vector<std::vector<int>> covers(N);
  std::vector<std::vector<std::uint64_t>> dir_cover(M, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < N; ++i) {
    const PreparedPoint pp = prepare_point(b, res.vertices[i]);
    for (std::size_t j = 0; j < M; ++j) {
      if (derivative_prepared(b, pp, pool.dirs[j]) < 0) {
        covers[i].push_back(static_cast<int>(j));
        dir_cover[j][i >> 6] |= (std::uint64_t(1) << (i & 63));
      }
    }
    if (covers[i].empty()) {
      res.feasible = false;
      res.optimal = true;  // infeasibility is proven, not budget-limited
      res.uncoverable_vertex = static_cast<int>(i);
      return res;
    }
  }

  auto popcount = [&](const std::vector<std::uint64_t>& bits) {
    std::size_t c = 0;
    for (const auto w : bits) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  };
  auto covered_count = [&](const std::vector<std::uint64_t>& unc, std::size_t j) {
    std::size_t c = 0;
    for (std::size_t w = 0; w < words; ++w)
      c += static_cast<std::size_t>(std::popcount(unc[w] & dir_cover[j][w]));
    return c;
  };

  std::vector<std::uint64_t> full(words, ~std::uint64_t(0));
  if (N & 63) full[words - 1] = (std::uint64_t(1) << (N & 63)) - 1;

  // Greedy upper bound, then exact branch and bound.
  std::vector<int> best;
  {
    auto unc = full;
    while (popcount(unc) > 0) {
      std::size_t pick = 0, gain = 0;
      for (std::size_t j = 0; j < M; ++j) {
        const std::size_t g = covered_count(unc, j);
        if (g > gain) {
          gain = g;
          pick = j;
        }
      }
      best.push_back(static_cast<int>(pick));
      for (std::size_t w = 0; w < words; ++w) unc[w] &= ~dir_cover[pick][w];
    }
  }

  std::vector<int> chosen;
  std::size_t nodes = 0;
  bool truncated = false;
  std::function<void(const std::vector<std::uint64_t>&)> dfs =
      [&](const std::vector<std::uint64_t>& unc) {
        if (truncated || ++nodes > max_nodes) {
          truncated = true;
          return;
        }
        const std::size_t left = popcount(unc);
        if (left == 0) {
          if (chosen.size() < best.size()) best = chosen;
          return;
        }
        std::size_t maxcov = 0;
        for (std::size_t j = 0; j < M; ++j) maxcov = std::max(maxcov, covered_count(unc, j));
        if (chosen.size() + (left + maxcov - 1) / maxcov >= best.size()) return;
        std::size_t branch = N;
        std::size_t fewest = M + 1;
        for (std::size_t i = 0; i < N; ++i) {
          if (!((unc[i >> 6] >> (i & 63)) & 1u)) continue;
          if (covers[i].size() < fewest) {
            fewest = covers[i].size();
            branch = i;
          }
        }
        for (const int j : covers[branch]) {
          auto next = unc;
          for (std::size_t w = 0; w < words; ++w) next[w] &= ~dir_cover[static_cast<std::size_t>(j)][w];
          chosen.push_back(j);
          dfs(next);
          chosen.pop_back();
        }
      };
  dfs(full);

  std::sort(best.begin(), best.end());
  res.feasible = true;
  res.optimal = !truncated;
  res.chosen = best;
  res.size = best.size();
  DirectionSet chosen_set;
  chosen_set.label = DirLabel::Custom;
  chosen_set.n = b.n;
  for (const int j : best) chosen_set.dirs.push_back(pool.dirs[static_cast<std::size_t>(j)]);
  res.cert = certify_directions(b, chosen_set, &res.vertices, true, vertex_cap);
  res.cert.strategy = "min_ill";
  res.cert.exhaustive = true;
  return res;
}

std::string certificate_to_json(const IlluminationCertificate& c) {
  json j;
  j["body_digest"] = c.body_digest;
  j["body_spec"] = json::parse(c.body_spec);
  j["n"] = c.n;
  j["strategy"] = c.strategy;
  j["direction_label"] = c.direction_label;
  json dirs = json::array();
  for (const auto& d : c.directions) {
    json row = json::array();
    for (const auto& e : d) row.push_back(format_rat(e));
    dirs.push_back(std::move(row));
  }
  j["directions"] = std::move(dirs);
  j["distinct_directions"] = c.distinct_directions;
  j["budget_met"] = c.budget_met;
  j["exhaustive"] = c.exhaustive;
  j["margin"] = c.margin;
  j["status"] = cert_status_name(c.status);
  json pts = json::array();
  for (const auto& p : c.points) {
    json rec;
    rec["witness"] = p.witness;
    if (!p.x.empty()) {
      json xs = json::array();
      for (const auto& e : p.x) xs.push_back(format_rat(e));
      rec["x"] = std::move(xs);
      rec["value"] = format_rat(p.value);
    } else {
      rec["x"] = p.xd;
      rec["value"] = p.value_d;
    }
    pts.push_back(std::move(rec));
  }
  j["points"] = std::move(pts);
  json far;
  far["used"] = c.far.used;
  if (c.far.used) {
    far["mode"] = c.far.mode;
    far["seed"] = c.far.seed;
    far["rounds"] = c.far.rounds;
    far["pool_size"] = c.far.pool_size;
    json cpk = json::array();
    for (const auto& [k, L] : c.far.count_per_k) cpk.push_back(json::array({k, L}));
    far["count_per_k"] = std::move(cpk);
    json ek = json::array();
    for (const auto& [k, cov] : c.far.ek_status) ek.push_back(json::array({k, cov}));
    far["ek"] = std::move(ek);
  }
  j["far"] = std::move(far);
  return j.dump(2) + "\n";
}

IlluminationCertificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("certificate parse: ") + e.what());
  }
  IlluminationCertificate c;
  try {
    c.body_digest = j.at("body_digest").get<std::string>();
    c.body_spec = j.at("body_spec").dump();
    c.n = j.at("n").get<int>();
    c.strategy = j.at("strategy").get<std::string>();
    c.direction_label = j.at("direction_label").get<std::string>();
    for (const auto& row : j.at("directions")) {
      RatVec d;
      for (const auto& e : row) d.push_back(parse_rat(e.get<std::string>()));
      c.directions.push_back(std::move(d));
    }
    c.distinct_directions = j.at("distinct_directions").get<std::size_t>();
    c.budget_met = j.at("budget_met").get<bool>();
    c.exhaustive = j.at("exhaustive").get<bool>();
    c.margin = j.at("margin").get<double>();
    c.status = cert_status_from_name(j.at("status").get<std::string>());
    for (const auto& rec : j.at("points")) {
      PointRecord p;
      p.witness = rec.at("witness").get<int>();
      const auto& xs = rec.at("x");
      if (!xs.empty() && xs.front().is_string()) {
        for (const auto& e : xs) p.x.push_back(parse_rat(e.get<std::string>()));
        p.value = parse_rat(rec.at("value").get<std::string>());
      } else {
        for (const auto& e : xs) p.xd.push_back(e.get<double>());
        p.value_d = rec.at("value").get<double>();
      }
      c.points.push_back(std::move(p));
    }
    const auto& far = j.at("far");
    c.far.used = far.at("used").get<bool>();
    if (c.far.used) {
      c.far.mode = far.at("mode").get<std::string>();
      c.far.seed = far.at("seed").get<std::uint64_t>();
      c.far.rounds = far.at("rounds").get<std::uint32_t>();
      c.far.pool_size = far.at("pool_size").get<std::size_t>();
      for (const auto& e : far.at("count_per_k"))
        c.far.count_per_k.emplace_back(e.at(0).get<int>(), e.at(1).get<std::int64_t>());
      for (const auto& e : far.at("ek"))
        c.far.ek_status.emplace_back(e.at(0).get<int>(), e.at(1).get<bool>());
    }
  } catch (const json::exception& e) {
    bad(std::string("certificate fields: ") + e.what());
  }
  return c;
}

bool verify_certificate(const IlluminationCertificate& c, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  SymBody b;
  try {
    b = parse_body(c.body_spec);
  } catch (const std::exception& e) {
    return fail(std::string("body spec: ") + e.what());
  }
  if (body_digest(b) != c.body_digest) return fail("body digest mismatch");
  if (b.n != c.n) return fail("dimension mismatch");
  if (c.directions.empty()) return fail("no directions");
  if (c.points.empty()) return fail("no checked points");
  if (distinct_count(c.directions) != c.distinct_directions)
    return fail("distinct direction count mismatch");
  if (within_budget(c.distinct_directions, c.n) != c.budget_met)
    return fail("budget flag mismatch");

  bool all = true;
  if (b.is_pl()) {
    std::vector<RatVec> pts;
    for (const auto& p : c.points) {
      if (p.x.empty()) return fail("exact certificate with a sampled point record");
      if (gauge(b, p.x) != 1) return fail("point off the boundary: " + format_rat_vec(p.x));
      pts.push_back(p.x);
    }
    const auto scans = scan_witnesses_serial(b, pts, c.directions);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (scans[i].witness != c.points[i].witness) return fail("witness index mismatch");
      if (scans[i].value != c.points[i].value) return fail("derivative value mismatch");
      all = all && scans[i].witness >= 0;
    }
    const CertStatus want = all ? CertStatus::Certified : CertStatus::Uncovered;
    if (c.status != want) return fail("status mismatch");
  } else {
    std::vector<DVec> pts;
    for (const auto& p : c.points) {
      if (p.xd.empty()) return fail("sampled certificate with an exact point record");
      pts.push_back(p.xd);
    }
    std::vector<DVec> dirs_d;
    for (const auto& d : c.directions) dirs_d.push_back(to_dvec(d));
    const auto scans = scan_witnesses_d_serial(b, pts, dirs_d, c.margin);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (scans[i].witness != c.points[i].witness) return fail("witness index mismatch");
      if (scans[i].value != c.points[i].value_d) return fail("derivative value mismatch");
      all = all && scans[i].witness >= 0;
    }
    const CertStatus want = all ? CertStatus::SampledOnly : CertStatus::SampledUncovered;
    if (c.status != want) return fail("status mismatch");
  }
  return true;
}

}  // namespace illume
