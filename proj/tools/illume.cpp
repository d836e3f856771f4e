#include "illume/audit.hpp"
#include "illume/bodies.hpp"
#include "illume/certify.hpp"
#include "illume/directions.hpp"
#include "illume/kernels.hpp"
#include "illume/randomized.hpp"
#include "illume/subdiff.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace illume;

constexpr std::uint64_t kDefaultSeed = 1729;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

// A body argument is either a path to a spec file or inline spec text
// (JSON record or a shorthand such as cube:3, topk(2):5, lp(3/2):4).
SymBody load_body(const std::string& arg) {
  return parse_body(file_exists(arg) ? read_file(arg) : arg);
}

// A directions argument is a family name or a path to a directions file.
DirectionSet load_directions(const std::string& arg, int n) {
  if (const auto label = dir_label_from_name(arg)) return gen_direction_set(*label, n);
  DirectionSet d = parse_directions(read_file(arg));
  if (d.n != n) throw std::invalid_argument("directions dimension mismatch");
  return d;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

std::string pattern_str(const Pattern& p) {
  std::string s = "S:";
  for (std::size_t i = 0; i < p.support.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.support[i] + 1);
  }
  s += ";X:";
  for (const int e : p.signs) s += e > 0 ? '+' : '-';
  return s;
}

int cmd_norm(const std::string& body_arg, const std::string& x_arg) {
  const SymBody b = load_body(body_arg);
  const RatVec x = parse_rat_vec(x_arg);
  if (static_cast<int>(x.size()) != b.n) throw std::invalid_argument("vector length mismatch");
  if (b.is_pl())
    std::cout << format_rat(gauge(b, x)) << "\n";
  else
    std::cout << fmt_double(gauge_d(b, to_dvec(x))) << "\n";
  return 0;
}

int cmd_distance(const std::string& body_arg) {
  const SymBody b = load_body(body_arg);
  std::cout << "distance=";
  if (b.is_pl())
    std::cout << format_rat(distance_to_cube(b));
  else
    std::cout << fmt_double(distance_to_cube_d(b));
  std::cout << " strategy=" << strategy_name(select_strategy(b))
            << " pair_condition=" << (pair_condition(b) ? "true" : "false")
            << " is_cube=" << (is_cube(b) ? "true" : "false") << "\n";
  return 0;
}

int cmd_vertices(const std::string& body_arg, int cap, const std::string& out_path) {
  const SymBody b = load_body(body_arg);
  const auto verts = enumerate_vertices(b, cap);
  std::ostringstream out;
  out << "# vertices: n=" << b.n << " count=" << verts.size() << "\n";
  for (const auto& v : verts) out << format_rat_vec(v) << "\n";
  emit(out.str(), out_path);
  if (!out_path.empty()) std::cout << "vertices=" << verts.size() << "\n";
  return 0;
}

int cmd_illuminate(const std::string& body_arg, const std::string& dirs_arg,
                   const std::string& verify_arg, std::uint64_t seed, const std::string& mode,
                   int cap, std::size_t samples, double margin, bool parallel,
                   const std::string& out_cert, const std::string& out_dirs) {
  if (!verify_arg.empty()) {
    const auto cert = certificate_from_json(read_file(verify_arg));
    std::string why;
    const bool ok = verify_certificate(cert, &why);
    std::cout << "verify=" << (ok ? "ok" : "failed") << (why.empty() ? "" : " reason=" + why)
              << "\n";
    return ok ? 0 : 1;
  }
  const SymBody b = load_body(body_arg);
  AutoOptions opt;
  opt.vertex_cap = cap;
  opt.lp_samples = samples;
  opt.lp_margin = margin;
  opt.parallel = parallel;

  DirectionSet dirs;
  IlluminationCertificate cert;
  if (!dirs_arg.empty()) {
    dirs = load_directions(dirs_arg, b.n);
    cert = b.is_pl() ? certify_directions(b, dirs, nullptr, parallel, cap)
                     : certify_directions_sampled(b, dirs, samples, seed, margin, parallel);
  } else {
    const AutoMode m = mode == "faithful" ? AutoMode::Faithful : AutoMode::Adaptive;
    AutoResult res = illuminate_auto(b, seed, m, opt);
    dirs = std::move(res.dirs);
    cert = std::move(res.cert);
  }
  std::cout << "strategy=" << cert.strategy << " directions=" << cert.directions.size()
            << " distinct=" << cert.distinct_directions
            << " status=" << cert_status_name(cert.status)
            << " budget_met=" << (cert.budget_met ? "true" : "false") << "\n";
  for (const auto& p : cert.points)
    if (p.witness < 0 && !p.x.empty()) std::cout << "uncovered " << format_rat_vec(p.x) << "\n";
  if (!out_cert.empty()) write_file(out_cert, certificate_to_json(cert));
  if (!out_dirs.empty()) write_file(out_dirs, format_directions(dirs));
  const bool good =
      cert.status == CertStatus::Certified || cert.status == CertStatus::SampledOnly;
  return good ? 0 : 1;
}

int cmd_audit(const std::string& body_arg, std::uint64_t samples, std::uint64_t seed, int cap,
              const std::string& out_path) {
  const SymBody b = load_body(body_arg);
  std::vector<AuditReport> reports;
  reports.push_back(audit_norm_axioms(b, samples, seed));
  if (b.is_pl()) {
    reports.push_back(audit_subgradient_lemmas(b, samples, seed, cap));
    AuditReport imp;
    imp.body_label = b.label;
    imp.checks.push_back(audit_norm_implication(b, cap));
    reports.push_back(imp);
  }
  emit(audit_csv(reports), out_path);
  std::uint64_t violations = 0;
  for (const auto& r : reports) violations += r.total_violations();
  if (!out_path.empty()) std::cout << "violations=" << violations << "\n";
  return violations == 0 ? 0 : 1;
}

int cmd_simulate(int n, int k, std::int64_t trials, std::int64_t count, std::uint64_t seed,
                 bool chain, bool threshold, bool ek, bool dump, int n_min, int n_max,
                 bool parallel, const std::string& out_path) {
  std::ostringstream out;
  if (chain) {
    out << "n,k,q,stirling,final,log_q,log_stirling,log_final,holds_exact,holds_float\n";
    for (int nn = 2; nn <= n_max; ++nn)
      for (int kk = 1; 2 * kk - 1 <= nn; ++kk) {
        const auto row = bound_chain(nn, kk);
        out << row.n << ',' << row.k << ',' << format_rat(row.q) << ','
            << format_rat(row.stirling) << ',' << format_rat(row.final_bound) << ','
            << fmt_double(row.log_q) << ',' << fmt_double(row.log_stirling) << ','
            << fmt_double(row.log_final) << ',' << row.holds_exact << ',' << row.holds_float
            << "\n";
      }
  } else if (threshold) {
    const auto scan = estimate_threshold_n(n_min, n_max);
    out << "n,k,log_lhs,log_rhs,holds\n";
    for (const auto& row : scan.rows)
      out << row.n << ',' << row.k << ',' << fmt_double(row.log_lhs) << ','
          << fmt_double(row.log_rhs) << ',' << row.holds << "\n";
    out << "# union_fail:";
    for (const int nn : scan.union_fail) out << ' ' << nn;
    out << "\n# minimal_n0 " << scan.minimal_n0 << "\n";
  } else if (dump) {
    out << dump_realization(build_rk(n, k, count, seed));
  } else if (ek) {
    const auto r = build_rk(n, k, count, seed);
    const auto cov = check_ek(r, 16, parallel);
    out << "n,k,L,seed,covered,missing,total\n";
    out << n << ',' << k << ',' << r.trials.size() << ',' << seed << ',' << cov.covered << ','
        << cov.missing_count << ',' << cov.total_patterns << "\n";
    for (const auto& p : cov.missing) out << "# missing " << pattern_str(p) << "\n";
  } else {
    const Rat q = trial_success_prob(n, k);
    const auto row = bound_chain(n, k);
    out << "# q=" << format_rat(q) << " stirling=" << format_rat(row.stirling)
        << " final=" << format_rat(row.final_bound) << " chain_holds=" << row.holds_exact
        << "\n";
    if (trials > 0) {
      const auto hits = mc_pattern_hits(n, k, static_cast<std::uint64_t>(trials), seed, parallel);
      const double qd = to_double(q);
      const double sigma = std::sqrt(static_cast<double>(trials) * qd * (1 - qd));
      out << "pattern,hits,freq,z,within_3sigma\n";
      for (std::uint64_t idx = 0; idx < hits.size(); ++idx) {
        const Pattern p = pattern_from_index(n, k, idx);
        const double z = (static_cast<double>(hits[idx]) - trials * qd) / sigma;
        out << pattern_str(p) << ',' << hits[idx] << ','
            << fmt_double(static_cast<double>(hits[idx]) / static_cast<double>(trials)) << ','
            << fmt_double(z) << ',' << (std::abs(z) <= 3.0) << "\n";
      }
    }
  }
  emit(out.str(), out_path);
  return 0;
}

int cmd_min_ill(const std::string& body_arg, const std::string& pool_arg, int cap,
                std::size_t max_pairs, const std::string& out_cert) {
  const SymBody b = load_body(body_arg);
  const DirectionSet pool = pool_arg == "grid"     ? grid_pool(b.n)
                            : pool_arg == "tilted" ? tilted_pool(b.n)
                                                   : load_directions(pool_arg, b.n);
  const auto res = min_illumination_search(b, pool, cap, max_pairs);
  if (!res.feasible) {
    std::cout << "infeasible uncoverable_vertex="
              << format_rat_vec(res.vertices[static_cast<std::size_t>(res.uncoverable_vertex)])
              << "\n";
    return 1;
  }
  std::cout << "min_directions=" << res.size << (res.optimal ? "" : " (search truncated)")
            << "\n";
  for (const int j : res.chosen)
    std::cout << format_rat_vec(pool.dirs[static_cast<std::size_t>(j)]) << "\n";
  if (!out_cert.empty()) write_file(out_cert, certificate_to_json(res.cert));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"illumination machinery for 1-symmetric convex bodies"};
  app.require_subcommand(1);

  std::string body_arg, x_arg, dirs_arg, verify_arg, pool_arg = "grid";
  std::string out_path, out_cert, out_dirs, mode = "adaptive";
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t audit_samples = 20000;
  std::size_t lp_samples = 2048, max_pairs = 1000000;
  double margin = 1e-9;
  int cap = 8, threads = 0;
  int n = 0, k = 1, n_min = 2, n_max = 128;
  std::int64_t trials = 0, count = -1;
  bool chain = false, threshold = false, ek = false, dump = false;

  auto* c_norm = app.add_subcommand("norm", "evaluate the gauge at a vector");
  c_norm->add_option("--body", body_arg, "body spec file or inline spec")->required();
  c_norm->add_option("--x", x_arg, "vector, space-separated rationals")->required();

  auto* c_dist = app.add_subcommand("distance", "distance to the cube and chosen strategy");
  c_dist->add_option("--body", body_arg)->required();

  auto* c_vert = app.add_subcommand("vertices", "enumerate all vertices of a dual_orbit body");
  c_vert->add_option("--body", body_arg)->required();
  c_vert->add_option("--cap", cap, "max dimension");
  c_vert->add_option("--out", out_path, "write the list here instead of stdout");

  auto* c_ill = app.add_subcommand("illuminate", "certify a direction set or run the driver");
  c_ill->add_option("--body", body_arg, "body spec file or inline spec");
  c_ill->add_option("--directions", dirs_arg, "family name (T|T1|T2|CubeCorners) or file");
  c_ill->add_option("--verify", verify_arg, "re-verify a certificate file and exit");
  c_ill->add_option("--seed", seed, "master seed (default 1729)");
  c_ill->add_option("--mode", mode)->check(CLI::IsMember({"faithful", "adaptive"}));
  c_ill->add_option("--cap", cap, "vertex enumeration dimension cap");
  c_ill->add_option("--samples", lp_samples, "sampled boundary points for smooth bodies");
  c_ill->add_option("--margin", margin, "illumination margin for smooth bodies");
  c_ill->add_option("--out-cert", out_cert, "write the certificate here");
  c_ill->add_option("--out-dirs", out_dirs, "write the direction set here");
  c_ill->add_option("--threads", threads, "worker threads (1 = serial)");

  auto* c_aud = app.add_subcommand("audit", "norm-axiom and subgradient invariant audits");
  c_aud->add_option("--body", body_arg)->required();
  c_aud->add_option("--samples", audit_samples, "random samples per check");
  c_aud->add_option("--seed", seed);
  c_aud->add_option("--cap", cap);
  c_aud->add_option("--out", out_path, "write the CSV report here");

  auto* c_sim = app.add_subcommand("simulate", "probability tables and coverage experiments");
  c_sim->add_option("--n", n);
  c_sim->add_option("--k", k);
  c_sim->add_option("--trials", trials, "Monte Carlo trials for the per-pattern table");
  c_sim->add_option("--count", count, "trial count for --ek/--dump (-1 = default)");
  c_sim->add_option("--seed", seed);
  c_sim->add_flag("--chain", chain, "bound-chain table over 2..n-max");
  c_sim->add_flag("--threshold", threshold, "log-space threshold scan");
  c_sim->add_flag("--ek", ek, "coverage check of one seeded realization");
  c_sim->add_flag("--dump", dump, "print one seeded realization");
  c_sim->add_option("--n-min", n_min);
  c_sim->add_option("--n-max", n_max);
  c_sim->add_option("--threads", threads);
  c_sim->add_option("--out", out_path);

  auto* c_min = app.add_subcommand("min-ill", "exact minimum cover from a direction pool");
  c_min->add_option("--body", body_arg)->required();
  c_min->add_option("--pool", pool_arg, "grid (default), tilted, family name, or file");
  c_min->add_option("--cap", cap);
  c_min->add_option("--max-pairs", max_pairs);
  c_min->add_option("--out-cert", out_cert);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_thread_count(threads);
    const bool parallel = threads != 1;
    if (c_norm->parsed()) return cmd_norm(body_arg, x_arg);
    if (c_dist->parsed()) return cmd_distance(body_arg);
    if (c_vert->parsed()) return cmd_vertices(body_arg, cap, out_path);
    if (c_ill->parsed()) {
      if (body_arg.empty() && verify_arg.empty())
        throw std::invalid_argument("illuminate needs --body or --verify");
      return cmd_illuminate(body_arg, dirs_arg, verify_arg, seed, mode, cap, lp_samples, margin,
                            parallel, out_cert, out_dirs);
    }
    if (c_aud->parsed()) return cmd_audit(body_arg, audit_samples, seed, cap, out_path);
    if (c_sim->parsed()) {
      if (!chain && !threshold && n < 2) throw std::invalid_argument("simulate needs --n");
      return cmd_simulate(n, k, trials, count, seed, chain, threshold, ek, dump, n_min, n_max,
                          parallel, out_path);
    }
    if (c_min->parsed()) return cmd_min_ill(body_arg, pool_arg, cap, max_pairs, out_cert);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
