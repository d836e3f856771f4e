#include "illume/audit.hpp"

#include "illume/certify.hpp"
#include "illume/directions.hpp"
#include "illume/rng.hpp"
#include "illume/subdiff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace illume {

namespace {

Rat rand_rat(SplitMix64& rng) {
  const std::int64_t num = static_cast<std::int64_t>(rng.below(2001)) - 1000;
  return Rat(num, static_cast<std::int64_t>(rng.below(64)) + 1);
}

RatVec rand_rat_vec(int n, SplitMix64& rng) {
  RatVec x(static_cast<std::size_t>(n));
  for (auto& xi : x) xi = rand_rat(rng);
  return x;
}

DVec rand_dvec(int n, SplitMix64& rng) {
  DVec x(static_cast<std::size_t>(n));
  for (auto& xi : x) xi = rng.sign() * rng.unit();
  return x;
}

void note(AuditCheck& c, bool ok, const std::string& where) {
  ++c.samples;
  if (!ok) {
    ++c.violations;
    if (c.first_violation.empty()) c.first_violation = where;
  }
}

std::string locate(const RatVec& x, const RatVec& v) {
  return "x=(" + format_rat_vec(x) + ") v=(" + format_rat_vec(v) + ")";
}

// x_i v_i >= 0 for every coordinate.
bool signs_agree(const RatVec& x, const RatVec& v) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] * v[i] < 0) return false;
  return true;
}

// |x_i| > |x_j| implies |v_i| >= |v_j|.
bool moduli_ordered(const RatVec& x, const RatVec& v) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (abs_rat(x[i]) > abs_rat(x[j]) && abs_rat(v[i]) < abs_rat(v[j])) return false;
  return true;
}

}  // namespace

bool AuditReport::ok() const { return total_violations() == 0; }

std::uint64_t AuditReport::total_samples() const {
  std::uint64_t s = 0;
  for (const auto& c : checks) s += c.samples;
  return s;
}

std::uint64_t AuditReport::total_violations() const {
  std::uint64_t s = 0;
  for (const auto& c : checks) s += c.violations;
  return s;
}

AuditReport audit_norm_axioms(const SymBody& b, std::uint64_t samples, std::uint64_t seed) {
  AuditReport rep;
  rep.body_label = b.label;
  AuditCheck homogeneity{"homogeneity", 0, 0, {}};
  AuditCheck triangle{"triangle", 0, 0, {}};
  AuditCheck symmetry{"symmetry", 0, 0, {}};
  AuditCheck monotonicity{"monotonicity", 0, 0, {}};
  AuditCheck normalization{"normalization", 0, 0, {}};

  const int n = b.n;
  SplitMix64 rng(derive_seed(seed, 2001));

  {
    RatVec e1(static_cast<std::size_t>(n), 0);
    e1[0] = 1;
    const bool ok = b.is_pl() ? gauge(b, e1) == 1
                              : std::abs(gauge_d(b, to_dvec(e1)) - 1.0) <= 1e-12;
    note(normalization, ok, "e_1");
  }

  const double slack = 1e-12;
  for (std::uint64_t it = 0; it < samples; ++it) {
    if (b.is_pl()) {
      const RatVec x = rand_rat_vec(n, rng);
      const RatVec z = rand_rat_vec(n, rng);
      const Rat lam = rand_rat(rng);
      RatVec lx = x;
      for (auto& e : lx) e *= lam;
      note(homogeneity, gauge(b, lx) == abs_rat(lam) * gauge(b, x), format_rat_vec(x));
      RatVec xz = x;
      for (std::size_t i = 0; i < xz.size(); ++i) xz[i] += z[i];
      note(triangle, gauge(b, xz) <= gauge(b, x) + gauge(b, z), format_rat_vec(x));
      RatVec sx = x;
      for (int i = n - 1; i > 0; --i)
        std::swap(sx[static_cast<std::size_t>(i)],
                  sx[rng.below(static_cast<std::uint64_t>(i) + 1)]);
      for (auto& e : sx) e *= rng.sign();
      note(symmetry, gauge(b, sx) == gauge(b, x), format_rat_vec(x));
      RatVec shrunk = z;
      for (auto& e : shrunk) e *= Rat(static_cast<std::int64_t>(rng.below(65)), 64);
      note(monotonicity, gauge(b, shrunk) <= gauge(b, z), format_rat_vec(z));
    } else {
      const DVec x = rand_dvec(n, rng);
      const DVec z = rand_dvec(n, rng);
      const double lam = (rng.sign() > 0 ? 1.0 : -1.0) * (rng.unit() * 4 + 0.25);
      DVec lx = x;
      for (auto& e : lx) e *= lam;
      note(homogeneity,
           std::abs(gauge_d(b, lx) - std::abs(lam) * gauge_d(b, x)) <=
               slack * (1 + gauge_d(b, lx)),
           "x");
      DVec xz = x;
      for (std::size_t i = 0; i < xz.size(); ++i) xz[i] += z[i];
      note(triangle,
           gauge_d(b, xz) <= (gauge_d(b, x) + gauge_d(b, z)) * (1 + slack), "x");
      DVec sx = x;
      for (int i = n - 1; i > 0; --i)
        std::swap(sx[static_cast<std::size_t>(i)],
                  sx[rng.below(static_cast<std::uint64_t>(i) + 1)]);
      for (auto& e : sx) e *= rng.sign();
      note(symmetry, std::abs(gauge_d(b, sx) - gauge_d(b, x)) <= slack * (1 + gauge_d(b, x)),
           "x");
      DVec shrunk = z;
      for (auto& e : shrunk) e *= rng.unit();
      note(monotonicity, gauge_d(b, shrunk) <= gauge_d(b, z) * (1 + slack), "z");
    }
  }
  rep.checks = {homogeneity, triangle, symmetry, monotonicity, normalization};
  return rep;
}

AuditReport audit_subgradient_lemmas(const SymBody& b, std::uint64_t samples,
                                     std::uint64_t seed, int vertex_cap) {
  if (!b.is_pl()) throw std::invalid_argument("subgradient audit requires a dual_orbit body");
  AuditReport rep;
  rep.body_label = b.label;
  AuditCheck pos_w{"signs_agree_witness", 0, 0, {}};
  AuditCheck ord_w{"moduli_ordered_witness", 0, 0, {}};
  AuditCheck pos_u{"signs_agree_argmax", 0, 0, {}};
  AuditCheck ord_u{"moduli_ordered_argmax", 0, 0, {}};

  const auto vertices = enumerate_vertices(b, vertex_cap);
  for (const auto& x : vertices) {
    const auto fam = extreme_subgradients(b, x);
    for (const auto& w : fam.items) {
      note(pos_w, signs_agree(x, w.v), locate(x, w.v));
      note(ord_w, moduli_ordered(x, w.v), locate(x, w.v));
    }
  }

  SplitMix64 rng(derive_seed(seed, 2002));
  for (std::uint64_t it = 0; it < samples; ++it) {
    RatVec u = rand_rat_vec(b.n, rng);
    if (is_zero_vec(u)) continue;
    Rat bestval;
    bool first = true;
    for (const auto& x : vertices) {
      const Rat d = dot(u, x);
      if (first || d > bestval) {
        bestval = d;
        first = false;
      }
    }
    for (const auto& x : vertices) {
      if (dot(u, x) != bestval) continue;
      note(pos_u, signs_agree(x, u), locate(x, u));
      note(ord_u, moduli_ordered(x, u), locate(x, u));
    }
  }
  rep.checks = {pos_w, ord_w, pos_u, ord_u};
  return rep;
}

AuditCheck audit_norm_implication(const SymBody& b, int vertex_cap) {
  if (!b.is_pl()) throw std::invalid_argument("norm implication audit requires a dual_orbit body");
  AuditCheck check{"norm_implication", 0, 0, {}};
  const auto vertices = enumerate_vertices(b, vertex_cap);
  for (const auto& x : vertices) {
    std::vector<std::size_t> zero;
    RatVec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) {
        zero.push_back(i);
        y[i] = 0;
      } else {
        y[i] = -sign_of(x[i]);
      }
    }
    std::vector<int> digit(zero.size(), 0);  // 0,1,2 -> -1,0,1 on the zero block
    while (true) {
      for (std::size_t t = 0; t < zero.size(); ++t) y[zero[t]] = digit[t] - 1;
      const auto r = norm_implication_check(b, x, y);
      note(check, r.outcome != NormImplicationOutcome::Violation, locate(x, y));
      std::size_t t = 0;
      while (t < digit.size() && digit[t] == 2) digit[t++] = 0;
      if (t == digit.size()) break;
      ++digit[t];
    }
  }
  return check;
}

std::string audit_csv(const std::vector<AuditReport>& reports) {
  std::ostringstream out;
  out << "body,check,samples,violations,first_violation\n";
  for (const auto& rep : reports)
    for (const auto& c : rep.checks)
      out << rep.body_label << ',' << c.name << ',' << c.samples << ',' << c.violations << ",\""
          << c.first_violation << "\"\n";
  return out.str();
}

}  // namespace illume
