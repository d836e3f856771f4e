#include "illume/directions.hpp"

#include "illume/subdiff.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace illume {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

// sign vector on the first m coordinates from mask bits, zeros elsewhere
RatVec sign_vec(int n, int m, std::uint32_t mask) {
  RatVec v(n, 0);
  for (int i = 0; i < m; ++i) v[i] = ((mask >> i) & 1u) ? Rat(1) : Rat(-1);
  return v;
}

}  // namespace

DirectionSet gen_direction_set(DirLabel label, int n) {
  if (n < 2) bad("direction sets need n >= 2");
  if (n > 30 && label != DirLabel::Custom) bad("direction family too large to materialize");
  DirectionSet out;
  out.label = label;
  out.n = n;
  switch (label) {
    case DirLabel::T:
      for (std::uint32_t m = 0; m < (1u << (n - 1)); ++m)
        out.dirs.push_back(sign_vec(n, n - 1, m));
      break;
    case DirLabel::T1: {
      for (std::uint32_t m = 0; m < (1u << n); ++m) {
        RatVec v = sign_vec(n, n, m);
        bool minus_in_head = false;
        for (int i = 0; i + 1 < n; ++i)
          if (v[i] < 0) minus_in_head = true;
        if (minus_in_head) out.dirs.push_back(std::move(v));
      }
      RatVec extra(n, 1);
      extra[n - 1] = 0;
      out.dirs.push_back(std::move(extra));
      break;
    }
    case DirLabel::T2: {
      for (std::uint32_t m = 0; m < (1u << (n - 1)); ++m)
        out.dirs.push_back(sign_vec(n, n - 1, m));
      RatVec en(n, 0);
      en[n - 1] = 1;
      out.dirs.push_back(en);
      en[n - 1] = -1;
      out.dirs.push_back(std::move(en));
      break;
    }
    case DirLabel::CubeCorners:
      for (std::uint32_t m = 0; m < (1u << n); ++m) out.dirs.push_back(sign_vec(n, n, m));
      break;
    case DirLabel::Custom:
    case DirLabel::Random:
      bad("gen_direction_set only materializes the deterministic families");
  }
  std::sort(out.dirs.begin(), out.dirs.end(), lex_less);
  return out;
}

const char* dir_label_name(DirLabel label) {
  switch (label) {
    case DirLabel::T: return "T";
    case DirLabel::T1: return "T1";
    case DirLabel::T2: return "T2";
    case DirLabel::CubeCorners: return "CubeCorners";
    case DirLabel::Custom: return "Custom";
    case DirLabel::Random: return "Random";
  }
  return "?";
}

std::optional<DirLabel> dir_label_from_name(std::string_view name) {
  if (name == "T") return DirLabel::T;
  if (name == "T1") return DirLabel::T1;
  if (name == "T2") return DirLabel::T2;
  if (name == "CubeCorners") return DirLabel::CubeCorners;
  if (name == "Custom") return DirLabel::Custom;
  if (name == "Random") return DirLabel::Random;
  return std::nullopt;
}

bool pair_condition(const SymBody& b) {
  if (!b.is_pl()) return true;  // 2^(1/p) > 1 for every finite p
  RatVec e12(b.n, 0);
  e12[0] = 1;
  e12[1] = 1;
  return gauge(b, e12) > 1;
}

Strategy select_strategy(const SymBody& b) {
  if (b.is_pl()) {
    const Rat d = distance_to_cube(b);
    if (d == 1) return Strategy::Cube;
    if (d < 2) return pair_condition(b) ? Strategy::NearT2 : Strategy::NearT1;
    return Strategy::Far;
  }
  // distance n^(1/p) vs 2, decided exactly: n^den < 2^num
  const Int num = numerator(b.p), den = denominator(b.p);
  const Int lhs = pow_int(Int(b.n), den.convert_to<unsigned>());
  const Int rhs = pow_int(Int(2), num.convert_to<unsigned>());
  if (lhs < rhs) return Strategy::NearT2;  // pair condition always true for lp
  return Strategy::Far;
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Cube: return "Cube";
    case Strategy::NearT1: return "NearT1";
    case Strategy::NearT2: return "NearT2";
    case Strategy::Far: return "Far";
  }
  return "?";
}

NormImplicationResult norm_implication_check(const SymBody& b, const RatVec& x,
                                             const RatVec& y) {
  if (!b.is_pl()) bad("norm_implication_check requires a dual_orbit body");
  if (static_cast<int>(x.size()) != b.n || static_cast<int>(y.size()) != b.n)
    bad("norm_implication_check: length mismatch");
  if (gauge(b, x) != 1) bad("norm_implication_check: x is not on the unit sphere");
  for (int i = 0; i < b.n; ++i) {
    if (y[i] != -1 && y[i] != 0 && y[i] != 1)
      bad("norm_implication_check: y entries must lie in {-1,0,1}");
    if (x[i] != 0 && y[i] != -sign_of(x[i]))
      bad("norm_implication_check: y must equal -sign(x) on the support of x");
  }
  NormImplicationResult out;
  const Illumination ill = illuminates_point(b, x, y);
  if (ill.illuminated) {
    out.outcome = NormImplicationOutcome::Illuminated;
    out.value = 0;
    out.bound = 0;
    return out;
  }
  RatVec indicator(b.n, 0);
  for (int i = 0; i < b.n; ++i)
    if (y[i] != 0) indicator[i] = 1;
  out.value = gauge(b, indicator);
  out.bound = Rat(2) / linf_norm(x);
  out.outcome = (out.value >= out.bound) ? NormImplicationOutcome::BoundHolds
                                         : NormImplicationOutcome::Violation;
  return out;
}

DirectionSet parse_directions(const std::string& text) {
  DirectionSet out;
  out.label = DirLabel::Custom;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    RatVec v = parse_rat_vec(line);
    if (v.empty()) continue;
    if (!out.dirs.empty() && v.size() != out.dirs.back().size())
      bad("direction file has inconsistent vector lengths");
    out.dirs.push_back(std::move(v));
  }
  if (out.dirs.empty()) bad("direction file contains no vectors");
  out.n = static_cast<int>(out.dirs[0].size());
  return out;
}

std::string format_directions(const DirectionSet& d) {
  std::string out = "# directions: label=" + std::string(dir_label_name(d.label)) +
                    " n=" + std::to_string(d.n) + " count=" + std::to_string(d.dirs.size()) +
                    "\n";
  for (const auto& v : d.dirs) out += format_rat_vec(v) + "\n";
  return out;
}

}  // namespace illume
