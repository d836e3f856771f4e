#include "illume/randomized.hpp"

#include "illume/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace illume {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

void validate_nk(int n, int k) {
  if (n < 2) bad("need n >= 2");
  if (k < 1 || 2 * k - 1 > n) bad("need 1 <= k and 2k-1 <= n");
}

double log_int(const Int& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  const unsigned b = boost::multiprecision::msb(v);
  if (b <= 900) return std::log(v.convert_to<double>());
  const Int shifted = v >> (b - 52);
  return std::log(shifted.convert_to<double>()) + (b - 52) * std::log(2.0);
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

Int trial_count_int(int n) {
  return pow_int(Int(2), static_cast<unsigned>(n)) / (Int(n) * n);
}

}  // namespace

RatVec trial_direction(const Trial& t, int n) {
  RatVec y(n, 0);
  for (int i : t.support) y[i] = t.signs[i];
  return y;
}

std::int64_t default_trial_count(int n) {
  if (n < 2 || n > 62) bad("default_trial_count supports 2 <= n <= 62");
  return trial_count_int(n).convert_to<std::int64_t>();
}

Trial sample_trial(int n, int k, SplitMix64& rng) {
  validate_nk(n, k);
  const int m = 2 * k - 1;
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < m; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  Trial t;
  t.support.assign(pool.begin(), pool.begin() + m);
  std::sort(t.support.begin(), t.support.end());
  t.signs.resize(n);
  for (int i = 0; i < n; ++i) t.signs[i] = rng.sign();
  return t;
}

Trial make_trial(int n, int k, std::uint64_t seed, std::uint32_t round, std::uint64_t index) {
  SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(k), round, index));
  return sample_trial(n, k, rng);
}

RandomSetRealization build_rk(int n, int k, std::int64_t count, std::uint64_t seed,
                              std::uint32_t round) {
  validate_nk(n, k);
  RandomSetRealization r;
  r.n = n;
  r.k = k;
  r.seed = seed;
  r.round = round;
  const std::int64_t L = count < 0 ? default_trial_count(n) : count;
  r.trials.reserve(static_cast<std::size_t>(L));
  for (std::int64_t i = 0; i < L; ++i)
    r.trials.push_back(make_trial(n, k, seed, round, static_cast<std::uint64_t>(i)));
  return r;
}

std::string dump_realization(const RandomSetRealization& r) {
  std::ostringstream out;
  out << r.n << ' ' << r.k << ' ' << r.trials.size() << ' ' << r.seed;
  if (r.round != 0) out << ' ' << r.round;
  out << '\n';
  for (const auto& t : r.trials) {
    out << "S:";
    for (std::size_t i = 0; i < t.support.size(); ++i) {
      if (i) out << ',';
      out << t.support[i] + 1;
    }
    out << ";X:";
    for (int s : t.signs) out << (s > 0 ? '+' : '-');
    out << '\n';
  }
  return out.str();
}

RandomSetRealization parse_realization(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) bad("empty realization dump");
  std::istringstream hs(header);
  RandomSetRealization r;
  std::size_t L = 0;
  if (!(hs >> r.n >> r.k >> L >> r.seed)) bad("bad realization header: '" + header + "'");
  std::uint32_t round = 0;
  if (hs >> round) r.round = round;
  validate_nk(r.n, r.k);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("S:", 0) != 0) bad("bad trial line: '" + line + "'");
    const auto semi = line.find(";X:");
    if (semi == std::string::npos) bad("bad trial line: '" + line + "'");
    Trial t;
    std::istringstream ss(line.substr(2, semi - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const int idx = std::stoi(tok);
      if (idx < 1 || idx > r.n) bad("trial support index out of range: " + tok);
      t.support.push_back(idx - 1);
    }
    std::sort(t.support.begin(), t.support.end());
    if (static_cast<int>(t.support.size()) != 2 * r.k - 1)
      bad("trial support size does not match k");
    const std::string xs = line.substr(semi + 3);
    if (static_cast<int>(xs.size()) != r.n) bad("trial sign string has wrong length");
    for (char c : xs) {
      if (c != '+' && c != '-') bad("trial sign string must use + and -");
      t.signs.push_back(c == '+' ? 1 : -1);
    }
    r.trials.push_back(std::move(t));
  }
  if (r.trials.size() != L) bad("realization trial count does not match header");
  return r;
}

std::uint64_t pattern_count(int n, int k) {
  validate_nk(n, k);
  const Int total = binomial(n, k) * pow_int(Int(2), static_cast<unsigned>(k));
  if (total > Int(std::numeric_limits<std::int64_t>::max()))
    bad("pattern space too large");
  return total.convert_to<std::uint64_t>();
}

std::uint64_t pattern_index(int n, int k, const Pattern& p) {
  if (static_cast<int>(p.support.size()) != k) bad("pattern support size mismatch");
  if (!p.support.empty() && (p.support.front() < 0 || p.support.back() >= n))
    bad("pattern support index out of range");
  Int rank = 0;
  for (int i = 0; i < k; ++i) rank += binomial(p.support[i], i + 1);
  std::uint64_t signs = 0;
  for (int i = 0; i < k; ++i)
    if (p.signs[i] < 0) signs |= (std::uint64_t(1) << i);
  return rank.convert_to<std::uint64_t>() * (std::uint64_t(1) << k) + signs;
}

Pattern pattern_from_index(int n, int k, std::uint64_t idx) {
  Pattern p;
  const std::uint64_t signs = idx & ((std::uint64_t(1) << k) - 1);
  Int rank = idx >> k;
  p.support.resize(k);
  for (int i = k; i >= 1; --i) {
    int c = i - 1;
    while (binomial(c + 1, i) <= rank) ++c;
    rank -= binomial(c, i);
    p.support[i - 1] = c;
  }
  if (p.support.back() >= n) bad("pattern index out of range");
  p.signs.resize(k);
  for (int i = 0; i < k; ++i) p.signs[i] = ((signs >> i) & 1u) ? -1 : 1;
  return p;
}

bool trial_covers(const Trial& t, const Pattern& p) {
  std::size_t ti = 0;
  for (std::size_t pi = 0; pi < p.support.size(); ++pi) {
    while (ti < t.support.size() && t.support[ti] < p.support[pi]) ++ti;
    if (ti == t.support.size() || t.support[ti] != p.support[pi]) return false;
    if (t.signs[p.support[pi]] != p.signs[pi]) return false;
  }
  return true;
}

CoverageResult check_ek(const RandomSetRealization& r, std::size_t missing_cap,
                        bool parallel) {
  CoverageResult out;
  out.total_patterns = pattern_count(r.n, r.k);
  if (out.total_patterns > (std::uint64_t(1) << 31)) bad("pattern space exceeds the exhaustive cap");
  const auto bitmap = parallel ? coverage_bitmap_parallel(r.n, r.k, r.trials)
                               : coverage_bitmap_serial(r.n, r.k, r.trials);
  for (std::uint64_t idx = 0; idx < out.total_patterns; ++idx) {
    if ((bitmap[idx >> 6] >> (idx & 63)) & 1u) continue;
    ++out.missing_count;
    if (out.missing.size() < missing_cap) out.missing.push_back(pattern_from_index(r.n, r.k, idx));
  }
  out.covered = out.missing_count == 0;
  return out;
}

Rat trial_success_prob(int n, int k) {
  validate_nk(n, k);
  return Rat(binomial(n - k, k - 1), pow_int(Int(2), static_cast<unsigned>(k)) *
                                         binomial(n, 2 * k - 1));
}

BoundChainRow bound_chain(int n, int k) {
  validate_nk(n, k);
  BoundChainRow row;
  row.n = n;
  row.k = k;
  row.q = trial_success_prob(n, k);
  const Rat two_n2 = Rat(2) * n * n;
  row.stirling = Rat(pow_int(Int(2), static_cast<unsigned>(k))) / two_n2 *
                 pow_rat(Rat(n - k, n), static_cast<unsigned>(n - k)) *
                 pow_rat(Rat(k, n), static_cast<unsigned>(k));
  row.final_bound = pow_rat(Rat(2, 3), static_cast<unsigned>(n)) / two_n2;
  row.holds_exact = row.q >= row.stirling && row.stirling >= row.final_bound;
  const double q = to_double(row.q);
  const double s = to_double(row.stirling);
  const double f = to_double(row.final_bound);
  row.log_q = std::log(q);
  row.log_stirling = std::log(s);
  row.log_final = std::log(f);
  const double slack = 1e-12;
  row.holds_float = q >= s * (1 - slack) && s >= f * (1 - slack);
  return row;
}

ThresholdScan estimate_threshold_n(int n_min, int n_max) {
  if (n_min < 2 || n_max < n_min) bad("estimate_threshold_n: bad range");
  ThresholdScan scan;
  scan.n_min = n_min;
  scan.n_max = n_max;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<bool> n_ok(static_cast<std::size_t>(n_max + 1), true);
  for (int n = n_min; n <= n_max; ++n) {
    const Int L = trial_count_int(n);
    const double log_L = log_int(L);
    for (int k = 1; 2 * k - 1 <= n && k <= (n + 1) / 2; ++k) {
      ThresholdRow row;
      row.n = n;
      row.k = k;
      // log q without materializing the rationals (n can be 10^4 here)
      const double log_q = -k * std::log(2.0) + log_binomial(n - k, k - 1) -
                           log_binomial(n, 2 * k - 1);
      if (L == 0) {
        row.log_lhs = 0.0;  // empty product
      } else if (log_q > -37) {
        const double q = std::exp(log_q);
        const double l1 = std::log1p(-q);
        const double Ld = (log_L < 700) ? L.convert_to<double>() : inf;
        row.log_lhs = Ld * l1;
      } else {
        const double t = log_L + log_q;  // log1p(-q) ~ -q for tiny q
        row.log_lhs = (t > 700) ? -inf : -std::exp(t);
      }
      row.log_rhs = -k * std::log(2.0) - 2.0 * n - log_binomial(n, k);
      row.holds = row.log_lhs <= row.log_rhs;
      if (!row.holds) n_ok[static_cast<std::size_t>(n)] = false;
      scan.rows.push_back(row);
    }
    const Int lhs_union = Int((n + 1) / 2) * L;
    const Int rhs_union = pow_int(Int(2), static_cast<unsigned>(n - 1));
    if (!(lhs_union < rhs_union)) {
      scan.union_fail.push_back(n);
      n_ok[static_cast<std::size_t>(n)] = false;
    }
  }
  scan.minimal_n0 = -1;
  for (int n = n_max; n >= n_min; --n) {
    if (!n_ok[static_cast<std::size_t>(n)]) break;
    scan.minimal_n0 = n;
  }
  return scan;
}

std::vector<std::uint64_t> mc_pattern_hits(int n, int k, std::uint64_t trials,
                                           std::uint64_t seed, bool parallel) {
  return parallel ? mc_hits_parallel(n, k, trials, seed) : mc_hits_serial(n, k, trials, seed);
}

}  // namespace illume
