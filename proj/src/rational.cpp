#include "illume/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace illume {

namespace {

bool valid_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat parse_rat(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_integer_token(s)) throw std::invalid_argument("bad rational: '" + s + "'");
    return Rat(Int(s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!valid_integer_token(num) || !valid_integer_token(den))
    throw std::invalid_argument("bad rational: '" + s + "'");
  Int d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  return Rat(Int(num), d);
}

std::string format_rat(const Rat& r) {
  const Int num = numerator(r);
  const Int den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

int sign_of(const Rat& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

double to_double(const Rat& r) { return r.convert_to<double>(); }

Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int out = 1;
  for (unsigned i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

Int pow_int(const Int& base, unsigned e) {
  Int out = 1, b = base;
  while (e) {
    if (e & 1u) out *= b;
    b *= b;
    e >>= 1u;
  }
  return out;
}

Rat pow_rat(const Rat& base, unsigned e) {
  return Rat(pow_int(numerator(base), e), pow_int(denominator(base), e));
}

RatVec parse_rat_vec(const std::string& line) {
  RatVec out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(parse_rat(tok));
  return out;
}

std::string format_rat_vec(const RatVec& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_rat(v[i]);
  }
  return out;
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

RatVec abs_sorted_desc(const RatVec& x) {
  RatVec out;
  out.reserve(x.size());
  for (const auto& xi : x) out.push_back(abs_rat(xi));
  std::sort(out.begin(), out.end(), [](const Rat& a, const Rat& b) { return a > b; });
  return out;
}

Rat linf_norm(const RatVec& x) {
  Rat out = 0;
  for (const auto& xi : x) {
    Rat a = abs_rat(xi);
    if (a > out) out = a;
  }
  return out;
}

bool is_zero_vec(const RatVec& x) {
  for (const auto& xi : x)
    if (xi != 0) return false;
  return true;
}

bool lex_less(const RatVec& a, const RatVec& b) {
  const std::size_t m = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

DVec to_dvec(const RatVec& x) {
  DVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = to_double(x[i]);
  return out;
}

}  // namespace illume
