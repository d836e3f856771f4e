#include "illume/bodies.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace illume {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

void validate_dim(int n) {
  if (n < 2) bad("body dimension must be an integer >= 2");
}

Rat json_rat(const json& v, const char* what) {
  if (v.is_string()) return parse_rat(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long long>());
  bad(std::string(what) + " must be an integer or a \"p/q\" string");
}

std::string hex_digest(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += digits[md[i] >> 4];
    out += digits[md[i] & 0xF];
  }
  return out;
}

struct Shorthand {
  std::string name;
  std::string arg;  // empty when absent
  int n = 0;
};

Shorthand parse_shorthand(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon + 1 == text.size())
    bad("shorthand must look like name:N or name(arg):N, got '" + text + "'");
  Shorthand sh;
  try {
    sh.n = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    bad("bad dimension in shorthand '" + text + "'");
  }
  std::string head = text.substr(0, colon);
  const auto open = head.find('(');
  if (open != std::string::npos) {
    if (head.back() != ')') bad("unbalanced parentheses in shorthand '" + text + "'");
    sh.arg = head.substr(open + 1, head.size() - open - 2);
    head = head.substr(0, open);
  }
  sh.name = head;
  return sh;
}

SymBody from_shorthand(const Shorthand& sh) {
  if (sh.name == "cube") return make_cube(sh.n);
  if (sh.name == "ell1") return make_ell1(sh.n);
  if (sh.name == "topk") {
    if (sh.arg.empty()) bad("topk needs an argument, e.g. topk(2):5");
    return make_topk(sh.n, std::stoi(sh.arg));
  }
  if (sh.name == "cube_cap_l1") {
    if (sh.arg.empty()) bad("cube_cap_l1 needs a radius, e.g. cube_cap_l1(2):3");
    return make_cube_cap_l1(sh.n, parse_rat(sh.arg));
  }
  if (sh.name == "lp") {
    if (sh.arg.empty()) bad("lp needs an exponent, e.g. lp(3/2):4");
    if (sh.arg == "inf") return make_lp_inf(sh.n);
    return make_lp(sh.n, parse_rat(sh.arg));
  }
  bad("unknown body family '" + sh.name + "'");
}

void check_keys(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) ok = true;
    if (!ok) bad("unexpected key '" + item.key() + "' in body record");
  }
}

SymBody from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("body record is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("body record must be a JSON object");
  if (!j.contains("family") || !j["family"].is_string()) bad("body record needs a \"family\" string");
  if (!j.contains("n") || !j["n"].is_number_integer()) bad("body record needs an integer \"n\"");
  const std::string family = j["family"].get<std::string>();
  const int n = j["n"].get<int>();

  if (family == "dual_orbit") {
    check_keys(j, {"family", "n", "weights"});
    if (!j.contains("weights") || !j["weights"].is_array() || j["weights"].empty())
      bad("dual_orbit needs a nonempty \"weights\" array");
    std::vector<RatVec> rows;
    for (const auto& jrow : j["weights"]) {
      if (!jrow.is_array()) bad("each weight row must be an array");
      RatVec row;
      for (const auto& v : jrow) row.push_back(json_rat(v, "weight entry"));
      rows.push_back(std::move(row));
    }
    return make_dual_orbit(n, std::move(rows));
  }
  if (family == "cube") {
    check_keys(j, {"family", "n"});
    return make_cube(n);
  }
  if (family == "ell1") {
    check_keys(j, {"family", "n"});
    return make_ell1(n);
  }
  if (family == "topk") {
    check_keys(j, {"family", "n", "k"});
    if (!j.contains("k") || !j["k"].is_number_integer()) bad("topk needs an integer \"k\"");
    return make_topk(n, j["k"].get<int>());
  }
  if (family == "cube_cap_l1") {
    check_keys(j, {"family", "n", "r"});
    if (!j.contains("r")) bad("cube_cap_l1 needs a radius \"r\"");
    return make_cube_cap_l1(n, json_rat(j["r"], "radius r"));
  }
  if (family == "lp") {
    check_keys(j, {"family", "n", "p"});
    if (!j.contains("p")) bad("lp needs an exponent \"p\"");
    if (j["p"].is_string() && j["p"].get<std::string>() == "inf") return make_lp_inf(n);
    return make_lp(n, json_rat(j["p"], "exponent p"));
  }
  bad("unknown body family '" + family + "'");
}

}  // namespace

bool operator==(const SymBody& a, const SymBody& b) {
  return a.n == b.n && a.family == b.family && a.weights == b.weights && a.p == b.p;
}

SymBody make_dual_orbit(int n, std::vector<RatVec> rows) {
  validate_dim(n);
  if (rows.empty()) bad("dual_orbit needs at least one weight row");
  Rat scale = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      bad("weight row length " + std::to_string(row.size()) + " does not match n=" +
          std::to_string(n));
    bool all_zero = true;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] < 0) bad("weight rows must be nonnegative");
      if (row[i] != 0) all_zero = false;
      if (i + 1 < row.size() && row[i] < row[i + 1])
        bad("weight row is not sorted nonincreasing: [" + format_rat_vec(row, ',') + "]");
    }
    if (all_zero) bad("weight rows must not be all zero");
    if (row[0] > scale) scale = row[0];
  }
  if (scale != 1)
    for (auto& row : rows)
      for (auto& w : row) w /= scale;
  SymBody b;
  b.n = n;
  b.family = Family::DualOrbit;
  b.weights = std::move(rows);
  return b;
}

SymBody make_cube(int n) {
  validate_dim(n);
  RatVec row(n, 0);
  row[0] = 1;
  SymBody b = make_dual_orbit(n, {row});
  b.label = "cube:" + std::to_string(n);
  return b;
}

SymBody make_ell1(int n) {
  validate_dim(n);
  SymBody b = make_dual_orbit(n, {RatVec(n, 1)});
  b.label = "ell1:" + std::to_string(n);
  return b;
}

SymBody make_topk(int n, int k) {
  validate_dim(n);
  if (k < 1 || k > n) bad("topk needs 1 <= k <= n");
  RatVec row(n, 0);
  for (int i = 0; i < k; ++i) row[i] = 1;
  SymBody b = make_dual_orbit(n, {row});
  b.label = "topk(" + std::to_string(k) + "):" + std::to_string(n);
  return b;
}

SymBody make_cube_cap_l1(int n, const Rat& r) {
  validate_dim(n);
  if (r <= 0) bad("cube_cap_l1 radius must be positive");
  RatVec cube_row(n, 0);
  cube_row[0] = 1;
  RatVec cap_row(n, Rat(1) / r);
  SymBody b = make_dual_orbit(n, {cube_row, cap_row});
  b.label = "cube_cap_l1(" + format_rat(r) + "):" + std::to_string(n);
  return b;
}

SymBody make_lp(int n, const Rat& p) {
  validate_dim(n);
  if (p < 1) bad("lp exponent must satisfy p >= 1");
  if (p == 1) {
    SymBody b = make_ell1(n);
    b.label = "lp(1):" + std::to_string(n);
    return b;
  }
  SymBody b;
  b.n = n;
  b.family = Family::Lp;
  b.p = p;
  b.label = "lp(" + format_rat(p) + "):" + std::to_string(n);
  return b;
}

SymBody make_lp_inf(int n) {
  SymBody b = make_cube(n);
  b.label = "lp(inf):" + std::to_string(n);
  return b;
}

SymBody parse_body(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) bad("empty body record");
  const auto last = text.find_last_not_of(" \t\r\n");
  const std::string trimmed = text.substr(first, last - first + 1);
  if (trimmed[0] == '{') return from_json(trimmed);
  return from_shorthand(parse_shorthand(trimmed));
}

std::string serialize_body(const SymBody& b) {
  json j;
  j["n"] = b.n;
  if (b.is_pl()) {
    j["family"] = "dual_orbit";
    json rows = json::array();
    for (const auto& row : b.weights) {
      json jrow = json::array();
      for (const auto& w : row) jrow.push_back(format_rat(w));
      rows.push_back(std::move(jrow));
    }
    j["weights"] = std::move(rows);
  } else {
    j["family"] = "lp";
    j["p"] = format_rat(b.p);
  }
  return j.dump();
}

std::string body_digest(const SymBody& b) { return hex_digest(serialize_body(b)); }

Rat gauge(const SymBody& b, const RatVec& x) {
  if (!b.is_pl()) bad("exact gauge is only defined for dual_orbit bodies");
  if (static_cast<int>(x.size()) != b.n) bad("gauge: vector length does not match body dimension");
  const RatVec xs = abs_sorted_desc(x);
  Rat best = 0;
  for (const auto& row : b.weights) {
    Rat v = dot(row, xs);
    if (v > best) best = v;
  }
  return best;
}

double gauge_d(const SymBody& b, const DVec& x) {
  if (static_cast<int>(x.size()) != b.n) bad("gauge: vector length does not match body dimension");
  if (b.is_pl()) {
    DVec xs(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xs[i] = std::fabs(x[i]);
    std::sort(xs.begin(), xs.end(), std::greater<double>());
    double best = 0;
    for (const auto& row : b.weights) {
      double v = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) v += to_double(row[i]) * xs[i];
      best = std::max(best, v);
    }
    return best;
  }
  const double pd = to_double(b.p);
  double s = 0;
  for (double xi : x) s += std::pow(std::fabs(xi), pd);
  return std::pow(s, 1.0 / pd);
}

Rat distance_to_cube(const SymBody& b) {
  if (!b.is_pl()) bad("exact distance is only defined for dual_orbit bodies");
  return gauge(b, RatVec(b.n, 1));
}

double distance_to_cube_d(const SymBody& b) {
  if (b.is_pl()) return to_double(distance_to_cube(b));
  return std::pow(static_cast<double>(b.n), 1.0 / to_double(b.p));
}

bool is_cube(const SymBody& b) {
  if (!b.is_pl()) return false;  // finite p > 1 gives n^(1/p) > 1
  return distance_to_cube(b) == 1;
}

}  // namespace illume
