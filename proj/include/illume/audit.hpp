#pragma once

#include "illume/bodies.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace illume {

struct AuditCheck {
  std::string name;
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  std::string first_violation;  // locator for the first failure, empty when clean
};

struct AuditReport {
  std::string body_label;
  std::vector<AuditCheck> checks;

  bool ok() const;
  std::uint64_t total_samples() const;
  std::uint64_t total_violations() const;
};

// Norm axioms on seeded random vectors: homogeneity, triangle inequality,
// permutation/sign invariance, monotonicity in |x_i|, and gauge(e_1) = 1.
// Exact comparisons for dual_orbit; 1e-12 relative slack for lp.
AuditReport audit_norm_axioms(const SymBody& b, std::uint64_t samples, std::uint64_t seed);

// Subgradient sign and ordering invariants of a piecewise-linear body:
//   witness route: every extreme subgradient v at every vertex x satisfies
//     x_i v_i >= 0 and, whenever |x_i| > |x_j|, |v_i| >= |v_j|;
//   argmax route: for `samples` random rational u, every vertex maximizing
//     <u, .> satisfies the same two conditions with v = u (u is then an
//     outer normal at that vertex).
// Exact arithmetic throughout.
AuditReport audit_subgradient_lemmas(const SymBody& b, std::uint64_t samples,
                                     std::uint64_t seed, int vertex_cap = 8);

// Exhaustive non-illumination bound check: for every vertex x and every
// admissible y ({-1,0,1} entries, y = -sign(x) on supp(x), free on the zero
// block), norm_implication_check must return Illuminated or BoundHolds.
AuditCheck audit_norm_implication(const SymBody& b, int vertex_cap = 8);

// body,check,samples,violations,first_violation rows with a header line.
std::string audit_csv(const std::vector<AuditReport>& reports);

}  // namespace illume
