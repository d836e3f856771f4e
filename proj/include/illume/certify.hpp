#pragma once

#include "illume/bodies.hpp"
#include "illume/directions.hpp"
#include "illume/randomized.hpp"
#include "illume/subdiff.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace illume {

// One checked boundary point. witness is an index into the certificate's
// direction list, or -1 when no direction works; value is the witnessed
// derivative (strictly negative) or the least derivative seen. Exact bodies
// fill x/value, sampled smooth audits fill xd/value_d.
struct PointRecord {
  RatVec x;
  DVec xd;
  int witness = -1;
  Rat value;
  double value_d = 0;
};

// Certified/Uncovered are exhaustive verdicts over enumerated vertices;
// the Sampled pair marks non-exhaustive smooth-body audits.
enum class CertStatus { Certified, Uncovered, SampledOnly, SampledUncovered };

std::string cert_status_name(CertStatus s);
CertStatus cert_status_from_name(const std::string& name);

// Bookkeeping for the randomized far regime.
struct FarInfo {
  bool used = false;
  std::string mode;  // "faithful" | "adaptive" | "adaptive+refine"
  std::uint64_t seed = 0;
  std::uint32_t rounds = 0;
  std::vector<std::pair<int, std::int64_t>> count_per_k;
  std::vector<std::pair<int, bool>> ek_status;  // per-k coverage, when enumerable
  std::size_t pool_size = 0;                    // distinct directions before pruning
};

struct IlluminationCertificate {
  std::string body_digest;
  std::string body_spec;  // canonical body record, re-parseable
  int n = 0;
  std::string strategy;
  std::string direction_label;
  std::vector<RatVec> directions;
  std::size_t distinct_directions = 0;
  bool budget_met = false;  // distinct_directions < 2^n
  bool exhaustive = true;   // enumerated vertices vs sampled points
  double margin = 0;        // smooth-path illumination margin
  CertStatus status = CertStatus::Uncovered;
  std::vector<PointRecord> points;
  FarInfo far;
};

// All vertices of a piecewise-linear body, lexicographically sorted.
// Canonical representatives come from block compositions and active-row
// subsets; orbits are expanded by distinct permutations and sign flips.
// max_vertices guards the orbit expansion.
std::vector<RatVec> enumerate_vertices(const SymBody& b, int cap = 8,
                                       std::size_t max_vertices = 1u << 20);

// Exact certification of a direction list against boundary points (default:
// all vertices). Witness = first direction in list order with a strictly
// negative derivative.
IlluminationCertificate certify_directions(const SymBody& b, const DirectionSet& dirs,
                                           const std::vector<RatVec>* points = nullptr,
                                           bool parallel = true, int vertex_cap = 8);

// Exact rational boundary points of a piecewise-linear body: random rational
// vectors scaled by 1/gauge. Deterministic in the seed.
std::vector<RatVec> sample_boundary_points(const SymBody& b, std::size_t count,
                                           std::uint64_t seed);

// Boundary sample for smooth bodies: one representative per tie pattern
// (k leading ones, k <= n) plus random sign/magnitude points, all normalized.
std::vector<DVec> sample_boundary_points_d(const SymBody& b, std::size_t count,
                                           std::uint64_t seed);

// Non-exhaustive smooth-body audit of a direction list; illumination means
// derivative < -margin at every sampled point.
IlluminationCertificate certify_directions_sampled(const SymBody& b, const DirectionSet& dirs,
                                                   std::size_t samples, std::uint64_t seed,
                                                   double margin = 1e-9, bool parallel = true);

enum class AutoMode { Faithful, Adaptive };

struct AutoOptions {
  int vertex_cap = 8;
  int max_rounds = 12;          // adaptive far-mode resampling rounds
  std::size_t lp_samples = 2048;
  double lp_margin = 1e-9;
  bool parallel = true;
  int refine_dim_cap = 6;                // run the cover refinement for n <= this (0 disables)
  std::size_t refine_node_cap = 300000;  // branch-and-bound node budget during refinement
};

struct AutoResult {
  DirectionSet dirs;
  IlluminationCertificate cert;
};

// End-to-end driver. Cube bodies get the corner set. Near bodies
// (1 < distance < 2) get T2 or T1 per the pair condition, with escalation
// NearT2 -> NearT1 -> Far when certification fails or the direction budget
// (fewer than 2^n distinct) is missed. Far bodies get
// T union the randomized sets over all k. Faithful mode keeps the default
// trial count and reports coverage as it lands; adaptive mode doubles the
// count each round with fresh substreams until certified (then prunes the
// emitted set to the used witnesses) or the round limit is hit. When the
// pruned set still has >= 2^n directions and n <= refine_dim_cap, adaptive
// mode reruns as a cover search over tilted_pool (far.mode becomes
// "adaptive+refine" and far.pool_size the refinement pool size).
AutoResult illuminate_auto(const SymBody& b, std::uint64_t seed, AutoMode mode,
                           const AutoOptions& opt = {});

struct MinIllResult {
  bool feasible = false;
  bool optimal = false;  // false when the node budget cut the search short
  std::size_t size = 0;
  std::vector<int> chosen;  // indices into the pool, ascending
  int uncoverable_vertex = -1;
  std::vector<RatVec> vertices;
  IlluminationCertificate cert;  // over the chosen subset when feasible
};

// Minimum subset of the pool illuminating every vertex, by branch and bound
// over the vertex/direction cover structure. The answer is the exact minimum
// when optimal is set; otherwise it is the best cover found (at worst the
// greedy one) before max_nodes search nodes were spent.
MinIllResult min_illumination_search(const SymBody& b, const DirectionSet& pool,
                                     int vertex_cap = 8,
                                     std::size_t max_pairs = 1000000,
                                     std::size_t max_nodes = 4000000);

// Pool {-1,0,1}^n minus the origin, lexicographic.
DirectionSet grid_pool(int n);

// grid_pool plus rational "tilted" directions: one dominant +-1 coordinate
// with one or two +-1/2 companions, and sign vectors scaled to 3/4 off the
// dominant coordinate (full support and support three). These cover vertex
// configurations that defeat every {-1,0,1} pool at small n.
DirectionSet tilted_pool(int n);

std::string certificate_to_json(const IlluminationCertificate& c);
IlluminationCertificate certificate_from_json(const std::string& text);

// Re-runs only the derivative checks recorded in the certificate: each
// witness must reproduce its exact value (or clear the margin), each
// uncovered point must still have no witness, and the recomputed status,
// digest, and counts must match. No generation is repeated.
bool verify_certificate(const IlluminationCertificate& c, std::string* why = nullptr);

}  // namespace illume
