#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nframe/dense.hpp"
#include "nframe/nspace.hpp"

namespace nframe {

// Identifiers for the randomized property suites.  AXIOMS covers the
// rank-n inner product laws; the numbered entries each verify one
// structural statement about quotients, frames, tensor products or duals.
enum class TheoremId {
  Axioms,
  T2_4,
  T3_3,
  T3_5,
  T3_9,
  T3_10,
  T3_12,
  T3_13,
  T3_14,
  T4_2,
  T4_3,
  T4_5,
  T4_6,
};

const std::vector<TheoremId>& all_theorems();
std::string theorem_name(TheoremId id);
std::optional<TheoremId> parse_theorem(const std::string& name);

struct SuiteConfig {
  TheoremId theorem = TheoremId::Axioms;
  std::size_t trials = 200;
  std::uint64_t seed = 42;
  std::size_t dim_h = 3;
  std::size_t dim_k = 3;
  std::size_t order_n = 2;
  std::size_t frame_size = 5;
  bool sabotage = false;

  friend bool operator==(const SuiteConfig&, const SuiteConfig&) = default;
};

struct VerificationReport {
  SuiteConfig config;
  std::vector<double> residuals;  // worst numeric deviation per trial
  std::size_t failures = 0;
  double max_residual = 0.0;
  std::string verdict;  // "pass" or "fail"
  double wall_time_seconds = 0.0;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

// Raw ingredients for one trial, fully determined by (config, trial).
// Frames and operators are populated only where the suite needs them;
// degraded instances carry deliberately rank-deficient ingredients so the
// detection paths get exercised.
struct Instance {
  std::optional<AmbientSpace> space_h;
  std::optional<AmbientSpace> space_k;
  std::vector<Vector> fixing_h;
  std::vector<Vector> fixing_k;
  std::vector<Vector> frame_h;
  std::vector<Vector> frame_k;
  Matrix op_left;
  Matrix op_right;
  bool degraded = false;
  int degraded_site = 0;  // 1 = left ingredient, 2 = right ingredient
};

Instance gen_instance(const SuiteConfig& config, std::size_t trial);

VerificationReport run_suite(const SuiteConfig& config);

}  // namespace nframe
