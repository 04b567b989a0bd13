#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gramineq/bounds.hpp"
#include "gramineq/space.hpp"

namespace gramineq {

enum class Conditioning { Generic, NearOrthonormal, Collinear };

struct InstanceConfig {
  Field field = Field::Real;
  std::size_t n_max = 8;
  std::size_t d_max = 8;
  double entry_scale = 1.0;
  Conditioning conditioning = Conditioning::Generic;
  std::uint64_t seed = 0;
};

struct Instance {
  Vec x;
  VectorSystem Y;
  Coefficients alpha;
};

/// ||sum alpha_i z_i||^2 by literal coordinate-wise vector arithmetic; the
/// independent path against the Gram quadratic form.
double oracle_norm_sq(const Coefficients& alpha, const VectorSystem& Z);

/// Deterministic function of (config, config.seed).
Instance random_instance(const InstanceConfig& config);

/// field tag, n, d and a content hash of all scalars; enough to replay.
std::string instance_digest(const Instance& inst);

/// Precomputed per-instance quantities shared by every check.
struct InstanceContext {
  Instance inst;
  AbsGram G;
  Coefficients fc;
  double x_norm = 0.0;
  double x_norm_sq = 0.0;

  static InstanceContext make(Instance inst);
};

struct VerificationResult {
  Variant variant = Variant::B1;
  BoundParams params;
  Form form = Form::Derived;
  std::string label;  // nonempty for chain links, e.g. "M<=Mp"
  double lhs = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  double rel_slack = 0.0;
  bool pass = false;
};

VerificationResult check_bound(const InstanceContext& ctx, Variant v,
                               const BoundParams& params, Form form, double tol);
VerificationResult check_bound(const Instance& inst, Variant v,
                               const BoundParams& params, Form form, double tol);

/// Every adjacent inequality of the two proof chains:
/// LHS <= M <= {M1,Mp,Minf} <= the matching three final branches, and
/// LHS <= L0 <= {L1,L2,L3}.
std::vector<VerificationResult> check_chain(const InstanceContext& ctx,
                                            const BoundParams& params, double tol);
std::vector<VerificationResult> check_chain(const Instance& inst,
                                            const BoundParams& params, double tol);

struct FuzzTarget {
  Variant variant;
  Form form = Form::Derived;
};

struct FuzzFailure {
  std::uint64_t seed = 0;
  std::string digest;
  VerificationResult result;
};

struct NearEquality {
  std::string digest;
  Variant variant;
  double rel_slack = 0.0;
};

struct FuzzReport {
  std::size_t trials = 0;
  std::vector<FuzzFailure> failures;
  std::map<Variant, double> min_rel_slack;
  std::vector<NearEquality> near_equalities;  // rel_slack < 1e-6
};

struct FuzzOptions {
  double tol = 1e-9;
  bool randomize_exponents = true;
  bool check_chains = true;  // effective only when a weighted variant is present
  bool parallel = true;
  std::vector<Instance> fixtures;  // evaluated before the random trials
};

/// Per-trial seeds are config.seed + i; the report is a deterministic merge
/// keyed on trial index, independent of thread count.
FuzzReport fuzz(const InstanceConfig& config, const std::vector<FuzzTarget>& targets,
                std::size_t trials, const FuzzOptions& options = {});

}  // namespace gramineq
