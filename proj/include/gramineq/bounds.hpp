#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gramineq/exponents.hpp"
#include "gramineq/space.hpp"

namespace gramineq {

/// One tag per upper-bound formula in the catalog.
enum class Variant {
  B1, B2, B3, B4, B5, B6, B7, B8, B9,       // nine-branch weighted bound
  L0, L1, L2, L3,                           // row-weighted chain + branches
  CA, CB, CC, CD, CE,                       // sum-|alpha|^2 corollaries
  P1, P2, P3, P4, P5, P6, P7, P8, P9,       // ||x||^2 x weighted branches
  PC1, PC2, PC3, PC4,                       // ||x||^2 x corollaries
  PR0, PR1, PR2, PR3,                       // ||x||^2 x row-weighted chain
  F1, F2, F3, F4, F5, F6, F7, F8, F9,       // Bombieri-type, Fourier coeffs on the right
  FF1, FF2, FF3, FF4,                       // Fourier-free bounds
  CLASSIC_M1, CLASSIC_M2,                   // max-row-sum vs Frobenius constants
  SELBERG, HEILBRONN,
};

constexpr int kNumVariants = static_cast<int>(Variant::HEILBRONN) + 1;

enum class Form { Derived, AsPrinted };

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);

enum class VariantFamily {
  Weighted,     // B*, L*, C*: bounds on ||sum alpha_i z_i||^2
  Pecaric,      // P*, PC*, PR*: bounds on |sum c_i (x,y_i)|^2
  Bombieri,     // F*: bounds on sum |(x,y_i)|^2 with Fourier coeffs on the right
  FourierFree,  // FF*, CLASSIC_*: bounds on sum |(x,y_i)|^2 from G alone
  Selberg,
  Heilbronn,
};

VariantFamily family_of(Variant v);

/// Which exponent parameters a variant consumes, and whether they are
/// restricted to (1, 2].
struct ParamSpec {
  bool p = false, r = false, t = false, m = false;
  bool constrained = false;
};

ParamSpec param_spec(Variant v);

struct BoundParams {
  std::optional<Exponent> p, r, t, m;

  /// Every used exponent set to 2.
  static BoundParams defaults_for(Variant v);

  std::string str() const;  // "p=2,t=2"
};

/// Throws ParamError if a used parameter is missing, an unused one is
/// supplied, or a constrained exponent falls outside (1, 2].
void validate_params(Variant v, const BoundParams& params);

struct BoundValue {
  double value = 0.0;
  Variant variant;
  BoundParams params;
  Form form = Form::Derived;
};

/// M = sum_{i,j} |alpha_i||alpha_j| G_ij.
double weighted_gram_sum(std::span<const double> moduli, const AbsGram& G);

/// Chain intermediates of the nine-branch proof.
double chain_M1(std::span<const double> moduli, const AbsGram& G);
double chain_Mp(std::span<const double> moduli, const AbsGram& G, const Exponent& p);
double chain_Minf(std::span<const double> moduli, const AbsGram& G);

/// B1..B9, L0..L3, CA..CE: upper bounds for ||sum alpha_i z_i||^2.
BoundValue bound_weighted(Variant v, std::span<const double> moduli, const AbsGram& G,
                          const BoundParams& params);

/// P/PC/PR variants: x_norm_sq x the matching weighted bound at |c_i|;
/// upper bounds for |sum c_i (x, y_i)|^2.
BoundValue pecaric_bound(Variant v, double x_norm_sq, const Coefficients& c,
                         const AbsGram& G, const BoundParams& params);

/// sum_i |(x, y_i)|^2.
double bombieri_lhs(const Coefficients& fc);

/// F1..F9. Derived form is x_norm * sqrt(bound_weighted(Bk, |fc|, G));
/// as-printed forms exist only for F3 and F8, whose printed shapes differ
/// from the derivation. Elsewhere AsPrinted falls back to Derived (the
/// returned form records what was evaluated).
BoundValue bombieri_bound(Variant v, double x_norm, const Coefficients& fc,
                          const AbsGram& G, const BoundParams& params, Form form);

/// FF1..FF4, CLASSIC_M1, CLASSIC_M2: bounds for sum |(x,y_i)|^2 that do not
/// involve the Fourier coefficients.
BoundValue fourier_free_bound(Variant v, double x_norm_sq, const AbsGram& G,
                              const BoundParams& params);

/// sum_i |(x,y_i)|^2 / row_sum(i); throws ZeroVectorRow on a zero row.
double selberg_lhs(const Coefficients& fc, const AbsGram& G);

/// (sum_i |(x,y_i)|, x_norm * sqrt(total_sum)).
std::pair<double, double> heilbronn_pair(const Coefficients& fc, double x_norm,
                                         const AbsGram& G);

struct M1M2 {
  enum class Winner { M1, M2, Tie };
  double m1 = 0.0;
  double m2 = 0.0;
  Winner winner = Winner::Tie;
};

/// Max absolute row sum vs Frobenius norm of G; the smaller is the sharper
/// bound constant.
M1M2 compare_M1_M2(const AbsGram& G);

const char* winner_name(M1M2::Winner w);

/// All derived-form variants, catalog order.
std::vector<Variant> all_variants();

}  // namespace gramineq
