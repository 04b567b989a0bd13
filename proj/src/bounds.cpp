#include "gramineq/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace gramineq {

namespace {

const std::array<const char*, kNumVariants> kNames = {
    "B1", "B2", "B3", "B4", "B5", "B6", "B7", "B8", "B9",
    "L0", "L1", "L2", "L3",
    "CA", "CB", "CC", "CD", "CE",
    "P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9",
    "PC1", "PC2", "PC3", "PC4",
    "PR0", "PR1", "PR2", "PR3",
    "F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F9",
    "FF1", "FF2", "FF3", "FF4",
    "CLASSIC_M1", "CLASSIC_M2",
    "SELBERG", "HEILBRONN",
};

double sum_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

double max_of(std::span<const double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, x);
  return m;
}

double sum_sq(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x * x;
  return s;
}

std::vector<double> squared(std::span<const double> xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = xs[i] * xs[i];
  return out;
}

const Exponent& need(const std::optional<Exponent>& e, const char* name) {
  if (!e) throw ParamError(std::string("missing exponent parameter ") + name);
  return *e;
}

void check_constrained(const std::optional<Exponent>& e, const char* name) {
  if (!e) return;
  if (!e->is_finite() || e->value() > 2.0) {
    throw ParamError(std::string("exponent ") + name + " must lie in (1, 2], got " +
                     e->str());
  }
}

}  // namespace

const char* variant_name(Variant v) { return kNames[static_cast<int>(v)]; }

std::optional<Variant> variant_from_name(std::string_view name) {
  for (int i = 0; i < kNumVariants; ++i) {
    if (name == kNames[i]) return static_cast<Variant>(i);
  }
  return std::nullopt;
}

VariantFamily family_of(Variant v) {
  const int i = static_cast<int>(v);
  if (i <= static_cast<int>(Variant::CE)) return VariantFamily::Weighted;
  if (i <= static_cast<int>(Variant::PR3)) return VariantFamily::Pecaric;
  if (i <= static_cast<int>(Variant::F9)) return VariantFamily::Bombieri;
  if (i <= static_cast<int>(Variant::CLASSIC_M2)) return VariantFamily::FourierFree;
  if (v == Variant::SELBERG) return VariantFamily::Selberg;
  return VariantFamily::Heilbronn;
}

ParamSpec param_spec(Variant v) {
  switch (v) {
    case Variant::B2:
    case Variant::P2:
    case Variant::F2:
      return {.r = true};
    case Variant::B4:
    case Variant::B6:
    case Variant::L2:
    case Variant::P4:
    case Variant::P6:
    case Variant::PR2:
    case Variant::F4:
    case Variant::F6:
      return {.p = true};
    case Variant::B5:
    case Variant::P5:
    case Variant::F5:
      return {.p = true, .t = true};
    case Variant::B8:
    case Variant::P8:
    case Variant::F8:
      return {.m = true};
    case Variant::CA:
    case Variant::PC1:
    case Variant::FF1:
      return {.p = true, .t = true, .constrained = true};
    case Variant::CC:
    case Variant::PC2:
      return {.p = true, .constrained = true};
    case Variant::CD:
    case Variant::PC3:
    case Variant::FF3:
      return {.m = true, .constrained = true};
    default:
      return {};
  }
}

BoundParams BoundParams::defaults_for(Variant v) {
  const ParamSpec spec = param_spec(v);
  BoundParams out;
  if (spec.p) out.p = Exponent::finite(2.0);
  if (spec.r) out.r = Exponent::finite(2.0);
  if (spec.t) out.t = Exponent::finite(2.0);
  if (spec.m) out.m = Exponent::finite(2.0);
  return out;
}

std::string BoundParams::str() const {
  std::string out;
  auto add = [&out](const char* name, const std::optional<Exponent>& e) {
    if (!e) return;
    if (!out.empty()) out += ',';
    out += name;
    out += '=';
    out += e->str();
  };
  add("p", p);
  add("r", r);
  add("t", t);
  add("m", m);
  return out;
}

void validate_params(Variant v, const BoundParams& params) {
  const ParamSpec spec = param_spec(v);
  auto check = [v](bool used, const std::optional<Exponent>& e, const char* name) {
    if (used && !e) {
      throw ParamError(std::string(variant_name(v)) + " requires exponent " + name);
    }
    if (!used && e) {
      throw ParamError(std::string(variant_name(v)) + " does not take exponent " + name);
    }
  };
  check(spec.p, params.p, "p");
  check(spec.r, params.r, "r");
  check(spec.t, params.t, "t");
  check(spec.m, params.m, "m");
  if (spec.constrained) {
    check_constrained(params.p, "p");
    check_constrained(params.t, "t");
    check_constrained(params.m, "m");
  }
}

double weighted_gram_sum(std::span<const double> moduli, const AbsGram& G) {
  if (moduli.size() != G.n) {
    throw DimensionMismatch("weighted_gram_sum: " + std::to_string(moduli.size()) +
                            " moduli vs gram size " + std::to_string(G.n));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < G.n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < G.n; ++j) row += moduli[j] * G.at(i, j);
    s += moduli[i] * row;
  }
  return s;
}

double chain_M1(std::span<const double> moduli, const AbsGram& G) {
  double s = 0.0;
  for (std::size_t i = 0; i < G.n; ++i) s += moduli[i] * G.row_sum(i);
  return max_of(moduli) * s;
}

double chain_Mp(std::span<const double> moduli, const AbsGram& G, const Exponent& p) {
  const Exponent q = p.conjugate();
  double s = 0.0;
  for (std::size_t i = 0; i < G.n; ++i) s += moduli[i] * G.row_qnorm(i, q);
  return holder_norm(moduli, p) * s;
}

double chain_Minf(std::span<const double> moduli, const AbsGram& G) {
  double s = 0.0;
  for (std::size_t i = 0; i < G.n; ++i) s += moduli[i] * G.row_max(i);
  return sum_of(moduli) * s;
}

BoundValue bound_weighted(Variant v, std::span<const double> moduli, const AbsGram& G,
                          const BoundParams& params) {
  if (family_of(v) != VariantFamily::Weighted) {
    throw ParamError(std::string(variant_name(v)) + " is not a weighted variant");
  }
  validate_params(v, params);
  if (moduli.size() != G.n) {
    throw DimensionMismatch("bound_weighted: " + std::to_string(moduli.size()) +
                            " moduli vs gram size " + std::to_string(G.n));
  }
  const std::size_t n = G.n;
  if (n == 0) return {0.0, v, params, Form::Derived};

  const double sum_a = sum_of(moduli);
  const double max_a = max_of(moduli);
  const double nn = static_cast<double>(n);

  double value = 0.0;
  switch (v) {
    case Variant::B1:
      value = max_a * max_a * G.total_sum();
      break;
    case Variant::B2: {
      const Exponent& r = *params.r;
      value = max_a * holder_norm(moduli, r) * holder_norm(G.row_sums(), r.conjugate());
      break;
    }
    case Variant::B3:
      value = max_a * sum_a * max_of(G.row_sums());
      break;
    case Variant::B4: {
      // proof-chain form: max|a| times the *sum* of row q-norms
      const Exponent& p = *params.p;
      value = holder_norm(moduli, p) * max_a * sum_of(G.row_qnorms(p.conjugate()));
      break;
    }
    case Variant::B5: {
      const Exponent& p = *params.p;
      const Exponent& t = *params.t;
      value = holder_norm(moduli, p) * holder_norm(moduli, t) *
              holder_norm(G.row_qnorms(p.conjugate()), t.conjugate());
      break;
    }
    case Variant::B6: {
      const Exponent& p = *params.p;
      value = holder_norm(moduli, p) * sum_a * max_of(G.row_qnorms(p.conjugate()));
      break;
    }
    case Variant::B7:
      value = sum_a * max_a * sum_of(G.row_maxes());
      break;
    case Variant::B8: {
      const Exponent& m = *params.m;
      value = sum_a * holder_norm(moduli, m) *
              holder_norm(G.row_maxes(), m.conjugate());
      break;
    }
    case Variant::B9:
      value = sum_a * sum_a * G.global_max();
      break;

    case Variant::L0: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += moduli[i] * moduli[i] * G.row_sum(i);
      value = s;
      break;
    }
    case Variant::L1:
      value = sum_sq(moduli) * max_of(G.row_sums());
      break;
    case Variant::L2: {
      // (sum |a|^(2p))^(1/p) (sum_i row_sum^q)^(1/q), outer sum restored
      const Exponent& p = *params.p;
      value = holder_norm(squared(moduli), p) *
              holder_norm(G.row_sums(), p.conjugate());
      break;
    }
    case Variant::L3:
      value = max_a * max_a * G.total_sum();
      break;

    case Variant::CA: {
      const Exponent& p = *params.p;
      const Exponent& t = *params.t;
      value = std::pow(nn, p.inverse() + t.inverse() - 1.0) * sum_sq(moduli) *
              holder_norm(G.row_qnorms(p.conjugate()), t.conjugate());
      break;
    }
    case Variant::CB:
      value = sum_sq(moduli) * std::sqrt(G.sum_squares());
      break;
    case Variant::CC: {
      const Exponent& p = *params.p;
      value = std::pow(nn, p.inverse()) * sum_sq(moduli) *
              max_of(G.row_qnorms(p.conjugate()));
      break;
    }
    case Variant::CD: {
      const Exponent& m = *params.m;
      value = std::pow(nn, m.inverse()) * sum_sq(moduli) *
              holder_norm(G.row_maxes(), m.conjugate());
      break;
    }
    case Variant::CE:
      value = nn * sum_sq(moduli) * G.global_max();
      break;

    default:
      throw ParamError(std::string("unhandled weighted variant ") + variant_name(v));
  }
  return {value, v, params, Form::Derived};
}

namespace {

Variant weighted_counterpart(Variant v) {
  switch (v) {
    case Variant::P1: return Variant::B1;
    case Variant::P2: return Variant::B2;
    case Variant::P3: return Variant::B3;
    case Variant::P4: return Variant::B4;
    case Variant::P5: return Variant::B5;
    case Variant::P6: return Variant::B6;
    case Variant::P7: return Variant::B7;
    case Variant::P8: return Variant::B8;
    case Variant::P9: return Variant::B9;
    case Variant::PC1: return Variant::CA;
    case Variant::PC2: return Variant::CC;
    case Variant::PC3: return Variant::CD;
    case Variant::PC4: return Variant::CE;
    case Variant::PR0: return Variant::L0;
    case Variant::PR1: return Variant::L1;
    case Variant::PR2: return Variant::L2;
    case Variant::PR3: return Variant::L3;
    case Variant::F1: return Variant::B1;
    case Variant::F2: return Variant::B2;
    case Variant::F3: return Variant::B3;
    case Variant::F4: return Variant::B4;
    case Variant::F5: return Variant::B5;
    case Variant::F6: return Variant::B6;
    case Variant::F7: return Variant::B7;
    case Variant::F8: return Variant::B8;
    case Variant::F9: return Variant::B9;
    default:
      throw ParamError(std::string(variant_name(v)) + " has no weighted counterpart");
  }
}

}  // namespace

BoundValue pecaric_bound(Variant v, double x_norm_sq, const Coefficients& c,
                         const AbsGram& G, const BoundParams& params) {
  if (family_of(v) != VariantFamily::Pecaric) {
    throw ParamError(std::string(variant_name(v)) + " is not a Pecaric variant");
  }
  BoundValue inner_bound = bound_weighted(weighted_counterpart(v), c.moduli, G, params);
  return {x_norm_sq * inner_bound.value, v, params, Form::Derived};
}

double bombieri_lhs(const Coefficients& fc) {
  double s = 0.0;
  for (double m : fc.moduli) s += m * m;
  return s;
}

BoundValue bombieri_bound(Variant v, double x_norm, const Coefficients& fc,
                          const AbsGram& G, const BoundParams& params, Form form) {
  if (family_of(v) != VariantFamily::Bombieri) {
    throw ParamError(std::string(variant_name(v)) + " is not a Bombieri variant");
  }
  if (form == Form::AsPrinted) {
    // only F3 and F8 have printed shapes that differ from the derivation
    if (v == Variant::F3) {
      validate_params(v, params);
      if (G.n == 0) return {0.0, v, params, Form::AsPrinted};
      const double value = x_norm *
                           std::sqrt(max_of(fc.moduli) * sum_of(fc.moduli)) *
                           max_of(G.row_sums());
      return {value, v, params, Form::AsPrinted};
    }
    if (v == Variant::F8) {
      validate_params(v, params);
      if (G.n == 0) return {0.0, v, params, Form::AsPrinted};
      const Exponent& m = *params.m;
      const double value = x_norm * std::sqrt(holder_norm(fc.moduli, m) *
                                              holder_norm(G.row_maxes(), m.conjugate()));
      return {value, v, params, Form::AsPrinted};
    }
    // printed and derived coincide; fall through and record the derived form
  }
  BoundValue inner_bound = bound_weighted(weighted_counterpart(v), fc.moduli, G, params);
  return {x_norm * std::sqrt(inner_bound.value), v, params, Form::Derived};
}

BoundValue fourier_free_bound(Variant v, double x_norm_sq, const AbsGram& G,
                              const BoundParams& params) {
  if (family_of(v) != VariantFamily::FourierFree) {
    throw ParamError(std::string(variant_name(v)) + " is not a Fourier-free variant");
  }
  validate_params(v, params);
  const std::size_t n = G.n;
  if (n == 0) return {0.0, v, params, Form::Derived};
  const double nn = static_cast<double>(n);

  double value = 0.0;
  switch (v) {
    case Variant::FF1: {
      const Exponent& p = *params.p;
      const Exponent& t = *params.t;
      value = std::pow(nn, p.inverse() + t.inverse() - 1.0) * x_norm_sq *
              holder_norm(G.row_qnorms(p.conjugate()), t.conjugate());
      break;
    }
    case Variant::FF2:
    case Variant::CLASSIC_M2:
      value = x_norm_sq * std::sqrt(G.sum_squares());
      break;
    case Variant::FF3: {
      const Exponent& m = *params.m;
      value = std::pow(nn, m.inverse()) * x_norm_sq *
              holder_norm(G.row_maxes(), m.conjugate());
      break;
    }
    case Variant::FF4:
      value = nn * x_norm_sq * G.global_max();
      break;
    case Variant::CLASSIC_M1:
      value = x_norm_sq * max_of(G.row_sums());
      break;
    default:
      throw ParamError(std::string("unhandled Fourier-free variant ") + variant_name(v));
  }
  return {value, v, params, Form::Derived};
}

double selberg_lhs(const Coefficients& fc, const AbsGram& G) {
  if (fc.size() != G.n) {
    throw DimensionMismatch("selberg_lhs: coefficient/gram size mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < G.n; ++i) {
    const double rs = G.row_sum(i);
    if (rs <= 0.0) {
      throw ZeroVectorRow("gram row " + std::to_string(i) +
                          " sums to zero (zero vector in the system)");
    }
    s += fc.moduli[i] * fc.moduli[i] / rs;
  }
  return s;
}

std::pair<double, double> heilbronn_pair(const Coefficients& fc, double x_norm,
                                         const AbsGram& G) {
  if (fc.size() != G.n) {
    throw DimensionMismatch("heilbronn_pair: coefficient/gram size mismatch");
  }
  return {sum_of(fc.moduli), x_norm * std::sqrt(G.total_sum())};
}

M1M2 compare_M1_M2(const AbsGram& G) {
  M1M2 out;
  out.m1 = G.n == 0 ? 0.0 : max_of(G.row_sums());
  out.m2 = std::sqrt(G.sum_squares());
  const double tol = 1e-12 * std::max({1.0, out.m1, out.m2});
  if (std::abs(out.m1 - out.m2) <= tol) {
    out.winner = M1M2::Winner::Tie;
  } else {
    out.winner = out.m1 < out.m2 ? M1M2::Winner::M1 : M1M2::Winner::M2;
  }
  return out;
}

const char* winner_name(M1M2::Winner w) {
  switch (w) {
    case M1M2::Winner::M1: return "M1";
    case M1M2::Winner::M2: return "M2";
    case M1M2::Winner::Tie: return "tie";
  }
  return "?";
}

std::vector<Variant> all_variants() {
  std::vector<Variant> out;
  out.reserve(kNumVariants);
  for (int i = 0; i < kNumVariants; ++i) out.push_back(static_cast<Variant>(i));
  return out;
}

}  // namespace gramineq
