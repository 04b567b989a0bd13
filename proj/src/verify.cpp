#include "gramineq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>

namespace gramineq {

double oracle_norm_sq(const Coefficients& alpha, const VectorSystem& Z) {
  if (alpha.size() != Z.size()) {
    throw DimensionMismatch("oracle_norm_sq: " + std::to_string(alpha.size()) +
                            " coefficients vs " + std::to_string(Z.size()) + " vectors");
  }
  Vec w(Z.dim, Scalar{0.0, 0.0});
  for (std::size_t i = 0; i < Z.size(); ++i) {
    for (std::size_t k = 0; k < Z.dim; ++k) w[k] += alpha.values[i] * Z.vectors[i][k];
  }
  return inner(w, w).real();
}

namespace {

Scalar draw_scalar(std::mt19937_64& rng, Field field, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  const double re = dist(rng);
  const double im = field == Field::Complex ? dist(rng) : 0.0;
  return {re, im};
}

Vec draw_vec(std::mt19937_64& rng, Field field, std::size_t d, double scale) {
  Vec v(d);
  for (std::size_t k = 0; k < d; ++k) v[k] = draw_scalar(rng, field, scale);
  return v;
}

}  // namespace

Instance random_instance(const InstanceConfig& config) {
  std::mt19937_64 rng(config.seed);
  std::size_t n = 0;
  if (config.n_max > 0) {
    n = std::uniform_int_distribution<std::size_t>(0, config.n_max)(rng);
  }
  const std::size_t d_max = std::max<std::size_t>(1, config.d_max);
  const std::size_t d = std::uniform_int_distribution<std::size_t>(1, d_max)(rng);
  if (config.conditioning == Conditioning::NearOrthonormal) n = std::min(n, d);

  const double scale = config.entry_scale;
  Vec x = draw_vec(rng, config.field, d, scale);

  std::vector<Vec> vectors;
  vectors.reserve(n);
  switch (config.conditioning) {
    case Conditioning::Generic:
      for (std::size_t i = 0; i < n; ++i) {
        vectors.push_back(draw_vec(rng, config.field, d, scale));
      }
      break;
    case Conditioning::NearOrthonormal: {
      // perturbation of norm <= 0.1 * entry_scale around the canonical basis
      const double parts = config.field == Field::Complex ? 2.0 : 1.0;
      const double half_width = 0.1 * scale / std::sqrt(parts * static_cast<double>(d));
      for (std::size_t i = 0; i < n; ++i) {
        Vec v = draw_vec(rng, config.field, d, half_width);
        v[i] += Scalar{1.0, 0.0};
        vectors.push_back(std::move(v));
      }
      break;
    }
    case Conditioning::Collinear: {
      Vec dir = draw_vec(rng, config.field, d, scale);
      const double dn = norm(dir);
      if (dn == 0.0) {
        dir.assign(d, Scalar{0.0, 0.0});
        dir[0] = Scalar{1.0, 0.0};
      } else {
        for (Scalar& s : dir) s /= dn;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const Scalar lambda = draw_scalar(rng, config.field, scale);
        Vec v(d);
        for (std::size_t k = 0; k < d; ++k) v[k] = lambda * dir[k];
        vectors.push_back(std::move(v));
      }
      break;
    }
  }

  std::vector<Scalar> alpha(n);
  for (std::size_t i = 0; i < n; ++i) alpha[i] = draw_scalar(rng, config.field, scale);

  return Instance{std::move(x),
                  VectorSystem::make(config.field, d, std::move(vectors)),
                  Coefficients::from_values(std::move(alpha))};
}

namespace {

void fnv_mix(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
}

void fnv_scalar(std::uint64_t& h, const Scalar& s) {
  const double parts[2] = {s.real(), s.imag()};
  fnv_mix(h, parts, sizeof(parts));
}

}  // namespace

std::string instance_digest(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const std::uint64_t header[3] = {inst.Y.field == Field::Complex ? 1ULL : 0ULL,
                                   inst.Y.size(), inst.Y.dim};
  fnv_mix(h, header, sizeof(header));
  for (const Scalar& s : inst.x) fnv_scalar(h, s);
  for (const Vec& v : inst.Y.vectors) {
    for (const Scalar& s : v) fnv_scalar(h, s);
  }
  for (const Scalar& s : inst.alpha.values) fnv_scalar(h, s);

  char buf[64];
  const char field_tag = inst.Y.field == Field::Complex ? 'c' : 'r';
  std::snprintf(buf, sizeof(buf), "%c-n%zu-d%zu-%016llx", field_tag, inst.Y.size(),
                inst.Y.dim, static_cast<unsigned long long>(h));
  return buf;
}

InstanceContext InstanceContext::make(Instance inst) {
  InstanceContext ctx;
  ctx.G = gram_abs(inst.Y);
  ctx.fc = fourier_coeffs(inst.x, inst.Y);
  ctx.x_norm_sq = norm_sq(inst.x);
  ctx.x_norm = std::sqrt(ctx.x_norm_sq);
  ctx.inst = std::move(inst);
  return ctx;
}

namespace {

VerificationResult make_result(Variant v, const BoundParams& params, Form form,
                               std::string label, double lhs, double bound, double tol) {
  VerificationResult r;
  r.variant = v;
  r.params = params;
  r.form = form;
  r.label = std::move(label);
  r.lhs = lhs;
  r.bound = bound;
  r.slack = bound - lhs;
  const double denom = std::max(1.0, std::abs(lhs));
  r.rel_slack = r.slack / denom;
  r.pass = r.slack >= -tol * denom;
  return r;
}

}  // namespace

VerificationResult check_bound(const InstanceContext& ctx, Variant v,
                               const BoundParams& params, Form form, double tol) {
  double lhs = 0.0;
  BoundValue bv;
  switch (family_of(v)) {
    case VariantFamily::Weighted:
      lhs = oracle_norm_sq(ctx.inst.alpha, ctx.inst.Y);
      bv = bound_weighted(v, ctx.inst.alpha.moduli, ctx.G, params);
      break;
    case VariantFamily::Pecaric: {
      Scalar s{0.0, 0.0};
      for (std::size_t i = 0; i < ctx.inst.Y.size(); ++i) {
        s += ctx.inst.alpha.values[i] * ctx.fc.values[i];
      }
      lhs = std::norm(s);
      bv = pecaric_bound(v, ctx.x_norm_sq, ctx.inst.alpha, ctx.G, params);
      break;
    }
    case VariantFamily::Bombieri:
      lhs = bombieri_lhs(ctx.fc);
      bv = bombieri_bound(v, ctx.x_norm, ctx.fc, ctx.G, params, form);
      break;
    case VariantFamily::FourierFree:
      lhs = bombieri_lhs(ctx.fc);
      bv = fourier_free_bound(v, ctx.x_norm_sq, ctx.G, params);
      break;
    case VariantFamily::Selberg:
      lhs = selberg_lhs(ctx.fc, ctx.G);
      bv = {ctx.x_norm_sq, v, params, Form::Derived};
      break;
    case VariantFamily::Heilbronn: {
      auto [h_lhs, h_rhs] = heilbronn_pair(ctx.fc, ctx.x_norm, ctx.G);
      lhs = h_lhs;
      bv = {h_rhs, v, params, Form::Derived};
      break;
    }
  }
  return make_result(v, params, bv.form, "", lhs, bv.value, tol);
}

VerificationResult check_bound(const Instance& inst, Variant v,
                               const BoundParams& params, Form form, double tol) {
  return check_bound(InstanceContext::make(inst), v, params, form, tol);
}

namespace {

BoundParams subset_for(Variant v, const BoundParams& full) {
  const ParamSpec spec = param_spec(v);
  BoundParams out;
  if (spec.p) out.p = full.p;
  if (spec.r) out.r = full.r;
  if (spec.t) out.t = full.t;
  if (spec.m) out.m = full.m;
  return out;
}

}  // namespace

std::vector<VerificationResult> check_chain(const InstanceContext& ctx,
                                            const BoundParams& params, double tol) {
  BoundParams full = params;
  if (!full.p) full.p = Exponent::finite(2.0);
  if (!full.r) full.r = Exponent::finite(2.0);
  if (!full.t) full.t = Exponent::finite(2.0);
  if (!full.m) full.m = Exponent::finite(2.0);

  const std::vector<double>& a = ctx.inst.alpha.moduli;
  const double lhs = oracle_norm_sq(ctx.inst.alpha, ctx.inst.Y);
  const double M = weighted_gram_sum(a, ctx.G);
  const double M1 = chain_M1(a, ctx.G);
  const double Mp = chain_Mp(a, ctx.G, *full.p);
  const double Minf = chain_Minf(a, ctx.G);

  auto branch = [&](Variant v) {
    return bound_weighted(v, a, ctx.G, subset_for(v, full)).value;
  };

  std::vector<VerificationResult> out;
  auto link = [&](Variant v, std::string label, double lo, double hi) {
    out.push_back(make_result(v, subset_for(v, full), Form::Derived, std::move(label),
                              lo, hi, tol));
  };

  link(Variant::B1, "LHS<=M", lhs, M);
  link(Variant::B1, "M<=M1", M, M1);
  link(Variant::B1, "M1<=B1", M1, branch(Variant::B1));
  link(Variant::B2, "M1<=B2", M1, branch(Variant::B2));
  link(Variant::B3, "M1<=B3", M1, branch(Variant::B3));
  link(Variant::B4, "M<=Mp", M, Mp);
  link(Variant::B4, "Mp<=B4", Mp, branch(Variant::B4));
  link(Variant::B5, "Mp<=B5", Mp, branch(Variant::B5));
  link(Variant::B6, "Mp<=B6", Mp, branch(Variant::B6));
  link(Variant::B7, "M<=Minf", M, Minf);
  link(Variant::B7, "Minf<=B7", Minf, branch(Variant::B7));
  link(Variant::B8, "Minf<=B8", Minf, branch(Variant::B8));
  link(Variant::B9, "Minf<=B9", Minf, branch(Variant::B9));

  const double L0 = branch(Variant::L0);
  link(Variant::L0, "LHS<=L0", lhs, L0);
  link(Variant::L1, "L0<=L1", L0, branch(Variant::L1));
  link(Variant::L2, "L0<=L2", L0, branch(Variant::L2));
  link(Variant::L3, "L0<=L3", L0, branch(Variant::L3));
  return out;
}

std::vector<VerificationResult> check_chain(const Instance& inst,
                                            const BoundParams& params, double tol) {
  return check_chain(InstanceContext::make(inst), params, tol);
}

namespace {

Exponent random_constrained(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  return Exponent::finite(std::pow(2.0, u(rng)));
}

Exponent random_unconstrained(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> roll(0.0, 1.0);
  const double k = roll(rng);
  if (k < 0.15) return Exponent::one();
  if (k < 0.30) return Exponent::infinity();
  std::uniform_real_distribution<double> u(0.05, 1.0);
  return Exponent::finite(std::pow(64.0, u(rng)));
}

BoundParams random_params_for(Variant v, std::mt19937_64& rng) {
  const ParamSpec spec = param_spec(v);
  auto draw = [&]() {
    return spec.constrained ? random_constrained(rng) : random_unconstrained(rng);
  };
  BoundParams out;
  if (spec.p) out.p = draw();
  if (spec.r) out.r = draw();
  if (spec.t) out.t = draw();
  if (spec.m) out.m = draw();
  return out;
}

bool has_free_exponents(Variant v) {
  const ParamSpec s = param_spec(v);
  return s.p || s.r || s.t || s.m;
}

struct TrialOutcome {
  std::uint64_t seed = 0;
  std::string digest;
  std::vector<VerificationResult> results;
};

}  // namespace

FuzzReport fuzz(const InstanceConfig& config, const std::vector<FuzzTarget>& targets,
                std::size_t trials, const FuzzOptions& options) {
  const std::size_t n_fixtures = options.fixtures.size();
  const std::size_t total = n_fixtures + trials;
  std::vector<TrialOutcome> outcomes(total);

  const bool chains = options.check_chains &&
                      std::any_of(targets.begin(), targets.end(), [](const FuzzTarget& t) {
                        return family_of(t.variant) == VariantFamily::Weighted;
                      });

#pragma omp parallel for schedule(dynamic, 16) if (options.parallel)
  for (long long li = 0; li < static_cast<long long>(total); ++li) {
    const auto idx = static_cast<std::size_t>(li);
    TrialOutcome& out = outcomes[idx];
    try {
      Instance inst;
      if (idx < n_fixtures) {
        inst = options.fixtures[idx];
        out.seed = config.seed;
      } else {
        InstanceConfig cfg = config;
        cfg.seed = config.seed + (idx - n_fixtures);  // wraps on overflow
        inst = random_instance(cfg);
        out.seed = cfg.seed;
      }
      out.digest = instance_digest(inst);
      const InstanceContext ctx = InstanceContext::make(std::move(inst));
      std::mt19937_64 exp_rng((config.seed + idx) * 0x9E3779B97F4A7C15ULL + 0x5851F42DULL);

      for (const FuzzTarget& target : targets) {
        out.results.push_back(check_bound(ctx, target.variant,
                                          BoundParams::defaults_for(target.variant),
                                          target.form, options.tol));
        if (options.randomize_exponents && has_free_exponents(target.variant)) {
          out.results.push_back(check_bound(ctx, target.variant,
                                            random_params_for(target.variant, exp_rng),
                                            target.form, options.tol));
        }
      }
      if (chains) {
        auto run_chain = [&](const BoundParams& prm) {
          auto links = check_chain(ctx, prm, options.tol);
          out.results.insert(out.results.end(), links.begin(), links.end());
        };
        run_chain(BoundParams{});
        if (options.randomize_exponents) {
          BoundParams prm;
          prm.p = random_unconstrained(exp_rng);
          prm.r = random_unconstrained(exp_rng);
          prm.t = random_unconstrained(exp_rng);
          prm.m = random_unconstrained(exp_rng);
          run_chain(prm);
        }
      }
    } catch (const Error& e) {
      VerificationResult r;
      r.label = std::string("error: ") + e.what();
      r.pass = false;
      out.results.push_back(r);
    }
  }

  FuzzReport report;
  report.trials = total;
  std::map<Variant, std::size_t> near_counts;
  for (const TrialOutcome& out : outcomes) {
    for (const VerificationResult& r : out.results) {
      if (r.label.starts_with("error")) {
        report.failures.push_back({out.seed, out.digest, r});
        continue;
      }
      auto [it, inserted] =
          report.min_rel_slack.try_emplace(r.variant, std::numeric_limits<double>::infinity());
      it->second = std::min(it->second, r.rel_slack);
      if (!r.pass) report.failures.push_back({out.seed, out.digest, r});
      if (r.pass && r.rel_slack < 1e-6 && r.label.empty()) {
        if (near_counts[r.variant]++ < 64) {
          report.near_equalities.push_back({out.digest, r.variant, r.rel_slack});
        }
      }
    }
  }
  return report;
}

}  // namespace gramineq
