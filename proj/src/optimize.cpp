#include "gramineq/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gramineq {

const char* family_name(BoundFamily f) {
  switch (f) {
    case BoundFamily::B: return "B";
    case BoundFamily::P: return "P";
    case BoundFamily::F: return "F";
    case BoundFamily::FF: return "FF";
  }
  return "?";
}

namespace {

std::vector<Variant> family_variants(BoundFamily f) {
  switch (f) {
    case BoundFamily::B:
      return {Variant::B1, Variant::B2, Variant::B3, Variant::B4, Variant::B5,
              Variant::B6, Variant::B7, Variant::B8, Variant::B9};
    case BoundFamily::P:
      return {Variant::P1, Variant::P2, Variant::P3, Variant::P4, Variant::P5,
              Variant::P6, Variant::P7, Variant::P8, Variant::P9};
    case BoundFamily::F:
      return {Variant::F1, Variant::F2, Variant::F3, Variant::F4, Variant::F5,
              Variant::F6, Variant::F7, Variant::F8, Variant::F9};
    case BoundFamily::FF:
      return {Variant::FF1, Variant::FF2, Variant::FF3, Variant::FF4};
  }
  return {};
}

enum class Coord { P, R, T, M };

std::vector<Coord> coords_of(Variant v) {
  const ParamSpec spec = param_spec(v);
  std::vector<Coord> out;
  if (spec.p) out.push_back(Coord::P);
  if (spec.r) out.push_back(Coord::R);
  if (spec.t) out.push_back(Coord::T);
  if (spec.m) out.push_back(Coord::M);
  return out;
}

std::optional<Exponent>& coord_ref(BoundParams& prm, Coord c) {
  switch (c) {
    case Coord::P: return prm.p;
    case Coord::R: return prm.r;
    case Coord::T: return prm.t;
    case Coord::M: return prm.m;
  }
  return prm.p;
}

// grid per coordinate: log-spaced over (1, hi], 2 always present, plus the
// {1, infinity} endpoints when the exponent is unconstrained
std::vector<Exponent> coord_grid(bool constrained, std::size_t steps) {
  const double hi = constrained ? 2.0 : 64.0;
  std::vector<Exponent> out;
  if (!constrained) {
    out.push_back(Exponent::one());
    out.push_back(Exponent::infinity());
  }
  for (std::size_t j = 1; j <= steps; ++j) {
    out.push_back(Exponent::finite(
        std::pow(hi, static_cast<double>(j) / static_cast<double>(steps))));
  }
  out.push_back(Exponent::finite(2.0));
  return out;
}

double tie_key(const std::optional<Exponent>& e) {
  if (!e) return 0.0;
  double v;
  switch (e->kind()) {
    case Exponent::Kind::One: v = 1.0; break;
    case Exponent::Kind::Infinity: v = 64.0; break;
    default: v = e->value(); break;
  }
  return std::abs(v - 2.0);
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  Variant variant = Variant::B1;
  BoundParams params;
};

// ties break toward p=2, then t=2, then catalog order
bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value < b.value;
  const double ap = tie_key(a.params.p), bp = tie_key(b.params.p);
  if (ap != bp) return ap < bp;
  const double at = tie_key(a.params.t), bt = tie_key(b.params.t);
  if (at != bt) return at < bt;
  return static_cast<int>(a.variant) < static_cast<int>(b.variant);
}

struct Objective {
  const InstanceContext& ctx;
  BoundFamily family;
  std::size_t evaluations = 0;

  double operator()(Variant v, const BoundParams& prm) {
    ++evaluations;
    switch (family) {
      case BoundFamily::B:
        return bound_weighted(v, ctx.inst.alpha.moduli, ctx.G, prm).value;
      case BoundFamily::P:
        return pecaric_bound(v, ctx.x_norm_sq, ctx.inst.alpha, ctx.G, prm).value;
      case BoundFamily::F:
        return bombieri_bound(v, ctx.x_norm, ctx.fc, ctx.G, prm, Form::Derived).value;
      case BoundFamily::FF:
        return fourier_free_bound(v, ctx.x_norm_sq, ctx.G, prm).value;
    }
    return 0.0;
  }
};

constexpr double kGolden = 0.6180339887498949;

}  // namespace

OptimizeResult optimize_exponents(const InstanceContext& ctx, BoundFamily family,
                                  std::size_t grid_steps, std::size_t refine_iters) {
  if (grid_steps < 2) throw ParamError("grid_steps must be >= 2");
  Objective objective{ctx, family};
  Candidate best;
  bool have_best = false;

  for (Variant v : family_variants(family)) {
    const ParamSpec spec = param_spec(v);
    const std::vector<Coord> coords = coords_of(v);

    if (coords.empty()) {
      Candidate c{objective(v, BoundParams{}), v, BoundParams{}};
      if (!have_best || better(c, best)) { best = c; have_best = true; }
      continue;
    }

    const std::vector<Exponent> grid = coord_grid(spec.constrained, grid_steps);

    // Cartesian grid over the (at most two) free exponents
    std::vector<std::size_t> pick(coords.size(), 0);
    while (true) {
      BoundParams prm;
      for (std::size_t c = 0; c < coords.size(); ++c) {
        coord_ref(prm, coords[c]) = grid[pick[c]];
      }
      Candidate cand{objective(v, prm), v, prm};
      if (!have_best || better(cand, best)) { best = cand; have_best = true; }

      std::size_t c = 0;
      for (; c < coords.size(); ++c) {
        if (++pick[c] < grid.size()) break;
        pick[c] = 0;
      }
      if (c == coords.size()) break;
    }

  }

  // golden-section refinement around the winning cell, one coordinate at a time
  if (have_best && refine_iters > 0) {
    const Variant v = best.variant;
    const ParamSpec spec = param_spec(v);
    const std::vector<Exponent> grid = coord_grid(spec.constrained, grid_steps);
    const double range_hi = spec.constrained ? 2.0 : 64.0;
    for (Coord c : coords_of(v)) {
      std::optional<Exponent>& slot = coord_ref(best.params, c);
      if (!slot || !slot->is_finite()) continue;
      const double center = slot->value();
      // bracket by the neighboring finite grid values
      double lo = 1.0 + 1e-9, hi = range_hi;
      for (const Exponent& g : grid) {
        if (!g.is_finite()) continue;
        if (g.value() < center) lo = std::max(lo, g.value());
        if (g.value() > center) hi = std::min(hi, g.value());
      }
      auto eval_at = [&](double x) {
        BoundParams prm = best.params;
        coord_ref(prm, c) = Exponent::finite(x);
        return objective(v, prm);
      };
      double a = lo, b = hi;
      double x1 = b - kGolden * (b - a);
      double x2 = a + kGolden * (b - a);
      double f1 = eval_at(x1);
      double f2 = eval_at(x2);
      for (std::size_t it = 0; it < refine_iters; ++it) {
        if (f1 <= f2) {
          b = x2; x2 = x1; f2 = f1;
          x1 = b - kGolden * (b - a);
          f1 = eval_at(x1);
        } else {
          a = x1; x1 = x2; f1 = f2;
          x2 = a + kGolden * (b - a);
          f2 = eval_at(x2);
        }
      }
      const double xbest = f1 <= f2 ? x1 : x2;
      const double fbest = std::min(f1, f2);
      if (fbest < best.value) {
        coord_ref(best.params, c) = Exponent::finite(xbest);
        best.value = objective(v, best.params);
      }
    }
  }

  OptimizeResult result;
  result.best_variant = best.variant;
  result.best_params = best.params;
  result.best_value = have_best ? best.value : 0.0;
  result.family = family;
  result.evaluations = objective.evaluations;
  return result;
}

OptimizeResult optimize_exponents(const Instance& inst, BoundFamily family,
                                  std::size_t grid_steps, std::size_t refine_iters) {
  return optimize_exponents(InstanceContext::make(inst), family, grid_steps, refine_iters);
}

}  // namespace gramineq
