#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "gramineq/bounds.hpp"
#include "gramineq/verify.hpp"

using namespace gramineq;

namespace {

Scalar re(double v) { return {v, 0.0}; }

// fixture A: H = R^1, x = 1, y1 = 2, y2 = 1
Instance fixture_a() {
  Instance inst;
  inst.x = {re(1)};
  inst.Y = VectorSystem::make(Field::Real, 1, {{re(2)}, {re(1)}});
  inst.alpha = fourier_coeffs(inst.x, inst.Y);
  return inst;
}

Instance random_inst(std::mt19937_64& rng, std::size_t n_max, std::size_t d_max,
                     Field field) {
  InstanceConfig cfg;
  cfg.field = field;
  cfg.n_max = n_max;
  cfg.d_max = d_max;
  cfg.seed = rng();
  return random_instance(cfg);
}

}  // namespace

TEST_CASE("weighted_gram_sum") {
  CHECK(weighted_gram_sum(std::vector<double>{1, 1}, AbsGram{2, {1, 1, 1, 2}}) == 5);
  CHECK(weighted_gram_sum(std::vector<double>{1, 1}, AbsGram{2, {4, 2, 2, 1}}) == 9);
  CHECK(weighted_gram_sum(std::vector<double>{2, 3}, AbsGram{2, {0, 0, 0, 0}}) == 0);
  CHECK_THROWS_AS(weighted_gram_sum(std::vector<double>{1}, AbsGram{2, {1, 0, 0, 1}}),
                  DimensionMismatch);
}

TEST_CASE("bound_weighted fixtures") {
  const AbsGram G{2, {1, 1, 1, 2}};
  const std::vector<double> ones{1, 1};

  CHECK(bound_weighted(Variant::B1, ones, G, {}).value == 5);
  CHECK(bound_weighted(Variant::B9, ones, G, {}).value == 8);

  // the B1 bound dominates the true squared norm of z1 - z2
  Instance inst;
  inst.x = {re(1), re(0)};
  inst.Y = VectorSystem::make(Field::Real, 2, {{re(1), re(0)}, {re(1), re(1)}});
  inst.alpha = Coefficients::from_values({re(1), re(-1)});
  CHECK(oracle_norm_sq(inst.alpha, inst.Y) == 1);

  // orthonormal equality case for the row-weighted chain head
  const AbsGram I = gram_abs(canonical_orthonormal(3, 3, Field::Real));
  CHECK(bound_weighted(Variant::L0, ones, AbsGram{2, {1, 0, 0, 1}}, {}).value == 2);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> a{u(rng) + 2, u(rng) + 2, u(rng) + 2};
  double sum_sq = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
  CHECK(bound_weighted(Variant::L0, a, I, {}).value == doctest::Approx(sum_sq));

  CHECK(bound_weighted(Variant::CB, ones, AbsGram{2, {4, 2, 2, 1}}, {}).value ==
        doctest::Approx(10.0));

  // empty system: every bound is 0
  CHECK(bound_weighted(Variant::B5, std::vector<double>{}, AbsGram{0, {}},
                       BoundParams::defaults_for(Variant::B5))
            .value == 0.0);
}

TEST_CASE("pecaric fixtures") {
  const Instance fa = fixture_a();
  const InstanceContext ctx = InstanceContext::make(fa);

  const auto pr0 = check_bound(ctx, Variant::PR0, {}, Form::Derived, 1e-9);
  CHECK(pr0.lhs == 25);
  CHECK(pr0.bound == 27);
  CHECK(pr0.pass);

  CHECK(pecaric_bound(Variant::PR1, 1.0, fa.alpha, ctx.G, {}).value == 30);
  CHECK(pecaric_bound(Variant::PC4, 1.0, fa.alpha, ctx.G, {}).value == 40);
}

TEST_CASE("bombieri_lhs") {
  const Instance fa = fixture_a();
  CHECK(bombieri_lhs(fourier_coeffs(fa.x, fa.Y)) == 5);

  const VectorSystem e4 = canonical_orthonormal(4, 4, Field::Real);
  const Vec x(4, re(1));
  CHECK(bombieri_lhs(fourier_coeffs(x, e4)) == 4);
  CHECK(bombieri_lhs(Coefficients::from_values({})) == 0);
}

TEST_CASE("bombieri bounds on fixture A") {
  const Instance fa = fixture_a();
  const AbsGram G = gram_abs(fa.Y);
  const Coefficients fc = fourier_coeffs(fa.x, fa.Y);

  CHECK(bombieri_bound(Variant::F1, 1.0, fc, G, {}, Form::Derived).value ==
        doctest::Approx(6.0));
  CHECK(bombieri_bound(Variant::F9, 1.0, fc, G, {}, Form::Derived).value ==
        doctest::Approx(6.0));
  CHECK(bombieri_bound(Variant::F3, 1.0, fc, G, {}, Form::Derived).value ==
        doctest::Approx(6.0));

  // printed F3 lacks the square root on the max-row-sum bracket
  const auto printed = bombieri_bound(Variant::F3, 1.0, fc, G, {}, Form::AsPrinted);
  CHECK(printed.form == Form::AsPrinted);
  CHECK(printed.value == doctest::Approx(std::sqrt(6.0) * 6.0));  // ~14.697

  // where printed and derived coincide, AsPrinted falls back to Derived
  const auto f1 = bombieri_bound(Variant::F1, 1.0, fc, G, {}, Form::AsPrinted);
  CHECK(f1.form == Form::Derived);
  CHECK(f1.value == doctest::Approx(6.0));

  // printed F8 drops one Fourier-sum factor relative to the derivation
  const BoundParams m2 = BoundParams::defaults_for(Variant::F8);
  const auto f8d = bombieri_bound(Variant::F8, 1.0, fc, G, m2, Form::Derived);
  const auto f8p = bombieri_bound(Variant::F8, 1.0, fc, G, m2, Form::AsPrinted);
  CHECK(f8p.form == Form::AsPrinted);
  CHECK(f8d.value == doctest::Approx(std::sqrt(3.0) * f8p.value));
}

TEST_CASE("fourier-free bounds") {
  const Instance fa = fixture_a();
  const AbsGram G = gram_abs(fa.Y);

  CHECK(fourier_free_bound(Variant::CLASSIC_M1, 1.0, G, {}).value == 6);
  CHECK(fourier_free_bound(Variant::CLASSIC_M2, 1.0, G, {}).value == 5);
  CHECK(fourier_free_bound(Variant::FF4, 1.0, G, {}).value == 8);

  // orthonormal: CLASSIC_M1 collapses to ||x||^2, CLASSIC_M2 to sqrt(n)||x||^2
  const AbsGram I = gram_abs(canonical_orthonormal(4, 4, Field::Real));
  CHECK(fourier_free_bound(Variant::CLASSIC_M1, 3.0, I, {}).value == 3.0);
  CHECK(fourier_free_bound(Variant::CLASSIC_M2, 3.0, I, {}).value ==
        doctest::Approx(6.0));
}

TEST_CASE("FF1 at p=q=t=u=2 equals FF2") {
  std::mt19937_64 rng(21);
  const BoundParams p22 = BoundParams::defaults_for(Variant::FF1);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_inst(rng, 8, 8, trial % 2 ? Field::Complex : Field::Real);
    const AbsGram G = gram_abs(inst.Y);
    const double ff1 = fourier_free_bound(Variant::FF1, 1.0, G, p22).value;
    const double ff2 = fourier_free_bound(Variant::FF2, 1.0, G, {}).value;
    CHECK(ff1 == doctest::Approx(ff2).epsilon(1e-12));
  }
}

TEST_CASE("selberg") {
  const Instance fa = fixture_a();
  const AbsGram G = gram_abs(fa.Y);
  const Coefficients fc = fourier_coeffs(fa.x, fa.Y);
  CHECK(selberg_lhs(fc, G) == doctest::Approx(1.0));  // equality: x in the span

  // orthonormal system: reduces to the Bessel left side
  const VectorSystem e3 = canonical_orthonormal(3, 3, Field::Real);
  const Vec x = {re(0.3), re(-0.7), re(0.2)};
  const Coefficients f3 = fourier_coeffs(x, e3);
  CHECK(selberg_lhs(f3, gram_abs(e3)) == doctest::Approx(bombieri_lhs(f3)));

  const VectorSystem with_zero =
      VectorSystem::make(Field::Real, 2, {{re(1), re(0)}, {re(0), re(0)}});
  CHECK_THROWS_AS(selberg_lhs(fourier_coeffs({re(1), re(1)}, with_zero),
                              gram_abs(with_zero)),
                  ZeroVectorRow);
}

TEST_CASE("heilbronn") {
  const Instance fa = fixture_a();
  const auto [lhs, rhs] = heilbronn_pair(fourier_coeffs(fa.x, fa.Y), 1.0, gram_abs(fa.Y));
  CHECK(lhs == 3.0);
  CHECK(rhs == 3.0);

  const VectorSystem e4 = canonical_orthonormal(4, 4, Field::Real);
  const Vec x(4, re(1));
  const auto [l2, r2] = heilbronn_pair(fourier_coeffs(x, e4), norm(x), gram_abs(e4));
  CHECK(l2 == 4.0);
  CHECK(r2 == 4.0);

  // x orthogonal to every y_i
  const VectorSystem e1 = canonical_orthonormal(1, 2, Field::Real);
  const auto [l3, r3] =
      heilbronn_pair(fourier_coeffs({re(0), re(1)}, e1), 1.0, gram_abs(e1));
  CHECK(l3 == 0.0);
  CHECK(r3 >= 0.0);
}

TEST_CASE("compare_M1_M2") {
  const auto a = compare_M1_M2(AbsGram{2, {4, 2, 2, 1}});
  CHECK(a.m1 == 6);
  CHECK(a.m2 == 5);
  CHECK(a.winner == M1M2::Winner::M2);

  const auto b = compare_M1_M2(gram_abs(canonical_orthonormal(4, 4, Field::Real)));
  CHECK(b.m1 == 1);
  CHECK(b.m2 == 2);
  CHECK(b.winner == M1M2::Winner::M1);

  const auto c = compare_M1_M2(AbsGram{2, {0, 0, 0, 0}});
  CHECK(c.m1 == 0);
  CHECK(c.m2 == 0);
  CHECK(c.winner == M1M2::Winner::Tie);
}

TEST_CASE("parameter validation") {
  const AbsGram G{2, {1, 0, 0, 1}};
  const std::vector<double> ones{1, 1};

  // unused parameter rejected
  BoundParams stray;
  stray.p = Exponent::finite(2.0);
  CHECK_THROWS_AS(bound_weighted(Variant::B1, ones, G, stray), ParamError);

  // missing parameter rejected
  CHECK_THROWS_AS(bound_weighted(Variant::B5, ones, G, {}), ParamError);

  // constrained corollaries enforce (1, 2]
  BoundParams big = BoundParams::defaults_for(Variant::CA);
  big.p = Exponent::finite(3.0);
  CHECK_THROWS_AS(bound_weighted(Variant::CA, ones, G, big), ParamError);
  BoundParams inf_p = BoundParams::defaults_for(Variant::CC);
  inf_p.p = Exponent::infinity();
  CHECK_THROWS_AS(bound_weighted(Variant::CC, ones, G, inf_p), ParamError);
  // unconstrained variants accept the trichotomy endpoints
  BoundParams pone = BoundParams::defaults_for(Variant::B4);
  pone.p = Exponent::one();
  CHECK_NOTHROW(bound_weighted(Variant::B4, ones, G, pone));
  pone.p = Exponent::infinity();
  CHECK_NOTHROW(bound_weighted(Variant::B4, ones, G, pone));
}

TEST_CASE("exponent-limit routing reproduces the sum/max branches") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = random_inst(rng, 6, 6, Field::Real);
    if (inst.Y.size() == 0) continue;
    const AbsGram G = gram_abs(inst.Y);
    const auto& a = inst.alpha.moduli;

    // L2 at p=1 is L1; the p->infinity limit is L3
    BoundParams p1;
    p1.p = Exponent::one();
    CHECK(bound_weighted(Variant::L2, a, G, p1).value ==
          doctest::Approx(bound_weighted(Variant::L1, a, G, {}).value));
    BoundParams pinf;
    pinf.p = Exponent::infinity();
    CHECK(bound_weighted(Variant::L2, a, G, pinf).value ==
          doctest::Approx(bound_weighted(Variant::L3, a, G, {}).value));

    // B5 limits: p=t=infinity gives the all-sum branch, p=t=1 the all-max one
    BoundParams b5;
    b5.p = Exponent::infinity();
    b5.t = Exponent::infinity();
    CHECK(bound_weighted(Variant::B5, a, G, b5).value ==
          doctest::Approx(bound_weighted(Variant::B1, a, G, {}).value));
    b5.p = Exponent::one();
    b5.t = Exponent::one();
    CHECK(bound_weighted(Variant::B5, a, G, b5).value ==
          doctest::Approx(bound_weighted(Variant::B9, a, G, {}).value));
  }
}

TEST_CASE("upper-bound property across the whole catalog") {
  std::mt19937_64 rng(101);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Field field = trial % 2 ? Field::Complex : Field::Real;
    const Instance inst = random_inst(rng, 10, 12, field);
    const InstanceContext ctx = InstanceContext::make(inst);
    for (Variant v : all_variants()) {
      if (v == Variant::SELBERG && inst.Y.size() == 0) continue;
      const auto r =
          check_bound(ctx, v, BoundParams::defaults_for(v), Form::Derived, 1e-9);
      CHECK_MESSAGE(r.pass, variant_name(v), " lhs=", r.lhs, " bound=", r.bound);
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("chain monotonicity on random instances") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const Field field = trial % 2 ? Field::Complex : Field::Real;
    const Instance inst = random_inst(rng, 10, 12, field);
    BoundParams prm;
    if (trial % 3 == 1) {
      prm.p = Exponent::finite(1.5);
      prm.r = Exponent::finite(3.0);
      prm.t = Exponent::finite(4.0);
      prm.m = Exponent::finite(1.25);
    } else if (trial % 3 == 2) {
      prm.p = Exponent::one();
      prm.r = Exponent::infinity();
      prm.t = Exponent::finite(8.0);
      prm.m = Exponent::one();
    }
    for (const auto& link : check_chain(inst, prm, 1e-9)) {
      CHECK_MESSAGE(link.pass, link.label, " lhs=", link.lhs, " bound=", link.bound);
    }
  }
}

TEST_CASE("chain fixture: alpha=[1,-1], Z={[1,0],[1,1]}") {
  Instance inst;
  inst.x = {re(1), re(0)};
  inst.Y = VectorSystem::make(Field::Real, 2, {{re(1), re(0)}, {re(1), re(1)}});
  inst.alpha = Coefficients::from_values({re(1), re(-1)});
  const auto links = check_chain(inst, {}, 1e-9);
  // LHS 1 <= M 5 <= M1 5 <= B1 5, equalities in the tail
  CHECK(links[0].lhs == 1);
  CHECK(links[0].bound == 5);
  CHECK(links[1].lhs == 5);
  CHECK(links[1].bound == 5);
  CHECK(links[2].bound == 5);
  for (const auto& link : links) CHECK(link.pass);

  // zero alpha: everything 0, everything passes
  inst.alpha = Coefficients::from_values({re(0), re(0)});
  for (const auto& link : check_chain(inst, {}, 1e-9)) {
    CHECK(link.lhs == 0);
    CHECK(link.bound == 0);
    CHECK(link.pass);
  }
}

TEST_CASE("orthonormal collapse of the Bombieri family") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 4;
    const VectorSystem en = canonical_orthonormal(n, n, Field::Real);
    Vec x(n);
    for (auto& s : x) s = re(u(rng));
    const Coefficients fc = fourier_coeffs(x, en);
    const AbsGram I = gram_abs(en);
    const double xn = norm(x);

    double max_fc = 0, sum_fc = 0;
    for (double m : fc.moduli) {
      max_fc = std::max(max_fc, m);
      sum_fc += m;
    }
    // F1 -> sqrt(n) ||x|| max|(x,e_i)|
    CHECK(bombieri_bound(Variant::F1, xn, fc, I, {}, Form::Derived).value ==
          doctest::Approx(std::sqrt(double(n)) * xn * max_fc).epsilon(1e-12));
    // F9 -> ||x|| sum|(x,e_i)|
    CHECK(bombieri_bound(Variant::F9, xn, fc, I, {}, Form::Derived).value ==
          doctest::Approx(xn * sum_fc).epsilon(1e-12));
  }
}

TEST_CASE("scale equivariance") {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 60; ++trial) {
    const Field field = trial % 2 ? Field::Complex : Field::Real;
    Instance inst = random_inst(rng, 6, 6, field);
    if (inst.Y.size() == 0) continue;
    const InstanceContext ctx = InstanceContext::make(inst);
    const double lambda = u(rng);

    Instance scaled = inst;
    for (auto& s : scaled.x) s *= lambda;
    const InstanceContext sctx = InstanceContext::make(scaled);

    const double l2 = lambda * lambda;
    CHECK(bombieri_lhs(sctx.fc) == doctest::Approx(l2 * bombieri_lhs(ctx.fc)).epsilon(1e-12));
    bool has_zero_row = false;
    for (std::size_t i = 0; i < ctx.G.n; ++i) has_zero_row |= ctx.G.row_sum(i) == 0.0;
    if (!has_zero_row) {
      CHECK(selberg_lhs(sctx.fc, sctx.G) ==
            doctest::Approx(l2 * selberg_lhs(ctx.fc, ctx.G)).epsilon(1e-12));
    }
    for (Variant v : {Variant::P1, Variant::PR0, Variant::PC4, Variant::F1, Variant::F5,
                      Variant::F9, Variant::FF1, Variant::FF2, Variant::FF4,
                      Variant::CLASSIC_M1, Variant::CLASSIC_M2}) {
      const BoundParams prm = BoundParams::defaults_for(v);
      const auto r0 = check_bound(ctx, v, prm, Form::Derived, 1e-9);
      const auto r1 = check_bound(sctx, v, prm, Form::Derived, 1e-9);
      CHECK_MESSAGE(r1.bound == doctest::Approx(l2 * r0.bound).epsilon(1e-12),
                    variant_name(v));
    }

    // scaling every y_i by mu multiplies the Bombieri LHS and the CLASSIC
    // bounds by mu^2
    const double mu = u(rng);
    Instance yscaled = inst;
    for (auto& vrow : yscaled.Y.vectors) {
      for (auto& s : vrow) s *= mu;
    }
    const InstanceContext yctx = InstanceContext::make(yscaled);
    const double m2 = mu * mu;
    CHECK(bombieri_lhs(yctx.fc) == doctest::Approx(m2 * bombieri_lhs(ctx.fc)).epsilon(1e-12));
    for (Variant v : {Variant::CLASSIC_M1, Variant::CLASSIC_M2}) {
      const auto r0 = check_bound(ctx, v, {}, Form::Derived, 1e-9);
      const auto r1 = check_bound(yctx, v, {}, Form::Derived, 1e-9);
      CHECK(r1.bound == doctest::Approx(m2 * r0.bound).epsilon(1e-12));
    }
  }
}

TEST_CASE("phase invariance of bounds and Fourier-side left sides") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> angle(0.0, 6.28318);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = random_inst(rng, 6, 6, Field::Complex);
    if (inst.Y.size() == 0) continue;
    const InstanceContext ctx = InstanceContext::make(inst);

    Instance rotated = inst;
    const double phi = angle(rng);
    const Scalar s{std::cos(phi), std::sin(phi)};
    for (auto& c : rotated.Y.vectors[trial % inst.Y.size()]) c *= s;
    const InstanceContext rctx = InstanceContext::make(rotated);

    for (Variant v : all_variants()) {
      const BoundParams prm = BoundParams::defaults_for(v);
      const auto r0 = check_bound(ctx, v, prm, Form::Derived, 1e-9);
      const auto r1 = check_bound(rctx, v, prm, Form::Derived, 1e-9);
      CHECK_MESSAGE(r1.bound == doctest::Approx(r0.bound).epsilon(1e-12), variant_name(v));
      const VariantFamily fam = family_of(v);
      if (fam == VariantFamily::Bombieri || fam == VariantFamily::FourierFree ||
          fam == VariantFamily::Selberg || fam == VariantFamily::Heilbronn) {
        CHECK_MESSAGE(r1.lhs == doctest::Approx(r0.lhs).epsilon(1e-12), variant_name(v));
      }
    }
  }
}

TEST_CASE("equality certification on fixture A") {
  const InstanceContext ctx = InstanceContext::make(fixture_a());
  for (Variant v : {Variant::SELBERG, Variant::HEILBRONN, Variant::CLASSIC_M2}) {
    const auto r = check_bound(ctx, v, {}, Form::Derived, 1e-9);
    CHECK(r.pass);
    CHECK(std::abs(r.rel_slack) < 1e-9);
  }
}

TEST_CASE("variant names round-trip") {
  for (Variant v : all_variants()) {
    CHECK(variant_from_name(variant_name(v)) == v);
  }
  CHECK(!variant_from_name("NOPE").has_value());
  CHECK(BoundParams::defaults_for(Variant::B5).str() == "p=2,t=2");
}
