#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "psr/catalog.hpp"
#include "psr/evolution.hpp"
#include "psr/examples.hpp"
#include "psr/hyperbolicity.hpp"

using namespace psr;

namespace {
const double kS3 = std::sqrt(3.0);

StandardFormPoly random_closed(int n, std::mt19937_64& rng, double level) {
  CubicForm p3 = testing::random_cubic(n, rng);
  p3 *= level / sphere_max(p3).max_value;
  return StandardFormPoly(n, p3);
}
}  // namespace

TEST_CASE("ray cubic") {
  SUBCASE("flat case") {
    const RayCubic r(0.0);
    CHECK(r.horizon() == doctest::Approx(1.0));
    CHECK(r.negative_horizon() == doctest::Approx(-1.0));
  }

  SUBCASE("boundary coefficients") {
    CHECK(RayCubic(-kP3Bound).horizon() == doctest::Approx(kS3 / 2.0).epsilon(1e-12));
    CHECK(RayCubic(kP3Bound).horizon() == doctest::Approx(kS3).epsilon(1e-12));
    CHECK(RayCubic(kP3Bound).negative_horizon() == doctest::Approx(-kS3 / 2.0).epsilon(1e-12));
  }

  SUBCASE("sqrt2 horizon pair") {
    CHECK(RayCubic(1.0 / (2.0 * std::sqrt(2.0))).horizon() ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(RayCubic::coefficient_for_horizon(std::sqrt(2.0)) ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-14));
  }

  SUBCASE("zero structure") {
    // strictly inside the bound: three simple zeros
    const auto rs = RayCubic(0.2).roots();
    REQUIRE(rs.size() == 3);
    for (std::size_t i = 0; i + 1 < rs.size(); ++i) CHECK(rs[i] < rs[i + 1] - 1e-6);
    for (double r : rs) CHECK(std::abs(RayCubic(0.2)(r)) < 1e-12);
    // at the bound: one simple and one double zero
    const auto rb = RayCubic(kP3Bound).roots();
    REQUIRE(rb.size() == 3);
    CHECK(std::abs(rb[1] - rb[2]) < 1e-6);
    CHECK(rb[0] < 0.0);
  }

  SUBCASE("horizon-coefficient round trip") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(kS3 / 2.0, kS3);
    for (int i = 0; i < 40; ++i) {
      const double R = U(rng);
      const double a = RayCubic::coefficient_for_horizon(R);
      CHECK(RayCubic(a).horizon() == doctest::Approx(R).epsilon(1e-10));
    }
    CHECK(RayCubic(0.17).horizon() >= kS3 / 2.0 - 1e-12);
    CHECK(RayCubic(0.17).horizon() <= kS3 + 1e-12);
  }

  SUBCASE("out of range") { CHECK_THROWS_AS(RayCubic(0.4), NoClosedHorizon); }
}

TEST_CASE("reorient") {
  SUBCASE("identity on the last axis") {
    const StandardFormPoly sf = examples::motivating();
    Vector v(2);
    v << 0.0, 1.0;
    const auto [out, O] = reorient(sf, v);
    CHECK((O - Matrix::Identity(2, 2)).norm() == 0.0);
    CHECK(out.p3.coeff(0, 0, 0) == sf.p3.coeff(0, 0, 0));
  }

  SUBCASE("curve direction picks up the cube coefficient") {
    const StandardFormPoly sf = examples::motivating();
    Vector v(2);
    v << 1.0, 0.0;
    const auto [out, O] = reorient(sf, v);
    CHECK(out.p3.coeff(1, 1, 1) == doctest::Approx(2.0 / (3.0 * kS3)).epsilon(1e-14));
    CHECK(out.p3.evaluate((Vector(2) << 0.0, 1.0).finished()) ==
          doctest::Approx(sf.p3.evaluate(v)).epsilon(1e-14));
  }

  SUBCASE("sphere max is preserved") {
    std::mt19937_64 rng(32);
    const StandardFormPoly sf = random_closed(3, rng, 0.31);
    const Vector v = testing::random_unit(3, rng);
    const auto [out, O] = reorient(sf, v);
    CHECK(sphere_max(out.p3).max_value ==
          doctest::Approx(sphere_max(sf.p3).max_value).epsilon(1e-9));
    CHECK(out.p3.coeff(2, 2, 2) == doctest::Approx(sf.p3.evaluate(v)).epsilon(1e-12));
  }
}

TEST_CASE("evolve") {
  SUBCASE("motivating family, both signs of the parameter") {
    const StandardFormPoly sf = examples::motivating();
    Vector v(2);
    v << 1.0, 0.0;
    const auto tr = evolve(sf, v, {-0.8, 0.0, 0.8, 1.6});
    REQUIRE(tr.samples.size() == 4);
    CHECK(tr.horizon == doctest::Approx(kS3).epsilon(1e-12));
    CHECK(tr.negative_horizon == doctest::Approx(-kS3 / 2.0).epsilon(1e-12));
    for (const auto& s : tr.samples) {
      CHECK(s.sf.p3.coeff(0, 0, 1) == doctest::Approx(-2.0 * s.t / 3.0).epsilon(1e-10));
      CHECK(s.sf.p3.coeff(1, 1, 1) == doctest::Approx(2.0 / (3.0 * kS3)).epsilon(1e-10));
      CHECK(std::abs(s.sf.p3.coeff(0, 0, 0)) < 1e-10);
      CHECK(std::abs(s.sf.p3.coeff(0, 1, 1)) < 1e-10);
    }
  }

  SUBCASE("initial sample is the input") {
    std::mt19937_64 rng(33);
    const StandardFormPoly sf = random_closed(3, rng, 0.3);
    const Vector v = testing::random_unit(3, rng);
    const auto tr = evolve(sf, v, {0.0});
    const auto [sf2, O] = reorient(sf, v);
    for (std::size_t i = 0; i < sf2.p3.raw().size(); ++i)
      CHECK(tr.samples.front().sf.p3.raw()[i] ==
            doctest::Approx(sf2.p3.raw()[i]).epsilon(1e-12));
  }

  SUBCASE("curve family matches the closed form") {
    Vector v(1);
    v << 1.0;
    for (double a : {-0.37, -0.1, 0.05, 0.3}) {
      const StandardFormPoly sf = examples::dim1(a);
      const double R = RayCubic(a).horizon();
      std::vector<double> ts;
      for (int i = 0; i <= 6; ++i) ts.push_back(0.93 * R * i / 6.0);
      const auto tr = evolve(sf, v, ts);
      for (const auto& s : tr.samples)
        CHECK(s.sf.p3.coeff(0, 0, 0) ==
              doctest::Approx(curve_coefficient_1d(a, s.t)).epsilon(1e-11));
    }
  }

  SUBCASE("membership is preserved along the trace") {
    std::mt19937_64 rng(34);
    const StandardFormPoly sf = random_closed(3, rng, 0.35);
    const Vector v = testing::random_unit(3, rng);
    const auto [sf2, O] = reorient(sf, v);
    const double R = RayCubic(sf2.p3.coeff(2, 2, 2)).horizon();
    std::vector<double> ts;
    for (int i = 0; i <= 5; ++i) ts.push_back(0.9 * R * i / 5.0);
    for (const auto& s : evolve(sf, v, ts).samples)
      CHECK(sphere_max(s.sf.p3).max_value <= kP3Bound + 1e-6);
  }

  SUBCASE("homogeneous curve stays constant") {
    Vector v(1);
    v << 1.0;
    const StandardFormPoly sf = examples::dim1_homogeneous();
    const double R = RayCubic(-kP3Bound).horizon();
    std::vector<double> ts;
    for (int i = 0; i <= 8; ++i) ts.push_back((R - 1e-3) * i / 8.0);
    for (const auto& s : evolve(sf, v, ts).samples)
      CHECK(s.sf.p3.coeff(0, 0, 0) == doctest::Approx(-kP3Bound).epsilon(1e-10));
  }

  SUBCASE("schedule beyond the horizon is rejected") {
    const StandardFormPoly sf = examples::motivating();
    Vector v(2);
    v << 1.0, 0.0;
    CHECK_THROWS_AS((void)evolve(sf, v, {kS3}), Error);
  }
}

TEST_CASE("extract limit") {
  SUBCASE("motivating surface, both ends") {
    const StandardFormPoly sf = examples::motivating();
    Vector vp(2), vm(2);
    vp << 1.0, 0.0;
    vm << -1.0, 0.0;

    const auto Lp = extract_limit(sf, vp);
    CHECK(Lp.error_estimate <= 1e-4);
    CHECK(Lp.limit_p3.coeff(1, 1, 1) == doctest::Approx(2.0 / (3.0 * kS3)).epsilon(1e-4));
    CHECK(Lp.limit_p3.coeff(0, 0, 1) == doctest::Approx(-2.0 / kS3).epsilon(1e-4));
    CHECK(classify(Lp.limit_p3).form.variant() == LimitForm::Variant::Dim2B);

    const auto Lm = extract_limit(sf, vm);
    CHECK(Lm.error_estimate <= 1e-4);
    CHECK(Lm.limit_p3.coeff(1, 1, 1) == doctest::Approx(-2.0 / (3.0 * kS3)).epsilon(1e-4));
    CHECK(Lm.limit_p3.coeff(0, 0, 1) == doctest::Approx(-1.0 / kS3).epsilon(1e-4));
    CHECK(classify(Lm.limit_p3).form.variant() == LimitForm::Variant::Dim2A);
  }

  SUBCASE("curve family limit") {
    Vector v(1);
    v << 1.0;
    for (double a : {-0.2, 0.0, 0.25}) {
      const auto L = extract_limit(examples::dim1(a), v);
      CHECK(L.limit_p3.coeff(0, 0, 0) == doctest::Approx(-kP3Bound).epsilon(1e-5));
    }
  }

  SUBCASE("gauge robustness under an input rotation") {
    std::mt19937_64 rng(35);
    const StandardFormPoly sf = random_closed(3, rng, 0.33);
    const Vector v = testing::random_unit(3, rng);
    const auto r1 = classify(extract_limit(sf, v).limit_p3);

    const Matrix O = Eigen::HouseholderQR<Matrix>(Matrix::Random(3, 3)).householderQ();
    const StandardFormPoly rot(3, sf.p3.pullback(O));
    const auto r2 = classify(extract_limit(rot, O.transpose() * v).limit_p3);
    CHECK(r1.form.variant() == r2.form.variant());
    CHECK(r1.form.m == r2.form.m);
    CHECK(r1.residual <= 1e-4);
    CHECK(r2.residual <= 1e-4);
  }
}

TEST_CASE("surface ray coefficients") {
  SUBCASE("simple slice case") {
    const double a = 0.2, r = 0.4;
    const auto k = surface_ray_coefficients(a, 0.0, 0.0, 0.0, r);
    const double beta = 1.0 - r * r + a * r * r * r;
    CHECK(k.chi == 0.0);
    CHECK(k.lambda == doctest::Approx((3.0 - r * r) * (3.0 - r * r)));
    CHECK(k.mu == doctest::Approx(3.0 * (3.0 - 9.0 * a * r + r * r) * beta));
    CHECK(k.theta_v3 == 0.0);
    CHECK(k.theta_vw2 == 0.0);
  }

  SUBCASE("matches the explicit matrix pullback") {
    std::mt19937_64 rng(36);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
      const double a = 0.37 * U(rng), b = U(rng), c = U(rng), q = U(rng);
      const double R = RayCubic(a).horizon();
      for (int i = 0; i < 8; ++i) {
        const double r = R * (i + 0.4) / 8.6;
        const auto k = surface_ray_coefficients(a, b, c, q, r);
        StandardFormPoly sf(2);
        sf.p3.coeff(0, 0, 0) = c;
        sf.p3.coeff(0, 0, 1) = q;
        sf.p3.coeff(0, 1, 1) = b;
        sf.p3.coeff(1, 1, 1) = a;
        const CubicForm hE =
            assemble_standard(sf).pullback(surface_ray_matrix(a, b, c, q, r));
        auto rel = [](double x, double y) {
          return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
        };
        CHECK(rel(-hE.coeff(0, 1, 1), k.lambda) < 1e-9);
        CHECK(rel(-hE.coeff(0, 1, 2), k.chi) < 1e-9);
        CHECK(rel(-hE.coeff(0, 2, 2), k.mu) < 1e-9);
        CHECK(rel(hE.coeff(1, 1, 1), k.theta_v3) < 1e-9);
        CHECK(rel(hE.coeff(1, 1, 2), k.theta_v2w) < 1e-9);
        CHECK(rel(hE.coeff(1, 2, 2), k.theta_vw2) < 1e-9);
        CHECK(rel(hE.coeff(2, 2, 2), k.theta_w3) < 1e-9);
      }
    }
  }

  SUBCASE("mixed-ratio limit by extrapolation") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> UR(kS3 / 2.0 + 0.05, kS3 - 0.05);
    for (int trial = 0; trial < 6; ++trial) {
      const double R = UR(rng);
      const double b = 0.7 * surface_b_bound(R);
      CHECK(surface_mixed_ratio_extrapolated(b, R) ==
            doctest::Approx(surface_mixed_ratio_limit(b, R)).epsilon(1e-6));
    }
  }
}

TEST_CASE("surface rotation certificate") {
  SUBCASE("kills the odd terms and matches the closed forms") {
    for (double R : {0.95, 1.2, 1.5}) {
      const double b = 0.6 * surface_b_bound(R);
      const auto cert = surface_rotation_certificate(b, R);
      CHECK(std::abs(cert.rotated.coeff(0, 0, 0)) < 1e-12);
      CHECK(std::abs(cert.rotated.coeff(0, 1, 1)) < 1e-12);
      CHECK(cert.rotated.coeff(0, 0, 1) == doctest::Approx(cert.v2w_coeff).epsilon(1e-9));
      CHECK(cert.rotated.coeff(1, 1, 1) == doctest::Approx(cert.w3_coeff).epsilon(1e-9));
      CHECK(cert.pair_norm == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(cert.axis_norm > 1.0);
    }
  }

  SUBCASE("extremal parameter reaches the flat form") {
    const double R = 1.3;
    const auto cert = surface_rotation_certificate(surface_b_bound(R), R);
    CHECK(cert.v2w_coeff == doctest::Approx(2.0 / kS3).epsilon(1e-12));
    CHECK(cert.w3_coeff == doctest::Approx(-2.0 / (3.0 * kS3)).epsilon(1e-12));
    CHECK(cert.axis_norm == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("the norm-one pair is found by the critical point solver") {
    const double R = 1.1;
    const double b = 0.8 * surface_b_bound(R);
    const auto cert = surface_rotation_certificate(b, R);
    const auto pts = critical_points_with_norms(cert.rotated, kP3Bound);
    int found = 0;
    for (const auto& [p, nrm] : pts)
      if (std::abs(nrm - 1.0) < 1e-8 && std::abs(std::abs(p[0]) - cert.pair_point[0]) < 1e-8)
        ++found;
    CHECK(found == 2);
  }
}
