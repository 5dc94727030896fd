#include "psr/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "psr/hyperbolicity.hpp"

namespace psr {

namespace {

double ray_value(double a, double r) { return 1.0 - r * r + a * r * r * r; }

// Smallest positive zero of 1 - r^2 + a r^3 for |a| <= 2/(3 sqrt 3).
// For a <= 0 the value is strictly decreasing on r > 0 and the zero lies in
// [sqrt(3)/2, 1]; for a > 0 it lies in (1, rc] with rc = 2/(3a) the critical
// point, where the zero becomes double exactly at the closedness bound.
double smallest_positive_ray_root(double a) {
  if (std::abs(a) < 1e-14) return 1.0;
  double hi;
  if (a > 0.0) {
    const double rc = 2.0 / (3.0 * a);
    if (ray_value(a, rc) > -1e-14) return rc;  // double (or grazing) zero
    hi = rc;
  } else {
    hi = 1.0;  // ray_value(a, 1) = a < 0
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ray_value(a, mid) > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
  }
  double r = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {  // Newton polish inside the bracket
    const double df = 3.0 * a * r * r - 2.0 * r;
    if (std::abs(df) < 1e-12) break;
    const double step = ray_value(a, r) / df;
    const double cand = r - step;
    if (cand <= lo || cand >= hi + 1e-12) break;
    r = cand;
    if (std::abs(step) < 1e-16 * std::max(1.0, r)) break;
  }
  return r;
}

// All real zeros, ascending; uses the a -> -a reflection for the negative side
// and the root product for the remaining large zero.
std::vector<double> ray_cubic_roots(double a) {
  if (std::abs(a) < 1e-14) return {-1.0, 1.0};
  const double rp = smallest_positive_ray_root(a);
  const double rn = -smallest_positive_ray_root(-a);
  const double third = -1.0 / (a * rp * rn);
  std::vector<double> roots{rn, rp, third};
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Least-squares polynomial fit values at sigma = 0 for each column of Y.
Eigen::VectorXd fit_at_zero(const std::vector<double>& sigma, const Matrix& Y, int degree,
                            double sigma_scale) {
  const int m = static_cast<int>(sigma.size());
  Matrix V(m, degree + 1);
  for (int i = 0; i < m; ++i) {
    double s = 1.0;
    const double x = sigma[i] / sigma_scale;
    for (int d = 0; d <= degree; ++d) {
      V(i, d) = s;
      s *= x;
    }
  }
  const Matrix coef = V.colPivHouseholderQr().solve(Y);
  return coef.row(0).transpose();
}

}  // namespace

RayCubic::RayCubic(double a) : a_(a) {
  if (std::abs(a_) > kP3Bound + 1e-12)
    throw NoClosedHorizon("ray cubic coefficient exceeds the closedness bound");
}

std::vector<double> RayCubic::roots() const { return ray_cubic_roots(a_); }

double RayCubic::horizon() const { return smallest_positive_ray_root(a_); }

double RayCubic::negative_horizon() const { return -smallest_positive_ray_root(-a_); }

std::pair<StandardFormPoly, Matrix> reorient(const StandardFormPoly& sf, const Vector& v) {
  const int n = sf.n;
  if (v.size() != n) throw DimensionMismatch("direction dimension does not match n");
  if (std::abs(v.norm() - 1.0) > 1e-9) throw Error("reorient needs a unit direction");
  Matrix O = Matrix::Identity(n, n);
  Vector en = Vector::Zero(n);
  en[n - 1] = 1.0;
  const Vector w = v - en;
  const double wn2 = w.squaredNorm();
  if (wn2 > 1e-24) O -= (2.0 / wn2) * (w * w.transpose());
  StandardFormPoly out(n, sf.p3.pullback(O));
  return {std::move(out), O};
}

EvolutionTrace evolve(const StandardFormPoly& sf, const Vector& v,
                      const std::vector<double>& t_schedule) {
  const int n = sf.n;
  auto [sf2, O] = reorient(sf, v);
  const double a = sf2.p3.coeff(n - 1, n - 1, n - 1);
  const RayCubic beta(a);
  const double R = beta.horizon();
  const double Rneg = beta.negative_horizon();

  EvolutionTrace trace;
  trace.direction = v;
  trace.reorientation = O;
  trace.horizon = R;
  trace.negative_horizon = Rneg;

  std::vector<double> targets = t_schedule;
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (double t : targets) {
    if (t > R - 1e-6 || t < Rneg + 1e-6)
      throw Error("schedule point lies beyond the horizon cap");
  }

  const CubicForm h = assemble_standard(sf2);

  // Walk the gauge chain outward from t = 0 in each sign separately, keeping
  // the frame factor continuous across steps.
  auto walk = [&](const std::set<double>& target_side, double extreme,
                  std::vector<EvolutionSample>& out) {
    if (target_side.empty()) return;
    std::set<double> grid = target_side;
    grid.insert(0.0);
    const int base_steps = 32;
    for (int i = 1; i < base_steps; ++i) grid.insert(extreme * i / base_steps);
    // Two midpoint passes refine the geometric tail near the horizon.
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<double> pts(grid.begin(), grid.end());
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) grid.insert(0.5 * (pts[i] + pts[i + 1]));
    }
    std::vector<double> chain(grid.begin(), grid.end());
    if (extreme < 0.0) std::reverse(chain.begin(), chain.end());

    Matrix prevE = Matrix::Identity(n, n);
    for (double t : chain) {
      Vector p = Vector::Zero(n + 1);
      const double bval = beta(t);
      const double s = std::pow(bval, -1.0 / 3.0);
      p[0] = s;
      p[n] = s * t;
      StandardFormAtPoint at = standard_form_at(h, p, GaugePolicy::continuous(prevE));
      prevE = at.frame;
      if (target_side.count(t))
        out.push_back({t, at.sf, at.transform.matrix(), at.condition});
    }
  };

  std::set<double> pos, neg;
  for (double t : targets) (t >= 0.0 ? pos : neg).insert(t);

  std::vector<EvolutionSample> pos_samples, neg_samples;
  const double pos_extreme = pos.empty() ? 0.0 : *pos.rbegin();
  const double neg_extreme = neg.empty() ? 0.0 : *neg.begin();
  walk(pos, pos_extreme, pos_samples);
  walk(neg, neg_extreme, neg_samples);

  std::sort(neg_samples.begin(), neg_samples.end(),
            [](const EvolutionSample& x, const EvolutionSample& y) { return x.t < y.t; });
  trace.samples = std::move(neg_samples);
  trace.samples.insert(trace.samples.end(), pos_samples.begin(), pos_samples.end());
  return trace;
}

namespace {

LimitExtraction extract_limit_pass(const StandardFormPoly& sf, const Vector& v, double sigma0) {
  const int n = sf.n;
  auto [sf2, O] = reorient(sf, v);
  const double a = sf2.p3.coeff(n - 1, n - 1, n - 1);
  const double R = RayCubic(a).horizon();

  std::vector<double> schedule;
  for (int k = 0; k <= 6; ++k) {
    double t = R - sigma0 * sigma0 * std::pow(4.0, -k);
    t = std::min(t, R - 1e-6);
    schedule.push_back(t);
  }

  EvolutionTrace trace = evolve(sf, v, schedule);

  std::vector<double> sigma;
  std::vector<const CubicForm*> forms;
  for (const auto& s : trace.samples) {
    if (s.condition > 1e10) continue;  // slice too degenerate to trust
    sigma.push_back(std::sqrt(std::max(R - s.t, 0.0)));
    forms.push_back(&s.sf.p3);
  }
  if (sigma.size() < 6)
    throw ExtrapolationUnstable("too few well-conditioned samples near the horizon", {});

  const std::size_t ncoef = CubicForm::monomial_count(n);
  Matrix Y(static_cast<int>(sigma.size()), static_cast<int>(ncoef));
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = 0; j < ncoef; ++j)
      Y(static_cast<int>(i), static_cast<int>(j)) = forms[i]->raw()[j];

  const Eigen::VectorXd fit4 = fit_at_zero(sigma, Y, 4, sigma0);
  const Eigen::VectorXd fit5 = fit_at_zero(sigma, Y, 5, sigma0);

  LimitExtraction out{CubicForm(n), 0.0, static_cast<int>(sigma.size()), {}, std::move(trace)};
  out.per_coefficient_estimates.resize(ncoef);
  for (std::size_t j = 0; j < ncoef; ++j) {
    out.limit_p3.raw()[j] = fit4[static_cast<int>(j)];
    const double est = std::abs(fit4[static_cast<int>(j)] - fit5[static_cast<int>(j)]);
    out.per_coefficient_estimates[j] = est;
    out.error_estimate = std::max(out.error_estimate, est);
  }
  return out;
}

}  // namespace

LimitExtraction extract_limit(const StandardFormPoly& sf, const Vector& v, std::uint64_t seed) {
  // First pass on the standard ladder. When the fit spread signals that the
  // sharp-corner accuracy target is at risk (coefficient scales collapse as
  // the ray coefficient approaches the closedness bound), halve the ladder
  // scale and keep the tightest estimate.
  const double R = [&] {
    auto [sf2, O] = reorient(sf, v);
    return RayCubic(sf2.p3.coeff(sf.n - 1, sf.n - 1, sf.n - 1)).horizon();
  }();
  LimitExtraction out = extract_limit_pass(sf, v, 0.3 * R);
  for (double scale : {0.15, 0.075}) {
    if (out.error_estimate <= 3e-6) break;
    // keep the deepest ladder point clear of the horizon cap so the fit
    // nodes stay distinct
    if (scale * scale * R * R / 4096.0 < 2e-6) break;
    LimitExtraction refined = extract_limit_pass(sf, v, scale * R);
    if (refined.error_estimate < out.error_estimate) out = std::move(refined);
  }
  if (out.error_estimate > 1e-4)
    throw ExtrapolationUnstable("limit extrapolation spread exceeds threshold",
                                out.per_coefficient_estimates);
  // Limits of closed families stay inside the closed set.
  const SphereMaxResult sm = sphere_max(out.limit_p3, seed);
  if (sm.max_value > kP3Bound + 1e-5)
    throw ExtrapolationUnstable("extracted limit exceeds the closedness bound",
                                out.per_coefficient_estimates);
  return out;
}

double curve_coefficient_1d(double a, double r) {
  const double num = 27.0 * a - 18.0 * r + 27.0 * a * r * r + (2.0 - 27.0 * a * a) * r * r * r;
  const double den = 3.0 * std::sqrt(3.0) * std::pow(std::sqrt(3.0 - 9.0 * a * r + r * r), 3);
  return num / den;
}

RayPullbackCoeffs surface_ray_coefficients(double a, double b, double c, double q, double r) {
  const double beta = 1.0 - r * r + a * r * r * r;
  if (beta <= 0.0) throw Error("ray parameter lies beyond the horizon");
  const double sb = std::sqrt(beta);
  const double t32 = 3.0 - r * r;
  RayPullbackCoeffs k{};
  k.lambda = -3.0 * b * b * std::pow(r, 4) + (1.0 - q * r) * t32 * t32;
  k.chi = -18.0 * b * r * beta;
  k.mu = 3.0 * (3.0 - 9.0 * a * r + r * r) * beta;
  k.theta_v3 = (-std::pow(b, 3) * std::pow(r, 6) + b * r * r * t32 * t32 + c * std::pow(t32, 3)) * sb;
  k.theta_v2w = (3.0 * b * b * std::pow(r, 5) * (2.0 - 3.0 * a * r) -
                 r * (2.0 - 3.0 * a * r) * t32 * t32 + q * std::pow(t32, 3)) *
                sb;
  k.theta_vw2 = 9.0 * b * (3.0 + r * r - 3.0 * a * std::pow(r, 3)) * beta * sb;
  k.theta_w3 = ((2.0 - 27.0 * a * a) * std::pow(r, 3) + 27.0 * a * r * r - 18.0 * r + 27.0 * a) *
               beta * sb;
  return k;
}

Matrix surface_ray_matrix(double a, double b, double c, double q, double r) {
  StandardFormPoly sf(2);
  sf.p3.coeff(0, 0, 0) = c;
  sf.p3.coeff(0, 0, 1) = q;
  sf.p3.coeff(0, 1, 1) = b;
  sf.p3.coeff(1, 1, 1) = a;
  const CubicForm h = assemble_standard(sf);
  const double beta = 1.0 - r * r + a * r * r * r;
  if (beta <= 0.0) throw Error("ray parameter lies beyond the horizon");
  Vector p(3);
  const double s = std::pow(beta, -1.0 / 3.0);
  p << s, 0.0, s * r;
  const Vector g = h.gradient(p);
  Matrix A = Matrix::Zero(3, 3);
  A.col(0) = p;
  const double scale = std::pow(beta, 1.0 / 6.0) * (3.0 - r * r);
  A(0, 1) = -g[1] / g[0] * scale;
  A(1, 1) = scale;
  A(0, 2) = -g[2] / g[0] * scale;
  A(2, 2) = scale;
  return A;
}

double surface_q_for_vanishing_slice(double b, double R) {
  const double t32 = 3.0 - R * R;
  return (-3.0 * b * b * std::pow(R, 4) + t32 * t32) / (R * t32 * t32);
}

double surface_c_for_vanishing_slice(double b, double R) {
  const double t32 = 3.0 - R * R;
  return b * R * R * (b * b * std::pow(R, 4) - t32 * t32) / std::pow(t32, 3);
}

double surface_mixed_ratio_limit(double b, double R) {
  const double t32 = 3.0 - R * R;
  return 108.0 * b * b * std::pow(R, 4) /
         (3.0 * b * b * std::pow(R, 4) * (9.0 + R * R) + std::pow(t32, 3));
}

double surface_mixed_ratio_extrapolated(double b, double R) {
  const double a = RayCubic::coefficient_for_horizon(R);
  const double q = surface_q_for_vanishing_slice(b, R);
  const double c = surface_c_for_vanishing_slice(b, R);
  // Tighter ladder than the coefficient extrapolation: the closed forms cost
  // nothing to evaluate and the ratio's expansion scale shrinks like 3 - R^2.
  const double sigma0 = std::sqrt(std::min(0.0225 * R * R, 0.15 * (3.0 - R * R)));
  const int K = 7;
  Matrix V(K, 5);
  Vector y(K);
  for (int k = 0; k < K; ++k) {
    const double t = R - sigma0 * sigma0 * std::pow(4.0, -k);
    const auto kc = surface_ray_coefficients(a, b, c, q, t);
    const double s2 = (R - t) / (sigma0 * sigma0);  // (sigma/sigma0)^2
    double p = 1.0;
    for (int d = 0; d < 5; ++d) {
      V(k, d) = p;
      p *= s2;
    }
    y[k] = kc.chi * kc.chi / (kc.lambda * kc.mu);
  }
  return V.colPivHouseholderQr().solve(y)[0];
}

double surface_b_bound(double R) {
  return (3.0 - R * R) * std::sqrt(12.0 * R * R - 9.0) / (3.0 * R * R * R);
}

RotationCertificate surface_rotation_certificate(double b, double R) {
  if (b <= 0.0) throw Error("rotation certificate needs b > 0");
  if (R <= std::sqrt(3.0) / 2.0 || R >= std::sqrt(3.0))
    throw Error("horizon parameter out of range");
  const double a = RayCubic::coefficient_for_horizon(R);
  const double q = surface_q_for_vanishing_slice(b, R);
  const double c = surface_c_for_vanishing_slice(b, R);

  CubicForm p3(2);
  p3.coeff(0, 0, 0) = c;
  p3.coeff(0, 0, 1) = q;
  p3.coeff(0, 1, 1) = b;
  p3.coeff(1, 1, 1) = a;

  const double f = (3.0 - R * R) / (b * R * R * R);
  Matrix M(2, 2);
  const double mscale = 1.0 / std::sqrt(1.0 + f * f);
  M << f * mscale, -mscale, mscale, f * mscale;

  RotationCertificate cert{M, p3.pullback(M), 0, 0, {}, 0, {}, 0, surface_b_bound(R)};

  const double t32 = 3.0 - R * R;
  const double den = t32 * t32 + b * b * std::pow(R, 6);
  const double sden = std::sqrt(den);
  cert.v2w_coeff = sden / (t32 * R);
  const double D = b * b * std::pow(R, 6) - t32 * t32 * (R * R - 1.0);
  cert.w3_coeff = -D * sden / (std::pow(t32, 3) * std::pow(R, 3));

  const double pv = std::sqrt(std::max(3.0 * den - R * R * t32 * t32, 0.0)) / (std::sqrt(3.0) * sden);
  const double pw = t32 * R / (std::sqrt(3.0) * sden);
  cert.pair_point << pv, pw;
  cert.pair_norm = cert.pair_point.norm();

  cert.axis_point << 0.0, -2.0 * std::pow(t32, 3) * std::pow(R, 3) /
                              (3.0 * std::sqrt(3.0) * D * sden);
  cert.axis_norm = cert.axis_point.norm();
  return cert;
}

}  // namespace psr
