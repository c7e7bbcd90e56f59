#include "curvedet/bezoutian.hpp"

#include <algorithm>
#include <cmath>

#include "curvedet/errors.hpp"
#include "curvedet/rng.hpp"

namespace curvedet {

cplx cauchy_kernel(cplx p, cplx q) {
  require(std::abs(q - p) > 0.0, "pole-on-diagonal", "cauchy_kernel: coincident arguments");
  return cplx(1.0) / (q - p);
}

Vec u_vector(const std::vector<cplx>& divisor, cplx q, USide side, double tol) {
  const int m = static_cast<int>(divisor.size());
  require(m >= 1, "invalid-argument", "u_vector: empty divisor");
  Vec u(m);
  for (int i = 0; i < m; ++i) {
    const cplx gap = q - divisor[i];
    require(std::abs(gap) > tol * std::max(1.0, std::abs(divisor[i])), "pole-at-divisor",
            "u_vector: evaluation point at divisor index " + std::to_string(i));
    u(i) = side == USide::right ? cplx(1.0) / gap : cplx(-1.0) / gap;
  }
  return u;
}

void require_in_model_space(const RationalFunction& f, const std::vector<cplx>& divisor,
                            double tol) {
  require(f.num().degree() <= f.den().degree(), "not-in-L(D)",
          "function has a pole at infinity");
  for (cplx p : f.poles()) {
    int hits = 0;
    for (cplx q : f.poles())
      if (std::abs(p - q) <= tol * std::max(1.0, std::abs(p))) ++hits;
    require(hits == 1, "not-in-L(D)", "multiple pole in model-space check");
    bool matched = false;
    for (cplx d : divisor)
      if (std::abs(p - d) <= tol * std::max(1.0, std::abs(d))) matched = true;
    require(matched, "not-in-L(D)", "pole not contained in the divisor");
  }
}

Mat bezout_matrix(const RationalFunction& f, const RationalFunction& g,
                  const std::vector<cplx>& divisor, double tol) {
  const int m = static_cast<int>(divisor.size());
  require(m >= 1, "invalid-argument", "bezout_matrix: empty divisor");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      require(std::abs(divisor[i] - divisor[j]) > tol * std::max(1.0, std::abs(divisor[i])),
              "invalid-argument", "bezout_matrix: repeated divisor point");
  require_in_model_space(f, divisor, tol);
  require_in_model_space(g, divisor, tol);

  std::vector<LaurentPair> lf(m), lg(m);
  for (int i = 0; i < m; ++i) {
    lf[i] = f.laurent_simple(divisor[i], tol);
    lg[i] = g.laurent_simple(divisor[i], tol);
  }
  Mat B(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) {
        B(i, i) = lf[i].b * lg[i].a - lf[i].a * lg[i].b;
      } else {
        B(i, j) = (lf[i].a * lg[j].a - lf[j].a * lg[i].a) / (divisor[i] - divisor[j]);
      }
    }
  }
  return B;
}

double fundamental_identity_residual(const RationalFunction& f, const RationalFunction& g,
                                     const std::vector<cplx>& divisor, int samples,
                                     std::uint64_t seed, double tol) {
  const Mat B = bezout_matrix(f, g, divisor, tol);
  Rng rng(seed);
  auto sample_point = [&]() {
    for (int attempt = 0; attempt < 256; ++attempt) {
      const cplx z(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
      bool clear = true;
      for (cplx d : divisor)
        if (std::abs(z - d) < 0.2) clear = false;
      if (clear) return z;
    }
    fail("numerical-failure", "fundamental_identity_residual: could not sample off the divisor");
  };
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const cplx p = sample_point();
    cplx q = sample_point();
    while (std::abs(q - p) < 0.05) q = sample_point();
    const cplx lhs = (f(p) * g(q) - f(q) * g(p)) * cauchy_kernel(p, q);
    const Vec ul = u_vector(divisor, p, USide::left, tol);
    const Vec ur = u_vector(divisor, q, USide::right, tol);
    const cplx rhs = (ul.transpose() * B * ur).value();
    const double rel = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    worst = std::max(worst, rel);
  }
  return worst;
}

CommonZeroCheck verify_common_zero(const RationalFunction& f, const RationalFunction& g,
                                   const std::vector<cplx>& divisor, cplx z, double tol) {
  const Mat B = bezout_matrix(f, g, divisor, tol);
  const Vec u = u_vector(divisor, z, USide::right, tol);
  CommonZeroCheck out;
  const double denom = B.norm() * u.norm();
  out.residual = denom > 0.0 ? (B * u).norm() / denom : 0.0;
  out.ok = out.residual <= tol;
  return out;
}

double det_vanish_residual(const RationalFunction& f, const RationalFunction& g,
                           const std::vector<cplx>& divisor, cplx z, double tol) {
  const RationalFunction one = RationalFunction::constant(1.0);
  const Mat M = g(z) * bezout_matrix(one, f, divisor, tol) -
                f(z) * bezout_matrix(one, g, divisor, tol) + bezout_matrix(f, g, divisor, tol);
  const Vec u = u_vector(divisor, z, USide::right, tol);
  const double denom = M.norm() * u.norm();
  return denom > 0.0 ? (M * u).norm() / denom : 0.0;
}

DualityReport duality_report(const RationalFunction& g, cplx z,
                             const std::vector<cplx>& divisor, double tol) {
  require_in_model_space(g, divisor, tol);
  const Poly fiber_poly = (g.num() - z * g.den()).trimmed(1e-13);
  require(fiber_poly.degree() >= 1, "invalid-argument", "duality_report: constant fiber equation");
  std::vector<cplx> fiber = roots(fiber_poly);
  const int m = static_cast<int>(fiber.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j)
      require(std::abs(fiber[i] - fiber[j]) > 1e-7 * std::max(1.0, std::abs(fiber[i])),
              "ramified-fiber", "duality_report: z is a critical value");
    require(std::abs(g.derivative_at(fiber[i])) > 1e-8, "ramified-fiber",
            "duality_report: fiber point is critical");
    for (cplx d : divisor)
      require(std::abs(fiber[i] - d) > tol * std::max(1.0, std::abs(d)), "pole-at-divisor",
              "duality_report: fiber point at the divisor");
  }
  const RationalFunction shifted = RationalFunction::make(g.num() - z * g.den(), g.den());
  const RationalFunction one = RationalFunction::constant(1.0);
  const Mat B = bezout_matrix(one, shifted, divisor, tol);

  DualityReport rep;
  rep.fiber = fiber;
  rep.pairing = Mat(m, m);
  double diag_scale = 0.0;
  for (int i = 0; i < m; ++i) {
    const Vec ul = u_vector(divisor, fiber[i], USide::left, tol);
    for (int j = 0; j < m; ++j) {
      const Vec ur = u_vector(divisor, fiber[j], USide::right, tol);
      rep.pairing(i, j) = (ul.transpose() * B * ur).value();
    }
  }
  for (int i = 0; i < m; ++i) diag_scale = std::max(diag_scale, std::abs(rep.pairing(i, i)));
  for (int i = 0; i < m; ++i) {
    const cplx slope = g.derivative_at(fiber[i]);
    rep.max_diag_error = std::max(rep.max_diag_error, std::abs(rep.pairing(i, i) - slope) /
                                                          std::max(1.0, std::abs(slope)));
    for (int j = 0; j < m; ++j)
      if (i != j)
        rep.max_offdiag =
            std::max(rep.max_offdiag, std::abs(rep.pairing(i, j)) / std::max(1.0, diag_scale));
  }
  return rep;
}

}  // namespace curvedet
