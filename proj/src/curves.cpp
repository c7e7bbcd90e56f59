#include "curvedet/curves.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "curvedet/bezoutian.hpp"
#include "curvedet/errors.hpp"
#include "curvedet/rng.hpp"

namespace curvedet {

int RationalCurve::degree() const {
  int deg = -1;
  for (const Poly& p : mu) deg = std::max(deg, p.degree());
  return deg;
}

Vec RationalCurve::point(cplx t) const {
  Vec v(static_cast<Eigen::Index>(mu.size()));
  for (std::size_t i = 0; i < mu.size(); ++i) v(static_cast<Eigen::Index>(i)) = mu[i](t);
  return v;
}

namespace {

double poly_point_bound(const Poly& p, cplx at) {
  return p.max_abs_coeff() * std::pow(std::max(1.0, std::abs(at)), std::max(0, p.degree()));
}

bool real_divisor(const std::vector<cplx>& divisor) {
  for (cplx r : divisor)
    if (std::abs(r.imag()) > 1e-8 * std::max(1.0, std::abs(r))) return false;
  return true;
}

}  // namespace

CurveValidation validate_curve(const RationalCurve& curve, double tol, int samples,
                               std::uint64_t seed) {
  CurveValidation out;
  const int d = curve.d();
  if (d < 2) {
    out.reason = "invalid-argument";
    out.detail = "curve needs at least three coordinates";
    return out;
  }
  int n = -1;
  for (const Poly& p : curve.mu) n = std::max(n, effective_degree(p, 1e-12));
  out.n = n;
  if (n < 1) {
    out.reason = "invalid-argument";
    out.detail = "curve is constant";
    return out;
  }

  // Base point: a common root of all coordinates must be a root of the first
  // nonzero one, so scanning those roots is exhaustive.
  int first = 0;
  while (first <= d && effective_degree(curve.mu[first], 1e-12) < 0) ++first;
  if (first > d) {
    out.reason = "invalid-argument";
    out.detail = "all coordinates vanish identically";
    return out;
  }
  if (effective_degree(curve.mu[first], 1e-12) >= 1) {
    for (cplx r : roots(curve.mu[first].trimmed(1e-12))) {
      bool common = true;
      for (const Poly& p : curve.mu)
        if (std::abs(p(r)) > tol * std::max(1e-300, poly_point_bound(p, r))) common = false;
      if (common) {
        out.reason = "base-point";
        out.detail = "coordinates share a root";
        return out;
      }
    }
  }

  // Spanning: the coefficient matrix needs full row rank, otherwise the
  // curve lies in a hyperplane.
  {
    Mat coeff = Mat::Zero(d + 1, n + 1);
    for (int j = 0; j <= d; ++j) {
      const auto& cs = curve.mu[j].coeffs();
      for (int c = 0; c <= std::min(n, curve.mu[j].degree()); ++c)
        coeff(j, c) = cs.size() > static_cast<std::size_t>(c) ? cs[static_cast<std::size_t>(c)]
                                                              : cplx(0.0);
    }
    Eigen::JacobiSVD<Mat> svd(coeff);
    const auto& sv = svd.singularValues();
    if (n < d || !(sv(0) > 0.0) || sv(d) <= 1e-10 * sv(0)) {
      out.reason = "degenerate-span";
      out.detail = "curve lies in a hyperplane";
      return out;
    }
  }

  // Injectivity on sampled parameter pairs.
  if (samples >= 2) {
    Rng rng(seed);
    std::vector<cplx> ts;
    std::vector<Vec> pts;
    for (int s = 0; s < samples; ++s) {
      const cplx t(rng.uniform(-3.0, 3.0), 0.0);
      Vec p = curve.point(t);
      const double norm = p.norm();
      if (!(norm > 1e-12)) continue;
      ts.push_back(t);
      pts.push_back(p / norm);
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (std::abs(ts[i] - ts[j]) <= 1e-3) continue;
        if (std::abs(1.0 - std::abs((pts[i].adjoint() * pts[j]).value())) < 1e-10) {
          out.reason = "not-injective";
          out.detail = "two sampled parameters map to the same point";
          return out;
        }
      }
  }
  out.ok = true;

  if (effective_degree(curve.mu[0], 1e-12) != n) return out;
  std::vector<cplx> divisor = roots(curve.mu[0].trimmed(1e-12));
  for (std::size_t i = 0; i < divisor.size(); ++i)
    for (std::size_t j = i + 1; j < divisor.size(); ++j)
      if (std::abs(divisor[i] - divisor[j]) <= 1e-6 * std::max(1.0, std::abs(divisor[i])))
        return out;
  out.normalized = true;
  out.divisor = std::move(divisor);
  return out;
}

namespace {

// Invertible real change with first row c: unit rows keep every coordinate
// except the one carrying c's largest entry.
Mat section_change_matrix(const Vec& c) {
  const int dim = static_cast<int>(c.size());
  int jmax = 0;
  for (int j = 1; j < dim; ++j)
    if (std::abs(c(j)) > std::abs(c(jmax))) jmax = j;
  require(std::abs(c(jmax)) > 1e-12, "degenerate-span", "section change: zero covector");
  Mat g = Mat::Zero(dim, dim);
  g.row(0) = c.transpose();
  int row = 1;
  for (int j = 0; j < dim; ++j) {
    if (j == jmax) continue;
    g(row, j) = 1.0;
    ++row;
  }
  return g;
}

struct SectionCandidate {
  bool usable = false;
  bool non_real_divisor = false;  // valid section, but complex divisor points
  NormalizationResult res;
};

SectionCandidate try_section(const RationalCurve& curve, const Vec& c, NormalizeMode mode,
                             double tol) {
  SectionCandidate out;
  Mat g;
  try {
    g = section_change_matrix(c);
  } catch (const error&) {
    return out;
  }
  const int d = curve.d();
  RationalCurve cand;
  cand.mu.resize(d + 1);
  for (int row = 0; row <= d; ++row) {
    Poly acc;
    for (int j = 0; j <= d; ++j) acc = acc + g(row, j) * curve.mu[j];
    cand.mu[row] = acc.trimmed(1e-13);
  }
  const CurveValidation v = validate_curve(cand, tol);
  if (!v.ok || !v.normalized) return out;
  for (cplx r : v.divisor)
    if (std::abs(cand.mu[1](r)) <= tol * std::max(1e-300, poly_point_bound(cand.mu[1], r)))
      return out;  // gcd(mu_0, mu_1) != 1
  if (mode == NormalizeMode::real_section && !real_divisor(v.divisor)) {
    out.non_real_divisor = true;
    return out;
  }
  out.usable = true;
  out.res.curve = std::move(cand);
  out.res.change = std::move(g);
  out.res.divisor = v.divisor;
  return out;
}

}  // namespace

NormalizationResult normalize_coordinates(const RationalCurve& curve, std::uint64_t seed,
                                          NormalizeMode mode, const std::optional<Vec>& hyperplane,
                                          double tol) {
  const int d = curve.d();
  require(d >= 2, "invalid-argument", "normalize_coordinates: curve needs >= 3 coordinates");
  {
    const CurveValidation v = validate_curve(curve, tol);
    if (!v.ok) fail(v.reason, "normalize_coordinates: " + v.detail);
  }

  if (hyperplane) {
    require(hyperplane->size() == d + 1, "dimension-mismatch",
            "normalize_coordinates: hyperplane size");
    Vec h(d + 1);
    for (int j = 0; j <= d; ++j) {
      require(std::abs((*hyperplane)(j).imag()) <= 1e-9 * std::max(1.0, std::abs((*hyperplane)(j))),
              "invalid-argument", "normalize_coordinates: hyperplane must be real");
      h(j) = (*hyperplane)(j).real();
    }
    SectionCandidate cand = try_section(curve, h, mode, tol);
    if (cand.usable) {
      cand.res.attempts = 1;
      return std::move(cand.res);
    }
    fail(cand.non_real_divisor ? "section-not-real" : "normalization-failure",
         cand.non_real_divisor
             ? "normalize_coordinates: supplied hyperplane has a non-real divisor"
             : "normalize_coordinates: supplied hyperplane does not normalize the curve");
  }

  Vec identity_row = Vec::Zero(d + 1);
  identity_row(0) = 1.0;
  SectionCandidate cand = try_section(curve, identity_row, mode, tol);
  if (cand.usable) return std::move(cand.res);

  Rng rng(seed);
  for (int attempt = 1; attempt <= 64; ++attempt) {
    Vec c(d + 1);
    for (int j = 0; j <= d; ++j) c(j) = rng.uniform(-1.0, 1.0);
    cand = try_section(curve, c, mode, tol);
    if (cand.usable) {
      cand.res.attempts = attempt;
      return std::move(cand.res);
    }
  }
  fail("normalization-failure",
       mode == NormalizeMode::real_section
           ? "normalize_coordinates: no real section with simple real divisor found"
           : "normalize_coordinates: no normalizing section found");
}

std::vector<RationalFunction> lambda_functions(const RationalCurve& curve, double tol) {
  const CurveValidation v = validate_curve(curve, tol);
  if (!v.ok) fail(v.reason, "lambda_functions: " + v.detail);
  require(v.normalized, "not-normalized", "lambda_functions: curve is not normalized");
  std::vector<RationalFunction> out;
  out.reserve(curve.mu.size());
  out.push_back(RationalFunction::constant(1.0));
  for (std::size_t j = 1; j < curve.mu.size(); ++j)
    out.push_back(RationalFunction::make(curve.mu[j], curve.mu[0]));
  return out;
}

GammaTensor construct_gamma(const RationalCurve& curve, double tol) {
  const CurveValidation v = validate_curve(curve, tol);
  if (!v.ok) fail(v.reason, "construct_gamma: " + v.detail);
  require(v.normalized, "not-normalized", "construct_gamma: curve is not normalized");
  const int d = curve.d();
  const auto lambda = lambda_functions(curve, tol);
  GammaTensor g = make_gamma(d, 1, v.n);
  for (int i = 0; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j)
      g.set({i, j}, bezout_matrix(lambda[i], lambda[j], v.divisor, tol));
  return g;
}

double containment_residual(const GammaTensor& g, const RationalCurve& curve, int samples,
                            std::uint64_t seed) {
  require(curve.d() == g.d, "dimension-mismatch", "containment_residual: ambient dimension");
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const cplx t(rng.uniform(-2.5, 2.5), s % 2 == 0 ? 0.0 : rng.uniform(-1.0, 1.0));
    Vec mu = curve.point(t);
    const double norm = mu.norm();
    if (!(norm > 1e-12)) continue;
    mu /= norm;
    worst = std::max(worst, membership_residual(g, mu));
  }
  return worst;
}

namespace {

Mat mat(int n, std::initializer_list<double> rowmajor) {
  Mat m(n, n);
  int i = 0;
  for (double v : rowmajor) {
    m(i / n, i % n) = v;
    ++i;
  }
  return m;
}

BuiltinExample twisted_cubic_example() {
  BuiltinExample ex;
  ex.name = "twisted_cubic";
  ex.summary = "cubic (1, t, t^2, t^3) in P^3, 3x3 blocks, kernel (1, t, t^2)";
  GammaTensor g = make_gamma(3, 1, 3);
  g.set({0, 1}, mat(3, {1, 0, 0, 0, 0, 0, 0, 0, 0}));
  g.set({0, 2}, mat(3, {0, 1, 0, 1, 0, 0, 0, 0, 0}));
  g.set({0, 3}, mat(3, {0, 0, 1, 0, 1, 0, 1, 0, 0}));
  g.set({1, 2}, mat(3, {0, 0, 0, 0, 1, 0, 0, 0, 0}));
  g.set({1, 3}, mat(3, {0, 0, 0, 0, 0, 1, 0, 1, 0}));
  g.set({2, 3}, mat(3, {0, 0, 0, 0, 0, 0, 0, 0, 1}));
  ex.gamma = std::move(g);
  ex.curve.mu = {Poly{1.0}, Poly{0.0, 1.0}, Poly{0.0, 0.0, 1.0}, Poly{0.0, 0.0, 0.0, 1.0}};
  return ex;
}

BuiltinExample monomial_quintic_example() {
  BuiltinExample ex;
  ex.name = "monomial_quintic";
  ex.summary = "quintic (1, t^3, t^4, t^5) in P^3, 5x5 blocks, kernel (1, t, t^2, t^3, t^4)";
  GammaTensor g = make_gamma(3, 1, 5);
  g.set({0, 1}, mat(5, {0, 0, 1, 0, 0,  0, 1, 0, 0, 0,  1, 0, 0, 0, 0,
                        0, 0, 0, 0, 0,  0, 0, 0, 0, 0}));
  g.set({0, 2}, mat(5, {0, 0, 0, 1, 0,  0, 0, 1, 0, 0,  0, 1, 0, 0, 0,
                        1, 0, 0, 0, 0,  0, 0, 0, 0, 0}));
  g.set({0, 3}, mat(5, {0, 0, 0, 0, 1,  0, 0, 0, 1, 0,  0, 0, 1, 0, 0,
                        0, 1, 0, 0, 0,  1, 0, 0, 0, 0}));
  g.set({1, 2}, mat(5, {0, 0, 0, 0, 0,  0, 0, 0, 0, 0,  0, 0, 0, 0, 0,
                        0, 0, 0, 1, 0,  0, 0, 0, 0, 0}));
  g.set({1, 3}, mat(5, {0, 0, 0, 0, 0,  0, 0, 0, 0, 0,  0, 0, 0, 0, 0,
                        0, 0, 0, 0, 1,  0, 0, 0, 1, 0}));
  g.set({2, 3}, mat(5, {0, 0, 0, 0, 0,  0, 0, 0, 0, 0,  0, 0, 0, 0, 0,
                        0, 0, 0, 0, 0,  0, 0, 0, 0, 1}));
  ex.gamma = std::move(g);
  ex.curve.mu = {Poly{1.0}, Poly{0, 0, 0, 1.0}, Poly{0, 0, 0, 0, 1.0}, Poly{0, 0, 0, 0, 0, 1.0}};
  return ex;
}

BuiltinExample rational_p3_example() {
  BuiltinExample ex;
  ex.name = "rational_p3";
  ex.summary = "quartic (1, t, t^3, t^4) in P^3, 4x4 blocks, kernel (1, t, t^2, t^3)";
  GammaTensor g = make_gamma(3, 1, 4);
  g.set({0, 1}, mat(4, {1, 0, 0, 0,  0, 0, 0, 0,  0, 0, 0, 0,  0, 0, 0, 0}));
  g.set({0, 2}, mat(4, {0, 0, 1, 0,  0, 1, 0, 0,  1, 0, 0, 0,  0, 0, 0, 0}));
  g.set({0, 3}, mat(4, {0, 0, 0, 1,  0, 0, 1, 0,  0, 1, 0, 0,  1, 0, 0, 0}));
  g.set({1, 2}, mat(4, {0, 0, 0, 0,  0, 0, 1, 0,  0, 1, 0, 0,  0, 0, 0, 0}));
  g.set({1, 3}, mat(4, {0, 0, 0, 0,  0, 0, 0, 1,  0, 0, 1, 0,  0, 1, 0, 0}));
  g.set({2, 3}, mat(4, {0, 0, 0, 0,  0, 0, 0, 0,  0, 0, 0, 0,  0, 0, 0, 1}));
  ex.gamma = std::move(g);
  ex.curve.mu = {Poly{1.0}, Poly{0, 1.0}, Poly{0, 0, 0, 1.0}, Poly{0, 0, 0, 0, 1.0}};
  return ex;
}

BuiltinExample pick_cubic_example() {
  BuiltinExample ex;
  ex.name = "pick_cubic";
  ex.summary = "cubic (t^3 - t, 1 - 3t^2, t^3, t^2 + t), normalized with divisor {-1, 0, 1}";
  ex.curve.mu = {Poly{0, -1.0, 0, 1.0}, Poly{1.0, 0, -3.0}, Poly{0, 0, 0, 1.0}, Poly{0, 1.0, 1.0}};
  ex.gamma = construct_gamma(ex.curve);
  return ex;
}

}  // namespace

BuiltinExample builtin_example(const std::string& name) {
  if (name == "twisted_cubic") return twisted_cubic_example();
  if (name == "monomial_quintic") return monomial_quintic_example();
  if (name == "rational_p3") return rational_p3_example();
  if (name == "pick_cubic") return pick_cubic_example();
  fail("unknown-example", "unknown builtin example: " + name);
}

std::vector<std::string> builtin_names() {
  return {"twisted_cubic", "monomial_quintic", "rational_p3", "pick_cubic"};
}

}  // namespace curvedet
