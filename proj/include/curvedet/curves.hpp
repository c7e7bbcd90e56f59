#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvedet/detrep.hpp"
#include "curvedet/exterior.hpp"
#include "curvedet/ratfunc.hpp"

namespace curvedet {

// Rational curve in P^d, coordinates mu_0, ..., mu_d as polynomials in the
// affine parameter.
struct RationalCurve {
  std::vector<Poly> mu;

  int d() const { return static_cast<int>(mu.size()) - 1; }
  int degree() const;  // max coordinate degree
  Vec point(cplx t) const;
};

struct CurveValidation {
  bool ok = false;
  std::string reason;        // error code when not ok: invalid-argument,
                             // base-point, degenerate-span, not-injective
  std::string detail;        // human-readable explanation
  int n = 0;                 // curve degree
  bool normalized = false;   // deg mu_0 == n with simple distinct roots
  std::vector<cplx> divisor; // roots of mu_0 when normalized
};

// Checks that the parametrization has no base point (no common root of all
// coordinates), spans the ambient space (coefficient matrix of full row
// rank), and is injective on sampled parameter pairs. Also reports whether
// the curve is normalized: deg mu_0 equals the curve degree n and the n
// roots of mu_0 are simple and distinct.
CurveValidation validate_curve(const RationalCurve& curve, double tol = 1e-8, int samples = 40,
                               std::uint64_t seed = 1);

enum class NormalizeMode { generic, real_section };

struct NormalizationResult {
  RationalCurve curve;
  Mat change;  // real invertible; curve.mu = change * original mu
  std::vector<cplx> divisor;
  int attempts = 0;
};

// Real linear change of coordinates making the curve normalized with
// gcd(mu_0, mu_1) = 1; real_section additionally requires all divisor points
// real. A supplied hyperplane covector fixes the section row (errors with
// section-not-real when its divisor has non-real points); otherwise the
// identity is tried first, then seeded random rows, and exhaustion errors
// with normalization-failure.
NormalizationResult normalize_coordinates(const RationalCurve& curve, std::uint64_t seed,
                                          NormalizeMode mode = NormalizeMode::generic,
                                          const std::optional<Vec>& hyperplane = std::nullopt,
                                          double tol = 1e-8);

// lambda_0 = 1 and lambda_j = mu_j / mu_0 (reduced), j = 1..d.
std::vector<RationalFunction> lambda_functions(const RationalCurve& curve, double tol = 1e-8);

// Representation of a normalized curve: gamma_{ij} = B(lambda_i, lambda_j)
// over the divisor of mu_0. The locus of the result contains the curve, with
// kernel direction u_right(t) at the point of parameter t.
GammaTensor construct_gamma(const RationalCurve& curve, double tol = 1e-8);

// Max membership residual of sampled curve points against the locus of g.
double containment_residual(const GammaTensor& g, const RationalCurve& curve, int samples,
                            std::uint64_t seed);

struct BuiltinExample {
  std::string name;
  std::string summary;
  GammaTensor gamma;
  RationalCurve curve;
};

// Named examples: twisted_cubic, monomial_quintic, rational_p3 carry pinned
// tensors with the parametrized curve on their locus; pick_cubic is
// constructed from its normalized curve.
BuiltinExample builtin_example(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace curvedet
