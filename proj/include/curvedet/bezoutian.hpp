#pragma once

#include <cstdint>
#include <vector>

#include "curvedet/exterior.hpp"
#include "curvedet/ratfunc.hpp"

namespace curvedet {

// K(p, q) = 1/(q - p).
cplx cauchy_kernel(cplx p, cplx q);

enum class USide { left, right };

// Interpolation vector over the divisor: right side has entries K(p_i, q),
// left side K(q, p_i). Errors with pole-at-divisor when q collides with a
// divisor point.
Vec u_vector(const std::vector<cplx>& divisor, cplx q, USide side, double tol = 1e-8);

// Checks membership in the model space attached to the divisor: poles simple,
// every pole within tol of a divisor point, no pole at infinity. Violations
// error with not-in-L(D).
void require_in_model_space(const RationalFunction& f, const std::vector<cplx>& divisor,
                            double tol = 1e-8);

// Bezoutian of the pair (f, g) over the divisor {p_1, ..., p_m}:
//   B_ii = b_i c_i - a_i d_i
//   B_ij = (a_i c_j - a_j c_i) / (p_i - p_j)   (i != j)
// where a_i/(t-p_i) + b_i and c_i/(t-p_i) + d_i are the local expansions of f
// and g. Divisor points must be pairwise distinct.
Mat bezout_matrix(const RationalFunction& f, const RationalFunction& g,
                  const std::vector<cplx>& divisor, double tol = 1e-8);

// Max relative residual of
//   (f(p) g(q) - f(q) g(p)) K(p, q) = u_left(p)^T B u_right(q)
// over seeded sample pairs away from the divisor.
double fundamental_identity_residual(const RationalFunction& f, const RationalFunction& g,
                                     const std::vector<cplx>& divisor, int samples,
                                     std::uint64_t seed, double tol = 1e-8);

struct CommonZeroCheck {
  double residual = 0.0;  // ||B u_right(z)|| / (||B||_F ||u||)
  bool ok = false;
};

// B(f, g) annihilates u_right(z) exactly when f(z) = g(z) = 0.
CommonZeroCheck verify_common_zero(const RationalFunction& f, const RationalFunction& g,
                                   const std::vector<cplx>& divisor, cplx z, double tol = 1e-8);

// Residual of (g(z) B(1,f) - f(z) B(1,g) + B(f,g)) u_right(z) = 0, the scalar
// form of the curve-membership identity.
double det_vanish_residual(const RationalFunction& f, const RationalFunction& g,
                           const std::vector<cplx>& divisor, cplx z, double tol = 1e-8);

struct DualityReport {
  std::vector<cplx> fiber;  // finite preimages of the value z under g
  Mat pairing;              // P_ij = u_left(q_i)^T B(1, g - z) u_right(q_j)
  double max_offdiag = 0.0;     // relative to the diagonal scale
  double max_diag_error = 0.0;  // max_i |P_ii - g'(q_i)| / max(1, |g'(q_i)|)
};

// Diagonalization of B(1, g - z) by the fiber of g over a regular value z:
// the pairing is diagonal with P_ii = g'(q_i).
DualityReport duality_report(const RationalFunction& g, cplx z,
                             const std::vector<cplx>& divisor, double tol = 1e-8);

}  // namespace curvedet
