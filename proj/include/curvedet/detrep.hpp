#pragma once

#include <cstdint>
#include <vector>

#include "curvedet/exterior.hpp"
#include "curvedet/ratfunc.hpp"

namespace curvedet {

struct Tolerances {
  double rank_rel = 1e-10;     // SVD rank cutoff relative to the top singular value
  double eig_imag = 1e-8;      // imaginary-part threshold where realness is required
  double residual = 1e-9;      // generic residual acceptance
  double slice_accept = 1e-7;  // membership acceptance for slice candidates
};

// All blocks of gamma ^ mu stacked into one (#blocks * n) x n matrix, block
// rows ordered by index set (lex).
Mat wedge_stack(const GammaTensor& g, const Vec& mu);

// Smallest over largest singular value of the stack; 0 for the zero stack.
double membership_residual(const GammaTensor& g, const Vec& mu);

int kernel_dimension(const GammaTensor& g, const Vec& mu, const Tolerances& tol = {});

// mu lies on the locus D(gamma) when the stack has a kernel.
bool is_on_locus(const GammaTensor& g, const Vec& mu, const Tolerances& tol = {});

// Right singular vector for the smallest singular value (unit norm).
Vec kernel_vector(const GammaTensor& g, const Vec& mu);

// gamma(V) invertible for some random subspace: the locus is proper.
bool is_nondegenerate(const GammaTensor& g, std::uint64_t seed, const Tolerances& tol = {});

struct SlicePoint {
  Vec mu;               // unit representative of u + sum_i t_i v_i
  Vec kernel;           // unit kernel vector of the wedge stack at mu
  std::vector<cplx> t;  // chart coordinates
  double residual = 0.0;
  int multiplicity = 1;  // stack kernel dimension at mu
};

// Intersections of the locus with span{u, basis...} in the chart
// mu(t) = u + sum_i t_i v_i: joint eigenvalues of A_i = gamma(V)^{-1}
// gamma(V, i, u) via a seeded random combination, each candidate validated
// against the full wedge stack and deduplicated. Errors with
// singular-base-plane when gamma(V) is singular.
std::vector<SlicePoint> slice_intersections(const GammaTensor& g, const std::vector<Vec>& basis,
                                            const Vec& u, std::uint64_t seed,
                                            const Tolerances& tol = {});

struct CommutationReport {
  double max_commutator = 0.0;           // max relative ||A_i A_j - A_j A_i||
  double eigenvector_conditioning = 0.0; // sv_min/sv_max of a generic eigenbasis
  bool commuting = false;
  bool semisimple = false;
};

CommutationReport pencil_commutation_report(const GammaTensor& g, const std::vector<Vec>& basis,
                                            const Vec& u, std::uint64_t seed,
                                            const Tolerances& tol = {});

// Geometric degree of the locus (k = 1): minimum over seeded hyperplane
// slices of the total stack-kernel dimension across validated intersection
// points.
int degree(const GammaTensor& g, std::uint64_t seed, int trials = 5, const Tolerances& tol = {});

// Nondegenerate and the locus degree equals the block size n.
bool is_very_reasonable(const GammaTensor& g, std::uint64_t seed, const Tolerances& tol = {});

// det gamma(span{flag..., w1 + t w2}) as a polynomial in t, recovered by
// interpolation at n+1 nodes. flag holds d-2 vectors; k = 1 only.
Poly schubert_det_profile(const GammaTensor& g, const std::vector<Vec>& flag, const Vec& w1,
                          const Vec& w2);

// Max relative residual of the quadratic reconstruction identities pinned at
// an invertible block I0: for every I and p in I0 \ I, with J = I + {p},
//   gamma_I = sum_{j in J, j not in I0}
//             sign(J,j) * sign(J,p) * (-1)^{k - pos(p) + 1}
//             * gamma_{J \ {j}} * gamma_{I0}^{-1} * gamma_{(I0 \ {p}) + {j}}
// where pos(p) is the position of p inside I0. Errors with sign-calibration
// when the globally flipped sign convention fits the data decisively better.
double vr_struct_residual(const GammaTensor& g, const IndexSet& I0, const Tolerances& tol = {});

}  // namespace curvedet
