#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvedet/curves.hpp"
#include "curvedet/detrep.hpp"
#include "curvedet/exterior.hpp"
#include "curvedet/ratfunc.hpp"

namespace curvedet {

// Dual data of a codimension-2 subspace V relative to a curve: covectors
// (a, b) spanning the annihilator of V, phase-normalized so the largest entry
// of a is real positive, with pullbacks A = a . mu and B = b . mu and their
// quotients by mu_0.
struct KappaPair {
  Vec a, b;
  Poly A, B;
  RationalFunction kappa0, kappa1;
};

KappaPair kappa_pair(const RationalCurve& curve, const std::vector<Vec>& basis, double tol = 1e-9);

struct WitnessCheck {
  bool witness = false;
  bool disjoint = false;
  std::string reason;  // first failed condition; empty when witness
  DividingReport dividing;
  KappaPair pair;
};

// Exact witness test: V is a witness when the curve misses P(V) (no common
// root of A and B, no common degree drop at infinity) and B/A is dividing,
// i.e. every real hyperplane through V meets the curve in real points only.
WitnessCheck is_witness_exact(const RationalCurve& curve, const std::vector<Vec>& basis,
                              std::uint64_t seed, double tol = 1e-8);

// Sign of the Hermitian matrix gamma(V): +1 when positive definite, -1 when
// negative definite, empty otherwise. For a representation built from a real
// curve with real divisor this decides the witness property of V.
std::optional<int> is_witness_definite(const GammaTensor& g, const std::vector<Vec>& basis,
                                       double tol = 1e-9);

struct SectionRealityReport {
  bool all_real = true;
  int sections_checked = 0;
  std::optional<double> failing_angle;  // pencil angle with a non-real root
  std::optional<cplx> complex_root;
};

// Samples the real hyperplane pencil through V (V must miss the curve) and
// root-checks each section. A non-real root disproves the witness property;
// all-real sampling is only supporting evidence.
SectionRealityReport sampled_section_reality(const RationalCurve& curve,
                                             const std::vector<Vec>& basis, int samples,
                                             std::uint64_t seed, double tol = 1e-8);

struct WitnessReport {
  WitnessCheck exact;
  // Empty until the definiteness cross-check runs; then 0 for indefinite or
  // +1 / -1 for the definite sign of gamma(V).
  std::optional<int> definite_sign;
  std::optional<SectionRealityReport> sampled;
  bool witness = false;  // the exact verdict
};

// Runs the exact test, then the definiteness cross-check on a real-divisor
// representation (when one is reachable) and the sampled-reality check
// (when V misses the curve). Errors with cross-check-mismatch when a check
// that ran contradicts the exact verdict.
WitnessReport witness_report(const RationalCurve& curve, const std::vector<Vec>& basis,
                             std::uint64_t seed, double tol = 1e-8, int samples = 64);

// Spectral norm of the difference of the orthogonal projections onto the two
// spans (a metric on the Grassmannian).
double grassmann_distance(const std::vector<Vec>& basis_u, const std::vector<Vec>& basis_v);

struct LmiSystem {
  int d = 0, k = 0, n = 0;
  std::vector<IndexSet> sets;  // all index sets of size d - k, lex order
  std::vector<Mat> coeffs;     // matching Hermitian coefficient blocks
};

// Witness regions as a linear matrix inequality in Plucker coordinates:
// M(p) = sum_J p_J C_J satisfies M(p(V)) = gamma(V) for every V, so
// V is in the region exactly when M(p(V)) is definite.
LmiSystem lmi_export(const GammaTensor& g);

// M(p) for the Plucker vector of the given basis.
Mat lmi_evaluate(const LmiSystem& sys, const std::vector<Vec>& basis);

struct ConvexityProbe {
  int points = 0;
  int definite_points = 0;
  int runs = 0;  // maximal blocks of consecutive definite grid points
  bool single_interval = false;
  double run_lo = 0.0, run_hi = 0.0;  // extent of the definite set when found
};

// Scans the Hermitian pencil gamma(V(t)), V(t) = basis with vector `slot`
// moved along u, over a t grid. The definite set of a Hermitian pencil is an
// interval, so a clean scan reports a single run.
ConvexityProbe slice_interval_scan(const GammaTensor& g, const std::vector<Vec>& basis, int slot,
                                   const Vec& u, double t_lo, double t_hi, int points,
                                   double tol = 1e-9);

struct MidpointProbe {
  int trials = 0;
  int tested = 0;             // pairs definite with equal signs
  int skipped_mixed = 0;      // pairs definite with opposite signs
  int skipped_indefinite = 0; // pairs with an indefinite or degenerate member
  int violations = 0;         // midpoints breaking definiteness
};

// Random pairs (w1, w2) extending the fixed stem V0 by one vector; whenever
// gamma(span(V0, w1)) and gamma(span(V0, w2)) are definite of the same sign,
// the midpoint extension must be too.
MidpointProbe slice_convexity_probe(const GammaTensor& g, const std::vector<Vec>& v0, int trials,
                                    std::uint64_t seed, double tol = 1e-9);

struct PathCheck {
  bool all_witness = true;
  int checked = 0;
  int first_failure = -1;  // index of the first non-witness plane
  std::vector<double> step_distance;  // consecutive Grassmannian distances
};

// Exact witness test applied to every plane of the path.
PathCheck witness_path_check(const RationalCurve& curve,
                             const std::vector<std::vector<Vec>>& planes, std::uint64_t seed,
                             double tol = 1e-8);

}  // namespace curvedet
