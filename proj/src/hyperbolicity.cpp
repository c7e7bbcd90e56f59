#include "curvedet/hyperbolicity.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "curvedet/bezoutian.hpp"
#include "curvedet/errors.hpp"
#include "curvedet/rng.hpp"

namespace curvedet {

namespace {

constexpr double kPi = 3.14159265358979323846;

double poly_bound(const Poly& p, cplx at) {
  return p.max_abs_coeff() * std::pow(std::max(1.0, std::abs(at)), std::max(0, p.degree()));
}

bool nearly_real(const Vec& v) {
  double im = 0.0, norm = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    im = std::max(im, std::abs(v(i).imag()));
    norm = std::max(norm, std::abs(v(i)));
  }
  return im <= 1e-8 * std::max(1e-300, norm);
}

Poly covector_pullback(const Vec& c, const std::vector<Poly>& mu) {
  Poly acc;
  for (std::size_t j = 0; j < mu.size(); ++j) acc = acc + c(static_cast<Eigen::Index>(j)) * mu[j];
  return acc;
}

void require_hermitian(const GammaTensor& g, const char* what) {
  const double scale = std::max(1.0, g.scale());
  for (const auto& [I, block] : g.entries)
    require((block - block.adjoint()).norm() <= 1e-8 * scale, "not-hermitian",
            std::string(what) + ": coefficient block is not Hermitian");
}

// Sign of a Hermitian matrix: +1 / -1 for definite, 0 otherwise.
int hermitian_sign(const Mat& m, double scale_floor, double tol) {
  require((m - m.adjoint()).norm() <= 1e-8 * std::max(1.0, m.norm()), "not-hermitian",
          "matrix is not Hermitian to tolerance");
  Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) * 0.5);
  require(es.info() == Eigen::Success, "numerical-failure", "hermitian_sign: eigensolver");
  const auto& ev = es.eigenvalues();
  const double top = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  if (top <= 1e-12 * std::max(1.0, scale_floor)) return 0;
  if (ev(0) > tol * top) return 1;
  if (ev(ev.size() - 1) < -tol * top) return -1;
  return 0;
}

// Empty string when the curve misses P(span V); otherwise the reason.
std::string disjoint_failure(const KappaPair& kp, int n, double tol) {
  const int deg_a = effective_degree(kp.A, 1e-10);
  const int deg_b = effective_degree(kp.B, 1e-10);
  if (deg_a < 0 || deg_b < 0) return "subspace annihilates the curve span";
  if (deg_a < n && deg_b < n) return "curve meets the subspace at infinity";
  const Poly a_trim = kp.A.trimmed(1e-10);
  const Poly b_trim = kp.B.trimmed(1e-10);
  for (cplx r : roots(a_trim))
    if (std::abs(b_trim(r)) <= tol * std::max(1e-300, poly_bound(b_trim, r)))
      return "curve meets the subspace at a finite point";
  return "";
}

}  // namespace

KappaPair kappa_pair(const RationalCurve& curve, const std::vector<Vec>& basis, double tol) {
  const CurveValidation v = validate_curve(curve);
  if (!v.ok) fail(v.reason, "kappa_pair: " + v.detail);
  require(static_cast<int>(basis.size()) == curve.d() - 1, "dimension-mismatch",
          "kappa_pair: basis must have d - 1 vectors");
  for (const Poly& p : curve.mu)
    require(p.is_real(1e-9), "invalid-argument", "kappa_pair: curve is not real");
  for (const Vec& b : basis)
    require(nearly_real(b), "invalid-argument", "kappa_pair: subspace basis is not real");
  KappaPair out;
  auto [a, b] = dual_plucker_pair(basis, tol);
  int jmax = 0;
  for (int j = 1; j < a.size(); ++j)
    if (std::abs(a(j)) > std::abs(a(jmax))) jmax = j;
  const cplx phase = a(jmax) / std::abs(a(jmax));
  out.a = a / phase;
  out.b = b * phase;
  out.A = covector_pullback(out.a, curve.mu);
  out.B = covector_pullback(out.b, curve.mu);
  out.kappa0 = RationalFunction::make(out.A, curve.mu[0]);
  out.kappa1 = RationalFunction::make(out.B, curve.mu[0]);
  return out;
}

WitnessCheck is_witness_exact(const RationalCurve& curve, const std::vector<Vec>& basis,
                              std::uint64_t seed, double tol) {
  WitnessCheck out;
  out.pair = kappa_pair(curve, basis);
  const CurveValidation v = validate_curve(curve, tol);
  out.reason = disjoint_failure(out.pair, v.n, tol);
  if (!out.reason.empty()) return out;
  out.disjoint = true;
  out.dividing = is_dividing(
      RationalFunction::make(out.pair.B.trimmed(1e-10), out.pair.A.trimmed(1e-10)), seed);
  out.witness = out.dividing.verdict;
  if (!out.witness)
    out.reason = "a real hyperplane through the subspace meets the curve off the real line";
  return out;
}

std::optional<int> is_witness_definite(const GammaTensor& g, const std::vector<Vec>& basis,
                                       double tol) {
  require_hermitian(g, "is_witness_definite");
  const Mat m = contract_subspace(g, basis);
  const int sign = hermitian_sign(m, g.scale(), tol);
  if (sign == 0) return std::nullopt;
  return sign;
}

SectionRealityReport sampled_section_reality(const RationalCurve& curve,
                                             const std::vector<Vec>& basis, int samples,
                                             std::uint64_t seed, double tol) {
  require(samples >= 0, "invalid-argument", "sampled_section_reality: negative sample count");
  const KappaPair kp = kappa_pair(curve, basis);
  {
    const CurveValidation v = validate_curve(curve);
    const std::string blocked = disjoint_failure(kp, v.n, 1e-8);
    require(blocked.empty(), "invalid-argument", "sampled_section_reality: " + blocked);
  }
  const Poly a_re = kp.A.real_part();
  const Poly b_re = kp.B.real_part();
  Rng rng(seed);
  SectionRealityReport rep;
  for (int s = 0; s < samples; ++s) {
    const double theta = kPi * (s + 0.5 * rng.uniform01()) / static_cast<double>(samples);
    const Poly section = (std::cos(theta) * a_re + std::sin(theta) * b_re).trimmed(1e-12);
    if (section.degree() < 1) continue;
    for (cplx r : roots(section)) {
      if (std::abs(r.imag()) > tol * std::max(1.0, std::abs(r))) {
        rep.all_real = false;
        rep.failing_angle = theta;
        rep.complex_root = r;
        return rep;
      }
    }
    ++rep.sections_checked;
  }
  return rep;
}

WitnessReport witness_report(const RationalCurve& curve, const std::vector<Vec>& basis,
                             std::uint64_t seed, double tol, int samples) {
  WitnessReport rep;
  rep.exact = is_witness_exact(curve, basis, seed, tol);
  rep.witness = rep.exact.witness;

  // Definiteness cross-check on a real-divisor representation, with the
  // subspace carried through the same change of coordinates.
  try {
    const NormalizationResult nr =
        normalize_coordinates(curve, seed ^ 0x5bf03635ULL, NormalizeMode::real_section);
    const GammaTensor g = construct_gamma(nr.curve);
    std::vector<Vec> moved(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) moved[i] = nr.change * basis[i];
    const std::optional<int> sign = is_witness_definite(g, moved);
    rep.definite_sign = sign.value_or(0);
  } catch (const error&) {
    // No real-divisor representation reachable; skip this cross-check.
  }
  if (rep.definite_sign.has_value())
    require((*rep.definite_sign != 0) == rep.witness, "cross-check-mismatch",
            "definiteness test disagrees with the exact witness test");

  if (rep.exact.disjoint) {
    rep.sampled = sampled_section_reality(curve, basis, samples, seed ^ 0xc2b2ae35ULL, tol);
    if (rep.witness)
      require(rep.sampled->all_real, "cross-check-mismatch",
              "sampled pencil section has a non-real root but the exact test passed");
  }
  return rep;
}

double grassmann_distance(const std::vector<Vec>& basis_u, const std::vector<Vec>& basis_v) {
  require(!basis_u.empty() && basis_u.size() == basis_v.size(), "invalid-argument",
          "grassmann_distance: subspace dimensions differ");
  const Eigen::Index amb = basis_u[0].size();
  const int m = static_cast<int>(basis_u.size());
  Mat u(amb, m), v(amb, m);
  for (int i = 0; i < m; ++i) {
    require(basis_u[i].size() == amb && basis_v[i].size() == amb, "invalid-argument",
            "grassmann_distance: ambient dimensions differ");
    u.col(i) = basis_u[i];
    v.col(i) = basis_v[i];
  }
  for (const Mat& w : {u, v}) {
    Eigen::JacobiSVD<Mat> svd(w);
    const auto& sv = svd.singularValues();
    require(sv(0) > 0.0 && sv(sv.size() - 1) > 1e-10 * sv(0), "degenerate-span",
            "grassmann_distance: basis is not full rank");
  }
  const Mat qu = Eigen::HouseholderQR<Mat>(u).householderQ() * Mat::Identity(amb, m);
  const Mat qv = Eigen::HouseholderQR<Mat>(v).householderQ() * Mat::Identity(amb, m);
  const Mat diff = qu * qu.adjoint() - qv * qv.adjoint();
  Eigen::JacobiSVD<Mat> svd(diff);
  return svd.singularValues()(0);
}

LmiSystem lmi_export(const GammaTensor& g) {
  require_hermitian(g, "lmi_export");
  LmiSystem sys;
  sys.d = g.d;
  sys.k = g.k;
  sys.n = g.n;
  for (const IndexSet& J : combinations(g.d, g.d - g.k)) {
    const IndexSet I = complement(J, g.d);
    sys.sets.push_back(J);
    sys.coeffs.push_back(static_cast<double>(complement_sign(I, g.d)) * g.coeff(I));
  }
  return sys;
}

Mat lmi_evaluate(const LmiSystem& sys, const std::vector<Vec>& basis) {
  require(static_cast<int>(basis.size()) == sys.d - sys.k, "dimension-mismatch",
          "lmi_evaluate: basis size");
  const auto p = plucker_coords(basis);
  Mat m = Mat::Zero(sys.n, sys.n);
  for (std::size_t i = 0; i < sys.sets.size(); ++i) {
    const auto it = p.find(sys.sets[i]);
    require(it != p.end(), "dimension-mismatch", "lmi_evaluate: Plucker coordinate missing");
    m += it->second * sys.coeffs[i];
  }
  return m;
}

ConvexityProbe slice_interval_scan(const GammaTensor& g, const std::vector<Vec>& basis, int slot,
                                   const Vec& u, double t_lo, double t_hi, int points,
                                   double tol) {
  require(points >= 2, "invalid-argument", "slice_interval_scan: points < 2");
  require(slot >= 0 && slot < static_cast<int>(basis.size()), "invalid-argument",
          "slice_interval_scan: slot out of range");
  require(t_hi > t_lo, "invalid-argument", "slice_interval_scan: empty range");
  require_hermitian(g, "slice_interval_scan");
  ConvexityProbe probe;
  probe.points = points;
  std::vector<Vec> moved = basis;
  int pos_runs = 0, neg_runs = 0;
  int prev = 0;
  bool have_run = false;
  for (int i = 0; i < points; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / static_cast<double>(points - 1);
    moved[slot] = basis[slot] + cplx(t) * u;
    const int sign = hermitian_sign(contract_subspace(g, moved), g.scale(), tol);
    if (sign != 0) {
      ++probe.definite_points;
      if (sign != prev) (sign > 0 ? pos_runs : neg_runs) += 1;
      if (!have_run) {
        probe.run_lo = t;
        have_run = true;
      }
      probe.run_hi = t;
    }
    prev = sign;
  }
  probe.runs = pos_runs + neg_runs;
  probe.single_interval = pos_runs <= 1 && neg_runs <= 1;
  return probe;
}

MidpointProbe slice_convexity_probe(const GammaTensor& g, const std::vector<Vec>& v0, int trials,
                                    std::uint64_t seed, double tol) {
  require(trials >= 0, "invalid-argument", "slice_convexity_probe: negative trial count");
  require(static_cast<int>(v0.size()) == g.d - g.k - 1, "invalid-argument",
          "slice_convexity_probe: stem must have d - k - 1 vectors");
  for (const Vec& v : v0) {
    require(v.size() == g.d + 1, "invalid-argument", "slice_convexity_probe: stem vector size");
    require(nearly_real(v), "invalid-argument", "slice_convexity_probe: stem must be real");
  }
  require_hermitian(g, "slice_convexity_probe");
  MidpointProbe probe;
  probe.trials = trials;
  Rng rng(seed);
  std::vector<Vec> basis = v0;
  basis.emplace_back(Vec::Zero(g.d + 1));
  const auto sign_at = [&](const Vec& w) {
    basis.back() = w;
    try {
      return hermitian_sign(contract_subspace(g, basis), g.scale(), tol);
    } catch (const error&) {
      return 0;
    }
  };
  for (int s = 0; s < trials; ++s) {
    Vec w1(g.d + 1), w2(g.d + 1);
    for (int j = 0; j <= g.d; ++j) {
      w1(j) = rng.uniform(-1.0, 1.0);
      w2(j) = rng.uniform(-1.0, 1.0);
    }
    const int s1 = sign_at(w1);
    const int s2 = sign_at(w2);
    if (s1 == 0 || s2 == 0) {
      ++probe.skipped_indefinite;
      continue;
    }
    if (s1 != s2) {
      ++probe.skipped_mixed;
      continue;
    }
    ++probe.tested;
    if (sign_at((w1 + w2) * 0.5) != s1) ++probe.violations;
  }
  return probe;
}

PathCheck witness_path_check(const RationalCurve& curve,
                             const std::vector<std::vector<Vec>>& planes, std::uint64_t seed,
                             double tol) {
  require(!planes.empty(), "invalid-argument", "witness_path_check: empty path");
  PathCheck check;
  Rng rng(seed);
  for (std::size_t i = 0; i < planes.size(); ++i) {
    bool ok = false;
    try {
      ok = is_witness_exact(curve, planes[i], rng.next_u64(), tol).witness;
    } catch (const error&) {
      ok = false;
    }
    ++check.checked;
    if (!ok && check.first_failure < 0) check.first_failure = static_cast<int>(i);
    if (i > 0) check.step_distance.push_back(grassmann_distance(planes[i - 1], planes[i]));
  }
  check.all_witness = check.first_failure < 0;
  return check;
}

}  // namespace curvedet
