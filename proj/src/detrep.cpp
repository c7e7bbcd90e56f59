#include "curvedet/detrep.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "curvedet/errors.hpp"
#include "curvedet/rng.hpp"

namespace curvedet {

namespace {

Vec random_vec(Rng& rng, int size, bool complex_parts) {
  Vec v(size);
  for (int i = 0; i < size; ++i)
    v(i) = cplx(rng.uniform(-1.0, 1.0), complex_parts ? rng.uniform(-1.0, 1.0) : 0.0);
  return v;
}

std::vector<Vec> random_basis(Rng& rng, int size, int count, bool complex_parts) {
  std::vector<Vec> basis(count);
  for (int i = 0; i < count; ++i) basis[i] = random_vec(rng, size, complex_parts);
  return basis;
}

Mat invert_or_fail(const Mat& m, double rel_cut, const char* what, const char* code) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  require(sv.size() > 0 && sv(0) > 0.0 && sv(sv.size() - 1) > rel_cut * sv(0), code,
          std::string(what) + ": contraction is singular");
  return m.inverse();
}

void require_independent(const std::vector<Vec>& vectors, const char* what) {
  const int rows = static_cast<int>(vectors[0].size());
  Mat m(rows, static_cast<int>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors[i];
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  require(m.cols() <= m.rows() && sv(0) > 0.0 && sv(sv.size() - 1) > 1e-10 * sv(0),
          "invalid-argument", std::string(what) + ": dependent input vectors");
}

// Pencil family A_i = gamma(V)^{-1} gamma(V, i, u).
std::vector<Mat> joint_pencils(const GammaTensor& g, const std::vector<Vec>& basis, const Vec& u) {
  const Mat m0 = contract_subspace(g, basis);
  const Mat inv = invert_or_fail(m0, 1e-8, "joint_pencils", "singular-base-plane");
  std::vector<Mat> a(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    a[i] = inv * contract_replaced(g, basis, static_cast<int>(i), u);
  return a;
}

}  // namespace

Mat wedge_stack(const GammaTensor& g, const Vec& mu) {
  const auto blocks = wedge_point(g, mu);
  const int rows = static_cast<int>(blocks.size()) * g.n;
  Mat stack(rows, g.n);
  int r = 0;
  for (const auto& [J, block] : blocks) {
    stack.block(r, 0, g.n, g.n) = block;
    r += g.n;
  }
  return stack;
}

double membership_residual(const GammaTensor& g, const Vec& mu) {
  require(mu.norm() > 0.0, "invalid-argument", "membership_residual: zero point");
  const Mat stack = wedge_stack(g, mu);
  Eigen::JacobiSVD<Mat> svd(stack);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0.0;
  // Floor the scale by the tensor itself: near a locus point of a width-1
  // stack every singular value is tiny and sv(0) alone would report 1.
  return sv(sv.size() - 1) / std::max(sv(0), g.scale() * mu.norm());
}

int kernel_dimension(const GammaTensor& g, const Vec& mu, const Tolerances& tol) {
  require(mu.norm() > 0.0, "invalid-argument", "kernel_dimension: zero point");
  const Mat stack = wedge_stack(g, mu);
  Eigen::JacobiSVD<Mat> svd(stack);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return g.n;
  const double cut = tol.rank_rel * std::max(sv(0), g.scale() * mu.norm());
  int dim = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= cut) ++dim;
  return dim + (g.n - static_cast<int>(sv.size()));
}

bool is_on_locus(const GammaTensor& g, const Vec& mu, const Tolerances& tol) {
  return kernel_dimension(g, mu, tol) > 0;
}

Vec kernel_vector(const GammaTensor& g, const Vec& mu) {
  const Mat stack = wedge_stack(g, mu);
  Eigen::JacobiSVD<Mat> svd(stack, Eigen::ComputeFullV);
  Vec v = svd.matrixV().col(g.n - 1);
  return v / v.norm();
}

bool is_nondegenerate(const GammaTensor& g, std::uint64_t seed, const Tolerances& tol) {
  Rng rng(seed);
  for (int trial = 0; trial < 8; ++trial) {
    const auto basis = random_basis(rng, g.d + 1, g.d - g.k, /*complex_parts=*/true);
    const Mat m = contract_subspace(g, basis);
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() > 0 && sv(0) > 1e-12 * g.scale() && sv(sv.size() - 1) > 1e-8 * sv(0))
      return true;
  }
  (void)tol;
  return false;
}

std::vector<SlicePoint> slice_intersections(const GammaTensor& g, const std::vector<Vec>& basis,
                                            const Vec& u, std::uint64_t seed,
                                            const Tolerances& tol) {
  const int m = g.d - g.k;
  require(static_cast<int>(basis.size()) == m, "dimension-mismatch",
          "slice_intersections: basis size");
  require(u.size() == g.d + 1, "dimension-mismatch", "slice_intersections: point size");
  {
    std::vector<Vec> extended = basis;
    extended.push_back(u);
    require_independent(extended, "slice_intersections");
  }
  const auto a = joint_pencils(g, basis, u);

  Rng rng(seed);
  Mat combo = Mat::Zero(g.n, g.n);
  for (const Mat& ai : a) combo += cplx(rng.uniform(-1.0, 1.0)) * ai;
  Eigen::ComplexEigenSolver<Mat> es(combo, /*computeEigenvectors=*/true);
  require(es.info() == Eigen::Success, "numerical-failure", "slice_intersections: eigensolver");

  std::vector<SlicePoint> out;
  for (int col = 0; col < g.n; ++col) {
    Vec w = es.eigenvectors().col(col);
    const double wn = w.norm();
    if (!(wn > 0.0)) continue;
    w /= wn;
    SlicePoint pt;
    pt.t.resize(m);
    Vec mu = u;
    for (int i = 0; i < m; ++i) {
      pt.t[i] = -(w.adjoint() * a[i] * w).value();
      mu += pt.t[i] * basis[i];
    }
    const double mun = mu.norm();
    if (!(mun > 0.0)) continue;
    pt.mu = mu / mun;
    pt.residual = membership_residual(g, pt.mu);
    if (pt.residual > tol.slice_accept) continue;
    bool duplicate = false;
    for (const SlicePoint& prev : out)
      if (std::abs(1.0 - std::abs((prev.mu.adjoint() * pt.mu).value())) < 1e-8) duplicate = true;
    if (duplicate) continue;
    pt.kernel = kernel_vector(g, pt.mu);
    pt.multiplicity = kernel_dimension(g, pt.mu, tol);
    out.push_back(std::move(pt));
  }
  std::sort(out.begin(), out.end(), [](const SlicePoint& x, const SlicePoint& y) {
    for (std::size_t i = 0; i < x.t.size(); ++i) {
      if (x.t[i].real() != y.t[i].real()) return x.t[i].real() < y.t[i].real();
      if (x.t[i].imag() != y.t[i].imag()) return x.t[i].imag() < y.t[i].imag();
    }
    return false;
  });
  return out;
}

CommutationReport pencil_commutation_report(const GammaTensor& g, const std::vector<Vec>& basis,
                                            const Vec& u, std::uint64_t seed,
                                            const Tolerances& tol) {
  const auto a = joint_pencils(g, basis, u);
  CommutationReport rep;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double denom = std::max(1.0, a[i].norm() * a[j].norm());
      rep.max_commutator = std::max(rep.max_commutator, (a[i] * a[j] - a[j] * a[i]).norm() / denom);
    }
  Rng rng(seed);
  Mat combo = Mat::Zero(g.n, g.n);
  for (const Mat& ai : a) combo += cplx(rng.uniform(-1.0, 1.0)) * ai;
  Eigen::ComplexEigenSolver<Mat> es(combo, /*computeEigenvectors=*/true);
  require(es.info() == Eigen::Success, "numerical-failure", "pencil_commutation_report");
  Eigen::JacobiSVD<Mat> svd(es.eigenvectors());
  const auto& sv = svd.singularValues();
  rep.eigenvector_conditioning = sv(0) > 0.0 ? sv(sv.size() - 1) / sv(0) : 0.0;
  rep.commuting = rep.max_commutator < 1e-8;
  rep.semisimple = rep.eigenvector_conditioning > std::sqrt(tol.rank_rel);
  return rep;
}

int degree(const GammaTensor& g, std::uint64_t seed, int trials, const Tolerances& tol) {
  require(g.k == 1, "invalid-argument", "degree: defined for k = 1");
  require(trials >= 1, "invalid-argument", "degree: trials < 1");
  Rng base(seed);
  std::vector<int> sums;
  for (int trial = 0; trial < trials; ++trial) {
    for (int attempt = 0; attempt < 3; ++attempt) {
      Rng draw = base.fork(16 * static_cast<std::uint64_t>(trial) + attempt + 1);
      const auto basis = random_basis(draw, g.d + 1, g.d - 1, /*complex_parts=*/true);
      const Vec u = random_vec(draw, g.d + 1, /*complex_parts=*/true);
      try {
        const auto pts = slice_intersections(g, basis, u, draw.next_u64(), tol);
        int sum = 0;
        for (const SlicePoint& pt : pts) sum += pt.multiplicity;
        sums.push_back(sum);
        break;
      } catch (const error& e) {
        if (e.code() != "transversality-failure" && e.code() != "singular-base-plane") throw;
      }
    }
  }
  require(!sums.empty(), "transversality-failure", "degree: no usable slice");
  return *std::min_element(sums.begin(), sums.end());
}

bool is_very_reasonable(const GammaTensor& g, std::uint64_t seed, const Tolerances& tol) {
  require(g.k == 1, "invalid-argument", "is_very_reasonable: defined for k = 1");
  if (!is_nondegenerate(g, seed, tol)) return false;
  return degree(g, seed, 5, tol) == g.n;
}

Poly schubert_det_profile(const GammaTensor& g, const std::vector<Vec>& flag, const Vec& w1,
                          const Vec& w2) {
  require(g.k == 1, "invalid-argument", "schubert_det_profile: defined for k = 1");
  require(static_cast<int>(flag.size()) == g.d - 2, "dimension-mismatch",
          "schubert_det_profile: flag size");
  const int n = g.n;
  std::vector<Vec> basis = flag;
  basis.push_back(w1);
  {
    std::vector<Vec> extended = basis;
    extended.push_back(w2);
    require_independent(extended, "schubert_det_profile");
  }
  Eigen::MatrixXcd vander(n + 1, n + 1);
  Vec values(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double t = j - 0.5 * n;
    basis.back() = w1 + cplx(t) * w2;
    values(j) = contract_subspace(g, basis).determinant();
    cplx power = 1.0;
    for (int i = 0; i <= n; ++i) {
      vander(j, i) = power;
      power *= t;
    }
  }
  const Vec coeffs = vander.colPivHouseholderQr().solve(values);
  std::vector<cplx> c(coeffs.data(), coeffs.data() + n + 1);
  return Poly(std::move(c));
}

double vr_struct_residual(const GammaTensor& g, const IndexSet& I0, const Tolerances& tol) {
  require(static_cast<int>(I0.size()) == g.k + 1 && strictly_increasing(I0) && I0.front() >= 0 &&
              I0.back() <= g.d,
          "invalid-argument", "vr_struct_residual: bad pinned index set");
  const Mat pinned = g.coeff(I0);
  Eigen::JacobiSVD<Mat> svd(pinned);
  const auto& sv = svd.singularValues();
  require(sv.size() > 0 && sv(0) > 0.0 && sv(sv.size() - 1) > 1e-10 * sv(0), "singular-base-plane",
          "vr_struct_residual: pinned block not invertible");
  const Mat pinned_inv = pinned.inverse();
  const double scale = std::max(g.scale(), 1e-300);

  double worst_derived = 0.0;
  double worst_flipped = 0.0;
  for (const IndexSet& I : combinations(g.d, g.k + 1)) {
    for (int p : I0) {
      if (contains(I, p)) continue;
      const IndexSet J = inserted(I, p);
      int pos = 0;
      while (I0[pos] != p) ++pos;
      Mat rhs = Mat::Zero(g.n, g.n);
      for (int j : J) {
        if (contains(I0, j)) continue;
        const IndexSet partner = inserted(erased(I0, p), j);
        int posj = 0;
        while (partner[static_cast<std::size_t>(posj)] != j) ++posj;
        // Exchange relation: gamma_I = sum_j rs(J,j) rs(J,p) (-1)^(pos+posj+1)
        // gamma_{J-j} gamma_{I0}^{-1} gamma_{(I0-p)+j}; scalar case reduces to
        // the Grassmann-Pluecker shuffle of p_I p_{I0}.
        const int sign =
            removal_sign(J, j) * removal_sign(J, p) * (((pos + posj) % 2 == 0) ? -1 : 1);
        rhs += static_cast<double>(sign) *
               (g.coeff(erased(J, j)) * pinned_inv * g.coeff(partner));
      }
      const Mat lhs = g.coeff(I);
      worst_derived = std::max(worst_derived, (lhs - rhs).norm() / scale);
      worst_flipped = std::max(worst_flipped, (lhs + rhs).norm() / scale);
    }
  }
  require(!(worst_derived > 1e-6 && worst_flipped < 0.01 * worst_derived), "sign-calibration",
          "vr_struct_residual: flipped sign convention fits decisively better");
  (void)tol;
  return worst_derived;
}

}  // namespace curvedet
