#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "curvedet/detrep.hpp"
#include "curvedet/errors.hpp"
#include "curvedet/exterior.hpp"
#include "curvedet/rng.hpp"
#include "fixtures.hpp"

using namespace curvedet;
using fixtures::thrown_code;
using fixtures::unit;
using fixtures::vec;

namespace {

Vec random_real_vec(Rng& rng, int dim) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.uniform(-1.0, 1.0);
  return v;
}

// Scalar representation of the line span{u, v} in P^3: entries are the
// Plucker coordinates, so gamma ^ mu stacks the coefficients of p ^ mu and
// the locus is exactly the line.
GammaTensor line_tensor(const Vec& u, const Vec& v) {
  GammaTensor g = make_gamma(3, 1, 1);
  for (const IndexSet& ij : combinations(3, 2)) {
    Mat m(1, 1);
    m(0, 0) = u(ij[0]) * v(ij[1]) - u(ij[1]) * v(ij[0]);
    g.set(ij, m);
  }
  return g;
}

GammaTensor block_sum(const GammaTensor& a, const GammaTensor& b) {
  GammaTensor out = make_gamma(a.d, a.k, a.n + b.n);
  for (const IndexSet& I : combinations(a.d, a.k + 1)) {
    Mat m = Mat::Zero(out.n, out.n);
    m.topLeftCorner(a.n, a.n) = a.coeff(I);
    m.bottomRightCorner(b.n, b.n) = b.coeff(I);
    out.set(I, m);
  }
  return out;
}

// gamma with every block padded by a zero row and column: the locus becomes
// the whole space, so the tensor stops being a proper representation.
GammaTensor zero_padded(const GammaTensor& g) {
  GammaTensor out = make_gamma(g.d, g.k, g.n + 1);
  for (const auto& [I, block] : g.entries) {
    Mat m = Mat::Zero(out.n, out.n);
    m.topLeftCorner(g.n, g.n) = block;
    out.set(I, m);
  }
  return out;
}

}  // namespace

TEST_SUITE("detrep") {

TEST_CASE("membership and kernel on the twisted cubic") {
  const GammaTensor g = fixtures::twisted_cubic();

  // t = 2 on the curve
  const Vec on = vec({1.0, 2.0, 4.0, 8.0});
  CHECK(membership_residual(g, on) < 1e-12);
  CHECK(kernel_dimension(g, on) == 1);
  CHECK(is_on_locus(g, on));

  // kernel direction is (1, t, t^2) up to phase
  const Vec kv = kernel_vector(g, on);
  Vec want = vec({1.0, 2.0, 4.0});
  want /= want.norm();
  CHECK(std::abs(std::abs((kv.adjoint() * want).value()) - 1.0) < 1e-10);

  const Vec off = vec({1.0, 0.0, 1.0, 0.0});
  CHECK(membership_residual(g, off) > 1e-3);
  CHECK(kernel_dimension(g, off) == 0);
  CHECK_FALSE(is_on_locus(g, off));

  CHECK(thrown_code([&] { membership_residual(g, Vec::Zero(4)); }) == "invalid-argument");
  CHECK(thrown_code([&] { kernel_dimension(g, Vec::Zero(4)); }) == "invalid-argument");
}

TEST_CASE("plane-curve scalar tensor: locus is the line mu_2 = 0") {
  GammaTensor g = make_gamma(2, 1, 1);
  g.set({0, 1}, fixtures::mat(1, {1.0}));
  CHECK(membership_residual(g, vec({1.0, 5.0, 0.0})) == 0.0);
  CHECK(kernel_dimension(g, vec({1.0, 5.0, 0.0})) == 1);
  CHECK(kernel_dimension(g, vec({0.0, 0.0, 1.0})) == 0);
  CHECK(is_nondegenerate(g, 3));
}

TEST_CASE("is_nondegenerate flags collapsed tensors") {
  CHECK(is_nondegenerate(fixtures::twisted_cubic(), 5));
  // no entries: every contraction vanishes
  CHECK_FALSE(is_nondegenerate(make_gamma(3, 1, 2), 5));
  // common zero row/column: every contraction is singular
  CHECK_FALSE(is_nondegenerate(zero_padded(fixtures::twisted_cubic()), 5));
  CHECK_FALSE(is_very_reasonable(zero_padded(fixtures::twisted_cubic()), 5));
}

TEST_CASE("slice of the twisted cubic by the chart e0 + e3 + span{e1, e2}") {
  // Curve points inside the chart satisfy mu_0 = mu_3, i.e. t^3 = 1, and the
  // chart coordinates are (t, t^2) at each cube root of unity.
  const GammaTensor g = fixtures::twisted_cubic();
  const std::vector<Vec> basis{unit(4, 1), unit(4, 2)};
  const Vec u = vec({1.0, 0.0, 0.0, 1.0});
  const auto pts = slice_intersections(g, basis, u, 17);
  REQUIRE(pts.size() == 3);
  cplx sum = 0.0;
  for (const SlicePoint& pt : pts) {
    REQUIRE(pt.t.size() == 2);
    CHECK(std::abs(pt.t[0] * pt.t[0] * pt.t[0] - cplx(1.0)) < 1e-8);
    CHECK(std::abs(pt.t[1] - pt.t[0] * pt.t[0]) < 1e-8);
    CHECK(pt.residual < 1e-9);
    CHECK(pt.multiplicity == 1);
    // point and kernel line up with the parametrization
    Vec curve_pt = fixtures::twisted_cubic_point(pt.t[0]);
    curve_pt /= curve_pt.norm();
    CHECK(std::abs(std::abs((pt.mu.adjoint() * curve_pt).value()) - 1.0) < 1e-8);
    Vec kv = vec({1.0, pt.t[0], pt.t[0] * pt.t[0]});
    kv /= kv.norm();
    CHECK(std::abs(std::abs((pt.kernel.adjoint() * kv).value()) - 1.0) < 1e-8);
    sum += pt.t[0];
  }
  CHECK(std::abs(sum) < 1e-8);  // cube roots of unity sum to zero

  // sorted by chart coordinate: the conjugate pair at real part -1/2 comes
  // first (their real parts tie only up to roundoff, so their mutual order is
  // unpinned), then t = 1
  CHECK(pts[0].t[0].real() < pts[2].t[0].real());
  CHECK(pts[1].t[0].real() < pts[2].t[0].real());
  CHECK(std::abs(pts[0].t[0] - std::conj(pts[1].t[0])) < 1e-8);
  CHECK(pts[2].t[0].real() > 0.99);

  CHECK(thrown_code([&] { slice_intersections(g, basis, unit(4, 1), 17); }) ==
        "invalid-argument");
  CHECK(thrown_code([&] {
          slice_intersections(g, {unit(4, 0), unit(4, 1)}, vec({0.0, 0.0, 1.0, 1.0}), 17);
        }) == "singular-base-plane");
  CHECK(thrown_code([&] { slice_intersections(g, {unit(4, 1)}, u, 17); }) ==
        "dimension-mismatch");
}

TEST_CASE("degree of the builtin representations") {
  CHECK(degree(fixtures::twisted_cubic(), 23) == 3);
  CHECK(degree(fixtures::monomial_quintic(), 23) == 5);
  CHECK(degree(fixtures::rational_p3(), 23) == 4);
  CHECK(is_very_reasonable(fixtures::twisted_cubic(), 23));
  CHECK(is_very_reasonable(fixtures::monomial_quintic(), 23));
  CHECK(is_very_reasonable(fixtures::rational_p3(), 23));
  // determinism
  CHECK(degree(fixtures::twisted_cubic(), 23) == degree(fixtures::twisted_cubic(), 23));
}

TEST_CASE("degree is additive on block sums: cubic + line = 4") {
  const GammaTensor line = line_tensor(vec({1.0, 0.0, 1.0, 0.0}), vec({0.0, 1.0, 0.0, -1.0}));
  CHECK(degree(line, 31) == 1);
  CHECK(is_very_reasonable(line, 31));
  // a point of the line is on its locus
  CHECK(membership_residual(line, vec({1.0, 2.0, 1.0, -2.0})) < 1e-12);

  const GammaTensor sum = block_sum(fixtures::twisted_cubic(), line);
  CHECK(degree(sum, 31) == 4);
  CHECK(is_very_reasonable(sum, 31));
  // both components stay on the joint locus
  CHECK(membership_residual(sum, vec({1.0, 2.0, 4.0, 8.0})) < 1e-12);
  CHECK(membership_residual(sum, vec({1.0, 2.0, 1.0, -2.0})) < 1e-12);
}

TEST_CASE("pencil commutation: generic slices commute and are semisimple") {
  const GammaTensor g = fixtures::twisted_cubic();
  Rng rng(911);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<Vec> basis{random_real_vec(rng, 4), random_real_vec(rng, 4)};
    const Vec u = random_real_vec(rng, 4);
    const CommutationReport rep_out = pencil_commutation_report(g, basis, u, rng.next_u64());
    CHECK(rep_out.max_commutator < 1e-10);
    CHECK(rep_out.commuting);
    CHECK(rep_out.semisimple);
  }
}

TEST_CASE("pencil commutation: nilpotent pencil fails semisimplicity") {
  // gamma(e2) = I, gamma(e0) = [[0,1],[0,0]]: the single pencil matrix is a
  // nonzero nilpotent Jordan block.
  GammaTensor g = make_gamma(2, 1, 2);
  g.set({0, 1}, fixtures::mat(2, {1, 0, 0, 1}));
  g.set({1, 2}, fixtures::mat(2, {0, 1, 0, 0}));
  const CommutationReport rep = pencil_commutation_report(g, {unit(3, 2)}, unit(3, 0), 7);
  CHECK(rep.commuting);  // a single matrix trivially commutes
  CHECK_FALSE(rep.semisimple);
}

TEST_CASE("schubert determinant profile") {
  const GammaTensor g = fixtures::twisted_cubic();
  Rng rng(913);

  // generic flags: degree exactly n = 3, profile matches the direct determinant
  for (int rep = 0; rep < 20; ++rep) {
    const Vec f0 = random_real_vec(rng, 4);
    const Vec w1 = random_real_vec(rng, 4);
    const Vec w2 = random_real_vec(rng, 4);
    const Poly prof = schubert_det_profile(g, {f0}, w1, w2);
    CHECK(effective_degree(prof, 1e-9) == 3);
    for (double t : {-0.7, 0.33, 1.9}) {
      std::vector<Vec> basis{f0, w1 + cplx(t) * w2};
      const cplx direct = contract_subspace(g, basis).determinant();
      CHECK(std::abs(prof(t) - direct) < 1e-8 * std::max(1.0, std::abs(direct)));
    }
  }

  // roots of the profile are pencil positions meeting the locus: the plane
  // span{f0, w1 + t* w2} contains a curve point there
  {
    const Vec f0 = vec({1.0, 0.2, -0.4, 0.6});
    const Vec w1 = vec({0.3, 1.0, 0.5, -0.2});
    const Vec w2 = vec({-0.1, 0.4, 1.0, 0.8});
    const Poly prof = schubert_det_profile(g, {f0}, w1, w2);
    for (cplx root : roots(prof.trimmed(1e-10))) {
      std::vector<Vec> basis{f0, w1 + root * w2};
      Eigen::JacobiSVD<Mat> svd(contract_subspace(g, basis));
      const auto& sv = svd.singularValues();
      CHECK(sv(sv.size() - 1) < 1e-6 * std::max(1e-300, static_cast<double>(sv(0))));
    }
  }

  // defective flag ({e1}, e2, e3): gamma(span{e1, e2 + t e3}) =
  // antidiag(1,1,1) - t*gamma_02 has constant determinant -1
  const Poly flat = schubert_det_profile(g, {unit(4, 1)}, unit(4, 2), unit(4, 3));
  CHECK(effective_degree(flat, 1e-9) == 0);
  for (double t : {-2.0, 0.0, 1.5}) CHECK(std::abs(flat(t) + cplx(1.0)) < 1e-9);

  // w2 inside span(flag, w1) is rejected
  CHECK(thrown_code([&] {
          schubert_det_profile(g, {unit(4, 1)}, unit(4, 2), unit(4, 1) + unit(4, 2));
        }) == "invalid-argument");
  CHECK(thrown_code([&] { schubert_det_profile(g, {}, unit(4, 1), unit(4, 2)); }) ==
        "dimension-mismatch");
}

TEST_CASE("structure residual: representation tensors satisfy the quadratic relations") {
  CHECK(vr_struct_residual(fixtures::twisted_cubic(), {0, 3}) < 1e-12);
  CHECK(vr_struct_residual(fixtures::monomial_quintic(), {0, 3}) < 1e-12);
  CHECK(vr_struct_residual(fixtures::rational_p3(), {0, 3}) < 1e-12);

  // singular pinned block is refused
  CHECK(thrown_code([] { vr_struct_residual(fixtures::twisted_cubic(), {0, 1}); }) ==
        "singular-base-plane");
  CHECK(thrown_code([] { vr_struct_residual(fixtures::twisted_cubic(), {0, 1, 2}); }) ==
        "invalid-argument");

  // tampering one entry breaks the relations visibly
  GammaTensor bad = fixtures::twisted_cubic();
  Mat m = bad.coeff({0, 1});
  m(0, 0) += 1.0;
  bad.set({0, 1}, m);
  CHECK(vr_struct_residual(bad, {0, 3}) > 1e-3);
}

TEST_CASE("structure residual: decomposable scalar tensors in higher codimension") {
  // k = 2, n = 1: entries are the Plucker coordinates of a random 3-space in
  // C^5; the quadratic relations reduce to the Plucker relations.
  Rng rng(915);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Vec> basis{random_real_vec(rng, 5), random_real_vec(rng, 5),
                           random_real_vec(rng, 5)};
    const auto p = plucker_coords(basis);
    GammaTensor g = make_gamma(4, 2, 1);
    IndexSet best;
    double best_abs = -1.0;
    for (const auto& [I, val] : p) {
      Mat m(1, 1);
      m(0, 0) = val;
      g.set(I, m);
      if (std::abs(val) > best_abs) {
        best_abs = std::abs(val);
        best = I;
      }
    }
    CHECK(vr_struct_residual(g, best) < 1e-10);
  }
}

TEST_CASE("degree is at most n and invariant under coordinate changes") {
  Rng rng(917);
  const GammaTensor g = fixtures::twisted_cubic();
  for (int rep = 0; rep < 5; ++rep) {
    Mat change(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) change(i, j) = rng.uniform(-1.0, 1.0);
    if (std::abs(change.determinant()) < 0.1) continue;
    const GammaTensor h = transform(g, change);
    CHECK(degree(h, rng.next_u64()) == 3);
    CHECK(is_very_reasonable(h, rng.next_u64()));
  }
  // random tensors: degree never exceeds n
  for (int rep = 0; rep < 5; ++rep) {
    GammaTensor r = make_gamma(3, 1, 2);
    for (const IndexSet& I : combinations(3, 2)) {
      Mat m(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      r.set(I, m);
    }
    try {
      CHECK(degree(r, rng.next_u64()) <= 2);
    } catch (const error& e) {
      CHECK(e.code() == "transversality-failure");
    }
  }
}

TEST_CASE("kernel vectors at distinct curve points are independent") {
  const GammaTensor g = fixtures::twisted_cubic();
  const std::vector<cplx> ts{cplx(0.5), cplx(-1.2), cplx(2.0)};
  Mat stack(3, 3);
  for (int i = 0; i < 3; ++i) {
    Vec mu = fixtures::twisted_cubic_point(ts[static_cast<std::size_t>(i)]);
    stack.col(i) = kernel_vector(g, mu / mu.norm());
  }
  Eigen::JacobiSVD<Mat> svd(stack);
  CHECK(svd.singularValues()(2) > 1e-3);
}

TEST_CASE("planes through curve points are singular for the contraction") {
  const GammaTensor g = fixtures::twisted_cubic();
  Rng rng(919);
  for (int rep = 0; rep < 20; ++rep) {
    const cplx t(rng.uniform(-1.5, 1.5), rep % 2 == 0 ? 0.0 : rng.uniform(-0.5, 0.5));
    Vec mu = fixtures::twisted_cubic_point(t);
    mu /= mu.norm();
    Vec other(4);
    for (int i = 0; i < 4; ++i) other(i) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const Mat m = contract_subspace(g, {mu, other});
    const double scale = std::max(1.0, m.norm());
    CHECK(std::abs(m.determinant()) < 1e-8 * scale * scale * scale);
  }
}

}  // TEST_SUITE
