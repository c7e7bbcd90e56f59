#include "curvedet/exterior.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "curvedet/errors.hpp"

namespace curvedet {

namespace {

void check_tensor(const GammaTensor& g) {
  require(g.d >= 1 && g.k >= 1 && g.k < g.d && g.n >= 1, "invalid-argument",
          "tensor shape d=" + std::to_string(g.d) + " k=" + std::to_string(g.k) +
              " n=" + std::to_string(g.n));
}

void check_vector(const GammaTensor& g, const Vec& v, const char* what) {
  require(v.size() == g.d + 1, "dimension-mismatch",
          std::string(what) + " has size " + std::to_string(v.size()) + ", expected " +
              std::to_string(g.d + 1));
}

}  // namespace

Mat GammaTensor::coeff(const IndexSet& I) const {
  auto it = entries.find(I);
  if (it != entries.end()) return it->second;
  return Mat::Zero(n, n);
}

void GammaTensor::set(const IndexSet& I, Mat block) {
  require(strictly_increasing(I) && static_cast<int>(I.size()) == k + 1 &&
              (I.empty() || (I.front() >= 0 && I.back() <= d)),
          "invalid-argument", "bad index set " + to_string(I));
  require(block.rows() == n && block.cols() == n, "dimension-mismatch",
          "block for " + to_string(I) + " is " + std::to_string(block.rows()) + "x" +
              std::to_string(block.cols()));
  if (block.cwiseAbs().maxCoeff() == 0.0) {
    entries.erase(I);
  } else {
    entries[I] = std::move(block);
  }
}

double GammaTensor::scale() const {
  double s = 0.0;
  for (const auto& [I, m] : entries) s = std::max(s, m.cwiseAbs().maxCoeff());
  return std::max(s, 1e-300);
}

GammaTensor make_gamma(int d, int k, int n) {
  GammaTensor g;
  g.d = d;
  g.k = k;
  g.n = n;
  check_tensor(g);
  return g;
}

std::map<IndexSet, Mat> wedge_point(const GammaTensor& g, const Vec& mu) {
  check_tensor(g);
  check_vector(g, mu, "mu");
  std::map<IndexSet, Mat> out;
  for (const IndexSet& J : combinations(g.d, g.k + 2)) {
    Mat block = Mat::Zero(g.n, g.n);
    for (int j : J) {
      if (mu[j] == cplx(0.0)) continue;
      auto it = g.entries.find(erased(J, j));
      if (it == g.entries.end()) continue;
      block += static_cast<double>(removal_sign(J, j)) * mu[j] * it->second;
    }
    out.emplace(J, std::move(block));
  }
  return out;
}

std::map<IndexSet, cplx> plucker_coords(const std::vector<Vec>& vectors) {
  require(!vectors.empty(), "invalid-argument", "plucker_coords: no vectors");
  const int rows = static_cast<int>(vectors.front().size());
  const int m = static_cast<int>(vectors.size());
  require(m <= rows, "invalid-argument", "plucker_coords: too many vectors");
  Mat cols(rows, m);
  for (int j = 0; j < m; ++j) {
    require(vectors[j].size() == rows, "dimension-mismatch", "plucker_coords: ragged vectors");
    cols.col(j) = vectors[j];
  }
  std::map<IndexSet, cplx> out;
  Mat minor(m, m);
  for (const IndexSet& J : combinations(rows - 1, m)) {
    for (int r = 0; r < m; ++r) minor.row(r) = cols.row(J[r]);
    out.emplace(J, minor.determinant());
  }
  return out;
}

Mat contract_subspace(const GammaTensor& g, const std::vector<Vec>& basis) {
  check_tensor(g);
  require(static_cast<int>(basis.size()) == g.d - g.k, "invalid-argument",
          "contract_subspace: need d-k = " + std::to_string(g.d - g.k) + " vectors, got " +
              std::to_string(basis.size()));
  for (const Vec& v : basis) check_vector(g, v, "basis vector");
  auto p = plucker_coords(basis);
  Mat out = Mat::Zero(g.n, g.n);
  for (const auto& [I, block] : g.entries) {
    const cplx c = p.at(complement(I, g.d));
    if (c == cplx(0.0)) continue;
    out += static_cast<double>(complement_sign(I, g.d)) * c * block;
  }
  return out;
}

Mat contract_replaced(const GammaTensor& g, const std::vector<Vec>& basis, int slot, const Vec& u) {
  require(slot >= 0 && slot < static_cast<int>(basis.size()), "invalid-argument",
          "contract_replaced: slot " + std::to_string(slot) + " out of range");
  std::vector<Vec> replaced = basis;
  replaced[slot] = u;
  return contract_subspace(g, replaced);
}

std::pair<Vec, Vec> dual_plucker_pair(const std::vector<Vec>& basis, double tol) {
  require(basis.size() >= 1, "invalid-argument", "dual_plucker_pair: empty basis");
  const int dim = static_cast<int>(basis.front().size());
  const int d = dim - 1;
  require(static_cast<int>(basis.size()) == d - 1, "invalid-argument",
          "dual_plucker_pair: need d-1 = " + std::to_string(d - 1) + " vectors");
  Mat rows(d - 1, dim);
  for (int i = 0; i < d - 1; ++i) {
    require(basis[i].size() == dim, "dimension-mismatch", "dual_plucker_pair: ragged basis");
    rows.row(i) = basis[i].transpose();  // unconjugated: covectors must satisfy a.v = 0
  }
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  require(sv.size() > 0 && sv(0) > 0.0 && sv(sv.size() - 1) > 1e-10 * sv(0),
          "degenerate-span", "dual_plucker_pair: basis not independent");
  Vec x = svd.matrixV().col(dim - 2);
  Vec y = svd.matrixV().col(dim - 1);

  auto p = plucker_coords(basis);
  // q_{ij} = x_i y_j - x_j y_i must be proportional to
  // r_{ij} = complement_sign({i,j}) p(V)_{{i,j}^c}; solve the scalar and verify.
  double best = -1.0;
  cplx best_q = 0.0, best_r = 0.0;
  double rscale = 0.0;
  std::vector<std::pair<cplx, cplx>> pairs;
  for (const IndexSet& ij : combinations(d, 2)) {
    const int i = ij[0], j = ij[1];
    const cplx q = x[i] * y[j] - x[j] * y[i];
    const cplx r = static_cast<double>(complement_sign(ij, d)) * p.at(complement(ij, d));
    pairs.emplace_back(q, r);
    rscale = std::max(rscale, std::abs(r));
    if (std::abs(q) > best) {
      best = std::abs(q);
      best_q = q;
      best_r = r;
    }
  }
  require(rscale > 0.0, "degenerate-span", "dual_plucker_pair: zero Pluecker vector");
  require(best > 1e-14, "degenerate-span", "dual_plucker_pair: degenerate complement");
  const cplx c = best_r / best_q;
  double err = 0.0;
  for (const auto& [q, r] : pairs) err = std::max(err, std::abs(r - c * q));
  require(err <= tol * std::max(1.0, rscale), "sign-calibration",
          "dual_plucker_pair: Hodge calibration residual " + std::to_string(err));
  return {c * x, y};
}

GammaTensor transform(const GammaTensor& g, const Mat& change) {
  check_tensor(g);
  require(change.rows() == g.d + 1 && change.cols() == g.d + 1, "dimension-mismatch",
          "transform: change of basis must be (d+1)x(d+1)");
  GammaTensor out = make_gamma(g.d, g.k, g.n);
  const auto sets = combinations(g.d, g.k + 1);
  Mat minor(g.k + 1, g.k + 1);
  for (const IndexSet& Iprime : sets) {
    Mat block = Mat::Zero(g.n, g.n);
    for (const auto& [I, coeff] : g.entries) {
      for (int r = 0; r <= g.k; ++r)
        for (int c = 0; c <= g.k; ++c) minor(r, c) = change(Iprime[r], I[c]);
      const cplx det = minor.determinant();
      if (det == cplx(0.0)) continue;
      block += det * coeff;
    }
    out.set(Iprime, std::move(block));
  }
  return out;
}

}  // namespace curvedet
