#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "curvedet/indexset.hpp"

namespace curvedet {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Matrix-valued (k+1)-form on C^{d+1}: a map from index sets of size k+1 to
// n x n blocks, zero blocks omitted.
struct GammaTensor {
  int d = 0;
  int k = 1;
  int n = 0;
  std::map<IndexSet, Mat> entries;

  Mat coeff(const IndexSet& I) const;  // stored block, or zero
  void set(const IndexSet& I, Mat block);
  double scale() const;  // max |entry| over all blocks (>= tiny positive)
};

GammaTensor make_gamma(int d, int k, int n);

// All blocks of gamma ^ mu: index sets J of size k+2 mapped to
// sum_{j in J} removal_sign(J,j) * mu_j * gamma_{J \ {j}}.
std::map<IndexSet, Mat> wedge_point(const GammaTensor& g, const Vec& mu);

// Minors of the (d+1) x m column matrix of an ordered tuple of vectors.
std::map<IndexSet, cplx> plucker_coords(const std::vector<Vec>& vectors);

// gamma(V) = gamma ^ v_0 ^ ... ^ v_{d-k-1}
//          = sum_I complement_sign(I) * p(V)_{I^c} * gamma_I.
Mat contract_subspace(const GammaTensor& g, const std::vector<Vec>& basis);

// Same wedge with basis slot `slot` replaced by u.
Mat contract_replaced(const GammaTensor& g, const std::vector<Vec>& basis, int slot, const Vec& u);

// Covector pair (a, b) annihilating V with
// a_i b_j - a_j b_i = complement_sign({i,j}) * p(V)_{{i,j}^c} for all i < j.
// Requires a basis of size d-1 in C^{d+1}. Hard error when the Hodge-dual
// calibration does not close to tolerance.
std::pair<Vec, Vec> dual_plucker_pair(const std::vector<Vec>& basis, double tol = 1e-9);

// Basis change e_I -> Lambda^{k+1} g (e_I):
// out_{I'} = sum_I det(g[I', I]) * gamma_I.
GammaTensor transform(const GammaTensor& g, const Mat& change);

}  // namespace curvedet
