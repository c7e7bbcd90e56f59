#pragma once

// Shared inline fixtures for the test binaries. These are test-side copies,
// kept independent from the library's builtin registry on purpose so the two
// can be compared against each other.

#include <complex>
#include <string>
#include <vector>

#include "curvedet/errors.hpp"
#include "curvedet/exterior.hpp"

namespace fixtures {

using curvedet::cplx;
using curvedet::GammaTensor;
using curvedet::IndexSet;
using curvedet::Mat;
using curvedet::Vec;

inline Mat mat(int n, std::initializer_list<double> rowmajor) {
  Mat m(n, n);
  int i = 0;
  for (double v : rowmajor) {
    m(i / n, i % n) = v;
    ++i;
  }
  return m;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Error code raised by the callable, or "" when it returns normally.
template <typename F>
std::string thrown_code(F&& fn) {
  try {
    fn();
  } catch (const curvedet::error& e) {
    return e.code();
  }
  return "";
}

inline Vec vec(std::initializer_list<cplx> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (cplx x : xs) v[i++] = x;
  return v;
}

inline Vec unit(int dim, int j) {
  Vec v = Vec::Zero(dim);
  v[j] = 1.0;
  return v;
}

// Determinantal representation of (1, t, t^2, t^3) with kernel vector (1, t, t^2).
inline GammaTensor twisted_cubic() {
  GammaTensor g = curvedet::make_gamma(3, 1, 3);
  g.set({0, 1}, mat(3, {1, 0, 0, 0, 0, 0, 0, 0, 0}));
  g.set({0, 2}, mat(3, {0, 1, 0, 1, 0, 0, 0, 0, 0}));
  g.set({0, 3}, mat(3, {0, 0, 1, 0, 1, 0, 1, 0, 0}));
  g.set({1, 2}, mat(3, {0, 0, 0, 0, 1, 0, 0, 0, 0}));
  g.set({1, 3}, mat(3, {0, 0, 0, 0, 0, 1, 0, 1, 0}));
  g.set({2, 3}, mat(3, {0, 0, 0, 0, 0, 0, 0, 0, 1}));
  return g;
}

inline Vec twisted_cubic_point(cplx t) { return vec({1.0, t, t * t, t * t * t}); }

// Representation of (1, t^3, t^4, t^5), kernel vector (1, t, t^2, t^3, t^4).
inline GammaTensor monomial_quintic() {
  GammaTensor g = curvedet::make_gamma(3, 1, 5);
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
  return g;
}

inline Vec monomial_quintic_point(cplx t) {
  const cplx t3 = t * t * t;
  return vec({1.0, t3, t3 * t, t3 * t * t});
}

// Representation of (1, t, t^3, t^4), kernel vector (1, t, t^2, t^3).
inline GammaTensor rational_p3() {
  GammaTensor g = curvedet::make_gamma(3, 1, 4);
  g.set({0, 1}, mat(4, {1, 0, 0, 0,  0, 0, 0, 0,  0, 0, 0, 0,  0, 0, 0, 0}));
  g.set({0, 2}, mat(4, {0, 0, 1, 0,  0, 1, 0, 0,  1, 0, 0, 0,  0, 0, 0, 0}));
  g.set({0, 3}, mat(4, {0, 0, 0, 1,  0, 0, 1, 0,  0, 1, 0, 0,  1, 0, 0, 0}));
  g.set({1, 2}, mat(4, {0, 0, 0, 0,  0, 0, 1, 0,  0, 1, 0, 0,  0, 0, 0, 0}));
  g.set({1, 3}, mat(4, {0, 0, 0, 0,  0, 0, 0, 1,  0, 0, 1, 0,  0, 1, 0, 0}));
  g.set({2, 3}, mat(4, {0, 0, 0, 0,  0, 0, 0, 0,  0, 0, 0, 0,  0, 0, 0, 1}));
  return g;
}

inline Vec rational_p3_point(cplx t) { return vec({1.0, t, t * t * t, t * t * t * t}); }

}  // namespace fixtures
