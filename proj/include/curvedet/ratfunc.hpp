#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

namespace curvedet {

using cplx = std::complex<double>;

// Dense univariate polynomial, ascending coefficients, exact trailing zeros
// stripped at construction.
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<cplx> coeffs);
  explicit Poly(std::vector<cplx> coeffs);
  static Poly from_real(const std::vector<double>& coeffs);
  static Poly from_roots(const std::vector<cplx>& roots, cplx lead = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : cplx(0.0); }
  cplx lead() const { return c_.empty() ? cplx(0.0) : c_.back(); }
  double max_abs_coeff() const;
  bool is_real(double tol = 0.0) const;

  cplx operator()(cplx t) const;  // Horner
  Poly derivative() const;
  Poly deflated(cplx root) const;         // synthetic division by (t - root)
  Poly trimmed(double rel_eps) const;     // drop top coefficients below rel_eps * max
  Poly real_part() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(cplx s, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void strip();
  std::vector<cplx> c_;
};

// All complex roots with multiplicity (companion-matrix eigenvalues, one
// Newton polish each). Zero or constant polynomial -> empty list.
std::vector<cplx> roots(const Poly& p);

// Largest index whose coefficient exceeds rel * max_abs_coeff; -1 when none.
// Robust degree for polynomials assembled from floating-point data.
int effective_degree(const Poly& p, double rel = 1e-12);

struct LaurentPair {
  cplx a;  // residue (0 at a regular point)
  cplx b;  // constant term: f = a/(t-p) + b + O(t-p)
};

// Reduced rational function; denominator monic.
class RationalFunction {
 public:
  static RationalFunction make(Poly num, Poly den, double tol = 1e-10);
  static RationalFunction constant(cplx value);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int degree() const;  // max of numerator and denominator degree
  bool is_real(double tol = 1e-12) const;

  cplx operator()(cplx t) const;
  cplx derivative_at(cplx t) const;
  const std::vector<cplx>& poles() const { return poles_; }  // polished den roots

  // f = a/(t-p) + b + O(t-p); errors with unsupported-pole-order when p is a
  // multiple pole.
  LaurentPair laurent_simple(cplx p, double tol = 1e-8) const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(cplx s, const RationalFunction& a);

 private:
  Poly num_, den_;
  std::vector<cplx> poles_;
};

struct DividingReport {
  bool verdict = false;
  int orientation_sign = 0;  // +1 half-plane preserving, -1 reversing, 0 undefined
  // Pole data in the affine chart used for the test (chart_shift engaged when
  // the input had a pole at infinity).
  std::vector<cplx> poles;
  std::vector<cplx> residues;
  std::optional<double> chart_shift;
  std::optional<double> failure_witness;  // real value with a non-real fiber point
  std::optional<cplx> witness_root;
};

// A real rational function is dividing iff all its poles (including infinity)
// are real and simple and all residues share one sign in a single real affine
// chart. Seed drives the chart shift and the witness search.
DividingReport is_dividing(const RationalFunction& f, std::uint64_t seed, double tol = 1e-8);

}  // namespace curvedet
