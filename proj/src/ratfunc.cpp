#include "curvedet/ratfunc.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "curvedet/errors.hpp"
#include "curvedet/rng.hpp"

namespace curvedet {

namespace {

double upper_scale(const Poly& p, cplx at) {
  // coarse bound for |p| magnitudes near `at`, used for relative tests
  return p.max_abs_coeff() * std::pow(std::max(1.0, std::abs(at)), std::max(0, p.degree()));
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  const int db = b.degree();
  if (a.degree() < db) return {Poly{}, a};
  std::vector<cplx> r = a.coeffs();
  std::vector<cplx> q(a.degree() - db + 1, cplx(0.0));
  const cplx bl = b.lead();
  for (int i = a.degree(); i >= db; --i) {
    const cplx f = r[static_cast<std::size_t>(i)] / bl;
    q[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coeff(j);
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(q)), Poly(std::move(r))};
}

// Euclidean gcd with a relative cutoff; monic result, constant 1 when coprime.
// Working polynomials are rescaled to unit coefficient size each round so the
// cutoff stays meaningful.
Poly poly_gcd(Poly a, Poly b, double rel) {
  const auto unit = [](const Poly& p) {
    const double m = p.max_abs_coeff();
    return m > 0.0 ? cplx(1.0 / m) * p : p;
  };
  a = unit(a);
  b = unit(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero() && b.degree() >= 1) {
    Poly r = poly_divmod(a, b).second;
    if (r.max_abs_coeff() <= rel * std::max(1.0, a.max_abs_coeff())) r = Poly{};
    a = std::move(b);
    b = unit(r).trimmed(1e-12);
  }
  if (!b.is_zero()) return Poly{1.0};
  return (cplx(1.0) / a.lead()) * a;
}

}  // namespace

Poly::Poly(std::initializer_list<cplx> coeffs) : c_(coeffs) { strip(); }

Poly::Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { strip(); }

Poly Poly::from_real(const std::vector<double>& coeffs) {
  std::vector<cplx> c(coeffs.begin(), coeffs.end());
  return Poly(std::move(c));
}

Poly Poly::from_roots(const std::vector<cplx>& roots, cplx lead) {
  Poly p{lead};
  for (cplx r : roots) p = p * Poly{-r, 1.0};
  return p;
}

void Poly::strip() {
  while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (cplx c : c_) m = std::max(m, std::abs(c));
  return m;
}

bool Poly::is_real(double tol) const {
  const double scale = std::max(1.0, max_abs_coeff());
  for (cplx c : c_)
    if (std::abs(c.imag()) > tol * scale) return false;
  return true;
}

cplx Poly::operator()(cplx t) const {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly{};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return Poly(std::move(d));
}

Poly Poly::deflated(cplx root) const {
  require(degree() >= 1, "invalid-argument", "deflated: degree < 1");
  std::vector<cplx> q(c_.size() - 1);
  cplx carry = c_.back();
  for (int i = degree() - 1; i >= 0; --i) {
    q[i] = carry;
    carry = c_[i] + carry * root;
  }
  return Poly(std::move(q));
}

Poly Poly::trimmed(double rel_eps) const {
  const double cutoff = rel_eps * max_abs_coeff();
  std::vector<cplx> c = c_;
  while (!c.empty() && std::abs(c.back()) <= cutoff) c.pop_back();
  return Poly(std::move(c));
}

Poly Poly::real_part() const {
  std::vector<cplx> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i].real();
  return Poly(std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), cplx(0.0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (cplx(-1.0) * b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly{};
  std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator*(cplx s, const Poly& a) {
  std::vector<cplx> c = a.c_;
  for (cplx& x : c) x *= s;
  return Poly(std::move(c));
}

std::vector<cplx> roots(const Poly& p) {
  const int n = p.degree();
  if (n <= 0) return {};
  require(n <= 64, "invalid-argument", "roots: degree too large");
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const cplx lead = p.lead();
  for (int i = 0; i + 1 < n; ++i) companion(i + 1, i) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, /*computeEigenvectors=*/false);
  require(es.info() == Eigen::Success, "numerical-failure", "roots: eigensolver failed");
  const Poly dp = p.derivative();
  std::vector<cplx> out(n);
  for (int i = 0; i < n; ++i) {
    cplx r = es.eigenvalues()[i];
    const cplx slope = dp(r);
    if (std::abs(slope) > 1e-14 * upper_scale(dp, r)) {
      const cplx polished = r - p(r) / slope;
      if (std::abs(p(polished)) <= std::abs(p(r))) r = polished;
    }
    out[i] = r;
  }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

int effective_degree(const Poly& p, double rel) {
  const double cutoff = rel * p.max_abs_coeff();
  for (int i = p.degree(); i >= 0; --i)
    if (std::abs(p.coeff(i)) > cutoff) return i;
  return -1;
}

RationalFunction RationalFunction::make(Poly num, Poly den, double tol) {
  require(!den.is_zero(), "invalid-argument", "rational function with zero denominator");
  if (!num.is_zero()) {
    for (cplx r : roots(den)) {
      if (num.degree() < 1) break;
      if (std::abs(num(r)) <= tol * std::max(1e-300, upper_scale(num, r)))
        if (std::abs(den(r)) <= 1e-6 * std::max(1e-300, upper_scale(den, r))) {
          num = num.deflated(r);
          den = den.deflated(r);
        }
    }
  }
  const cplx lead = den.lead();
  num = (cplx(1.0) / lead) * num;
  den = (cplx(1.0) / lead) * den;
  RationalFunction f;
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  f.poles_ = roots(f.den_);
  return f;
}

RationalFunction RationalFunction::constant(cplx value) {
  return make(Poly{value}, Poly{cplx(1.0)});
}

int RationalFunction::degree() const {
  if (num_.is_zero()) return 0;
  return std::max(num_.degree(), den_.degree());
}

bool RationalFunction::is_real(double tol) const { return num_.is_real(tol) && den_.is_real(tol); }

cplx RationalFunction::operator()(cplx t) const { return num_(t) / den_(t); }

cplx RationalFunction::derivative_at(cplx t) const {
  const cplx d = den_(t);
  return (num_.derivative()(t) * d - num_(t) * den_.derivative()(t)) / (d * d);
}

LaurentPair RationalFunction::laurent_simple(cplx p, double tol) const {
  const double match = tol * std::max(1.0, std::abs(p));
  int hits = 0;
  cplx pole = 0.0;
  for (cplx r : poles_) {
    if (std::abs(r - p) <= match) {
      ++hits;
      pole = r;
    }
  }
  if (hits == 0) return {cplx(0.0), (*this)(p)};
  require(hits == 1, "unsupported-pole-order",
          "laurent_simple: pole of order " + std::to_string(hits));
  const Poly dden = den_.derivative();
  const cplx d1 = dden(pole);
  require(std::abs(d1) > 1e-12 * std::max(1e-300, upper_scale(dden, pole)),
          "unsupported-pole-order", "laurent_simple: derivative vanishes at pole");
  const cplx a = num_(pole) / d1;
  const cplx d2 = den_.derivative().derivative()(pole);
  const cplx b = (num_.derivative()(pole) - a * d2 / 2.0) / d1;
  return {a, b};
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  // Reduce by the shared denominator factor first: the blind product form
  // doubles common poles, whose split companion-matrix roots then defeat the
  // near-cancellation pass in make().
  const Poly g = poly_gcd(a.den_, b.den_, 1e-10);
  if (g.degree() < 1)
    return RationalFunction::make(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  const Poly qa = poly_divmod(a.den_, g).first;
  const Poly qb = poly_divmod(b.den_, g).first;
  return RationalFunction::make(a.num_ * qb + b.num_ * qa, qa * b.den_);
}

RationalFunction operator*(cplx s, const RationalFunction& a) {
  return RationalFunction::make(s * a.num_, a.den_);
}

namespace {

// P(m(t)) * t^pad with m(t) = s - 1/t, as a polynomial: sum_j P_j (s t - 1)^j t^{pad - j}.
Poly mobius_compose(const Poly& p, double s, int pad) {
  Poly acc;
  Poly base{-1.0, s};
  std::vector<Poly> basepow(pad + 1);
  basepow[0] = Poly{1.0};
  for (int j = 1; j <= pad; ++j) basepow[j] = basepow[j - 1] * base;
  for (int j = 0; j <= std::min(pad, p.degree()); ++j) {
    std::vector<cplx> shift(pad - j + 1, cplx(0.0));
    shift.back() = 1.0;
    acc = acc + p.coeff(j) * (basepow[j] * Poly(std::move(shift)));
  }
  return acc;
}

}  // namespace

DividingReport is_dividing(const RationalFunction& f, std::uint64_t seed, double tol) {
  require(f.is_real(1e-9), "invalid-argument", "is_dividing: coefficients not real");
  const Poly N = f.num().real_part();
  const Poly D = f.den().real_part();
  const int nf = std::max(N.degree(), D.degree());
  require(nf >= 1, "invalid-argument", "is_dividing: constant function");

  Rng rng(seed);
  DividingReport rep;

  Poly Nc = N, Dc = D;
  if (N.degree() > D.degree()) {  // pole at infinity: move it into the chart
    double s = 0.0;
    bool found = false;
    for (int attempt = 0; attempt < 64 && !found; ++attempt) {
      s = rng.uniform(-2.0, 2.0);
      found = true;
      for (cplx r : f.poles())
        if (std::abs(s - r) < 0.05 * (1.0 + std::abs(s))) found = false;
    }
    require(found, "numerical-failure", "is_dividing: no usable chart shift");
    Nc = mobius_compose(N, s, nf);
    Dc = mobius_compose(D, s, nf);
    rep.chart_shift = s;
  }
  const RationalFunction g = RationalFunction::make(Nc, Dc);

  bool poles_ok = g.den().degree() == nf;
  std::vector<cplx> poles = g.poles();
  for (std::size_t i = 0; i < poles.size() && poles_ok; ++i) {
    if (std::abs(poles[i].imag()) > tol * std::max(1.0, std::abs(poles[i]))) poles_ok = false;
    for (std::size_t j = i + 1; j < poles.size(); ++j)
      if (std::abs(poles[i] - poles[j]) <= 10.0 * tol * std::max(1.0, std::abs(poles[i])))
        poles_ok = false;
  }
  rep.poles = poles;

  bool residues_ok = poles_ok;
  int sign = 0;
  if (poles_ok) {
    const Poly dden = g.den().derivative();
    for (cplx r : poles) {
      const cplx res = g.num()(r) / dden(r);
      rep.residues.push_back(res);
      if (std::abs(res.imag()) > 10.0 * tol * std::max(1.0, std::abs(res))) residues_ok = false;
      const int s = res.real() > 0.0 ? -1 : (res.real() < 0.0 ? 1 : 0);
      if (s == 0) residues_ok = false;
      if (sign == 0) sign = s;
      if (s != sign) residues_ok = false;
    }
  }

  rep.verdict = poles_ok && residues_ok && !poles.empty();
  rep.orientation_sign = rep.verdict ? sign : 0;
  if (rep.verdict) return rep;

  // Hunt for a real value whose fiber leaves the real line. Candidates: just
  // past each real critical value, then a coarse grid.
  std::vector<double> candidates;
  const Poly wronsk = N.derivative() * D - N * D.derivative();
  for (cplx r : roots(wronsk)) {
    if (std::abs(r.imag()) > 1e-6 * std::max(1.0, std::abs(r))) continue;
    const cplx v = f(r.real());
    if (!std::isfinite(v.real()) || std::abs(v) > 1e12) continue;
    for (double delta : {1e-3, 1e-2, 0.1, 0.5}) {
      const double step = delta * std::max(1.0, std::abs(v.real()));
      candidates.push_back(v.real() + step);
      candidates.push_back(v.real() - step);
    }
  }
  for (int i = -10; i <= 10; ++i) candidates.push_back(0.5 * i);
  candidates.push_back(100.0);
  candidates.push_back(-100.0);
  for (int i = 0; i < 32; ++i) candidates.push_back(rng.uniform(-8.0, 8.0));

  for (double c : candidates) {
    const Poly fiber = (N - cplx(c) * D).trimmed(1e-13);
    if (fiber.degree() < 1) continue;
    for (cplx r : roots(fiber)) {
      if (std::abs(r.imag()) > 1e-6 * std::max(1.0, std::abs(r))) {
        // confirm this is a genuine fiber point of f, not root-finder noise
        if (std::abs(f(r) - c) <= 1e-6 * std::max(1.0, std::abs(c))) {
          rep.failure_witness = c;
          rep.witness_root = r;
          return rep;
        }
      }
    }
  }
  return rep;
}

}  // namespace curvedet
