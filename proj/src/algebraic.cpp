#include "bratteli/algebraic.hpp"

#include "bratteli/error.hpp"
#include "bratteli/linear.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <functional>

namespace bratteli {

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
Interval operator*(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}
Interval operator*(const Rational& s, const Interval& a) {
  return s >= 0 ? Interval{s * a.lo, s * a.hi} : Interval{s * a.hi, s * a.lo};
}

SturmSequence::SturmSequence(const Polynomial<Integer>& p) {
  seq_.push_back(convert<Integer, Rational>(p));
  seq_.push_back(derivative(seq_.back()));
  while (!seq_.back().is_zero()) {
    auto r = -(seq_[seq_.size() - 2] % seq_.back());
    if (r.is_zero()) break;
    seq_.push_back(std::move(r));
  }
  if (seq_.back().is_zero()) seq_.pop_back();
}

int SturmSequence::variations(const Rational& x) const {
  int changes = 0, last = 0;
  for (const auto& p : seq_) {
    Rational v = evaluate(p, x);
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

Rational root_bound(const Polynomial<Integer>& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = Rational(abs(p.coeff(static_cast<std::size_t>(i)))) / Rational(abs(p.leading()));
    m = std::max(m, r);
  }
  return m + 1;
}

int sign_at(const Polynomial<Integer>& p, const Rational& x) {
  Rational v = evaluate(p, x);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

std::vector<Interval> isolate_real_roots(const Polynomial<Integer>& p) {
  std::vector<Interval> out;
  if (p.degree() < 1) return out;
  SturmSequence sturm(p);
  const Rational b = root_bound(p);
  std::function<void(Rational, Rational, int)> rec = [&](Rational lo, Rational hi, int k) {
    if (k == 0) return;
    if (k == 1) {
      // root in (lo, hi]; make both ends non-roots or report the exact point
      for (;;) {
        if (sign_at(p, hi) == 0) {
          out.push_back({hi, hi});
          return;
        }
        if (sign_at(p, lo) != 0) {
          out.push_back({lo, hi});
          return;
        }
        Rational mid = (lo + hi) / 2;
        if (sturm.count(mid, hi) == 1)
          lo = mid;
        else
          hi = mid;
      }
    }
    Rational mid = (lo + hi) / 2;
    int left = sturm.count(lo, mid);
    rec(lo, mid, left);
    rec(mid, hi, k - left);
  };
  rec(-b, b, sturm.count(-b, b));
  return out;
}

AlgebraicNumber::AlgebraicNumber(const Rational& q) {
  minpoly_ = Polynomial<Integer>{-num(q), den(q)};
  iv_ = {q, q};
  index_ = 0;
}

AlgebraicNumber AlgebraicNumber::from_interval(const Polynomial<Integer>& m, const Rational& lo, const Rational& hi) {
  auto mp = primitive_part(m);
  if (mp.degree() < 1) throw Error(ErrorKind::precondition, "minimal polynomial must have positive degree");
  if (mp.degree() == 1) return AlgebraicNumber(Rational(-mp.coeff(0), mp.coeff(1)));
  SturmSequence sturm(mp);
  if (!(lo < hi) || sign_at(mp, lo) == 0 || sign_at(mp, hi) == 0 || sturm.count(lo, hi) != 1)
    throw Error(ErrorKind::precondition, "interval does not isolate a root of " + bratteli::to_string(mp));
  AlgebraicNumber a;
  a.minpoly_ = mp;
  a.iv_ = {lo, hi};
  a.index_ = sturm.count(-root_bound(mp), lo);
  return a;
}

Rational AlgebraicNumber::to_rational() const {
  if (!is_rational()) throw Error(ErrorKind::precondition, "algebraic number is irrational");
  return iv_.lo;
}

Interval AlgebraicNumber::refine(const Rational& max_width) const {
  Interval iv = iv_;
  if (is_rational()) return iv;
  const int slo = sign_at(minpoly_, iv.lo);
  while (iv.width() > max_width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    if (sign_at(minpoly_, mid) == slo)
      iv.lo = mid;
    else
      iv.hi = mid;
  }
  return iv;
}

double AlgebraicNumber::approx() const {
  Interval iv = refine(Rational(1, Integer(1) << 60));
  return static_cast<double>(((iv.lo + iv.hi) / 2).convert_to<double>());
}

std::string AlgebraicNumber::to_string() const {
  if (is_rational()) return bratteli::to_string(to_rational());
  return "root of " + bratteli::to_string(minpoly_) + " in (" + bratteli::to_string(iv_.lo) + ", " +
         bratteli::to_string(iv_.hi) + ")";
}

int compare(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.minpoly_ == b.minpoly_) return a.index_ < b.index_ ? -1 : (a.index_ > b.index_ ? 1 : 0);
  Interval ia = a.iv_, ib = b.iv_;
  for (;;) {
    if (ia.hi < ib.lo) return -1;
    if (ib.hi < ia.lo) return 1;
    if (a.is_rational() && b.is_rational()) return 0;
    ia = a.refine(ia.width() / 4);
    ib = b.refine(ib.width() / 4);
  }
}

namespace {

using Real = boost::multiprecision::cpp_bin_float_100;

struct Cx {
  Real re, im;
};
Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cx operator/(const Cx& a, const Cx& b) {
  Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Real norm(const Cx& a) { return sqrt(a.re * a.re + a.im * a.im); }

// Aberth-Ehrlich on a monic integer polynomial with simple roots.
std::vector<Cx> complex_roots(const Polynomial<Integer>& p) {
  const int n = p.degree();
  std::vector<Real> c;
  for (const auto& x : p.coeffs()) c.push_back(Real(x));
  std::vector<Real> dc;
  for (int i = 1; i <= n; ++i) dc.push_back(c[static_cast<std::size_t>(i)] * i);
  auto eval = [](const std::vector<Real>& coef, const Cx& z) {
    Cx acc{0, 0};
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * z + Cx{*it, 0};
    return acc;
  };
  Real radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, Real(abs(c[static_cast<std::size_t>(i)])));
  radius = (radius + 1) / 2;
  std::vector<Cx> z(static_cast<std::size_t>(n));
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  for (int k = 0; k < n; ++k) {
    Real t = two_pi * k / n + Real(0.4);
    z[static_cast<std::size_t>(k)] = {radius * cos(t), radius * sin(t)};
  }
  const Real tol = Real("1e-90");
  for (int iter = 0; iter < 5000; ++iter) {
    Real worst = 0;
    for (int k = 0; k < n; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      Cx pv = eval(c, zk);
      if (pv.re == 0 && pv.im == 0) continue;
      Cx ratio = pv / eval(dc, zk);
      Cx sum{0, 0};
      for (int j = 0; j < n; ++j)
        if (j != k) sum = sum + Cx{1, 0} / (zk - z[static_cast<std::size_t>(j)]);
      Cx step = ratio / (Cx{1, 0} - ratio * sum);
      zk = zk - step;
      worst = std::max(worst, norm(step) / (1 + norm(zk)));
    }
    if (worst < tol) return z;
  }
  throw Error(ErrorKind::unsupported_spectrum, "complex root iteration did not converge");
}

}  // namespace

Polynomial<Integer> minimal_factor(const Polynomial<Integer>& q_in, const Interval& iso) {
  auto q = primitive_part(q_in);
  const int n = q.degree();
  if (n <= 1) return q;
  if (iso.lo == iso.hi) return primitive_part(Polynomial<Integer>{-num(iso.lo), den(iso.lo)});
  if (n > 24) throw Error(ErrorKind::unsupported_spectrum, "characteristic polynomial degree above 24");

  // monic transform y = a x
  const Integer a = q.leading();
  std::vector<Integer> mc;
  for (int i = 0; i <= n; ++i) mc.push_back(q.coeff(static_cast<std::size_t>(i)) * pow(a, static_cast<unsigned>(n - i)) / a);
  Polynomial<Integer> qm(mc);
  const Rational slo = Rational(a) * iso.lo, shi = Rational(a) * iso.hi;

  auto roots = complex_roots(qm);
  const Real eps("1e-40");
  int target = -1;
  for (int i = 0; i < n; ++i) {
    const auto& r = roots[static_cast<std::size_t>(i)];
    if (abs(r.im) < eps && r.re > Real(slo) - eps && r.re < Real(shi) + eps) {
      if (target < 0 || abs(r.im) < abs(roots[static_cast<std::size_t>(target)].im)) target = i;
    }
  }
  if (target < 0) throw Error(ErrorKind::unsupported_spectrum, "isolated root not located numerically");
  std::vector<Cx> others;
  for (int i = 0; i < n; ++i)
    if (i != target) others.push_back(roots[static_cast<std::size_t>(i)]);
  const Cx t = roots[static_cast<std::size_t>(target)];

  const auto qr = convert<Integer, Rational>(qm);
  for (int s = 0; s < n; ++s) {
    std::vector<int> idx(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
      // coefficients of (y - t) * prod (y - r_j)
      std::vector<Cx> poly{Cx{-t.re, -t.im}, Cx{1, 0}};
      for (int j : idx) {
        const Cx& r = others[static_cast<std::size_t>(j)];
        std::vector<Cx> next(poly.size() + 1, Cx{0, 0});
        for (std::size_t k = 0; k < poly.size(); ++k) {
          next[k + 1] = next[k + 1] + poly[k];
          next[k] = next[k] - poly[k] * r;
        }
        poly = std::move(next);
      }
      bool integral = true;
      std::vector<Integer> cand;
      for (const auto& c : poly) {
        Real rounded = round(c.re);
        if (abs(c.im) > eps * (1 + abs(c.re)) || abs(c.re - rounded) > eps * (1 + abs(c.re))) {
          integral = false;
          break;
        }
        std::string digits = rounded.str(0, std::ios_base::fixed);
        digits = digits.substr(0, digits.find('.'));
        cand.push_back(Integer(digits == "-0" ? std::string("0") : digits));
      }
      if (integral) {
        Polynomial<Integer> m(cand);
        if ((qr % convert<Integer, Rational>(m)).is_zero() && sign_at(m, slo) * sign_at(m, shi) < 0) {
          // back to x: m(a x), made primitive
          std::vector<Integer> back;
          for (int i = 0; i <= m.degree(); ++i)
            back.push_back(m.coeff(static_cast<std::size_t>(i)) * pow(a, static_cast<unsigned>(i)));
          return primitive_part(Polynomial<Integer>(back));
        }
      }
      // next combination
      int i = s - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - 1 - s + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < s; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  throw Error(ErrorKind::unsupported_spectrum, "no exact factor found for " + to_string(q));
}

AlgebraicNumber perron_root(const Matrix<Integer>& m) {
  if (m.rows() == 0) throw Error(ErrorKind::precondition, "empty matrix");
  auto p = characteristic_polynomial(m);
  auto q = squarefree_part(p);
  auto roots = isolate_real_roots(q);
  if (roots.empty()) throw Error(ErrorKind::unsupported_spectrum, "no real eigenvalue");
  const Interval& top = roots.back();
  if (top.lo == top.hi) return AlgebraicNumber(top.lo);
  auto mp = minimal_factor(q, top);
  return AlgebraicNumber::from_interval(mp, top.lo, top.hi);
}

}  // namespace bratteli
