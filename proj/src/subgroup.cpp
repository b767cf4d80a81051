#include "bratteli/subgroup.hpp"

#include <set>

namespace bratteli {

namespace {

// g = s*a + t*b
Integer xgcd(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Integer s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    Integer t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return r0;
}

Integer floor_div(const Integer& a, const Integer& b) { return floor(Rational(a, b)); }

std::size_t dim_of(const FieldPtr& f) { return f ? static_cast<std::size_t>(f->degree()) : 1; }

}  // namespace

Matrix<Integer> hermite_normal_form(Matrix<Integer> a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  Eigen::Index r = 0;
  for (Eigen::Index col = 0; col < n && r < m; ++col) {
    for (Eigen::Index i = r + 1; i < m; ++i) {
      if (a(i, col) == 0) continue;
      if (a(r, col) == 0) {
        a.row(r).swap(a.row(i));
        continue;
      }
      Integer s, t;
      const Integer x = a(r, col), y = a(i, col);
      const Integer g = xgcd(x, y, s, t);
      const Integer u = x / g, v = y / g;
      for (Eigen::Index j = 0; j < n; ++j) {
        Integer pr = a(r, j), pi = a(i, j);
        a(r, j) = s * pr + t * pi;
        a(i, j) = u * pi - v * pr;
      }
    }
    if (a(r, col) == 0) continue;
    if (a(r, col) < 0)
      for (Eigen::Index j = 0; j < n; ++j) a(r, j) = -a(r, j);
    for (Eigen::Index i = 0; i < r; ++i) {
      Integer q = floor_div(a(i, col), a(r, col));
      if (q != 0)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) -= q * a(r, j);
    }
    ++r;
  }
  return a.topRows(r);
}

FinGenSubgroup FinGenSubgroup::from_generators(const FieldPtr& field, const std::vector<FieldElement>& gens) {
  FinGenSubgroup g;
  g.field_ = field;
  const std::size_t d = dim_of(field);
  std::vector<std::vector<Rational>> rows;
  for (const auto& x : gens) {
    if (x.field() && !same_field(x.field(), field)) {
      if (!field && x.is_rational()) {
        rows.push_back({x.to_rational()});
        continue;
      }
      throw Error(ErrorKind::coordinate_dimension, "generator " + x.to_string() + " lies outside the stated field");
    }
    rows.push_back(x.coords(d));
  }
  Integer den = 1;
  for (const auto& r : rows)
    for (const auto& c : r) den = lcm(den, bratteli::den(c));
  Matrix<Integer> m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = num(rows[i][j] * den);
  g.den_ = den;
  g.hnf_ = hermite_normal_form(m);
  if (g.hnf_.rows() == 0) g.den_ = 1;
  return g;
}

std::vector<FieldElement> FinGenSubgroup::basis() const {
  std::vector<FieldElement> out;
  for (Eigen::Index i = 0; i < hnf_.rows(); ++i) {
    std::vector<Rational> c;
    for (Eigen::Index j = 0; j < hnf_.cols(); ++j) c.push_back(Rational(hnf_(i, j), den_));
    out.emplace_back(field_, std::move(c));
  }
  return out;
}

std::vector<Rational> FinGenSubgroup::scaled_coords(const FieldElement& x) const {
  std::vector<Rational> c;
  if (!field_) {
    if (!x.is_rational()) return {};
    c = {x.to_rational()};
  } else {
    if (x.field() && !same_field(x.field(), field_))
      throw Error(ErrorKind::unsupported_field, "element and group live in different fields");
    c = x.coords(dimension());
  }
  for (auto& v : c) v *= den_;
  return c;
}

std::optional<Vector<Rational>> FinGenSubgroup::coordinates(const FieldElement& x) const {
  auto y = scaled_coords(x);
  if (y.empty()) return std::nullopt;
  Vector<Rational> out(hnf_.rows());
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < hnf_.rows(); ++i) {
    while (hnf_(i, col) == 0) ++col;
    Rational q = y[static_cast<std::size_t>(col)] / Rational(hnf_(i, col));
    out(i) = q;
    for (Eigen::Index j = col; j < hnf_.cols(); ++j) y[static_cast<std::size_t>(j)] -= q * Rational(hnf_(i, j));
  }
  for (const auto& v : y)
    if (v != 0) return std::nullopt;
  return out;
}

bool FinGenSubgroup::contains(const FieldElement& x) const {
  auto c = coordinates(x);
  if (!c) return false;
  for (Eigen::Index i = 0; i < c->size(); ++i)
    if (den((*c)(i)) != 1) return false;
  return true;
}

FinGenSubgroup FinGenSubgroup::scaled(const FieldElement& c) const {
  std::vector<FieldElement> gens;
  for (const auto& b : basis()) gens.push_back(b * c);
  FieldPtr f = field_ ? field_ : c.field();
  if (f && c.field() && !same_field(f, c.field())) throw Error(ErrorKind::unsupported_field, "scale outside field");
  return from_generators(f, gens);
}

bool operator==(const FinGenSubgroup& a, const FinGenSubgroup& b) {
  if (a.rank() == 0 && b.rank() == 0) return true;
  return same_field(a.field_, b.field_) && a.den_ == b.den_ && a.hnf_.rows() == b.hnf_.rows() &&
         a.hnf_.cols() == b.hnf_.cols() && a.hnf_ == b.hnf_;
}

std::string FinGenSubgroup::to_string() const {
  std::string s = "span{";
  auto b = basis();
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? ", " : "") + b[i].to_string();
  return s + "}";
}

void require_lambda_invariant(const FinGenSubgroup& h, const FieldElement& lambda) {
  for (const auto& b : h.basis())
    if (!h.contains(lambda * b))
      throw Error(ErrorKind::precondition, "lambda*H is not contained in H (" + (lambda * b).to_string() + ")");
}

ClosureAnswer closure_member_rational(const FinGenSubgroup& h, const FieldElement& lambda, const FieldElement& x) {
  if (h.field() || !lambda.is_rational() || !x.is_rational() || h.rank() > 1)
    throw Error(ErrorKind::precondition, "rational route needs H, lambda and x in Q");
  if (x.is_zero()) return {Tri::yes, 0};
  if (h.rank() == 0) return {Tri::no, -1};
  const Rational q = x.to_rational() / h.basis()[0].to_rational();
  const Rational l = lambda.to_rational();
  if (den(l) != 1) throw Error(ErrorKind::precondition, "lambda*H is not contained in H");
  if (den(q) == 1) return {Tri::yes, 0};
  const Integer lam = boost::multiprecision::abs(num(l));
  if (lam == 0) return {Tri::yes, 1};
  // rem_{k+1} = rem_k / gcd(rem_k, λ) equals den(q) / gcd(den(q), λ^{k+1})
  Integer rem = den(q);
  int n = 0;
  while (rem != 1) {
    Integer g = gcd(rem, lam);
    if (g == 1) return {Tri::no, -1};
    rem /= g;
    ++n;
  }
  return {Tri::yes, n};
}

ClosureAnswer closure_member_lattice(const FinGenSubgroup& h, const FieldElement& lambda, const FieldElement& x,
                                     int bound) {
  if (x.is_zero()) return {Tri::yes, 0};
  auto c = h.coordinates(x);
  if (!c) {
    // x ∉ QH; λ^N x ∈ H would force x ∈ QH unless λ^N x = 0
    if (lambda.is_zero()) return {Tri::yes, 1};
    return {Tri::no, -1};
  }
  const auto r = static_cast<Eigen::Index>(h.rank());
  const auto basis = h.basis();
  Matrix<Integer> t(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    auto img = h.coordinates(lambda * basis[static_cast<std::size_t>(i)]);
    if (!img) throw Error(ErrorKind::precondition, "lambda*H is not contained in H");
    for (Eigen::Index j = 0; j < r; ++j) {
      if (den((*img)(j)) != 1) throw Error(ErrorKind::precondition, "lambda*H is not contained in H");
      t(i, j) = num((*img)(j));
    }
  }
  Integer d = 1;
  for (Eigen::Index i = 0; i < r; ++i) d = lcm(d, den((*c)(i)));
  std::vector<Integer> s(static_cast<std::size_t>(r));
  auto reduce = [&](Integer v) {
    v %= d;
    if (v < 0) v += d;
    return v;
  };
  for (Eigen::Index i = 0; i < r; ++i) s[static_cast<std::size_t>(i)] = reduce(num((*c)(i) * d));
  // length of (Z/d)^r bounds the ascending kernel chain of T^N
  const long length = static_cast<long>(r) * static_cast<long>(boost::multiprecision::msb(d) + 1);
  const long cap = 1L << 20;
  const long limit = std::min(std::max<long>(length, 0), std::max<long>(bound, cap));
  std::set<std::vector<Integer>> seen;
  for (long n = 0; n <= limit; ++n) {
    bool zero = true;
    for (const auto& v : s) zero = zero && v == 0;
    if (zero) return {Tri::yes, static_cast<int>(n)};
    if (!seen.insert(s).second) return {Tri::no, -1};  // orbit cycles without reaching 0
    std::vector<Integer> next(static_cast<std::size_t>(r), Integer(0));
    for (Eigen::Index j = 0; j < r; ++j) {
      Integer acc = 0;
      for (Eigen::Index i = 0; i < r; ++i) acc += s[static_cast<std::size_t>(i)] * t(i, j);
      next[static_cast<std::size_t>(j)] = reduce(acc);
    }
    s = std::move(next);
  }
  if (limit >= length) return {Tri::no, -1};
  return {Tri::undetermined, -1};
}

ClosureAnswer lambda_closure_member(const FinGenSubgroup& h, const FieldElement& lambda, const FieldElement& x,
                                    int bound) {
  require_lambda_invariant(h, lambda);
  if (x.sign() == 0) return {Tri::yes, 0};
  if (!h.field() && lambda.is_rational() && h.rank() <= 1) {
    if (!x.is_rational()) return {Tri::no, -1};
    return closure_member_rational(h, lambda, x);
  }
  return closure_member_lattice(h, lambda, x, bound);
}

bool scaled_group_equal(const FinGenSubgroup& g1, const FinGenSubgroup& g2, const FieldElement& c) {
  return g1.scaled(c) == g2;
}

ScaleSearch find_scale(const FinGenSubgroup& g1, const FinGenSubgroup& g2) {
  ScaleSearch out;
  out.complete = !g1.field() && !g2.field() && g1.rank() <= 1 && g2.rank() <= 1;
  if (g1.rank() != g2.rank()) {
    out.complete = true;  // scaling preserves rank
    return out;
  }
  if (g1.rank() == 0) {
    out.scale = FieldElement(1);
    return out;
  }
  for (const auto& b1 : g1.basis())
    for (const auto& b2 : g2.basis()) {
      FieldElement c = abs(b2 / b1);
      if (scaled_group_equal(g1, g2, c)) {
        out.scale = c;
        return out;
      }
    }
  return out;
}

}  // namespace bratteli
