#include "bratteli/polynomial.hpp"

namespace bratteli {

Integer content(const Polynomial<Integer>& p) {
  Integer g = 0;
  for (const auto& c : p.coeffs()) g = gcd(g, c);
  return g;
}

Polynomial<Integer> primitive_part(const Polynomial<Integer>& p) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<Integer> c;
  for (const auto& x : p.coeffs()) c.push_back(x / g);
  return Polynomial<Integer>(std::move(c));
}

Polynomial<Integer> primitive_part(const Polynomial<Rational>& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, den(c));
  std::vector<Integer> c;
  for (const auto& x : p.coeffs()) c.push_back(num(x) * (l / den(x)));
  return primitive_part(Polynomial<Integer>(std::move(c)));
}

Polynomial<Integer> squarefree_part(const Polynomial<Integer>& p) {
  auto q = convert<Integer, Rational>(p);
  auto g = gcd(q, derivative(q));
  return primitive_part(q / g);
}

namespace {
template <typename Scalar>
std::string render(const Polynomial<Scalar>& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    Scalar c = p.coeff(static_cast<std::size_t>(i));
    if (c == 0) continue;
    bool neg = c < 0;
    Scalar a = neg ? Scalar(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (i == 0 || a != 1) {
      out += to_string(a);
      if (!mono.empty()) out += "*";
    }
    out += mono;
  }
  return out;
}
}  // namespace

std::string to_string(const Polynomial<Integer>& p, const std::string& var) { return render(p, var); }
std::string to_string(const Polynomial<Rational>& p, const std::string& var) { return render(p, var); }

}  // namespace bratteli
