#include "unitri/qpoly.hpp"

#include <sstream>

namespace unitri {

QPoly::QPoly(Rational constant) {
  if (constant != 0) coeff_.push_back(std::move(constant));
}

QPoly QPoly::variable() { return power(1); }

QPoly QPoly::power(int k) {
  if (k < 0) throw ValidationError("QPoly::power: negative exponent");
  QPoly r;
  r.coeff_.assign(static_cast<size_t>(k) + 1, Rational(0));
  r.coeff_.back() = 1;
  return r;
}

QPoly QPoly::from_coefficients(std::vector<Rational> ascending) {
  QPoly r;
  r.coeff_ = std::move(ascending);
  r.trim();
  return r;
}

Rational QPoly::coefficient(int k) const {
  if (k < 0 || k >= static_cast<int>(coeff_.size())) return Rational(0);
  return coeff_[static_cast<size_t>(k)];
}

void QPoly::trim() {
  while (!coeff_.empty() && coeff_.back() == 0) coeff_.pop_back();
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (coeff_.size() < o.coeff_.size()) coeff_.resize(o.coeff_.size(), Rational(0));
  for (size_t i = 0; i < o.coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (coeff_.size() < o.coeff_.size()) coeff_.resize(o.coeff_.size(), Rational(0));
  for (size_t i = 0; i < o.coeff_.size(); ++i) coeff_[i] -= o.coeff_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const QPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeff_.clear();
    return *this;
  }
  std::vector<Rational> out(coeff_.size() + o.coeff_.size() - 1, Rational(0));
  for (size_t i = 0; i < coeff_.size(); ++i) {
    if (coeff_[i] == 0) continue;
    for (size_t j = 0; j < o.coeff_.size(); ++j) out[i + j] += coeff_[i] * o.coeff_[j];
  }
  coeff_ = std::move(out);
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const Rational& c) {
  if (c == 0) {
    coeff_.clear();
    return *this;
  }
  for (auto& a : coeff_) a *= c;
  return *this;
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& a : r.coeff_) a = -a;
  return r;
}

QPoly QPoly::pow(int k) const {
  if (k < 0) throw ValidationError("QPoly::pow: negative exponent");
  QPoly r(Rational(1));
  QPoly base = *this;
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

Rational QPoly::evaluate(const Rational& x) const {
  Rational r(0);
  for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) r = r * x + *it;
  return r;
}

BigInt QPoly::evaluate_int(const BigInt& x) const {
  Rational v = evaluate(Rational(x));
  if (denominator(v) != 1)
    throw InternalError("QPoly::evaluate_int: non-integer value " + v.str());
  return numerator(v);
}

bool QPoly::has_integer_coefficients() const {
  for (const auto& a : coeff_)
    if (denominator(a) != 1) return false;
  return true;
}

QPoly QPoly::shifted_down_one() const {
  // Horner in the shifted variable: P(u + 1) built from the top coefficient down.
  QPoly r;
  const QPoly u_plus_1 = QPoly::variable() + QPoly(Rational(1));
  for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) {
    r *= u_plus_1;
    r += QPoly(*it);
  }
  return r;
}

std::string QPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeff_[static_cast<size_t>(k)];
    if (c == 0) continue;
    const bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    const bool unit = (a == 1) && k > 0;
    if (!unit) {
      if (denominator(a) == 1)
        os << numerator(a).str();
      else
        os << "(" << a.str() << ")";
    }
    if (k > 0) {
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

bool is_integer_valued(const QPoly& p, const BigInt& probe_start) {
  const int m = std::max(p.degree(), 0);
  for (int i = 0; i <= m; ++i) {
    Rational v = p.evaluate(Rational(probe_start + i));
    if (denominator(v) != 1) return false;
  }
  return true;
}

}  // namespace unitri
