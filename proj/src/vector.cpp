#include "rootcert/vector.hpp"

#include "rootcert/error.hpp"

namespace rootcert {

bool Vector::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

unsigned Vector::support_mask() const {
  unsigned mask = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (!coords_[i].is_zero()) mask |= 1u << i;
  return mask;
}

void Vector::check_compatible(const Vector& o) const {
  if (dim() != o.dim())
    throw UsageError("vector dimension mismatch: " + std::to_string(dim()) + " vs " + std::to_string(o.dim()));
  if (!(form_ == o.form_)) throw UsageError("vector form mismatch");
}

Vector Vector::operator-() const {
  Vector r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

Vector& Vector::operator+=(const Vector& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Vector& Vector::operator*=(const Rational& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

std::string Vector::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ", ";
    out += coords_[i].to_string();
  }
  return out + ")";
}

Rational inner_product(const Vector& u, const Vector& v) {
  if (u.dim() != v.dim())
    throw UsageError("inner product of vectors with dimensions " + std::to_string(u.dim()) + " and " +
                     std::to_string(v.dim()));
  if (!(u.form() == v.form())) throw UsageError("inner product of vectors with different forms");
  Rational s;
  for (std::size_t i = 0; i < u.dim(); ++i) s += u[i] * v[i];
  return u.form().scale * s;
}

Rational abs_sum(const Vector& v, unsigned mask) {
  Rational s;
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (mask >> i & 1u) s += v[i].abs();
  return s;
}

}  // namespace rootcert
