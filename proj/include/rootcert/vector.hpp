#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rootcert/rational.hpp"

namespace rootcert {

/// The constant c in <e_i, e_j> = c * delta_ij.
struct FormScale {
  Rational scale{1};
  friend bool operator==(const FormScale&, const FormScale&) = default;
};

/// A vector in the ambient coordinates e_1..e_m of a root system, together
/// with the diagonal form it is measured by. Coordinate i of the API is e_{i+1}.
class Vector {
 public:
  Vector() = default;
  Vector(std::vector<Rational> coords, FormScale form) : coords_(std::move(coords)), form_(form) {}

  static Vector zero(std::size_t dim, FormScale form) { return Vector(std::vector<Rational>(dim), form); }
  static Vector unit(std::size_t dim, std::size_t i, FormScale form) {
    Vector v = zero(dim, form);
    v.coords_.at(i) = 1;
    return v;
  }

  std::size_t dim() const { return coords_.size(); }
  FormScale form() const { return form_; }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }

  bool is_zero() const;
  /// Bit i set iff coordinate i is nonzero.
  unsigned support_mask() const;

  Vector operator-() const;
  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(const Rational& s);
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const Rational& s, Vector v) { return v *= s; }
  friend Vector operator*(Vector v, const Rational& s) { return v *= s; }

  /// Lexicographic on coordinates; vectors of different forms never compare equal.
  friend bool operator==(const Vector& a, const Vector& b) = default;
  friend bool operator<(const Vector& a, const Vector& b) { return a.coords_ < b.coords_; }

  /// "(1, -1/2, 0)".
  std::string to_string() const;

 private:
  void check_compatible(const Vector& o) const;

  std::vector<Rational> coords_;
  FormScale form_;
};

/// scale * sum u_i v_i. Throws UsageError on dimension or form mismatch.
Rational inner_product(const Vector& u, const Vector& v);
inline Rational norm(const Vector& v) { return inner_product(v, v); }

/// Sum of |x_i| over the coordinates in mask S (all coordinates when S is ~0).
Rational abs_sum(const Vector& v, unsigned mask = ~0u);

}  // namespace rootcert
