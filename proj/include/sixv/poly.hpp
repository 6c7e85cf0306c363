#pragma once

#include "sixv/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <vector>

namespace sixv {

/*
  Univariate polynomials over the integers in the single variable q.
  Coefficients are stored constant term first; the top coefficient of a
  nonzero polynomial is nonzero.
*/
class IntPoly {
public:
  IntPoly() = default;
  IntPoly(long c) { // NOLINT: implicit on purpose, mirrors ring constants
    if (c != 0) coeffs_.push_back(Int(c));
  }
  explicit IntPoly(Int c) {
    if (c != 0) coeffs_.push_back(std::move(c));
  }
  explicit IntPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static IntPoly q_power(std::size_t e, Int c = Int(1)) {
    std::vector<Int> v(e + 1, Int(0));
    v[e] = std::move(c);
    return IntPoly(std::move(v));
  }
  static IntPoly q() { return q_power(1); }
  // q - 1, the ubiquitous Hecke deformation coefficient
  static IntPoly q_minus_one() { return IntPoly(std::vector<Int>{Int(-1), Int(1)}); }

  bool is_zero() const { return coeffs_.empty(); }
  // degree of the zero polynomial reported as -1
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  Int coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Int(0); }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return IntPoly(std::move(v));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
    return IntPoly(std::move(v));
  }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> v(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPoly(std::move(v));
  }
  IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
  IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
  IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }

  bool operator==(const IntPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const IntPoly& o) const { return coeffs_ != o.coeffs_; }

  Int eval(const Int& x) const {
    Int acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }
  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + Rat(coeffs_[i]);
    return acc;
  }

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Int> coeffs_;
};

inline bool operator<(const IntPoly& a, const IntPoly& b) {
  return a.coeffs() < b.coeffs();
}

} // namespace sixv
