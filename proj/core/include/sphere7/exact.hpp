#pragma once

// Exact complex-rational scalars used by the symbolic layers (Lie algebra
// tables, Weyl algebra, Poisson algebra).

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <string>

namespace sphere7 {

using Rational = mpq_class;

class CRational {
 public:
  CRational() : re_(0), im_(0) {}
  CRational(long re) : re_(re), im_(0) {}  // NOLINT(google-explicit-constructor)
  CRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static CRational i() { return {0, 1}; }
  static CRational from_fraction(long num, long den) { return {Rational(num, den), 0}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  CRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  CRational& operator+=(const CRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  CRational& operator-=(const CRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  CRational& operator*=(const CRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  CRational& operator/=(const CRational& o);

  friend CRational operator+(CRational a, const CRational& b) { return a += b; }
  friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
  friend CRational operator*(CRational a, const CRational& b) { return a *= b; }
  friend CRational operator/(CRational a, const CRational& b) { return a /= b; }
  CRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const CRational& a, const CRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const CRational& a, const CRational& b) { return !(a == b); }

  // Total order (re, then im); used only for deterministic keys.
  friend bool operator<(const CRational& a, const CRational& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string to_string() const;

 private:
  Rational re_;
  Rational im_;
};

std::ostream& operator<<(std::ostream& os, const CRational& c);

std::string rational_to_string(const Rational& r);

}  // namespace sphere7
