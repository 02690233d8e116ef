#include "sphere7/exact.hpp"

#include <stdexcept>

namespace sphere7 {

CRational& CRational::operator/=(const CRational& o) {
  const Rational den = o.norm();
  if (sgn(den) == 0) throw std::domain_error("division by zero complex rational");
  Rational r = (re_ * o.re_ + im_ * o.im_) / den;
  Rational m = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(r);
  im_ = std::move(m);
  return *this;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

std::string CRational::to_string() const {
  if (is_real()) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "i";
  std::string s = re_.get_str();
  if (sgn(im_) > 0) s += "+";
  return s + im_.get_str() + "i";
}

std::ostream& operator<<(std::ostream& os, const CRational& c) { return os << c.to_string(); }

}  // namespace sphere7
