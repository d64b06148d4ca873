#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace maxineq {

// A nonnegative-or-finite real extended with +inf. NaN is rejected at
// construction so every downstream comparison stays total; -inf is never
// a meaningful value here.
class ExtendedReal {
 public:
  ExtendedReal() = default;
  ExtendedReal(double v) : v_(v) {
    if (std::isnan(v)) throw std::domain_error("ExtendedReal: NaN is not a value");
    if (std::isinf(v) && v < 0) throw std::domain_error("ExtendedReal: -inf is not a value");
  }

  static ExtendedReal infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }

  bool is_infinite() const { return std::isinf(v_); }
  bool is_finite() const { return !std::isinf(v_); }

  // Raw value; +inf passes through.
  double as_double() const { return v_; }

  double finite_value() const {
    if (is_infinite())
      throw std::domain_error("ExtendedReal: infinite value where a finite one is required");
    return v_;
  }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    return ExtendedReal(a.v_ + b.v_);
  }
  friend ExtendedReal operator*(double s, ExtendedReal a) {
    if (s == 0.0 && a.is_infinite())
      throw std::domain_error("ExtendedReal: 0 * inf");
    return ExtendedReal(s * a.v_);
  }
  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }
  friend bool operator<(ExtendedReal a, ExtendedReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtendedReal a, ExtendedReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtendedReal a, ExtendedReal b) { return a.v_ >= b.v_; }
  friend bool operator<(ExtendedReal a, double b) { return a.v_ < b; }
  friend bool operator>(ExtendedReal a, double b) { return a.v_ > b; }
  friend bool operator<=(ExtendedReal a, double b) { return a.v_ <= b; }
  friend bool operator>=(ExtendedReal a, double b) { return a.v_ >= b; }

 private:
  double v_ = 0.0;
};

}  // namespace maxineq
