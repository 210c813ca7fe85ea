#include "vakm/series.hpp"

#include <algorithm>

namespace vakm {

TruncatedSeries::TruncatedSeries(std::string var, int order)
    : var_(std::move(var)), order_(order), c_(size_t(order + 1)) {
  if (order < 0) throw Error(Errc::bad_argument, "negative series order");
}

TruncatedSeries TruncatedSeries::from_poly(std::string var,
                                           std::vector<Scalar> coeffs,
                                           int order) {
  TruncatedSeries s(std::move(var), order);
  for (size_t i = 0; i < coeffs.size() && i <= size_t(order); ++i)
    s.c_[i] = std::move(coeffs[i]);
  return s;
}

const Scalar& TruncatedSeries::coeff(int i) const {
  if (i < 0 || i > order_) throw Error(Errc::bad_argument, "series coefficient out of range");
  return c_[size_t(i)];
}

TruncatedSeries TruncatedSeries::with_coeff(int i, Scalar v) const {
  TruncatedSeries s(*this);
  if (i < 0 || i > order_) throw Error(Errc::bad_argument, "series coefficient out of range");
  s.c_[size_t(i)] = std::move(v);
  return s;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  int m = std::min(order_, o.order_);
  TruncatedSeries s(var_, m);
  for (int i = 0; i <= m; ++i) s.c_[size_t(i)] = c_[size_t(i)] + o.c_[size_t(i)];
  return s;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  return *this + (-o);
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries s(*this);
  for (auto& x : s.c_) x = -x;
  return s;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  int m = std::min(order_, o.order_);
  TruncatedSeries s(var_, m);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; i + j <= m; ++j)
      s.c_[size_t(i + j)] = s.c_[size_t(i + j)] + c_[size_t(i)] * o.c_[size_t(j)];
  return s;
}

TruncatedSeries TruncatedSeries::scaled(const Scalar& v) const {
  TruncatedSeries s(*this);
  for (auto& x : s.c_) x = x * v;
  return s;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Scalar& x) { return x.is_zero(); });
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  if (order > order_) throw Error(Errc::bad_argument, "cannot extend a truncated series");
  TruncatedSeries s(var_, order);
  for (int i = 0; i <= order; ++i) s.c_[size_t(i)] = c_[size_t(i)];
  return s;
}

TruncatedSeries TruncatedSeries::derivative() const {
  if (order_ < 1) throw Error(Errc::bad_argument, "derivative needs order >= 1");
  TruncatedSeries s(var_, order_ - 1);
  for (int i = 1; i <= order_; ++i) s.c_[size_t(i - 1)] = Scalar(i) * c_[size_t(i)];
  return s;
}

TruncatedSeries TruncatedSeries::mul_inverse() const {
  Scalar u = c_[0].inv();
  TruncatedSeries s(var_, order_);
  s.c_[0] = u;
  for (int i = 1; i <= order_; ++i) {
    Scalar acc;
    for (int j = 1; j <= i; ++j) acc = acc + c_[size_t(j)] * s.c_[size_t(i - j)];
    s.c_[size_t(i)] = -(u * acc);
  }
  return s;
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& inner) const {
  if (!inner.c_[0].is_zero())
    throw Error(Errc::not_a_coordinate, "not a coordinate");
  int m = std::min(order_, inner.order_);
  TruncatedSeries in = inner.truncated(m);
  in.var_ = inner.var_;
  // Horner evaluation, truncating at each step
  TruncatedSeries acc(inner.var_, m);
  for (int i = order_; i >= 0; --i) {
    TruncatedSeries next = acc * in;
    next.c_[0] = next.c_[0] + c_[size_t(i)];
    acc = std::move(next);
  }
  return acc;
}

TruncatedSeries TruncatedSeries::invert() const {
  if (!c_[0].is_zero() || order_ < 1 || !c_[1].invertible())
    throw Error(Errc::not_a_coordinate, "not a coordinate");
  TruncatedSeries g(var_, order_);
  Scalar lin_inv = c_[1].inv();
  g.c_[1] = lin_inv;
  for (int d = 2; d <= order_; ++d) {
    TruncatedSeries r = truncated(d).compose(g.truncated(d));
    g.c_[size_t(d)] = -(lin_inv * r.coeff(d));
  }
  return g;
}

TruncatedSeries TruncatedSeries::schwarzian() const {
  if (order_ < 3) throw Error(Errc::bad_argument, "schwarzian needs order >= 3");
  TruncatedSeries d1 = derivative();
  TruncatedSeries d2 = d1.derivative();
  TruncatedSeries d3 = d2.derivative();
  if (!d1.coeff(0).invertible())
    throw Error(Errc::not_a_coordinate, "not a coordinate");
  TruncatedSeries inv1 = d1.truncated(order_ - 3).mul_inverse();
  TruncatedSeries a = d3 * inv1;
  TruncatedSeries b = d2.truncated(order_ - 3) * inv1;
  return a - (b * b).scaled(Scalar::rational(3, 2));
}

std::string coeff_term_str(const Scalar& c, const std::string& var, int power,
                           bool& lead) {
  if (c.is_zero()) return "";
  std::string body;
  bool neg = false;
  if (c.is_rational()) {
    Rat v = c.rational_value();
    if (v < 0) {
      neg = true;
      v = -v;
    }
    Scalar av(v);
    if (power == 0)
      body = av.to_string();
    else if (v == 1)
      body = "";
    else
      body = av.to_string();
  } else {
    body = "(" + c.to_string() + ")";
  }
  std::string vp;
  if (power != 0) {
    vp = var;
    if (power != 1) vp += "^" + std::to_string(power);
  }
  std::string joined = body.empty() ? vp : (vp.empty() ? body : body + vp);
  std::string out;
  if (lead) {
    out = (neg ? "-" : "") + joined;
    lead = false;
  } else {
    out = (neg ? " - " : " + ") + joined;
  }
  return out;
}

std::string TruncatedSeries::to_string() const {
  std::string s;
  bool lead = true;
  for (int i = 0; i <= order_; ++i) s += coeff_term_str(c_[size_t(i)], var_, i, lead);
  if (s.empty()) s = "0";
  return s + " + O(" + var_ + "^" + std::to_string(order_ + 1) + ")";
}

}  // namespace vakm
