#pragma once

// Rational functions on the line with poles confined to a fixed finite set of
// marked points, stored exactly: a polynomial part plus one principal part per
// point.  Products recombine into this shape by exact partial fractions.

#include <string>
#include <vector>

#include "vakm/scalar.hpp"
#include "vakm/series.hpp"

namespace vakm {

// Marked points on the affine line.  Centers are scalars; a point may carry a
// coordinate symbol index (a1, a2, a3) so that merges can rename it.
class SigmaConfig {
 public:
  struct Point {
    Scalar center;
    int sym = -1;  // symbol index of the center, or -1
    bool operator==(const Point& o) const {
      return center == o.center && sym == o.sym;
    }
  };

  static SigmaConfig origin();                 // single point t = 0
  static SigmaConfig symbolic(int n);          // a1, .., an
  static SigmaConfig standard(int n);          // origin for n = 1, else symbolic
  static SigmaConfig numeric(const std::vector<Rat>& centers);

  int n() const { return int(pts.size()); }
  const Scalar& center(int i) const { return pts[size_t(i)].center; }
  int point_symbol(int i) const { return pts[size_t(i)].sym; }

  // a_i - a_j, required invertible
  Scalar gap(int i, int j) const;
  SigmaConfig without(int j) const;
  // local coordinate name at point i, e.g. "t" or "t-a2"
  std::string label(int i) const;

  bool operator==(const SigmaConfig& o) const { return pts == o.pts; }

  std::vector<Point> pts;
};

// Element of the function ring: poly_[d] is the t^d coefficient, and
// pp_[i][m-1] is the coefficient of (t - a_i)^(-m).
class KElement {
 public:
  explicit KElement(SigmaConfig cfg);

  static KElement zero(const SigmaConfig& cfg) { return KElement(cfg); }
  static KElement constant(const SigmaConfig& cfg, const Scalar& c);
  static KElement one(const SigmaConfig& cfg) { return constant(cfg, Scalar(1)); }
  static KElement from_poly(const SigmaConfig& cfg, std::vector<Scalar> coeffs);
  static KElement t_power(const SigmaConfig& cfg, int d);
  static KElement pole(const SigmaConfig& cfg, int i, int m,
                       const Scalar& c = Scalar(1));

  const SigmaConfig& cfg() const { return cfg_; }
  const std::vector<Scalar>& poly() const { return poly_; }
  const std::vector<Scalar>& principal(int i) const { return pp_[size_t(i)]; }

  bool is_zero() const;
  int poly_degree() const;   // -1 for zero polynomial part
  int pole_order(int i) const;

  KElement operator+(const KElement& o) const;
  KElement operator-() const;
  KElement operator-(const KElement& o) const;
  KElement operator*(const KElement& o) const;
  KElement scaled(const Scalar& s) const;
  bool operator==(const KElement& o) const {
    return cfg_ == o.cfg_ && poly_ == o.poly_ && pp_ == o.pp_;
  }

  KElement derivative() const;
  Scalar residue(int i) const;        // coefficient of (t - a_i)^(-1)
  Scalar coeff_pole(int i, int m) const;

  std::string to_string() const;

 private:
  void trim();

  SigmaConfig cfg_;
  std::vector<Scalar> poly_;
  std::vector<std::vector<Scalar>> pp_;
};

// Global basis function of degree n*m + i: the n-point analogue of t^d, equal
// to prod_l (t - a_l)^m times the first i linear factors.
KElement phi_basis(const SigmaConfig& cfg, int m, int i);
// Everywhere-regular basis element of degree d >= 0.
KElement reg_basis(const SigmaConfig& cfg, int d);
// Coefficients of a polynomial (given by t-power coefficients) in the regular
// basis, indexed by degree.
std::vector<Scalar> decompose_regular(const SigmaConfig& cfg,
                                      std::vector<Scalar> p);

// Sum over marked points of Res_i g df.
Scalar residue_sigma(const KElement& g, const KElement& f);

// Laurent expansion at one marked point: exact principal part plus a tail
// truncated at tail.order().
struct LaurentLocal {
  std::vector<Scalar> principal;  // principal[m-1] is the u^(-m) coefficient
  TruncatedSeries tail;

  int depth() const;
  Scalar coeff(int d) const;
  LaurentLocal operator+(const LaurentLocal& o) const;
  LaurentLocal operator*(const LaurentLocal& o) const;
  bool same_through(const LaurentLocal& o, int order) const;
  std::string to_string() const;
};

LaurentLocal local_expansion(const KElement& g, int i, int order);

// Collide point j into point i by renaming its coordinate symbol.  Both points
// must be symbolic.  Functions with a pole at the collided point do not
// survive the merge.
KElement ran_merge(const KElement& x, int j, int i);

}  // namespace vakm
