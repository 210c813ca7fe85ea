#pragma once

// Modes X⊗g over a point configuration with the residue-cocycle bracket, and
// a truncated model of the enveloping algebra: scalar combinations of
// normal-ordered words, reduced modulo the left ideal of high-degree regular
// modes.

#include <map>
#include <string>
#include <vector>

#include "vakm/kelement.hpp"
#include "vakm/lie.hpp"

namespace vakm {

// One basis mode: a Lie basis element tensored with a basis function, either
// a pure pole (t - a_i)^(-m) or the regular basis element of degree d.
struct BasisMode {
  int lie = 0;
  bool is_pole = false;
  int point = -1;  // pole location
  int deg = 0;     // pole order m >= 1, or regular degree d >= 0

  // canonical word order: poles first (point asc, deeper poles first), then
  // regular modes by ascending degree, ties by Lie index
  bool operator<(const BasisMode& o) const {
    if (is_pole != o.is_pole) return is_pole;
    if (is_pole) {
      if (point != o.point) return point < o.point;
      if (deg != o.deg) return deg > o.deg;
    } else if (deg != o.deg) {
      return deg < o.deg;
    }
    return lie < o.lie;
  }
  bool operator==(const BasisMode&) const = default;
};

using Word = std::vector<BasisMode>;

// value-level mode with an arbitrary function part
struct Mode {
  int lie;
  KElement fn;
};

KElement materialize(const SigmaConfig& cfg, const BasisMode& m);
std::string basis_fn_str(const SigmaConfig& cfg, const BasisMode& m);

class UEElement {
 public:
  UEElement(const LiePresentation* g, SigmaConfig cfg, int trunc);

  static UEElement unit(const LiePresentation* g, const SigmaConfig& cfg,
                        int trunc);
  static UEElement mode(const LiePresentation* g, int lie, const KElement& fn,
                        int trunc);

  const LiePresentation* algebra() const { return g_; }
  const SigmaConfig& cfg() const { return cfg_; }
  int trunc() const { return trunc_; }
  const std::map<Word, Scalar>& words() const { return w_; }
  bool is_zero() const { return w_.empty(); }
  // coefficient of the empty word
  Scalar scalar_part() const;

  UEElement operator+(const UEElement& o) const;
  UEElement operator-(const UEElement& o) const;
  UEElement operator*(const UEElement& o) const;
  UEElement operator-() const;
  UEElement scaled(const Scalar& s) const;
  bool operator==(const UEElement& o) const {
    return cfg_ == o.cfg_ && trunc_ == o.trunc_ && w_ == o.w_;
  }

  // accumulate c times the (possibly unordered) word, straightening into
  // canonical order and applying the truncation drop
  void add_word(const Word& w, const Scalar& c);

  std::string to_string() const;

 private:
  const LiePresentation* g_;
  SigmaConfig cfg_;
  int trunc_;
  std::map<Word, Scalar> w_;
};

// [X⊗f, Y⊗g] = [X,Y]⊗fg + k·κ_g(X,Y)·Res_Σ(g df)·unit
UEElement mode_bracket(const LiePresentation* g, const SigmaConfig& cfg,
                       const Mode& x, const Mode& y, int trunc);

UEElement pbw_normal_order(const LiePresentation* g, const SigmaConfig& cfg,
                           const std::vector<Mode>& word, int trunc);

}  // namespace vakm
