#pragma once

#include <map>
#include <string>
#include <vector>

#include "vakm/affine.hpp"
#include "vakm/kelement.hpp"
#include "vakm/lie.hpp"
#include "vakm/scalar.hpp"

namespace vakm {

// Creation mode x_(-n), n >= 1, of the vacuum module.
struct VMode {
  int lie = 0;
  int n = 1;
  bool operator==(const VMode&) const = default;
  // key order; canonical words are weakly increasing under it
  bool operator<(const VMode& o) const {
    if (n != o.n) return n > o.n;
    return lie < o.lie;
  }
};

using VWord = std::vector<VMode>;

bool vword_canonical(const VWord& w);
int vword_degree(const VWord& w);

// State of the vacuum module V(g), optionally tensored with a polynomial
// in t per monomial (the O-part). A plain state has constant O-parts.
class VState {
 public:
  explicit VState(const LiePresentation* g) : g_(g) {}
  static VState vacuum(const LiePresentation* g);

  const LiePresentation* algebra() const { return g_; }
  const std::map<VWord, KElement>& words() const { return w_; }
  bool is_zero() const { return w_.empty(); }
  bool has_opart() const;  // any nonconstant O-part
  int degree() const;      // max word degree, -1 when zero

  VState operator+(const VState&) const;
  VState operator-(const VState&) const;
  VState operator-() const;
  VState scaled(const Scalar&) const;
  bool operator==(const VState&) const;

  // adds opart * w; w must be canonical
  void add_word(const VWord& w, const KElement& opart);
  void add_word(const VWord& w, const Scalar& c);

  std::string to_string() const;

 private:
  const LiePresentation* g_ = nullptr;
  std::map<VWord, KElement> w_;
};

// All canonical PBW words of exact degree d.
std::vector<VWord> pbw_words(const LiePresentation* g, int d);
VState basis_state(const LiePresentation* g, const VWord& w);

// x_(m) acting on v for any integer m; negative m creates, the result is
// re-canonicalized through the affine commutation relations at level g->level.
VState mode_action(int lie, int m, const VState& v);

// n-th product; O-parts combine by (X(x)f)_(n)(Y(x)g) = sum_k 1/k! X_(n+k)Y (x) g*d^k f.
VState nth_product(const VState& A, const VState& B, int n);
VState extended_nth_product(const VState& A, const VState& B, int n);

// T on the module part only grows mode depth; on the O-part T = -d/dt.
VState translation(const VState& A);

// 1 + largest j in [0, cutoff) with A_(j)B != 0; cutoff when still nonzero there.
int locality_order(const VState& A, const VState& B, int cutoff = 8);

// Direct evaluation of the field of A at the function f, in U at the given
// truncation. Throws window_too_small if the creation tail fails to close.
UEElement eval_field(const VState& A, const SigmaConfig& cfg, const KElement& f, int trunc);

// Index of a basis function of K: a pole (t-a_point)^-k or the regular
// element of degree k.
struct FnKey {
  bool is_pole = false;
  int point = -1;
  int k = 0;
  bool operator==(const FnKey&) const = default;
  bool operator<(const FnKey& o) const {
    if (is_pole != o.is_pole) return is_pole;
    if (point != o.point) return point < o.point;
    return k < o.k;
  }
};

// The field of a state as a finite table over the basis functions.
class Field {
 public:
  Field(VState state, SigmaConfig cfg, int trunc, int pole_cutoff);

  const VState& state() const { return state_; }
  const SigmaConfig& cfg() const { return cfg_; }
  int trunc() const { return trunc_; }
  int pole_cutoff() const { return pole_cutoff_; }
  const std::map<FnKey, UEElement>& table() const { return table_; }

  // linear in f; f must decompose within the tabulated window
  UEElement apply(const KElement& f) const;

  std::string to_json() const;

 private:
  VState state_;
  SigmaConfig cfg_;
  int trunc_;
  int pole_cutoff_;
  std::map<FnKey, UEElement> table_;
};

Field field_of(const VState& A, const SigmaConfig& cfg, int trunc, int pole_cutoff = -1);

// Left action of a canonical word on the vacuum: regular modes annihilate,
// poles create; single-point configurations only.
VState apply_to_vacuum(const LiePresentation* g, const UEElement& u);

// Element of the mode Lie algebra: combinations A[f] with A a plain state
// and f a function of the configuration, modulo (TA)[f] = -A[df/dt].
class LieModeElement {
 public:
  LieModeElement(const LiePresentation* g, SigmaConfig cfg) : g_(g), cfg_(std::move(cfg)) {}
  static LieModeElement make(const VState& A, const KElement& f);

  const LiePresentation* algebra() const { return g_; }
  const SigmaConfig& cfg() const { return cfg_; }
  const std::map<VWord, KElement>& entries() const { return e_; }
  bool is_zero() const { return e_.empty(); }

  LieModeElement operator+(const LieModeElement&) const;
  LieModeElement operator-(const LieModeElement&) const;
  LieModeElement operator-() const;
  LieModeElement scaled(const Scalar&) const;
  bool operator==(const LieModeElement&) const;

  void add_entry(const VWord& w, const KElement& f);  // normalizes

  std::string to_string() const;

 private:
  friend LieModeElement lie_mode_bracket(const LieModeElement&, const LieModeElement&);
  void normalize();
  void run_degree(int d);
  void raw_add(const VWord& w, const KElement& f);
  const LiePresentation* g_ = nullptr;
  SigmaConfig cfg_;
  std::map<VWord, KElement> e_;
};

LieModeElement lie_mode_bracket(const LieModeElement& x, const LieModeElement& y);
UEElement beta(const LieModeElement& x, int trunc);

}  // namespace vakm
