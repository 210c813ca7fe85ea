#include "vakm/affine.hpp"

namespace vakm {

KElement materialize(const SigmaConfig& cfg, const BasisMode& m) {
  if (m.is_pole) return KElement::pole(cfg, m.point, m.deg);
  return reg_basis(cfg, m.deg);
}

std::string basis_fn_str(const SigmaConfig& cfg, const BasisMode& m) {
  auto pow_str = [](const std::string& base, int e) {
    if (e == 1) return base;
    return base + "^" + std::to_string(e);
  };
  if (m.is_pole) {
    const std::string lbl = cfg.label(m.point);
    std::string base = lbl == "t" ? lbl : "(" + lbl + ")";
    return base + "^-" + std::to_string(m.deg);
  }
  if (m.deg == 0) return "1";
  if (cfg.n() == 1) return pow_str("t", m.deg);
  int q = m.deg / cfg.n(), r = m.deg % cfg.n();
  std::string s;
  if (q > 0) s = pow_str("phi", q);
  for (int l = 0; l < r; ++l) {
    if (!s.empty()) s += "*";
    s += "(" + cfg.label(l) + ")";
  }
  return s;
}

namespace {

// expansion of an arbitrary function part over the basis modes
std::vector<std::pair<BasisMode, Scalar>> expand_fn(const SigmaConfig& cfg,
                                                    int lie,
                                                    const KElement& fn) {
  std::vector<std::pair<BasisMode, Scalar>> out;
  for (int i = 0; i < cfg.n(); ++i) {
    const auto& pp = fn.principal(i);
    for (int m = 1; m <= int(pp.size()); ++m)
      if (!pp[size_t(m - 1)].is_zero())
        out.push_back({BasisMode{lie, true, i, m}, pp[size_t(m - 1)]});
  }
  auto reg = decompose_regular(cfg, fn.poly());
  for (size_t d = 0; d < reg.size(); ++d)
    if (!reg[d].is_zero())
      out.push_back({BasisMode{lie, false, -1, int(d)}, reg[d]});
  return out;
}

}  // namespace

UEElement::UEElement(const LiePresentation* g, SigmaConfig cfg, int trunc)
    : g_(g), cfg_(std::move(cfg)), trunc_(trunc) {}

UEElement UEElement::unit(const LiePresentation* g, const SigmaConfig& cfg,
                          int trunc) {
  UEElement u(g, cfg, trunc);
  u.w_[Word{}] = Scalar(1);
  return u;
}

UEElement UEElement::mode(const LiePresentation* g, int lie, const KElement& fn,
                          int trunc) {
  UEElement u(g, fn.cfg(), trunc);
  for (const auto& [bm, c] : expand_fn(fn.cfg(), lie, fn))
    u.add_word(Word{bm}, c);
  return u;
}

Scalar UEElement::scalar_part() const {
  auto it = w_.find(Word{});
  return it == w_.end() ? Scalar(0) : it->second;
}

UEElement UEElement::operator+(const UEElement& o) const {
  if (!(cfg_ == o.cfg_)) throw Error(Errc::bad_argument, "mismatched point configurations");
  if (trunc_ != o.trunc_)
    throw Error(Errc::truncation_mismatch, "mismatched truncation");
  UEElement r(*this);
  for (const auto& [w, c] : o.w_) {
    Scalar s = r.w_.count(w) ? r.w_[w] + c : c;
    if (s.is_zero())
      r.w_.erase(w);
    else
      r.w_[w] = s;
  }
  return r;
}

UEElement UEElement::operator-() const {
  UEElement r(*this);
  for (auto& [w, c] : r.w_) c = -c;
  return r;
}

UEElement UEElement::operator-(const UEElement& o) const { return *this + (-o); }

UEElement UEElement::scaled(const Scalar& s) const {
  UEElement r(g_, cfg_, trunc_);
  if (s.is_zero()) return r;
  for (const auto& [w, c] : w_) {
    Scalar sc = c * s;
    if (!sc.is_zero()) r.w_[w] = sc;
  }
  return r;
}

UEElement UEElement::operator*(const UEElement& o) const {
  if (!(cfg_ == o.cfg_)) throw Error(Errc::bad_argument, "mismatched point configurations");
  if (trunc_ != o.trunc_)
    throw Error(Errc::truncation_mismatch, "mismatched truncation");
  UEElement r(g_, cfg_, trunc_);
  for (const auto& [w1, c1] : w_)
    for (const auto& [w2, c2] : o.w_) {
      Word cat = w1;
      cat.insert(cat.end(), w2.begin(), w2.end());
      r.add_word(cat, c1 * c2);
    }
  return r;
}

void UEElement::add_word(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    if (!(w[i + 1] < w[i])) continue;
    // swap the inversion and add the bracket of the two modes
    Word sw = w;
    std::swap(sw[i], sw[i + 1]);
    add_word(sw, c);

    const BasisMode &ma = w[i], &mb = w[i + 1];
    KElement fa = materialize(cfg_, ma), fb = materialize(cfg_, mb);
    KElement prod = fa * fb;
    const auto& cc = g_->c[size_t(ma.lie)][size_t(mb.lie)];
    Word rest(w.begin(), w.begin() + long(i));
    Word tail(w.begin() + long(i) + 2, w.end());
    for (int p = 0; p < g_->dim(); ++p) {
      if (cc[size_t(p)] == 0) continue;
      for (const auto& [bm, coeff] : expand_fn(cfg_, p, prod)) {
        Word nw = rest;
        nw.push_back(bm);
        nw.insert(nw.end(), tail.begin(), tail.end());
        add_word(nw, c * Scalar(cc[size_t(p)]) * coeff);
      }
    }
    Rat kap = g_->kappa_g[size_t(ma.lie)][size_t(mb.lie)];
    if (kap != 0) {
      Scalar central =
          g_->level * Scalar(kap) * residue_sigma(fb, fa);
      if (!central.is_zero()) {
        Word nw = rest;
        nw.insert(nw.end(), tail.begin(), tail.end());
        add_word(nw, c * central);
      }
    }
    return;
  }
  // canonical; ideal words have their rightmost mode regular of high degree
  if (!w.empty() && !w.back().is_pole && w.back().deg >= cfg_.n() * trunc_)
    return;
  Scalar s = w_.count(w) ? w_[w] + c : c;
  if (s.is_zero())
    w_.erase(w);
  else
    w_[w] = s;
}

std::string UEElement::to_string() const {
  if (w_.empty()) return "0";
  std::string out;
  for (auto it = w_.rbegin(); it != w_.rend(); ++it) {
    std::string term;
    for (const auto& m : it->first) {
      if (!term.empty()) term += " ";
      term += g_->names[size_t(m.lie)] + "[" + basis_fn_str(cfg_, m) + "]";
    }
    std::string cs = it->second.to_string();
    bool wrap = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
    std::string piece;
    if (term.empty())
      piece = wrap ? "(" + cs + ")·1" : cs + (cs == "1" ? "" : "·1");
    else if (cs == "1")
      piece = term;
    else
      piece = (wrap ? "(" + cs + ")" : cs) + "·" + term;
    out += out.empty() ? piece : " + " + piece;
  }
  return out;
}

UEElement mode_bracket(const LiePresentation* g, const SigmaConfig& cfg,
                       const Mode& x, const Mode& y, int trunc) {
  UEElement r(g, cfg, trunc);
  KElement prod = x.fn * y.fn;
  const auto& cc = g->c[size_t(x.lie)][size_t(y.lie)];
  for (int p = 0; p < g->dim(); ++p)
    if (cc[size_t(p)] != 0)
      r = r + UEElement::mode(g, p, prod, trunc).scaled(Scalar(cc[size_t(p)]));
  Rat kap = g->kappa_g[size_t(x.lie)][size_t(y.lie)];
  if (kap != 0) {
    Scalar central = g->level * Scalar(kap) * residue_sigma(y.fn, x.fn);
    if (!central.is_zero())
      r = r + UEElement::unit(g, cfg, trunc).scaled(central);
  }
  return r;
}

UEElement pbw_normal_order(const LiePresentation* g, const SigmaConfig& cfg,
                           const std::vector<Mode>& word, int trunc) {
  UEElement r = UEElement::unit(g, cfg, trunc);
  for (const auto& m : word) r = r * UEElement::mode(g, m.lie, m.fn, trunc);
  return r;
}

}  // namespace vakm
