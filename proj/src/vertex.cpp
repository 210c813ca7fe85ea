#include "vakm/vertex.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "vakm/linalg.hpp"

namespace vakm {

// ---- words ----

bool vword_canonical(const VWord& w) {
  for (size_t i = 1; i < w.size(); ++i) {
    const VMode& a = w[i - 1];
    const VMode& b = w[i];
    if (a.n < b.n || (a.n == b.n && a.lie > b.lie)) return false;
  }
  return true;
}

int vword_degree(const VWord& w) {
  int d = 0;
  for (const auto& m : w) d += m.n;
  return d;
}

// ---- VState ----

VState VState::vacuum(const LiePresentation* g) {
  VState v(g);
  v.add_word({}, Scalar(1));
  return v;
}

bool VState::has_opart() const {
  for (const auto& [w, f] : w_)
    if (f.poly_degree() > 0 || f.pole_order(0) > 0) return true;
  return false;
}

int VState::degree() const {
  int d = -1;
  for (const auto& [w, f] : w_) d = std::max(d, vword_degree(w));
  return d;
}

void VState::add_word(const VWord& w, const KElement& opart) {
  if (!vword_canonical(w)) throw Error(Errc::bad_argument, "word not canonical");
  if (opart.is_zero()) return;
  auto it = w_.find(w);
  if (it == w_.end()) {
    w_.emplace(w, opart);
    return;
  }
  it->second = it->second + opart;
  if (it->second.is_zero()) w_.erase(it);
}

void VState::add_word(const VWord& w, const Scalar& c) {
  add_word(w, KElement::constant(SigmaConfig::origin(), c));
}

VState VState::operator+(const VState& o) const {
  if (g_ != o.g_) throw Error(Errc::bad_argument, "mixed algebras");
  VState r = *this;
  for (const auto& [w, f] : o.w_) r.add_word(w, f);
  return r;
}

VState VState::operator-() const {
  VState r(g_);
  for (const auto& [w, f] : w_) r.w_.emplace(w, -f);
  return r;
}

VState VState::operator-(const VState& o) const { return *this + (-o); }

VState VState::scaled(const Scalar& s) const {
  VState r(g_);
  if (s.is_zero()) return r;
  for (const auto& [w, f] : w_) {
    KElement sf = f.scaled(s);
    if (!sf.is_zero()) r.w_.emplace(w, sf);
  }
  return r;
}

bool VState::operator==(const VState& o) const { return g_ == o.g_ && w_ == o.w_; }

std::string VState::to_string() const {
  if (w_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, f] : w_) {
    std::string ws;
    for (const auto& m : w) ws += g_->names[size_t(m.lie)] + "(-" + std::to_string(m.n) + ")";
    ws += "|0>";
    bool constant = f.poly_degree() <= 0 && f.pole_order(0) == 0;
    if (!first) out << " + ";
    first = false;
    if (constant) {
      Scalar c = f.poly().empty() ? Scalar(0) : f.poly()[0];
      std::string cs = c.to_string();
      if (cs == "1")
        out << ws;
      else
        out << cs << "·" << ws;
    } else {
      out << ws << " ⊗ (" << f.to_string() << ")";
    }
  }
  return out.str();
}

// ---- PBW enumeration ----

namespace {

void gen_words(const LiePresentation* g, int rem, VMode maxm, VWord& cur,
               std::vector<VWord>& out) {
  if (rem == 0) {
    out.push_back(cur);
    return;
  }
  for (int n = std::min(rem, maxm.n); n >= 1; --n)
    for (int lie = (n == maxm.n ? maxm.lie : 0); lie < g->dim(); ++lie) {
      cur.push_back({lie, n});
      gen_words(g, rem - n, {lie, n}, cur, out);
      cur.pop_back();
    }
}

}  // namespace

std::vector<VWord> pbw_words(const LiePresentation* g, int d) {
  std::vector<VWord> out;
  VWord cur;
  gen_words(g, d, {0, d}, cur, out);
  return out;
}

VState basis_state(const LiePresentation* g, const VWord& w) {
  VState v(g);
  v.add_word(w, Scalar(1));
  return v;
}

// ---- mode action ----

namespace {

// x_(m) applied to a single canonical word
VState act_word(const LiePresentation* g, int lie, int m, const VWord& w);

VState act_state(const LiePresentation* g, int lie, int m, const VState& s) {
  VState out(s.algebra());
  for (const auto& [w, f] : s.words()) {
    VState part = act_word(g, lie, m, w);
    for (const auto& [w2, f2] : part.words()) out.add_word(w2, f2 * f);
  }
  return out;
}

VState act_word(const LiePresentation* g, int lie, int m, const VWord& w) {
  VState out(g);
  if (w.empty()) {
    if (m < 0) out.add_word({{lie, -m}}, Scalar(1));
    return out;
  }
  const VMode& y = w.front();
  if (m < 0 && (-m > y.n || (-m == y.n && lie <= y.lie))) {
    VWord w2;
    w2.reserve(w.size() + 1);
    w2.push_back({lie, -m});
    w2.insert(w2.end(), w.begin(), w.end());
    out.add_word(w2, Scalar(1));
    return out;
  }
  // commute past the first mode:
  // x_(m) y_(-b) = y_(-b) x_(m) + [x,y]_(m-b) + m delta_{m,b} k kappa(x,y)
  VWord rest(w.begin() + 1, w.end());
  VState tail = act_word(g, lie, m, rest);
  out = out + act_state(g, y.lie, -y.n, tail);
  const auto& cc = g->c[size_t(lie)][size_t(y.lie)];
  VState rest_state = basis_state(g, rest);
  for (int p = 0; p < g->dim(); ++p)
    if (cc[size_t(p)] != 0)
      out = out + act_state(g, p, m - y.n, rest_state).scaled(Scalar(cc[size_t(p)]));
  if (m == y.n && m != 0) {
    Rat kap = g->kappa_g[size_t(lie)][size_t(y.lie)];
    if (kap != 0)
      out = out + rest_state.scaled(g->level * Scalar(kap * Rat(m)));
  }
  return out;
}

}  // namespace

VState mode_action(int lie, int m, const VState& v) {
  return act_state(v.algebra(), lie, m, v);
}

// ---- translation ----

VState translation(const VState& A) {
  const LiePresentation* g = A.algebra();
  VState out(g);
  for (const auto& [w, f] : A.words()) {
    for (size_t i = 0; i < w.size(); ++i) {
      VWord w2 = w;
      w2[i].n += 1;
      VState st = VState::vacuum(g);
      for (size_t j = w2.size(); j-- > 0;) st = act_state(g, w2[j].lie, -w2[j].n, st);
      for (const auto& [w3, f3] : st.words()) out.add_word(w3, f3.scaled(Scalar(w[i].n)) * f);
    }
    KElement df = f.derivative();
    if (!df.is_zero()) out.add_word(w, -df);
  }
  return out;
}

// ---- n-th products ----

namespace {

// (word)_q applied to a state, both without O-parts
VState word_product(const LiePresentation* g, const VWord& wa, const VState& B, int q) {
  if (wa.empty()) {
    if (q == -1) return B;
    return VState(g);
  }
  int x = wa.front().lie;
  int m = wa.front().n;
  VWord rest(wa.begin() + 1, wa.end());
  int da = vword_degree(rest);
  int db = B.degree();
  VState out(g);
  if (db < 0) return out;
  int jmax = std::max(da + db - q, db) + 1;
  for (int j = 0; j <= jmax; ++j) {
    Rat c = binom(m + j - 1, j);
    if (c == 0) continue;
    VState inner = word_product(g, rest, B, q + j);
    if (!inner.is_zero())
      out = out + act_state(g, x, -m - j, inner).scaled(Scalar(c));
    VState xb = act_state(g, x, j, B);
    if (!xb.is_zero()) {
      VState inner2 = word_product(g, rest, xb, q - m - j);
      if (!inner2.is_zero()) {
        Rat s = (m % 2 == 0) ? -c : c;  // -(-1)^m
        out = out + inner2.scaled(Scalar(s));
      }
    }
  }
  return out;
}

}  // namespace

VState nth_product(const VState& A, const VState& B, int n) {
  if (A.algebra() != B.algebra()) throw Error(Errc::bad_argument, "mixed algebras");
  const LiePresentation* g = A.algebra();
  VState out(g);
  for (const auto& [wa, fa] : A.words()) {
    for (const auto& [wb, fb] : B.words()) {
      // (X (x) f)_(n) (Y (x) h) = sum_k 1/k! X_(n+k)Y (x) h * d^k f / dt^k
      KElement dk = fa;
      Rat fact(1);
      for (int k = 0; !dk.is_zero(); ++k) {
        if (k > 0) fact *= Rat(k);
        VState core = word_product(g, wa, basis_state(g, wb), n + k);
        if (!core.is_zero()) {
          KElement opart = (fb * dk).scaled(Scalar(Rat(1) / fact));
          for (const auto& [w2, f2] : core.words()) out.add_word(w2, f2 * opart);
        }
        dk = dk.derivative();
      }
    }
  }
  return out;
}

VState extended_nth_product(const VState& A, const VState& B, int n) {
  return nth_product(A, B, n);
}

int locality_order(const VState& A, const VState& B, int cutoff) {
  for (int j = cutoff - 1; j >= 0; --j)
    if (!nth_product(A, B, j).is_zero()) return j + 1;
  return 0;
}

// ---- field evaluation ----

namespace {

Scalar res_total(const KElement& f) {
  Scalar s(0);
  for (int i = 0; i < f.cfg().n(); ++i) s = s + f.residue(i);
  return s;
}

Scalar bform(const KElement& f, const KElement& g2) { return res_total(f * g2); }

// derivative iterated k times over k!
KElement dshift(KElement f, int k) {
  Rat fact(1);
  for (int j = 1; j <= k; ++j) {
    f = f.derivative();
    fact *= Rat(j);
  }
  if (fact == 1) return f;
  return f.scaled(Scalar(Rat(1) / fact));
}

// Expansion window for one creation mode: basis functions covering pole
// orders up to P per point and regular degrees below Dmode, with residue
// duals exact against arguments of pole order up to P and degree below Dext.
struct Window {
  int P = 0, Dmode = 0, Dext = 0;
  std::vector<KElement> pole_fn, pole_dual;  // (i, o) at index i*P + o - 1
  std::vector<KElement> reg_fn;              // degrees 0 .. Dext-1
  std::vector<KElement> reg_dual;            // degrees 0 .. Dmode-1
};

int roundup_mult(int v, int n) { return ((v + n - 1) / n) * n; }

// columns x_j with M x_j = rhs_j for a square invertible M
std::vector<SVec> solve_columns(const SMat& M, const std::vector<SVec>& rhs) {
  const size_t nr = M.size();
  SMat aug(nr);
  for (size_t r = 0; r < nr; ++r) {
    aug[r] = M[r];
    for (const auto& b : rhs) aug[r].push_back(b[r]);
  }
  auto piv = rref(aug);
  if (piv.size() != nr)
    throw Error(Errc::window_too_small, "dual system singular");
  for (size_t i = 0; i < nr; ++i)
    if (piv[i] != int(i)) throw Error(Errc::window_too_small, "dual system singular");
  std::vector<SVec> out(rhs.size(), SVec(nr, Scalar(0)));
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < rhs.size(); ++j) out[j][i] = aug[i][nr + j];
  return out;
}

std::shared_ptr<const Window> get_window(const SigmaConfig& cfg, int P, int Dmode,
                                         int Dext0) {
  const int n = cfg.n();
  const int Dext = roundup_mult(std::max(Dext0, Dmode), n);
  std::string key = std::to_string(P) + ":" + std::to_string(Dmode) + ":" + std::to_string(Dext);
  for (int i = 0; i < n; ++i) key += ":" + cfg.center(i).to_string();
  static std::mutex mx;
  static std::map<std::string, std::shared_ptr<const Window>> cache;
  {
    std::lock_guard<std::mutex> lk(mx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto win = std::make_shared<Window>();
  win->P = P;
  win->Dmode = Dmode;
  win->Dext = Dext;
  for (int i = 0; i < n; ++i)
    for (int o = 1; o <= P; ++o) win->pole_fn.push_back(KElement::pole(cfg, i, o));
  for (int d = 0; d < Dext; ++d) win->reg_fn.push_back(reg_basis(cfg, d));
  if (n == 1) {
    // powers of the local coordinate pair off exactly
    for (int o = 1; o <= P; ++o) win->pole_dual.push_back(reg_basis(cfg, o - 1));
    for (int d = 0; d < Dmode; ++d) win->reg_dual.push_back(KElement::pole(cfg, 0, d + 1));
  } else {
    // pole duals: regular interpolants, delta against the window poles
    const int W = n * P;
    SMat M(size_t(W), SVec(size_t(W), Scalar(0)));
    for (int row = 0; row < W; ++row)
      for (int r = 0; r < W; ++r)
        M[size_t(row)][size_t(r)] = bform(win->reg_fn[size_t(r)], win->pole_fn[size_t(row)]);
    std::vector<SVec> id(size_t(W), SVec(size_t(W), Scalar(0)));
    for (int idx = 0; idx < W; ++idx) id[size_t(idx)][size_t(idx)] = Scalar(1);
    for (const auto& x : solve_columns(M, id)) {
      KElement psi = KElement::zero(cfg);
      for (int r = 0; r < W; ++r)
        if (!x[size_t(r)].is_zero()) psi = psi + win->reg_fn[size_t(r)].scaled(x[size_t(r)]);
      win->pole_dual.push_back(psi);
    }
    // regular duals: principal parts orthogonal to the window poles, delta
    // against regular degrees below Dext
    const int Q = Dext / n;
    const int U = n * (P + Q);
    std::vector<KElement> deep;
    for (int i = 0; i < n; ++i)
      for (int q = 1; q <= P + Q; ++q) deep.push_back(KElement::pole(cfg, i, q));
    SMat M2(size_t(W + Dext), SVec(size_t(U), Scalar(0)));
    for (int row = 0; row < W; ++row)
      for (int u = 0; u < U; ++u)
        M2[size_t(row)][size_t(u)] = bform(deep[size_t(u)], win->pole_fn[size_t(row)]);
    for (int e = 0; e < Dext; ++e)
      for (int u = 0; u < U; ++u)
        M2[size_t(W + e)][size_t(u)] = bform(deep[size_t(u)], win->reg_fn[size_t(e)]);
    std::vector<SVec> rhs(size_t(Dmode), SVec(size_t(W + Dext), Scalar(0)));
    for (int d = 0; d < Dmode; ++d) rhs[size_t(d)][size_t(W + d)] = Scalar(1);
    for (const auto& x : solve_columns(M2, rhs)) {
      KElement psi = KElement::zero(cfg);
      for (int u = 0; u < U; ++u)
        if (!x[size_t(u)].is_zero()) psi = psi + deep[size_t(u)].scaled(x[size_t(u)]);
      win->reg_dual.push_back(psi);
    }
  }
  std::lock_guard<std::mutex> lk(mx);
  return cache.emplace(key, win).first->second;
}

// Values of one field suffix over the basis functions: pole orders up to P
// per point and regular degrees below cover.
struct FnTable {
  const LiePresentation* g = nullptr;
  SigmaConfig cfg;
  int P = 0, cover = 0, trunc = 0;
  std::vector<UEElement> pole_vals;
  std::vector<UEElement> reg_vals;

  UEElement eval(const KElement& f) const {
    UEElement r(g, cfg, trunc);
    const int n = cfg.n();
    for (int i = 0; i < n; ++i) {
      int po = f.pole_order(i);
      if (po > P) throw Error(Errc::window_too_small, "pole order beyond table window");
      for (int o = 1; o <= po; ++o) {
        Scalar c = f.coeff_pole(i, o);
        if (!c.is_zero()) r = r + pole_vals[size_t(i * P + o - 1)].scaled(c);
      }
    }
    auto coords = decompose_regular(cfg, f.poly());
    for (size_t d = 0; d < coords.size(); ++d) {
      if (coords[d].is_zero()) continue;
      if (int(d) >= cover)
        throw Error(Errc::window_too_small, "regular degree beyond table window");
      r = r + reg_vals[d].scaled(coords[d]);
    }
    return r;
  }
};

const FnTable& build_table(const LiePresentation* g, const SigmaConfig& cfg, const VWord& w,
                           int P, int cover, int trunc);

// One creation-mode expansion level over the tables of the remaining word.
struct LevelCtx {
  const FnTable* child = nullptr;
  std::vector<UEElement> pole_modes, reg_modes;
  std::vector<KElement> pd, rd;  // duals shifted by D^(m-1)
  UEElement zero;

  LevelCtx(const LiePresentation* g, const SigmaConfig& cfg, const VWord& w, int P,
           int cover, int trunc)
      : zero(g, cfg, trunc) {
    const int n = cfg.n();
    const int m = w.front().n;
    const int x = w.front().lie;
    const VWord rest(w.begin() + 1, w.end());
    const int Dmode = n * trunc;
    // deeper suffixes keep values alive on pole orders up to Dmode per mode
    const int Pexp = P + m + int(rest.size()) * Dmode;
    const int coverchild = std::max(Dmode, n * Pexp - m + cover + 1);
    int Pchild;
    if (n == 1) {
      Pchild = P + Dmode + m;
    } else {
      const int Dext = roundup_mult(coverchild, n);
      Pchild = P + Pexp + Dext / n + m;
    }
    auto win = get_window(cfg, Pexp, Dmode, n == 1 ? std::max(Dmode, Pexp) : coverchild);
    child = &build_table(g, cfg, rest, Pchild, coverchild, trunc);
    for (size_t idx = 0; idx < win->pole_fn.size(); ++idx) {
      pole_modes.push_back(UEElement::mode(g, x, win->pole_fn[idx], trunc));
      pd.push_back(dshift(win->pole_dual[idx], m - 1));
    }
    for (int e = 0; e < Dmode; ++e) {
      reg_modes.push_back(UEElement::mode(g, x, win->reg_fn[size_t(e)], trunc));
      rd.push_back(dshift(win->reg_dual[size_t(e)], m - 1));
    }
  }

  UEElement value_for(const KElement& fn) const {
    UEElement val = zero;
    for (size_t idx = 0; idx < pd.size(); ++idx) {
      if (pd[idx].is_zero()) continue;
      KElement arg = pd[idx] * fn;
      if (arg.is_zero()) continue;
      UEElement sub = child->eval(arg);
      if (!sub.is_zero()) val = val + pole_modes[idx] * sub;
    }
    for (size_t e = 0; e < rd.size(); ++e) {
      if (rd[e].is_zero() || reg_modes[e].is_zero()) continue;
      KElement arg = rd[e] * fn;
      if (arg.is_zero()) continue;
      UEElement sub = child->eval(arg);
      if (!sub.is_zero()) val = val + sub * reg_modes[e];
    }
    return val;
  }
};

const FnTable& build_table(const LiePresentation* g, const SigmaConfig& cfg, const VWord& w,
                           int P, int cover, int trunc) {
  std::string key = std::to_string(P) + ":" + std::to_string(cover) + ":" + std::to_string(trunc);
  for (int i = 0; i < cfg.n(); ++i) key += ":" + cfg.center(i).to_string();
  for (const auto& m : w)
    key += ";" + std::to_string(m.lie) + "," + std::to_string(m.n);
  static std::mutex mx;
  static std::map<std::string, FnTable> memo;
  {
    std::lock_guard<std::mutex> lk(mx);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const int n = cfg.n();
  FnTable T;
  T.g = g;
  T.cfg = cfg;
  T.P = P;
  T.cover = cover;
  T.trunc = trunc;
  if (w.empty()) {
    // the empty word is the residue functional
    UEElement zero(g, cfg, trunc);
    UEElement one = UEElement::unit(g, cfg, trunc);
    for (int i = 0; i < n; ++i)
      for (int o = 1; o <= P; ++o) T.pole_vals.push_back(o == 1 ? one : zero);
    T.reg_vals.assign(size_t(cover), zero);
  } else {
    LevelCtx ctx(g, cfg, w, P, cover, trunc);
    for (int i = 0; i < n; ++i)
      for (int o = 1; o <= P; ++o)
        T.pole_vals.push_back(ctx.value_for(KElement::pole(cfg, i, o)));
    for (int d = 0; d < cover; ++d) T.reg_vals.push_back(ctx.value_for(reg_basis(cfg, d)));
  }
  std::lock_guard<std::mutex> lk(mx);
  return memo.emplace(key, std::move(T)).first->second;
}

// single-function evaluation; only the top expansion level is specialized
UEElement eval_word_at(const LiePresentation* g, const SigmaConfig& cfg, const VWord& w,
                       const KElement& f, int trunc) {
  if (w.empty()) return UEElement::unit(g, cfg, trunc).scaled(res_total(f));
  int P = 1;
  for (int i = 0; i < cfg.n(); ++i) P = std::max(P, f.pole_order(i));
  const int cover = std::max(cfg.n() * trunc, f.poly_degree() + 1);
  LevelCtx ctx(g, cfg, w, P, cover, trunc);
  return ctx.value_for(f);
}

}  // namespace

Field::Field(VState state, SigmaConfig cfg, int trunc, int pole_cutoff)
    : state_(std::move(state)),
      cfg_(std::move(cfg)),
      trunc_(trunc),
      pole_cutoff_(pole_cutoff < 1 ? trunc : pole_cutoff) {
  const LiePresentation* g = state_.algebra();
  const int n = cfg_.n();
  const int Dmode = n * trunc_;
  const int P0 = pole_cutoff_;
  for (const auto& [w, opart] : state_.words()) {
    if (opart.pole_order(0) > 0)
      throw Error(Errc::bad_argument, "state O-part must be polynomial");
    KElement f0 = KElement::from_poly(cfg_, opart.poly());
    int df0 = std::max(opart.poly_degree(), 0);
    const FnTable& T = build_table(g, cfg_, w, P0, Dmode + df0, trunc_);
    auto addkey = [&](FnKey key, const KElement& fn) {
      UEElement val = T.eval(fn * f0);
      if (val.is_zero()) return;
      auto [it, ins] = table_.emplace(key, val);
      if (!ins) {
        it->second = it->second + val;
        if (it->second.is_zero()) table_.erase(it);
      }
    };
    for (int i = 0; i < n; ++i)
      for (int o = 1; o <= P0; ++o) addkey({true, i, o}, KElement::pole(cfg_, i, o));
    for (int d = 0; d < Dmode; ++d) addkey({false, -1, d}, reg_basis(cfg_, d));
  }
}

UEElement Field::apply(const KElement& f) const {
  const int n = cfg_.n();
  UEElement r(state_.algebra(), cfg_, trunc_);
  for (int i = 0; i < n; ++i) {
    int po = f.pole_order(i);
    if (po > pole_cutoff_)
      throw Error(Errc::window_too_small, "pole order beyond tabulated window");
    for (int o = 1; o <= po; ++o) {
      Scalar c = f.coeff_pole(i, o);
      if (c.is_zero()) continue;
      auto it = table_.find({true, i, o});
      if (it != table_.end()) r = r + it->second.scaled(c);
    }
  }
  auto coords = decompose_regular(cfg_, f.poly());
  for (size_t d = 0; d < coords.size(); ++d) {
    if (coords[d].is_zero()) continue;
    if (int(d) >= n * trunc_)
      throw Error(Errc::window_too_small, "regular degree beyond tabulated window");
    auto it = table_.find({false, -1, int(d)});
    if (it != table_.end()) r = r + it->second.scaled(coords[d]);
  }
  return r;
}

std::string Field::to_json() const {
  auto esc = [](const std::string& s) {
    std::string o;
    for (char c : s) {
      if (c == '"' || c == '\\') o += '\\';
      o += c;
    }
    return o;
  };
  std::ostringstream o;
  o << "{\"points\":" << cfg_.n() << ",\"trunc\":" << trunc_
    << ",\"pole_cutoff\":" << pole_cutoff_ << ",\"state\":\"" << esc(state_.to_string())
    << "\",\"entries\":[";
  bool first = true;
  for (const auto& [k, v] : table_) {
    if (!first) o << ",";
    first = false;
    o << "{\"fn\":\"" << esc(basis_fn_str(cfg_, k.is_pole
                                                    ? BasisMode{0, true, k.point, k.k}
                                                    : BasisMode{0, false, -1, k.k}))
      << "\",\"value\":\"" << esc(v.to_string()) << "\"}";
  }
  o << "]}";
  return o.str();
}

Field field_of(const VState& A, const SigmaConfig& cfg, int trunc, int pole_cutoff) {
  return Field(A, cfg, trunc, pole_cutoff);
}

UEElement eval_field(const VState& A, const SigmaConfig& cfg, const KElement& f, int trunc) {
  UEElement r(A.algebra(), cfg, trunc);
  for (const auto& [w, opart] : A.words()) {
    if (opart.pole_order(0) > 0)
      throw Error(Errc::bad_argument, "state O-part must be polynomial");
    KElement arg = f * KElement::from_poly(cfg, opart.poly());
    if (arg.is_zero()) continue;
    r = r + eval_word_at(A.algebra(), cfg, w, arg, trunc);
  }
  return r;
}

VState apply_to_vacuum(const LiePresentation* g, const UEElement& u) {
  if (u.cfg().n() != 1)
    throw Error(Errc::unsupported, "apply_to_vacuum needs a single point");
  VState out(g);
  for (const auto& [word, c] : u.words()) {
    VState st = VState::vacuum(g);
    for (size_t j = word.size(); j-- > 0;) {
      const BasisMode& bm = word[j];
      st = mode_action(bm.lie, bm.is_pole ? -bm.deg : bm.deg, st);
      if (st.is_zero()) break;
    }
    out = out + st.scaled(c);
  }
  return out;
}

// ---- mode Lie algebra ----

namespace {

struct TRule {
  VWord lead;
  std::vector<std::pair<VWord, Scalar>> rest;  // same degree, non-leading words
  std::vector<std::pair<VWord, Scalar>> comp;  // companion words one degree down
};

// Relations (T C)[f] = -C[df/dt] among degree-d words, leads reduced.
std::vector<TRule> t_rules(const LiePresentation* g, int d) {
  auto wd = pbw_words(g, d);
  auto wprev = pbw_words(g, d - 1);
  std::map<VWord, size_t> idx;
  for (size_t i = 0; i < wd.size(); ++i) idx[wd[i]] = i;
  struct Row {
    SVec m, comp;
  };
  std::vector<Row> rows;
  for (size_t j = 0; j < wprev.size(); ++j) {
    VState tv = translation(basis_state(g, wprev[j]));
    if (tv.is_zero()) continue;
    Row r{SVec(wd.size(), Scalar(0)), SVec(wprev.size(), Scalar(0))};
    for (const auto& [w2, f2] : tv.words())
      r.m[idx.at(w2)] = f2.poly().empty() ? Scalar(0) : f2.poly()[0];
    r.comp[j] = Scalar(1);
    rows.push_back(std::move(r));
  }
  size_t rput = 0;
  for (size_t col = 0; col < wd.size() && rput < rows.size(); ++col) {
    size_t piv = rput;
    while (piv < rows.size() && rows[piv].m[col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rput], rows[piv]);
    Scalar inv = rows[rput].m[col].inv();
    for (auto& v : rows[rput].m) v = v * inv;
    for (auto& v : rows[rput].comp) v = v * inv;
    for (size_t r2 = 0; r2 < rows.size(); ++r2) {
      if (r2 == rput) continue;
      Scalar c = rows[r2].m[col];
      if (c.is_zero()) continue;
      for (size_t q = 0; q < wd.size(); ++q)
        rows[r2].m[q] = rows[r2].m[q] - c * rows[rput].m[q];
      for (size_t q = 0; q < wprev.size(); ++q)
        rows[r2].comp[q] = rows[r2].comp[q] - c * rows[rput].comp[q];
    }
    ++rput;
  }
  std::vector<TRule> rules;
  for (size_t r2 = 0; r2 < rput; ++r2) {
    TRule rule;
    bool leadset = false;
    for (size_t q = 0; q < wd.size(); ++q) {
      const Scalar& v = rows[r2].m[q];
      if (v.is_zero()) continue;
      if (!leadset) {
        rule.lead = wd[q];
        leadset = true;
        continue;
      }
      rule.rest.push_back({wd[q], v});
    }
    for (size_t q = 0; q < wprev.size(); ++q)
      if (!rows[r2].comp[q].is_zero()) rule.comp.push_back({wprev[q], rows[r2].comp[q]});
    rules.push_back(std::move(rule));
  }
  return rules;
}

}  // namespace

void LieModeElement::raw_add(const VWord& w, const KElement& f) {
  if (f.is_zero()) return;
  auto it = e_.find(w);
  if (it == e_.end()) {
    e_.emplace(w, f);
    return;
  }
  it->second = it->second + f;
  if (it->second.is_zero()) e_.erase(it);
}

void LieModeElement::normalize() {
  int dmax = 0;
  for (const auto& [w, f] : e_) dmax = std::max(dmax, vword_degree(w));
  for (int d = dmax; d >= 1; --d) {
    run_degree(d);
  }
  // a vacuum entry survives only through its residues: |0> (x) dh/dt is in
  // the quotient relation's image
  auto it = e_.find(VWord{});
  if (it != e_.end()) {
    KElement f = it->second;
    e_.erase(it);
    KElement canon = KElement::zero(cfg_);
    for (int i = 0; i < cfg_.n(); ++i) {
      Scalar r = f.residue(i);
      if (!r.is_zero()) canon = canon + KElement::pole(cfg_, i, 1).scaled(r);
    }
    if (!canon.is_zero()) e_.emplace(VWord{}, canon);
  }
}

void LieModeElement::run_degree(int d) {
  auto rules = t_rules(g_, d);
  if (rules.empty()) return;
  std::map<VWord, const TRule*> by_lead;
  for (const auto& r : rules) by_lead[r.lead] = &r;
  std::vector<std::pair<VWord, KElement>> todo;
  for (const auto& [w, f] : e_)
    if (vword_degree(w) == d && by_lead.count(w)) todo.push_back({w, f});
  for (auto& [w, f] : todo) {
    e_.erase(w);
    const TRule* r = by_lead[w];
    for (const auto& [w2, c] : r->rest) raw_add(w2, f.scaled(-c));
    KElement df = f.derivative();
    if (!df.is_zero())
      for (const auto& [v, c] : r->comp) raw_add(v, df.scaled(-c));
  }
}

LieModeElement LieModeElement::make(const VState& A, const KElement& f) {
  LieModeElement out(A.algebra(), f.cfg());
  for (const auto& [w, opart] : A.words()) {
    if (opart.pole_order(0) > 0)
      throw Error(Errc::bad_argument, "state O-part must be polynomial");
    out.raw_add(w, KElement::from_poly(f.cfg(), opart.poly()) * f);
  }
  out.normalize();
  return out;
}

void LieModeElement::add_entry(const VWord& w, const KElement& f) {
  if (!vword_canonical(w)) throw Error(Errc::bad_argument, "word not canonical");
  raw_add(w, f);
  normalize();
}

LieModeElement LieModeElement::operator+(const LieModeElement& o) const {
  if (g_ != o.g_ || !(cfg_ == o.cfg_)) throw Error(Errc::bad_argument, "mixed contexts");
  LieModeElement r = *this;
  for (const auto& [w, f] : o.e_) r.raw_add(w, f);
  r.normalize();
  return r;
}

LieModeElement LieModeElement::operator-() const {
  LieModeElement r(g_, cfg_);
  for (const auto& [w, f] : e_) r.e_.emplace(w, -f);
  return r;
}

LieModeElement LieModeElement::operator-(const LieModeElement& o) const {
  return *this + (-o);
}

LieModeElement LieModeElement::scaled(const Scalar& s) const {
  LieModeElement r(g_, cfg_);
  if (s.is_zero()) return r;
  for (const auto& [w, f] : e_) {
    KElement sf = f.scaled(s);
    if (!sf.is_zero()) r.e_.emplace(w, sf);
  }
  return r;
}

bool LieModeElement::operator==(const LieModeElement& o) const {
  return g_ == o.g_ && cfg_ == o.cfg_ && e_ == o.e_;
}

std::string LieModeElement::to_string() const {
  if (e_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, f] : e_) {
    if (!first) out << " + ";
    first = false;
    std::string ws;
    for (const auto& m : w) ws += g_->names[size_t(m.lie)] + "(-" + std::to_string(m.n) + ")";
    ws += "|0>";
    out << ws << "[" << f.to_string() << "]";
  }
  return out.str();
}

LieModeElement lie_mode_bracket(const LieModeElement& x, const LieModeElement& y) {
  if (x.algebra() != y.algebra() || !(x.cfg() == y.cfg()))
    throw Error(Errc::bad_argument, "mixed contexts");
  const LiePresentation* g = x.algebra();
  LieModeElement out(g, x.cfg());
  for (const auto& [wa, fa] : x.entries()) {
    for (const auto& [wb, fb] : y.entries()) {
      int bound = vword_degree(wa) + vword_degree(wb);
      KElement dk = fa;
      Rat fact(1);
      for (int k = 0; k <= bound && !dk.is_zero(); ++k) {
        if (k > 0) fact *= Rat(k);
        VState p = nth_product(basis_state(g, wa), basis_state(g, wb), k);
        if (!p.is_zero()) {
          KElement fk = (dk * fb).scaled(Scalar(Rat(1) / fact));
          if (!fk.is_zero())
            for (const auto& [w2, f2] : p.words()) {
              Scalar c = f2.poly().empty() ? Scalar(0) : f2.poly()[0];
              out.raw_add(w2, fk.scaled(c));
            }
        }
        dk = dk.derivative();
      }
    }
  }
  out.normalize();
  return out;
}

UEElement beta(const LieModeElement& x, int trunc) {
  UEElement r(x.algebra(), x.cfg(), trunc);
  for (const auto& [w, f] : x.entries())
    r = r + eval_field(basis_state(x.algebra(), w), x.cfg(), f, trunc);
  return r;
}

}  // namespace vakm
