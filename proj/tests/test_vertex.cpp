#include "vakm/vertex.hpp"

#include <doctest.h>

#include <map>

#include "vakm/lie.hpp"
#include "vakm/linalg.hpp"

using namespace vakm;

namespace {

const LiePresentation* sl2() {
  static LiePresentation g = build_sl2();
  return &g;
}

// e, h, f indices
constexpr int E = 0, H = 1, F = 2;

VState gen(int lie, int n) { return basis_state(sl2(), {{lie, n}}); }

VState word2(int l1, int n1, int l2, int n2) {
  return basis_state(sl2(), {{l1, n1}, {l2, n2}});
}

Scalar klev() { return Scalar::level(); }

}  // namespace

TEST_CASE("canonical words and enumeration") {
  CHECK(vword_canonical({}));
  CHECK(vword_canonical({{E, 2}, {F, 1}}));
  CHECK(vword_canonical({{E, 1}, {H, 1}}));
  CHECK(!vword_canonical({{H, 1}, {E, 1}}));
  CHECK(!vword_canonical({{E, 1}, {E, 2}}));
  CHECK(vword_degree({{E, 2}, {F, 1}}) == 3);

  CHECK(pbw_words(sl2(), 0).size() == 1);
  CHECK(pbw_words(sl2(), 1).size() == 3);
  CHECK(pbw_words(sl2(), 2).size() == 9);
  CHECK(pbw_words(sl2(), 3).size() == 22);
  CHECK(pbw_words(sl2(), 4).size() == 51);
  for (int d = 0; d <= 4; ++d)
    for (const auto& w : pbw_words(sl2(), d)) {
      CHECK(vword_canonical(w));
      CHECK(vword_degree(w) == d);
    }
}

TEST_CASE("state arithmetic") {
  VState a = gen(E, 1);
  VState b = gen(H, 2);
  VState s = a + b;
  CHECK(s.words().size() == 2);
  CHECK(s - a == b);
  CHECK((a - a).is_zero());
  CHECK(a.scaled(Scalar(3)) + a.scaled(Scalar(-3)) == VState(sl2()));
  CHECK(VState::vacuum(sl2()).degree() == 0);
  CHECK(a.degree() == 1);
  CHECK(VState(sl2()).degree() == -1);
  CHECK(!a.has_opart());
  VState t(sl2());
  t.add_word({{E, 1}}, KElement::t_power(SigmaConfig::origin(), 2));
  CHECK(t.has_opart());
}

TEST_CASE("mode action: commutation and central term") {
  // e_(0) f(-1)|0> = h(-1)|0>
  CHECK(mode_action(E, 0, gen(F, 1)) == gen(H, 1));
  // e_(1) f(-1)|0> = kappa(e,f) k |0> = 4k|0>
  CHECK(mode_action(E, 1, gen(F, 1)) ==
        VState::vacuum(sl2()).scaled((klev() * Scalar(4))));
  // h_(0) e(-1)|0> = 2 e(-1)|0>
  CHECK(mode_action(H, 0, gen(E, 1)) == gen(E, 1).scaled(Scalar(2)));
  // annihilation beyond depth
  CHECK(mode_action(E, 2, gen(F, 1)).is_zero());
  CHECK(mode_action(E, 0, VState::vacuum(sl2())).is_zero());
  CHECK(mode_action(E, 3, VState::vacuum(sl2())).is_zero());
  // creation prepends canonically
  CHECK(mode_action(E, -1, gen(E, 1)) == word2(E, 1, E, 1));
  CHECK(mode_action(E, -1, gen(H, 1)) == word2(E, 1, H, 1));
  // straightening: h_(-1) e(-1)|0> = e(-1)h(-1)|0> + [h,e](-2)|0>
  CHECK(mode_action(H, -1, gen(E, 1)) ==
        word2(E, 1, H, 1) + gen(E, 2).scaled(Scalar(2)));
  // deeper central term: e_(2) f(-2)|0> = 2 k kappa(e,f)|0> = 8k|0>
  CHECK(mode_action(E, 2, gen(F, 2)) ==
        VState::vacuum(sl2()).scaled((klev() * Scalar(8))));
  // f_(-1) e(-2)|0> = e(-2)f(-1)|0> - h(-3)|0>
  CHECK(mode_action(F, -1, gen(E, 2)) == word2(E, 2, F, 1) - gen(H, 3));
}

TEST_CASE("mode action is an affine representation") {
  // [x_(m), y_(l)] v = ([x,y]_(m+l) + m delta_{m,-l} k kappa(x,y)) v
  [[maybe_unused]] const LiePresentation* g = sl2();
  std::vector<VState> probes;
  probes.push_back(VState::vacuum(g));
  for (const auto& w : pbw_words(g, 2)) probes.push_back(basis_state(g, w));
  probes.push_back(basis_state(g, {{H, 2}, {F, 1}}));
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int m = -2; m <= 2; ++m)
        for (int l = -2; l <= 2; ++l)
          for (const auto& v : probes) {
            VState lhs = mode_action(x, m, mode_action(y, l, v)) -
                         mode_action(y, l, mode_action(x, m, v));
            VState rhs(g);
            for (int p = 0; p < 3; ++p) {
              Rat c = g->c[size_t(x)][size_t(y)][size_t(p)];
              if (c != 0) rhs = rhs + mode_action(p, m + l, v).scaled(Scalar(c));
            }
            if (m + l == 0 && m != 0) {
              Rat kap = g->kappa_g[size_t(x)][size_t(y)];
              if (kap != 0)
                rhs = rhs + v.scaled((klev() * Scalar(kap * Rat(m))));
            }
            CHECK(lhs == rhs);
          }
}

TEST_CASE("translation") {
  CHECK(translation(VState::vacuum(sl2())).is_zero());
  CHECK(translation(gen(E, 1)) == gen(E, 2));
  CHECK(translation(gen(H, 2)) == gen(H, 3).scaled(Scalar(2)));
  // raising the second factor then restoring canonical order leaves a
  // straightening term h(-3)|0>
  CHECK(translation(word2(E, 1, F, 1)) ==
        word2(E, 2, F, 1) + word2(F, 2, E, 1) + gen(H, 3));
  // O-part: T(A (x) f) = TA (x) f - A (x) df/dt
  auto cfg = SigmaConfig::origin();
  VState a(sl2());
  a.add_word({{E, 1}}, KElement::t_power(cfg, 1));
  VState expect(sl2());
  expect.add_word({{E, 2}}, KElement::t_power(cfg, 1));
  expect.add_word({{E, 1}}, KElement::constant(cfg, Scalar(-1)));
  CHECK(translation(a) == expect);
}

TEST_CASE("nth product: frozen examples") {
  CHECK(nth_product(gen(E, 1), gen(F, 1), 0) == gen(H, 1));
  CHECK(nth_product(gen(E, 1), gen(F, 1), 1) ==
        VState::vacuum(sl2()).scaled((klev() * Scalar(4))));
  CHECK(nth_product(gen(E, 1), gen(F, 1), 2).is_zero());
  CHECK(nth_product(gen(H, 1), gen(H, 1), 1) ==
        VState::vacuum(sl2()).scaled((klev() * Scalar(8))));
  CHECK(nth_product(gen(H, 1), gen(H, 1), 0).is_zero());
  // vacuum as left factor: |0>_(n) B = delta_{n,-1} B
  VState b = word2(E, 2, F, 1);
  CHECK(nth_product(VState::vacuum(sl2()), b, -1) == b);
  CHECK(nth_product(VState::vacuum(sl2()), b, 0).is_zero());
  CHECK(nth_product(VState::vacuum(sl2()), b, -2).is_zero());
  // creation products against the vacuum
  CHECK(nth_product(gen(E, 1), VState::vacuum(sl2()), -1) == gen(E, 1));
  CHECK(nth_product(gen(E, 1), VState::vacuum(sl2()), -2) == gen(E, 2));
  CHECK(nth_product(b, VState::vacuum(sl2()), -1) == b);
}

TEST_CASE("nth product: A_(-1)|0> = A and A_(-2)|0> = TA across degrees") {
  [[maybe_unused]] const LiePresentation* g = sl2();
  for (int d = 1; d <= 3; ++d)
    for (const auto& w : pbw_words(g, d)) {
      VState a = basis_state(g, w);
      CHECK(nth_product(a, VState::vacuum(g), -1) == a);
      CHECK(nth_product(a, VState::vacuum(g), -2) == translation(a));
    }
}

TEST_CASE("extended product with O-parts") {
  auto cfg = SigmaConfig::origin();
  VState ht(sl2());
  ht.add_word({{H, 1}}, KElement::t_power(cfg, 1));
  VState e1 = gen(E, 1);
  // (h(-1)|0> (x) t)_(0) (e(-1)|0>) = h_(0)e(-1)|0> (x) t + h_(1)e(-1)|0> (x) dt/dt
  VState expect(sl2());
  expect.add_word({{E, 1}}, KElement::t_power(cfg, 1).scaled(Scalar(2)));
  CHECK(extended_nth_product(ht, e1, 0) == expect);
  // constant O-parts reduce to the plain product
  VState ec(sl2());
  ec.add_word({{E, 1}}, KElement::constant(cfg, Scalar(5)));
  CHECK(nth_product(ec, gen(F, 1), 0) == gen(H, 1).scaled(Scalar(5)));
}

TEST_CASE("skew symmetry") {
  // A_(n)B = -sum_j (-1)^(n+j)/j! T^j (B_(n+j)A)
  [[maybe_unused]] const LiePresentation* g = sl2();
  std::vector<VState> states;
  for (int d = 1; d <= 3; ++d)
    for (const auto& w : pbw_words(g, d)) states.push_back(basis_state(g, w));
  auto skew_rhs = [&](const VState& a, const VState& b, int n) {
    VState r(g);
    Rat fact(1);
    int bound = a.degree() + b.degree() + 2;
    for (int j = 0; n + j <= bound; ++j) {
      if (j > 0) fact *= Rat(j);
      VState p = nth_product(b, a, n + j);
      for (int t = 0; t < j; ++t) p = translation(p);
      Rat sign = ((n + j) % 2 == 0) ? Rat(-1) : Rat(1);
      r = r + p.scaled(Scalar(sign / fact));
    }
    return r;
  };
  // spot subset keeps runtime modest; pairs cover all degree mixes
  std::vector<std::pair<size_t, size_t>> pairs = {
      {0, 0}, {0, 1}, {1, 0}, {0, 2}, {2, 2}, {1, 4}, {4, 1}, {3, 5}, {5, 9}, {9, 3}};
  for (auto [i, j] : pairs)
    for (int n = -1; n <= 2; ++n)
      CHECK(nth_product(states[i], states[j], n) == skew_rhs(states[i], states[j], n));
}

TEST_CASE("borcherds commutator") {
  // [A_(m), B_(n)] C = sum_j binom(m,j) (A_(j)B)_(m+n-j) C
  [[maybe_unused]] const LiePresentation* g = sl2();
  std::vector<VState> abs;
  for (int d = 1; d <= 2; ++d)
    for (const auto& w : pbw_words(g, d)) abs.push_back(basis_state(g, w));
  std::vector<VState> cs = {VState::vacuum(g), gen(F, 1), word2(E, 1, H, 1)};
  std::vector<std::pair<size_t, size_t>> pairs = {{0, 2}, {1, 1}, {0, 5}, {4, 2}, {7, 0}};
  for (auto [ia, ib] : pairs)
    for (int m = -2; m <= 2; ++m)
      for (int n = -2; n <= 2; ++n)
        for (const auto& c : cs) {
          const VState& a = abs[ia];
          const VState& b = abs[ib];
          VState lhs = nth_product(a, nth_product(b, c, n), m) -
                       nth_product(b, nth_product(a, c, m), n);
          VState rhs(g);
          int bound = a.degree() + b.degree();
          for (int j = 0; j <= bound; ++j) {
            Rat bc = binom(m, j);
            if (bc == 0) continue;
            VState ab = nth_product(a, b, j);
            if (ab.is_zero()) continue;
            rhs = rhs + nth_product(ab, c, m + n - j).scaled(Scalar(bc));
          }
          CHECK(lhs == rhs);
        }
}

TEST_CASE("locality orders") {
  CHECK(locality_order(gen(E, 1), gen(F, 1)) == 2);
  CHECK(locality_order(gen(E, 1), gen(E, 1)) == 0);
  CHECK(locality_order(gen(H, 1), gen(H, 1)) == 2);
  CHECK(locality_order(gen(E, 1), gen(H, 1)) == 1);
  CHECK(locality_order(VState::vacuum(sl2()), word2(E, 2, F, 1)) == 0);
  CHECK(locality_order(word2(E, 1, F, 1), word2(E, 1, F, 1)) == 4);
}

TEST_CASE("field of a generator matches the plain mode") {
  [[maybe_unused]] const LiePresentation* g = sl2();
  auto cfg = SigmaConfig::origin();
  const int N = 6;
  for (int x = 0; x < 3; ++x) {
    Field fld = field_of(gen(x, 1), cfg, N, 3);
    std::vector<KElement> fs = {
        KElement::pole(cfg, 0, 1), KElement::pole(cfg, 0, 3), KElement::t_power(cfg, 0),
        KElement::t_power(cfg, 2),
        KElement::pole(cfg, 0, 2) + KElement::t_power(cfg, 1).scaled(Scalar(4))};
    for (const auto& f : fs) CHECK(fld.apply(f) == UEElement::mode(g, x, f, N));
  }
}

TEST_CASE("field of the vacuum is the residue") {
  [[maybe_unused]] const LiePresentation* g = sl2();
  auto cfg = SigmaConfig::origin();
  const int N = 6;
  Field fld = field_of(VState::vacuum(g), cfg, N, 3);
  CHECK(fld.apply(KElement::pole(cfg, 0, 1)) == UEElement::unit(g, cfg, N));
  CHECK(fld.apply(KElement::pole(cfg, 0, 2)).is_zero());
  CHECK(fld.apply(KElement::t_power(cfg, 0)).is_zero());
  CHECK(fld.apply(KElement::t_power(cfg, 3)).is_zero());
  KElement mix = KElement::pole(cfg, 0, 1).scaled(Scalar(3)) + KElement::t_power(cfg, 2);
  CHECK(fld.apply(mix) == UEElement::unit(g, cfg, N).scaled(Scalar(3)));
}

TEST_CASE("field of a deeper creation mode") {
  [[maybe_unused]] const LiePresentation* g = sl2();
  auto cfg = SigmaConfig::origin();
  const int N = 6;
  // Y(x(-m)|0>)(t^-1) = x (x) t^-m
  for (int m = 1; m <= 4; ++m) {
    UEElement u = eval_field(gen(E, m), cfg, KElement::pole(cfg, 0, 1), N);
    CHECK(u == UEElement::mode(g, E, KElement::pole(cfg, 0, m), N));
  }
  // Y(x(-2)|0>)(t) = x (x) d/dt smeared: pairing picks t^-1 with weight 1... the
  // closed form is x (x) (coefficient extraction), checked against the axiom below
  // through apply_to_vacuum instead.
}

TEST_CASE("normally ordered two-factor field oracle") {
  // Y(e(-1)h(-1)|0>)(t^m) coefficient: sum_p :e_(p) h_(m-1-p): with creation
  // modes to the left of annihilation modes
  [[maybe_unused]] const LiePresentation* g = sl2();
  auto cfg = SigmaConfig::origin();
  const int N = 6;
  VState a = basis_state(g, {{E, 1}, {H, 1}});
  auto km = [&](int x, int d) {
    return d < 0 ? UEElement::mode(g, x, KElement::pole(cfg, 0, -d), N)
                 : UEElement::mode(g, x, KElement::t_power(cfg, d), N);
  };
  for (int m = -2; m <= 1; ++m) {
    KElement f = m < 0 ? KElement::pole(cfg, 0, -m) : KElement::t_power(cfg, m);
    UEElement expect(g, cfg, N);
    // total mode of :e(z)h(z): at z^(m... ) paired with t^m picks p+q = m-1
    for (int p = -N - 3; p <= N + 3; ++p) {
      int q = m - 1 - p;
      UEElement term(g, cfg, N);
      if (p <= -1)
        term = km(E, p) * km(H, q);
      else
        term = km(H, q) * km(E, p);
      expect = expect + term;
    }
    CHECK(eval_field(a, cfg, f, N) == expect);
  }
}

TEST_CASE("evaluation axiom: apply_to_vacuum recovers the state") {
  [[maybe_unused]] const LiePresentation* g = sl2();
  auto cfg = SigmaConfig::origin();
  const int N = 6;
  KElement tinv = KElement::pole(cfg, 0, 1);
  for (int d = 0; d <= 3; ++d)
    for (const auto& w : pbw_words(g, d)) {
      VState v = basis_state(g, w);
      CHECK(apply_to_vacuum(g, eval_field(v, cfg, tinv, N)) == v);
    }
}

TEST_CASE("field linearity and translation covariance") {
  [[maybe_unused]] const LiePresentation* g = sl2();
  auto cfg = SigmaConfig::origin();
  const int N = 6;
  VState a = word2(E, 1, F, 1);
  Field fld = field_of(a, cfg, N, 3);
  KElement f1 = KElement::pole(cfg, 0, 2);
  KElement f2 = KElement::t_power(cfg, 1);
  CHECK(fld.apply(f1 + f2) == fld.apply(f1) + fld.apply(f2));
  CHECK(fld.apply(f1.scaled(Scalar(7))) == fld.apply(f1).scaled(Scalar(7)));
  // Y(TA)(f) = -Y(A)(df/dt)
  for (const auto& f : {f1, f2, KElement::pole(cfg, 0, 1)}) {
    UEElement lhs = eval_field(translation(a), cfg, f, N);
    UEElement rhs = -eval_field(a, cfg, f.derivative(), N);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("field table json") {
  auto cfg = SigmaConfig::origin();
  Field fld = field_of(gen(E, 1), cfg, 3, 2);
  std::string j = fld.to_json();
  CHECK(j.find("\"points\":1") != std::string::npos);
  CHECK(j.find("\"entries\":[") != std::string::npos);
  CHECK(j.find("e(-1)|0>") != std::string::npos);
}

TEST_CASE("mode lie element normal form") {
  [[maybe_unused]] const LiePresentation* g = sl2();
  auto cfg = SigmaConfig::origin();
  // (TA)[f] = -A[df/dt]
  for (int d = 0; d <= 2; ++d)
    for (const auto& w : pbw_words(g, d))
      for (int p = 0; p <= 2; ++p) {
        KElement f = KElement::t_power(cfg, p);
        LieModeElement lhs = LieModeElement::make(translation(basis_state(g, w)), f);
        LieModeElement rhs = LieModeElement::make(basis_state(g, w), -f.derivative());
        CHECK(lhs == rhs);
      }
  // degree-1 entries are never rewritten
  LieModeElement x = LieModeElement::make(gen(E, 1), KElement::t_power(cfg, 1));
  CHECK(x.entries().size() == 1);
  CHECK(!x.is_zero());
  CHECK((x - x).is_zero());
}

TEST_CASE("mode lie bracket: frozen affine case") {
  [[maybe_unused]] const LiePresentation* g = sl2();
  auto cfg = SigmaConfig::origin();
  LieModeElement et = LieModeElement::make(gen(E, 1), KElement::t_power(cfg, 1));
  LieModeElement ft = LieModeElement::make(gen(F, 1), KElement::pole(cfg, 0, 1));
  LieModeElement br = lie_mode_bracket(et, ft);
  LieModeElement expect(g, cfg);
  expect.add_entry({{H, 1}}, KElement::t_power(cfg, 0));
  expect.add_entry({}, KElement::pole(cfg, 0, 1).scaled((klev() * Scalar(4))));
  CHECK(br == expect);
}

TEST_CASE("beta intertwines the bracket on affine generators") {
  [[maybe_unused]] const LiePresentation* g = sl2();
  auto cfg = SigmaConfig::origin();
  const int N = 5;
  std::vector<LieModeElement> els;
  for (int x = 0; x < 3; ++x)
    for (int p = -2; p <= 1; ++p) {
      KElement f = p < 0 ? KElement::pole(cfg, 0, -p) : KElement::t_power(cfg, p);
      els.push_back(LieModeElement::make(gen(x, 1), f));
    }
  // beta([x,y]) = beta(x) beta(y) - beta(y) beta(x) on a sample of pairs
  std::vector<std::pair<size_t, size_t>> pairs = {
      {0, 9}, {1, 8}, {4, 5}, {2, 10}, {0, 4}, {3, 11}, {6, 9}};
  for (auto [i, j] : pairs) {
    UEElement lhs = beta(lie_mode_bracket(els[i], els[j]), N);
    UEElement rhs = beta(els[i], N) * beta(els[j], N) - beta(els[j], N) * beta(els[i], N);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("beta matches the affine mode on degree one") {
  [[maybe_unused]] const LiePresentation* g = sl2();
  auto cfg = SigmaConfig::origin();
  const int N = 5;
  for (int x = 0; x < 3; ++x)
    for (int p = -3; p <= 2; ++p) {
      KElement f = p < 0 ? KElement::pole(cfg, 0, -p) : KElement::t_power(cfg, p);
      CHECK(beta(LieModeElement::make(gen(x, 1), f), N) == UEElement::mode(g, x, f, N));
    }
}

TEST_CASE("field injectivity on low degrees") {
  // states of degree <= 2 paired with poles: the joint evaluation vectors are
  // linearly independent
  [[maybe_unused]] const LiePresentation* g = sl2();
  auto cfg = SigmaConfig::origin();
  const int N = 5;
  std::vector<VState> states;
  for (int d = 0; d <= 2; ++d)
    for (const auto& w : pbw_words(g, d)) states.push_back(basis_state(g, w));
  std::vector<KElement> probes;
  for (int o = 1; o <= 4; ++o) probes.push_back(KElement::pole(cfg, 0, o));
  // collect coefficient vectors over a common word index
  std::map<Word, size_t> index;
  std::vector<std::map<size_t, Scalar>> sparse;
  for (const auto& s : states) {
    std::map<size_t, Scalar> row;
    for (const auto& f : probes) {
      UEElement u = eval_field(s, cfg, f, N);
      for (const auto& [wd, c] : u.words()) {
        Word tagged = wd;
        tagged.push_back(BasisMode{int(&f - probes.data()), false, -1, 99});
        auto [it, ins] = index.emplace(tagged, index.size());
        row[it->second] = c;
      }
    }
    sparse.push_back(std::move(row));
  }
  SMat mat(states.size(), SVec(index.size(), Scalar(0)));
  for (size_t r = 0; r < sparse.size(); ++r)
    for (const auto& [c, v] : sparse[r]) mat[r][c] = v;
  auto piv = rref(mat);
  CHECK(piv.size() == states.size());
}
