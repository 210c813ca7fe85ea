#include <map>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "vakm/center.hpp"
#include "vakm/linalg.hpp"

using namespace vakm;

namespace {

const LiePresentation& sl2() {
  static LiePresentation g = build_sl2();
  return g;
}

const LiePresentation& sl3() {
  static LiePresentation g = build_sl3();
  return g;
}

constexpr int E = 0, H = 1, F = 2;

Scalar constant_of(const KElement& f) {
  if (f.is_zero()) return Scalar(0);
  REQUIRE(f.poly_degree() == 0);
  return f.poly()[0];
}

SVec coords(const VState& v, const std::vector<VWord>& words) {
  std::map<VWord, size_t> idx;
  for (size_t j = 0; j < words.size(); ++j) idx[words[j]] = j;
  SVec out(words.size(), Scalar(0));
  for (const auto& [w, f] : v.words()) {
    auto it = idx.find(w);
    REQUIRE(it != idx.end());
    out[it->second] = constant_of(f);
  }
  return out;
}

// brute-force center dimension over the full word span, no weight pruning
size_t full_center_dim(const LiePresentation& g, const Scalar& level, int d) {
  LiePresentation gl = g.at_level(level);
  auto words = pbw_words(&gl, d);
  std::map<std::tuple<int, int, VWord>, size_t> rowid;
  SMat m;
  for (size_t j = 0; j < words.size(); ++j) {
    VState st = basis_state(&gl, words[j]);
    for (int x = 0; x < gl.dim(); ++x)
      for (int mm = 0; mm <= d; ++mm) {
        VState img = mode_action(x, mm, st);
        for (const auto& [w, f] : img.words()) {
          auto key = std::make_tuple(x, mm, w);
          auto it = rowid.find(key);
          if (it == rowid.end()) {
            it = rowid.emplace(key, m.size()).first;
            m.emplace_back(words.size(), Scalar(0));
          }
          m[it->second][j] = constant_of(f);
        }
      }
  }
  if (m.empty()) return words.size();
  return nullspace_basis(m).size();
}

TruncatedSeries coord_t(int order) {
  return TruncatedSeries::from_poly("t", {Scalar(0), Scalar(1)}, order);
}

}  // namespace

TEST_CASE("critical level is derived from the degree-2 obstruction") {
  CHECK(critical_level(sl2()) == Scalar::rational(-1, 2));
  CHECK(critical_level(sl3()) == Scalar::rational(-1, 2));
}

TEST_CASE("degree-2 center at the critical level is the Sugawara line") {
  auto cb = center_basis(sl2(), critical_level(sl2()), 2);
  REQUIRE(cb.states.size() == 1);

  VState s(cb.algebra.get());
  s.add_word({{H, 2}}, Scalar(1));
  s.add_word({{E, 1}, {F, 1}}, Scalar(-2));
  s.add_word({{H, 1}, {H, 1}}, Scalar::rational(-1, 2));
  CHECK(cb.states[0] == s);

  for (int x : {E, H, F})
    for (int m = 0; m <= 3; ++m)
      CHECK(mode_action(x, m, cb.states[0]).is_zero());
  CHECK(is_central(cb.states[0]));
}

TEST_CASE("degree-2 center vanishes away from the critical level") {
  CHECK(center_basis(sl2(), Scalar(0), 2).states.empty());
  CHECK(center_basis(sl2(), Scalar(1), 2).states.empty());
  CHECK(center_basis(sl2(), Scalar::rational(-2, 3), 2).states.empty());
  CHECK(center_basis(sl2(), Scalar::level(), 2).states.empty());
}

TEST_CASE("degree 0 and 1 centers") {
  for (const Scalar& k : {Scalar(0), critical_level(sl2())}) {
    auto c0 = center_basis(sl2(), k, 0);
    REQUIRE(c0.states.size() == 1);
    CHECK(c0.states[0] == VState::vacuum(c0.algebra.get()));
    CHECK(center_basis(sl2(), k, 1).states.empty());
  }
}

TEST_CASE("weight pruning agrees with the full kernel") {
  Scalar kc = critical_level(sl2());
  for (int d = 1; d <= 3; ++d) {
    CHECK(center_basis(sl2(), kc, d).states.size() == full_center_dim(sl2(), kc, d));
    CHECK(center_basis(sl2(), Scalar(0), d).states.size() ==
          full_center_dim(sl2(), Scalar(0), d));
  }
}

TEST_CASE("sl3 degree-2 center") {
  CHECK(center_basis(sl3(), critical_level(sl3()), 2).states.size() == 1);
  CHECK(center_basis(sl3(), Scalar(0), 2).states.empty());
}

TEST_CASE("low-degree centers are generated by T and the (-1)-product") {
  Scalar kc = critical_level(sl2());
  auto c2 = center_basis(sl2(), kc, 2);
  const VState& s = c2.states[0];

  auto c3 = center_basis(sl2(), kc, 3);
  REQUIRE(c3.states.size() == 1);
  VState ts = translation(s);
  CHECK(is_central(ts));
  auto w3 = pbw_words(c3.algebra.get(), 3);
  SVec vts = coords(ts, w3);
  SVec v3 = coords(c3.states[0], w3);
  size_t lead = 0;
  while (lead < vts.size() && vts[lead].is_zero()) ++lead;
  REQUIRE(lead < vts.size());
  for (size_t j = 0; j < w3.size(); ++j) CHECK(vts[j] == v3[j] * vts[lead]);

  auto c4 = center_basis(sl2(), kc, 4);
  REQUIRE(c4.states.size() == 2);
  auto w4 = pbw_words(c4.algebra.get(), 4);
  SMat span;
  span.push_back(coords(c4.states[0], w4));
  span.push_back(coords(c4.states[1], w4));
  span.push_back(coords(translation(translation(s)), w4));
  span.push_back(coords(nth_product(s, s, -1), w4));
  CHECK(rref(span).size() == 2);
}

TEST_CASE("graded dimensions match the oper side") {
  std::vector<long> expect{1, 0, 1, 1, 2, 2, 4};
  CHECK(op_graded_dimension(sl2(), 6) == expect);
  CHECK(graded_dimension_center(sl2(), critical_level(sl2()), 6) == expect);
  CHECK(graded_dimension_center(sl2(), Scalar(0), 2) == std::vector<long>{1, 0, 0});
  CHECK(op_graded_dimension(sl3(), 4) == std::vector<long>{1, 0, 1, 2, 3});
  CHECK(op_graded_dimension(sl2(), 0) == std::vector<long>{1});
}

TEST_CASE("commutative product: unit, rescaling, centrality") {
  Scalar kc = critical_level(sl2());
  auto c2 = center_basis(sl2(), kc, 2);
  const VState& s = c2.states[0];
  VState vac = VState::vacuum(c2.algebra.get());

  CHECK(commutative_product(vac, s, coord_t(6)) == s);
  CHECK(commutative_product(s, vac, coord_t(6)) == s);

  VState ss = nth_product(s, s, -1);
  CHECK(commutative_product(s, s, coord_t(6)) == ss);
  CHECK(is_central(ss));

  TruncatedSeries twot =
      TruncatedSeries::from_poly("t", {Scalar(0), Scalar(2)}, 6);
  CHECK(commutative_product(s, s, twot) == ss.scaled(Scalar::rational(1, 2)));

  auto c3 = center_basis(sl2(), kc, 3);
  const VState& s3 = c3.states[0];
  // degrees 2 and 3 mix; the product still commutes
  VState mixed(c2.algebra.get());
  for (const auto& [w, f] : s3.words()) mixed.add_word(w, f);
  CHECK(commutative_product(s, mixed, coord_t(6)) ==
        commutative_product(mixed, s, coord_t(6)));
}

TEST_CASE("commutative product rejects bad inputs") {
  Scalar kc = critical_level(sl2());
  auto c2 = center_basis(sl2(), kc, 2);
  const VState& s = c2.states[0];
  VState e1 = basis_state(c2.algebra.get(), {{E, 1}});

  CHECK_THROWS_WITH_AS(commutative_product(e1, s, coord_t(6)), "not central",
                       Error);
  TruncatedSeries shifted =
      TruncatedSeries::from_poly("t", {Scalar(1), Scalar(1)}, 6);
  CHECK_THROWS_AS(commutative_product(s, s, shifted), Error);
  TruncatedSeries flat = TruncatedSeries::from_poly("t", {Scalar(0)}, 0);
  CHECK_THROWS_AS(commutative_product(s, s, flat), Error);
  TruncatedSeries bent =
      TruncatedSeries::from_poly("t", {Scalar(0), Scalar(1), Scalar(1)}, 6);
  CHECK_THROWS_AS(commutative_product(s, s, bent), Error);
}

TEST_CASE("Sugawara modes commute at the critical level only") {
  const int trunc = 6;
  SigmaConfig cfg = SigmaConfig::origin();
  Scalar kc = critical_level(sl2());
  auto c2 = center_basis(sl2(), kc, 2);
  const VState& s = c2.states[0];

  auto fpow = [&](int m) {
    if (m >= 0) {
      std::vector<Scalar> cs(size_t(m) + 1, Scalar(0));
      cs[size_t(m)] = Scalar(1);
      return KElement::from_poly(cfg, cs);
    }
    return KElement::pole(cfg, 0, -m);
  };

  std::map<int, UEElement> smode;
  for (int m = -2; m <= 2; ++m)
    smode.emplace(m, eval_field(s, cfg, fpow(m), trunc));
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n) {
      UEElement br = smode.at(m) * smode.at(n) - smode.at(n) * smode.at(m);
      CHECK(br == UEElement(c2.algebra.get(), cfg, trunc));
    }

  // the same combination away from criticality fails to commute
  LiePresentation g0 = sl2().at_level(Scalar(0));
  VState s0(&g0);
  for (const auto& [w, f] : s.words()) s0.add_word(w, constant_of(f));
  bool obstructed = false;
  std::map<int, UEElement> smode0;
  for (int m = -2; m <= 2; ++m)
    smode0.emplace(m, eval_field(s0, cfg, fpow(m), trunc));
  for (int m = -2; m <= 2 && !obstructed; ++m)
    for (int n = -2; n <= 2; ++n) {
      UEElement br = smode0.at(m) * smode0.at(n) - smode0.at(n) * smode0.at(m);
      if (!(br == UEElement(&g0, cfg, trunc))) {
        obstructed = true;
        break;
      }
    }
  CHECK(obstructed);
}

TEST_CASE("center members pass the annihilation sweep") {
  Scalar kc = critical_level(sl2());
  for (int d = 0; d <= 4; ++d)
    for (const VState& v : center_basis(sl2(), kc, d).states)
      CHECK(is_central(v));
}
